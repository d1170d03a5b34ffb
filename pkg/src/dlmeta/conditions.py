"""Applicability-condition ASTs in negation normal form.

Negation never appears as a node of its own: only ``NotIn`` (non-membership
of a tagged literal) and ``NotPure`` (a negated pure atom) carry it, so the
positive/negative context of every proof atom is visible syntactically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import UnboundVariableError
from .tags import Tag

# -- literal expressions ---------------------------------------------------


@dataclass(frozen=True)
class Query:
    """The literal the inference rule is trying to conclude."""


@dataclass(frozen=True)
class ComplementOf:
    expr: "LiteralExpr"


@dataclass(frozen=True)
class Var:
    name: str


LiteralExpr = Union[Query, ComplementOf, Var]
Q = Query()


def compl(e: LiteralExpr) -> LiteralExpr:
    """Complement, collapsing double complements."""
    return e.expr if isinstance(e, ComplementOf) else ComplementOf(e)


# -- proof targets ---------------------------------------------------------


@dataclass(frozen=True)
class CurrentProof:
    pass


@dataclass(frozen=True)
class Closure:
    name: str


PROOF = CurrentProof()

# -- quantifier domains ----------------------------------------------------


@dataclass(frozen=True)
class RulesAll:
    head: LiteralExpr


@dataclass(frozen=True)
class RulesStrict:
    head: LiteralExpr


@dataclass(frozen=True)
class RulesSD:
    head: LiteralExpr


@dataclass(frozen=True)
class Antecedent:
    rule: str


RULE_DOMAINS = (RulesAll, RulesStrict, RulesSD)

# -- pure atoms ------------------------------------------------------------


@dataclass(frozen=True)
class IsFact:
    lit: LiteralExpr


@dataclass(frozen=True)
class Superior:
    hi: str
    lo: str


# -- conditions ------------------------------------------------------------


class Condition:
    __slots__ = ()

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))


@dataclass(frozen=True)
class And(Condition):
    items: tuple

    def __init__(self, items):
        object.__setattr__(self, "items", tuple(items))


@dataclass(frozen=True)
class Or(Condition):
    items: tuple

    def __init__(self, items):
        object.__setattr__(self, "items", tuple(items))


@dataclass(frozen=True)
class Exists(Condition):
    var: str
    domain: object
    body: Condition


@dataclass(frozen=True)
class ForAll(Condition):
    var: str
    domain: object
    body: Condition


@dataclass(frozen=True)
class In(Condition):
    tag: Tag
    lit: LiteralExpr
    target: object = PROOF


@dataclass(frozen=True)
class NotIn(Condition):
    tag: Tag
    lit: LiteralExpr
    target: object = PROOF


@dataclass(frozen=True)
class Pure(Condition):
    atom: object


@dataclass(frozen=True)
class NotPure(Condition):
    atom: object


@dataclass(frozen=True)
class TrueC(Condition):
    pass


@dataclass(frozen=True)
class FalseC(Condition):
    pass


TRUE = TrueC()
FALSE = FalseC()


# -- transforms ------------------------------------------------------------

def sneg(c: Condition) -> Condition:
    """Strong negation (revised form, with non-membership handled directly)."""
    t = type(c)
    if t is In:
        return In(c.tag.opposite, c.lit, c.target)
    if t is NotIn:
        return In(c.tag, c.lit, c.target)
    if t is And:
        return Or(sneg(x) for x in c.items)
    if t is Or:
        return And(sneg(x) for x in c.items)
    if t is Exists:
        return ForAll(c.var, c.domain, sneg(c.body))
    if t is ForAll:
        return Exists(c.var, c.domain, sneg(c.body))
    if t is Pure:
        return NotPure(c.atom)
    if t is NotPure:
        return Pure(c.atom)
    if t is TrueC:
        return FALSE
    if t is FalseC:
        return TRUE
    raise TypeError(f"not a condition: {c!r}")


def negate(c: Condition) -> Condition:
    """Classical negation pushed into NNF."""
    t = type(c)
    if t is In:
        return NotIn(c.tag, c.lit, c.target)
    if t is NotIn:
        return In(c.tag, c.lit, c.target)
    if t is And:
        return Or(negate(x) for x in c.items)
    if t is Or:
        return And(negate(x) for x in c.items)
    if t is Exists:
        return ForAll(c.var, c.domain, negate(c.body))
    if t is ForAll:
        return Exists(c.var, c.domain, negate(c.body))
    if t is Pure:
        return NotPure(c.atom)
    if t is NotPure:
        return Pure(c.atom)
    if t is TrueC:
        return FALSE
    if t is FalseC:
        return TRUE
    raise TypeError(f"not a condition: {c!r}")


def walk(c: Condition):
    """Yield every node of ``c`` in pre-order."""
    stack = [c]
    while stack:
        n = stack.pop()
        yield n
        t = type(n)
        if t is And or t is Or:
            stack.extend(reversed(n.items))
        elif t is Exists or t is ForAll:
            stack.append(n.body)


def proof_atoms(c: Condition):
    return [n for n in walk(c) if type(n) in (In, NotIn)]


def is_pos_only(c: Condition) -> bool:
    return not any(type(n) is NotIn for n in walk(c))


def is_neg_only(c: Condition) -> bool:
    return not any(type(n) is In for n in walk(c))


def is_p_disciplined(c: Condition) -> bool:
    return not any(type(n) is NotIn and n.target == PROOF for n in walk(c))


def is_pure(c: Condition) -> bool:
    return not proof_atoms(c)


def referenced_tags(c: Condition, target=PROOF) -> set:
    """Tags tested against ``target`` (the current proof by default)."""
    return {n.tag for n in proof_atoms(c) if n.target == target}


def referenced_closures(c: Condition) -> set:
    return {n.target.name for n in proof_atoms(c) if isinstance(n.target, Closure)}


# -- scoping ---------------------------------------------------------------

RULE_VAR = "rule"
LIT_VAR = "literal"


def check_scoping(c: Condition, scope: dict | None = None) -> None:
    """Raise :class:`UnboundVariableError` unless every variable is bound and
    used at its sort (rule variables vs. literal variables)."""
    scope = dict(scope or {})

    def lit(e):
        if isinstance(e, ComplementOf):
            lit(e.expr)
        elif isinstance(e, Var):
            sort = scope.get(e.name)
            if sort is None:
                raise UnboundVariableError(f"unbound variable {e.name!r}")
            if sort != LIT_VAR:
                raise UnboundVariableError(f"rule variable {e.name!r} used as a literal")

    def rule(name):
        sort = scope.get(name)
        if sort is None:
            raise UnboundVariableError(f"unbound variable {name!r}")
        if sort != RULE_VAR:
            raise UnboundVariableError(f"literal variable {name!r} used as a rule")

    def pure(a):
        if isinstance(a, IsFact):
            lit(a.lit)
        else:
            rule(a.hi)
            rule(a.lo)

    def go(n):
        nonlocal scope
        t = type(n)
        if t is And or t is Or:
            for x in n.items:
                go(x)
        elif t is Exists or t is ForAll:
            d = n.domain
            if isinstance(d, Antecedent):
                rule(d.rule)
                sort = LIT_VAR
            else:
                lit(d.head)
                sort = RULE_VAR
            saved = scope
            scope = {**scope, n.var: sort}
            go(n.body)
            scope = saved
        elif t is In or t is NotIn:
            lit(n.lit)
        elif t is Pure or t is NotPure:
            pure(n.atom)

    go(c)


# -- canonical form --------------------------------------------------------

def _rename_lit(e, ren):
    if isinstance(e, ComplementOf):
        inner = _rename_lit(e.expr, ren)
        return inner.expr if isinstance(inner, ComplementOf) else ComplementOf(inner)
    if isinstance(e, Var):
        return Var(ren.get(e.name, e.name))
    return e


def _rename_domain(d, ren):
    if isinstance(d, Antecedent):
        return Antecedent(ren.get(d.rule, d.rule))
    return type(d)(_rename_lit(d.head, ren))


def _rename_pure(a, ren):
    if isinstance(a, IsFact):
        return IsFact(_rename_lit(a.lit, ren))
    return Superior(ren.get(a.hi, a.hi), ren.get(a.lo, a.lo))


def canonical(c: Condition) -> Condition:
    """Order-insensitive normal form used for structural comparison.

    Bound variables are renamed by binder depth, nested And/Or are
    flattened, singleton And/Or collapse, double complements cancel, and
    children are sorted by their printed form.
    """
    from .sexpr import format_condition

    def go(n, ren, depth):
        t = type(n)
        if t is And or t is Or:
            flat = []
            for x in n.items:
                y = go(x, ren, depth)
                if type(y) is t:
                    flat.extend(y.items)
                else:
                    flat.append(y)
            if len(flat) == 1:
                return flat[0]
            flat.sort(key=format_condition)
            return t(flat)
        if t is Exists or t is ForAll:
            dom = _rename_domain(n.domain, ren)
            name = f"_v{depth}"
            return t(name, dom, go(n.body, {**ren, n.var: name}, depth + 1))
        if t is In or t is NotIn:
            return t(n.tag, _rename_lit(n.lit, ren), n.target)
        if t is Pure or t is NotPure:
            return t(_rename_pure(n.atom, ren))
        return n

    return go(c, {}, 0)


def equivalent_structure(a: Condition, b: Condition) -> bool:
    return canonical(a) == canonical(b)


def rename_closures(c: Condition, mapping: dict) -> Condition:
    """Retarget closure references (``mapping`` maps old name -> new name)."""
    t = type(c)
    if t is And or t is Or:
        return t(rename_closures(x, mapping) for x in c.items)
    if t is Exists or t is ForAll:
        return t(c.var, c.domain, rename_closures(c.body, mapping))
    if (t is In or t is NotIn) and isinstance(c.target, Closure):
        return t(c.tag, c.lit, Closure(mapping.get(c.target.name, c.target.name)))
    return c
