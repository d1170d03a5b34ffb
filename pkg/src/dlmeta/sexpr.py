"""S-expression reader/printer for the condition DSL.

Grammar::

    COND := (and COND...) | (or COND...) | (exists V DOM COND) | (forall V DOM COND)
          | (in TAG LIT WHERE) | (notin TAG LIT WHERE)
          | (fact LIT) | (not-fact LIT) | (sup R S) | (not-sup R S) | true | false
    DOM  := (rules-all (head LIT)) | (rules-strict (head LIT))
          | (rules-sd (head LIT)) | (antecedent R)
    LIT  := q | (neg LIT) | V
    WHERE := proof | CLOSURE-NAME
"""

from __future__ import annotations

import re

from .conditions import (
    FALSE, PROOF, TRUE, And, Antecedent, Closure, ComplementOf, CurrentProof, Exists,
    FalseC, ForAll, In, IsFact, NotIn, NotPure, Or, Pure, Query, RulesAll, RulesSD,
    RulesStrict, Superior, TrueC, Var, compl, Q,
)
from .errors import DLError, LogicSyntaxError
from .tags import parse_tag

RESERVED = {"q", "proof", "true", "false"}

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


class Symbol(str):
    """A bare token, distinguished from nested lists."""

    pos = None


def read_all(text: str) -> list:
    """Read every top-level s-expression in ``text``."""
    stack = [[]]
    opens = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if tok[0].isspace() or tok[0] == ";":
            continue
        if tok == "(":
            stack.append([])
            opens.append(m.start())
        elif tok == ")":
            if len(stack) == 1:
                raise LogicSyntaxError("unbalanced ')'", m.start())
            done = stack.pop()
            opens.pop()
            stack[-1].append(done)
        else:
            s = Symbol(tok)
            s.pos = m.start()
            stack[-1].append(s)
    if len(stack) != 1:
        raise LogicSyntaxError("unclosed '('", opens[-1])
    return stack[0]


def read(text: str):
    forms = read_all(text)
    if len(forms) != 1:
        raise LogicSyntaxError(f"expected one expression, found {len(forms)}")
    return forms[0]


def _pos(x):
    while isinstance(x, list) and x:
        x = x[0]
    return getattr(x, "pos", None)


def _err(msg, form):
    return LogicSyntaxError(msg, _pos(form))


def _sym(form, what):
    if not isinstance(form, str):
        raise _err(f"expected {what}", form)
    return str(form)


def _head(form):
    if not isinstance(form, list) or not form or not isinstance(form[0], str):
        raise _err("expected a parenthesised form", form)
    return str(form[0])


def _arity(form, n):
    if len(form) != n:
        raise _err(f"{form[0]} expects {n - 1} argument(s), got {len(form) - 1}", form)


def to_literal(form):
    if isinstance(form, str):
        if form == "q":
            return Q
        if form in RESERVED:
            raise _err(f"{form!r} is not a literal", form)
        return Var(str(form))
    if _head(form) == "neg":
        _arity(form, 2)
        return compl(to_literal(form[1]))
    raise _err(f"bad literal form {form[0]!r}", form)


def to_domain(form):
    h = _head(form)
    if h == "antecedent":
        _arity(form, 2)
        return Antecedent(_sym(form[1], "a rule variable"))
    kinds = {"rules-all": RulesAll, "rules-strict": RulesStrict, "rules-sd": RulesSD}
    if h not in kinds:
        raise _err(f"unknown domain {h!r}", form)
    _arity(form, 2)
    inner = form[1]
    if _head(inner) != "head":
        raise _err("rule domains take (head LIT)", inner)
    _arity(inner, 2)
    return kinds[h](to_literal(inner[1]))


def to_target(form):
    name = _sym(form, "'proof' or a closure name")
    return PROOF if name == "proof" else Closure(name)


def to_condition(form):
    """Convert a read s-expression into a :class:`Condition`."""
    if isinstance(form, str):
        if form == "true":
            return TRUE
        if form == "false":
            return FALSE
        raise _err(f"unexpected symbol {form!r}", form)
    h = _head(form)
    if h in ("and", "or"):
        items = [to_condition(x) for x in form[1:]]
        return And(items) if h == "and" else Or(items)
    if h in ("exists", "forall"):
        _arity(form, 4)
        var = _sym(form[1], "a variable name")
        if var in RESERVED:
            raise _err(f"{var!r} is reserved", form[1])
        cls = Exists if h == "exists" else ForAll
        return cls(var, to_domain(form[2]), to_condition(form[3]))
    if h in ("in", "notin"):
        _arity(form, 4)
        try:
            tag = parse_tag(_sym(form[1], "a tag"))
        except DLError as e:
            raise _err(str(e), form[1]) from None
        cls = In if h == "in" else NotIn
        return cls(tag, to_literal(form[2]), to_target(form[3]))
    if h in ("fact", "not-fact"):
        _arity(form, 2)
        atom = IsFact(to_literal(form[1]))
        return Pure(atom) if h == "fact" else NotPure(atom)
    if h in ("sup", "not-sup"):
        _arity(form, 3)
        atom = Superior(_sym(form[1], "a rule variable"), _sym(form[2], "a rule variable"))
        return Pure(atom) if h == "sup" else NotPure(atom)
    raise _err(f"unknown condition form {h!r}", form)


def parse_condition(text: str):
    return to_condition(read(text))


# -- printing --------------------------------------------------------------

def format_literal(e) -> str:
    if isinstance(e, Query):
        return "q"
    if isinstance(e, ComplementOf):
        return f"(neg {format_literal(e.expr)})"
    return e.name


def format_domain(d) -> str:
    if isinstance(d, Antecedent):
        return f"(antecedent {d.rule})"
    name = {RulesAll: "rules-all", RulesStrict: "rules-strict", RulesSD: "rules-sd"}[type(d)]
    return f"({name} (head {format_literal(d.head)}))"


def format_target(t) -> str:
    return "proof" if isinstance(t, CurrentProof) else t.name


def _format_pure(atom, negated):
    if isinstance(atom, IsFact):
        return f"({'not-fact' if negated else 'fact'} {format_literal(atom.lit)})"
    return f"({'not-sup' if negated else 'sup'} {atom.hi} {atom.lo})"


def format_condition(c, indent: int | None = None, _level: int = 0) -> str:
    """Render a condition; with ``indent`` set, compound forms span lines."""
    t = type(c)
    if t is TrueC:
        return "true"
    if t is FalseC:
        return "false"
    if t is In or t is NotIn:
        op = "in" if t is In else "notin"
        return f"({op} {c.tag} {format_literal(c.lit)} {format_target(c.target)})"
    if t is Pure or t is NotPure:
        return _format_pure(c.atom, t is NotPure)
    if t is And or t is Or:
        op = "and" if t is And else "or"
        parts = [format_condition(x, indent, _level + 1) for x in c.items]
        head = f"({op}"
    elif t is Exists or t is ForAll:
        op = "exists" if t is Exists else "forall"
        parts = [format_condition(c.body, indent, _level + 1)]
        head = f"({op} {c.var} {format_domain(c.domain)}"
    else:
        raise TypeError(f"not a condition: {c!r}")
    if not parts:
        return head + ")"
    flat = head + " " + " ".join(parts) + ")"
    if indent is None or ("\n" not in flat and len(flat) + indent * _level <= 78):
        return flat
    pad = "\n" + " " * (indent * (_level + 1))
    return head + "".join(pad + p for p in parts) + ")"
