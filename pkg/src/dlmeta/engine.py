"""Running logics: condition evaluation, stratified closure computation,
queries, proof checking and proof extraction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple

from .conditions import (
    And, Antecedent, ComplementOf, CurrentProof, Exists, FalseC, ForAll, In, IsFact, NotIn,
    NotPure, Or, Pure, Query, TrueC, referenced_closures,
)
from .errors import DLError, NotAConsequence, NotWellDisciplined
from .ground import SUBSET, Grounder
from .kernel import get_saturate
from .logic import LogicDef, check_logic, reference_closure, stratify
from .tags import PLUS, Conclusion, Tag
from .theory import DefeasibleTheory, Literal, literal_universe


class ConclusionSet:
    """An immutable set of conclusions that remembers derivation order."""

    __slots__ = ("_set", "order", "universe")

    def __init__(self, conclusions: Iterable[Conclusion] = (), universe=()):
        self.order = tuple(conclusions)
        self._set = frozenset(self.order)
        self.universe = tuple(universe)

    def __contains__(self, c):
        return c in self._set

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self._set)

    def __eq__(self, other):
        if isinstance(other, ConclusionSet):
            return self._set == other._set
        if isinstance(other, (set, frozenset)):
            return self._set == other
        return NotImplemented

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"ConclusionSet({len(self)} conclusions)"

    def as_set(self) -> frozenset:
        return self._set

    def with_tag(self, tag: Tag) -> frozenset:
        """Literals carrying ``tag``."""
        return frozenset(c.literal for c in self._set if c.tag == tag)

    def restrict(self, tags) -> "ConclusionSet":
        tags = set(tags)
        return ConclusionSet((c for c in self.order if c.tag in tags), self.universe)

    def sorted(self, tag_order=()) -> list:
        rank = {name: i for i, name in enumerate(tag_order)}
        return sorted(self._set, key=lambda c: (rank.get(c.tag.name, len(rank)), c.tag.name,
                                                c.tag.sign != PLUS, c.literal.sort_key()))


class ClosureResult(NamedTuple):
    conclusions: ConclusionSet
    env: dict


# -- evaluation ------------------------------------------------------------

def _resolve_target(target, P, env):
    if type(target) is CurrentProof:
        return P
    try:
        return env[target.name]
    except KeyError:
        raise DLError(f"closure {target.name!r} is not available in the environment") from None


def evaluate_condition(C, D: DefeasibleTheory, q: Literal, P, env=None) -> bool:
    """Evaluate ``C`` for literal ``q`` against membership set ``P``.

    Quantifiers enumerate their theory-derived domains; closure targets are
    looked up in ``env``.
    """
    env = env or {}
    facts, sup = D.facts, D.superiority

    def lit(e, b):
        t = type(e)
        if t is Query:
            return q
        if t is ComplementOf:
            return lit(e.expr, b).complement()
        return b[e.name]

    def domain(d, b):
        if type(d) is Antecedent:
            return b[d.rule].antecedent
        return D.rules_with_head(lit(d.head, b), SUBSET[type(d)])

    def pure(a, b):
        if type(a) is IsFact:
            return lit(a.lit, b) in facts
        return (b[a.hi].label, b[a.lo].label) in sup

    def ev(n, b):
        t = type(n)
        if t is And:
            return all(ev(x, b) for x in n.items)
        if t is Or:
            return any(ev(x, b) for x in n.items)
        if t is Exists:
            return any(ev(n.body, {**b, n.var: v}) for v in domain(n.domain, b))
        if t is ForAll:
            return all(ev(n.body, {**b, n.var: v}) for v in domain(n.domain, b))
        if t is In:
            return Conclusion(n.tag, lit(n.lit, b)) in _resolve_target(n.target, P, env)
        if t is NotIn:
            return Conclusion(n.tag, lit(n.lit, b)) not in _resolve_target(n.target, P, env)
        if t is Pure:
            return pure(n.atom, b)
        if t is NotPure:
            return not pure(n.atom, b)
        if t is TrueC:
            return True
        if t is FalseC:
            return False
        raise TypeError(f"not a condition: {n!r}")

    return ev(C, {})


@dataclass
class Justification:
    """Why a condition held: the facts it consumed."""

    proof: list = field(default_factory=list)      # Conclusions tested in the current proof
    closures: list = field(default_factory=list)   # (closure name, Conclusion, member?)
    facts: list = field(default_factory=list)      # (Literal, is fact?)
    superiority: list = field(default_factory=list)  # (hi label, lo label, holds?)
    bindings: list = field(default_factory=list)   # (variable, rule label or literal)
    consulted: list = field(default_factory=list)  # every closure test evaluated, held or not

    def extend(self, other):
        self.proof += other.proof
        self.closures += other.closures
        self.facts += other.facts
        self.superiority += other.superiority
        self.bindings += other.bindings


def explain_condition(C, D, q, P, env=None, rank=None):
    """Like :func:`evaluate_condition` but returns a :class:`Justification`
    (or None when ``C`` is false).  Where several disjuncts or witnesses
    hold, the one whose latest proof witness has the lowest ``rank`` wins."""
    env = env or {}
    rank = rank or (lambda c: 0)
    consulted = []

    def lit(e, b):
        t = type(e)
        if t is Query:
            return q
        if t is ComplementOf:
            return lit(e.expr, b).complement()
        return b[e.name]

    def domain(d, b):
        if type(d) is Antecedent:
            return sorted(b[d.rule].antecedent)
        return D.rules_with_head(lit(d.head, b), SUBSET[type(d)])

    def cost(j):
        return max((rank(c) for c in j.proof), default=-1)

    def best(options):
        found = None
        for j in options:
            if j is not None and (found is None or cost(j) < cost(found)):
                found = j
        return found

    def ev(n, b):
        t = type(n)
        if t is And or t is ForAll:
            j = Justification()
            items = n.items if t is And else [(n.body, {**b, n.var: v}) for v in domain(n.domain, b)]
            for item in items:
                sub = ev(item, b) if t is And else ev(*item)
                if sub is None:
                    return None
                j.extend(sub)
            return j
        if t is Or:
            return best(ev(x, b) for x in n.items)
        if t is Exists:
            def tries():
                for v in domain(n.domain, b):
                    sub = ev(n.body, {**b, n.var: v})
                    if sub is not None:
                        sub.bindings.insert(0, (n.var, v if isinstance(v, Literal) else v.label))
                    yield sub
            return best(tries())
        if t is In or t is NotIn:
            c = Conclusion(n.tag, lit(n.lit, b))
            hit = c in _resolve_target(n.target, P, env)
            if type(n.target) is not CurrentProof:
                consulted.append((n.target.name, c, hit))
            if hit != (t is In):
                return None
            j = Justification()
            if type(n.target) is CurrentProof:
                j.proof.append(c)
            else:
                j.closures.append((n.target.name, c, hit))
            return j
        if t is Pure or t is NotPure:
            a = n.atom
            if type(a) is IsFact:
                val = lit(a.lit, b) in D.facts
            else:
                val = (b[a.hi].label, b[a.lo].label) in D.superiority
            if val != (t is Pure):
                return None
            j = Justification()
            if type(a) is IsFact:
                j.facts.append((lit(a.lit, b), val))
            else:
                j.superiority.append((b[a.hi].label, b[a.lo].label, val))
            return j
        if t is TrueC:
            return Justification()
        if t is FalseC:
            return None
        raise TypeError(f"not a condition: {n!r}")

    j = ev(C, {})
    if j is not None:
        j.consulted = list(dict.fromkeys(consulted))
    return j


# -- closure computation ---------------------------------------------------

@lru_cache(maxsize=256)
def _report(L: LogicDef):
    return check_logic(L)


def _require_stable(L: LogicDef, well_disciplined: bool, tags=None):
    report = _report(L)
    if well_disciplined and not report.well_disciplined:
        raise NotWellDisciplined(report)
    if report.stratification is None:
        raise NotWellDisciplined(report, f"logic {L.name!r} has no closure stratification")
    rules = L.rules if tags is None else [L.rule_for(t) for t in tags]
    bad = [str(r.tag) for r in rules if not report.rule_flags[str(r.tag)].p_disciplined]
    if bad:
        raise NotWellDisciplined(
            report, f"logic {L.name!r} is not P-disciplined ({', '.join(bad)}); "
                    "its closure is not well-defined")
    return report


def closure_support(L: LogicDef, closures) -> frozenset:
    """Signed tags that must be saturated to compute the named closures."""
    tags = set()
    todo = list(closures)
    seen = set()
    while todo:
        name = todo.pop()
        if name in seen:
            continue
        seen.add(name)
        for t in reference_closure(L, L.closure(name).tags):
            if t not in tags:
                tags.add(t)
                todo.extend(referenced_closures(L.condition(t)))
    return frozenset(tags)


def _saturate(L, D, universe, tags, rng=None, backend=None):
    levels = stratify(L)
    saturate = get_saturate(backend)
    all_tags = L.tags
    t_index = {t: i for i, t in enumerate(all_tags)}
    l_index = {q: i for i, q in enumerate(universe)}
    n = len(universe)
    member = bytearray(len(all_tags) * n)

    def cid(c):
        return t_index[c.tag] * n + l_index[c.literal]

    freeze_at = {}
    for decl in L.closures:
        support = reference_closure(L, decl.tags)
        if support <= tags:
            freeze_at[decl.name] = max(levels[t.name] for t in support)

    order = []
    env = {}
    for k in sorted(set(levels.values())):
        level_tags = [t for t in all_tags if t in tags and levels[t.name] == k]
        if level_tags:
            g = Grounder(D, env, cid)
            goals = [Conclusion(t, q) for t in level_tags for q in universe]
            if rng is not None:
                rng.shuffle(goals)
            for c in goals:
                g.add_goal(c, L.condition(c.tag))
            p = g.prog
            for x in saturate(p.op, p.a, p.b, p.kids, p.goal_cid, p.goal_root, member):
                order.append(Conclusion(all_tags[x // n], universe[x % n]))
        for decl in L.closures:
            if freeze_at.get(decl.name) == k:
                env[decl.name] = ConclusionSet((c for c in order if c.tag in decl.tags), universe)
    return order, env


def compute_closure(L: LogicDef, D: DefeasibleTheory, *, extra_atoms=(),
                    require_well_disciplined=True, rng: random.Random | None = None,
                    backend: str | None = None) -> ClosureResult:
    """All consequences of ``D`` under ``L``, saturated stratum by stratum.

    By default only well-disciplined logics are accepted.  With
    ``require_well_disciplined=False`` any stratified logic whose rules are
    all P-disciplined is run (its closure is still well-defined, though it
    may be incoherent).  ``rng`` shuffles the scan order.
    """
    _require_stable(L, require_well_disciplined)
    universe = literal_universe(D, extra_atoms)
    order, env = _saturate(L, D, universe, frozenset(L.tags), rng, backend)
    return ClosureResult(ConclusionSet(order, universe), env)


def closure_env(L: LogicDef, D: DefeasibleTheory, *, extra_atoms=(), backend=None) -> dict:
    """Compute only the closures the logic's rules refer to."""
    used = set()
    for r in L.rules:
        used |= referenced_closures(r.condition)
    if not used:
        return {}
    support = closure_support(L, used)
    _require_stable(L, False, support)
    universe = literal_universe(D, extra_atoms)
    _, env = _saturate(L, D, universe, support, backend=backend)
    return env


def query(L: LogicDef, D: DefeasibleTheory, c: Conclusion, **kw) -> bool:
    """True iff ``c`` is a consequence (False means "not derivable", which
    is weaker than the opposite-tagged conclusion holding)."""
    L.rule_for(c.tag)
    result = compute_closure(L, D, extra_atoms={c.literal.atom} | set(kw.pop("extra_atoms", ())), **kw)
    return c in result.conclusions


# -- proofs ----------------------------------------------------------------

@dataclass(frozen=True)
class ProvenanceRecord:
    conclusion: Conclusion
    step: int
    witnesses: tuple          # (Conclusion, step) pairs from earlier in the proof
    closure_tests: tuple      # (closure name, Conclusion, member?) the proof relies on
    bindings: tuple           # (variable, rule label or literal)
    facts: tuple              # (Literal, is fact?)
    superiority: tuple        # (hi, lo, holds?)
    consulted: tuple = ()     # all closure tests evaluated while justifying the step

    @property
    def rules_used(self) -> tuple:
        return tuple(dict.fromkeys(v for _, v in self.bindings if not isinstance(v, Literal)))


@dataclass(frozen=True)
class Proof:
    steps: tuple
    provenance: tuple = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def format(self) -> str:
        lines = []
        recs = {r.step: r for r in self.provenance}
        for i, c in enumerate(self.steps, 1):
            lines.append(f"{i}. {c}")
            r = recs.get(i)
            if r is None:
                continue
            for var, val in r.bindings:
                lines.append(f"     {var} = {val}")
            for w, s in r.witnesses:
                lines.append(f"     uses {w}  [step {s}]")
            for name, w, hit in r.closure_tests:
                lines.append(f"     {w} {'in' if hit else 'not in'} {name}")
            for lit, is_fact in r.facts:
                lines.append(f"     {lit} {'is' if is_fact else 'is not'} a fact")
            for hi, lo, holds in r.superiority:
                lines.append(f"     {hi} > {lo}" if holds else f"     not {hi} > {lo}")
            for name, w, hit in r.consulted:
                if (name, w, hit) not in r.closure_tests:
                    lines.append(f"     checked {w} {'in' if hit else 'not in'} {name}")
        return "\n".join(lines)


@dataclass(frozen=True)
class ProofCheck:
    valid: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.valid


def check_proof(L: LogicDef, D: DefeasibleTheory, proof, env=None) -> ProofCheck:
    """Replay ``proof`` step by step, each condition seeing only the prefix.

    Works for unstable logics too: only the closures the logic refers to
    must be computable.  Raises :class:`UnknownTagError` for a tag the
    logic does not define.
    """
    steps = list(proof)
    for c in steps:
        L.rule_for(c.tag)
    if env is None:
        atoms = {c.literal.atom for c in steps}
        env = closure_env(L, D, extra_atoms=atoms)
    seen = set()
    for i, c in enumerate(steps, 1):
        if not evaluate_condition(L.condition(c.tag), D, c.literal, seen, env):
            return ProofCheck(False, i, f"condition of {c.tag} fails for {c.literal}")
        seen.add(c)
    return ProofCheck(True)


class _Prefix:
    """Membership in the derivation order strictly before ``limit``."""

    __slots__ = ("pos", "limit")

    def __init__(self, pos, limit):
        self.pos, self.limit = pos, limit

    def __contains__(self, c):
        return self.pos.get(c, self.limit) < self.limit


def derive_proof(L: LogicDef, D: DefeasibleTheory, c: Conclusion, *, result=None, **kw) -> Proof:
    """A duplicate-free proof ending in ``c`` with per-step provenance."""
    L.rule_for(c.tag)
    if result is None:
        result = compute_closure(L, D, extra_atoms={c.literal.atom}, **kw)
    conclusions, env = result
    if c not in conclusions:
        raise NotAConsequence(f"{c} is not a consequence under {L.name}")
    pos = {x: i for i, x in enumerate(conclusions.order)}
    just = {}
    stack = [c]
    while stack:
        x = stack.pop()
        if x in just:
            continue
        j = explain_condition(L.condition(x.tag), D, x.literal, _Prefix(pos, pos[x]), env,
                              rank=pos.__getitem__)
        if j is None:  # pragma: no cover - the kernel and evaluator disagree
            raise DLError(f"internal error: cannot justify {x}")
        just[x] = j
        stack.extend(w for w in j.proof if w not in just)
    steps = sorted(just, key=pos.__getitem__)
    step_of = {x: i for i, x in enumerate(steps, 1)}
    records = []
    for x in steps:
        j = just[x]
        wit = tuple((w, step_of[w]) for w in dict.fromkeys(j.proof))
        records.append(ProvenanceRecord(
            x, step_of[x], wit, tuple(dict.fromkeys(j.closures)), tuple(j.bindings),
            tuple(dict.fromkeys(j.facts)), tuple(dict.fromkeys(j.superiority)),
            tuple(j.consulted)))
    return Proof(tuple(steps), tuple(records))
