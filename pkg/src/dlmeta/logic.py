"""Logic definitions: inference rules as data, plus the meta-level checks
(stratification, P-discipline, strong-negation pairing, even-handedness)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .conditions import (
    Closure, check_scoping, canonical, is_neg_only, is_p_disciplined, is_pos_only,
    proof_atoms, referenced_closures, referenced_tags, sneg,
)
from .errors import CyclicClosureDependency, LogicError, LogicSyntaxError, UnknownTagError
from .sexpr import format_condition, read_all, to_condition
from .tags import MINUS, PLUS, Tag, parse_tag


@dataclass(frozen=True)
class InferenceRule:
    tag: Tag
    condition: object

    def __str__(self):
        return f"{self.tag}: {format_condition(self.condition)}"


@dataclass(frozen=True)
class ClosureDecl:
    name: str
    tags: frozenset

    def __post_init__(self):
        object.__setattr__(self, "tags", frozenset(self.tags))

    @property
    def even_handed(self) -> bool:
        return all(t.opposite in self.tags for t in self.tags)


@dataclass(frozen=True)
class LogicDef:
    name: str
    rules: tuple
    closures: tuple = ()
    main: tuple = ()
    _by_tag: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "closures", tuple(self.closures))
        object.__setattr__(self, "main", tuple(self.main))
        by_tag = {}
        for r in self.rules:
            if r.tag in by_tag:
                raise LogicError(f"duplicate inference rule for {r.tag}")
            by_tag[r.tag] = r
        object.__setattr__(self, "_by_tag", by_tag)
        names = set()
        for c in self.closures:
            if c.name in names:
                raise LogicError(f"duplicate closure {c.name!r}")
            if c.name == "proof":
                raise LogicError("'proof' cannot name a closure")
            names.add(c.name)
            if not c.tags:
                raise LogicError(f"closure {c.name!r} has no tags")
            for t in c.tags:
                if t not in by_tag:
                    raise LogicError(f"closure {c.name!r} uses {t}, which has no inference rule")
        for r in self.rules:
            check_scoping(r.condition)
            for n in proof_atoms(r.condition):
                if n.tag not in by_tag:
                    raise LogicError(f"rule {r.tag} refers to {n.tag}, which has no inference rule")
                if isinstance(n.target, Closure) and n.target.name not in names:
                    raise LogicError(f"rule {r.tag} refers to unknown closure {n.target.name!r}")
        bases = {t.name for t in by_tag}
        for m in self.main:
            if m not in bases:
                raise LogicError(f"main tag {m!r} has no inference rule")

    @property
    def tags(self) -> tuple:
        return tuple(r.tag for r in self.rules)

    @property
    def base_names(self) -> tuple:
        seen = []
        for r in self.rules:
            if r.tag.name not in seen:
                seen.append(r.tag.name)
        return tuple(seen)

    def has_rule(self, tag: Tag) -> bool:
        return tag in self._by_tag

    def rule_for(self, tag: Tag) -> InferenceRule:
        try:
            return self._by_tag[tag]
        except KeyError:
            raise UnknownTagError(f"logic {self.name!r} has no inference rule for {tag}") from None

    def condition(self, tag: Tag):
        return self.rule_for(tag).condition

    def closure(self, name: str) -> ClosureDecl:
        for c in self.closures:
            if c.name == name:
                return c
        raise KeyError(name)

    def restrict(self, tags, name=None) -> "LogicDef":
        """Sub-logic keeping only ``tags`` (which must be reference-closed)."""
        keep = [r for r in self.rules if r.tag in tags]
        used = set()
        for r in keep:
            used |= referenced_closures(r.condition)
        closures = [c for c in self.closures if c.name in used]
        return LogicDef(name or self.name, keep, closures,
                        [m for m in self.main if any(t.name == m for t in tags)])


def complete_by_sneg(name, positive_rules, closures=(), main=()) -> LogicDef:
    """Build a logic whose ``-d`` rules are the strong negations of the given ``+d`` rules."""
    rules = []
    for r in positive_rules:
        rules.append(r)
        rules.append(InferenceRule(r.tag.opposite, sneg(r.condition)))
    return LogicDef(name, rules, closures, main)


# -- reference closure & stratification -----------------------------------

def reference_closure(L: LogicDef, tags) -> frozenset:
    """Smallest reference-closed set of signed tags containing ``tags``."""
    done = set()
    todo = list(tags)
    while todo:
        t = todo.pop()
        if t in done:
            continue
        done.add(t)
        todo.extend(referenced_tags(L.condition(t)) - done)
    return frozenset(done)


def involved(L: LogicDef, closure_name: str) -> frozenset:
    """Base tag names a closure involves."""
    return frozenset(t.name for t in reference_closure(L, L.closure(closure_name).tags))


def dependency_edges(L: LogicDef) -> set:
    """``(d, d2, strict)`` triples: level(d) must be >= (or > if strict) level(d2)."""
    edges = set()
    for r in L.rules:
        d = r.tag.name
        for t in referenced_tags(r.condition):
            edges.add((d, t.name, False))
        for cname in referenced_closures(r.condition):
            for d2 in involved(L, cname):
                edges.add((d, d2, True))
    return edges


def stratify(L: LogicDef) -> dict:
    """Least closure stratification; raises :class:`CyclicClosureDependency`."""
    edges = dependency_edges(L)
    succ = {}
    for a, b, _ in edges:
        succ.setdefault(a, set()).add(b)

    def path(src, dst):
        prev = {src: None}
        frontier = [src]
        while frontier:
            nxt = []
            for n in frontier:
                for m in sorted(succ.get(n, ())):
                    if m not in prev:
                        prev[m] = n
                        nxt.append(m)
            frontier = nxt
        if dst not in prev:
            return None
        out = [dst]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return out[::-1]

    for a, b, strict in sorted(edges):
        if strict:
            back = [b] if a == b else path(b, a)
            if back is not None:
                raise CyclicClosureDependency([a] + back)

    level = {d: 0 for d in L.base_names}
    changed = True
    while changed:
        changed = False
        for a, b, strict in edges:
            need = level[b] + (1 if strict else 0)
            if level[a] < need:
                level[a] = need
                changed = True
    return level


# -- discipline report -----------------------------------------------------

WELL_DISCIPLINED = "WellDisciplined"


@dataclass(frozen=True)
class RuleFlags:
    nnf: bool
    p_disciplined: bool
    pos_only: bool
    neg_only: bool


@dataclass
class DisciplineReport:
    logic: str
    rule_flags: dict
    posn_pairs: dict
    stratification: dict | None
    cycle: tuple | None
    even_handed: dict
    violations: list

    @property
    def verdict(self) -> str:
        return WELL_DISCIPLINED if not self.violations else "Violations"

    @property
    def well_disciplined(self) -> bool:
        return not self.violations

    @property
    def p_disciplined(self) -> bool:
        return all(f.p_disciplined for f in self.rule_flags.values())

    def render(self) -> str:
        lines = [f"logic {self.logic}"]
        for tag, f in self.rule_flags.items():
            lines.append(f"  rule {tag}: p-disciplined={_yn(f.p_disciplined)} "
                         f"pos-only={_yn(f.pos_only)} neg-only={_yn(f.neg_only)}")
        for d, ok in self.posn_pairs.items():
            lines.append(f"  strong negation {d}: {'ok' if ok else 'VIOLATED'}")
        if self.stratification is not None:
            lv = " ".join(f"{d}:{m}" for d, m in self.stratification.items())
            lines.append(f"  levels {lv}")
        else:
            lines.append("  levels none (cycle " + " -> ".join(self.cycle) + ")")
        for c, ok in self.even_handed.items():
            lines.append(f"  closure {c}: even-handed={_yn(ok)}")
        for v in self.violations:
            lines.append(f"  violation: {v}")
        lines.append(f"verdict {self.verdict}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "logic": self.logic,
            "rules": {t: vars(f) for t, f in self.rule_flags.items()},
            "posn": self.posn_pairs,
            "levels": self.stratification,
            "cycle": list(self.cycle) if self.cycle else None,
            "even_handed": self.even_handed,
            "violations": list(self.violations),
            "verdict": self.verdict,
        }


def _yn(b):
    return "yes" if b else "no"


def check_logic(L: LogicDef) -> DisciplineReport:
    violations = []
    flags = {}
    for r in L.rules:
        c = r.condition
        f = RuleFlags(True, is_p_disciplined(c), is_pos_only(c), is_neg_only(c))
        flags[str(r.tag)] = f
        if not f.p_disciplined:
            violations.append(f"rule {r.tag}: CurrentProof in negative context")

    posn = {}
    for d in L.base_names:
        plus, minus = Tag(PLUS, d), Tag(MINUS, d)
        if L.has_rule(plus) and L.has_rule(minus):
            ok = canonical(L.condition(minus)) == canonical(sneg(L.condition(plus)))
            posn[d] = ok
            if not ok:
                violations.append(f"strong negation: condition of {minus} is not sneg of {plus}")
        else:
            posn[d] = False
            have, lack = (plus, minus) if L.has_rule(plus) else (minus, plus)
            violations.append(f"strong negation: {have} has no {lack} counterpart")

    try:
        levels, cycle = stratify(L), None
    except CyclicClosureDependency as e:
        levels, cycle = None, e.cycle
        violations.append("stratification: " + str(e))

    even = {}
    for c in L.closures:
        even[c.name] = c.even_handed
        if not c.even_handed:
            violations.append(f"closure {c.name} not even-handed")

    return DisciplineReport(L.name, flags, posn, levels, cycle, even, violations)


# -- DSL -------------------------------------------------------------------

def parse_logic(text: str) -> LogicDef:
    """Parse ``(logic NAME (rule +TAG COND) ... (closure NAME TAG...) (main TAG...))``."""
    forms = read_all(text)
    if len(forms) != 1 or not isinstance(forms[0], list) or not forms[0] or forms[0][0] != "logic":
        raise LogicSyntaxError("expected a single (logic NAME ...) form")
    form = forms[0]
    if len(form) < 2 or not isinstance(form[1], str):
        raise LogicSyntaxError("logic needs a name")
    rules, closures, main = [], [], []
    for item in form[2:]:
        if not isinstance(item, list) or not item or not isinstance(item[0], str):
            raise LogicSyntaxError("expected (rule ...), (closure ...) or (main ...)",
                                   getattr(item, "pos", None))
        kind = item[0]
        try:
            if kind == "rule":
                if len(item) != 3:
                    raise LogicSyntaxError("rule takes a tag and a condition", item[0].pos)
                rules.append(InferenceRule(parse_tag(item[1]), to_condition(item[2])))
            elif kind == "closure":
                if len(item) < 3:
                    raise LogicSyntaxError("closure takes a name and tags", item[0].pos)
                closures.append(ClosureDecl(str(item[1]), [parse_tag(t) for t in item[2:]]))
            elif kind == "main":
                main.extend(str(t).lstrip("+-") for t in item[1:])
            else:
                raise LogicSyntaxError(f"unknown section {kind!r}", item[0].pos)
        except LogicError:
            raise
        except Exception as e:  # malformed tags surface as DLError/TypeError
            raise LogicSyntaxError(str(e), getattr(item[0], "pos", None)) from None
    return LogicDef(str(form[1]), rules, closures, main)


def print_logic(L: LogicDef) -> str:
    out = [f"(logic {L.name}"]
    for r in L.rules:
        body = format_condition(r.condition, indent=2, _level=2)
        out.append(f"  (rule {r.tag}\n    {body})")
    for c in L.closures:
        tags = " ".join(str(t) for t in sorted(c.tags, key=lambda t: (t.name, t.sign != PLUS)))
        out.append(f"  (closure {c.name} {tags})")
    if L.main:
        out.append(f"  (main {' '.join(L.main)})")
    return "\n".join(out) + ")\n"
