"""Object language: literals, rules, superiority and defeasible theories.

Theory source format (``.dfl``)::

    % Tweety
    r1: bird(X) => fly(X).
    r2: penguin(X) => ~fly(X).
    r3: penguin(X) -> bird(X).
    r4: injured(X) ~> ~fly(X).
    penguin(tweety).
    r2 > r1.

Rule schemas containing variables (capitalised identifiers inside
parentheses) are grounded over every constant that appears in the source.
A ground instance of schema ``r1`` under ``X=tweety`` is labelled
``r1_tweety``.  Superiority between schemas is inherited by instance pairs
whose substitutions agree on shared variables.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import TheoryError, TheorySyntaxError


class Literal(NamedTuple):
    atom: str
    positive: bool = True

    def __str__(self):
        return self.atom if self.positive else "~" + self.atom

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def sort_key(self):
        return (self.atom, not self.positive)


def complement(q: Literal) -> Literal:
    return Literal(q.atom, not q.positive)


class RuleKind(enum.Enum):
    STRICT = "->"
    DEFEASIBLE = "=>"
    DEFEATER = "~>"

    @property
    def arrow(self) -> str:
        return self.value


class HeadSubset(enum.Enum):
    ALL = "all"
    STRICT = "strict"
    STRICT_OR_DEFEASIBLE = "sd"


@dataclass(frozen=True)
class Rule:
    label: str
    kind: RuleKind
    antecedent: frozenset
    consequent: Literal

    def __post_init__(self):
        if not isinstance(self.antecedent, frozenset):
            object.__setattr__(self, "antecedent", frozenset(self.antecedent))

    def __str__(self):
        body = ", ".join(str(a) for a in sorted(self.antecedent, key=Literal.sort_key))
        sep = " " if body else ""
        return f"{self.label}: {body}{sep}{self.kind.arrow} {self.consequent}."


@dataclass(frozen=True)
class DefeasibleTheory:
    """An immutable propositional theory ``(F, R, >)``.

    Validation runs at construction: labels must be unique, superiority
    may only name known rules, and the superiority graph must be acyclic
    (a self-pair counts as a cycle).
    """

    facts: frozenset = frozenset()
    rules: tuple = ()
    superiority: frozenset = frozenset()
    _by_label: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _by_head: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "facts", frozenset(self.facts))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "superiority", frozenset(tuple(p) for p in self.superiority))
        by_label = {}
        for r in self.rules:
            if r.label in by_label:
                raise TheoryError(f"duplicate rule label {r.label!r}")
            by_label[r.label] = r
        for hi, lo in self.superiority:
            for lab in (hi, lo):
                if lab not in by_label:
                    raise TheoryError(f"superiority references unknown rule {lab!r}")
        cycle = _find_cycle(self.superiority)
        if cycle:
            raise TheoryError("superiority cycle: " + " > ".join(cycle))
        by_head = {}
        for r in self.rules:
            by_head.setdefault(r.consequent, []).append(r)
        index = {}
        for head, rs in by_head.items():
            index[head, HeadSubset.ALL] = tuple(rs)
            index[head, HeadSubset.STRICT] = tuple(r for r in rs if r.kind is RuleKind.STRICT)
            index[head, HeadSubset.STRICT_OR_DEFEASIBLE] = tuple(
                r for r in rs if r.kind is not RuleKind.DEFEATER)
        object.__setattr__(self, "_by_label", by_label)
        object.__setattr__(self, "_by_head", index)

    def rule(self, label: str) -> Rule:
        return self._by_label[label]

    @property
    def strict_rules(self) -> tuple:
        return tuple(r for r in self.rules if r.kind is RuleKind.STRICT)

    @property
    def sd_rules(self) -> tuple:
        return tuple(r for r in self.rules if r.kind is not RuleKind.DEFEATER)

    def rules_with_head(self, q: Literal, subset: HeadSubset = HeadSubset.ALL) -> tuple:
        return self._by_head.get((q, subset), ())

    def is_superior(self, hi: str, lo: str) -> bool:
        return (hi, lo) in self.superiority

    def atoms(self) -> list:
        seen = {q.atom for q in self.facts}
        for r in self.rules:
            seen.add(r.consequent.atom)
            seen.update(a.atom for a in r.antecedent)
        return sorted(seen)


def rules_with_head(D: DefeasibleTheory, q: Literal,
                    subset: HeadSubset = HeadSubset.ALL) -> frozenset:
    return frozenset(D.rules_with_head(q, subset))


def literal_universe(D: DefeasibleTheory, extra_atoms: Iterable[str] = ()) -> tuple:
    """Every atom mentioned in ``D`` (plus ``extra_atoms``) in both signs, sorted."""
    atoms = sorted(set(D.atoms()) | set(extra_atoms))
    return tuple(Literal(a, pos) for a in atoms for pos in (True, False))


def _find_cycle(pairs) -> list | None:
    graph = {}
    for hi, lo in pairs:
        graph.setdefault(hi, []).append(lo)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {}
    stack = []

    def visit(n):
        color[n] = GREY
        stack.append(n)
        for m in sorted(graph.get(n, ())):
            c = color.get(m, WHITE)
            if c == GREY:
                return stack[stack.index(m):] + [m]
            if c == WHITE:
                found = visit(m)
                if found:
                    return found
        stack.pop()
        color[n] = BLACK
        return None

    for n in sorted(graph):
        if color.get(n, WHITE) == WHITE:
            found = visit(n)
            if found:
                return found
    return None


# --------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>->|=>|~>)
  | (?P<ident>[A-Za-z0-9_]+)
  | (?P<punct>[(),:.~>])
""", re.VERBOSE)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise TheorySyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Atom(NamedTuple):
    pred: str
    args: tuple  # of (is_var, name)


class _SLit(NamedTuple):
    atom: _Atom
    positive: bool


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[self.i + k]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.next()
        if t.text != text:
            raise TheorySyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return TheorySyntaxError(msg, tok.line, tok.col)

    def statements(self):
        while self.peek().kind != "eof":
            yield self.statement()

    def statement(self):
        t0, t1 = self.peek(), self.peek(1)
        if t0.kind == "ident" and t1.text == ">":
            self.next(); self.next()
            t2 = self.next()
            if t2.kind != "ident":
                raise self.error("expected rule label after '>'", t2)
            self.expect(".")
            return ("sup", t0.text, t2.text, t0)
        if t0.kind == "ident" and t1.text == ":":
            self.next(); self.next()
            body = []
            if self.peek().kind != "arrow":
                body.append(self.literal())
                while self.peek().text == ",":
                    self.next()
                    body.append(self.literal())
            if self.peek().kind == "arrow":
                arrow = self.next().text
                head = self.literal()
                self.expect(".")
                return ("rule", t0.text, RuleKind(arrow), body, head, t0)
            if len(body) == 1 and self.peek().text == ".":
                self.next()
                return ("fact", body[0], t0)
            raise self.error("expected an arrow (->, =>, ~>)")
        lit = self.literal()
        if self.peek().kind == "arrow":
            raise self.error("rules need a label ('label: body -> head.')")
        self.expect(".")
        return ("fact", lit, t0)

    def literal(self):
        positive = True
        while self.peek().text == "~":
            self.next()
            positive = not positive
        t = self.next()
        if t.kind != "ident":
            raise self.error(f"expected a literal, found {t.text or 'end of input'!r}", t)
        args = []
        if self.peek().text == "(":
            self.next()
            while True:
                a = self.next()
                if a.kind != "ident":
                    raise self.error("expected a term", a)
                args.append((a.text[0].isupper(), a.text))
                if self.peek().text == ",":
                    self.next()
                    continue
                self.expect(")")
                break
        return _SLit(_Atom(t.text, tuple(args)), positive)


def _ground_atom(atom: _Atom, subst: dict) -> str:
    if not atom.args:
        return atom.pred
    return atom.pred + "(" + ",".join(subst[n] if v else n for v, n in atom.args) + ")"


def _ground_lit(lit: _SLit, subst: dict) -> Literal:
    return Literal(_ground_atom(lit.atom, subst), lit.positive)


def _vars(lits) -> list:
    seen = []
    for lit in lits:
        for is_var, name in lit.atom.args:
            if is_var and name not in seen:
                seen.append(name)
    return seen


def parse_theory(text: str) -> DefeasibleTheory:
    """Parse and ground a ``.dfl`` source into a :class:`DefeasibleTheory`."""
    stmts = list(_Parser(text).statements())
    constants = []
    for st in stmts:
        lits = []
        if st[0] == "fact":
            lits = [st[1]]
        elif st[0] == "rule":
            lits = st[3] + [st[4]]
        for lit in lits:
            for is_var, name in lit.atom.args:
                if not is_var and name not in constants:
                    constants.append(name)

    facts = set()
    rules = []
    instances = {}  # schema label -> list of (ground label, subst)
    sups = []
    for st in stmts:
        if st[0] == "fact":
            lit, tok = st[1], st[2]
            if _vars([lit]):
                raise TheorySyntaxError("facts must be ground", tok.line, tok.col)
            facts.add(_ground_lit(lit, {}))
        elif st[0] == "rule":
            _, label, kind, body, head, tok = st
            if label in instances:
                raise TheoryError(f"duplicate rule label {label!r}")
            vs = _vars(body + [head])
            if not vs:
                rules.append(Rule(label, kind, frozenset(_ground_lit(b, {}) for b in body),
                                  _ground_lit(head, {})))
                instances[label] = [(label, {})]
                continue
            insts = []
            for combo in itertools.product(constants, repeat=len(vs)):
                subst = dict(zip(vs, combo))
                glabel = label + "_" + "_".join(combo)
                rules.append(Rule(glabel, kind, frozenset(_ground_lit(b, subst) for b in body),
                                  _ground_lit(head, subst)))
                insts.append((glabel, subst))
            instances[label] = insts
        else:
            sups.append(st)

    ground_labels = {r.label for r in rules}
    superiority = set()
    for _, hi, lo, tok in sups:
        his = _resolve_label(hi, instances, ground_labels)
        los = _resolve_label(lo, instances, ground_labels)
        if his is None or los is None:
            bad = hi if his is None else lo
            raise TheoryError(f"superiority references unknown rule {bad!r} "
                              f"(line {tok.line})")
        for hl, hs in his:
            for ll, ls in los:
                if all(hs[v] == ls[v] for v in hs.keys() & ls.keys()):
                    superiority.add((hl, ll))
    return DefeasibleTheory(frozenset(facts), tuple(rules), frozenset(superiority))


def _resolve_label(label, instances, ground_labels):
    if label in instances:
        return instances[label]
    if label in ground_labels:
        return [(label, {})]
    return None


def parse_literal(text: str) -> Literal:
    p = _Parser(text)
    lit = p.literal()
    if p.peek().kind != "eof":
        raise p.error("trailing input after literal")
    if _vars([lit]):
        raise TheorySyntaxError("literal must be ground", 1, 1)
    return _ground_lit(lit, {})


def format_theory(D: DefeasibleTheory) -> str:
    """Pretty-print a (ground) theory; ``parse_theory`` inverts it exactly."""
    lines = [f"{q}." for q in sorted(D.facts, key=Literal.sort_key)]
    lines += [str(r) for r in D.rules]
    lines += [f"{hi} > {lo}." for hi, lo in sorted(D.superiority)]
    return "\n".join(lines) + ("\n" if lines else "")
