"""Randomised falsification harness for the meta-theory.

Everything here is seeded and reproducible.  The suites cannot prove the
properties they check; they sample theories, literals and proofs and look
for counterexamples.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .builtins import WELL_DISCIPLINED, get_logic
from .conditions import (
    FALSE, PROOF, TRUE, And, Antecedent, Closure, ComplementOf, Exists, ForAll, In, IsFact,
    NotIn, NotPure, Or, Pure, Q, RulesAll, RulesSD, RulesStrict, Superior, Var, check_scoping,
    is_pos_only, negate, referenced_closures, referenced_tags, sneg,
)
from .engine import (
    ConclusionSet, check_proof, closure_env, compute_closure, derive_proof, evaluate_condition,
)
from .logic import check_logic
from .tags import MINUS, PLUS, Conclusion, Tag
from .theory import DefeasibleTheory, Literal, Rule, RuleKind, format_theory, literal_universe

# -- theory generation -----------------------------------------------------


@dataclass(frozen=True)
class TheoryGenConfig:
    seed: int = 0
    max_atoms: int = 5
    max_rules: int = 10
    max_body: int = 3
    kind_weights: tuple = (1.0, 3.0, 1.0)   # strict, defeasible, defeater
    fact_rate: float = 0.25                 # chance per literal of being a fact
    superiority_density: float = 0.3        # chance per conflicting rule pair

    def __post_init__(self):
        if self.max_atoms < 1:
            raise ValueError("max_atoms must be at least 1")
        if min(self.max_rules, self.max_body) < 0:
            raise ValueError("max_rules and max_body must be non-negative")
        if len(self.kind_weights) != 3 or sum(self.kind_weights) <= 0:
            raise ValueError("kind_weights needs three weights with a positive sum")


_KINDS = (RuleKind.STRICT, RuleKind.DEFEASIBLE, RuleKind.DEFEATER)


def gen_theory(cfg: TheoryGenConfig) -> DefeasibleTheory:
    """A random theory, fully determined by ``cfg``."""
    rng = random.Random(cfg.seed)
    atoms = [f"p{i}" for i in range(rng.randint(1, cfg.max_atoms))]
    lits = [Literal(a, s) for a in atoms for s in (True, False)]
    facts = {q for q in lits if rng.random() < cfg.fact_rate}
    rules = []
    for i in range(rng.randint(0, cfg.max_rules) if cfg.max_rules else 0):
        kind = rng.choices(_KINDS, weights=cfg.kind_weights)[0]
        body = rng.sample(lits, rng.randint(0, min(cfg.max_body, len(lits))))
        rules.append(Rule(f"r{i + 1}", kind, frozenset(body), rng.choice(lits)))
    sup = set()
    for r in rules:
        for s in rules:
            if r.label < s.label and r.consequent == s.consequent.complement() \
                    and rng.random() < cfg.superiority_density:
                pair = (r.label, s.label) if rng.random() < 0.5 else (s.label, r.label)
                if not _reaches(sup, pair[1], pair[0]):
                    sup.add(pair)
    return DefeasibleTheory(facts, rules, sup)


def _reaches(pairs, src, dst):
    todo, seen = [src], {src}
    while todo:
        n = todo.pop()
        if n == dst:
            return True
        for hi, lo in pairs:
            if hi == n and lo not in seen:
                seen.add(lo)
                todo.append(lo)
    return False


def theory_corpus(n: int, seed: int = 0, **kw):
    """``n`` generated theories, the i-th seeded with ``seed + i``."""
    return [gen_theory(TheoryGenConfig(seed=seed + i, **kw)) for i in range(n)]


# -- independent oracle ----------------------------------------------------

def _dependencies(L, tags):
    # Every signed tag a set of tags can reach, following only
    # current-proof references (closure references are looked up, not run).
    out, todo = set(), list(tags)
    while todo:
        t = todo.pop()
        if t not in out:
            out.add(t)
            todo.extend(referenced_tags(L.condition(t)))
    return out


def oracle_closure(L, D, extra_atoms=(), _cache=None) -> ConclusionSet:
    """Closure as the longest repetition-free proof.

    A proof is grown one conclusion at a time, each condition evaluated
    against the sequence built so far, until nothing can be appended.
    Closures the rules refer to are themselves computed this way first.
    This shares no code with the circuit-based engine beyond the
    reference evaluator.
    """
    universe = literal_universe(D, extra_atoms)
    cache = {} if _cache is None else _cache

    def env_for(tags):
        names = set()
        for t in tags:
            names |= referenced_closures(L.condition(t))
        env = {}
        for name in sorted(names):
            if name not in cache:
                decl = L.closure(name)
                sub = proof_for(_dependencies(L, decl.tags))
                cache[name] = ConclusionSet((c for c in sub if c.tag in decl.tags), universe)
            env[name] = cache[name]
        return env

    def proof_for(tags):
        tags = [t for t in L.tags if t in tags]
        env = env_for(tags)
        seq, seen = [], set()
        grew = True
        while grew:
            grew = False
            for q in universe:
                for t in tags:
                    c = Conclusion(t, q)
                    if c not in seen and evaluate_condition(L.condition(t), D, q, seen, env):
                        seq.append(c)
                        seen.add(c)
                        grew = True
        return seq

    return ConclusionSet(proof_for(set(L.tags)), universe)


# -- verdicts --------------------------------------------------------------

@dataclass
class PropertyVerdict:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, witness):
        self.failures.append(witness)

    def merge(self, other: "PropertyVerdict") -> "PropertyVerdict":
        self.trials += other.trials
        self.failures += other.failures
        for k, v in other.notes.items():
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                self.notes[k] = self.notes.get(k, 0) + v
            elif isinstance(v, list):
                self.notes.setdefault(k, []).extend(v)
            else:
                self.notes[k] = v
        return self

    def to_json(self) -> dict:
        return {"property": self.name, "trials": self.trials, "passed": self.passed,
                "failures": [_jsonable(f) for f in self.failures],
                "seeds": list(self.seeds), "notes": _jsonable(self.notes)}

    def summary(self) -> str:
        state = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.name}: {state}, {self.trials} trials"


def _jsonable(x):
    if isinstance(x, (Conclusion, Literal, Tag)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    return x


# -- coherence and consistency ---------------------------------------------

def incoherent_pairs(conclusions) -> list:
    return sorted((c for c in conclusions
                   if c.tag.sign == PLUS and Conclusion(c.tag.opposite, c.literal) in conclusions),
                  key=str)


def check_coherence(L, D, closure=None) -> PropertyVerdict:
    """No closure contains both ``+d q`` and ``-d q``."""
    P = closure if closure is not None else compute_closure(L, D).conclusions
    v = PropertyVerdict(f"coherence[{L.name}]", 1)
    for c in incoherent_pairs(P):
        v.fail({"theory": format_theory(D),
                "witness": [str(c), str(Conclusion(c.tag.opposite, c.literal))]})
    return v


def check_consistency(L, D, closure=None, tags=None) -> PropertyVerdict:
    """``+d q`` and ``+d ~q`` together only when ``+delta q`` and ``+delta ~q`` hold.

    ``tags`` defaults to the logic's main tags.  Contradictions that are
    licensed by a contradictory definite part are listed under
    ``notes["licensed"]``.
    """
    P = closure if closure is not None else compute_closure(L, D).conclusions
    if not isinstance(P, ConclusionSet):
        P = ConclusionSet(P)
    delta = Tag(PLUS, "delta")
    names = tags if tags is not None else (L.main or tuple(n for n in L.base_names))
    v = PropertyVerdict(f"consistency[{L.name}]", 1, notes={"licensed": []})
    for name in names:
        t = Tag(PLUS, name)
        for q in sorted(P.with_tag(t), key=Literal.sort_key):
            if not q.positive or q.complement() not in P.with_tag(t):
                continue
            if Conclusion(delta, q) in P and Conclusion(delta, q.complement()) in P:
                v.notes["licensed"].append(f"{t} {q.atom}")
            else:
                v.fail({"theory": format_theory(D), "witness": [str(Conclusion(t, q)),
                                                                 str(Conclusion(t, q.complement()))]})
    return v


def definite_contradictions(P) -> list:
    d = P.with_tag(Tag(PLUS, "delta"))
    return sorted(q.atom for q in d if q.positive and q.complement() in d)


# -- incoherence of the naive closed-world rule -------------------------------

SELF_LOOP = DefeasibleTheory(rules=[Rule("r", RuleKind.STRICT, {Literal("p", False)},
                                         Literal("p", False))])


class IncoherenceWitness(NamedTuple):
    pairs: list          # [(+d q, -d q), ...]
    proofs: list         # derived proofs, one per conclusion in the first pair
    closure: ConclusionSet


def demo_incoherence_naive_sneg(D=None, logic="cwa_naive") -> IncoherenceWitness:
    """Run a closed-world logic whose ``-d`` rule came from naive strong
    negation and return the incoherent pairs it draws from ``D``.

    The logic is stratified and P-disciplined, so its closure exists even
    though it fails the strong-negation check."""
    D = SELF_LOOP if D is None else D
    L = get_logic(logic) if isinstance(logic, str) else logic
    result = compute_closure(L, D, require_well_disciplined=False)
    pairs = [(c, Conclusion(c.tag.opposite, c.literal)) for c in incoherent_pairs(result.conclusions)]
    proofs = []
    if pairs:
        for c in pairs[0]:
            proofs.append(derive_proof(L, D, c, result=result))
    return IncoherenceWitness(pairs, proofs, result.conclusions)


# -- stability -------------------------------------------------------------

def _interleave(rng, P, Q):
    out, i, j = [], 0, 0
    while i < len(P) or j < len(Q):
        if j >= len(Q) or (i < len(P) and rng.random() < 0.5):
            out.append(P[i])
            i += 1
        else:
            out.append(Q[j])
            j += 1
    return out


def _insert_random(rng, seq, pool, k):
    out = list(seq)
    for _ in range(k):
        out.insert(rng.randint(0, len(out)), rng.choice(pool))
    return out


def check_stability_empirical(L, D, trials=200, seed=0) -> PropertyVerdict:
    """Sample proofs and their extensions looking for lost applicability.

    For a P-disciplined logic each trial takes two extracted proofs,
    checks a random interleaving with :func:`check_proof`, and checks that
    every step of the first proof stays applicable after random
    conclusions are inserted before it.  Otherwise the harness searches
    for a proof ``P`` and a one-step extension ``Q`` such that some
    inference applicable after ``P`` is not applicable after ``Q``, and
    records it as a failure.
    """
    rng = random.Random(seed)
    report = check_logic(L)
    v = PropertyVerdict(f"stability[{L.name}]", seeds=[seed])
    if not report.p_disciplined:
        return _instability_search(L, D, trials, rng, v)
    result = compute_closure(L, D)
    env = result.env
    pool = list(result.conclusions.order)
    if not pool:
        v.trials = trials
        return v
    universe = result.conclusions.universe
    everything = [Conclusion(t, q) for t in L.tags for q in universe]
    proofs = {}

    def proof(c):
        if c not in proofs:
            proofs[c] = list(derive_proof(L, D, c, result=result).steps)
        return proofs[c]

    for _ in range(trials):
        v.trials += 1
        P, Q = proof(rng.choice(pool)), proof(rng.choice(pool))
        mixed = _interleave(rng, P, Q)
        chk = check_proof(L, D, mixed, env)
        if not chk:
            v.fail({"theory": format_theory(D), "kind": "interleaving",
                    "proof": [str(c) for c in mixed], "step": chk.step})
            continue
        # supersequence: conclusions (even underivable ones) inserted anywhere
        sup = _insert_random(rng, P, everything, rng.randint(1, 4))
        it, seen, k = iter(P), set(), 0
        nxt = next(it, None)
        for c in sup:
            if c == nxt and k < len(P):
                if not evaluate_condition(L.condition(c.tag), D, c.literal, seen, env):
                    v.fail({"theory": format_theory(D), "kind": "supersequence",
                            "proof": [str(x) for x in P], "extended": [str(x) for x in sup],
                            "lost": str(c)})
                    break
                k += 1
                nxt = next(it, None)
            seen.add(c)
    return v


def _instability_search(L, D, trials, rng, v):
    env = closure_env(L, D)
    universe = literal_universe(D, ("q",))
    everything = [Conclusion(t, q) for t in L.tags for q in universe]

    def applicable(seq):
        s = set(seq)
        return [c for c in everything if evaluate_condition(L.condition(c.tag), D, c.literal, s, env)]

    prefixes = [[]]
    for _ in range(trials):
        base = list(rng.choice(prefixes))
        ok = applicable(base)
        if not ok:
            continue
        v.trials += 1
        ext = base + [rng.choice(ok)]
        ok_after = set(applicable(ext))
        lost = [c for c in ok if c not in ok_after]
        if lost:
            v.fail({"theory": format_theory(D), "prefix": [str(c) for c in base],
                    "extension": [str(c) for c in ext], "lost": [str(c) for c in lost]})
            break
        prefixes.append(ext)
    return v


def check_monotone(L, D, samples=100, seed=0, pos_only=True) -> PropertyVerdict:
    """Applicability on a random set survives growing that set."""
    rng = random.Random(seed)
    env = closure_env(L, D)
    universe = literal_universe(D)
    everything = [Conclusion(t, q) for t in L.tags for q in universe]
    v = PropertyVerdict(f"monotone[{L.name}]", seeds=[seed])
    for _ in range(samples):
        v.trials += 1
        S = set(rng.sample(everything, rng.randint(0, len(everything))))
        bigger = S | set(rng.sample(everything, rng.randint(0, len(everything))))
        t, q = rng.choice(L.tags), rng.choice(universe)
        C = L.condition(t)
        if evaluate_condition(C, D, q, S, env) and not evaluate_condition(C, D, q, bigger, env):
            v.fail({"theory": format_theory(D), "tag": str(t), "literal": str(q)})
    return v


# -- random conditions -----------------------------------------------------

@dataclass(frozen=True)
class ConditionVocabulary:
    tags: tuple = (Tag(PLUS, "delta"), Tag(MINUS, "delta"), Tag(PLUS, "d"), Tag(MINUS, "d"))
    closures: tuple = ()

    @classmethod
    def of(cls, L):
        return cls(L.tags, tuple(c.name for c in L.closures))


def gen_condition(rng: random.Random, depth: int = 4, vocab=ConditionVocabulary(),
                  pos_only=False, neg_only=False):
    """A random, well-scoped condition of depth at most ``depth``."""
    counter = iter(range(1 << 30))

    def lit(scope):
        lits = [v for v, s in scope if s == "lit"]
        e = Var(rng.choice(lits)) if lits and rng.random() < 0.5 else Q
        return ComplementOf(e) if rng.random() < 0.4 else e

    def target():
        if vocab.closures and rng.random() < 0.3:
            return Closure(rng.choice(vocab.closures))
        return PROOF

    def leaf(scope):
        kinds = ["pure", "const"]
        if not neg_only:
            kinds += ["in"] * 3
        if not pos_only:
            kinds += ["notin"] * 3
        k = rng.choice(kinds)
        if k == "in" or k == "notin":
            cls = In if k == "in" else NotIn
            return cls(rng.choice(vocab.tags), lit(scope), target())
        if k == "const":
            return TRUE if rng.random() < 0.5 else FALSE
        rules = [v for v, s in scope if s == "rule"]
        if rules and rng.random() < 0.5:
            atom = Superior(rng.choice(rules), rng.choice(rules))
        else:
            atom = IsFact(lit(scope))
        return Pure(atom) if rng.random() < 0.5 else NotPure(atom)

    def go(d, scope):
        if d <= 0 or rng.random() < 0.25:
            return leaf(scope)
        k = rng.choice(("and", "or", "exists", "forall"))
        if k in ("and", "or"):
            items = [go(d - 1, scope) for _ in range(rng.randint(2, 3))]
            return And(items) if k == "and" else Or(items)
        name = f"v{next(counter)}"
        rules = [v for v, s in scope if s == "rule"]
        if rules and rng.random() < 0.5:
            dom, sort = Antecedent(rng.choice(rules)), "lit"
        else:
            dom, sort = rng.choice((RulesAll, RulesStrict, RulesSD))(lit(scope)), "rule"
        cls = Exists if k == "exists" else ForAll
        return cls(name, dom, go(d - 1, scope + [(name, sort)]))

    c = go(depth, [])
    check_scoping(c)
    return c


def _random_point(rng, logics, theory_seed):
    name = rng.choice(logics)
    L = get_logic(name)
    D = gen_theory(TheoryGenConfig(seed=theory_seed))
    result = compute_closure(L, D, extra_atoms=("p0",))
    order = result.conclusions.order
    # any derivation prefix is a proof, so it is as good a sample as the closure
    P = set(order[:rng.randint(0, len(order))]) if rng.random() < 0.5 else set(order)
    q = rng.choice(result.conclusions.universe)
    return L, D, q, P, result.env


def sneg_algebra_suite(samples=500, seed=0, semantic_samples=1000,
                       logics=("classic", "parallel")) -> list:
    """Structural and sampled semantic checks of strong negation.

    Returns one verdict per property.
    """
    rng = random.Random(seed)
    v3 = PropertyVerdict("sneg^3 = sneg", seeds=[seed])
    v2 = PropertyVerdict("sneg^2 = id on pos-only", seeds=[seed])
    vpos = PropertyVerdict("sneg output is pos-only", seeds=[seed])
    vinv = PropertyVerdict("sneg(not C) = C on pos-only", seeds=[seed])
    vneg = PropertyVerdict("sneg(C) = not C on neg-only", seeds=[seed])
    for _ in range(samples):
        c = gen_condition(rng)
        v3.trials += 1
        vpos.trials += 1
        if sneg(sneg(sneg(c))) != sneg(c):
            v3.fail(_show(c))
        if not is_pos_only(sneg(c)):
            vpos.fail(_show(c))
        p = gen_condition(rng, pos_only=True)
        v2.trials += 1
        vinv.trials += 1
        if sneg(sneg(p)) != p:
            v2.fail(_show(p))
        if sneg(negate(p)) != p:
            vinv.fail(_show(p))
        n = gen_condition(rng, neg_only=True)
        vneg.trials += 1
        if sneg(n) != negate(n):
            vneg.fail(_show(n))

    vjoint = PropertyVerdict("C and sneg(C) never jointly true", seeds=[seed])
    vdouble = PropertyVerdict("sneg^2(C) implies C", seeds=[seed])
    theory_seed = seed * 100003
    for i in range(semantic_samples):
        L, D, q, P, env = _random_point(rng, logics, theory_seed + i)
        if rng.random() < 0.5:
            C = L.condition(rng.choice(L.tags))
        else:
            C = gen_condition(rng, vocab=ConditionVocabulary.of(L))
        a = evaluate_condition(C, D, q, P, env)
        vjoint.trials += 1
        vdouble.trials += 1
        if a and evaluate_condition(sneg(C), D, q, P, env):
            vjoint.fail({"logic": L.name, "theory": format_theory(D), "literal": str(q),
                         "condition": _show(C)})
        if evaluate_condition(sneg(sneg(C)), D, q, P, env) and not a:
            vdouble.fail({"logic": L.name, "theory": format_theory(D), "literal": str(q),
                          "condition": _show(C)})
    return [v3, v2, vpos, vinv, vneg, vjoint, vdouble]


def _show(c):
    from .sexpr import format_condition
    return format_condition(c)


# -- suites over generated corpora -----------------------------------------

def coherence_suite(logic, n=1000, seed=0, consistency=True) -> list:
    L = get_logic(logic) if isinstance(logic, str) else logic
    coh = PropertyVerdict(f"coherence[{L.name}]", seeds=[seed, seed + n - 1] if n else [])
    con = PropertyVerdict(f"consistency[{L.name}]", seeds=list(coh.seeds))
    con.notes = {"licensed": 0, "definite_contradictions": 0}
    for i in range(n):
        D = gen_theory(TheoryGenConfig(seed=seed + i))
        P = compute_closure(L, D).conclusions
        coh.merge(check_coherence(L, D, P))
        if consistency:
            sub = check_consistency(L, D, P)
            con.trials += 1
            con.failures += sub.failures
            con.notes["licensed"] += len(sub.notes["licensed"])
            if definite_contradictions(P):
                con.notes["definite_contradictions"] += 1
    return [coh, con] if consistency else [coh]


def oracle_suite(logic, n=500, seed=0) -> PropertyVerdict:
    L = get_logic(logic) if isinstance(logic, str) else logic
    v = PropertyVerdict(f"oracle[{L.name}]", seeds=[seed, seed + n - 1] if n else [])
    for i in range(n):
        D = gen_theory(TheoryGenConfig(seed=seed + i))
        v.trials += 1
        fast = compute_closure(L, D).conclusions
        slow = oracle_closure(L, D)
        if fast != slow:
            v.fail({"theory": format_theory(D),
                    "engine_only": sorted(str(c) for c in fast.as_set() - slow.as_set()),
                    "oracle_only": sorted(str(c) for c in slow.as_set() - fast.as_set())})
    return v


def stability_suite(logic, theories=20, trials=200, seed=0) -> PropertyVerdict:
    """``trials`` stability trials spread over ``theories`` generated theories."""
    L = get_logic(logic) if isinstance(logic, str) else logic
    v = PropertyVerdict(f"stability[{L.name}]", seeds=[seed])
    per = max(1, trials // max(1, theories))
    done = 0
    i = 0
    while done < trials:
        D = gen_theory(TheoryGenConfig(seed=seed + i))
        k = min(per, trials - done)
        sub = check_stability_empirical(L, D, k, seed=seed + i)
        v.merge(sub)
        done += k
        i += 1
    return v


def run_fuzz(logic, trials=500, seed=0) -> list:
    """Coherence, consistency, oracle and stability suites for one logic."""
    L = get_logic(logic) if isinstance(logic, str) else logic
    verdicts = coherence_suite(L, trials, seed)
    verdicts.append(oracle_suite(L, trials, seed))
    verdicts.append(stability_suite(L, theories=max(1, trials // 10), trials=trials, seed=seed))
    return verdicts


def report_lines(verdicts) -> list:
    """One JSON record per verdict, with stable key order."""
    return [json.dumps(v.to_json(), sort_keys=True) for v in verdicts]


def default_suite(seed=0, scale=1.0) -> list:
    """Every property over the shipped well-disciplined logics."""
    n = max(1, int(1000 * scale))
    out = []
    for name in ("classic", "parallel"):
        out += coherence_suite(name, n, seed)
    for name in WELL_DISCIPLINED:
        out.append(oracle_suite(name, max(1, n // 2), seed))
    out += sneg_algebra_suite(max(1, n // 2), seed, n)
    for name in ("classic", "parallel"):
        out.append(stability_suite(name, trials=max(1, n // 5), seed=seed))
    return out
