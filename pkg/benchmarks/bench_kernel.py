"""Compare the compiled and pure-Python saturation kernels.

Grounds one program per (logic, theory) pair, then times only the
saturation step on each backend.  Results are checked to agree.

    python3 benchmarks/bench_kernel.py [--atoms 60] [--rules 240] [--repeat 5]
"""

import argparse
import random
import time

from dlmeta.builtins import get_logic
from dlmeta.conditions import referenced_closures
from dlmeta.engine import closure_env
from dlmeta.ground import Grounder
from dlmeta.kernel import BACKENDS
from dlmeta.tags import Conclusion
from dlmeta.theory import DefeasibleTheory, Literal, Rule, RuleKind, literal_universe


def chain_theory(atoms, rules, seed):
    # long derivation chains make saturation need many rescans
    rng = random.Random(seed)
    lits = [Literal(f"a{i}", s) for i in range(atoms) for s in (True, False)]
    rs = []
    for i in range(rules):
        head = lits[rng.randrange(2, len(lits))]
        lo = max(0, lits.index(head) - 6)
        body = rng.sample(lits[lo:lits.index(head)], rng.randint(1, 2))
        kind = rng.choice((RuleKind.STRICT, RuleKind.DEFEASIBLE, RuleKind.DEFEASIBLE))
        rs.append(Rule(f"r{i}", kind, frozenset(body), head))
    return DefeasibleTheory({lits[0], lits[1]}, rs)


def ground(L, D):
    env = closure_env(L, D)
    universe = literal_universe(D)
    n = len(universe)
    t_index = {t: i for i, t in enumerate(L.tags)}
    l_index = {q: i for i, q in enumerate(universe)}
    g = Grounder(D, env, lambda c: t_index[c.tag] * n + l_index[c.literal])
    # saturate only the tags that do not feed a closure (the top stratum)
    used = set()
    for r in L.rules:
        used |= referenced_closures(r.condition)
    feeding = {t for name in used for t in L.closure(name).tags}
    tags = [t for t in L.tags if t not in feeding]
    for t in tags:
        for q in universe:
            g.add_goal(Conclusion(t, q), L.condition(t))
    size = len(L.tags) * n
    # closure members are pre-set so the top stratum sees them
    seed = bytearray(size)
    for cs in env.values():
        for c in cs:
            seed[t_index[c.tag] * n + l_index[c.literal]] = 1
    return g.prog, seed


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--atoms", type=int, default=60)
    ap.add_argument("--rules", type=int, default=240)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    D = chain_theory(args.atoms, args.rules, args.seed)
    print(f"theory: {args.atoms} atoms, {args.rules} rules; backends: {', '.join(BACKENDS)}")
    for name in ("classic", "parallel"):
        L = get_logic(name)
        prog, seed = ground(L, D)
        times, results = {}, {}
        for backend, saturate in BACKENDS.items():
            best = float("inf")
            for _ in range(args.repeat):
                member = bytearray(seed)
                t0 = time.perf_counter()
                out = saturate(prog.op, prog.a, prog.b, prog.kids, prog.goal_cid,
                               prog.goal_root, member)
                best = min(best, time.perf_counter() - t0)
            times[backend], results[backend] = best, list(out)
        agree = len({tuple(r) for r in results.values()}) == 1
        line = "  ".join(f"{b} {t * 1e3:8.2f} ms" for b, t in times.items())
        speed = ""
        if "compiled" in times and times["compiled"] > 0:
            speed = f"  speedup x{times['python'] / times['compiled']:.1f}"
        print(f"{name:9s} nodes={len(prog.op):6d} goals={len(prog):5d} derived="
              f"{len(results['python']):5d}  {line}{speed}  agree={agree}")
        if not agree:
            raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()
