"""Acceptance criteria, one test per criterion.

Each test logs a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Runs standalone too: ``python3 tests/test_acceptance.py``.
"""

import time
from contextlib import contextmanager

import pytest

from dlmeta import DefeasibleTheory, check_logic, compute_closure, get_logic, parse_conclusion
from dlmeta.builtins import WELL_DISCIPLINED
from dlmeta.errors import CyclicClosureDependency
from dlmeta.harness import (
    SELF_LOOP, TheoryGenConfig, check_coherence, check_stability_empirical, coherence_suite,
    definite_contradictions, demo_incoherence_naive_sneg, gen_theory, oracle_suite,
    sneg_algebra_suite, stability_suite,
)
from dlmeta.logic import stratify

from conftest import FIXTURES, load_theory
from helpers import ACCEPTANCE, cs, lits


@contextmanager
def criterion(n, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as e:
        line = f"criterion {n} FAIL  {title}: {type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"
        ACCEPTANCE.append(line)
        print(line)
        raise
    line = f"criterion {n} PASS  {title} ({time.perf_counter() - t0:.2f}s)"
    ACCEPTANCE.append(line)
    print(line)


def frozen(name):
    return {parse_conclusion(l) for l in (FIXTURES / name).read_text().splitlines()}


@pytest.fixture(scope="module")
def tweety():
    return load_theory("tweety.dfl")


@pytest.fixture(scope="module")
def corpus():
    return [gen_theory(TheoryGenConfig(seed=i)) for i in range(1000)]


def test_criterion_1_tweety_classic(tweety):
    with criterion(1, "Tweety golden closure under the classic logic, < 1s"):
        t0 = time.perf_counter()
        P = compute_closure(get_logic("classic"), tweety).conclusions
        elapsed = time.perf_counter() - t0
        assert lits(P, "+delta") == {"penguin(tweety)", "bird(freddie)", "injured(freddie)",
                                     "bird(tweety)"}
        listed_minus_delta = {"penguin(freddie)", "injured(tweety)", "~injured(tweety)",
                              "~bird(tweety)", "fly(freddie)", "~fly(freddie)", "fly(tweety)",
                              "~fly(tweety)"}
        assert listed_minus_delta <= lits(P, "-delta")
        assert lits(P, "+partial") == {"penguin(tweety)", "bird(freddie)", "injured(freddie)",
                                       "bird(tweety)", "~fly(tweety)"}
        assert {"penguin(freddie)", "injured(tweety)", "fly(freddie)", "~fly(freddie)",
                "fly(tweety)"} <= lits(P, "-partial")
        assert parse_conclusion("+partial fly(freddie)") not in P
        assert P == frozen("tweety_classic.txt")
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_criterion_2_tweety_parallel(tweety):
    with criterion(2, "Tweety golden closure under the parallel logic"):
        P = compute_closure(get_logic("parallel"), tweety).conclusions
        definite = lits(P, "+delta")
        assert lits(P, "+lambda") == definite | {"fly(tweety)", "fly(freddie)", "~fly(tweety)"}
        assert lits(P, "+spartial") == definite | {"~fly(tweety)"}
        assert parse_conclusion("+spartial fly(freddie)") not in P
        assert P == frozen("tweety_parallel.txt")


def test_criterion_3_closed_world_pair():
    with criterion(3, "self-loop theory: delta, naive and revised closed-world rules"):
        D = SELF_LOOP
        assert compute_closure(get_logic("delta"), D).conclusions == cs("-delta p")
        w = demo_incoherence_naive_sneg(D)
        assert cs("+d p", "-d p") <= w.closure.as_set()
        assert [tuple(map(str, p)) for p in w.pairs] == [("+d p", "-d p")]
        L = get_logic("cwa_revised")
        P = compute_closure(L, D).conclusions
        assert parse_conclusion("+d p") in P and parse_conclusion("-d p") not in P
        assert check_coherence(L, D, P).passed


def test_criterion_4_coherence(corpus):
    with criterion(4, "coherence over 1000 theories x {classic, parallel}, < 60s"):
        t0 = time.perf_counter()
        failures = 0
        for name in ("classic", "parallel"):
            L = get_logic(name)
            for D in corpus:
                failures += len(check_coherence(L, D).failures)
        elapsed = time.perf_counter() - t0
        assert failures == 0
        assert elapsed < 60, f"took {elapsed:.1f}s"


def test_criterion_5_consistency():
    with criterion(5, "consistency over the same corpus, non-vacuous"):
        witnessed = 0
        for name in ("classic", "parallel"):
            _, con = coherence_suite(name, 1000, seed=0)
            assert con.passed, con.failures[:1]
            witnessed += con.notes["definite_contradictions"]
        assert witnessed > 0


def test_criterion_6_oracle_equivalence():
    with criterion(6, "oracle equals engine on 500 theories x well-disciplined builtins"):
        for name in WELL_DISCIPLINED:
            v = oracle_suite(name, 500, seed=0)
            assert v.trials == 500 and v.passed, (name, v.failures[:1])


def test_criterion_7_sneg_algebra():
    with criterion(7, "strong negation algebra, structural and sampled"):
        verdicts = {v.name: v for v in sneg_algebra_suite(500, seed=0, semantic_samples=1000)}
        for name in ("sneg^3 = sneg", "sneg^2 = id on pos-only", "sneg output is pos-only"):
            assert verdicts[name].trials == 500 and verdicts[name].passed, name
        joint = verdicts["C and sneg(C) never jointly true"]
        assert joint.trials == 1000 and joint.passed, joint.failures[:1]
        assert all(v.passed for v in verdicts.values())


def test_criterion_8_stability(tweety):
    with criterion(8, "stability trials pass; unstable_choice yields an instability witness"):
        for name in ("classic", "parallel"):
            v = check_stability_empirical(get_logic(name), tweety, 200, seed=0)
            assert v.trials == 200 and v.passed, v.failures[:1]
            v = stability_suite(name, theories=20, trials=200, seed=0)
            assert v.trials == 200 and v.passed, v.failures[:1]
        w = check_stability_empirical(get_logic("unstable_choice"), DefeasibleTheory(), 50)
        assert not w.passed
        assert w.failures[0]["prefix"] == [] and w.failures[0]["lost"]


def test_criterion_9_check_logic_verdicts():
    with criterion(9, "discipline verdicts for the catalogue"):
        for name in ("classic", "delta", "parallel"):
            assert check_logic(get_logic(name)).verdict == "WellDisciplined", name
        assert any("CurrentProof in negative context" in v
                   for v in check_logic(get_logic("unstable_choice")).violations)
        assert any("not even-handed" in v for v in check_logic(get_logic("d1_d2")).violations)
        with pytest.raises(CyclicClosureDependency):
            stratify(get_logic("cyclic_closure"))
        assert check_logic(get_logic("cyclic_closure")).cycle == ("d", "d")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
