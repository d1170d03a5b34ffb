"""Hypothesis strategies for theories and conditions."""

from hypothesis import strategies as st

from dlmeta.conditions import (
    FALSE, PROOF, TRUE, And, Antecedent, Closure, ComplementOf, Exists, ForAll, In, IsFact,
    NotIn, NotPure, Or, Pure, Q, RulesAll, RulesSD, RulesStrict, Superior, Var,
)
from dlmeta.tags import MINUS, PLUS, Tag
from dlmeta.theory import DefeasibleTheory, Literal, Rule, RuleKind

atoms = st.sampled_from(["a", "b", "c", "d"])
literals = st.builds(Literal, atoms, st.booleans())


@st.composite
def theories(draw, max_rules=6):
    facts = draw(st.frozensets(literals, max_size=4))
    n = draw(st.integers(0, max_rules))
    rules = [Rule(f"r{i}", draw(st.sampled_from(list(RuleKind))),
                  draw(st.frozensets(literals, max_size=3)), draw(literals))
             for i in range(n)]
    labels = [r.label for r in rules]
    sup = set()
    if len(labels) >= 2:
        # orient every sampled pair from lower to higher index: never cyclic
        for i, j in draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                                 max_size=4)):
            if i < j:
                sup.add((labels[i], labels[j]))
    return DefeasibleTheory(facts, rules, sup)


tags = st.sampled_from([Tag(PLUS, "delta"), Tag(MINUS, "delta"),
                        Tag(PLUS, "d"), Tag(MINUS, "d")])
lit_exprs = st.sampled_from([Q, ComplementOf(Q), Var("x"), ComplementOf(Var("x"))])
targets = st.sampled_from([PROOF, PROOF, Closure("P_delta")])
domains = st.one_of(st.builds(RulesAll, lit_exprs), st.builds(RulesStrict, lit_exprs),
                    st.builds(RulesSD, lit_exprs), st.just(Antecedent("r")))
pure_atoms = st.one_of(st.builds(IsFact, lit_exprs), st.just(Superior("r", "s")))


def _leaves(pos=True, neg=True):
    options = [st.builds(Pure, pure_atoms), st.builds(NotPure, pure_atoms),
               st.just(TRUE), st.just(FALSE)]
    if pos:
        options.append(st.builds(In, tags, lit_exprs, targets))
    if neg:
        options.append(st.builds(NotIn, tags, lit_exprs, targets))
    return st.one_of(*options)


def conditions(pos=True, neg=True):
    """Conditions over a fixed vocabulary.  Variables are not scoped: these
    are only for structural properties."""
    def extend(children):
        items = st.lists(children, min_size=2, max_size=3)
        return st.one_of(st.builds(And, items), st.builds(Or, items),
                         st.builds(Exists, st.sampled_from(["x", "r"]), domains, children),
                         st.builds(ForAll, st.sampled_from(["x", "r"]), domains, children))
    return st.recursive(_leaves(pos, neg), extend, max_leaves=12)
