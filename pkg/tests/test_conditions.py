import pytest
from hypothesis import given, settings

from dlmeta import canonical, is_neg_only, is_p_disciplined, is_pos_only, negate, sneg
from dlmeta.conditions import (
    FALSE, PROOF, TRUE, And, Closure, ComplementOf, Exists, ForAll, In, IsFact, NotIn,
    NotPure, Or, Pure, Q, RulesSD, Superior, Var, check_scoping, compl, referenced_closures,
    referenced_tags, rename_closures,
)
from dlmeta.errors import LogicSyntaxError, UnboundVariableError
from dlmeta.sexpr import format_condition, parse_condition
from dlmeta.tags import parse_tag

from strategies import conditions

PD, MD = parse_tag("+delta"), parse_tag("-delta")


def test_sneg_flips_membership_tags():
    assert sneg(In(PD, Q)) == In(MD, Q)
    assert sneg(In(MD, Q, Closure("P"))) == In(PD, Q, Closure("P"))


def test_sneg_turns_non_membership_into_membership():
    assert sneg(NotIn(PD, Q)) == In(PD, Q)


def test_sneg_dualises_connectives_and_quantifiers():
    c = Exists("r", RulesSD(Q), And([In(PD, Var("r")), Pure(IsFact(Q)), TRUE]))
    assert sneg(c) == ForAll("r", RulesSD(Q), Or([In(MD, Var("r")), NotPure(IsFact(Q)), FALSE]))


def test_negate_is_classical():
    c = Or([In(PD, Q), NotIn(MD, ComplementOf(Q))])
    assert negate(c) == And([NotIn(PD, Q), In(MD, ComplementOf(Q))])
    assert negate(negate(c)) == c


def test_classifiers():
    c = And([In(PD, Q), NotIn(MD, Q, Closure("P"))])
    assert not is_pos_only(c) and not is_neg_only(c)
    assert is_p_disciplined(c)
    assert not is_p_disciplined(NotIn(PD, Q))
    assert is_pos_only(TRUE) and is_neg_only(TRUE)


def test_referenced_tags_and_closures():
    c = And([In(PD, Q), NotIn(MD, Q, Closure("P")), In(MD, Q, Closure("R"))])
    assert referenced_tags(c) == {PD}
    assert referenced_tags(c, Closure("P")) == {MD}
    assert referenced_closures(c) == {"P", "R"}
    assert referenced_closures(rename_closures(c, {"P": "X"})) == {"X", "R"}


def test_compl_collapses_double_complement():
    assert compl(compl(Q)) == Q


def test_canonical_ignores_order_nesting_and_bound_names():
    a = And([In(PD, Q), Or([TRUE, In(MD, Q)]), And([FALSE])])
    b = And([And([FALSE, Or([In(MD, Q), TRUE])]), In(PD, Q)])
    assert canonical(a) == canonical(b)
    x = Exists("r", RulesSD(Q), In(PD, Var("r")))
    y = Exists("s", RulesSD(Q), In(PD, Var("s")))
    assert x != y and canonical(x) == canonical(y)
    assert canonical(In(PD, Q)) != canonical(In(MD, Q))


def test_scoping_catches_unbound_and_missorted_variables():
    with pytest.raises(UnboundVariableError):
        check_scoping(In(PD, Var("a")))
    with pytest.raises(UnboundVariableError):
        check_scoping(Exists("r", RulesSD(Q), In(PD, Var("r"))))
    check_scoping(parse_condition(
        "(exists r (rules-sd (head q)) (forall a (antecedent r) (in +delta a proof)))"))


# -- s-expressions ---------------------------------------------------------

def test_parse_condition_shapes():
    c = parse_condition("(or (fact q) (notin +delta (neg q) P_delta) (sup t s) true)")
    assert c == Or([Pure(IsFact(Q)), NotIn(PD, ComplementOf(Q), Closure("P_delta")),
                    Pure(Superior("t", "s")), TRUE])


@pytest.mark.parametrize("text", [
    "(and (in +delta q proof)",
    "(in +delta q)",
    "(exists q (rules-sd (head q)) true)",
    "(frob q)",
    "(in delta q proof)",
    "(forall r (rules-sd q) true)",
    "proof",
])
def test_malformed_conditions(text):
    with pytest.raises(LogicSyntaxError):
        parse_condition(text)


def test_error_offsets_point_into_the_source():
    with pytest.raises(LogicSyntaxError) as info:
        parse_condition("(and true (frob q))")
    assert info.value.pos == 11


@settings(max_examples=300, deadline=None)
@given(conditions())
def test_printing_round_trips(c):
    assert parse_condition(format_condition(c)) == c
    assert parse_condition(format_condition(c, indent=2)) == c


# -- strong negation algebra -------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(conditions())
def test_sneg_cubed_is_sneg(c):
    assert sneg(sneg(sneg(c))) == sneg(c)


@settings(max_examples=300, deadline=None)
@given(conditions(neg=False))
def test_sneg_is_self_inverse_on_pos_only(c):
    assert sneg(sneg(c)) == c


@settings(max_examples=300, deadline=None)
@given(conditions())
def test_sneg_output_is_pos_only(c):
    assert is_pos_only(sneg(c))


@settings(max_examples=300, deadline=None)
@given(conditions(neg=False))
def test_sneg_left_inverts_negation_on_pos_only(c):
    assert sneg(negate(c)) == c


@settings(max_examples=300, deadline=None)
@given(conditions(pos=False))
def test_sneg_is_negation_on_neg_only(c):
    assert sneg(c) == negate(c)


@settings(max_examples=200, deadline=None)
@given(conditions())
def test_canonical_is_idempotent_and_commutes_with_sneg(c):
    k = canonical(c)
    assert canonical(k) == k
    assert canonical(sneg(k)) == canonical(sneg(c))


def test_sneg_squared_differs_from_identity_with_negative_atoms():
    c = NotIn(PD, Q, PROOF)
    assert sneg(sneg(c)) == In(MD, Q)
