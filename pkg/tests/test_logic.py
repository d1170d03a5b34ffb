import pytest

from dlmeta import (
    CyclicClosureDependency, LogicError, UnboundVariableError, check_logic, get_logic,
    parse_logic, print_logic, sneg, stratify,
)
from dlmeta.builtins import CATALOG, WELL_DISCIPLINED, UnknownLogic, logic_source
from dlmeta.errors import LogicSyntaxError, UnknownTagError
from dlmeta.logic import complete_by_sneg, dependency_edges, involved, reference_closure
from dlmeta.tags import parse_tag

from conftest import LOGICS


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_parses_and_round_trips(name):
    L = get_logic(name)
    assert parse_logic(print_logic(L)) == L


def test_parallel_file_matches_construction():
    assert parse_logic((LOGICS / "parallel.dlx").read_text()) == get_logic("parallel")


@pytest.mark.parametrize("name", WELL_DISCIPLINED)
def test_well_disciplined_builtins(name):
    r = check_logic(get_logic(name))
    assert r.verdict == "WellDisciplined", r.violations


def test_parallel_levels():
    r = check_logic(get_logic("parallel"))
    assert r.stratification == {"delta": 0, "lambda": 1, "spartial": 2}
    assert r.even_handed == {"P_delta": True, "P_lambda": True}


def test_classic_has_a_single_stratum():
    assert stratify(get_logic("classic")) == {"delta": 0, "partial": 0}


def test_unstable_choice_violates_p_discipline():
    r = check_logic(get_logic("unstable_choice"))
    assert "rule +d: CurrentProof in negative context" in r.violations
    assert not r.p_disciplined


def test_d1_d2_closure_is_not_even_handed():
    r = check_logic(get_logic("d1_d2"))
    assert r.violations == ["closure P_plus_delta not even-handed"]
    assert r.p_disciplined


def test_cyclic_closure_has_no_stratification():
    L = get_logic("cyclic_closure")
    with pytest.raises(CyclicClosureDependency) as info:
        stratify(L)
    assert info.value.cycle == ("d", "d")
    r = check_logic(L)
    assert r.stratification is None
    assert "stratification: closure dependency cycle: d -> d" in r.violations


def test_cwa_naive_breaks_strong_negation_only():
    r = check_logic(get_logic("cwa_naive"))
    assert r.violations == ["strong negation: condition of -d is not sneg of +d"]
    assert r.posn_pairs == {"delta": True, "d": False}


def test_parallel_plus_uses_one_sided_closures():
    r = check_logic(get_logic("parallel_plus"))
    assert "closure P_plus_delta not even-handed" in r.violations
    assert any("has no -" in v for v in r.violations)


def test_classic_minus_partial_is_sneg_of_plus_partial():
    # the file transcribes -partial by hand; the checker compares structure
    L = get_logic("classic")
    from dlmeta import canonical
    assert canonical(L.condition(parse_tag("-partial"))) == \
        canonical(sneg(L.condition(parse_tag("+partial"))))


def test_reference_closure_and_involvement():
    L = get_logic("parallel")
    assert reference_closure(L, [parse_tag("+spartial")]) == {parse_tag("+spartial")}
    assert involved(L, "P_lambda") == {"lambda"}
    assert ("spartial", "lambda", True) in dependency_edges(L)


def test_complete_by_sneg_builds_well_disciplined_logic():
    delta = get_logic("delta")
    L = complete_by_sneg("again", [delta.rule_for(parse_tag("+delta"))])
    assert L.condition(parse_tag("-delta")) == sneg(delta.condition(parse_tag("+delta")))
    assert check_logic(L).well_disciplined


def test_report_render_and_json():
    r = check_logic(get_logic("unstable_choice"))
    text = r.render()
    assert text.splitlines()[-1] == "verdict Violations"
    j = r.to_json()
    assert j["verdict"] == "Violations" and j["levels"] == {"delta": 0, "d": 0}


def test_unknown_tag_and_logic():
    with pytest.raises(UnknownTagError):
        get_logic("classic").rule_for(parse_tag("+lambda"))
    with pytest.raises(UnknownLogic):
        logic_source("nonesuch")


@pytest.mark.parametrize("text, err", [
    ("(logic x (rule +d (in +e q proof)))", LogicError),
    ("(logic x (rule +d (in +d a proof)))", UnboundVariableError),
    ("(logic x (rule +d true) (rule +d false))", LogicError),
    ("(logic x (rule +d (in +d q P)))", LogicError),
    ("(logic x (rule +d true) (closure P +e))", LogicError),
    ("(logic x (rule +d true) (main e))", LogicError),
    ("(logic x (rule +d true) (frob))", LogicSyntaxError),
    ("(logic x (rule d true))", LogicSyntaxError),
    ("(rule +d true)", LogicSyntaxError),
    ("(logic x (rule +d true)", LogicSyntaxError),
])
def test_bad_logic_definitions(text, err):
    with pytest.raises(err):
        parse_logic(text)
