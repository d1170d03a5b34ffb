import io
import json
import subprocess
import sys

import pytest

from dlmeta import Conclusion, parse_conclusion
from dlmeta.cli import main

from conftest import LOGICS, THEORIES


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


TWEETY = THEORIES / "tweety.dfl"


def test_conclusions_classic():
    code, out = run("conclusions", TWEETY, "--logic", "classic")
    assert code == 0
    assert "+partial ~fly(tweety)" in out.splitlines()
    assert "+partial fly(freddie)" not in out.splitlines()


def test_conclusions_are_grouped_by_tag():
    _, out = run("conclusions", TWEETY, "--logic", "parallel")
    lines = out.splitlines()
    assert "+lambda fly(freddie)" in lines
    assert "+spartial fly(freddie)" not in lines
    order = [l.split()[0] for l in lines]
    assert order == sorted(order, key=["+delta", "-delta", "+lambda", "-lambda",
                                       "+spartial", "-spartial"].index)


def test_conclusions_empty_theory():
    assert run("conclusions", THEORIES / "empty.dfl", "--logic", "delta") == (0, "")


def test_conclusions_json_round_trips():
    code, out = run("conclusions", TWEETY, "--logic", "classic", "--format", "json")
    assert code == 0
    _, text = run("conclusions", TWEETY, "--logic", "classic")
    parsed = [Conclusion.from_json(json.loads(l)) for l in out.splitlines()]
    assert parsed == [parse_conclusion(l) for l in text.splitlines()]


def test_conclusions_refuses_ill_disciplined_logic(capsys):
    code, out = run("conclusions", THEORIES / "self_loop.dfl", "--logic", "cwa_naive")
    assert code == 2
    assert "verdict Violations" in out


def test_logic_file_option():
    code, out = run("conclusions", TWEETY, "--logic-file", LOGICS / "classic.dlx")
    assert code == 0 and "+partial ~fly(tweety)" in out


def test_query():
    assert run("query", TWEETY, "+partial ~fly(tweety)") == (0, "Proved\n")
    assert run("query", TWEETY, "--logic", "parallel", "+spartial fly(freddie)") == \
        (3, "NotProved\n")
    code, out = run("query", TWEETY, "-partial penguin(freddie)", "--format", "json")
    assert json.loads(out)["result"] == "Proved"


def test_explain():
    code, out = run("explain", TWEETY, "--logic", "classic", "+partial ~fly(tweety)")
    assert code == 0
    final = out.split("\n4. ")[1]
    assert "r2_tweety" in final and "r2_tweety > r1_tweety" in final


def test_explain_json():
    code, out = run("explain", TWEETY, "--logic", "classic", "+partial ~fly(tweety)",
                    "--format", "json")
    recs = [json.loads(l) for l in out.splitlines()]
    assert [r["step"] for r in recs] == list(range(1, len(recs) + 1))
    assert {"superior": "r2_tweety", "inferior": "r1_tweety", "holds": True} \
        in recs[-1]["superiority"]


def test_explain_not_a_consequence():
    code, _ = run("explain", TWEETY, "--logic", "classic", "+partial fly(freddie)")
    assert code == 3


def test_explain_single_fact():
    code, out = run("explain", THEORIES / "fact.dfl", "--logic", "delta", "+delta a")
    assert code == 0 and out.splitlines()[0] == "1. +delta a"
    assert not any(l.startswith("2.") for l in out.splitlines())


def test_check_logic_parallel():
    code, out = run("check-logic", "--logic", "parallel")
    assert code == 0
    assert "levels delta:0 lambda:1 spartial:2" in out
    assert out.rstrip().endswith("verdict WellDisciplined")


@pytest.mark.parametrize("name, needle", [
    ("unstable_choice", "CurrentProof in negative context"),
    ("d1_d2", "closure P_plus_delta not even-handed"),
    ("cyclic_closure", "closure dependency cycle: d -> d"),
])
def test_check_logic_violations(name, needle):
    code, out = run("check-logic", LOGICS / f"{name}.dlx")
    assert code == 2 and needle in out


def test_check_logic_json():
    code, out = run("check-logic", LOGICS / "classic.dlx", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "WellDisciplined"


@pytest.mark.parametrize("argv", [
    ["conclusions", "missing.dfl"],
    ["query", TWEETY, "+partial"],
    ["query", TWEETY, "+lambda bird(tweety)"],
    ["check-logic"],
])
def test_input_errors_exit_1(argv):
    assert run(*argv)[0] == 1


def test_parse_errors_exit_1(tmp_path):
    bad = tmp_path / "bad.dfl"
    bad.write_text("r: p => .")
    assert run("conclusions", bad)[0] == 1
    bad_logic = tmp_path / "bad.dlx"
    bad_logic.write_text("(logic x (rule +d (in +d a proof)))")
    assert run("check-logic", bad_logic)[0] == 1


def test_fuzz_is_deterministic():
    a = run("fuzz", "--logic", "classic", "--trials", "40", "--seed", "7", "--format", "json")
    b = run("fuzz", "--logic", "classic", "--trials", "40", "--seed", "7", "--format", "json")
    assert a == b and a[0] == 0
    assert all(json.loads(l)["passed"] for l in a[1].splitlines())


def test_fuzz_refuses_ill_disciplined():
    assert run("fuzz", "--logic", "unstable_choice", "--trials", "5")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dlmeta", "query", str(TWEETY),
                          "+partial ~fly(tweety)"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "Proved\n"
