import copy
import json
from collections import Counter

import jsonschema
import pytest

from penrose_cpn import cli, relforms
from penrose_cpn.charlib import decompose
from penrose_cpn.flagspace import G
from penrose_cpn.render import DOC_SCHEMAS, schema_for

RELFORMS_DOWNSTREAM = {
    "relforms_p1", "relforms_p2", "relforms_p3", "e1page_trivial_n3", "trivial_n3", "trivial_n2",
    "prop1", "prop2", "prop3", "theta_raw", "theta_cancelled", "conjecture_complex", "hermitian_names_n2",
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,expected", [
    (["bbw", "--space", "F", "--n", "3", "--weight", "-2,3,0"], "H^1 = [0,2,0] (dim 20)\n"),
    (["bbw", "--space", "F", "--n", "3", "--weight", "2,-1,0"], "all cohomology vanishes\n"),
    (["relforms", "--n", "3", "--p", "2"], "(2,1,0) ⊕ (-1,1,1)\n"),
    (["dim", "--n", "3", "--weight", "1,0,1"], "15\n"),
    (["pullback", "--n", "3", "--weight", "1,0,1"], "(-1,1,1)\n"),
    (["pushforward", "--n", "3", "--weight", "-1,1,1"], "q=0: (-1,1,1) on M(3)\n"),
    (["tensor", "--n", "3", "--space", "M", "--left", "1,0,1", "--right", "-2,1,0"], "(-1,1,1) ⊕ (0,0,0)\n"),
    (["tangent", "--space", "F", "--n", "3"], "grade 1: (-1,1,1) ⊕ (2,-1,0)\ngrade 2: (1,0,1)\n"),
])
def test_text_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_trivial_n2_complex(capsys):
    code, out, _ = run(capsys, "transform", "--n", "2", "--trivial", "--format", "text")
    assert code == 0
    assert "columns: Λ^{0,0} | Λ^{0,1}⊕Λ^{1,0} | Λ^{1,1}_⊥" in out


@pytest.mark.parametrize("argv", [
    ["bbw", "--space", "M", "--n", "3", "--weight", "1,0,1"],
    ["pushforward", "--n", "3", "--weight", "-3,-3,0"],
    ["pushforward", "--n", "3", "--weight", "0,-1,0"],
    ["pullback", "--n", "3", "--weight", "2,-1,0"],
    ["relforms", "--n", "3"],
    ["tensor", "--n", "2", "--space", "G", "--left", "1,0+0,1", "--right", "1,1"],
    ["tangent", "--space", "M", "--n", "4"],
    ["dim", "--n", "3", "--weight", "1,1,1"],
    ["transform", "--n", "3", "--theta"],
    ["transform", "--n", "3", "--theta", "--raw"],
    ["transform", "--n", "3", "--trivial", "--page"],
    ["transform", "--n", "3", "--weight", "-3,-3,0"],
    ["transform", "--n", "3", "--conjecture"],
])
def test_json_outputs_validate(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema_for(doc))


def test_non_collapsing_transform_emits_page(capsys):
    code, out, _ = run(capsys, "transform", "--n", "3", "--weight", "-3,-3,0", "--format", "json")
    assert code == 0 and json.loads(out)["collapsed"] is False


def test_latex_format(capsys):
    code, out, _ = run(capsys, "transform", "--n", "3", "--theta", "--format", "latex")
    assert code == 0 and out.startswith("\\documentclass")


@pytest.mark.parametrize("argv", [
    [],
    ["bbw", "--space", "Q", "--n", "3", "--weight", "0,0,0"],
    ["bbw", "--space", "F", "--n", "x", "--weight", "0,0,0"],
    ["transform", "--n", "3"],
    ["transform", "--n", "3", "--theta", "--trivial"],
    ["bbw", "--space", "F", "--n", "3", "--weight", "0,0,0", "--format", "yaml"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv,message", [
    (["bbw", "--space", "F", "--n", "3", "--weight", "0,0,-1"], "NotLeviDominant(3)"),
    (["bbw", "--space", "F", "--n", "3", "--weight", "0,0"], "--n is 3"),
    (["dim", "--n", "3", "--weight", "1,-1,0"], "dominant"),
    (["relforms", "--n", "3", "--p", "5"], "outside"),
    (["bbw", "--space", "F", "--n", "3", "--weight", "1,a,0"], "1,a,0"),
])
def test_validation_errors_exit_1(capsys, argv, message):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert message in err


def test_grades_file(capsys, tmp_path):
    path = tmp_path / "theta.json"
    path.write_text(json.dumps({"n": 3, "grades": [[[2, -1, 0], [-1, 1, 1]], [[1, 0, 1]]]}))
    _, from_file, _ = run(capsys, "transform", "--n", "3", "--grades", str(path), "--format", "json")
    _, builtin, _ = run(capsys, "transform", "--n", "3", "--theta", "--format", "json")
    assert from_file == builtin
    assert run(capsys, "transform", "--n", "2", "--grades", str(path))[0] == 1


# --- the fixture corpus --------------------------------------------------------

def _relaxed(schema):
    """Drop "required" so partial expectations can be type-checked."""
    if isinstance(schema, dict):
        return {k: _relaxed(v) for k, v in schema.items() if k != "required"}
    if isinstance(schema, list):
        return [_relaxed(v) for v in schema]
    return schema


def test_corpus_contents():
    ids = [fx["id"] for fx in cli.load_corpus()]
    assert len(ids) == len(set(ids)) == 19
    for fx in cli.load_corpus():
        assert set(fx) == {"id", "argv", "expected", "provenance"}
        jsonschema.validate(fx["expected"], _relaxed(DOC_SCHEMAS[fx["expected"]["kind"]]))


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = out.splitlines()
    assert sum(line.startswith("PASS ") for line in lines) == 19
    assert lines[-1] == "19/19 fixtures passed"


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "prop2")
    assert code == 0
    assert [line.split()[1] for line in out.splitlines() if line.startswith(("PASS", "FAIL"))] == ["prop2"]
    code, out, _ = run(capsys, "verify", "--filter", "bbw_*")
    assert out.count("PASS") == 5


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify")[1]
    second = run(capsys, "verify")[1]
    assert first == second


def test_verify_reports_mismatch_with_diff(capsys, tmp_path):
    fixtures = cli.load_corpus()
    bad = copy.deepcopy(next(fx for fx in fixtures if fx["id"] == "prop3"))
    bad["expected"]["cohomology"][0]["dim"] = 16
    (tmp_path / "01_bad.json").write_text(json.dumps(bad))
    good = next(fx for fx in fixtures if fx["id"] == "bbw_000")
    (tmp_path / "02_good.json").write_text(json.dumps(good))
    code, out, _ = run(capsys, "verify", "--corpus", str(tmp_path))
    assert code == 1
    assert "FAIL prop3" in out and "PASS bbw_000" in out
    assert "$.cohomology[0].dim: expected 16, got 15" in out


def test_corrupted_relative_forms_fail_exactly_downstream(capsys, monkeypatch):
    def wrong(n):
        # swap eps_2 - eps_1 for eps_1 - eps_2
        weights = [relforms._root_label(n, 1, j) for j in range(3, n + 2)] + [relforms._root_label(n, 1, 2)]
        return decompose(G(n), Counter(weights))

    monkeypatch.setattr(relforms, "relative_cotangent", wrong)
    code, out, _ = run(capsys, "verify")
    assert code == 1
    failed = {line.split()[1] for line in out.splitlines() if line.startswith("FAIL")}
    assert failed == RELFORMS_DOWNSTREAM


def test_mismatches_helper():
    assert cli.mismatches({"a": [1, 2]}, {"a": [1, 2], "b": 0}) == []
    assert cli.mismatches({"a": [1, 2]}, {"a": [1]}) == ['$.a: expected [1, 2], got [1]']
    assert cli.mismatches({"a": 1}, {}) == ["$.a: missing"]
