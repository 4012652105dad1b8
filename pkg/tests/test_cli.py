import json
import subprocess
import sys
from pathlib import Path

import pytest

from kacmoody.cli import UsageError, main, make_job, parse_element, run
from kacmoody.linalg import q

from conftest import A2, algebra

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
INVOCATIONS = json.loads((GOLDEN / "invocations.json").read_text())


@pytest.mark.parametrize("name", sorted(INVOCATIONS))
def test_golden_output(name):
    code, text = run(INVOCATIONS[name], environ={})
    assert code == 0
    assert text.encode() == (GOLDEN / name).read_bytes()


def test_golden_through_console_entry(capsys):
    assert main(INVOCATIONS["classify_affine.json"]) == 0
    assert capsys.readouterr().out == (GOLDEN / "classify_affine.json").read_text()


def test_module_invocation():
    out = subprocess.run(
        [sys.executable, "-m", "kacmoody.cli", *INVOCATIONS["bch_a2.json"]],
        capture_output=True,
        text=True,
        check=False,
    )
    assert out.returncode == 0
    assert out.stdout == (GOLDEN / "bch_a2.json").read_text()


def test_bch_golden_content():
    data = json.loads((GOLDEN / "bch_a2.json").read_text())
    assert data["z_text"] == "e1 + e2 + 1/2*[e1,e2]"


def test_mult_golden_content():
    data = json.loads((GOLDEN / "mult_affine_peterson.json").read_text())
    assert data["agree"]
    rows = {tuple(r["root"]): r for r in data["rows"]}
    for n in (1, 2, 3):
        assert rows[(n, n)]["serre_dim"] == rows[(n, n)]["oracle_dim"] == 1


def test_deterministic_repeat():
    argv = ["commutator", "--matrix", "[[2,-2],[-2,2]]", "--alpha", "1,0", "--beta", "0,1", "--K", "4"]
    assert run(argv, {}) == run(argv, {})


def test_usage_errors_exit_2():
    assert run(["bogus"], {})[0] == 2
    assert run(["classify"], {})[0] == 2
    assert run(["classify", "--matrix", "[[2,1],[1,2]]"], {})[0] == 2
    assert run(["bch", "--matrix", "[[2,-1],[-1,2]]", "--x", "e7", "--y", "e1"], {})[0] == 2
    code, text = run(["bch", "--matrix", "not json", "--x", "e1", "--y", "e2"], {})
    assert code == 2 and json.loads(text)["error"] == "UsageError"


def test_computation_error_exit_1():
    code, text = run(["rootgroup", "--matrix", "[[2,-3],[-3,2]]", "--alpha=-1,-1"], {})
    assert code == 1
    assert json.loads(text)["error"] == "NegativeImaginaryExponential"
    code, text = run(["exp", "--matrix", "[[2,-1],[-1,2]]", "--x", "e1", "--K", "3", "--window=-1,5"], {})
    assert code == 1
    assert json.loads(text) == {"error": "CutoffExceeded", "degree": 5, "cutoff": 3, "message": json.loads(text)["message"]}


def test_cutoff_env_variable():
    argv = ["roots", "--matrix", "[[2,-2],[-2,2]]"]
    assert make_job(argv, {}).cutoff == 8
    assert make_job(argv, {"KM_DEFAULT_CUTOFF": "4"}).cutoff == 4
    assert make_job(argv + ["--K", "5"], {"KM_DEFAULT_CUTOFF": "4"}).cutoff == 5
    assert run(argv, {"KM_DEFAULT_CUTOFF": "x"})[0] == 2
    data = json.loads(run(argv, {"KM_DEFAULT_CUTOFF": "4"})[1])
    assert max(r["height"] for r in data["roots"]) == 4


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, text = run(INVOCATIONS["classify_affine.json"] + ["--output", str(target)], {})
    assert code == 0 and text == ""
    assert target.read_text() == (GOLDEN / "classify_affine.json").read_text()


def test_element_parser():
    alg = algebra(A2, 4)
    x = parse_element(alg, "1/2*e1 - 3*[e1,e2] + h2 + c1 + x(-1,0;0)")
    assert x == alg.e(1) * q("1/2") - alg.bracket(alg.e(1), alg.e(2)) * 3 + alg.h(2) + alg.coroot(1) + alg.f(1)
    assert parse_element(alg, json.dumps({"terms": [{"root": [1, 0], "idx": 0, "coeff": "2/3"}]})) == alg.e(1) * q("2/3")
    with pytest.raises(UsageError):
        parse_element(alg, "e1 +")
    with pytest.raises(UsageError):
        parse_element(alg, "3")


def test_exp_operator_output():
    code, text = run(["exp", "--matrix", "[[2,-1],[-1,2]]", "--x", "e1", "--K", "2", "--window=-1,1"], {})
    assert code == 0
    blocks = json.loads(text)["operator"]["blocks"]
    assert {(b["from"], b["to"]) for b in blocks} >= {(-1, -1), (-1, 0), (-1, 1), (0, 1)}


def test_rootgroup_report():
    argv = ["rootgroup", "--matrix", "[[2,-3],[-3,2]]", "--alpha", "3,2", "--K", "10", "--coords", '{"1": 1, "2": "1/2"}']
    code, text = run(argv, {})
    data = json.loads(text)
    assert code == 0
    assert data["mult"] == 2 and data["kind"] == "imaginary-free"
    assert data["layer_dims"] == [2, 1, 2, 3, 6, 9]
    assert [l["dim"] for l in data["layers_in_g"]] == [2, 1]
    assert data["magnus"]["terms"][0] == {"coeff": "1", "word": []}


def test_verify_single_matrix():
    code, text = run(["verify", "--suite", "liealg", "--matrix", "[[2,-1],[-1,2]]", "--samples", "2"], {})
    data = json.loads(text)
    assert code == 0 and data["passed"]
    assert {r["property"] for r in data["results"]} >= {"serre", "jacobi", "peterson"}
