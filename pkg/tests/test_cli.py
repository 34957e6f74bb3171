import json
import subprocess
import sys

import pytest

from ver4.cli import lie_from_payload, main
from ver4.dist_lie import verify_lie_axioms, verify_restricted_axioms


def run(args, capsys):
    code = main(args)
    return code, capsys.readouterr().out


def run_json(args, capsys):
    code, out = run(args + ["--json"], capsys)
    return code, json.loads(out)


def test_lie_gm_table(capsys):
    code, rep = run_json(["lie", "gm"], capsys)
    assert code == 0 and rep["status"] == "PASS"
    p = rep["payload"]
    assert p["basis"] == ["e", "f"]
    assert p["d"] == {"e": None, "f": "e"}
    assert p["square"] == {"f": "undefined", "e": ["e"]}
    assert p["bracket"] == {"[e,e]": [], "[e,f]": [], "[f,e]": [], "[f,f]": ["e"]}


def test_lie_ga_all_zero(capsys):
    code, rep = run_json(["lie", "ga"], capsys)
    assert code == 0
    assert all(v == [] for v in rep["payload"]["bracket"].values())
    assert rep["payload"]["square"] == {"f": "undefined", "e": []}


def test_lie_gl01_f_f_is_e(capsys):
    code, rep = run_json(["lie", "gl", "0", "1"], capsys)
    assert code == 0
    assert rep["payload"]["bracket"]["[f11,f11]"] == ["e11"]
    assert rep["parameters"] == {"group": "gl", "m": 0, "n": 1, "trunc": 4, "threads": 1}


def test_info(capsys):
    _, rep = run_json(["info", "ga"], capsys)
    assert rep["payload"]["lie_decomposition"] == {"k": 0, "P": 1}
    _, rep = run_json(["info", "gl", "0", "1"], capsys)
    assert rep["payload"]["lie_decomposition"] == {"k": 0, "P": 1}
    _, rep = run_json(["info", "gl", "1", "1"], capsys)
    assert rep["payload"]["tangent_dim"] == 5
    assert rep["payload"]["lie_decomposition"] == {"k": 3, "P": 1}
    _, rep = run_json(["info", "gl", "2", "1"], capsys)
    assert rep["payload"]["tangent_dim"] == 10
    assert rep["payload"]["lie_decomposition"] == {"k": 8, "P": 1}


def test_text_output(capsys):
    code, out = run(["info", "ga"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "ver4 info ga: PASS"
    assert "lie_basis: e, f" in out


def test_verify_exit_codes(capsys):
    assert run(["verify", "hopf", "ga", "--trunc", "4"], capsys)[0] == 0
    assert run(["verify", "all", "gl", "0", "1", "--trunc", "4"], capsys)[0] == 0
    code, rep = run_json(["verify", "hopf", "gl", "1", "1", "--trunc", "3"], capsys)
    assert code == 1 and rep["status"] == "FAIL" and rep["counterexamples"]
    code, rep = run_json(["verify", "lie", "gl", "9", "9", "--trunc", "99"], capsys)
    assert code == 2 and rep["status"] == "ERROR" and "resource bound" in rep["error"]
    code, rep = run_json(["verify", "hopf", "ga", "--trunc", "9"], capsys)
    assert code == 2
    code, rep = run_json(["lie", "ga", "--trunc", "2"], capsys)
    assert code == 2 and "trunc" in rep["error"]


def test_verify_all_skips_lie_at_n2(capsys):
    code, rep = run_json(["verify", "all", "gm", "--trunc", "2"], capsys)
    assert code == 0
    assert rep["payload"]["suites"]["lie"].startswith("skipped")


def test_antipode_flag(capsys):
    assert run(["verify", "hopf", "gl", "0", "2", "--trunc", "5"], capsys)[0] == 1
    assert run(["verify", "hopf", "gl", "0", "2", "--trunc", "5", "--antipode", "series"],
               capsys)[0] == 0


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("VER4_THREADS", "3")
    _, rep = run_json(["info", "ga"], capsys)
    assert rep["parameters"]["threads"] == 3
    monkeypatch.setenv("VER4_THREADS", "zero")
    code, rep = run_json(["info", "ga"], capsys)
    assert code == 2 and "VER4_THREADS" in rep["error"]


def test_dist_and_tangent(capsys):
    code, rep = run_json(["dist", "gl", "0", "1", "--max-order", "2"], capsys)
    assert code == 0
    assert rep["payload"]["layer_dims"] == [1, 3, 5]
    assert rep["payload"]["commutator"]["[<w11>,<w11>]"] == ["<t11>"]
    code, rep = run_json(["dist", "ga", "--max-order", "5"], capsys)
    assert code == 2
    code, rep = run_json(["tangent", "gl", "1", "1", "--trunc", "3"], capsys)
    assert code == 0 and rep["payload"]["oracle_homs"] == 32


@pytest.mark.parametrize("args", [["ga"], ["gm"], ["gl", "0", "1"], ["gl", "0", "2"],
                                  ["gl", "1", "1"]])
def test_json_round_trip(args, capsys):
    code, rep = run_json(["lie", *args, "--trunc", "3"], capsys)
    assert code == 0
    L = lie_from_payload(rep["payload"])
    assert L.labels == tuple(rep["payload"]["basis"])
    for suite in ("lie", "restricted"):
        vcode, vrep = run_json(["verify", suite, *args, "--trunc", "3"], capsys)
        verifier = verify_lie_axioms if suite == "lie" else verify_restricted_axioms
        assert verifier(L).status == vrep["status"]
        assert (vcode == 0) == (vrep["status"] == "PASS")


def test_deterministic(capsys):
    a = run(["lie", "gl", "0", "2", "--json"], capsys)
    b = run(["lie", "gl", "0", "2", "--json"], capsys)
    assert a == b


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "ver4.cli", "info", "gm", "--json"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["payload"]["tangent_dim"] == 2
