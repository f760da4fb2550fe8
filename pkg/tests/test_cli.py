import json
import subprocess
import sys

import pytest

from homtrace.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_wdist_json(capsys):
    code, out, _ = run(capsys, "wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2")
    assert code == 0
    data = json.loads(out)
    assert data["distribution"] == [{"w": 0, "f": 1}, {"w": 144, "f": 72}, {"w": 162, "f": 8}]
    assert (data["length"], data["dimension"], data["nprime"]) == (216, 4, None)
    assert list(data) == sorted(data)


def test_wdist_csv(capsys):
    code, out, _ = run(capsys, "wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2", "--csv")
    assert out == "weight,frequency\n0,1\n144,72\n162,8\n"


def test_determinism(capsys):
    args = ["verify", "--p", "3", "--m", "2", "--k", "2", "--variant", "d1", "--checks", "wdist,griesmer,dual,minimality,action,gauss"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--workers", "3")
    assert a == b


def test_verify_example1(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--m", "3", "--k", "2", "--variant", "d3", "--nprime", "2")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["wdist_match"]
    assert data["distribution"] == [{"w": 0, "f": 1}, {"w": 702, "f": 702}, {"w": 729, "f": 26}]
    assert data["griesmer"]["optimal"] and data["dual_distance"]["certified"] == 4
    assert data["minimality"]["all_minimal"]


def test_verify_example2(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--m", "4", "--k", "2", "--variant", "d3", "--nprime", "4")
    data = json.loads(out)
    assert code == 0 and data["provenance"] == "theorem6-table5"


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", "--p", "3", "--m", "2", "--k", "2", "--variant", "d1")
    data = json.loads(out)
    assert data["provenance"] == "remark1" and data["case"] == "m even"
    assert [r["w"] for r in data["distribution"]] == [0, 54, 72, 108]
    code, out, _ = run(capsys, "predict", "--p", "3", "--m", "2", "--k", "2", "--variant", "d3", "--nprime", "2")
    data = json.loads(out)
    assert data["distribution"] is None and data["interval"]["low"] == 27.0


def test_gauss_and_dual(capsys):
    code, out, _ = run(capsys, "gauss-sum", "--p", "3", "--m", "2")
    assert code == 0 and json.loads(out)["exact"] == "3^(2/2)"
    code, out, _ = run(capsys, "dual-distance", "--p", "2", "--m", "2", "--k", "2", "--variant", "d2", "--pair-search")
    data = json.loads(out)["dual_distance"]
    assert code == 0 and data["certified"] == 2 and data["pair_search_min"] == 2


def test_dump(capsys, tmp_path):
    code, out, _ = run(capsys, "dump-defining-set", "--p", "3", "--m", "2", "--k", "2", "--variant", "d3", "--nprime", "2")
    assert code == 0 and out.splitlines()[:2] == ["1,0;0,0", "1,0;0,1"] and len(out.splitlines()) == 18
    path = tmp_path / "d.txt"
    run(capsys, "wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d3", "--nprime", "2", "--dump-defining-set", str(path))
    assert path.read_text() == out


@pytest.mark.parametrize(
    "args",
    [
        ["wdist", "--p", "4", "--m", "2", "--k", "2", "--variant", "d2"],
        ["wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2", "--nprime", "2"],
        ["wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d3"],
        ["wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d3", "--nprime", "3"],
        ["wdist", "--p", "3", "--m", "2", "--k", "1", "--variant", "d2"],
        ["wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2", "--budget", "10"],
        ["wdist", "--p", "5", "--m", "2", "--k", "2", "--variant", "d2", "--modulus", "1,0,1"],
        ["predict", "--p", "5", "--m", "3", "--k", "2", "--variant", "d1"],
        ["verify", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2", "--checks", "bogus"],
    ],
)
def test_invalid_parameters_exit_2(capsys, args):
    code, out, err = run(capsys, *args)
    assert code == 2 and out == "" and err.startswith("error:")


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("HOMTRACE_BUDGET", "10")
    code, _, err = run(capsys, "wdist", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2")
    assert code == 2 and "budget" in err


def test_mismatch_exit_1(capsys, monkeypatch):
    import homtrace.cli as cli
    from homtrace.codes import WeightDistribution

    monkeypatch.setattr(cli, "hom_weight_distribution", lambda *a, **k: WeightDistribution({0: 1, 144: 71, 162: 9}))
    code, out, _ = run(capsys, "verify", "--p", "3", "--m", "2", "--k", "2", "--variant", "d2", "--checks", "wdist")
    assert code == 1 and json.loads(out)["wdist_match"] is False


def test_console_script():
    res = subprocess.run(
        [sys.executable, "-m", "homtrace.cli", "predict", "--p", "3", "--m", "3", "--k", "2", "--variant", "d2"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["provenance"] == "theorem3"
