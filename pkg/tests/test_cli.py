from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rdcong.cli import main
from rdcong.identity import catalog_entry


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_table(capsys):
    code, out, _ = run(capsys, "compute", "rd", "--ell", "4", "--t", "9", "--nmax", "6")
    assert code == 0
    assert out.strip().splitlines()[-1] == "6 9"
    code, out, _ = run(capsys, "compute", "rd", "--nmax", "10", "--mod", "3")
    assert "6 0" in out.splitlines()


def test_compute_regular_and_distinct_agree(capsys):
    _, a, _ = run(capsys, "compute", "regular", "--ell", "3", "--nmax", "40")
    _, b, _ = run(capsys, "compute", "distinct", "--t", "3", "--nmax", "40")
    assert a == b


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "6")
    assert code == 0
    assert out.splitlines()[0] == "(6)" and out.splitlines()[-1] == "# 9 partitions of 6"
    code, _, err = run(capsys, "enumerate", "--n", "60")
    assert code == 2 and "limited" in err


def test_verify_identity_pass(capsys):
    code, out, _ = run(capsys, "verify", "identity", "eq3", "--depth", "400")
    assert code == 0
    assert out.strip() == "eq3 pass (400 terms)"


def test_verify_identity_insufficient_precision(capsys):
    code, out, _ = run(capsys, "verify", "identity", "eq34", "--depth", "100")
    assert code == 2
    assert "insufficient-precision" in out


def test_negative_control_catalog_exits_one(capsys, tmp_path):
    flipped = catalog_entry("eq3").text.replace(" + q*", " - q*")
    path = tmp_path / "mutated.cat"
    path.write_text(f"# sign-flipped control\neq3-flipped: {flipped} ; terms=50\neq1: f1 == f1 ; terms=10\n")
    code, out, _ = run(capsys, "verify", "identity", "all", "--catalog", str(path), "--json")
    assert code == 1
    results = json.loads(out)["results"]
    assert [r["status"] for r in results] == ["fail", "pass"]
    assert results[0]["counterexample"]["index"] == 1


def test_bad_catalog_file(capsys, tmp_path):
    path = tmp_path / "bad.cat"
    path.write_text("x: f1 == \n")
    code, _, err = run(capsys, "catalog", "list", "--catalog", str(path))
    assert code == 2 and "line 1" in err


def test_unknown_entry(capsys):
    code, _, err = run(capsys, "verify", "identity", "eq999")
    assert code == 2 and "eq999" in err


def test_verify_theorem_json(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "3.1", "--prime", "7", "--alpha", "0",
                       "--nmax", "30", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["version"] == "1"
    assert payload["config"]["prime"] == 7
    assert len(payload["results"]) == 6
    assert {r["status"] for r in payload["results"]} == {"pass"}
    assert all("elapsed" not in r for r in payload["results"])


def test_verify_theorem_errors(capsys):
    code, _, err = run(capsys, "verify", "theorem", "3.1", "--prime", "5")
    assert code == 2 and "3 mod 4" in err
    code, _, err = run(capsys, "verify", "theorem", "5.1")
    assert code == 2 and "--prime" in err


@pytest.mark.parametrize("argv", [
    ["verify", "theorem", "lemma1.1", "--json"],
    ["verify", "identity", "all", "--json"],
])
def test_json_is_independent_of_jobs(capsys, argv):
    outputs = []
    for jobs in ("1", "3"):
        code, out, _ = run(capsys, *argv, "--jobs", jobs)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--amax", "8", "--mod", "3", "--json")
    assert code == 0
    rows = json.loads(out)["results"]
    assert {"A": 4, "B": 3, "M": 3} in rows


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert out.splitlines()[0].startswith("eq2 ")
    assert len(out.splitlines()) == 30


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["compute", "rd", "--nmax", "5", "--bogus"])
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["verify", "identity", "eq2", "--jobs", "0"])
    assert info.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rdcong", "compute", "rd", "--nmax", "6"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip().endswith("6 9")
