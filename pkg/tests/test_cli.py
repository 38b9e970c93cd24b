import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from bottnv.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("which", ["adjoint", "coadjoint", "E-weights"])
@pytest.mark.parametrize("fmt,ext", [("json", "json"), ("text", "txt")])
def test_tables_golden(which, fmt, ext):
    code, out, _ = run("tables", which, "--format", fmt)
    assert code == 0
    assert out == (GOLDEN / f"tables_{which}.{ext}").read_text(encoding="utf-8")


def test_certify_all_golden():
    code, out, _ = run("certify-all", "--no-timing")
    assert code == 0
    assert out == (GOLDEN / "certify_all.txt").read_text(encoding="utf-8")


def test_verify_g2_json():
    code, out, _ = run("verify", "--type", "G2", "--adjoint", "--q", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "certified"
    assert data["survivors"] == [[1, 0]]
    assert data["survivor_entries"][0]["label"] == "ω_1"
    assert data["schema_version"] == 1
    assert "elapsed_seconds" in data
    assert data["provenance_counts"]
    assert list(data) == sorted(data)


def test_verify_symplectic():
    code, out, _ = run("verify", "--type", "C", "--rank", "4", "--coadjoint", "--q", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["survivors"] == [[0, 0, 0, 0]]


def test_verify_rejects_projective_line():
    code, out, err = run("verify", "--type", "A", "--rank", "1", "--marked", "1", "--q", "1")
    assert code == 1
    assert out == ""
    assert "P^1" in err


def test_verify_ambiguous_exit_code():
    code, out, _ = run("verify", "--type", "B", "--rank", "4", "--adjoint", "--q", "2", "--format", "json")
    assert code == 2
    assert json.loads(out)["status"] == "ambiguous"


def test_verify_not_found():
    code, out, _ = run("verify", "--type", "E6", "--adjoint", "--q-max", "3", "--format", "json")
    assert code == 2
    data = json.loads(out)
    assert data["status"] == "not-found"
    assert data["audit"] == [[1, "ambiguous"], [2, "ambiguous"], [3, "ambiguous"]]


def test_verify_minimal_q_search():
    code, out, _ = run("verify", "--type", "F4", "--adjoint", "--q-max", "6", "--format", "json", "--no-timing")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == 4 and data["survivors"] == [[0, 0, 0, 3]]


def test_verify_budget_exit_code():
    code, out, _ = run("verify", "--type", "E7", "--adjoint", "--q", "7", "--budget-weights", "10")
    assert code == 2
    assert "budget" in out


def test_certify_all_budget():
    # fresh process: warm caches in this one would skip the guarded loops
    proc = subprocess.run(
        [sys.executable, "-m", "bottnv", "certify-all", "--type", "E7", "--budget-seconds", "0.001"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "budget exceeded" in proc.stdout
    assert proc.stdout.rstrip().endswith("0/1 certified")


def test_certify_all_extended_includes_e8():
    code, out, _ = run("certify-all", "--type", "E8", "--extended", "--format", "json", "--no-timing")
    assert code == 0
    (case,) = json.loads(out)["cases"]
    assert case["q"] == 11 and case["survivors"] == [[5, 0, 0, 0, 0, 0, 0, 0]]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--type", "G2", "--q", "2"],
        ["verify", "--type", "G2", "--adjoint", "--coadjoint", "--q", "2"],
        ["verify", "--type", "G2", "--adjoint", "--q", "2", "--budget-seconds", "-1"],
        ["verify", "--type", "Q7", "--adjoint", "--q", "2"],
        ["verify", "--type", "G2", "--adjoint", "--q", "2", "--twist", "1,0"],
        ["tables", "nope"],
        ["cohomology", "--type", "B", "--rank", "3", "--marked", "2", "--weight", "1,2"],
        [],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert err.startswith("bottnv: error:")


def test_cohomology_examples():
    code, out, _ = run("cohomology", "--type", "E8", "--marked", "8", "--weight", "5,0,0,0,0,0,1,-2", "--format", "json")
    assert code == 0
    coh = json.loads(out)["cohomology"]
    assert list(coh) == ["1"] and coh["1"][0]["coords"] == [5, 0, 0, 0, 0, 0, 0, 0]
    code, out, _ = run("cohomology", "--type", "B", "--rank", "3", "--marked", "2", "--weight", "1,-2,4")
    assert code == 0 and "H^1: V^2ω_3" in out
    code, out, _ = run("cohomology", "--type", "G2", "--marked", "2", "--weight", "0,0")
    assert "H^0: V^0" in out


def test_cohomology_names_bad_coordinate():
    code, _, err = run("cohomology", "--type", "B", "--rank", "3", "--marked", "2", "--weight", "1,0,-1")
    assert code == 1
    assert "ω_3" in err


def test_exterior_and_roots():
    code, out, _ = run("exterior", "--type", "B", "--rank", "6", "--marked", "2", "--weight", "1,-1,1,0,0,0", "--q", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["central_charge_check"] is True
    code, out, _ = run("roots", "--type", "E8", "--format", "json")
    assert len(json.loads(out)["positive_roots"]) == 120


def test_thread_env_variable(monkeypatch):
    monkeypatch.setenv("BOTTNV_THREADS", "2")
    code, out, _ = run("verify", "--type", "G2", "--adjoint", "--q", "2", "--no-timing", "--format", "json")
    assert code == 0


def _json(argv, threads):
    code, out, _ = run(*argv, "--format", "json", "--no-timing", "--threads", str(threads))
    return code, out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--type", "F4", "--adjoint", "--q", "4"],
        ["verify", "--type", "D", "--rank", "5", "--adjoint", "--q", "3"],
        ["certify-all", "--type", "C"],
    ],
)
def test_output_independent_of_threads(argv):
    outs = {_json(argv, t) for t in (1, 4, 8)}
    assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bottnv", "tables", "coadjoint"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "tables_coadjoint.txt").read_text(encoding="utf-8")
