import json
import os
import subprocess

import pytest

CLI = os.environ.get("APNSPECTRA_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="APNSPECTRA_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_field_report():
    r = run("field", "--n", "6")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["n"] == 6
    assert rep["reduction_poly"] == "0x43"
    assert rep["order"] == 63
    assert rep["order_factorization"] == {"3": 2, "7": 1}


def test_analyze_family_json():
    r = run("analyze", "--n", "6", "--family", "f5")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    values = sorted(e["value"] for e in rep["spectrum"])
    assert values == [-16, -8, 0, 8, 16]
    assert rep["is_apn"] is True
    assert rep["differential_uniformity"] == 2


def test_family_vs_poly_agree_modulo_provenance():
    a = json.loads(run("analyze", "--n", "5", "--family", "gold").stdout)
    b = json.loads(run("analyze", "--n", "5", "--poly", "x^3").stdout)
    a.pop("provenance")
    b.pop("provenance")
    assert a == b


def test_json_deterministic_across_threads():
    one = run("analyze", "--n", "8", "--family", "gold", "--threads", "1").stdout
    many = run("analyze", "--n", "8", "--family", "gold", "--threads", "5").stdout
    assert one == many


def test_invalid_params_exit_2():
    r = run("analyze", "--n", "9", "--family", "f5")
    assert r.returncode == 2
    assert "violated" in r.stderr


def test_sample_b_requires_seed():
    r = run("analyze", "--n", "8", "--family", "gold", "--sample-b", "4")
    assert r.returncode == 2


def test_cap_exceeded_exit_3_and_force():
    r = run("analyze", "--n", "17", "--family", "gold")
    assert r.returncode == 3
    # sampling bypasses the cap
    r2 = run("analyze", "--n", "17", "--family", "gold",
             "--sample-b", "4", "--seed", "1")
    assert r2.returncode == 0
    rep = json.loads(r2.stdout)
    assert len(rep["sampled_b"]) == 4
    for e in rep["spectrum"]:
        assert e["value"] % 4 == 0


def test_kernels_summary():
    r = run("kernels", "--n", "6", "--family", "f5")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert len(lines) == 64  # 63 b records + summary
    summary = json.loads(lines[-1])["summary"]
    assert summary["kernel_bound_violations"] == []
    assert sum(int(c) for c in summary["dims"].values()) == 63
    for line in lines[:-1]:
        rec = json.loads(line)
        assert rec["dim"] <= 2
        assert len(rec["kernel"]) == 2 ** rec["dim"]


def test_verify_proof():
    r = run("verify-proof", "--n", "6", "--family", "f5")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert json.loads(lines[-1]) == {"overall_pass": True}
    assert all(json.loads(l)["pass"] for l in lines[:-1])
    bad = run("verify-proof", "--n", "6", "--family", "gold")
    assert bad.returncode == 2


def test_export_import_round_trip(tmp_path):
    p = tmp_path / "table.txt"
    r = run("export-table", "--n", "5", "--family", "gold", "--output", str(p))
    assert r.returncode == 0
    r2 = run("import-table", "--n", "5", "--input", str(p))
    assert r2.returncode == 0
    assert json.loads(r2.stdout)["entries"] == 32
    p.write_text("0x1\n")  # wrong count
    r3 = run("import-table", "--n", "5", "--input", str(p))
    assert r3.returncode == 2
