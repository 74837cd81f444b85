import json
import subprocess
import sys

import pytest

PARAMS_R8 = '{"rank": 8, "group": {"free_rank": 0, "torsion": [3,3,3]}, "h": [0,0,1], "t": "p"}'
PARAMS_R8_O = '{"rank": 8, "group": {"free_rank": 0, "torsion": [3,3,3]}, "h": [0,0,1], "t": "o"}'


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "triality.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc


def test_catalog_fine_typeIII():
    proc = run_cli("catalog", "fine-typeIII")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["status"] == "pass"
    unis = {row["kind"]: row["universal_group"] for row in data["table"]}
    assert unis["cartan"] == {"free_rank": 2, "torsion": [3]}
    assert unis["z2cubed"] == {"free_rank": 0, "torsion": [2, 2, 6]}
    assert unis["okubo"] == {"free_rank": 0, "torsion": [3, 3, 3]}
    assert all("NOT REFUTED" not in v for v in data["non_refinement"].values())


def test_reports_embed_conductor_and_version():
    proc = run_cli("similar", "--params", json.dumps({"first": json.loads(PARAMS_R8), "second": json.loads(PARAMS_R8_O)}))
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["field_conductor"] == 12
    assert data["version"]
    assert data["similar"] is False


def test_determinism_byte_identical(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        proc = run_cli("--seed", "7", "--out", str(out), "invariants", "--params", PARAMS_R8)
        assert proc.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    proc1 = run_cli("--seed", "7", "catalog", "fine-typeIII")
    proc2 = run_cli("--seed", "7", "catalog", "fine-typeIII")
    assert proc1.stdout == proc2.stdout


def test_invariants_command():
    proc = run_cli("invariants", "--params", PARAMS_R8)
    data = json.loads(proc.stdout)
    assert data["invariants"]["rank"] == 8
    assert data["invariants"]["universal_group"] == {"free_rank": 0, "torsion": [3]}


def test_exit_codes():
    assert run_cli("build", "--constructor", "nope").returncode == 2
    assert run_cli("similar", "--params", "not json").returncode == 2
    bad = '{"rank": 4, "group": {"free_rank": 0, "torsion": [3,3,3]}, "h": [0,0,1], "g": [0,0,2]}'
    assert run_cli("invariants", "--params", bad).returncode == 2  # g in <h>
    assert run_cli("verify", "--suite", "composition").returncode == 0


def test_build_typeIII():
    proc = run_cli("build", "--constructor", "typeIII", "--params", PARAMS_R8)
    data = json.loads(proc.stdout)
    assert data["rank"] == 8
    assert data["support_size"] == 3


def test_env_override(tmp_path, monkeypatch):
    out = tmp_path / "envout.json"
    proc = subprocess.run(
        [sys.executable, "-m", "triality.cli", "invariants", "--params", PARAMS_R8],
        capture_output=True,
        text=True,
        env={"TRIALITY_OUT": str(out), "TRIALITY_SEED": "3", "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode == 0
    data = json.loads(out.read_text())
    assert data["seed"] == 3
