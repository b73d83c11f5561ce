import json
import subprocess
import sys

import pytest

from growthlab.cli import main


WREATH = {"type": "wreath_cyclic", "m": 3}
ZX = {"type": "module_presented", "gens": 1, "relations": []}
ZKZ = {"type": "zk_by_z", "matrix": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]}
HEIS = {"type": "nilpotent_gf", "ell": 2, "f": {"1,2": [1]}}


def _spec(tmp_path, doc, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_csv(tmp_path, capsys):
    spec = _spec(tmp_path, WREATH)
    code, out, _ = _run(["table", spec, "--max-n", "10", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,p,k,count,mtriv,mnontriv,exact"
    rows = {int(l.split(",")[0]): l.split(",") for l in lines[1:]}
    assert set(rows) == {2, 3, 4, 5, 7, 8, 9}
    assert rows[3][3] == "4"
    assert rows[7][3] == "15"
    assert rows[7][6] in ("true", "false")


def test_table_json(tmp_path, capsys):
    spec = _spec(tmp_path, WREATH)
    code, out, _ = _run(["table", spec, "--max-n", "10", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["seed"] == 0xC0FFEE
    assert any(r["n"] == 7 and r["count"] == 15 for r in doc["rows"])


def test_mdeg(tmp_path, capsys):
    spec = _spec(tmp_path, ZKZ)
    code, out, _ = _run(["mdeg", spec], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["mdeg"] == 1
    # modules are rejected with exit 3
    mspec = _spec(tmp_path, ZX, "m.json")
    code2, _, _ = _run(["mdeg", mspec], capsys)
    assert code2 == 3


def test_asymptote(tmp_path, capsys):
    spec = _spec(tmp_path, ZKZ)
    code, out, _ = _run(["asymptote", spec], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["rho1"] == 3 and doc["d"] == 1
    wspec = _spec(tmp_path, WREATH, "w.json")
    code2, _, _ = _run(["asymptote", wspec], capsys)
    assert code2 == 3


def test_growth_type(tmp_path, capsys):
    spec = _spec(
        tmp_path,
        {"type": "module_presented", "gens": 1, "relations": ["x^2 + 1"]},
    )
    code, out, _ = _run(["growth-type", spec], capsys)
    assert code == 0
    assert "bounded" in out
    gspec = _spec(tmp_path, ZKZ, "g.json")
    code2, _, _ = _run(["growth-type", gspec], capsys)
    assert code2 == 3


def test_check(tmp_path, capsys):
    spec = _spec(tmp_path, {"type": "module_matrix", "k": 2, "actions": [[[0, 1], [1, 0]]]})
    code, out, _ = _run(["check", spec, "--max-n", "9"], capsys)
    assert code == 0
    assert "MISMATCH" not in out


def test_check_exit4_when_nothing_checked(tmp_path, capsys):
    # group descriptors are not module-backed checkables
    spec = _spec(tmp_path, HEIS)
    code, _, err = _run(["check", spec, "--max-n", "9"], capsys)
    assert code in (3, 4)


def test_bad_spec_exit2(tmp_path, capsys):
    spec = _spec(tmp_path, {"type": "nonsense"})
    code, _, err = _run(["table", spec, "--max-n", "10"], capsys)
    assert code == 2
    missing = str(tmp_path / "missing.json")
    code2, _, _ = _run(["table", missing, "--max-n", "10"], capsys)
    assert code2 == 2


def test_irreducibles(capsys):
    code, out, _ = _run(["irreducibles", "--p", "2", "--k", "4"], capsys)
    assert code == 0
    assert out.strip() == "3"
    code2, out2, _ = _run(["irreducibles", "--p", "5", "--k", "1"], capsys)
    assert out2.strip() == "5"


def test_seed_precedence(tmp_path, capsys, monkeypatch):
    spec = _spec(tmp_path, WREATH)
    monkeypatch.setenv("GROWTHLAB_SEED", "0x123")
    code, out, _ = _run(["table", spec, "--max-n", "5", "--format", "json"], capsys)
    assert json.loads(out)["seed"] == 0x123
    code, out, _ = _run(
        ["table", spec, "--max-n", "5", "--format", "json", "--seed", "7"], capsys
    )
    assert json.loads(out)["seed"] == 7
    monkeypatch.delenv("GROWTHLAB_SEED")
    code, out, _ = _run(["table", spec, "--max-n", "5", "--format", "json"], capsys)
    assert json.loads(out)["seed"] == 0xC0FFEE


def test_deterministic_output(tmp_path):
    spec = _spec(tmp_path, ZKZ)
    runs = [
        subprocess.run(
            [sys.executable, "-m", "growthlab.cli", "table", str(spec), "--max-n", "30"],
            capture_output=True,
            text=True,
        )
        for _ in range(2)
    ]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout


def test_entry_point_installed():
    r = subprocess.run(["growthlab", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    for sub in ("table", "mdeg", "asymptote", "growth-type", "check", "irreducibles"):
        assert sub in r.stdout
