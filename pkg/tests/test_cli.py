import json

import numpy as np
import pytest

from besovlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_norm_records(capsys):
    code, out, _ = run(
        capsys,
        "norm",
        "--fn", "gaussian",
        "--space", "s=1.5,p=2,q=2,m=2",
        "--method", "diff,lp",
        "--count", "4097",
    )
    assert code == 0
    records = json.loads(out)
    assert [r["method"] for r in records] == ["diff", "lp"]
    assert all(r["value"] > 0 for r in records)
    assert records[0]["grid"]["count"] == 4097
    ratio = records[0]["value"] / records[1]["value"]
    assert 0.1 < ratio < 10.0


def test_norm_zero(capsys):
    code, out, _ = run(capsys, "norm", "--fn", "zero", "--space", "s=1.5,p=2,q=2,m=2")
    assert code == 0
    assert json.loads(out)[0]["value"] == 0.0


def test_norm_bad_space_exit_4(capsys):
    code, _, err = run(capsys, "norm", "--fn", "gaussian", "--space", "s=1.5,p=2,q=2,m=1")
    assert code == 4
    assert "m > s" in err


def test_norm_unknown_fn_exit_4(capsys):
    code, _, err = run(capsys, "norm", "--fn", "wat", "--space", "s=1.5,p=2,q=2,m=2")
    assert code == 4


def test_norm_p_inf(capsys):
    code, out, _ = run(
        capsys, "norm", "--fn", "gaussian", "--space", "s=1.5,p=inf,q=inf,m=2",
        "--count", "4097",
    )
    assert code == 0
    assert json.loads(out)[0]["value"] > 0


def test_map_identity(capsys):
    code, out, _ = run(capsys, "map", "--map", "identity", "--target", "0,1")
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["U"] == pytest.approx(1.0, abs=1e-9)
    assert rec["M"] == pytest.approx(1.0, abs=1e-9)
    assert rec["lip"] == 1.0
    assert rec["max_preimage"] == 1
    assert len(rec["preimage"]) == 1


def test_split_roundtrip(tmp_path, capsys):
    fam = [[0.0, 1.0], [0.5, 1.5], [1.0, 2.0]]
    path = tmp_path / "family.json"
    path.write_text(json.dumps(fam))
    code, out, _ = run(capsys, "split", "--family", str(path))
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["degree"] == 3
    assert rec["classes"] == [[0], [1], [2]]
    assert rec["bound_ok"]


def test_check_identity(tmp_path, capsys):
    jpath = tmp_path / "report.json"
    cpath = tmp_path / "report.csv"
    code, out, _ = run(
        capsys,
        "check",
        "--map", "identity",
        "--space", "s=2.1,p=2,q=2,m=3",
        "--json", str(jpath),
        "--csv", str(cpath),
    )
    assert code == 0
    rec = json.loads(jpath.read_text())[0]
    assert rec["verdict"] == "ConsistentBounded"
    lines = cpath.read_text().strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("schema_version,")


def test_check_open_range_exit_3(capsys):
    code, _, err = run(capsys, "check", "--map", "identity", "--space", "s=1.2,p=2,q=2,m=2")
    assert code == 3
    assert "open case" in err


def test_suite_runs_and_is_deterministic(tmp_path, capsys):
    cfg = {
        "seed": 77,
        "count": 2**12 + 1,
        "space": {"s": 2.1, "p": 2.0, "q": 2.0, "m": 3},
        "maps": ["identity", "scale:k=2"],
    }
    cfg_path = tmp_path / "suite.json"
    cfg_path.write_text(json.dumps(cfg))
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    code1, _, _ = run(capsys, "suite", "--config", str(cfg_path), "--out", str(out1))
    code2, _, _ = run(capsys, "suite", "--config", str(cfg_path), "--out", str(out2))
    assert code1 == 0 and code2 == 0
    assert (out1 / "records.json").read_bytes() == (out2 / "records.json").read_bytes()
    rows = (out1 / "summary.csv").read_text().strip().splitlines()
    assert len(rows) == 3
    meta = json.loads((out1 / "meta.json").read_text())
    assert "runtime_s" in meta
