import csv
import json
import subprocess
import sys

import pytest

from hardy_inner import (
    BERGMAN,
    BlaschkeSpec,
    SeriesFn,
    classical_blaschke,
    construct_blaschke_analogue,
    normalize,
)
from hardy_inner.cli import main

SPEC = '{"d0": 1, "zeros": [{"z": [0.5, 0], "mult": 1}]}'


def _read_csv(path):
    with open(path) as handle:
        first = handle.readline()
        rows = list(csv.reader(handle))
    return first, rows


def _write_series(path, f):
    path.write_text(json.dumps(f.to_json()))
    return str(path)


def test_construct_outputs(tmp_path):
    out = tmp_path / "run"
    assert main(["construct", "--spec", SPEC, "--N", "512", "--out", str(out), "--grid", "16"]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["B.json", "boundary.csv", "report.json", "zeros.csv"]
    report = json.loads((out / "report.json").read_text())
    assert report["schema_version"] == 1
    assert report["inner_report"]["verdict"] == "Inner"
    assert report["oracle"]["max_deviation"] < 1e-10
    head, rows = _read_csv(out / "zeros.csv")
    assert head.startswith("# hardy_inner zeros")
    assert rows[0] == ["re", "im", "kind"]
    assert {r[2] for r in rows[1:]} == {"prescribed"}
    head, rows = _read_csv(out / "boundary.csv")
    assert rows[0] == ["theta", "modulus"] and len(rows) == 17
    assert all(abs(float(r[1]) - 1) < 0.01 for r in rows[1:])


def test_construct_deterministic(tmp_path):
    args = ["construct", "--weight", "bergman", "--spec", SPEC, "--N", "256", "--grid", "8"]
    main([*args, "--out", str(tmp_path / "a")])
    main([*args, "--out", str(tmp_path / "b")])
    for name in ("B.json", "report.json", "zeros.csv", "boundary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_writes_only_into_out_dir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    main(["construct", "--spec", SPEC, "--N", "256", "--out", "sub/dir"])
    assert [p.name for p in tmp_path.iterdir()] == ["sub"]


def test_weight_from_file(tmp_path):
    wfile = tmp_path / "w.json"
    wfile.write_text('{"kind": "power", "gamma": 3}')
    out = tmp_path / "o"
    assert main(["construct", "--weight", str(wfile), "--spec", SPEC, "--N", "256", "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["weight"] == {"kind": "power", "gamma": 3.0}
    assert "oracle" not in report


@pytest.mark.parametrize(
    "spec, field",
    [('{"d0": "x"}', "d0"), ('{"zeros": [{"mult": 1}]}', "zeros[0]"), ("{not json", "--spec")],
)
def test_malformed_spec(tmp_path, capsys, spec, field):
    assert main(["construct", "--spec", spec, "--out", str(tmp_path)]) == 1
    assert field in capsys.readouterr().err


def test_bad_weight(tmp_path):
    assert main(["construct", "--weight", "sobolev", "--spec", SPEC, "--out", str(tmp_path)]) == 1


def test_ill_conditioned_exit_code(tmp_path, capsys):
    spec = '{"zeros": [{"z": [0.5, 0]}, {"z": [0.5000001, 0]}]}'
    assert main(["construct", "--spec", spec, "--N", "512", "--out", str(tmp_path)]) == 2
    assert "Try" in capsys.readouterr().err


def test_verify_exit_codes(tmp_path):
    B = construct_blaschke_analogue(BERGMAN, BlaschkeSpec(0, ((0.5, 1),)), 512).B
    good = _write_series(tmp_path / "good.json", B)
    assert main(["verify", "--series", good, "--out", str(tmp_path / "v1")]) == 0
    bad = _write_series(tmp_path / "bad.json", normalize(SeriesFn([1, 1])))
    assert main(["verify", "--series", bad, "--out", str(tmp_path / "v2")]) == 3
    edge = _write_series(tmp_path / "edge.json", SeriesFn(B.coeffs * (1 + 1e-7), BERGMAN))
    assert main(["verify", "--series", edge, "--out", str(tmp_path / "v3")]) == 4
    rep = json.loads((tmp_path / "v2" / "report.json").read_text())
    assert rep["inner_report"]["verdict"] == "NotInner"


def test_recover(tmp_path):
    b = _write_series(tmp_path / "b.json", SeriesFn([2.0, 1.0]))
    out = tmp_path / "r"
    assert main(["recover", "--b", b, "--M-poly", "32", "--out", str(out)]) == 0
    u = SeriesFn.from_json(json.loads((out / "u.json").read_text()))
    assert abs(u.coeffs[0] - 1) < 1e-12
    rep = json.loads((out / "report.json").read_text())
    assert set(rep) >= {"b", "R0", "u", "residuals"}
    assert rep["residuals"]["reproducing_defect"] < 1e-12


def test_recover_zero_b(tmp_path):
    b = _write_series(tmp_path / "b.json", SeriesFn([0.0]))
    assert main(["recover", "--b", b, "--out", str(tmp_path / "r")]) == 1


def test_scan(tmp_path):
    spec = BlaschkeSpec(0, ((0.5, 1),))
    B = construct_blaschke_analogue(BERGMAN, spec, 512).B
    f = _write_series(tmp_path / "B.json", B)
    assert main(["scan", "--series", f, "--spec", json.dumps(spec.to_json()), "--out", str(tmp_path / "s")]) == 0
    _, rows = _read_csv(tmp_path / "s" / "zeros.csv")
    assert len(rows) == 2 and rows[1][2] == "prescribed"
    assert main(["scan", "--series", f, "--radius", "1.5", "--out", str(tmp_path / "s2")]) == 1
    assert not (tmp_path / "s2").exists()


def test_compare(tmp_path):
    phi = classical_blaschke(BlaschkeSpec(0, ((0.5, 1),)), 256)
    a = _write_series(tmp_path / "a.json", phi)
    b = _write_series(tmp_path / "b.json", phi * 1j)
    assert main(["compare", "--series", a, "--oracle", b, "--out", str(tmp_path / "c")]) == 0
    rep = json.loads((tmp_path / "c" / "compare.json").read_text())
    assert rep["max_deviation"] < 1e-12
    assert complex(*rep["fitted_phase"]) == pytest.approx(-1j)


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hardy_inner", "construct", "--spec", SPEC, "--N", "128", "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "verdict=Inner" in proc.stdout
