import csv
import io
import json
import math
import subprocess
import sys

import pytest

from layersqueeze.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def footer(text):
    return dict(ln[2:].split("=", 1) for ln in text.splitlines() if ln.startswith("# "))


def test_matrix_free_input_is_transparent(capsys):
    code, out, _ = run(["matrix", "--h1", "0", "--l1", "0.2", "--r", "0.1", "--h2", "0", "--l2", "0.3", "--energy", "2"], capsys)
    assert code == 0
    for row in rows(out):
        assert float(row["T"]) == pytest.approx(1.0, abs=1e-12)


def test_matrix_three_paths_agree(capsys):
    code, out, _ = run(["matrix", "--h1", "10", "--l1", "0.5", "--r", "0.3", "--h2", "-5", "--l2", "0.4", "--energy", "2"], capsys)
    assert code == 0
    data = rows(out)
    assert [r["path"] for r in data] == ["closed_form", "product", "ode"]
    assert all(float(r["delta_vs_closed_form"]) <= 1e-9 for r in data)
    assert all(abs(float(r["det"]) - 1) <= 1e-10 for r in data)


def test_matrix_perfect_transmission_family(capsys):
    l = 0.01
    h = -((math.pi / l) ** 2)
    code, out, _ = run(["matrix", "--h1", repr(h), "--l1", repr(l), "--r", "0", "--h2", repr(h),
                        "--l2", repr(l), "--energy", "1e-6", "--step", "1e-5"], capsys)
    assert code == 0
    ref = rows(out)[0]
    assert float(ref["T"]) == pytest.approx(1.0, abs=1e-6)
    assert float(ref["lam11"]) == pytest.approx(1.0, abs=1e-6)
    assert abs(float(ref["lam21"])) < 1e-3


def test_matrix_usage_errors(capsys):
    code, _, err = run(["matrix", "--h1", "1"], capsys)
    assert code == 2 and "usage" in err
    code, _, _ = run(["matrix", "--h1", "0", "--l1", "-1", "--r", "0", "--h2", "0", "--l2", "1", "--energy", "1"], capsys)
    assert code == 2


def test_sweep_kurasov_columns(capsys):
    code, out, _ = run(["sweep", "--mu", "1.5", "--nu", "1.2", "--tau", "0.5", "--eta", "1", "--a1", "4",
                        "--a2", repr(-4 / 3), "--c", "0.5", "--energy", "1", "--eps-decades", "2:6"], capsys)
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["eps", "lam11", "lam12", "lam21", "lam22", "err", "region", "limit_kind"]
    assert len(data) == 5
    assert {r["region"] for r in data} == {"Q_K"}
    assert {r["limit_kind"] for r in data} == {"DeltaPrimeDiagonal(3)"}
    assert "fitted_order" in footer(out)


def test_sweep_delta_and_dirichlet(capsys):
    code, out, _ = run(["sweep", "--mu", "1", "--nu", "1", "--tau", "1", "--a1", "2", "--a2", "3"], capsys)
    assert code == 0
    assert float(rows(out)[-1]["lam21"]) == pytest.approx(5.0, abs=1e-3)
    code, out, _ = run(["sweep", "--mu", "1.5", "--nu", "2", "--tau", "0.7", "--a1", "4",
                        "--a2", repr(-4 / 3), "--c", "0.5"], capsys)
    assert code == 0
    data = rows(out)
    assert {r["region"] for r in data} == {"V1"}
    assert {r["limit_kind"] for r in data} == {"Dirichlet"}
    errs = [float(r["err"]) for r in data]
    assert errs == [abs(float(r["lam21"])) for r in data]
    assert footer(out)["diverged"] == "true"


def test_sweep_region_error(capsys):
    code, _, err = run(["sweep", "--mu", "1.5", "--nu", "2", "--tau", "0.2", "--a1", "1", "--a2", "1"], capsys)
    assert code == 3 and "region" in err


def test_trace_omega_two_branches_and_asymptotes(capsys):
    code, out, _ = run(["trace", "--region", "omega", "--c", "0.5", "--eta", "1",
                        "--a1-min", "-10", "--a1-max", "10", "--npts", "41"], capsys)
    assert code == 0
    data = rows(out)
    assert {"0", "1"} <= {r["branch"] for r in data}
    notes = [r["note"] for r in data if r["note"]]
    assert "asymptote a1=-1/c" in notes
    asym = next(r for r in data if r["note"] == "asymptote a1=-1/c")
    assert float(asym["a1"]) == -2.0
    for r in data:
        if not r["note"]:
            assert abs(float(r["residual"])) <= 1e-8


def test_trace_b1_contains_characteristic_row(capsys):
    code, out, _ = run(["trace", "--region", "b1", "--branch", "1", "--c", "0.5",
                        "--a1-min", "-3", "--a1-max", "1", "--npts", "9"], capsys)
    assert code == 0
    data = [r for r in rows(out) if not r["note"]]
    assert any(float(r["a1"]) == -2.0 and float(r["a2"]) == pytest.approx(-math.pi**2 / 4, abs=1e-12)
               for r in data)


def test_trace_c_zero_is_line(capsys):
    code, out, _ = run(["trace", "--region", "omega", "--c", "0", "--a1-min", "-5", "--a1-max", "5", "--npts", "11"], capsys)
    assert code == 0
    for r in rows(out):
        if not r["note"]:
            assert float(r["a2"]) == pytest.approx(-float(r["a1"]))


def test_trace_empty_branch_warns(capsys):
    code, out, err = run(["trace", "--region", "omega", "--branch", "3", "--c", "0.5",
                          "--a1-min", "-1", "--a1-max", "1", "--npts", "5"], capsys)
    assert code == 0 and "warning" in err
    assert rows(out) == []


def test_classify(capsys):
    code, out, _ = run(["classify", "--mu", "1.5", "--nu", "2", "--tau", "0.5"], capsys)
    assert code == 0 and rows(out)[0]["region"] == "Q_K"
    code, out, _ = run(["classify", "--mu", "2", "--nu", "2", "--tau", "3"], capsys)
    assert rows(out)[0]["region"] == "N2"
    code, out, _ = run(["classify", "--mu", "1.5", "--nu", "2", "--tau", "1", "--a1", "4", "--a2", "-4", "--c0", "0.5"], capsys)
    r = rows(out)[0]
    assert r["region"] == "Q_S" and r["limit_kind"] == "DeltaDeltaPrime(1, -8)"
    assert float(r["alpha"]) == -8.0 and float(r["residual"]) == 0.0


def test_classify_errors(capsys):
    assert run(["classify", "--mu", "0.5", "--nu", "2", "--tau", "1"], capsys)[0] == 2
    assert run(["classify", "--mu", "2.5", "--nu", "2", "--tau", "1", "--a1", "1", "--a2", "1"], capsys)[0] == 3
    assert run(["classify", "--mu", "1.5", "--nu", "2", "--tau", "1", "--a1", "1"], capsys)[0] == 2


def test_seba(capsys):
    code, out, _ = run(["seba", "--a1", "4", "--a2", "-4", "--c", "0.5", "--vartheta", "0.5", "--r-decades", "2:10"], capsys)
    assert code == 0
    data = rows(out)
    assert float(data[-1]["lam21"]) == pytest.approx(-8.0, abs=1e-6)
    assert footer(out)["transition"] == "DeltaS"
    code, out, _ = run(["seba", "--a1", "4", "--a2", "-4", "--c", "0.5", "--vartheta", "0.6"], capsys)
    l21 = [abs(float(r["lam21"])) for r in rows(out)]
    assert all(x < y for x, y in zip(l21, l21[1:]))
    code, out, _ = run(["seba", "--a1", "4", "--a2", "-4", "--c", "0.5", "--vartheta", "0.4"], capsys)
    l21 = [abs(float(r["lam21"])) for r in rows(out)]
    assert all(x > y for x, y in zip(l21, l21[1:]))
    assert run(["seba", "--a1", "4", "--a2", "-4", "--c", "0.5", "--vartheta", "1.5"], capsys)[0] == 2


def test_json_mirrors_csv(capsys):
    argv = ["seba", "--a1", "4", "--a2", "-4", "--c", "0.5", "--vartheta", "0.5", "--r-decades", "2:4"]
    _, out_csv, _ = run(argv, capsys)
    _, out_json, _ = run(argv + ["--format", "json"], capsys)
    doc = json.loads(out_json)
    data = rows(out_csv)
    assert list(doc["columns"]) == list(data[0])
    assert doc["columns"]["lam21"] == [float(r["lam21"]) for r in data]
    assert doc["meta"]["transition"] == "DeltaS"


def test_full_precision_and_determinism(capsys, tmp_path):
    argv = ["sweep", "--mu", "1.2", "--nu", "1", "--tau", "0.2", "--a1", "4", "--a2", repr(-4 / 3), "--c", "0.5"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    first = rows(out1.read_text())[0]
    # 17 significant digits round-trip the double exactly
    assert repr(float(first["lam11"])) == repr(float("%.17g" % float(first["lam11"])))


def test_tol_flag_changes_resonance_gate(capsys):
    base = ["classify", "--mu", "1.5", "--nu", "2", "--tau", "0.5", "--a1", "4", "--a2", "-1.3333", "--c", "0.5"]
    assert rows(run(base, capsys)[1])[0]["limit_kind"] == "Dirichlet"
    assert rows(run(base + ["--tol", "1e-3"], capsys)[1])[0]["limit_kind"].startswith("DeltaPrimeDiagonal")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "layersqueeze", "classify", "--mu", "2", "--nu", "3", "--tau", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert rows(proc.stdout)[0]["region"] == "L1"
