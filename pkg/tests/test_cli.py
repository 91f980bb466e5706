import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from cauchy_well import __version__, cli, eigensolver, quadrature
from cauchy_well.errors import QuadratureError
from cauchy_well.pipeline import solve_spectrum
from cauchy_well.specfun import si
from cauchy_well.references import DIAGONAL, LOWEST_SIX, SIZE_EVOLUTION
from cauchy_well.spectrum import GROUND_STATE_ALPHA, read_report_csv


def run(tmp_path, *argv):
    return cli.main([*argv, "--out", str(tmp_path)] if argv[0] != "specfun-eval" else list(argv))


def read_csv(path, skip_comments=True):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not (skip_comments and ln.startswith("#"))]
    return list(csv.DictReader(lines))


def test_solve_six_by_six(tmp_path):
    assert run(tmp_path, "solve", "--size", "6", "--levels", "6") == 0
    rows = read_csv(tmp_path / "spectrum.csv")
    got = [float(r["energy"]) for r in rows]
    # six significant digits; the fifth published value has transposed digits further down
    assert [f"{v:.6g}" for v in got] == [f"{v:.6g}" for v in LOWEST_SIX[6]]
    assert [r["parity"] for r in rows] == ["even", "odd"] * 3


def test_solve_one_by_one(tmp_path):
    assert run(tmp_path, "solve", "--size", "1", "--parity", "even", "--levels", "1") == 0
    (row,) = read_csv(tmp_path / "spectrum.csv")
    assert float(row["energy"]) == pytest.approx(1.21531728, abs=5e-9)


def test_solve_size_400(tmp_path):
    assert run(tmp_path, "solve", "--size", "400", "--levels", "6") == 0
    got = [float(r["energy_6dp"]) for r in read_csv(tmp_path / "spectrum.csv")]
    assert got == pytest.approx(SIZE_EVOLUTION[400], abs=2.1e-6)


def test_solve_roundtrip(tmp_path):
    assert run(tmp_path, "solve", "--size", "40", "--levels", "20") == 0
    back = read_report_csv(tmp_path / "spectrum.csv")
    mem = solve_spectrum(40, 20).report
    assert back.energies == mem.energies
    assert back.levels == mem.levels


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_determinism(tmp_path, fmt):
    outs = []
    for j, threads in enumerate(["2", "2", "1"]):
        d = tmp_path / str(j)
        assert cli.main(["solve", "--size", "120", "--levels", "12", "--format", fmt, "--threads", threads,
                         "--out", str(d)]) == 0
        outs.append((d / f"spectrum.{fmt}").read_bytes())
    assert outs[0] == outs[1]
    assert outs[0] == outs[2]


def test_json_document(tmp_path):
    assert run(tmp_path, "solve", "--size", "10", "--format", "json", "--quad-rel-tol", "1e-9") == 0
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["version"] == __version__
    assert doc["quadrature"]["rel_tol"] == 1e-9
    assert len(doc["levels"]) == 6


def test_table_one(tmp_path):
    assert run(tmp_path, "table", "I") == 0
    rows = read_csv(tmp_path / "table_I.csv")
    diag = [float(r["value"]) for r in rows if r["row"] == "diagonal" and r["source"] == "computed"]
    assert diag == pytest.approx(DIAGONAL, abs=5e-9)
    six = [float(r["value"]) for r in rows if r["row"] == "galerkin-6" and r["source"] == "computed"]
    assert six == pytest.approx(LOWEST_SIX[6], abs=1e-5)
    twelve = [float(r["value"]) for r in rows if r["row"] == "galerkin-12" and r["source"] == "computed"]
    assert twelve == pytest.approx(LOWEST_SIX[12], abs=1e-5)


def test_table_two_first_column(tmp_path):
    assert run(tmp_path, "table", "II", "--sizes", "30") == 0
    rows = read_csv(tmp_path / "table_II.csv")
    assert [r["energy_6dp"] for r in rows] == ["1.160505", "2.760953", "4.326418", "5.904768", "7.476052",
                                               "9.051406"]
    assert all(r["abs_diff_6dp"] == "0.000000" for r in rows)


def test_table_three_columns(tmp_path):
    assert run(tmp_path, "table", "III", "--sizes", "2000") == 0
    rows = read_csv(tmp_path / "table_III.csv")
    first = rows[0]
    assert float(first["asymptotic"]) == pytest.approx(1.178097, abs=5e-7)
    assert float(first["rel_err_percent"]) == pytest.approx(1.75, abs=0.005)
    assert first["published_rel_err_percent"] == "1.75"
    assert [int(r["n"]) for r in rows] == list(range(1, 21)) + [30, 50, 100]


def test_eigfun_ground_state(tmp_path, capsys):
    assert run(tmp_path, "eigfun", "--level", "1", "--size", "30", "--grid", "2001") == 0
    rows = read_csv(tmp_path / "eigfun_1.csv")
    values = np.array([float(r["value"]) for r in rows])
    assert rows[0]["value"] == "0" and rows[-1]["value"] == "0"
    assert len(values) == 2001
    inner = values[1:-1]
    assert np.all(inner > 0)
    assert "nodes=0" in capsys.readouterr().out


def test_eigfun_level_two(tmp_path):
    assert run(tmp_path, "eigfun", "--level", "2", "--grid", "2001") == 0
    rows = read_csv(tmp_path / "eigfun_2.csv")
    mid = rows[1000]
    assert abs(float(mid["x"])) < 1e-15
    assert abs(float(mid["value"])) < 1e-12


def test_eigfun_against_approximant(tmp_path):
    assert run(tmp_path, "eigfun", "--level", "1", "--size", "700") == 0
    rows = read_csv(tmp_path / "eigfun_1.csv")
    x = np.array([float(r["x"]) for r in rows])
    v = np.array([float(r["value"]) for r in rows])
    approx = 0.921749 * np.sqrt(np.clip((1 - x**2) * np.cos(GROUND_STATE_ALPHA * x), 0, None))
    assert np.max(np.abs(v - approx)) <= 0.01


@pytest.mark.parametrize("which,energy", [("cos-half", 1.21531728), ("sin-pi", 2.83630315)])
def test_disprove(tmp_path, capsys, which, energy):
    assert run(tmp_path, "disprove", which) == 0
    path = tmp_path / f"disprove_{which}.csv"
    header = path.read_text().splitlines()[0]
    assert header.startswith(f"# candidate={which} best_fit_E=")
    assert float(header.split("best_fit_E=")[1]) == pytest.approx(energy, abs=5e-9)
    rows = read_csv(path)
    assert len(rows) == 199
    res = np.array([float(r["residual"]) for r in rows])
    x = np.array([float(r["x"]) for r in rows])
    assert res.max() >= 0.05
    if which == "cos-half":
        assert 1 - abs(x[np.argmax(res)]) <= 0.05
    assert "max_residual" in capsys.readouterr().out


def test_apply_and_specfun_eval(tmp_path, capsys):
    assert run(tmp_path, "apply", "--parity", "even", "--k", "0", "--x", "0", "0.5", "--oracle") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,image,oracle"
    x0 = lines[1].split(",")
    assert float(x0[1]) == pytest.approx(1.3707621, abs=1e-7)
    assert float(x0[2]) == pytest.approx(float(x0[1]), abs=1e-8)
    assert cli.main(["specfun-eval", "3.141592653589793"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "x,Si,Ci"
    assert out[1].split(",")[1] == f"{si(3.141592653589793):.17g}"


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--size", "0"],
        ["solve", "--quad-rel-tol", "1e-30"],
        ["solve", "--endpoint-margin", "0.7"],
        ["solve", "--size", "3", "--levels", "7"],
        ["solve", "--size", "3", "--parity", "odd", "--levels", "4"],
        ["solve", "--threads", "0"],
        ["disprove", "cos-half", "--grid", "50"],
        ["eigfun", "--level", "70", "--size", "30"],
        ["apply", "--parity", "both", "--x", "0.1"],
        ["apply", "--parity", "odd", "--k", "0", "--x", "0.1"],
        ["apply", "--parity", "even", "--x", "1.0"],
        ["table", "II", "--sizes", "0"],
    ],
)
def test_invalid_config_exit_two(tmp_path, capsys, argv):
    assert run(tmp_path, *argv) == 2
    captured = capsys.readouterr()
    assert "error: invalid configuration" in captured.err


def test_unwritable_output_exit_two(tmp_path, capsys):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    assert cli.main(["solve", "--out", str(blocker / "sub")]) == 2
    assert cli.main(["solve", "--out", str(blocker)]) == 2
    assert "output directory" in capsys.readouterr().err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "--format", "xml"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "--threads", "many"])
    assert info.value.code == 2


def test_quadrature_failure_exit_three(tmp_path, capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise QuadratureError("injected", estimate=0.0, error=1.0)

    monkeypatch.setattr(quadrature, "_refine", broken)
    assert run(tmp_path, "solve", "--size", "4", "--elements", "quadrature") == 3
    assert run(tmp_path, "disprove", "sin-pi") == 3
    err = capsys.readouterr().err
    assert "quadrature failure" in err and "injected" in err
    assert not (tmp_path / "spectrum.csv").exists()


def test_eigensolver_failure_exit_four(tmp_path, capsys, monkeypatch):
    real = eigensolver.kernels.tql_implicit
    monkeypatch.setattr(eigensolver.kernels, "tql_implicit", lambda d, e, z, it, tol: real(d, e, z, 1, tol))
    assert run(tmp_path, "eigfun", "--level", "1", "--size", "30") == 4
    assert "eigensolver failure" in capsys.readouterr().err


def test_console_script_version():
    out = subprocess.run([sys.executable, "-m", "cauchy_well.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0
    assert __version__ in out.stdout
