import csv
import io
import math
import subprocess
import sys

import pytest

import oracles
from fracspec.cli import DEFAULTS, RunConfig, main, run


def rows_of(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[float(v) for v in row] for row in reader]


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_legendre_example(capsys):
    code, out, _ = invoke(capsys, "legendre", "--alpha", "1", "--lambda", "6", "--parity", "even",
                          "--xmin", "-0.95", "--xmax", "0.95", "--steps", "100")
    assert code == 0
    header, rows = rows_of(out)
    assert header == ["x", "p"]
    assert len(rows) == 101
    for x, p in rows:
        assert p == pytest.approx(1 - 3 * x * x, abs=1e-12)


def test_bessel_surface_example(capsys):
    code, out, _ = invoke(capsys, "bessel-surface", "--alpha-min", "0.5", "--alpha-max", "1",
                          "--rho-min", "0", "--rho-max", "5", "--steps", "50")
    assert code == 0
    header, rows = rows_of(out)
    assert header == ["alpha", "rho", "nu"]
    hit = [nu for a, r, nu in rows if a == 1.0 and r == 3.0]
    assert hit == [pytest.approx(3.0, rel=1e-8)]


def test_conf_hyper_example(capsys):
    code, out, _ = invoke(capsys, "conf-hyper", "--alpha", "1", "--a", "1", "--c", "1", "--zmax", "1", "--steps", "10")
    assert code == 0
    _, rows = rows_of(out)
    assert rows[-1][0] == 1.0
    assert rows[-1][1] == pytest.approx(2.7182818, abs=5e-8)
    assert "2.71828183e+00" in out


def test_number_format(capsys):
    _, out, _ = invoke(capsys, "gauss-hyper", "--zmax", "0.5", "--steps", "1")
    assert out.splitlines() == ["z,y", "0.00000000e+00,1.00000000e+00", "5.00000000e-01,2.00000000e+00"]


def test_bessel_matches_oracle(capsys):
    code, out, err = invoke(capsys, "bessel", "--alpha", "1", "--nu", "2", "--k", "1", "--steps", "20")
    assert code == 0
    assert "rho = 2" in err
    _, rows = rows_of(out)
    for r, R in rows:
        assert R == pytest.approx(8 * oracles.besselj(2, r), abs=1e-7)


def test_validation_exit_code(capsys):
    code, out, err = invoke(capsys, "legendre", "--alpha", "2")
    assert code == 2
    assert out == ""
    assert "alpha" in err


def test_numeric_failure_exit_code(capsys):
    code, out, err = invoke(capsys, "gauss-hyper", "--zmax", "1", "--steps", "2")
    assert code == 3
    assert out == ""
    assert "NoConvergenceError" in err


def test_on_diverge_nan(capsys):
    code, out, _ = invoke(capsys, "gauss-hyper", "--zmax", "1", "--steps", "2", "--on-diverge", "nan")
    assert code == 0
    _, rows = rows_of(out)
    assert math.isnan(rows[-1][1])


def test_no_root_exit_code(capsys):
    code, _, err = invoke(capsys, "bessel", "--alpha", "0.55", "--nu", "0.5")
    assert code == 3
    assert "NoRootError" in err


def test_show_defaults(capsys):
    for sub, defaults in DEFAULTS.items():
        code, out, _ = invoke(capsys, sub, "--show-defaults")
        assert code == 0
        assert [line.split("=")[0] for line in out.splitlines()] == list(defaults)


def test_out_file_and_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["legendre", "--alpha", "0.8", "--lambda", "3.3", "--out", str(p)]) == 0
    assert capsys.readouterr().out == ""
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert main(["legendre", "--alpha", "0.8", "--lambda", "3.3"]) == 0
    assert capsys.readouterr().out == paths[0].read_text()


def test_checks_report_small_residuals(capsys):
    code, out, _ = invoke(capsys, "laplace-check", "--alpha", "0.9")
    assert code == 0
    _, rows = rows_of(out)
    assert len(rows) == 20
    assert max(abs(r[-1]) for r in rows) < 1e-6
    code, out, _ = invoke(capsys, "heat-check", "--alpha", "0.8", "--nu", "2")
    assert code == 0
    _, rows = rows_of(out)
    assert max(abs(r[-1]) for r in rows) < 1e-8


def test_caputo_subcommand(capsys):
    code, out, _ = invoke(capsys, "caputo", "--alpha", "0.3", "--beta", "2.5", "--steps", "4")
    assert code == 0
    header, rows = rows_of(out)
    assert header == ["x", "numeric", "closed_form", "abs_error"]
    for _, num, exact, _err in rows:
        assert num == pytest.approx(exact, rel=1e-8)


def test_run_rejects_format():
    assert run(RunConfig("legendre", {}, None, "json")) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fracspec", "conf-hyper", "--zmax", "1", "--steps", "1"],
                          capture_output=True, text=True, check=True)
    _, rows = rows_of(proc.stdout)
    assert rows[-1][1] == pytest.approx(math.e - 1, rel=1e-8)
