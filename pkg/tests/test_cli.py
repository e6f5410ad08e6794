import math

import pytest

from nfres.cli import main
from nfres.resolution import delta_closed_form
from nfres.array_model import ArrayConfig, UserLocation

PAIR = ["--N", "16", "--r1", "2", "--r2", "5"]


def test_delta(capsys):
    assert main(["delta", *PAIR]) == 0
    out = capsys.readouterr().out
    expected = delta_closed_form(ArrayConfig(0, 16), UserLocation(2, math.pi / 2, math.pi / 2),
                                 UserLocation(5, math.pi / 2, math.pi / 2)).delta
    assert f"delta={expected!r}" in out
    assert "method=closed_form" in out


@pytest.mark.parametrize("method", ["oracle_exact", "oracle_fresnel", "sum_oracle", "ula", "closed_form_ula"])
def test_delta_methods(capsys, method):
    assert main(["delta", *PAIR, "--method", method]) == 0
    assert "delta=" in capsys.readouterr().out


def test_delta_full_flags(capsys):
    argv = ["delta", "--M", "2", "--N", "3", "--lambda", "0.02", "--d", "0.01", "--r1", "1",
            "--theta1", "1.0", "--phi1", "1.2", "--r2", "2", "--theta2", "1.1", "--phi2", "1.3"]
    assert main(argv) == 0


def test_check(capsys):
    assert main(["check", *PAIR]) == 0
    out = capsys.readouterr().out
    assert "classification=" in out and "angle_domain_bound=n/a" in out


def test_usage_errors(capsys):
    assert main(["delta", "--N", "4", "--r1", "-1", "--r2", "2"]) == 1
    assert main(["delta", *PAIR, "--M", "1", "--method", "ula"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["delta", "--N", "4"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_sweep_preset(tmp_path, capsys):
    out = tmp_path / "f2.csv"
    assert main(["sweep", "--preset", "fig2", "--out", str(out)]) == 0
    assert out.exists() and (tmp_path / "plot_fig2.py").exists()
    assert len(out.read_text().splitlines()) == 51


def test_sweep_spec_file(tmp_path):
    spec = tmp_path / "s.txt"
    spec.write_text("axis = N\nvalues = 4, 8\nr1 = 5\nr2 = 9\n")
    out = tmp_path / "s.csv"
    assert main(["sweep", "--spec", str(spec), "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "axis,closed_form,oracle_fresnel,warnings"


def test_sweep_io_errors(tmp_path):
    assert main(["sweep", "--spec", str(tmp_path / "missing.txt")]) == 2
    blocker = tmp_path / "f"
    blocker.write_text("")
    assert main(["sweep", "--preset", "fig2", "--out", str(blocker / "x.csv")]) == 2


def test_sweep_bad_spec(tmp_path):
    spec = tmp_path / "s.txt"
    spec.write_text("axis = r1\n")
    assert main(["sweep", "--spec", str(spec)]) == 1


def test_bench(capsys):
    assert main(["bench", "--sizes", "2,3x4", "--reps", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 3 and "ratio" in out[0]
