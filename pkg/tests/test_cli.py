"""Command-line surface: exit codes, CSV/SVG artifacts, config precedence."""

import math
import subprocess
import sys

import pytest

from lienard.cli import main


def run_cli(*argv):
    """Invoke the CLI in-process, capturing stdout and the exit code."""
    import contextlib
    import io

    buf = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, buf.getvalue(), err.getvalue()


class TestFactor:
    def test_cubic(self):
        code, out, _ = run_cli("factor", "--G", "0,6", "--F", "0,9,0,4")
        assert code == 0
        assert "p(x): -2x" in out
        assert "c^2: -9" in out
        assert "regime: trigonometric" in out
        assert "q=1, a=2, b=0, c=9, delta=-36" in out

    def test_not_factorable_exit_2(self):
        code, out, _ = run_cli("factor", "--G", "0,0,1", "--F", "0,0,0,1")
        assert code == 2
        assert "residual" in out

    def test_invalid_input_exit_1(self):
        code, _, err = run_cli("factor", "--G", "", "--F", "1")
        assert code == 1
        assert "error" in err

    def test_bad_polynomial_text_exit_1(self):
        code, _, err = run_cli("factor", "--G", "1,banana", "--F", "0,1")
        assert code == 1


class TestSolve:
    def test_csv_schema(self, tmp_path):
        out_path = tmp_path / "cubic.csv"
        code, _, _ = run_cli(
            "solve", "cubic", "--k", "2.5", "--omega", "3", "--A", "1",
            "--delta", "0", "--samples", "100", "--t0", "0", "--t1", "4.2",
            "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "t,x,xdot"
        assert len(lines) == 101
        t, x, xd = map(float, lines[1].split(","))
        assert (t, x) == (0.0, 1.0)
        assert xd == pytest.approx(-2.5)

    def test_singular_rows_are_blank(self, tmp_path):
        out_path = tmp_path / "sing.csv"
        run_cli(
            "solve", "cubic", "--k", "3.5", "--omega", "3", "--A", "1",
            "--samples", "400", "--t0", "0", "--t1", "6.3", "--out", str(out_path),
        )
        lines = out_path.read_text().splitlines()
        assert any(line == "" for line in lines[1:])

    def test_deterministic_output(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            run_cli(
                "solve", "wilson", "--mu", "1", "--A", "0", "--samples", "200",
                "--out", str(p),
            )
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_svg_artifacts(self, tmp_path):
        svg = tmp_path / "wave.svg"
        phase = tmp_path / "phase.svg"
        code, _, _ = run_cli(
            "solve", "wilson", "--mu", "1", "--A", "0", "--samples", "300",
            "--out", str(tmp_path / "w.csv"), "--svg", str(svg),
            "--phase-svg", str(phase),
        )
        assert code == 0
        text = svg.read_text()
        assert text.startswith("<svg") and "<polyline" in text
        assert phase.read_text().count("<polyline") >= 1

    def test_equation_model_uses_general_solution(self, tmp_path):
        out_path = tmp_path / "eq.csv"
        code, _, _ = run_cli(
            "solve", "equation", "--G", "0,6", "--F", "0,9,0,4", "--K", "1",
            "--samples", "50", "--t0", "0", "--t1", "2", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        t, x, _ = map(float, lines[1].split(","))
        assert x == pytest.approx(1.0)  # cubic k=2, w=3, K=A=1 at t=0

    def test_unfactorable_equation_exit_2(self):
        code, _, _ = run_cli(
            "solve", "equation", "--G", "0,0,1", "--F", "0,0,0,1", "--K", "1"
        )
        assert code == 2


class TestVerify:
    def test_cubic_pass(self):
        code, out, _ = run_cli(
            "verify", "cubic", "--k", "2.5", "--omega", "3", "--A", "1"
        )
        assert code == 0
        assert "result: PASS" in out
        assert "detected_period: 2.09439510239" in out

    def test_printed_sto_variant_fails(self):
        code, out, _ = run_cli(
            "verify", "sto", "--alpha", "1", "--v", "1", "--b", "0", "--A", "1",
            "--variant", "printed",
        )
        assert code == 3
        assert "FAIL" in out

    def test_arbitration_reports_winner(self):
        code, out, _ = run_cli(
            "verify", "sto", "--alpha", "1", "--v", "1", "--b", "0", "--A", "1",
            "--arbitrate",
        )
        assert code == 0
        assert "factorized coefficient wins" in out

    def test_csv_round_trip(self, tmp_path):
        path = tmp_path / "sto.csv"
        run_cli(
            "solve", "sto", "--alpha", "0.2", "--v", "1", "--b", "1", "--A", "1",
            "--samples", "300", "--out", str(path),
        )
        code, out, _ = run_cli(
            "verify", "sto", "--alpha", "0.2", "--v", "1", "--b", "1", "--A", "1",
            "--csv", str(path),
        )
        assert code == 0
        assert "csv_mismatch" in out and "result: PASS" in out


class TestSweep:
    def test_cubic_regularity_boundary(self, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            "sweep", "cubic", "--param", "A", "--start", "-2", "--stop", "2",
            "--step", "0.1", "--k", "2.5", "--omega", "3", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "A,period,regularity,ode_residual"
        assert len(lines) == 42
        boundary = 2.5 / 3.0
        for line in lines[1:]:
            a_s, _, cls, res_s = line.split(",")
            a = float(a_s)
            expected = "singular" if abs(a) <= boundary + 1e-12 else "regular"
            assert cls == expected, f"A={a}"
            assert float(res_s) <= 1e-9

    def test_wilson_period_monotone(self, tmp_path):
        out_path = tmp_path / "wsweep.csv"
        code, _, _ = run_cli(
            "sweep", "wilson", "--param", "mu", "--start", "0.2", "--stop", "1.8",
            "--step", "0.4", "--A", "0", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()[1:]
        periods = [float(line.split(",")[1]) for line in lines]
        mus = [float(line.split(",")[0]) for line in lines]
        assert all(b > a for a, b in zip(periods, periods[1:]))
        for mu, period in zip(mus, periods):
            assert period == pytest.approx(
                2 * math.pi / math.sqrt(1 - (mu / 2) ** 2), rel=1e-6
            )

    def test_empty_range_header_only(self, tmp_path):
        out_path = tmp_path / "empty.csv"
        code, _, _ = run_cli(
            "sweep", "cubic", "--param", "A", "--start", "2", "--stop", "1",
            "--step", "0.5", "--k", "2.5", "--omega", "3", "--out", str(out_path),
        )
        assert code == 0
        assert out_path.read_text() == "A,period,regularity,ode_residual\n"


class TestConfig:
    def test_config_supplies_values(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("k = 2.5\nomega = 3\nA = 1\n# comment\n")
        code, out, _ = run_cli("--config", str(cfg), "verify", "cubic")
        assert code == 0 and "result: PASS" in out

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("G = 0,1\nF = 0,1\n")
        code, out, _ = run_cli(
            "--config", str(cfg), "factor", "--G", "0,6", "--F", "0,9,0,4"
        )
        assert code == 0
        assert "c^2: -9" in out  # the flag values, not the config ones

    def test_bad_config_line(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("just nonsense\n")
        code, _, err = run_cli("--config", str(cfg), "factor", "--G", "", "--F", "")
        assert code == 1


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "lienard.cli", "factor", "--G", "0,6", "--F", "0,9,0,4"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "regime: trigonometric" in proc.stdout
