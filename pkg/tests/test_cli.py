"""Command line surface: selectors, formats, exit codes, determinism."""

import csv
import io
import json
import math
import sys

import pytest

from qaw import CondDensityParams, c_n_main, chebyshev_U
from qaw.cli import entry, main
from qaw.densities import phi_q0


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def csv_rows(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestEvalCommand:
    def test_hermite_grid(self):
        code, text = run("eval", "H", "--n", "2", "--q", "0.5", "--grid", "-2:2:5")
        assert code == 0
        header, rows = csv_rows(text)
        assert header == ["n", "q", "x", "value"]
        assert len(rows) == 5
        assert rows[2][2] == "0.0"
        assert rows[2][3] == "-1.0"

    def test_csv_and_json_carry_identical_numbers(self):
        argv = ("eval", "H", "--n", "3", "--q", "0.3", "--grid", "-1.5:1.5:7")
        _, text = run(*argv, "--format", "csv")
        _, blob = run(*argv, "--format", "json")
        _, rows = csv_rows(text)
        parsed = json.loads(blob)
        assert [float(r[3]) for r in rows] == [row["value"] for row in parsed]

    def test_semicircle_midpoint(self):
        code, text = run("eval", "f_N", "--q", "0", "--x", "0")
        assert code == 0
        _, rows = csv_rows(text)
        assert float(rows[0][2]) == pytest.approx(1 / math.pi, rel=1e-15)

    def test_two_sided_density_free_case(self):
        code, text = run(
            "eval", "phi", "--q", "0", "--y", "0.1", "--rho1", "0.5",
            "--z", "-0.2", "--rho2", "0.4", "--x", "0.3",
        )
        assert code == 0
        _, rows = csv_rows(text)
        p = CondDensityParams(0.1, 0.5, -0.2, 0.4, 0)
        assert float(rows[0][6]) == pytest.approx(phi_q0(0.3, p), rel=1e-12)

    def test_moment_selector(self):
        code, text = run("eval", "C", "--n", "0", "--q", "0.5")
        assert code == 0
        _, rows = csv_rows(text)
        assert rows[0][6] == "1.0"
        code, text = run(
            "eval", "C", "--n", "1", "--q", "0.5", "--y", "0.4", "--rho1", "0.5",
            "--z", "-0.6", "--rho2", "0.7",
        )
        _, rows = csv_rows(text)
        want = float(c_n_main(1, CondDensityParams(0.4, 0.5, -0.6, 0.7, 0.5)))
        assert float(rows[0][6]) == want

    def test_chebyshev_selector_ignores_q(self):
        code, text = run("eval", "U", "--n", "3", "--q", "0.7", "--x", "0.5")
        assert code == 0
        _, rows = csv_rows(text)
        assert float(rows[0][3]) == chebyshev_U(3, 0.5) == -1.0

    def test_conjugate_pair_selector(self):
        code, text = run("eval", "Q", "--n", "2", "--q", "0.5", "--y", "0.4",
                         "--rho1", "0.6", "--x", "0.2")
        assert code == 0
        _, rows = csv_rows(text)
        assert math.isfinite(float(rows[0][5]))

    def test_usage_errors_exit_two(self):
        bad = (
            ("eval", "H", "--n", "2", "--q", "0.5", "--x", "1", "--grid", "0:1:3"),
            ("eval", "H", "--n", "2", "--q", "0.5"),
            ("eval", "H", "--n", "2", "--q", "0.5", "--grid", "1:2"),
            ("eval", "H", "--n", "2", "--q", "0.5", "--grid", "0:1:0"),
            ("eval", "H", "--n", "-1", "--q", "0.5", "--x", "1"),
            ("eval", "C", "--n", "2", "--q", "0.5", "--x", "1"),
        )
        for argv in bad:
            code, _ = run(*argv)
            assert code == 2, argv

    def test_repeat_runs_are_byte_identical(self):
        argv = ("eval", "phi", "--q", "0.5", "--y", "0.4", "--rho1", "0.5",
                "--z", "-0.6", "--rho2", "0.7", "--grid", "-2:2:9")
        first = run(*argv)
        second = run(*argv)
        assert first == second


class TestVerifyCommand:
    def test_single_check(self):
        code, text = run("verify", "--check", "orthogonality_H", "--nmax", "4", "--q", "0")
        assert code == 0
        lines = text.splitlines()
        assert lines[-1].endswith("checks passed")
        assert all(line.startswith("PASS") for line in lines[:-1])

    def test_unknown_check(self):
        code, text = run("verify", "--check", "nosuch")
        assert code == 2
        assert text == ""

    def test_failing_tolerance_exits_one(self):
        code, text = run("verify", "--check", "sn_series", "--q", "0.3", "--tol", "1e-30")
        assert code == 1
        assert "FAIL" in text

    def test_json_format(self):
        code, blob = run("verify", "--check", "sn_series", "--q", "0.3", "--format", "json")
        assert code == 0
        rows = json.loads(blob)
        assert rows and all(row["pass"] for row in rows)

    def test_requires_a_selection(self):
        code, _ = run("verify")
        assert code == 2
        code, _ = run("verify", "--all", "--check", "sn_series")
        assert code == 2

    def test_repeat_runs_are_byte_identical(self):
        argv = ("verify", "--check", "ratio_bounds", "--q", "0.3")
        assert run(*argv) == run(*argv)


class TestExpandCommand:
    def test_kernel_uncorrelated_is_exact(self):
        code, text = run("expand", "fcn", "--n", "5", "--q", "0.5", "--y", "0.4",
                         "--rho1", "0", "--x", "0.3")
        assert code == 0
        _, rows = csv_rows(text)
        assert float(rows[0][-1]) < 1e-15

    def test_error_column_shrinks_with_terms(self):
        argv = ("expand", "phi", "--q", "0.5", "--y", "0.4", "--rho1", "0.5",
                "--z", "-0.6", "--rho2", "0.4", "--x", "0.3")
        _, coarse = run(*argv, "--n", "10")
        _, fine = run(*argv, "--n", "40")
        _, coarse_rows = csv_rows(coarse)
        _, fine_rows = csv_rows(fine)
        assert float(fine_rows[0][-1]) < float(coarse_rows[0][-1])

    def test_json_columns(self):
        code, blob = run("expand", "fcn", "--n", "20", "--q", "0.3", "--y", "0.2",
                         "--rho1", "0.4", "--grid", "-1:1:3", "--format", "json")
        assert code == 0
        rows = json.loads(blob)
        assert len(rows) == 3
        for row in rows:
            assert {"closed_form", "partial_sum", "abs_error"} <= set(row)
            assert row["abs_error"] == abs(row["closed_form"] - row["partial_sum"])

    def test_rejects_empty_expansion(self):
        code, _ = run("expand", "phi", "--n", "0", "--q", "0.5", "--x", "0.1")
        assert code == 2


class TestEntryPoint:
    def test_entry_raises_system_exit(self, monkeypatch, capsys):
        monkeypatch.setattr(
            sys, "argv", ["qaw", "eval", "H", "--n", "0", "--q", "0.5", "--x", "0.0"]
        )
        with pytest.raises(SystemExit) as exc:
            entry()
        assert exc.value.code == 0
        assert "value" in capsys.readouterr().out

    def test_help_returns_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "eval" in capsys.readouterr().out
