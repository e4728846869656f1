"""Tests for the command line interface."""

import numpy as np
import pytest

from bgk1d import benchmarks
from bgk1d.cli import main

TINY = ["--nx", "8", "--nv", "24", "--tfinal", "0.02"]


@pytest.fixture(scope="module")
def solved_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "run"
    code = main(["solve", "--problem", "accuracy", *TINY, "--out", str(out)])
    assert code == 0
    return out


class TestSolve:
    def test_writes_solution_and_manifest(self, solved_dir):
        assert (solved_dir / "solution.csv").is_file()
        assert (solved_dir / "manifest.txt").is_file()

    def test_prints_summary(self, solved_dir, tmp_path, capsys):
        code = main(["solve", "--problem", "accuracy", *TINY, "--out", str(tmp_path / "r")])
        captured = capsys.readouterr()
        assert code == 0
        assert "steps" in captured.out
        assert "solution.csv" in captured.out

    def test_overrides_recorded_in_manifest(self, tmp_path):
        out = tmp_path / "r"
        code = main([
            "solve", "--problem", "accuracy", *TINY,
            "--order", "4", "--eps", "0.5", "--cfl", "0.15",
            "--scheme", "berk2", "--out", str(out),
        ])
        assert code == 0
        config = benchmarks.config_from_manifest(
            benchmarks.parse_manifest(out / "manifest.txt")
        )
        assert config.n_cells == 8
        assert config.degree == 3
        assert config.epsilon == 0.5
        assert config.cfl == 0.15
        assert config.scheme == "berk2"

    def test_limiter_flag_none_and_value(self, tmp_path):
        for text, expected in (("none", None), ("5.0", 5.0)):
            out = tmp_path / f"r-{text}"
            code = main([
                "solve", "--problem", "accuracy", *TINY,
                "--limiter", text, "--out", str(out),
            ])
            assert code == 0
            config = benchmarks.config_from_manifest(
                benchmarks.parse_manifest(out / "manifest.txt")
            )
            assert config.limiter_m == expected

    def test_limiter_flag_absent_keeps_problem_default(self, tmp_path):
        out = tmp_path / "r"
        code = main(["solve", "--problem", "sod", "--nx", "16", "--nv", "24",
                     "--tfinal", "0.002", "--out", str(out)])
        assert code == 0
        config = benchmarks.config_from_manifest(
            benchmarks.parse_manifest(out / "manifest.txt")
        )
        assert config.limiter_m == benchmarks.build_problem("sod").limiter_m

    def test_order_below_two_rejected(self, tmp_path, capsys):
        code = main(["solve", "--problem", "accuracy", *TINY,
                     "--order", "1", "--out", str(tmp_path / "r")])
        captured = capsys.readouterr()
        assert code == 1
        assert "error:" in captured.err

    def test_unknown_problem_exits_via_argparse(self):
        with pytest.raises(SystemExit) as info:
            main(["solve", "--problem", "nosuch"])
        assert info.value.code == 2


class TestConverge:
    def test_writes_table_and_reports_orders(self, tmp_path, capsys):
        out = tmp_path / "conv"
        code = main([
            "converge", "--problem", "accuracy", "--orders", "2",
            "--eps-list", "1", "--nx-list", "8,16", "--nv", "24",
            "--out", str(out),
        ])
        captured = capsys.readouterr()
        assert code == 0
        table = out / "accuracy-order2-eps1.csv"
        assert table.is_file()
        lines = table.read_text().strip().splitlines()
        assert lines[0] == "N_x,error,order"
        assert len(lines) == 3
        assert "order 2, eps 1" in captured.out

    def test_non_halving_ladder_rejected(self, capsys):
        code = main(["converge", "--nx-list", "8,12"])
        captured = capsys.readouterr()
        assert code == 1
        assert "halve" in captured.err

    def test_order_one_rejected(self, capsys):
        code = main(["converge", "--orders", "1", "--nx-list", "8,16"])
        captured = capsys.readouterr()
        assert code == 1
        assert "error:" in captured.err


class TestCompare:
    def test_self_compare_is_zero(self, solved_dir, capsys):
        code = main(["compare", "--a", str(solved_dir), "--b", str(solved_dir)])
        captured = capsys.readouterr()
        assert code == 0
        values = [float(line.split(":")[1]) for line in captured.out.strip().splitlines()]
        assert values == [0.0, 0.0, 0.0]

    def test_linf_norm_accepted(self, solved_dir, capsys):
        code = main(["compare", "--a", str(solved_dir), "--b", str(solved_dir),
                     "--norm", "linf"])
        assert code == 0
        assert "rho:" in capsys.readouterr().out

    def test_missing_run_reports_error(self, solved_dir, tmp_path, capsys):
        code = main(["compare", "--a", str(tmp_path / "absent"), "--b", str(solved_dir)])
        captured = capsys.readouterr()
        assert code == 1
        assert "error:" in captured.err

    def test_cross_mesh_compare_runs(self, solved_dir, tmp_path, capsys):
        other = tmp_path / "fine"
        assert main(["solve", "--problem", "accuracy", "--nx", "16", "--nv", "24",
                     "--tfinal", "0.02", "--out", str(other)]) == 0
        capsys.readouterr()
        code = main(["compare", "--a", str(solved_dir), "--b", str(other)])
        captured = capsys.readouterr()
        assert code == 0
        rho_line = captured.out.strip().splitlines()[0]
        assert np.isfinite(float(rho_line.split(":")[1]))


class TestStepFailurePath:
    def test_failed_run_exits_nonzero_with_diagnostic(self, tmp_path, capsys):
        code = main([
            "solve", "--problem", "sod", "--nx", "40", "--nv", "32",
            "--limiter", "none", "--out", str(tmp_path / "r"),
        ])
        captured = capsys.readouterr()
        assert code == 1
        assert "step" in captured.err
