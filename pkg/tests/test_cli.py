import json
import math

import numpy as np
import pytest
from click.testing import CliRunner
from loguru import logger
from pyhalfstrip import __version__
from pyhalfstrip.cli import CliConfig, Command, main, resolve_function
from pyhalfstrip.rootbasis import RootCoefficients


@pytest.fixture()
def runner():
    yield CliRunner()
    logger.remove()
    logger.disable("pyhalfstrip")


def invoke(runner, *args, **kwargs):
    return runner.invoke(main, [str(arg) for arg in args], **kwargs)


class TestMain:
    def test_main_should_print_version_when_version_flag_is_given(self, runner):
        result = invoke(runner, "--version")
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_catalog_should_list_published_functions_when_called(self, runner):
        result = invoke(runner, "catalog")
        assert result.exit_code == 0
        names = [line.split()[0] for line in result.stdout.splitlines()]
        assert names == ["zero", "one", "cos_k", "xsin_k", "combo", "bump"]

    def test_main_should_exit_with_usage_error_when_log_level_is_unknown(self, runner):
        assert invoke(runner, "--log-level", "LOUD", "catalog").exit_code == 2


class TestExpand:
    def test_expand_should_print_single_mode_when_function_is_x_sin_3x(self, runner):
        result = invoke(runner, "expand", "--f", "xsin_3", "--N", 8)
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["dim"] == 1
        assert payload["N"] == 8
        assert payload["b"][2][0] == pytest.approx(1.0, abs=1e-12)
        assert max(abs(value[0]) for value in payload["a"]) <= 1e-12

    def test_expand_should_report_error_table_on_stderr_when_run(self, runner):
        result = invoke(runner, "expand", "--f", "combo", "--N", 4)
        assert result.exit_code == 0
        assert "max error" in result.stderr
        assert "max error" not in result.stdout

    def test_expand_should_exit_with_usage_error_when_function_is_unknown(self, runner):
        result = invoke(runner, "expand", "--f", "nosuch")
        assert result.exit_code == 2
        assert "nosuch" in result.output

    def test_expand_should_exit_with_usage_error_when_truncation_is_zero(self, runner):
        assert invoke(runner, "expand", "--f", "xsin_3", "--N", 0).exit_code == 2

    def test_expand_should_write_csv_rows_when_format_is_csv(self, runner, tmp_path):
        path = tmp_path / "coeffs.csv"
        result = invoke(runner, "expand", "--f", "cos_2", "--N", 3, "--dim", 2, "--format", "csv", "--output", path)
        assert result.exit_code == 0, result.output
        lines = path.read_text().splitlines()
        assert lines[0] == "kind,n,component_0,component_1"
        assert len(lines) == 1 + 7
        kind, n, *values = lines[3].split(",")
        assert (kind, n) == ("cos", "2")
        assert [float(value) for value in values] == pytest.approx([1.0, 1.0], abs=1e-12)

    def test_expand_should_write_trigonometric_coefficients_when_trig_path_is_given(self, runner, tmp_path):
        path = tmp_path / "trig.json"
        result = invoke(runner, "expand", "--f", "cos_2", "--N", 3, "--trig", path)
        assert result.exit_code == 0
        assert json.loads(path.read_text())["c"][1][0] == pytest.approx(1.0, abs=1e-12)

    def test_expand_should_use_environment_quadrature_when_variable_is_set(self, runner):
        result = invoke(runner, "expand", "--f", "cos_2", env={"PYHALFSTRIP_QUADRATURE_PANELS": "0"})
        assert result.exit_code == 2

    def test_expand_should_print_zero_coefficients_when_function_is_zero(self, runner):
        result = invoke(runner, "expand", "--f", "zero", "--N", 4)
        assert result.exit_code == 0, result.output
        assert not np.any(RootCoefficients.from_json(result.stdout).stacked())

    def test_expand_should_reproduce_itself_when_output_is_fed_back_as_function(self, runner, tmp_path):
        path = tmp_path / "bump.json"
        assert invoke(runner, "expand", "--f", "bump", "--N", 6, "--output", path).exit_code == 0
        result = invoke(runner, "expand", "--f", path, "--N", 6)
        assert result.exit_code == 0, result.output
        first = RootCoefficients.from_json(path.read_text()).stacked()
        second = RootCoefficients.from_json(result.stdout).stacked()
        assert np.max(np.abs(first - second)) <= 1e-10


class TestSolve:
    def test_solve_should_write_closed_form_field_when_function_is_x_sin_3x(self, runner, tmp_path):
        base = tmp_path / "golden"
        result = invoke(runner, "solve", "--f", "xsin_3", "--N", 8, "--xi", 5, "--grid", "65x65", "--output", base)
        assert result.exit_code == 0, result.output
        assert json.loads((tmp_path / "golden.json").read_text())["convention"] == "harmonic-consistent"
        table = np.loadtxt(tmp_path / "golden.csv", delimiter=",", skiprows=1)
        (row,) = table[(table[:, 0] == 0.0) & (np.abs(table[:, 1] - 1.0) < 1e-12)]
        assert abs(row[2] - math.exp(-3)) <= 1e-12
        assert "compatibility" in result.stderr

    def test_solve_should_warn_about_compatibility_when_datum_is_one(self, runner, tmp_path):
        result = invoke(runner, "solve", "--f", "one", "--N", 2, "--grid", "5x5", "--output", tmp_path / "one")
        assert result.exit_code == 0
        assert "violated" in result.stderr
        assert "constant mode" in result.stderr

    def test_solve_should_accept_coefficient_file_when_written_by_expand(self, runner, tmp_path):
        coefficients = tmp_path / "combo.json"
        assert invoke(runner, "expand", "--f", "combo", "--N", 4, "--output", coefficients).exit_code == 0
        result = invoke(runner, "solve", "--f", coefficients, "--N", 4, "--grid", "9x9", "--output", tmp_path / "s")
        assert result.exit_code == 0, result.output
        assert (tmp_path / "s.csv").exists()

    def test_solve_should_exit_with_usage_error_when_grid_is_malformed(self, runner, tmp_path):
        assert invoke(runner, "solve", "--grid", "65by65", "--output", tmp_path / "s").exit_code == 2

    def test_solve_should_exit_with_output_error_when_directory_is_missing(self, runner, tmp_path):
        result = invoke(runner, "solve", "--grid", "5x5", "--output", tmp_path / "missing" / "s")
        assert result.exit_code == 3

    def test_solve_should_warn_about_end_values_when_datum_is_cos_2x(self, runner, tmp_path):
        result = invoke(runner, "solve", "--f", "cos_2", "--N", 4, "--grid", "5x5", "--output", tmp_path / "c")
        assert result.exit_code == 0
        (line,) = [line for line in result.stderr.splitlines() if line.startswith("compatibility f_at_0 ")]
        assert "violated" in line

    def test_solve_should_write_zero_field_when_datum_is_zero(self, runner, tmp_path):
        result = invoke(runner, "solve", "--f", "zero", "--N", 4, "--grid", "9x9", "--output", tmp_path / "z")
        assert result.exit_code == 0
        table = np.loadtxt(tmp_path / "z.csv", delimiter=",", skiprows=1)
        assert not table[:, 2].any()


class TestVerify:
    args = ("verify", "--catalog", "xsin_3", "--N", 8, "--dim", 1, "--p", 2, "--samples", 10, "--no-table")

    def test_verify_should_emit_passing_report_when_subset_is_run(self, runner):
        result = invoke(runner, *self.args)
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["summary"]["fail"] == 0
        assert payload["environment"]["config"]["catalog"] == ["xsin_3"]

    def test_verify_should_exit_with_failure_when_tolerance_is_impossible(self, runner, tmp_path):
        path = tmp_path / "report.json"
        result = invoke(runner, *self.args, "--tol", "gram=1e-20", "--output", path)
        assert result.exit_code == 1
        assert "gram[N=8]" in result.stderr
        records = json.loads(path.read_text())["records"]
        assert any(record["family"] == "gram" and record["pass"] is False for record in records)

    def test_verify_should_exit_with_usage_error_when_tolerance_key_is_unknown(self, runner):
        assert invoke(runner, *self.args, "--tol", "nosuch=1").exit_code == 2

    def test_verify_should_exit_with_usage_error_when_tolerance_is_malformed(self, runner):
        assert invoke(runner, *self.args, "--tol", "gram").exit_code == 2

    def test_verify_should_exit_successfully_when_convention_is_strict_paper(self, runner):
        result = invoke(runner, *self.args, "--convention", "strict-paper")
        assert result.exit_code == 0, result.output
        records = json.loads(result.stdout)["records"]
        harmonicity = [record for record in records if record["family"] == "harmonicity"]
        assert harmonicity
        assert all(record["expected_failure"] and not record["pass"] for record in harmonicity)


class TestNorms:
    def test_norms_should_print_closed_form_mixed_norm_when_function_is_cos_2x(self, runner):
        result = invoke(runner, "norms", "--f", "cos_2", "--p", 2, "--xi", 5, "--format", "json")
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["lp"] == pytest.approx(math.sqrt(math.pi), rel=1e-12)
        assert payload["w2p"] == pytest.approx(7 * math.sqrt(math.pi), rel=1e-12)
        assert payload["lp1"] == pytest.approx(math.sqrt(math.pi) * (1 - math.exp(-10)) / 2, rel=1e-6)
        assert payload["ratio"] > 0

    def test_norms_should_report_degenerate_ratio_when_function_is_zero(self, runner):
        result = invoke(runner, "norms", "--f", "zero")
        assert result.exit_code == 0, result.output
        assert result.stdout.splitlines()[-1].split() == ["ratio", "degenerate"]

    def test_norms_should_print_header_and_row_when_format_is_csv(self, runner):
        result = invoke(runner, "norms", "--f", "xsin_3", "--xi", 3, "--format", "csv")
        header, row = result.stdout.splitlines()
        assert header == "function,p,xi,N,lp,w2p,lp1,w2p1,ratio"
        assert row.startswith("xsin_3,")

    def test_norms_should_exit_with_usage_error_when_p_is_one(self, runner):
        assert invoke(runner, "norms", "--p", 1).exit_code == 2


class TestResolveFunction:
    def test_resolve_function_should_build_root_combination_when_path_is_coefficient_file(self, tmp_path):
        path = tmp_path / "coeffs.json"
        path.write_text(RootCoefficients(a0=[0.0], a=[[0.0]], b=[[2.0]]).to_json())
        f = resolve_function(str(path))
        assert f(math.pi / 2)[0] == pytest.approx(math.pi)
        assert f.has_derivatives

    def test_cli_config_should_parse_grid_when_given_as_text(self):
        cfg = CliConfig(command=Command.SOLVE, grid="33x17", xi=2.0)
        assert cfg.grid == (33, 17)
        assert cfg.strip_grid().shape == (33, 17)
