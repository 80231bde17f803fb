"""
Tests for PACFLab CLI

Tests for the subcommands, output files, manifests and exit codes.
"""

import io
import json
import math

import numpy as np
import pandas as pd
import pytest
from scipy import special

from pacflab import __version__
from pacflab.cli.commands import RunConfig, run
from pacflab.cli.main import build_parser, main
from pacflab.cli.output import emit, manifest_path, trace_path


def _error(capsys) -> dict:
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


class TestCoeffsCommand:
    """Tests for the coeffs subcommand."""

    def test_csv_output(self, tmp_path):
        """Test FARIMA(0, 0.3, 0) coefficients are written with a manifest."""
        out = tmp_path / "coeffs.csv"
        assert main(["coeffs", "--d", "0.3", "--n-max", "5", "--out", str(out)]) == 0

        frame = pd.read_csv(out)
        assert list(frame.columns) == ["n", "c", "a", "gamma"]
        assert len(frame) == 6
        assert frame["c"][2] == pytest.approx(0.195)
        assert frame["a"][1] == pytest.approx(0.3)
        expected_gamma0 = special.gamma(0.4) / special.gamma(0.7) ** 2
        assert frame["gamma"][0] == pytest.approx(expected_gamma0, rel=1e-12)

        manifest = json.loads(manifest_path(out).read_text())
        assert manifest["command"] == "coeffs"
        assert manifest["pacflab_version"] == __version__
        assert manifest["model"]["d"] == 0.3
        assert manifest["outputs"] == ["coeffs.csv"]
        assert manifest["diagnostics"]["convolution_residual"] < 1e-12

    def test_stdout(self, capsys):
        """Test output goes to stdout without --out."""
        assert main(["coeffs", "--n-max", "3"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n,c,a,gamma"
        assert lines[1] == "0,1,-1,1"
        assert len(lines) == 5

    def test_antipersistent_columns(self, tmp_path):
        """Test d < 0 adds the psi and phi sequences."""
        out = tmp_path / "coeffs.csv"
        assert main(["coeffs", "--d", "-0.3", "--n-max", "4", "--out", str(out)]) == 0
        frame = pd.read_csv(out)
        assert {"psi", "phi"} <= set(frame.columns)

    def test_json_model(self, capsys):
        """Test an inline FarimaSpec is accepted and flags override it."""
        spec = json.dumps({"d": 0.1, "phi": [1.0, -0.5]})
        assert main(["coeffs", "--model", spec, "--d", "0.3", "--n-max", "2", "--format", "json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert len(rows) == 3
        # -(1 - 0.5z)(1 - z)^0.3 = -1 + 0.8z + ...
        assert rows[1]["a"] == pytest.approx(0.8)


class TestPacfCommand:
    """Tests for the pacf and compare subcommands."""

    def test_levinson_json(self, capsys):
        """Test Levinson alpha_n = d/(n - d) in JSON records."""
        assert main(["pacf", "--d", "0.3", "--n-max", "4", "--method", "levinson", "--format", "json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert [row["n"] for row in rows] == [1, 2, 3, 4]
        np.testing.assert_allclose([row["alpha"] for row in rows], 0.3 / (np.arange(1, 5) - 0.3), atol=1e-12)

    def test_both_methods(self, tmp_path):
        """Test --method both tabulates the two methods side by side."""
        out = tmp_path / "pacf.csv"
        code = main(["pacf", "--d", "0.3", "--n-max", "3", "--mid-len", "128", "--method", "both", "--out", str(out)])
        assert code == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["n", "alpha_repr", "alpha_levinson", "abs_diff"]
        assert frame["abs_diff"].max() < 1e-5

    def test_repr_diagnostics(self, tmp_path):
        """Test the representation run reports depth and truncation diagnostics."""
        out = tmp_path / "pacf.csv"
        assert main(["pacf", "--d", "-0.3", "--n-max", "3", "--mid-len", "128", "--out", str(out)]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["n", "alpha", "u", "v", "depth_used", "trunc_err"]
        manifest = json.loads(manifest_path(out).read_text())
        assert manifest["diagnostics"]["method"] == "repr"
        assert manifest["config"]["policy"]["mid_len"] == 128

    def test_compare_passes(self, tmp_path):
        """Test compare exits 0 when every lag agrees."""
        out = tmp_path / "compare.csv"
        code = main(
            ["compare", "--d", "0.3", "--n-max", "3", "--mid-len", "128", "--tolerance", "1e-5", "--out", str(out)]
        )
        assert code == 0
        frame = pd.read_csv(out)
        assert frame["pass"].all()
        assert json.loads(manifest_path(out).read_text())["passed"] is True

    def test_covariance_csv(self, tmp_path):
        """Test a gamma CSV runs through Levinson by default."""
        source = tmp_path / "gamma.csv"
        n = np.arange(41)
        pd.DataFrame({"n": n, "gamma": 0.5**n / 0.75}).to_csv(source, index=False)
        out = tmp_path / "pacf.csv"
        code = main(["pacf", "--model", str(source), "--n-max", "3", "--grid-size", "1024", "--out", str(out)])
        assert code == 0
        frame = pd.read_csv(out)
        np.testing.assert_allclose(frame["alpha"], [0.5, 0.0, 0.0], atol=1e-12)


class TestFactorizeCommand:
    """Tests for the factorize subcommand."""

    def test_white_noise(self, tmp_path):
        """Test white noise factorizes to c = (1, 0, ...)."""
        out = tmp_path / "factor.csv"
        assert main(["factorize", "--n-max", "5", "--grid-size", "64", "--out", str(out)]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["n", "c", "a", "log_coeff"]
        np.testing.assert_allclose(frame["c"], [1.0, 0, 0, 0, 0, 0], atol=1e-12)
        diagnostics = json.loads(manifest_path(out).read_text())["diagnostics"]
        assert diagnostics["grid_size"] == 64
        assert diagnostics["c0_sq"] == pytest.approx(1.0)

    def test_grid_too_small(self, capsys):
        """Test n_max at half the grid is a configuration error."""
        assert main(["factorize", "--n-max", "32", "--grid-size", "64"]) == 2
        assert _error(capsys)["error"] == "config"


class TestVerifyCommand:
    """Tests for the verify subcommand."""

    def test_single_scenario(self, capsys):
        """Test verify prints the JSON summary and exits 0 on a pass."""
        assert main(["verify", "tau-identity"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["pass"] is True
        assert list(summary["scenarios"]) == ["tau-identity"]

    def test_output_file(self, tmp_path):
        """Test verify writes the summary and a manifest."""
        out = tmp_path / "verify.json"
        assert main(["verify", "delta-law", "--out", str(out)]) == 0
        assert json.loads(out.read_text())["scenarios"]["delta-law"]["pass"] is True
        assert manifest_path(out).exists()

    def test_unknown_scenario(self, capsys):
        """Test unknown scenario names exit 2."""
        assert main(["verify", "nope"]) == 2
        assert _error(capsys)["error"] == "config"


class TestExitCodes:
    """Tests for error reporting and exit codes."""

    def test_bad_model_json(self, capsys):
        """Test unparsable model JSON exits 2."""
        assert main(["coeffs", "--model", "{bad"]) == 2
        error = _error(capsys)
        assert error["error"] == "config"
        assert "message" in error

    def test_unknown_builtin(self, capsys):
        """Test an unknown builtin model exits 2."""
        assert main(["coeffs", "--model", "builtin:nope"]) == 2

    def test_invalid_d(self, capsys):
        """Test d outside (-1/2, 1/2) exits 3."""
        assert main(["coeffs", "--d", "0.7"]) == 3
        assert _error(capsys)["error"] == "model_validation"

    def test_noninvertible_ma(self, capsys):
        """Test a unit-root MA polynomial exits 3."""
        assert main(["coeffs", "--theta", "1,1"]) == 3

    def test_not_positive_definite(self, tmp_path, capsys):
        """Test a covariance that is not positive definite exits 4."""
        source = tmp_path / "gamma.csv"
        pd.DataFrame({"n": [0, 1, 2], "gamma": [1.0, 0.9, 0.0]}).to_csv(source, index=False)
        code = main(["pacf", "--model", str(source), "--n-max", "2", "--grid-size", "64"])
        assert code == 4
        assert _error(capsys)["error"] == "not_positive_definite"

    def test_missing_output_directory(self, tmp_path, capsys):
        """Test an output path in a missing directory exits 2 before computing."""
        out = tmp_path / "missing" / "coeffs.csv"
        assert main(["coeffs", "--out", str(out)]) == 2
        assert not out.parent.exists()

    def test_grid_size_power_of_two(self, capsys):
        """Test --grid-size must be a power of two."""
        assert main(["factorize", "--grid-size", "100"]) == 2
        assert "power of two" in _error(capsys)["message"]

    def test_bad_flag(self, capsys):
        """Test argparse errors exit 2."""
        assert main(["coeffs", "--n-max", "many"]) == 2

    def test_bad_polynomial(self, capsys):
        """Test a polynomial flag that is not a number list exits 2."""
        assert main(["coeffs", "--phi", "[1, x]"]) == 2


class TestOutput:
    """Tests for run and emit."""

    def test_emit_to_stream(self):
        """Test emit writes the table to the given stream and no files."""
        config = RunConfig(command="coeffs", n_max=2)
        stream = io.StringIO()
        assert emit(run(config), config, stream=stream) == []
        assert stream.getvalue().startswith("n,c,a,gamma\n")

    def test_full_precision(self, tmp_path):
        """Test floats round-trip through the CSV."""
        out = tmp_path / "coeffs.csv"
        config = RunConfig(command="coeffs", d=0.3, n_max=3, out=out)
        result = run(config)
        emit(result, config)
        frame = pd.read_csv(out, float_precision="round_trip")
        assert frame["c"].tolist() == result.frame["c"].tolist()

    def test_trace_files(self, tmp_path):
        """Test scenario traces are written next to the summary."""
        out = tmp_path / "verify.json"
        config = RunConfig(command="verify", scenarios=["tau-identity"], out=out)
        written = emit(run(config), config)
        assert out in written
        assert manifest_path(out) in written
        assert not trace_path(out, "tau-identity").exists()

    def test_parser_lists_commands(self):
        """Test every subcommand is registered."""
        parser = build_parser()
        for command in ("coeffs", "beta", "pacf", "compare", "verify", "factorize"):
            assert parser.parse_args([command]).command == command

    def test_beta_command(self):
        """Test the beta table has one row per index."""
        config = RunConfig(command="beta", d=0.3, n_max=10)
        result = run(config)
        assert list(result.frame.columns) == ["n", "beta", "tail_bound"]
        assert len(result.frame) == 11
        assert result.frame["beta"][10] == pytest.approx(math.sin(0.3 * math.pi) / math.pi / 9.7, rel=1e-6)
