"""Tests for configuration file loader."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from voltprobe.config import CLIOverrides, ConfigLoader, FileConfig
from voltprobe.exceptions import ConfigurationError
from voltprobe.models import Command, Precision, RunConfig, Tolerances


class TestConfigFileDiscovery:
    """Tests for config file discovery."""

    def test_discover_explicit_path(self, tmp_path: Path) -> None:
        """Uses provided explicit path."""
        config_file = tmp_path / "custom-config.yaml"
        config_file.write_text("precision: double\n")

        result = ConfigLoader.discover_config_file(config_file)
        assert result == config_file

    def test_discover_explicit_path_not_found_raises(self, tmp_path: Path) -> None:
        """Raises ConfigurationError for missing explicit path."""
        missing_file = tmp_path / "missing.yaml"

        with pytest.raises(ConfigurationError) as exc_info:
            ConfigLoader.discover_config_file(missing_file)
        assert "not found" in str(exc_info.value)

    def test_discover_voltprobe_yaml(self, tmp_path: Path) -> None:
        """Finds voltprobe.yaml in current directory."""
        config_file = tmp_path / "voltprobe.yaml"
        config_file.write_text("discretize:\n  grid_size: 256\n")

        with patch.object(Path, "cwd", return_value=tmp_path):
            result = ConfigLoader.discover_config_file()
        assert result == config_file

    def test_discover_dot_voltprobe_yml(self, tmp_path: Path) -> None:
        """Finds .voltprobe.yml in current directory."""
        config_file = tmp_path / ".voltprobe.yml"
        config_file.write_text("discretize:\n  grid_size: 256\n")

        with patch.object(Path, "cwd", return_value=tmp_path):
            result = ConfigLoader.discover_config_file()
        assert result == config_file

    def test_discover_priority_voltprobe_over_dot(self, tmp_path: Path) -> None:
        """voltprobe.yaml takes priority over .voltprobe.yaml."""
        (tmp_path / "voltprobe.yaml").write_text("precision: double\n")
        (tmp_path / ".voltprobe.yaml").write_text("precision: extended\n")

        with patch.object(Path, "cwd", return_value=tmp_path):
            result = ConfigLoader.discover_config_file()
        assert result == tmp_path / "voltprobe.yaml"

    def test_discover_none_when_no_file(self, tmp_path: Path) -> None:
        """Returns None when no config file found (silent)."""
        with patch.object(Path, "cwd", return_value=tmp_path):
            result = ConfigLoader.discover_config_file()
        assert result is None


class TestYamlLoading:
    """Tests for YAML file loading."""

    def test_load_valid_yaml(self, tmp_path: Path) -> None:
        """Parses valid YAML config file."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text(
            "quadrature:\n"
            "  panel_order: 20\n"
            "discretize:\n"
            "  grid_size: 1024\n"
        )

        result = ConfigLoader.load_yaml(config_file)
        assert result["quadrature"]["panel_order"] == 20
        assert result["discretize"]["grid_size"] == 1024

    def test_load_empty_yaml_returns_empty_dict(self, tmp_path: Path) -> None:
        """Empty YAML file returns empty dict."""
        config_file = tmp_path / "empty.yaml"
        config_file.write_text("")

        result = ConfigLoader.load_yaml(config_file)
        assert result == {}

    def test_load_invalid_yaml_raises(self, tmp_path: Path) -> None:
        """Invalid YAML raises ConfigurationError."""
        config_file = tmp_path / "invalid.yaml"
        config_file.write_text("invalid: yaml: content:")

        with pytest.raises(ConfigurationError) as exc_info:
            ConfigLoader.load_yaml(config_file)
        assert "Failed to parse" in str(exc_info.value)

    def test_load_non_mapping_raises(self, tmp_path: Path) -> None:
        """A top-level list is not a configuration."""
        config_file = tmp_path / "list.yaml"
        config_file.write_text("- 1\n- 2\n")

        with pytest.raises(ConfigurationError) as exc_info:
            ConfigLoader.load_yaml(config_file)
        assert "must contain a mapping" in str(exc_info.value)

    def test_load_missing_file_raises(self, tmp_path: Path) -> None:
        """Missing file raises ConfigurationError."""
        missing_file = tmp_path / "missing.yaml"

        with pytest.raises(ConfigurationError) as exc_info:
            ConfigLoader.load_yaml(missing_file)
        assert "Failed to read" in str(exc_info.value)


class TestEnvironmentInterpolation:
    """Tests for environment variable interpolation."""

    def test_interpolate_simple_var(self) -> None:
        """${VAR} is replaced with environment value."""
        with patch.dict(os.environ, {"GRID": "2048"}):
            result = ConfigLoader.interpolate_env_vars("${GRID}")
        assert result == "2048"

    def test_interpolate_with_default_uses_default(self) -> None:
        """${VAR:-default} uses default when var is not set."""
        with patch.dict(os.environ, {}, clear=True):
            result = ConfigLoader.interpolate_env_vars("${MISSING_VAR:-512}")
        assert result == "512"

    def test_interpolate_nested(self) -> None:
        """Interpolates variables in nested dicts and lists."""
        with patch.dict(os.environ, {"ORDER": "24", "GAMMA": "3.0"}):
            config = {"quadrature": {"panel_order": "${ORDER}"}, "gammas": ["${GAMMA}"]}
            result = ConfigLoader.interpolate_env_vars(config)
        assert result == {"quadrature": {"panel_order": "24"}, "gammas": ["3.0"]}

    def test_interpolate_missing_var_raises(self) -> None:
        """Raises ConfigurationError for undefined variable without default."""
        with patch.dict(os.environ, {}, clear=True):
            with pytest.raises(ConfigurationError) as exc_info:
                ConfigLoader.interpolate_env_vars("${UNDEFINED_VAR}")
        assert "UNDEFINED_VAR" in str(exc_info.value)
        assert "not set" in str(exc_info.value)

    def test_interpolate_non_string_types_unchanged(self) -> None:
        """Non-string types pass through unchanged."""
        assert ConfigLoader.interpolate_env_vars(42) == 42
        assert ConfigLoader.interpolate_env_vars(3.14) == 3.14
        assert ConfigLoader.interpolate_env_vars(None) is None


class TestLoadConfig:
    """Tests for full config loading."""

    def test_load_config_returns_file_config(self, tmp_path: Path) -> None:
        """Returns validated FileConfig object."""
        config_file = tmp_path / "voltprobe.yaml"
        config_file.write_text(
            "quadrature:\n"
            "  panel_order: 20\n"
            "  abs_tol: 1.0e-13\n"
            "discretize:\n"
            "  grid_size: 1024\n"
            "  grading_exponent: 3.0\n"
            "tolerances:\n"
            "  residual_g: 1.0e-7\n"
            "precision: extended\n"
        )

        result = ConfigLoader.load_config(config_file)
        assert isinstance(result, FileConfig)
        assert result.quadrature.panel_order == 20
        assert result.quadrature.abs_tol == 1e-13
        assert result.discretize.grid_size == 1024
        assert result.discretize.grading_exponent == 3.0
        assert result.tolerances.residual_g == 1e-7
        assert result.tolerances.residual_f == Tolerances().residual_f
        assert result.precision is Precision.EXTENDED

    def test_load_config_with_env_vars(self, tmp_path: Path) -> None:
        """Environment variables are interpolated before validation."""
        config_file = tmp_path / "voltprobe.yaml"
        config_file.write_text("discretize:\n  grid_size: ${VOLTPROBE_GRID:-128}\n")

        with patch.dict(os.environ, {"VOLTPROBE_GRID": "64"}):
            result = ConfigLoader.load_config(config_file)
        assert result is not None
        assert result.discretize.grid_size == 64

    def test_load_config_returns_none_when_not_found(self, tmp_path: Path) -> None:
        """Returns None if no config file is found."""
        with patch.object(Path, "cwd", return_value=tmp_path):
            result = ConfigLoader.load_config()
        assert result is None

    def test_load_config_invalid_schema_raises(self, tmp_path: Path) -> None:
        """Invalid values raise ConfigurationError."""
        config_file = tmp_path / "voltprobe.yaml"
        config_file.write_text("discretize:\n  grid_size: 10000\n")

        with pytest.raises(ConfigurationError) as exc_info:
            ConfigLoader.load_config(config_file)
        assert "Invalid configuration" in str(exc_info.value)


class TestResolvePrecision:
    """Tests for precision resolution."""

    def test_default_is_double(self) -> None:
        """Double precision without any setting."""
        with patch.dict(os.environ, {}, clear=True):
            assert ConfigLoader.resolve_precision(None) is Precision.DOUBLE

    def test_file_setting(self) -> None:
        """The config file sets the precision."""
        file_config = FileConfig(precision=Precision.EXTENDED)
        with patch.dict(os.environ, {}, clear=True):
            assert ConfigLoader.resolve_precision(file_config) is Precision.EXTENDED

    def test_env_overrides_file(self) -> None:
        """VOLTERRA_PRECISION beats the config file."""
        file_config = FileConfig(precision=Precision.EXTENDED)
        with patch.dict(os.environ, {"VOLTERRA_PRECISION": "Double"}):
            assert ConfigLoader.resolve_precision(file_config) is Precision.DOUBLE

    def test_cli_overrides_env(self) -> None:
        """The CLI flag beats the environment."""
        with patch.dict(os.environ, {"VOLTERRA_PRECISION": "double"}):
            result = ConfigLoader.resolve_precision(None, Precision.EXTENDED)
        assert result is Precision.EXTENDED

    def test_invalid_env_raises(self) -> None:
        """Unknown precision names are rejected."""
        with patch.dict(os.environ, {"VOLTERRA_PRECISION": "quad"}):
            with pytest.raises(ConfigurationError) as exc_info:
                ConfigLoader.resolve_precision(None)
        assert "VOLTERRA_PRECISION" in str(exc_info.value)


class TestResolveRunConfig:
    """Tests for run configuration resolution."""

    def test_defaults_when_no_config(self) -> None:
        """Uses defaults when no config provided."""
        with patch.dict(os.environ, {}, clear=True):
            config = ConfigLoader.resolve_run_config(Command.SPECTRUM, None)
        assert config.command is Command.SPECTRUM
        assert config.alpha == 0.5
        assert config.n == 5
        assert config.grid_size == 512
        assert config.tol == Tolerances().residual_f
        assert config.precision is Precision.DOUBLE

    def test_file_config_used(self) -> None:
        """Config file sections feed the run configuration."""
        file_config = FileConfig.model_validate(
            {"discretize": {"grid_size": 64, "top_k": 3}, "tolerances": {"residual_f": 1e-9}}
        )
        with patch.dict(os.environ, {}, clear=True):
            config = ConfigLoader.resolve_run_config(Command.DISCRETIZE, file_config)
        assert config.grid_size == 64
        assert config.top_k == 3
        assert config.tol == 1e-9

    def test_cli_overrides_file_config(self) -> None:
        """CLI arguments override config file values."""
        file_config = FileConfig.model_validate({"discretize": {"grid_size": 64}})
        overrides = CLIOverrides(alpha=0.25, n=3, grid_size=128, tol=1e-6)
        with patch.dict(os.environ, {}, clear=True):
            config = ConfigLoader.resolve_run_config(Command.RESIDUALS, file_config, overrides)
        assert config.alpha == 0.25
        assert config.n == 3
        assert config.grid_size == 128
        assert config.tol == 1e-6

    @pytest.mark.parametrize(
        "overrides",
        [
            CLIOverrides(alpha=1.0),
            CLIOverrides(alpha=0.0),
            CLIOverrides(n=0),
            CLIOverrides(tol=0.0),
        ],
    )
    def test_invalid_values_raise(self, overrides: CLIOverrides) -> None:
        """Out-of-domain values raise ConfigurationError."""
        with pytest.raises(ConfigurationError) as exc_info:
            ConfigLoader.resolve_run_config(Command.SPECTRUM, None, overrides)
        assert "Invalid run configuration" in str(exc_info.value)

    def test_output_settings_not_part_of_run_config(self) -> None:
        """Report format and destination are command arguments, not run settings."""
        for field in ("output_format", "output_path"):
            assert field not in CLIOverrides.model_fields
            assert field not in RunConfig.model_fields
