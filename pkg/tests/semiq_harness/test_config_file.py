"""
Tests for the key = value configuration parser.
"""

import pytest

from semiq_core.exceptions import ConfigParseError
from semiq_core.exceptions import ConfigurationError
from semiq_core.exceptions import ConfigValidationError
from semiq_dynamics import Method
from semiq_dynamics import Representation
from semiq_harness import Experiment
from semiq_harness import RunConfig
from semiq_harness import parse_config
from semiq_harness.config_file import nest
from semiq_harness.config_file import parse_lines
from semiq_harness.config_file import parse_overrides
from semiq_limit import Ordering


@pytest.fixture
def write_config(tmp_path):
    def _write(text: str):
        path = tmp_path / "run.conf"
        path.write_text(text, encoding="utf-8")
        return path

    return _write


class TestParseLines:
    """Test the line format."""

    def test_comments_and_blank_lines(self):
        """Test comments, blank lines and trailing comments are skipped."""
        entries = parse_lines("# header\n\nmodel.hbar = 0.5  # reduced\n")
        assert entries == {"model.hbar": ("0.5", 3)}

    def test_missing_equals(self):
        """Test a line without '=' names its line number."""
        with pytest.raises(ConfigParseError) as exc_info:
            parse_lines("model.e = 1\n\nmodel.hbar 0.5\n")
        assert exc_info.value.line_number == 3
        assert "line 3" in str(exc_info.value)

    def test_duplicate_key(self):
        """Test a repeated key is rejected at its second occurrence."""
        with pytest.raises(ConfigParseError) as exc_info:
            parse_lines("seed = 1\nseed = 2\n")
        assert exc_info.value.line_number == 2

    @pytest.mark.parametrize("line", ["= 1", "model..e = 1", "9lives = 1", "seed ="])
    def test_malformed(self, line):
        """Test empty keys, bad keys and empty values."""
        with pytest.raises(ConfigParseError):
            parse_lines(line)


class TestOverrides:
    """Test --key=value flags."""

    def test_equals_and_separate_value(self):
        """Test both flag spellings."""
        entries = parse_overrides(["--model.e=0", "--seed", "7"])
        assert entries == {"model.e": ("0", 0), "seed": ("7", 0)}

    def test_flag_without_value(self):
        """Test a trailing flag without a value."""
        with pytest.raises(ConfigParseError):
            parse_overrides(["--model.e"])

    def test_positional_argument(self):
        """Test stray positional arguments are rejected."""
        with pytest.raises(ConfigParseError):
            parse_overrides(["model.e=0"])


class TestNest:
    """Test dotted keys become sections."""

    def test_sections(self):
        """Test dotted keys nest."""
        tree = nest({"model.e": ("0", 1), "model.hbar": ("1", 2), "seed": ("3", 3)})
        assert tree == {"model": {"e": "0", "hbar": "1"}, "seed": "3"}

    def test_value_and_section_conflict(self):
        """Test a key used both as a value and as a section."""
        with pytest.raises(ConfigParseError) as exc_info:
            nest({"model": ("1", 1), "model.hbar": ("2", 2)})
        assert exc_info.value.line_number == 2


class TestParseConfig:
    """Test parse_config end to end."""

    def test_empty_file_gives_defaults(self, write_config):
        """Test an empty file yields the full default configuration."""
        config = parse_config(write_config(""))
        assert config == RunConfig()
        assert (config.model.m_q, config.model.m_cl, config.model.omega_q) == (1.0, 1.0, 1.0)
        assert (config.model.e, config.model.hbar) == (1.0, 1.0)
        assert config.integrator.method is Method.RK45
        assert config.integrator.rel_tol == 1e-10
        assert config.limit.ordering is Ordering.I_FIRST
        assert config.sweep.e_r_grid == (1.5, 3.0, 6.0, 12.0, 24.0)
        assert config.seed == 12345

    def test_values_are_typed(self, write_config):
        """Test strings are coerced to the field types."""
        config = parse_config(
            write_config(
                "model.hbar = 0.1\n"
                "initial.representation = multipliers\n"
                "limit.hbar_seq = 1, 0.5\n"
                "lyapunov.raise_on_nonconvergence = false\n"
            )
        )
        assert config.model.hbar == 0.1
        assert config.initial.representation is Representation.MULTIPLIERS
        assert config.limit.hbar_seq == (1.0, 0.5)
        assert config.lyapunov.raise_on_nonconvergence is False

    def test_flags_override_file(self, write_config):
        """Test --model.e=0 wins over the file value."""
        config = parse_config(write_config("model.e = 0.5\n"), ["--model.e=0"])
        assert config.model.e == 0.0

    def test_no_file(self):
        """Test flags alone."""
        config = parse_config(None, ["--integrator.t_end", "5"])
        assert config.integrator.t_end == 5.0

    def test_experiment_injected(self, write_config):
        """Test the command's experiment replaces the file's."""
        config = parse_config(write_config("experiment = sweep\n"), [], Experiment.LIMIT)
        assert config.experiment is Experiment.LIMIT

    def test_unknown_key(self, write_config):
        """Test unknown keys are hard errors naming the key."""
        with pytest.raises(ConfigValidationError) as exc_info:
            parse_config(write_config("model.planck = 1\n"))
        assert exc_info.value.invariant == "model.planck"

    def test_invalid_value(self, write_config):
        """Test a violated field constraint names the field."""
        with pytest.raises(ConfigValidationError) as exc_info:
            parse_config(write_config("lyapunov.d0 = 1e-3\n"))
        assert exc_info.value.invariant == "lyapunov.d0"

    def test_multipliers_need_hbar(self, write_config):
        """Test hbar = 0 with simulate in multiplier representation is rejected."""
        text = "model.hbar = 0\ninitial.representation = multipliers\n"
        with pytest.raises(ConfigValidationError) as exc_info:
            parse_config(write_config(text), [], Experiment.SIMULATE)
        assert "expectations" in str(exc_info.value)

    def test_hbar_zero_with_expectations(self, write_config):
        """Test hbar = 0 is fine in expectation-value representation."""
        config = parse_config(write_config("model.hbar = 0\n"), [], Experiment.SIMULATE)
        assert config.model.hbar == 0.0

    def test_unsorted_sequence(self, write_config):
        """Test limit sequences must decrease."""
        with pytest.raises(ConfigValidationError):
            parse_config(write_config("limit.i_gap_seq = 0.01, 0.1\n"))

    def test_missing_file(self, tmp_path):
        """Test a missing file is a configuration error."""
        with pytest.raises(ConfigurationError):
            parse_config(tmp_path / "absent.conf")


class TestShippedConfigs:
    """Test the example configurations under configs/ validate."""

    @pytest.mark.parametrize("name", ["calibration.conf", "limit.conf", "sweep.conf"])
    def test_parses(self, name, configs_dir):
        config = parse_config(configs_dir / name)
        assert config.seed == 12345

    def test_calibration_is_strongly_coupled(self, configs_dir):
        """Test the calibration state sits at E_r ~ 3.5."""
        config = parse_config(configs_dir / "calibration.conf")
        assert config.initial.l == 1.6
        assert config.initial.p_a == 1.5
        assert config.lyapunov.horizon == 1000.0

    def test_sweep_spans_three_regions(self, configs_dir):
        """Test the sweep grid stays above the pure-limit floor at every point."""
        config = parse_config(configs_dir / "sweep.conf", [], Experiment.SWEEP)
        assert config.model.hbar == 1e-3
        assert config.sweep.e_r_grid == (1.2, 2.0, 10.0)
        assert config.sweep.classical_tol == 0.2
        assert config.lyapunov.horizon == 1000.0
