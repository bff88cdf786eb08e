import os

import pytest
from pydantic import ValidationError

from l2interp.errors import (
    KernelDomainError,
    MalformedImageError,
    ResourceLimitError,
    TransformError,
    UsageError,
)
from l2interp.utils.common import (
    clean_env_vars,
    exit_code_for,
    format_float,
    handle_failure,
    render_csv,
    write_atomic,
)
from l2interp.utils.config import (
    DEFAULT_LUT_MEMORY_CAP,
    DEFAULT_QUADRATURE_TOLERANCE,
    CliConfig,
    ConfigValidator,
    format_validation_error,
)
from l2interp.utils.spinner import Spinner


@pytest.fixture(autouse=True)
def no_config_environment(monkeypatch):
    monkeypatch.delenv("L2INTERP_THREADS", raising=False)
    monkeypatch.delenv("L2INTERP_LUT_CAP", raising=False)


class TestCliConfig:

    def test_defaults(self):
        config = ConfigValidator().config
        assert config.threads == 0
        assert config.quadrature_tolerance == DEFAULT_QUADRATURE_TOLERANCE
        assert config.lut_memory_cap == DEFAULT_LUT_MEMORY_CAP
        assert config.worker_count == (os.cpu_count() or 1)

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("L2INTERP_THREADS", "3")
        monkeypatch.setenv("L2INTERP_LUT_CAP", "500")
        config = ConfigValidator().config
        assert (config.threads, config.worker_count, config.lut_memory_cap) == (3, 3, 500)

    def test_arguments_override_environment(self, monkeypatch):
        monkeypatch.setenv("L2INTERP_THREADS", "3")
        assert ConfigValidator(threads=2).config.threads == 2

    def test_non_integer_environment(self, monkeypatch):
        monkeypatch.setenv("L2INTERP_THREADS", "many")
        with pytest.raises(UsageError, match="L2INTERP_THREADS"):
            ConfigValidator()

    @pytest.mark.parametrize("kwargs", [dict(threads=-1), dict(quadrature_tolerance=0.0), dict(lut_memory_cap=0)])
    def test_rejected_values(self, kwargs):
        with pytest.raises(UsageError):
            ConfigValidator(**kwargs)

    def test_output_dir_must_be_directory(self, tmp_path):
        target = tmp_path / "file"
        target.write_text("x")
        with pytest.raises(UsageError):
            ConfigValidator(output_dir=str(target))

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            CliConfig(colour=True)

    def test_concise_error_text(self):
        with pytest.raises(ValidationError) as info:
            CliConfig(threads=-1)
        assert format_validation_error(info.value) == "threads: Input should be greater than or equal to 0"


class TestValidations:

    def test_output_path(self, tmp_path):
        validator = ConfigValidator()
        assert validator.validate_output_path(str(tmp_path / "a.csv")) == tmp_path / "a.csv"
        with pytest.raises(UsageError):
            validator.validate_output_path(str(tmp_path))
        with pytest.raises(UsageError):
            validator.validate_output_path(str(tmp_path / "missing" / "a.csv"))

    def test_input_path(self, tmp_path):
        with pytest.raises(UsageError):
            ConfigValidator().validate_input_path(str(tmp_path / "none.pgm"))

    @pytest.mark.parametrize("t_min, t_max, points", [(-1.0, 2.0, 10), (2.0, 2.0, 10), (0.0, 1.0, 1)])
    def test_sweep(self, t_min, t_max, points):
        with pytest.raises(UsageError):
            ConfigValidator().validate_sweep(t_min, t_max, points)

    def test_precision(self):
        ConfigValidator().validate_precision(1)
        with pytest.raises(UsageError):
            ConfigValidator().validate_precision(0)

    @pytest.mark.parametrize("size, cycles", [(16, 1), (1, 1), (17, 0)])
    def test_phantom_run(self, size, cycles):
        with pytest.raises(UsageError):
            ConfigValidator().validate_phantom_run(size, cycles)


class TestExitCodes:

    @pytest.mark.parametrize("exc, code", [
        (UsageError("x"), 1),
        (MalformedImageError("x"), 1),
        (TransformError("x"), 1),
        (ResourceLimitError("x"), 2),
        (KernelDomainError("x"), 2),
        (OSError("x"), 2),
        (RuntimeError("x"), 2),
    ])
    def test_mapping(self, exc, code):
        assert exit_code_for(exc) == code

    def test_validation_error_is_usage(self):
        with pytest.raises(ValidationError) as info:
            CliConfig(threads=-1)
        assert exit_code_for(info.value) == 1

    @pytest.mark.parametrize("code", [0, 1, 2])
    def test_handle_failure_passes_code_through(self, code):
        assert handle_failure(code) == code


class TestCommonHelpers:

    def test_clean_env_vars(self, monkeypatch):
        monkeypatch.setenv("L2INTERP_QUOTED", '"3"')
        clean_env_vars()
        assert os.environ["L2INTERP_QUOTED"] == "3"

    def test_format_float(self):
        assert format_float(0.1) == "1.0000000000000001e-01"
        assert float(format_float(1 / 3)) == 1 / 3

    def test_render_csv(self):
        text = render_csv(("name", "L", "value"), [("linear", 1, 0.5)])
        assert text == "name,L,value\nlinear,1,5.0000000000000000e-01\n"

    def test_write_atomic_leaves_no_temporaries(self, tmp_path):
        target = tmp_path / "out.txt"
        write_atomic(target, "first")
        write_atomic(target, b"second")
        assert target.read_bytes() == b"second"
        assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


class TestSpinner:

    def test_progress_counts_without_animation(self):
        with Spinner(message="Round trip", total=3) as spinner:
            assert spinner.is_ci
            spinner.advance("linear")
            spinner.advance("keys")
            assert spinner.done == 2
            assert spinner.status == "Round trip (2/3)"

    def test_status_without_total(self):
        assert Spinner(message="Tabulating").status == "Tabulating"
