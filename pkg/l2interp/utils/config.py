import os
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from l2interp.errors import UsageError
from l2interp.utils.logger import Logger

# Return code constants
PASS_RETURN_CODE = 0
USAGE_ERROR_RETURN_CODE = 1
RUNTIME_ERROR_RETURN_CODE = 2

DEFAULT_QUADRATURE_TOLERANCE = 1e-10
DEFAULT_LUT_MEMORY_CAP = 10 ** 8


def format_validation_error(e: ValidationError) -> str:
    """Return a concise error summary (no verbose Pydantic metadata)."""
    errors = []
    for err in e.errors():
        loc = " → ".join(str(x) for x in err.get("loc", []))
        msg = err.get("msg", "")
        errors.append(f"{loc}: {msg}" if loc else msg)
    return "; ".join(errors)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"Environment variable {name} must be an integer, got {raw!r}")


class CliConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    output_dir: Path = Field(Path("."), description="Directory receiving multi-file outputs")
    quadrature_tolerance: float = Field(DEFAULT_QUADRATURE_TOLERANCE, gt=0, description="Absolute quadrature tolerance")
    threads: int = Field(0, ge=0, description="Worker threads, 0 = hardware parallelism")
    lut_memory_cap: int = Field(DEFAULT_LUT_MEMORY_CAP, ge=1, description="Maximum number of LUT entries")

    @field_validator("output_dir")
    @classmethod
    def validate_output_dir(cls, v: Path):
        if v.exists() and not v.is_dir():
            raise ValueError(f"{v} exists and is not a directory")
        return v

    @property
    def worker_count(self) -> int:
        return self.threads or (os.cpu_count() or 1)


class ConfigValidator:
    def __init__(self, threads: Optional[int] = None, quadrature_tolerance: Optional[float] = None,
                 output_dir: Optional[str] = None, lut_memory_cap: Optional[int] = None):
        settings = {
            "threads": threads if threads is not None else _env_int("L2INTERP_THREADS", 0),
            "lut_memory_cap": lut_memory_cap if lut_memory_cap is not None else _env_int("L2INTERP_LUT_CAP", DEFAULT_LUT_MEMORY_CAP),
        }
        if quadrature_tolerance is not None:
            settings["quadrature_tolerance"] = quadrature_tolerance
        if output_dir is not None:
            settings["output_dir"] = Path(output_dir)

        try:
            self.config = CliConfig(**settings)
        except ValidationError as e:
            concise_msg = format_validation_error(e)
            Logger.get_logger().debug(f"CLI configuration error: {concise_msg}")
            raise UsageError(concise_msg)

        Logger.get_logger().debug(f"Initialized ConfigValidator: {self.config}")

    # --- Command-specific validations ---
    # Each one builds a small pydantic model so the error text stays uniform.

    def validate_output_path(self, path: str) -> Path:
        class OutputPath(BaseModel):
            path: Path

            @field_validator("path")
            @classmethod
            def check_path(cls, v: Path):
                if v.is_dir():
                    raise ValueError(f"{v} is a directory")
                if not v.parent.exists():
                    raise ValueError(f"directory {v.parent} does not exist")
                return v

        return self._run(OutputPath, path=path).path

    def validate_input_path(self, path: str) -> Path:
        class InputPath(BaseModel):
            path: Path

            @field_validator("path")
            @classmethod
            def check_path(cls, v: Path):
                if not v.is_file():
                    raise ValueError(f"{v} is not a readable file")
                return v

        return self._run(InputPath, path=path).path

    def validate_sweep(self, t_min: float, t_max: float, points: int):
        class SweepConfig(BaseModel):
            t_min: float = Field(..., ge=0)
            t_max: float
            points: int = Field(..., ge=2)

            @model_validator(mode="after")
            def check_range(self):
                if not self.t_max > self.t_min:
                    raise ValueError("t_max must be greater than t_min")
                return self

        self._run(SweepConfig, t_min=t_min, t_max=t_max, points=points)

    def validate_precision(self, precision_k: int):
        class TableConfig(BaseModel):
            precision_k: int = Field(..., ge=1, description="LUT entries per unit interval")

        self._run(TableConfig, precision_k=precision_k)

    def validate_phantom_run(self, size: int, cycles: int):
        class PhantomRunConfig(BaseModel):
            size: int = Field(..., ge=3)
            cycles: int = Field(..., ge=1)

            @field_validator("size")
            @classmethod
            def check_odd(cls, v: int):
                if v % 2 == 0:
                    raise ValueError("phantom size must be odd so that a center pixel exists")
                return v

        self._run(PhantomRunConfig, size=size, cycles=cycles)

    def _run(self, model, **kwargs):
        try:
            return model(**kwargs)
        except ValidationError as e:
            concise_msg = format_validation_error(e)
            Logger.get_logger().debug(f"{model.__name__} error: {concise_msg}")
            raise UsageError(concise_msg)
