from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from l2interp.errors import UsageError
from l2interp.utils.config import format_validation_error

KernelKind = Literal["linear", "keys", "cubic3", "optimal", "truncsinc"]

FIXED_SUPPORT = {"linear": 1, "keys": 2, "cubic3": 3}
ORDERED_KINDS = ("optimal", "truncsinc")
KEYS_DEFAULT_A = -0.5
MAX_SUPPORT = 64


class KernelSpec(BaseModel):
    """Identifies an interpolation kernel and its half-width ``support``."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    kind: KernelKind
    order: Optional[int] = Field(None, ge=1, le=MAX_SUPPORT, description="L for optimal/truncsinc kernels")
    keys_a: float = Field(KEYS_DEFAULT_A, description="Keys free parameter a")

    @model_validator(mode='after')
    def check_order_matches_kind(self) -> 'KernelSpec':
        if self.kind in ORDERED_KINDS:
            if self.order is None:
                raise ValueError(f"{self.kind} kernel requires a support size L")
        elif self.order is not None and self.order != FIXED_SUPPORT[self.kind]:
            raise ValueError(f"{self.kind} kernel has fixed support {FIXED_SUPPORT[self.kind]}, got L={self.order}")
        if self.kind != "keys" and self.keys_a != KEYS_DEFAULT_A:
            raise ValueError("parameter a only applies to the keys kernel")
        return self

    @property
    def support(self) -> int:
        if self.kind in ORDERED_KINDS:
            return self.order
        return FIXED_SUPPORT[self.kind]

    @property
    def name(self) -> str:
        if self.kind in ORDERED_KINDS:
            return f"{self.kind}:{self.order}"
        if self.kind == "keys" and self.keys_a != KEYS_DEFAULT_A:
            return f"keys:{self.keys_a:g}"
        return self.kind

    def __str__(self):
        return self.name

    @classmethod
    def linear(cls) -> 'KernelSpec':
        return cls(kind="linear")

    @classmethod
    def keys(cls, a: float = KEYS_DEFAULT_A) -> 'KernelSpec':
        return cls(kind="keys", keys_a=a)

    @classmethod
    def cubic3(cls) -> 'KernelSpec':
        return cls(kind="cubic3")

    @classmethod
    def optimal(cls, support: int) -> 'KernelSpec':
        return cls(kind="optimal", order=support)

    @classmethod
    def truncated_sinc(cls, support: int) -> 'KernelSpec':
        return cls(kind="truncsinc", order=support)


def reference_kernels() -> List[KernelSpec]:
    """The three classic kernels followed by H_1, H_2, H_3."""
    return [
        KernelSpec.linear(),
        KernelSpec.keys(),
        KernelSpec.cubic3(),
        KernelSpec.optimal(1),
        KernelSpec.optimal(2),
        KernelSpec.optimal(3),
    ]


def parse_kernel_name(text: str, support: Optional[int] = None) -> KernelSpec:
    """
    Parses ``linear``, ``keys[:a]``, ``cubic3``, ``optimal:L`` and ``truncsinc:L``.
    ``support`` supplies L when the name carries none (``--kernel optimal --L 2``).
    """
    name, _, arg = text.strip().lower().partition(":")
    try:
        if name == "keys":
            return KernelSpec.keys(float(arg)) if arg else KernelSpec.keys()
        if name in ORDERED_KINDS:
            if arg:
                order = int(arg)
                if support is not None and support != order:
                    raise UsageError(f"Conflicting support sizes in '{text}' and L={support}")
            elif support is not None:
                order = support
            else:
                raise UsageError(f"Kernel '{name}' needs a support size, e.g. '{name}:2'")
            return KernelSpec(kind=name, order=order)
        if name in FIXED_SUPPORT:
            if arg:
                raise UsageError(f"Kernel '{name}' takes no parameter")
            return KernelSpec(kind=name, order=support)
    except ValidationError as e:
        raise UsageError(f"Invalid kernel '{text}': {format_validation_error(e)}")
    except ValueError as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"Invalid kernel parameter in '{text}': {e}")

    raise UsageError(
        f"Unknown kernel name: '{text}'. Allowed: linear, keys[:a], cubic3, optimal:L, truncsinc:L"
    )


def parse_kernel_list(text: str) -> List[KernelSpec]:
    """Comma-separated kernel names, or ``all`` for the six reference kernels."""
    if text.strip().lower() == "all":
        return reference_kernels()
    specs = [parse_kernel_name(part) for part in text.split(",") if part.strip()]
    if not specs:
        raise UsageError("Kernel list is empty")
    return specs
