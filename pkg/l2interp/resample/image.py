from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from l2interp.errors import UsageError


class BoundaryPolicy(str, Enum):
    """How samples outside the grid are resolved."""
    ZERO = "zero"
    CLAMP = "clamp"
    MIRROR = "mirror"


DEFAULT_BOUNDARY = BoundaryPolicy.MIRROR


def _check_bits(samples: np.ndarray, declared_bits: Optional[int]):
    if declared_bits is None:
        return
    if declared_bits < 1:
        raise UsageError(f"declared_bits must be >= 1, got {declared_bits}")
    top = 2 ** declared_bits - 1
    if samples.size and (
        not np.all(samples == np.rint(samples)) or samples.min() < 0 or samples.max() > top
    ):
        raise UsageError(f"samples are not {declared_bits}-bit integers in [0, {top}]")


@dataclass(frozen=True)
class Signal1D:
    samples: np.ndarray
    declared_bits: Optional[int] = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise UsageError("Signal1D needs a non-empty one-dimensional sample array")
        _check_bits(samples, self.declared_bits)
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.shape[0]


@dataclass(frozen=True)
class Image2D:
    """Grayscale image; ``samples[y, x]`` holds row y, column x.

    ``maxval`` is the stored white level of a PGM source, at most 2^bits - 1.
    """
    samples: np.ndarray
    declared_bits: Optional[int] = None
    maxval: Optional[int] = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2 or samples.size == 0:
            raise UsageError("Image2D needs a non-empty two-dimensional sample array")
        _check_bits(samples, self.declared_bits)
        if self.maxval is not None:
            if self.declared_bits is None or not 1 <= self.maxval <= 2 ** self.declared_bits - 1:
                raise UsageError(f"maxval {self.maxval} does not fit the declared bit depth {self.declared_bits}")
            if samples.max() > self.maxval:
                raise UsageError(f"samples exceed maxval {self.maxval}")
        object.__setattr__(self, "samples", samples)

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.samples.shape

    @property
    def value_ceiling(self) -> Optional[int]:
        """Largest storable sample: maxval when known, else 2^bits - 1, else None."""
        if self.maxval is not None:
            return self.maxval
        if self.declared_bits is not None:
            return 2 ** self.declared_bits - 1
        return None

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> 'Image2D':
        return cls(np.full((height, width), float(value)))


def resolve_indices(index: np.ndarray, length: int, boundary: BoundaryPolicy) -> Tuple[np.ndarray, np.ndarray]:
    """
    Maps integer sample positions onto [0, length).
    Returns the resolved indices and a mask of positions that carry data
    (False only for out-of-range positions under the zero policy).
    """
    index = np.asarray(index, dtype=np.int64)
    if boundary == BoundaryPolicy.ZERO:
        valid = (index >= 0) & (index < length)
        return np.clip(index, 0, length - 1), valid
    if boundary == BoundaryPolicy.CLAMP:
        return np.clip(index, 0, length - 1), np.ones(index.shape, dtype=bool)
    if length == 1:
        return np.zeros_like(index), np.ones(index.shape, dtype=bool)
    # whole-sample reflection: ... 2 1 | 0 1 2 ... n-1 | n-2 n-3 ...
    period = 2 * (length - 1)
    folded = np.mod(index, period)
    return np.where(folded >= length, period - folded, folded), np.ones(index.shape, dtype=bool)
