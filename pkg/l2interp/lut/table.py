import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from l2interp.errors import MalformedImageError, ResourceLimitError, UsageError
from l2interp.kernels import eval_kernel
from l2interp.kernels.spec import KernelSpec
from l2interp.utils.common import render_csv, write_atomic
from l2interp.utils.config import DEFAULT_LUT_MEMORY_CAP
from l2interp.utils.logger import Logger

TABLE_MAGIC = b"L2KT"
TABLE_VERSION = 1
# magic, version u16, L u16, K u32, reserved u32
TABLE_HEADER = struct.Struct("<4sHHII")


@dataclass(frozen=True)
class KernelTable:
    """
    Precision-K lookup table of h(i/K), i = 0 .. L*K (the kernel on [0, L]).
    ``source`` is None for tables loaded from disk without a kernel name.
    """
    source: Optional[KernelSpec]
    precision_k: int
    entries: np.ndarray
    support: int

    def __post_init__(self):
        if self.precision_k < 1:
            raise UsageError(f"precision K must be >= 1, got {self.precision_k}")
        if self.entries.shape != (self.support * self.precision_k + 1,):
            raise ValueError(
                f"table for L={self.support}, K={self.precision_k} needs "
                f"{self.support * self.precision_k + 1} entries, got {self.entries.shape}"
            )
        self.entries.setflags(write=False)

    @property
    def nbytes(self) -> int:
        return int(self.entries.nbytes)

    @property
    def name(self) -> str:
        base = self.source.name if self.source is not None else f"table:{self.support}"
        return f"{base}@K={self.precision_k}"


def tabulate(spec: KernelSpec, precision_k: int, memory_cap: int = DEFAULT_LUT_MEMORY_CAP) -> KernelTable:
    if precision_k < 1:
        raise UsageError(f"precision K must be >= 1, got {precision_k}")
    count = spec.support * precision_k + 1
    if count > memory_cap:
        raise ResourceLimitError(
            f"table for {spec.name} at K={precision_k} needs {count} entries, cap is {memory_cap}"
        )
    grid = np.arange(count, dtype=float) / precision_k
    entries = np.array(eval_kernel(spec, grid), dtype=float)
    table = KernelTable(source=spec, precision_k=precision_k, entries=entries, support=spec.support)
    Logger.get_logger().debug(f"Tabulated {table.name}: {count} entries, {table.nbytes} bytes")
    return table


def lut_eval(table: KernelTable, x):
    """g_K(x) = h(round(|x| K) / K), rounding half away from zero; 0 past the table."""
    arr = np.asarray(x, dtype=float)
    scaled = np.abs(arr) * table.precision_k
    last = table.entries.shape[0] - 1
    inside = scaled + 0.5 < last + 1
    index = np.floor(np.where(inside, scaled, 0.0) + 0.5).astype(np.int64)
    out = np.where(inside, table.entries[index], 0.0)
    if arr.ndim == 0:
        return float(out)
    return out


def write_table(path: Union[str, Path], table: KernelTable):
    header = TABLE_HEADER.pack(TABLE_MAGIC, TABLE_VERSION, table.support, table.precision_k, 0)
    write_atomic(path, header + table.entries.astype("<f8").tobytes())


def read_table(path: Union[str, Path], source: Optional[KernelSpec] = None) -> KernelTable:
    data = Path(path).read_bytes()
    if len(data) < TABLE_HEADER.size:
        raise MalformedImageError(f"{path}: too short for a table header")
    magic, version, support, precision_k, _ = TABLE_HEADER.unpack_from(data)
    if magic != TABLE_MAGIC:
        raise MalformedImageError(f"{path}: bad magic {magic!r}")
    if version != TABLE_VERSION:
        raise MalformedImageError(f"{path}: unsupported table version {version}")
    if support < 1 or precision_k < 1:
        raise MalformedImageError(f"{path}: invalid L={support} or K={precision_k}")
    count = support * precision_k + 1
    payload = data[TABLE_HEADER.size:]
    if len(payload) != 8 * count:
        raise MalformedImageError(f"{path}: expected {count} entries, found {len(payload) / 8:g}")
    if source is not None and source.support != support:
        raise UsageError(f"{path}: table has L={support} but kernel {source.name} has L={source.support}")
    entries = np.frombuffer(payload, dtype="<f8").astype(float)
    return KernelTable(source=source, precision_k=precision_k, entries=entries, support=support)


def write_table_csv(path: Union[str, Path], table: KernelTable):
    k = table.precision_k
    rows = ((i, i / k, v) for i, v in enumerate(table.entries.tolist()))
    write_atomic(path, render_csv(("index", "x", "value"), rows))
