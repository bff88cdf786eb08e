from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from l2interp.errors import UsageError
from l2interp.resample.backend import KernelBackend
from l2interp.resample.image import DEFAULT_BOUNDARY, BoundaryPolicy, Image2D, Signal1D, resolve_indices
from l2interp.resample.transform import AffineTransform2D
from l2interp.utils.logger import Logger

# Rows per work item when resampling on several threads.
ROW_CHUNK = 16


def _taps(position: np.ndarray, backend: KernelBackend):
    """
    The 2L sample positions k = floor(x) - L + 1 .. floor(x) + L around x and
    their weights h(x - k). The tap k = floor(x) - L has h = 0 and is skipped.
    """
    support = backend.support
    base = np.floor(position).astype(np.int64)
    steps = np.arange(-support + 1, support + 1, dtype=np.int64)
    index = base[..., None] + steps
    weights = backend.weights(position[..., None] - index)
    return index, np.asarray(weights, dtype=float)


def _gather(samples: np.ndarray, rows, cols, boundary: BoundaryPolicy):
    height, width = samples.shape
    r, r_ok = resolve_indices(rows, height, boundary)
    c, c_ok = resolve_indices(cols, width, boundary)
    values = samples[r, c]
    if boundary == BoundaryPolicy.ZERO:
        values = np.where(r_ok & c_ok, values, 0.0)
    return values


def interpolate_1d(signal: Signal1D, x, backend: KernelBackend, boundary: BoundaryPolicy = DEFAULT_BOUNDARY):
    """J(x) = sum_k I(k) h(x - k) over the 2L taps around x."""
    position = np.asarray(x, dtype=float)
    index, weights = _taps(position, backend)
    resolved, valid = resolve_indices(index, len(signal), boundary)
    values = np.where(valid, signal.samples[resolved], 0.0)

    total = np.zeros(position.shape, dtype=float)
    for j in range(index.shape[-1]):
        total = total + weights[..., j] * values[..., j]
    if position.ndim == 0:
        return float(total)
    return total


def interpolate_2d(image: Image2D, x, y, backend: KernelBackend, boundary: BoundaryPolicy = DEFAULT_BOUNDARY):
    """
    Separable form J(x, y) = sum_k h(x - k) [sum_n I(k, n) h(y - n)]:
    the inner sum runs down the column k, the outer sum across columns.
    Taps are accumulated in a fixed order, so each point's value does not
    depend on how a batch of points is split up.
    """
    px = np.asarray(x, dtype=float)
    py = np.asarray(y, dtype=float)
    px, py = np.broadcast_arrays(px, py)
    cols, wx = _taps(px, backend)
    rows, wy = _taps(py, backend)
    taps = cols.shape[-1]

    total = np.zeros(px.shape, dtype=float)
    for k in range(taps):
        inner = np.zeros(px.shape, dtype=float)
        for n in range(taps):
            inner = inner + _gather(image.samples, rows[..., n], cols[..., k], boundary) * wy[..., n]
        total = total + wx[..., k] * inner
    if px.ndim == 0:
        return float(total)
    return total


def resample_affine(image: Image2D, transform: AffineTransform2D, backend: KernelBackend,
                    boundary: BoundaryPolicy = DEFAULT_BOUNDARY, workers: int = 1,
                    round_output: bool = False, clamp_range: bool = False) -> Image2D:
    """
    One resampling pass: output pixel q takes the interpolated source value at
    A^-1 (q - c) + c. The output keeps the input dimensions.

    ``round_output`` rounds to integers; ``clamp_range`` clips to [0, maxval] of
    the input (2^B - 1 without a stored maxval). Without both the output carries
    no bit depth.
    """
    if clamp_range and image.declared_bits is None:
        raise UsageError("clamp_range needs an image with a declared bit depth")
    src_x, src_y = transform.source_coordinates(image.width, image.height)

    out = np.empty(image.shape, dtype=float)
    chunks = [(start, min(start + ROW_CHUNK, image.height)) for start in range(0, image.height, ROW_CHUNK)]

    def run_chunk(bounds):
        start, stop = bounds
        out[start:stop] = interpolate_2d(image, src_x[start:stop], src_y[start:stop], backend, boundary)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run_chunk, chunks))
    else:
        for bounds in chunks:
            run_chunk(bounds)

    if round_output:
        out = np.rint(out)
    if clamp_range:
        out = np.clip(out, 0, image.value_ceiling)
    keep_range = round_output and clamp_range
    bits = image.declared_bits if keep_range else None
    maxval = image.maxval if keep_range else None
    Logger.get_logger().debug(f"Resampled {image.width}x{image.height} with {backend.name}, {len(chunks)} chunks")
    return Image2D(out, declared_bits=bits, maxval=maxval)
