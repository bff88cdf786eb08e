import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from l2interp.errors import TransformError
from l2interp.kernels.spec import KernelSpec
from l2interp.resample.backend import ExactBackend, KernelBackend
from l2interp.resample.image import DEFAULT_BOUNDARY, BoundaryPolicy, Image2D
from l2interp.resample.interpolate import resample_affine
from l2interp.resample.transform import (
    AffineTransform2D,
    compose_chain,
    image_center,
    make_rotation_pythagorean,
    make_zoom,
)
from l2interp.utils.logger import Logger

DEFAULT_CYCLES = 11
DEFAULT_ZOOM = (4, 5)
DEFAULT_ROTATION = (7, 25)


@dataclass(frozen=True)
class RoundTripResult:
    """
    Outcome of a forward/inverse transform chain. ``rms_error``/``max_error``
    cover the central disk; the ``full_*`` fields cover the whole frame.
    """
    final_image: Image2D
    error_map: Image2D
    rms_error: float
    max_error: float
    full_rms_error: float
    full_max_error: float
    kernel: str
    support: int
    cycles: int
    runtime_ms: Optional[float] = None

    def __post_init__(self):
        if not 0 <= self.rms_error <= self.max_error:
            raise ValueError(f"inconsistent error statistics: rms={self.rms_error}, max={self.max_error}")


def chain_passes(width: int, height: int, cycles: int, zoom=DEFAULT_ZOOM, rotation=DEFAULT_ROTATION,
                 interleaved: bool = False) -> List[AffineTransform2D]:
    """
    Elementary resampling passes of the round trip. One forward composite is
    Z, R, Z^-1, R; its inverse applies R^-1, Z, R^-1, Z^-1. Sequential order
    runs all forward composites, then all inverses; interleaved order
    alternates them.
    """
    if cycles < 1:
        raise ValueError(f"cycles must be >= 1, got {cycles}")
    center = image_center(width, height)
    z = make_zoom(*zoom, center=center)
    r = make_rotation_pythagorean(*rotation, center=center)
    forward = [z, r, z.inverse(), r]
    backward = [r.inverse(), z, r.inverse(), z.inverse()]
    if interleaved:
        return (forward + backward) * cycles
    return forward * cycles + backward * cycles


def check_chain_identity(passes: Sequence[AffineTransform2D]):
    """Raises unless the rational composite of ``passes`` is exactly the identity."""
    total = compose_chain(passes)
    if not total.is_identity():
        raise TransformError(f"transform chain does not compose to the identity: {total.matrix}")


def central_disk(width: int, height: int) -> np.ndarray:
    cx, cy = (width - 1) / 2, (height - 1) / 2
    radius = min(cx, cy)
    ys, xs = np.mgrid[0:height, 0:width]
    return (xs - cx) ** 2 + (ys - cy) ** 2 <= radius ** 2


def _stats(errors: np.ndarray) -> Tuple[float, float]:
    return float(math.sqrt(np.mean(errors ** 2))), float(np.max(errors))


def round_trip(image: Image2D, backend: KernelBackend, cycles: int = DEFAULT_CYCLES,
               boundary: BoundaryPolicy = DEFAULT_BOUNDARY, zoom=DEFAULT_ZOOM, rotation=DEFAULT_ROTATION,
               interleaved: bool = False, round_per_pass: bool = False, clamp_per_pass: bool = False,
               workers: int = 1) -> RoundTripResult:
    """
    Applies the forward composites and then their inverses, and measures how far
    the result drifts from ``image``. ``round_per_pass`` rounds after every pass;
    ``clamp_per_pass`` clips every pass to the input's value range, as an 8-bit
    pipeline storing each intermediate image would.
    """
    passes = chain_passes(image.width, image.height, cycles, zoom, rotation, interleaved)
    check_chain_identity(passes)

    low, high = float(image.samples.min()), float(image.samples.max())
    started = time.perf_counter()
    current = image
    for step in passes:
        current = resample_affine(current, step, backend, boundary, workers=workers, round_output=round_per_pass)
        if clamp_per_pass:
            current = Image2D(np.clip(current.samples, low, high))
    runtime_ms = (time.perf_counter() - started) * 1000.0

    errors = np.abs(current.samples - image.samples)
    disk = central_disk(image.width, image.height)
    rms, peak = _stats(errors[disk])
    full_rms, full_peak = _stats(errors)
    Logger.get_logger().debug(
        f"Round trip {backend.name}: {len(passes)} passes, rms={rms:.6g}, max={peak:.6g}, {runtime_ms:.0f} ms"
    )
    return RoundTripResult(
        final_image=current,
        error_map=Image2D(errors),
        rms_error=rms,
        max_error=peak,
        full_rms_error=full_rms,
        full_max_error=full_peak,
        kernel=backend.name,
        support=backend.support,
        cycles=cycles,
        runtime_ms=runtime_ms,
    )


def compare_kernels(image: Image2D, kernels: Sequence[KernelSpec], cycles: int = DEFAULT_CYCLES,
                    boundary: BoundaryPolicy = DEFAULT_BOUNDARY, workers: int = 1,
                    backend_factory: Callable[[KernelSpec], KernelBackend] = ExactBackend,
                    on_result: Optional[Callable[[RoundTripResult], None]] = None,
                    **options) -> List[RoundTripResult]:
    """
    Runs the same round trip for every kernel, ``workers`` kernels at a time,
    and returns the results sorted by central-disk rms (ties keep input order).
    ``on_result`` is called as each kernel finishes, possibly from a worker thread.
    """
    if not kernels:
        raise ValueError("kernel list is empty")

    def run(spec):
        result = round_trip(image, backend_factory(spec), cycles, boundary, **options)
        if on_result is not None:
            on_result(result)
        return result

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, kernels))
    else:
        results = [run(spec) for spec in kernels]
    return sorted(results, key=lambda result: result.rms_error)
