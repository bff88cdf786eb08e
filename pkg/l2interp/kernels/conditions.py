from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from l2interp.kernels import build_kernel, eval_kernel
from l2interp.kernels.spec import KernelSpec
from l2interp.utils.logger import Logger

CONTINUITY_EPSILON = 1e-9
BREAKPOINT_STEP = 1e-6
BOUND_SAFETY_FACTOR = 1.01


class KernelConditionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_cardinality_violation: float = Field(..., ge=0)
    max_partition_violation: float = Field(..., ge=0)
    max_continuity_jump: float = Field(..., ge=0)
    max_raw_jump: float = Field(..., ge=0)
    symmetric: bool


def check_kernel_conditions(spec: KernelSpec, samples_per_unit: int) -> KernelConditionReport:
    """
    Measures how well a kernel meets the interpolating-kernel conditions:
    h(n) = delta_n, sum_k h(x + k) = 1 on [0, 1], continuity at interior
    integers and h(x) = h(-x).
    """
    if samples_per_unit < 2:
        raise ValueError(f"samples_per_unit must be >= 2, got {samples_per_unit}")
    support = spec.support

    integers = np.arange(-support, support + 1, dtype=float)
    delta = np.where(integers == 0.0, 1.0, 0.0)
    # evaluate() pins the integers, so measure the formula itself
    cardinality = np.max(np.abs(build_kernel(spec).closed_form(integers) - delta))

    x = np.linspace(0.0, 1.0, samples_per_unit + 1)
    shifts = np.arange(-support, support + 1, dtype=float)
    unity = np.sum(eval_kernel(spec, x[:, None] + shifts[None, :]), axis=1)
    partition = np.max(np.abs(unity - 1.0))

    interior = np.arange(1, support, dtype=float)
    if interior.size:
        # One-sided limits, each extrapolated linearly onto n so the kernel's
        # own slope over the 2*eps gap does not count as a jump.
        eps = CONTINUITY_EPSILON
        left = 2.0 * eval_kernel(spec, interior - eps) - eval_kernel(spec, interior - 2.0 * eps)
        right = 2.0 * eval_kernel(spec, interior + eps) - eval_kernel(spec, interior + 2.0 * eps)
        continuity = float(np.max(np.abs(left - right)))
        raw_jump = float(np.max(np.abs(eval_kernel(spec, interior - eps) - eval_kernel(spec, interior + eps))))
    else:
        continuity = 0.0
        raw_jump = 0.0

    grid = np.linspace(0.0, support + 0.5, (support + 1) * samples_per_unit + 1)
    symmetric = bool(np.array_equal(eval_kernel(spec, grid), eval_kernel(spec, -grid)))

    report = KernelConditionReport(
        max_cardinality_violation=float(cardinality),
        max_partition_violation=float(partition),
        max_continuity_jump=continuity,
        max_raw_jump=raw_jump,
        symmetric=symmetric,
    )
    Logger.get_logger().debug(f"Kernel conditions for {spec.name}: {report}")
    return report


def kernel_bounds(spec: KernelSpec, samples_per_unit: int) -> Tuple[float, float]:
    """
    Upper bounds (h, gamma) for |h(x)| and |h'(x)| on [0, L].

    The derivative is estimated by differences between neighbouring grid
    points inside each unit interval, plus one-sided differences at the
    integer breakpoints, where the optimal kernels have only left and right
    derivatives. Both estimates are inflated by 1% since sampled suprema
    understate the true ones.
    """
    if samples_per_unit < 1000:
        raise ValueError(f"samples_per_unit must be >= 1000, got {samples_per_unit}")
    support = spec.support

    h_max = 0.0
    gamma_max = 0.0
    for n in range(support):
        x = np.linspace(n, n + 1, samples_per_unit + 1)
        values = eval_kernel(spec, x)
        h_max = max(h_max, float(np.max(np.abs(values))))
        slopes = np.diff(values) * samples_per_unit
        gamma_max = max(gamma_max, float(np.max(np.abs(slopes))))

    breakpoints = np.arange(0, support + 1, dtype=float)
    at = eval_kernel(spec, breakpoints)
    right = (eval_kernel(spec, breakpoints + BREAKPOINT_STEP) - at) / BREAKPOINT_STEP
    left = (at - eval_kernel(spec, breakpoints - BREAKPOINT_STEP)) / BREAKPOINT_STEP
    # h'(0) from the left is the mirrored slope, h'(L) from the right is 0
    gamma_max = max(gamma_max, float(np.max(np.abs(right[:-1]))), float(np.max(np.abs(left[1:]))))

    Logger.get_logger().debug(f"Kernel bounds for {spec.name}: h={h_max:.6g}, gamma={gamma_max:.6g}")
    return BOUND_SAFETY_FACTOR * h_max, BOUND_SAFETY_FACTOR * gamma_max
