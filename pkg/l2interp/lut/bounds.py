import math
from typing import Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from l2interp.kernels.conditions import kernel_bounds
from l2interp.kernels.spec import KernelSpec
from l2interp.utils.logger import Logger

# Returned by permissible_resolution when gamma = 0: the table introduces no distortion.
UNBOUNDED = math.inf
BOUNDS_SAMPLES_PER_UNIT = 10000


class ResolutionParams(BaseModel):
    """Symbols L, D, h, gamma and K of the permissible-resolution estimate."""
    model_config = ConfigDict(frozen=True)

    support_l: int = Field(..., ge=1)
    dimension_d: int = Field(..., ge=1)
    h_bound: float = Field(..., gt=0)
    gamma_bound: float = Field(..., ge=0)
    precision_k: int = Field(..., ge=1)


def _distortion(params: ResolutionParams) -> float:
    """2 (L+1)^D h^D ((1 + gamma/(hK))^D - 1)."""
    ratio = params.gamma_bound / (params.h_bound * params.precision_k)
    growth = math.expm1(params.dimension_d * math.log1p(ratio))
    return 2.0 * (params.support_l + 1) ** params.dimension_d * params.h_bound ** params.dimension_d * growth


def permissible_resolution(params: ResolutionParams) -> float:
    """
    B_0 = -log2(2 (L+1)^D h^D ((1 + gamma/(hK))^D - 1)).
    Signals with B <= B_0 bits interpolate identically through the K-table after
    rounding. Negative values mean no bit depth is guaranteed.
    """
    if params.gamma_bound == 0:
        return UNBOUNDED
    return -math.log2(_distortion(params))


def asymptotic_resolution(params: ResolutionParams) -> float:
    """Large-K form: log2 K - log2(2 (L+1)^D h^(D-1) D gamma)."""
    if params.gamma_bound == 0:
        return UNBOUNDED
    d = params.dimension_d
    scale = 2.0 * (params.support_l + 1) ** d * params.h_bound ** (d - 1) * d * params.gamma_bound
    return math.log2(params.precision_k) - math.log2(scale)


def min_table_precision(support_l: int, dimension_d: int, h_bound: float, gamma_bound: float, target_bits: int) -> int:
    """Smallest K whose permissible resolution reaches ``target_bits``."""
    if target_bits < 1:
        raise ValueError(f"target_bits must be >= 1, got {target_bits}")

    def resolution(k: int) -> float:
        return permissible_resolution(ResolutionParams(
            support_l=support_l, dimension_d=dimension_d, h_bound=h_bound,
            gamma_bound=gamma_bound, precision_k=k,
        ))

    if gamma_bound == 0:
        return 1

    budget = 2.0 ** -target_bits / (2.0 * (support_l + 1) ** dimension_d * h_bound ** dimension_d)
    ratio = math.expm1(math.log1p(budget) / dimension_d)
    k = max(1, math.ceil(gamma_bound / (h_bound * ratio)))

    # The closed form can land one step off after floating-point rounding.
    while resolution(k) < target_bits:
        k += 1
    while k > 1 and resolution(k - 1) >= target_bits:
        k -= 1
    return k


def distorted_interpolation_bound(sample_bound_m: float, support_l: int, dimension_d: int,
                                  h_bound: float, e_bound: float) -> float:
    """M (L+1)^D ((h+e)^D - h^D): worst change of an interpolated value under kernel distortion e."""
    return sample_bound_m * (support_l + 1) ** dimension_d * product_perturbation_bound(h_bound, e_bound, dimension_d)


def product_perturbation_bound(h_bound: float, e_bound: float, dimension_d: int) -> float:
    """(h+e)^D - h^D bounds |prod(h_i + e_i) - prod(h_i)| for |h_i| <= h, |e_i| <= e."""
    return (h_bound + e_bound) ** dimension_d - h_bound ** dimension_d


def resolution_sweep(kernels: Iterable[KernelSpec], dimension_d: int, log10_k_min: float = 3.0,
                     log10_k_max: float = 7.0, points: int = 41) -> List[Tuple[str, int, float, float, float]]:
    """
    Rows (kernel, L, log10 K, B_0, asymptotic B_0) with (h, gamma) measured
    from each kernel by ``kernel_bounds``.
    """
    rows = []
    exponents = np.linspace(log10_k_min, log10_k_max, points)
    for spec in kernels:
        h_bound, gamma_bound = kernel_bounds(spec, BOUNDS_SAMPLES_PER_UNIT)
        Logger.get_logger().debug(f"{spec.name}: h={h_bound:.6g}, gamma={gamma_bound:.6g}")
        for exponent in exponents.tolist():
            params = ResolutionParams(
                support_l=spec.support, dimension_d=dimension_d, h_bound=h_bound,
                gamma_bound=gamma_bound, precision_k=int(round(10.0 ** exponent)),
            )
            rows.append((spec.name, spec.support, exponent,
                         permissible_resolution(params), asymptotic_resolution(params)))
    return rows
