import math
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.integrate import quad

from l2interp.errors import KernelDomainError
from l2interp.kernels import aliasing_term, build_kernel, optimal_kernel_value, sinc
from l2interp.kernels.spec import KernelSpec
from l2interp.utils.config import DEFAULT_QUADRATURE_TOLERANCE
from l2interp.utils.logger import Logger

TAIL_TOLERANCE = 1e-12
QUAD_LIMIT = 200
MAX_OPTIMAL_SUPPORT = 15
FIT_SCALE = 0.33
FIT_EXPONENT = -0.5258


class FaeReport(BaseModel):
    """
    Frequency approximation error E(h) and its spatial-domain parts:
    E(h)^2 = 2 * (E1 + E2), E1 = int_0^L (h - Sinc)^2, E2 = int_L^inf Sinc^2.
    """
    model_config = ConfigDict(frozen=True)

    e_total: float = Field(..., ge=0)
    e1_component: float = Field(..., ge=0)
    e2_component: float = Field(..., ge=0)
    quadrature_error_estimate: float = Field(0.0, ge=0)

    @model_validator(mode='after')
    def check_total(self) -> 'FaeReport':
        expected = math.sqrt(2.0 * (self.e1_component + self.e2_component))
        if abs(expected - self.e_total) > 1e-12:
            raise ValueError(f"e_total {self.e_total} does not match components ({expected})")
        return self

    @classmethod
    def from_components(cls, e1: float, e2: float, quadrature_error: float = 0.0) -> 'FaeReport':
        e1 = max(e1, 0.0)
        e2 = max(e2, 0.0)
        return cls(
            e_total=math.sqrt(2.0 * (e1 + e2)),
            e1_component=e1,
            e2_component=e2,
            quadrature_error_estimate=quadrature_error,
        )


def zero_kernel(x):
    """h = 0, the no-interpolation calibration point with E = 1."""
    return 0.0 * np.asarray(x, dtype=float)


def _pieces(support: int, breakpoints: Optional[Iterable[float]]) -> List[Tuple[float, float]]:
    edges = set(float(n) for n in range(support + 1))
    if breakpoints is not None:
        edges.update(float(b) for b in breakpoints if 0.0 < b < support)
    edges = sorted(edges)
    return list(zip(edges[:-1], edges[1:]))


def sinc_tail(support: int, tolerance: float = TAIL_TOLERANCE) -> float:
    """int_L^inf Sinc^2 dx, as 1/2 - int_0^L Sinc^2 dx."""
    if support < 0:
        raise KernelDomainError(f"support must be >= 0, got {support}")
    if support == 0:
        return 0.5
    head = 0.0
    for n in range(support):
        value, _ = quad(lambda x: sinc(x) ** 2, n, n + 1, epsabs=tolerance / support, epsrel=0.0, limit=QUAD_LIMIT)
        head += value
    return 0.5 - head


def fae_of_function(h: Callable, support: int, breakpoints: Optional[Sequence[float]] = None,
                    tolerance: float = DEFAULT_QUADRATURE_TOLERANCE) -> FaeReport:
    """FAE of any even callable kernel supported on [-L, L]."""
    pieces = _pieces(support, breakpoints)
    epsabs = tolerance / len(pieces)

    def integrand(x):
        return (float(h(x)) - sinc(x)) ** 2

    e1 = 0.0
    error = 0.0
    for a, b in pieces:
        value, abserr = quad(integrand, a, b, epsabs=epsabs, epsrel=0.0, limit=QUAD_LIMIT)
        e1 += value
        error += abserr
    return FaeReport.from_components(e1, sinc_tail(support), error)


def fae(spec: KernelSpec, tolerance: float = DEFAULT_QUADRATURE_TOLERANCE) -> FaeReport:
    report = fae_of_function(build_kernel(spec).evaluate, spec.support, tolerance=tolerance)
    Logger.get_logger().debug(f"FAE of {spec.name}: {report}")
    return report


def fae_table(specs: Iterable[KernelSpec], tolerance: float = DEFAULT_QUADRATURE_TOLERANCE) -> List[Tuple[KernelSpec, FaeReport]]:
    return [(spec, fae(spec, tolerance)) for spec in specs]


def optimal_fae(support: int, tolerance: float = DEFAULT_QUADRATURE_TOLERANCE) -> float:
    """
    Minimal FAE on support L:
    E_L = sqrt(2 * sum_n int_n^{n+1} T_n^2 dx + 2 * int_L^inf Sinc^2 dx).
    """
    if not 1 <= support <= MAX_OPTIMAL_SUPPORT:
        raise KernelDomainError(f"support must be in [1, {MAX_OPTIMAL_SUPPORT}], got {support}")
    aliasing = 0.0
    for n in range(support):
        value, _ = quad(lambda x: aliasing_term(support, x) ** 2, n, n + 1,
                        epsabs=tolerance / support, epsrel=0.0, limit=QUAD_LIMIT)
        aliasing += value
    return math.sqrt(2.0 * aliasing + 2.0 * sinc_tail(support))


def fae_approx(support: int) -> float:
    """Empirical power-law fit of E_L: 0.33 * L^-0.5258."""
    if support < 1:
        raise KernelDomainError(f"support must be >= 1, got {support}")
    return FIT_SCALE * support ** FIT_EXPONENT


def optimal_fae_table(max_support: int, tolerance: float = DEFAULT_QUADRATURE_TOLERANCE) -> List[Tuple[int, float, float, float]]:
    """Rows (L, E_L, fitted E_L, relative deviation of the fit)."""
    rows = []
    for support in range(1, max_support + 1):
        exact = optimal_fae(support, tolerance)
        fitted = fae_approx(support)
        rows.append((support, exact, fitted, abs(fitted - exact) / exact))
    return rows


def perturb_optimal_kernel(support: int, add_segment: int, subtract_segment: int,
                           bump: Callable[[float], float]) -> Callable[[float], float]:
    """
    H_L plus an admissible perturbation built on the half-unit segments.

    Segment k covers [k/2, (k+1)/2] and is folded onto u in [0, 1/2]. The bump
    b(u) must vanish at u = 0 and u = 1/2; adding it on one segment and
    subtracting it on another keeps h(n) = delta_n, continuity and the unity
    sum over shifts.
    """
    segments = 2 * support
    if not (0 <= add_segment < segments and 0 <= subtract_segment < segments):
        raise KernelDomainError(f"segments must lie in [0, {segments - 1}]")
    if add_segment == subtract_segment:
        raise KernelDomainError("add and subtract segments must differ")

    def perturbed(x):
        ax = abs(float(x))
        if ax >= support:
            return 0.0
        base = optimal_kernel_value(support, ax)
        m = int(math.floor(2.0 * ax))
        u = ax - (m + 1) // 2 if m % 2 == 0 else (m + 1) // 2 - ax
        if m == add_segment:
            return base + bump(u)
        if m == subtract_segment:
            return base - bump(u)
        return base

    return perturbed


def half_segment_breakpoints(support: int) -> List[float]:
    return [k / 2.0 for k in range(1, 2 * support)]
