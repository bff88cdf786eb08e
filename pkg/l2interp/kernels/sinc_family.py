import numpy as np

from l2interp.errors import KernelDomainError
from l2interp.kernels.base_kernel import ArrayLike, BaseKernel

# Below this |x| the removable singularity is filled with 1; the neglected
# Taylor term (pi x)^2 / 6 is under 2e-16.
SINC_ZERO_THRESHOLD = 1e-8


def sinc(x: ArrayLike) -> ArrayLike:
    """Normalized sinc, sin(pi x) / (pi x), with sinc(0) = 1."""
    arr = np.asarray(x, dtype=float)
    small = np.abs(arr) < SINC_ZERO_THRESHOLD
    px = np.pi * np.where(small, 1.0, arr)
    out = np.where(small, 1.0, np.sin(px) / px)
    if arr.ndim == 0:
        return float(out)
    return out


def _segment_offsets(support: int):
    """floor((k+1)/2) and (-1)^k for k = 0 .. 2L-1."""
    k = np.arange(2 * support)
    return (k + 1) // 2, np.where(k % 2 == 0, 1.0, -1.0)


def _check_domain(support: int, x: ArrayLike) -> np.ndarray:
    if support < 1:
        raise KernelDomainError(f"support L must be >= 1, got {support}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= support) or np.any(np.isnan(arr)):
        raise KernelDomainError(f"x must lie in [0, {support}) for L={support}")
    return arr


def aliasing_term(support: int, x: ArrayLike) -> ArrayLike:
    """
    T_L(x) = H_L(x) - Sinc(x) on [0, L), evaluated from the per-unit-interval
    bracket: with n = floor(x),
    (1/2L) * [1 - sum_k Sinc((-1)^k x + floor((k+1)/2) - (-1)^k n)].
    """
    arr = _check_domain(support, x)
    offsets, signs = _segment_offsets(support)
    n = np.floor(arr)
    args = signs * arr[..., None] + offsets - signs * n[..., None]
    value = (1.0 - np.sum(sinc(args), axis=-1)) / (2.0 * support)
    if arr.ndim == 0:
        return float(value)
    return value


def optimal_kernel_value(support: int, x: ArrayLike) -> ArrayLike:
    """
    H_L(x) on [0, L) via the half-unit segment solution.

    Segment m = floor(2x) is folded onto u in [0, 1/2] by
    u = (-1)^m (x - floor((m+1)/2)); on it
    H_L = Sinc(x) + (1/2L) * [1 - sum_k Sinc(floor((k+1)/2) + (-1)^k u)].
    """
    arr = _check_domain(support, x)
    offsets, signs = _segment_offsets(support)
    m = np.floor(2.0 * arr)
    fold = np.where(m % 2 == 0, 1.0, -1.0)
    u = fold * (arr - np.floor((m + 1.0) / 2.0))
    args = offsets + signs * u[..., None]
    value = sinc(arr) + (1.0 - np.sum(sinc(args), axis=-1)) / (2.0 * support)
    if arr.ndim == 0:
        return float(value)
    return value


class OptimalKernel(BaseKernel):
    help_text = "L2-optimal kernel H_L (minimal frequency approximation error on support L)"

    def _evaluate_inside(self, ax):
        return optimal_kernel_value(self.support, ax)


class TruncatedSincKernel(BaseKernel):
    help_text = "Sinc truncated to |x| < L"

    def _evaluate_inside(self, ax):
        return sinc(ax)
