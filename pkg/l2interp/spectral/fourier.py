from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from l2interp.errors import UsageError
from l2interp.kernels import build_kernel
from l2interp.kernels.spec import KernelSpec
from l2interp.utils.config import DEFAULT_QUADRATURE_TOLERANCE
from l2interp.utils.logger import Logger

QUAD_LIMIT = 200


@dataclass(frozen=True)
class SpectrumTable:
    frequencies: np.ndarray
    values: np.ndarray
    kernel: KernelSpec

    def __post_init__(self):
        if len(self.frequencies) != len(self.values):
            raise ValueError("frequencies and values must have equal lengths")
        if np.any(np.diff(self.frequencies) <= 0):
            raise ValueError("frequencies must be strictly increasing")

    def rows(self):
        return zip(self.frequencies.tolist(), self.values.tolist())


def fourier_transform(spec: KernelSpec, t: float, tolerance: float = DEFAULT_QUADRATURE_TOLERANCE) -> float:
    """
    F_h(t) = 2 * int_0^L h(x) cos(2 pi x t) dx, real because h is even.
    Integrated one unit interval at a time; the kernel has breakpoints at the integers.
    """
    kernel = build_kernel(spec)
    support = spec.support
    omega = 2.0 * np.pi * float(t)
    epsabs = tolerance / (2.0 * support)

    total = 0.0
    for n in range(support):
        if omega == 0.0:
            value, _ = quad(kernel.evaluate, n, n + 1, epsabs=epsabs, epsrel=0.0, limit=QUAD_LIMIT)
        else:
            value, _ = quad(kernel.evaluate, n, n + 1, weight="cos", wvar=omega,
                            epsabs=epsabs, epsrel=0.0, limit=QUAD_LIMIT)
        total += value
    return 2.0 * total


def spectrum_sweep(spec: KernelSpec, t_min: float, t_max: float, points: int,
                   tolerance: float = DEFAULT_QUADRATURE_TOLERANCE, workers: int = 1) -> SpectrumTable:
    """Evaluates F_h on a uniform frequency grid."""
    if not t_min < t_max:
        raise UsageError(f"t_min must be below t_max, got [{t_min}, {t_max}]")
    if points < 2:
        raise UsageError(f"points must be >= 2, got {points}")

    frequencies = np.linspace(t_min, t_max, points)
    Logger.get_logger().debug(f"Spectrum sweep for {spec.name}: {points} points on [{t_min}, {t_max}], workers={workers}")

    def transform(t):
        return fourier_transform(spec, t, tolerance)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(transform, frequencies))
    else:
        values = [transform(t) for t in frequencies]
    return SpectrumTable(frequencies=frequencies, values=np.asarray(values), kernel=spec)


@dataclass(frozen=True)
class PassGain:
    """Largest |response| of one interpolation pass and where it occurs."""
    gain: float
    shift: float
    omega: float
    kernel: KernelSpec


def shift_response(spec: KernelSpec, shift: float, omegas) -> np.ndarray:
    """
    |sum_k h(shift - k) e^{i omega k}|: the factor by which interpolating at
    fractional offset ``shift`` scales the sampled sinusoid e^{i omega k}.
    Exactly 1 at every shift means the pass never amplifies that frequency.
    """
    kernel = build_kernel(spec)
    taps = np.arange(-spec.support + 1, spec.support + 1, dtype=float)
    weights = kernel.evaluate(shift - taps)
    phases = np.exp(1j * np.outer(np.asarray(omegas, dtype=float), taps))
    return np.abs(phases @ weights)


def peak_pass_gain(spec: KernelSpec, shift_points: int = 65, omega_points: int = 1025) -> PassGain:
    """Scans shifts in [0, 1] and frequencies in [0, pi] for the largest single-pass gain."""
    if shift_points < 2 or omega_points < 2:
        raise UsageError("peak_pass_gain needs at least two shifts and two frequencies")
    omegas = np.linspace(0.0, np.pi, omega_points)
    best = PassGain(gain=0.0, shift=0.0, omega=0.0, kernel=spec)
    for shift in np.linspace(0.0, 1.0, shift_points):
        response = shift_response(spec, float(shift), omegas)
        i = int(np.argmax(response))
        if response[i] > best.gain:
            best = PassGain(gain=float(response[i]), shift=float(shift), omega=float(omegas[i]), kernel=spec)
    Logger.get_logger().debug(
        f"Peak pass gain for {spec.name}: {best.gain:.6g} at shift {best.shift:.4g}, omega {best.omega:.4g}"
    )
    return best
