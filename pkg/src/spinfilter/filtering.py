"""Gaussian-weighted Fourier quadrature of a recorded kernel.

Turns K(t), L(t) into the filtered squared norm N_tau(E) and filtered
energy H_tau(E) by a trapezoidal rule over [-t_max, t_max], folded onto
t >= 0 via K(-t) = K(t)*.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .evolve import KernelTrace

TRUNCATION_BOUND = 1e-10
_UNDERFLOW = 1e-300


@dataclass(frozen=True)
class FilterParams:
    energy: float       # target energy E
    tau: float          # filtering time, > 0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")

    @property
    def delta_e(self) -> float:
        """Energy-window width sqrt(pi)/tau."""
        return np.sqrt(np.pi) / self.tau


@dataclass(frozen=True)
class FilteredPair:
    norm: float            # N_tau(E), the filtered squared norm
    energy: float          # H_tau(E), the filtered energy matrix element
    norm_imag: float = 0.0     # unfolded imaginary residuals (diagnostics)
    energy_imag: float = 0.0


def _gauss_weights(times: np.ndarray, tau: float) -> np.ndarray:
    g = np.exp(-(times * times) / (4.0 * tau * tau))
    g[g < _UNDERFLOW] = 0.0
    return g


def quadrature_filtered_pair(kernel: KernelTrace, params: FilterParams,
                             diagnostics: bool = False) -> FilteredPair:
    """Folded trapezoid of exp(-t^2/4 tau^2) exp(iEt) K(t) (and L)."""
    if len(kernel.K) < 2:
        raise ValueError("kernel trace is empty or has a single point")
    tau = params.tau
    t = kernel.times
    tail = np.exp(-kernel.t_max ** 2 / (4.0 * tau * tau))
    if tail > TRUNCATION_BOUND:
        warnings.warn(
            f"Gaussian tail {tail:.2e} at t_max={kernel.t_max:g} exceeds "
            f"{TRUNCATION_BOUND:g}; quadrature may be truncated",
            stacklevel=2,
        )
    g = _gauss_weights(t, tau)
    phase = np.exp(1j * params.energy * t)
    pref = kernel.dt / (2.0 * np.sqrt(np.pi) * tau)

    def folded(values: np.ndarray) -> float:
        f = (g * phase * values).real
        return pref * (f[0] + 2.0 * f[1:-1].sum() + f[-1])

    norm = folded(kernel.K)
    energy = folded(kernel.L)
    if not diagnostics:
        return FilteredPair(norm, energy)

    def residual(values: np.ndarray) -> float:
        # two-sided sum: f(-t) = conj(f(t)) cancels every imaginary part
        # except Im f(0), which is nonzero only through rounding in K(0)
        f = g * phase * values
        full = f[0] + (f[1:-1] + np.conj(f[1:-1])).sum() + f[-1].real
        return float(pref * full.imag)

    return FilteredPair(norm, energy,
                        norm_imag=residual(kernel.K),
                        energy_imag=residual(kernel.L))
