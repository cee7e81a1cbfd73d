"""Microcanonical quantities from trace values, plus the canonical translation.

Everything here is a pure formula layer: the traces Tr[G_tau(E)],
Tr[H G_tau(E)] (and optionally Tr[H^2 G_tau(E)]) may come from exact
diagonalization or from random sampling; the derived density of states,
entropy, inverse temperature, mean energy and energy fluctuation are the
same functions of them either way.

Uncertainties attached to sampled traces are propagated to first order
(log and ratio rules), treating the trace errors as independent. A
jackknife cross-check over raw samples lives in the sampling module.
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import erfc

SQRT_PI = float(np.sqrt(np.pi))


@dataclass(frozen=True)
class ThermoPoint:
    """One (E, tau) point: input traces and the derived quantities."""

    energy: float
    tau: float
    dim: int
    tr_g: float
    tr_hg: float
    tr_h2g: float | None = None
    sem_tr_g: float = 0.0
    sem_tr_hg: float = 0.0
    sem_tr_h2g: float = 0.0
    # derived (filled by derive_thermo)
    valid: bool = False
    dos: float | None = None            # g_tau(E)
    entropy: float | None = None        # S_tau(E)
    beta: float | None = None
    mean_energy: float | None = None    # script-E
    sigma: float | None = None          # energy fluctuation
    sem_dos: float = 0.0
    sem_entropy: float = 0.0
    sem_beta: float = 0.0
    sem_mean_energy: float = 0.0
    sem_sigma: float = 0.0

    @property
    def delta_e(self) -> float:
        return SQRT_PI / self.tau


def derive_thermo(point: ThermoPoint) -> ThermoPoint:
    """Fill the derived fields of a point that carries traces.

    g = (tau/sqrt(pi)) trG, S = ln trG, script-E = trHG/trG,
    beta = 2 tau^2 (script-E - E), sigma = sqrt(trH2G/trG - script-E^2).
    A non-positive trG (possible for sampled traces at large tau) marks
    the point invalid; the raw estimate is kept, nothing is raised.
    """
    tau = point.tau
    if point.tr_g <= 0.0:
        return replace(point, valid=False)

    g = tau / SQRT_PI * point.tr_g
    entropy = float(np.log(point.tr_g))
    mean_e = point.tr_hg / point.tr_g
    beta = 2.0 * tau * tau * (mean_e - point.energy)

    sem_g = tau / SQRT_PI * point.sem_tr_g
    sem_s = point.sem_tr_g / point.tr_g
    # factored as ratio * relative error: trG^2 can underflow to zero
    sem_mean = np.hypot(point.sem_tr_hg / point.tr_g, mean_e * sem_s)
    sem_beta = 2.0 * tau * tau * sem_mean

    sigma = None
    sem_sigma = 0.0
    if point.tr_h2g is not None:
        var = point.tr_h2g / point.tr_g - mean_e * mean_e
        if var >= 0.0:
            sigma = float(np.sqrt(var))
            if sigma > 0.0:
                sem_var = np.sqrt(
                    (point.sem_tr_h2g / point.tr_g) ** 2
                    + (point.tr_h2g / point.tr_g * sem_s) ** 2
                    + (2.0 * mean_e * sem_mean) ** 2
                )
                sem_sigma = float(sem_var / (2.0 * sigma))

    return replace(point, valid=True, dos=g, entropy=entropy, beta=beta,
                   mean_energy=mean_e, sigma=sigma,
                   sem_dos=float(sem_g), sem_entropy=float(sem_s),
                   sem_beta=float(sem_beta), sem_mean_energy=float(sem_mean),
                   sem_sigma=sem_sigma)


@dataclass(frozen=True)
class CanonicalPoint:
    beta: float
    tau: float
    z_can: float
    e_can: float
    s_can: float
    z_can_tau: float
    e_can_tau: float
    s_can_tau: float
    truncated: bool = False


def canonical_from_spectrum(eigenvalues: np.ndarray, beta: float,
                            tau: float) -> CanonicalPoint:
    """Canonical quantities and their window-broadened companions.

    Z_can,tau = exp(beta^2/4 tau^2) Z_can; E and S shift by -beta/2tau^2
    and -beta^2/4tau^2 respectively.
    """
    e = np.asarray(eigenvalues, dtype=float)
    shift = e.min() if beta >= 0 else e.max()  # keep exponentials bounded
    w = np.exp(-beta * (e - shift))
    z0 = w.sum()
    log_z = float(np.log(z0) - beta * shift)
    z_can = float(np.exp(log_z))
    e_can = float((e * w).sum() / z0)
    s_can = beta * e_can + log_z
    corr = beta * beta / (4.0 * tau * tau)
    return CanonicalPoint(
        beta=beta, tau=tau,
        z_can=z_can, e_can=e_can, s_can=s_can,
        z_can_tau=float(np.exp(log_z + corr)),
        e_can_tau=e_can - beta / (2.0 * tau * tau),
        s_can_tau=s_can - corr,
    )


def canonical_from_dos_grid(e_grid: np.ndarray, dos: np.ndarray, beta: float,
                            tau: float, edge_tol: float = 1e-8) -> CanonicalPoint:
    """Grid path: Z_can,tau = trapezoid of exp(-beta E) g(E) over the E grid.

    The exact canonical companions are not available from a sampled g grid;
    they are reported through the tau-dependent identities in reverse.
    Flags (and warns about) visible truncation when the integrand does not
    decay at the grid edges.
    """
    e_grid = np.asarray(e_grid, dtype=float)
    dos = np.asarray(dos, dtype=float)
    if e_grid.ndim != 1 or e_grid.shape != dos.shape or len(e_grid) < 2:
        raise ValueError("need matching 1-d E and g grids with >= 2 points")
    shift = e_grid.min() if beta >= 0 else e_grid.max()
    f = np.exp(-beta * (e_grid - shift)) * dos
    z0 = float(np.trapezoid(f, e_grid))
    if z0 <= 0:
        raise ValueError("non-positive partition integral; check the g grid")
    truncated = bool(max(f[0], f[-1]) > edge_tol * f.max())
    if truncated:
        warnings.warn("E grid does not cover the spectral support; "
                      "canonical integral is truncated", stacklevel=2)
    log_z_tau = float(np.log(z0) - beta * shift)
    e_can_tau = float(np.trapezoid(e_grid * f, e_grid)) / z0
    s_can_tau = beta * e_can_tau + log_z_tau
    corr = beta * beta / (4.0 * tau * tau)
    return CanonicalPoint(
        beta=beta, tau=tau,
        z_can=float(np.exp(log_z_tau - corr)),
        e_can=e_can_tau + beta / (2.0 * tau * tau),
        s_can=s_can_tau + corr,
        z_can_tau=float(np.exp(log_z_tau)),
        e_can_tau=e_can_tau,
        s_can_tau=s_can_tau,
        truncated=truncated,
    )


def cumulative_states(eigenvalues: np.ndarray, energy: float,
                      tau: float) -> float:
    """Cumulative count W_tau(E) = 1/2 sum_n erfc((E_n - E) tau)."""
    e = np.asarray(eigenvalues, dtype=float)
    return float(0.5 * erfc((e - energy) * tau).sum())
