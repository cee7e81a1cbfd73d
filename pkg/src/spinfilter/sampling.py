"""Stochastic trace estimation: prepare -> evolve -> filter over R samples.

One evolution per sample serves the whole (E, tau) grid, since the
quadrature only re-weights the same recorded kernel. Samples are seeded
individually (base seed plus sample index), so any execution order or
parallel schedule produces bit-identical results.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .evolve import TrotterPlan, evolve_and_record
from .exact import Spectrum, coeffs_from_state
from .filtering import FilterParams, quadrature_filtered_pair
from .model import SpinChainModel
from .randomstates import RandomStateKind, RandomStateSpec, prepare_random_state


@dataclass
class SampleSet:
    spec: RandomStateSpec              # template; per-sample index varies
    model: SpinChainModel
    plan: TrotterPlan
    grid: tuple                        # ((E, tau), ...)
    norms: np.ndarray                  # (R, len(grid)) filtered norms
    energies: np.ndarray               # (R, len(grid)) filtered energies

    @property
    def n_samples(self) -> int:
        return self.norms.shape[0]

    def grid_index(self, at) -> int:
        energy, tau = at
        for g, (e_g, t_g) in enumerate(self.grid):
            if e_g == energy and t_g == tau:
                return g
        raise KeyError(f"grid point {at!r} not present")


def run_samples(model: SpinChainModel, spec_template: RandomStateSpec,
                plan: TrotterPlan, grid, n_samples: int,
                threads: int = 1) -> SampleSet:
    """Evaluate the filtered pair for every sample at every grid point."""
    if n_samples < 1:
        raise ValueError("need at least one sample")
    grid = tuple((float(e), float(t)) for e, t in grid)
    if not grid:
        raise ValueError("grid is empty")
    params = [FilterParams(e, t) for e, t in grid]
    norms = np.empty((n_samples, len(grid)))
    energies = np.empty((n_samples, len(grid)))

    def one_sample(r: int) -> None:
        spec = replace(spec_template, n_qubits=model.n_qubits, sample=r)
        phi = prepare_random_state(spec)
        trace = evolve_and_record(phi, model, plan)
        if not (np.all(np.isfinite(trace.K)) and np.all(np.isfinite(trace.L))):
            raise RuntimeError(f"non-finite kernel in sample {r}")
        for g, p in enumerate(params):
            pair = quadrature_filtered_pair(trace, p)
            norms[r, g] = pair.norm
            energies[r, g] = pair.energy

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for future in [pool.submit(one_sample, r) for r in range(n_samples)]:
                future.result()
    else:
        for r in range(n_samples):
            one_sample(r)

    return SampleSet(spec=spec_template, model=model, plan=plan, grid=grid,
                     norms=norms, energies=energies)


@dataclass(frozen=True)
class TraceEstimate:
    tr_g: float
    sem_tr_g: float       # NaN when undefined (R < 2)
    tr_hg: float
    sem_tr_hg: float
    n_samples: int

    @property
    def sem_defined(self) -> bool:
        return not np.isnan(self.sem_tr_g)


def estimate_traces(samples: SampleSet, at) -> TraceEstimate:
    """trG ~ D * mean(N_r), trHG ~ D * mean(H_r); SEM = sd / sqrt(R)."""
    g = samples.grid_index(at)
    dim = 1 << samples.model.n_qubits
    n = samples.norms[:, g]
    h = samples.energies[:, g]
    r = len(n)
    if r >= 2:
        sem_n = float(n.std(ddof=1) / np.sqrt(r))
        sem_h = float(h.std(ddof=1) / np.sqrt(r))
    else:
        sem_n = sem_h = float("nan")
    return TraceEstimate(tr_g=dim * float(n.mean()), sem_tr_g=dim * sem_n,
                         tr_hg=dim * float(h.mean()), sem_tr_hg=dim * sem_h,
                         n_samples=r)


def jackknife_derived_sems(samples: SampleSet, at):
    """Leave-one-out SEMs for (S, beta, mean energy) at one grid point.

    Cross-check for the first-order propagation in the thermo layer.
    """
    g = samples.grid_index(at)
    energy, tau = samples.grid[g]
    n = samples.norms[:, g]
    h = samples.energies[:, g]
    r = len(n)
    if r < 2:
        raise ValueError("jackknife needs at least two samples")
    dim = 1 << samples.model.n_qubits
    loo_n = (n.sum() - n) / (r - 1)
    loo_h = (h.sum() - h) / (r - 1)
    if np.any(loo_n <= 0):
        raise ValueError("non-positive leave-one-out norm; statistics failed")
    s = np.log(dim * loo_n)
    mean_e = loo_h / loo_n
    beta = 2.0 * tau * tau * (mean_e - energy)
    factor = (r - 1) / r

    def jk_sem(values):
        return float(np.sqrt(factor * ((values - values.mean()) ** 2).sum()))

    return jk_sem(s), jk_sem(beta), jk_sem(mean_e)


def sample_filtered_norms(spectrum: Spectrum, kind: RandomStateKind,
                          energy: float, tau: float, n_samples: int,
                          seed: int, levels: int | None = None,
                          block: int = 256) -> np.ndarray:
    """Exact per-sample filtered norms N_r via the eigenbasis (no evolution).

    N_r = sum_n |c_{n,r}|^2 exp(-(E_n - E)^2 tau^2) with c = V^dag phi_r.
    Requires a spectrum diagonalized with eigenvectors.
    """
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum must carry eigenvectors")
    n_qubits = spectrum.model.n_qubits
    w = np.exp(-((spectrum.eigenvalues - energy) * tau) ** 2)
    out = np.empty(n_samples)
    for lo in range(0, n_samples, block):
        hi = min(lo + block, n_samples)
        states = np.empty((hi - lo, spectrum.dim), dtype=np.complex128)
        for r in range(lo, hi):
            spec = RandomStateSpec(kind, n_qubits, seed, sample=r, levels=levels)
            states[r - lo] = prepare_random_state(spec).amplitudes
        coeffs = states @ spectrum.eigenvectors.conj()
        out[lo:hi] = (np.abs(coeffs) ** 2) @ w
    return out


@dataclass(frozen=True)
class CovarianceDiagnostic:
    empirical_var: float
    analytic_cov: float
    formula_applies: bool          # analytic form holds for the full-phase kind
    samples: np.ndarray            # per-sample filtered norms


def covariance_diagnostic(spectrum: Spectrum, kind: RandomStateKind,
                          energy: float, tau: float, n_samples: int,
                          seed: int, levels: int | None = None) -> CovarianceDiagnostic:
    """Empirical variance of N_r against the analytic full-phase covariance.

    Analytic value (A = B = G_tau(E), computational basis):
    (1/D^2) [Tr(G^2) - sum_i G_ii^2].
    """
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum must carry eigenvectors")
    dim = spectrum.dim
    w = np.exp(-((spectrum.eigenvalues - energy) * tau) ** 2)
    tr_g2 = float((w * w).sum())
    # G_ii = sum_n w_n |V_in|^2 without forming the dense D x D operator
    g_diag = (np.abs(spectrum.eigenvectors) ** 2) @ w
    analytic = (tr_g2 - float((g_diag ** 2).sum())) / dim ** 2
    norms = sample_filtered_norms(spectrum, kind, energy, tau, n_samples,
                                  seed, levels=levels)
    return CovarianceDiagnostic(
        empirical_var=float(norms.var(ddof=1)),
        analytic_cov=analytic,
        formula_applies=kind is RandomStateKind.FULL_PHASE,
        samples=norms,
    )
