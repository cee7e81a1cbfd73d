"""Full diagonalization of small chains: the ground truth for everything else.

The Hamiltonian is real in the computational basis (each SWAP term is a
0/1 permutation matrix), so a real-symmetric solve suffices. Dense
storage limits this to N <= 14 by default (2.1 GB at N = 14).
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .evolve import KernelTrace
from .model import SpinChainModel
from .states import CapacityError, StateVector, swap_permutation

DEFAULT_MAX_EXACT_QUBITS = 14


@dataclass
class Spectrum:
    eigenvalues: np.ndarray              # ascending
    eigenvectors: np.ndarray | None = None   # columns, when kept
    model: SpinChainModel | None = None

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def dense_hamiltonian(model: SpinChainModel) -> np.ndarray:
    """D x D real matrix of J * sum_bonds P_ij in the computational basis."""
    dim = 1 << model.n_qubits
    h = np.zeros((dim, dim))
    rows = np.arange(dim)
    for i, j in model.bonds:
        h[rows, swap_permutation(model.n_qubits, i, j)] += model.coupling
    return h


def full_diagonalize(model: SpinChainModel, keep_vectors: bool = False,
                     max_qubits: int = DEFAULT_MAX_EXACT_QUBITS) -> Spectrum:
    if model.n_qubits > max_qubits:
        raise CapacityError(
            f"dense diagonalization capped at {max_qubits} qubits, "
            f"got {model.n_qubits}"
        )
    h = dense_hamiltonian(model)
    if keep_vectors:
        vals, vecs = scipy.linalg.eigh(h, overwrite_a=True, check_finite=False)
        return Spectrum(vals, vecs, model)
    vals = scipy.linalg.eigvalsh(h, overwrite_a=True, check_finite=False,
                                 driver="evr")
    return Spectrum(np.sort(vals), None, model)


def save_eigenvalues(spectrum: Spectrum, path) -> None:
    """Flat binary (.npy) or CSV of the ascending eigenvalues."""
    path = str(path)
    if path.endswith(".npy"):
        np.save(path, spectrum.eigenvalues)
    else:
        np.savetxt(path, spectrum.eigenvalues, fmt="%.17g")


def load_eigenvalues(path, model: SpinChainModel | None = None) -> Spectrum:
    path = str(path)
    vals = np.load(path) if path.endswith(".npy") else np.loadtxt(path)
    vals = np.sort(np.atleast_1d(np.asarray(vals, dtype=float)))
    return Spectrum(vals, None, model)


def coeffs_from_state(spectrum: Spectrum, state: StateVector) -> np.ndarray:
    """Eigenbasis coefficients c_n = <E_n|psi>."""
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum was diagonalized without eigenvectors")
    return spectrum.eigenvectors.T.conj() @ state.amplitudes


def exact_traces(spectrum: Spectrum, energy: float, tau: float):
    """(trG, trHG, trH2G) with Gaussian weights exp(-(E_n - E)^2 tau^2)."""
    e = spectrum.eigenvalues
    w = np.exp(-((e - energy) * tau) ** 2)
    return float(w.sum()), float((e * w).sum()), float((e * e * w).sum())


def exact_kernel(initial_coeffs: np.ndarray, spectrum: Spectrum,
                 times: np.ndarray, block: int = 4096) -> KernelTrace:
    """K(t) = sum |c_n|^2 e^{-i E_n t}, L(t) = sum |c_n|^2 E_n e^{-i E_n t}."""
    c = np.asarray(initial_coeffs, dtype=np.complex128)
    p = np.abs(c) ** 2
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"coefficients not normalized: sum |c|^2 = {p.sum()}")
    times = np.asarray(times, dtype=float)
    if len(times) > 1:
        dt_all = np.diff(times)
        if not np.allclose(dt_all, dt_all[0], rtol=1e-12, atol=1e-12):
            raise ValueError("time grid must be uniform")
        dt = float(dt_all[0])
    else:
        dt = 1.0
    e = spectrum.eigenvalues
    K = np.zeros(len(times), dtype=np.complex128)
    L = np.zeros(len(times), dtype=np.complex128)
    for lo in range(0, len(e), block):
        hi = min(lo + block, len(e))
        phases = np.exp(-1j * np.outer(e[lo:hi], times))
        K += p[lo:hi] @ phases
        L += (p[lo:hi] * e[lo:hi]) @ phases
    return KernelTrace(dt=dt, K=K, L=L)


def filtered_state_coeffs(initial_coeffs: np.ndarray, spectrum: Spectrum,
                          energy: float, tau: float) -> np.ndarray:
    """Eigenbasis coefficients after the square-root filter.

    The half-exponent tau^2/2 makes the squared norm of the result equal
    <phi|G_tau(E)|phi>.
    """
    c = np.asarray(initial_coeffs, dtype=np.complex128)
    e = spectrum.eigenvalues
    return c * np.exp(-0.5 * ((e - energy) * tau) ** 2)


@dataclass(frozen=True)
class HistogramResult:
    edges: np.ndarray        # n_bin + 1 edges
    centers: np.ndarray      # n_bin centers; E_0 and E_{D-1} sit on centers
    counts: np.ndarray
    delta_e_bin: float
    tau_bin: float           # sqrt(pi) / delta_e_bin


def histogram_and_tau(spectrum: Spectrum, n_bin: int) -> HistogramResult:
    """Eigenvalue histogram with the extreme eigenvalues at bin centers."""
    if n_bin < 2:
        raise ValueError("need at least 2 bins")
    e = spectrum.eigenvalues
    e_min, e_max = float(e[0]), float(e[-1])
    if e_max <= e_min:
        raise ValueError("degenerate spectral span; histogram undefined")
    width = (e_max - e_min) / (n_bin - 1)
    edges = e_min - 0.5 * width + width * np.arange(n_bin + 1)
    centers = e_min + width * np.arange(n_bin)
    # half-open [lo, hi) bins; the top edge lies strictly above E_{D-1}
    idx = np.floor((e - edges[0]) / width).astype(int)
    counts = np.bincount(idx, minlength=n_bin)
    return HistogramResult(edges=edges, centers=centers, counts=counts,
                           delta_e_bin=width,
                           tau_bin=float(np.sqrt(np.pi) / width))
