"""Dense state-vector representation and matrix-free gate kernels.

Convention used throughout the package: bit k of the computational-basis
index encodes qubit k (little-endian), so the SWAP of qubits i and j is a
pure permutation of index bits.
"""

from functools import lru_cache

import numpy as np

DEFAULT_MAX_QUBITS = 28


class CapacityError(Exception):
    """Requested system size exceeds the configured memory cap."""


class StateVector:
    """2^N complex amplitudes plus the qubit count N."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (1 << n_qubits,):
            raise ValueError(
                f"expected {1 << n_qubits} amplitudes for {n_qubits} qubits, "
                f"got {amplitudes.shape}"
            )
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


def new_plus_state(n_qubits: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Uniform superposition |+>^N with every amplitude 2^(-N/2)."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    if n_qubits > max_qubits:
        raise CapacityError(f"n_qubits={n_qubits} exceeds cap of {max_qubits}")
    dim = 1 << n_qubits
    amps = np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128)
    return StateVector(n_qubits, amps)


def _check_qubit(n_qubits: int, q: int) -> None:
    if not 0 <= q < n_qubits:
        raise IndexError(f"qubit index {q} out of range for {n_qubits} qubits")


@lru_cache(maxsize=None)
def _zz_unequal_mask(n_qubits: int, i: int, j: int) -> np.ndarray:
    """Boolean mask of basis indices where bits i and j differ."""
    b = np.arange(1 << n_qubits)
    mask = ((b >> i) & 1) != ((b >> j) & 1)
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=None)
def _swap_pairs(n_qubits: int, i: int, j: int):
    """Index sets for the SWAP(i,j) action: (equal-bit, bit-i-set, partner)."""
    b = np.arange(1 << n_qubits)
    differ = ((b >> i) & 1) != ((b >> j) & 1)
    eq = b[~differ]
    u = b[differ & (((b >> i) & 1) == 1)]
    v = u ^ ((1 << i) | (1 << j))
    for a in (eq, u, v):
        a.setflags(write=False)
    return eq, u, v


@lru_cache(maxsize=None)
def swap_permutation(n_qubits: int, i: int, j: int) -> np.ndarray:
    """Permutation p with (P_ij psi)[b] = psi[p[b]] (p is an involution)."""
    b = np.arange(1 << n_qubits)
    differ = ((b >> i) & 1) != ((b >> j) & 1)
    p = np.where(differ, b ^ ((1 << i) | (1 << j)), b)
    p.setflags(write=False)
    return p


def apply_phase_diag(state: StateVector, support, theta: float) -> None:
    """Diagonal phase gate, in place.

    One qubit k: amplitude of |b> picks up exp(-i*theta*(-1)^{b_k}/2),
    i.e. the Rz(theta) rotation. Two qubits (i, j): the phase is
    exp(-i*theta*(-1)^{b_i xor b_j}) per exp(-i*theta*Z_i*Z_j).
    """
    support = tuple(support)
    n = state.n_qubits
    amps = state.amplitudes
    if len(support) == 1:
        (k,) = support
        _check_qubit(n, k)
        view = amps.reshape(-1, 2, 1 << k)
        view[:, 0, :] *= np.exp(-0.5j * theta)
        view[:, 1, :] *= np.exp(0.5j * theta)
    elif len(support) == 2:
        i, j = support
        _check_qubit(n, i)
        _check_qubit(n, j)
        if i == j:
            raise IndexError("two-qubit phase gate needs distinct qubits")
        unequal = _zz_unequal_mask(n, i, j)
        amps[unequal] *= np.exp(1j * theta)
        amps[~unequal] *= np.exp(-1j * theta)
    else:
        raise ValueError("support must hold one or two qubit indices")


def apply_exp_swap(state: StateVector, i: int, j: int, theta: float) -> None:
    """exp(-i*theta*P_ij/2) in place, P_ij the SWAP of qubits i and j.

    P^2 = I, so the gate is cos(theta/2)*I - i*sin(theta/2)*P_ij.
    """
    n = state.n_qubits
    _check_qubit(n, i)
    _check_qubit(n, j)
    if i == j:
        raise IndexError("exp-SWAP needs distinct qubits")
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    eq, u, v = _swap_pairs(n, i, j)
    amps = state.amplitudes
    amps[eq] *= complex(c, -s)
    au = amps[u]
    av = amps[v]
    amps[u] = c * au - 1j * s * av
    amps[v] = c * av - 1j * s * au


def apply_hamiltonian(state: StateVector, model) -> StateVector:
    """J * sum_bonds P_ij |psi> as a new state; the input is unchanged."""
    if model.n_qubits != state.n_qubits:
        raise ValueError(
            f"model has {model.n_qubits} qubits, state has {state.n_qubits}"
        )
    amps = state.amplitudes
    out = np.zeros_like(amps)
    for i, j in model.bonds:
        out += amps[swap_permutation(state.n_qubits, i, j)]
    out *= model.coupling
    return StateVector(state.n_qubits, out)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> = sum_b conj(a_b) * b_b."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states live on different qubit counts")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
