"""Spin-1/2 Heisenberg chain in the SWAP form H = J * sum_<ij> P_ij."""

from dataclasses import dataclass


@dataclass(frozen=True)
class SpinChainModel:
    n_qubits: int
    coupling: float
    boundary: str  # "periodic" | "open"
    bonds: tuple
    odd_bonds: tuple
    even_bonds: tuple


def build_chain(n_qubits: int, coupling: float = 1.0,
                boundary: str = "periodic") -> SpinChainModel:
    """Nearest-neighbour chain with its two commuting Trotter layers.

    The "odd" layer collects the bonds starting at even 0-based sites
    {(0,1), (2,3), ...}; the "even" layer collects the remainder. Within
    each layer no qubit appears twice, so the SWAP terms commute.
    """
    if n_qubits < 2 or n_qubits % 2 != 0:
        raise ValueError(f"n_qubits must be even and >= 2, got {n_qubits}")
    if coupling <= 0:
        raise ValueError(f"coupling must be positive, got {coupling}")
    if boundary not in ("periodic", "open"):
        raise ValueError(f"boundary must be 'periodic' or 'open', got {boundary!r}")

    n_bond = n_qubits if boundary == "periodic" else n_qubits - 1
    bonds = tuple((i, (i + 1) % n_qubits) for i in range(n_bond))
    odd = tuple(b for b in bonds if b[0] % 2 == 0)
    even = tuple(b for b in bonds if b[0] % 2 == 1)
    return SpinChainModel(n_qubits, coupling, boundary, bonds, odd, even)


def trace_H_over_D(model: SpinChainModel) -> float:
    """Tr[H]/D = J * N_bond / 2 (Tr[P_ij] = D/2; the Pauli terms are traceless)."""
    return model.coupling * len(model.bonds) / 2.0
