"""Random-phase state ensembles on top of |+>^N.

Three continuous-angle kinds (full 2^N phases, single-qubit Rz product,
product plus all-to-all ZZ phases) and a discrete-angle product kind whose
small instances can be enumerated exhaustively.

Angles come from a counter-based Philox generator keyed by
(seed, kind, n_qubits, sample), so every sample is reproducible
independently of execution order and of any global RNG state.
"""

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import (
    DEFAULT_MAX_QUBITS,
    CapacityError,
    StateVector,
    apply_phase_diag,
    new_plus_state,
)

_MASK64 = (1 << 64) - 1


class RandomStateKind(Enum):
    FULL_PHASE = "full"
    PRODUCT_PHASE = "product"
    ENTANGLED_PHASE = "entangled"
    DISCRETE_PRODUCT_PHASE = "discrete"


_KIND_ID = {
    RandomStateKind.FULL_PHASE: 1,
    RandomStateKind.PRODUCT_PHASE: 2,
    RandomStateKind.ENTANGLED_PHASE: 3,
    RandomStateKind.DISCRETE_PRODUCT_PHASE: 4,
}


@dataclass(frozen=True)
class RandomStateSpec:
    kind: RandomStateKind
    n_qubits: int
    seed: int
    sample: int = 0
    levels: int | None = None  # angle grid size, discrete kind only

    def __post_init__(self):
        if self.kind is RandomStateKind.DISCRETE_PRODUCT_PHASE:
            if self.levels is None or self.levels < 2:
                raise ValueError("discrete kind needs levels >= 2")
        elif self.levels is not None:
            raise ValueError("levels only applies to the discrete kind")


def n_angles(spec: RandomStateSpec) -> int:
    n = spec.n_qubits
    if spec.kind is RandomStateKind.FULL_PHASE:
        return 1 << n
    if spec.kind is RandomStateKind.ENTANGLED_PHASE:
        return n * (n + 1) // 2
    return n


def _generator(spec: RandomStateSpec) -> np.random.Generator:
    lane = (_KIND_ID[spec.kind] << 56) ^ (spec.n_qubits << 48) ^ spec.sample
    key = np.array([spec.seed & _MASK64, lane & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def draw_angles(spec: RandomStateSpec,
                max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Angle array for one sample; a pure function of the spec."""
    if spec.kind is RandomStateKind.FULL_PHASE and spec.n_qubits > max_qubits:
        raise CapacityError(
            f"full-phase kind needs 2^{spec.n_qubits} angles, cap is {max_qubits} qubits"
        )
    rng = _generator(spec)
    count = n_angles(spec)
    if spec.kind is RandomStateKind.DISCRETE_PRODUCT_PHASE:
        return 2.0 * np.pi * rng.integers(0, spec.levels, size=count) / spec.levels
    return rng.uniform(0.0, 2.0 * np.pi, size=count)


def _apply_product_phases(state: StateVector, angles: np.ndarray) -> None:
    for k in range(state.n_qubits):
        apply_phase_diag(state, (k,), angles[k])


def _apply_entangling_phases(state: StateVector, angles: np.ndarray) -> None:
    # two-qubit angle index k(ij): row-major over i > j, offset by N
    n = state.n_qubits
    k = n
    for i in range(n):
        for j in range(i):
            apply_phase_diag(state, (i, j), angles[k])
            k += 1


def prepare_random_state(spec: RandomStateSpec,
                         max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """One normalized random-phase state for the given spec."""
    angles = draw_angles(spec, max_qubits=max_qubits)
    state = new_plus_state(spec.n_qubits, max_qubits=max_qubits)
    if spec.kind is RandomStateKind.FULL_PHASE:
        state.amplitudes *= np.exp(1j * angles)
    elif spec.kind in (RandomStateKind.PRODUCT_PHASE,
                       RandomStateKind.DISCRETE_PRODUCT_PHASE):
        _apply_product_phases(state, angles)
    else:
        _apply_product_phases(state, angles)
        _apply_entangling_phases(state, angles)
    return state


def enumerate_discrete_ensemble(n_qubits: int, levels: int,
                                max_states: int = 1 << 20):
    """Yield all levels^N discrete product-phase states, each exactly once."""
    if levels < 2:
        raise ValueError("levels must be >= 2")
    total = levels ** n_qubits
    if total > max_states:
        raise CapacityError(
            f"{total} states exceed the enumeration cap of {max_states}"
        )
    step = 2.0 * np.pi / levels
    for choice in itertools.product(range(levels), repeat=n_qubits):
        state = new_plus_state(n_qubits)
        # choice[k] selects the angle of qubit k
        _apply_product_phases(state, step * np.asarray(choice, dtype=float))
        yield state
