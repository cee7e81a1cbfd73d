"""First-order Trotter time evolution and kernel recording.

One Trotter step applies the odd-bond layer then the even-bond layer,
each as a product of exponential-SWAP gates with angle 2*dt*J. The two
kernels recorded on the uniform grid t_m = m*dt are
K(t) = <phi|U(t)|phi> and L(t) = <phi|H U(t)|phi>.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .model import SpinChainModel
from .states import StateVector, apply_exp_swap, apply_hamiltonian, inner_product

DEFAULT_DT = 0.01
DEFAULT_N_STEPS = 5000


@dataclass(frozen=True)
class TrotterPlan:
    dt: float = DEFAULT_DT
    n_steps: int = DEFAULT_N_STEPS
    record_stride: int = 1

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.n_steps < 0:
            raise ValueError("n_steps must be >= 0")
        if self.record_stride < 1 or self.n_steps % self.record_stride:
            raise ValueError("record_stride must divide n_steps")

    @property
    def t_max(self) -> float:
        return self.n_steps * self.dt


@dataclass
class KernelTrace:
    dt: float          # spacing of the recorded grid
    K: np.ndarray      # complex, K[m] at t = m*dt
    L: np.ndarray

    @property
    def times(self) -> np.ndarray:
        # grid kept as integers times dt to avoid accumulation drift
        return np.arange(len(self.K)) * self.dt

    @property
    def t_max(self) -> float:
        return (len(self.K) - 1) * self.dt


def trotter_step(state: StateVector, model: SpinChainModel, dt: float) -> None:
    """One step exp(-i H_A dt) then exp(-i H_B dt), in place."""
    if model.n_qubits != state.n_qubits:
        raise ValueError("model size does not match state size")
    theta = 2.0 * dt * model.coupling
    for i, j in model.odd_bonds:
        apply_exp_swap(state, i, j, theta)
    for i, j in model.even_bonds:
        apply_exp_swap(state, i, j, theta)


def evolve_and_record(initial: StateVector, model: SpinChainModel,
                      plan: TrotterPlan) -> KernelTrace:
    """Evolve a copy of `initial`, recording K and L every `record_stride` steps.

    L is taken against the precomputed bra H|phi|; since H is Hermitian
    this equals <phi|H U(t)|phi> without applying H at every step.
    """
    bra_h = apply_hamiltonian(initial, model)
    psi = initial.copy()
    n_rec = plan.n_steps // plan.record_stride + 1
    K = np.empty(n_rec, dtype=np.complex128)
    L = np.empty(n_rec, dtype=np.complex128)
    K[0] = inner_product(initial, psi)
    L[0] = inner_product(bra_h, psi)
    idx = 1
    for m in range(1, plan.n_steps + 1):
        trotter_step(psi, model, plan.dt)
        if m % plan.record_stride == 0:
            K[idx] = inner_product(initial, psi)
            L[idx] = inner_product(bra_h, psi)
            idx += 1
    return KernelTrace(dt=plan.dt * plan.record_stride, K=K, L=L)


def write_kernel_csv(trace: KernelTrace, path) -> None:
    """Dump a trace as m, t, Re K, Im K, Re L, Im L for offline re-quadrature."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "t", "K_re", "K_im", "L_re", "L_im"])
        for m, (t, k, l) in enumerate(zip(trace.times, trace.K, trace.L)):
            writer.writerow([m, format(t, ".17g"),
                             format(k.real, ".17g"), format(k.imag, ".17g"),
                             format(l.real, ".17g"), format(l.imag, ".17g")])


def read_kernel_csv(path) -> KernelTrace:
    data = np.genfromtxt(path, delimiter=",", names=True)
    t = np.atleast_1d(data["t"])
    dt = float(t[1] - t[0]) if len(t) > 1 else 1.0
    K = np.atleast_1d(data["K_re"]) + 1j * np.atleast_1d(data["K_im"])
    L = np.atleast_1d(data["L_re"]) + 1j * np.atleast_1d(data["L_im"])
    return KernelTrace(dt=dt, K=K, L=L)
