import numpy as np
import pytest
import scipy.linalg

from spinfilter import (
    KernelTrace,
    TrotterPlan,
    build_chain,
    evolve_and_record,
    new_plus_state,
    trotter_step,
)
from spinfilter.evolve import read_kernel_csv, write_kernel_csv
from spinfilter.exact import dense_hamiltonian
from spinfilter.states import StateVector


def test_plan_validation():
    with pytest.raises(ValueError):
        TrotterPlan(dt=0.0)
    with pytest.raises(ValueError):
        TrotterPlan(n_steps=-1)
    with pytest.raises(ValueError):
        TrotterPlan(n_steps=10, record_stride=3)
    plan = TrotterPlan(dt=0.01, n_steps=5000)
    assert plan.t_max == pytest.approx(50.0)


def test_trace_times():
    trace = KernelTrace(dt=0.5, K=np.zeros(4, complex), L=np.zeros(4, complex))
    assert np.allclose(trace.times, [0.0, 0.5, 1.0, 1.5])
    assert trace.t_max == pytest.approx(1.5)


def test_step_converges_to_exact_propagator():
    model = build_chain(4, coupling=1.3)
    h = dense_hamiltonian(model)
    t = 0.4
    rng = np.random.default_rng(0)
    amps = rng.normal(size=16) + 1j * rng.normal(size=16)
    amps /= np.linalg.norm(amps)
    exact = scipy.linalg.expm(-1j * h * t) @ amps

    def err(n_steps):
        psi = StateVector(4, amps.copy())
        for _ in range(n_steps):
            trotter_step(psi, model, t / n_steps)
        return np.linalg.norm(psi.amplitudes - exact)

    e1, e2 = err(400), err(800)
    assert e2 < 1e-3
    # first order: halving dt halves the error
    assert e1 / e2 == pytest.approx(2.0, abs=0.3)


def test_evolution_is_unitary():
    model = build_chain(6)
    psi = new_plus_state(6)
    for _ in range(200):
        trotter_step(psi, model, 0.05)
    assert psi.norm_squared() == pytest.approx(1.0, abs=1e-12)


def test_record_values():
    model = build_chain(4)
    phi = new_plus_state(4)
    plan = TrotterPlan(dt=0.02, n_steps=50)
    trace = evolve_and_record(phi, model, plan)
    assert len(trace.K) == 51
    assert trace.K[0] == pytest.approx(1.0)
    # L(0) = <phi|H|phi>; |+>^N is the J * N_bond eigenstate of the SWAP sum
    assert trace.L[0] == pytest.approx(len(model.bonds) * model.coupling)
    assert np.all(np.abs(trace.K) <= 1.0 + 1e-12)
    # input state untouched
    assert np.allclose(phi.amplitudes, 0.25)


def test_record_stride_subsamples():
    model = build_chain(4)
    phi = new_plus_state(4)
    dense = evolve_and_record(phi, model, TrotterPlan(dt=0.02, n_steps=40))
    sparse = evolve_and_record(phi, model,
                               TrotterPlan(dt=0.02, n_steps=40, record_stride=4))
    assert sparse.dt == pytest.approx(0.08)
    assert np.allclose(sparse.K, dense.K[::4], atol=1e-13)
    assert np.allclose(sparse.L, dense.L[::4], atol=1e-13)


def test_kernel_csv_roundtrip(tmp_path):
    model = build_chain(4)
    phi = new_plus_state(4)
    trace = evolve_and_record(phi, model, TrotterPlan(dt=0.01, n_steps=20))
    path = tmp_path / "kernel.csv"
    write_kernel_csv(trace, path)
    back = read_kernel_csv(path)
    assert back.dt == pytest.approx(trace.dt)
    assert np.allclose(back.K, trace.K, atol=0, rtol=0)
    assert np.allclose(back.L, trace.L, atol=0, rtol=0)
