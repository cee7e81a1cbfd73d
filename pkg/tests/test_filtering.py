import numpy as np
import pytest

from spinfilter import FilterParams, quadrature_filtered_pair
from spinfilter.exact import coeffs_from_state, exact_kernel
from spinfilter.filtering import FilteredPair
from spinfilter.randomstates import RandomStateKind, RandomStateSpec, prepare_random_state


def test_params_validation():
    with pytest.raises(ValueError):
        FilterParams(0.0, tau=0.0)
    with pytest.raises(ValueError):
        FilterParams(0.0, tau=-1.0)
    assert FilterParams(0.0, tau=2.0).delta_e == pytest.approx(np.sqrt(np.pi) / 2)


def _kernel_and_coeffs(spectrum, seed=3, t_max=50.0, dt=0.01):
    spec = RandomStateSpec(RandomStateKind.ENTANGLED_PHASE,
                           spectrum.model.n_qubits, seed)
    phi = prepare_random_state(spec)
    c = coeffs_from_state(spectrum, phi)
    times = np.arange(int(round(t_max / dt)) + 1) * dt
    return exact_kernel(c, spectrum, times), c


def test_quadrature_matches_eigenbasis(spectrum4v):
    trace, c = _kernel_and_coeffs(spectrum4v)
    p = np.abs(c) ** 2
    e = spectrum4v.eigenvalues
    for energy, tau in [(2.0, 1.0), (0.0, 2.5), (4.0, 4.0), (-1.0, 3.0)]:
        w = np.exp(-((e - energy) * tau) ** 2)
        pair = quadrature_filtered_pair(trace, FilterParams(energy, tau))
        assert pair.norm == pytest.approx(float(p @ w), abs=1e-10)
        assert pair.energy == pytest.approx(float(p @ (e * w)), abs=1e-10)


def test_norm_bounds(spectrum4v):
    trace, _ = _kernel_and_coeffs(spectrum4v, seed=9)
    for tau in (0.5, 1.0, 3.0, 5.0):
        pair = quadrature_filtered_pair(trace, FilterParams(1.0, tau))
        assert -1e-10 < pair.norm <= 1.0 + 1e-10


def test_truncation_warning(spectrum4v):
    trace, _ = _kernel_and_coeffs(spectrum4v, t_max=5.0)
    with pytest.warns(UserWarning, match="truncated"):
        quadrature_filtered_pair(trace, FilterParams(0.0, tau=3.0))


def test_diagnostics_residual_small(spectrum4v):
    trace, _ = _kernel_and_coeffs(spectrum4v)
    pair = quadrature_filtered_pair(trace, FilterParams(1.5, 2.0),
                                    diagnostics=True)
    assert isinstance(pair, FilteredPair)
    assert abs(pair.norm_imag) < 1e-12
    assert abs(pair.energy_imag) < 1e-10


def test_rejects_degenerate_trace():
    from spinfilter.evolve import KernelTrace
    trace = KernelTrace(dt=0.01, K=np.ones(1, complex), L=np.ones(1, complex))
    with pytest.raises(ValueError):
        quadrature_filtered_pair(trace, FilterParams(0.0, 1.0))
