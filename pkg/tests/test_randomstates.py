import numpy as np
import pytest

from spinfilter import (
    RandomStateKind,
    RandomStateSpec,
    draw_angles,
    enumerate_discrete_ensemble,
    prepare_random_state,
)
from spinfilter.randomstates import n_angles
from spinfilter.states import CapacityError

ALL_KINDS = [
    (RandomStateKind.FULL_PHASE, None),
    (RandomStateKind.PRODUCT_PHASE, None),
    (RandomStateKind.ENTANGLED_PHASE, None),
    (RandomStateKind.DISCRETE_PRODUCT_PHASE, 4),
]


def test_n_angles():
    assert n_angles(RandomStateSpec(RandomStateKind.FULL_PHASE, 5, 0)) == 32
    assert n_angles(RandomStateSpec(RandomStateKind.PRODUCT_PHASE, 5, 0)) == 5
    assert n_angles(RandomStateSpec(RandomStateKind.ENTANGLED_PHASE, 5, 0)) == 15
    spec = RandomStateSpec(RandomStateKind.DISCRETE_PRODUCT_PHASE, 5, 0, levels=2)
    assert n_angles(spec) == 5


def test_spec_validation():
    with pytest.raises(ValueError):
        RandomStateSpec(RandomStateKind.DISCRETE_PRODUCT_PHASE, 4, 0)
    with pytest.raises(ValueError):
        RandomStateSpec(RandomStateKind.DISCRETE_PRODUCT_PHASE, 4, 0, levels=1)
    with pytest.raises(ValueError):
        RandomStateSpec(RandomStateKind.PRODUCT_PHASE, 4, 0, levels=2)


@pytest.mark.parametrize("kind,levels", ALL_KINDS)
def test_reproducible_and_sample_dependent(kind, levels):
    a = RandomStateSpec(kind, 4, seed=7, sample=3, levels=levels)
    s1 = prepare_random_state(a)
    s2 = prepare_random_state(a)
    assert np.array_equal(s1.amplitudes, s2.amplitudes)
    other = RandomStateSpec(kind, 4, seed=7, sample=4, levels=levels)
    assert not np.allclose(prepare_random_state(other).amplitudes, s1.amplitudes)
    other_seed = RandomStateSpec(kind, 4, seed=8, sample=3, levels=levels)
    assert not np.allclose(prepare_random_state(other_seed).amplitudes,
                           s1.amplitudes)


@pytest.mark.parametrize("kind,levels", ALL_KINDS)
def test_equal_modulus_amplitudes(kind, levels):
    # every kind only attaches phases to |+>^N
    spec = RandomStateSpec(kind, 5, seed=11, levels=levels)
    psi = prepare_random_state(spec)
    assert np.allclose(np.abs(psi.amplitudes), 2 ** -2.5, atol=1e-14)
    assert psi.norm_squared() == pytest.approx(1.0, abs=1e-13)


def test_kinds_disagree():
    states = [prepare_random_state(RandomStateSpec(k, 4, seed=5, levels=l))
              for k, l in ALL_KINDS]
    for i in range(len(states)):
        for j in range(i):
            assert not np.allclose(states[i].amplitudes, states[j].amplitudes)


def test_discrete_angles_on_grid():
    spec = RandomStateSpec(RandomStateKind.DISCRETE_PRODUCT_PHASE, 6, seed=1,
                           levels=8)
    angles = draw_angles(spec)
    steps = angles * 8 / (2 * np.pi)
    assert np.allclose(steps, np.round(steps), atol=1e-12)
    assert np.all((angles >= 0) & (angles < 2 * np.pi))


def test_full_phase_capacity():
    spec = RandomStateSpec(RandomStateKind.FULL_PHASE, 12, seed=0)
    with pytest.raises(CapacityError):
        draw_angles(spec, max_qubits=10)


def test_enumeration_count_and_average():
    states = list(enumerate_discrete_ensemble(3, 2))
    assert len(states) == 8
    dim = 8
    avg = np.zeros((dim, dim), dtype=np.complex128)
    for s in states:
        avg += np.outer(s.amplitudes, s.amplitudes.conj())
    avg /= len(states)
    assert np.max(np.abs(avg - np.eye(dim) / dim)) < 1e-15


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        next(enumerate_discrete_ensemble(21, 2))
    with pytest.raises(ValueError):
        next(enumerate_discrete_ensemble(3, 1))
