import pytest

from spinfilter import build_chain
from spinfilter.model import trace_H_over_D


def test_periodic_bonds():
    m = build_chain(6)
    assert m.bonds == ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0))
    assert m.odd_bonds == ((0, 1), (2, 3), (4, 5))
    assert m.even_bonds == ((1, 2), (3, 4), (5, 0))


def test_open_bonds():
    m = build_chain(6, boundary="open")
    assert m.bonds == ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5))
    assert m.odd_bonds == ((0, 1), (2, 3), (4, 5))
    assert m.even_bonds == ((1, 2), (3, 4))


def test_layers_partition_bonds():
    for n in (2, 4, 8, 12):
        for boundary in ("periodic", "open"):
            m = build_chain(n, boundary=boundary)
            assert sorted(m.odd_bonds + m.even_bonds) == sorted(m.bonds)
            # no qubit twice within a layer, so the layer terms commute
            for layer in (m.odd_bonds, m.even_bonds):
                qubits = [q for b in layer for q in b]
                assert len(qubits) == len(set(qubits))


def test_validation():
    with pytest.raises(ValueError):
        build_chain(5)
    with pytest.raises(ValueError):
        build_chain(0)
    with pytest.raises(ValueError):
        build_chain(4, coupling=0.0)
    with pytest.raises(ValueError):
        build_chain(4, boundary="twisted")


def test_trace_over_dim():
    assert trace_H_over_D(build_chain(12)) == 6.0
    assert trace_H_over_D(build_chain(12, boundary="open")) == 5.5
    assert trace_H_over_D(build_chain(4, coupling=2.0)) == 4.0
