"""Shared fixtures.

Eigenvalue-only spectra for N = 12 and N = 14 are cached on disk under
tests/.cache, because the N = 14 dense solve takes on the order of ten
minutes; every later run loads the file in milliseconds. Spectra that
carry eigenvectors are small (N <= 10) and recomputed per session.
"""

import pathlib

import pytest

from spinfilter import build_chain, full_diagonalize
from spinfilter.exact import load_eigenvalues, save_eigenvalues

CACHE = pathlib.Path(__file__).parent / ".cache"


def _cached_eigenvalues(n_qubits):
    CACHE.mkdir(exist_ok=True)
    path = CACHE / f"eigs_n{n_qubits}_periodic_j1.npy"
    model = build_chain(n_qubits)
    if path.exists():
        spectrum = load_eigenvalues(path, model)
        if spectrum.dim == 1 << n_qubits:
            return spectrum
    spectrum = full_diagonalize(model)
    save_eigenvalues(spectrum, path)
    return spectrum


@pytest.fixture(scope="session")
def spectrum12():
    return _cached_eigenvalues(12)


@pytest.fixture(scope="session")
def spectrum14():
    return _cached_eigenvalues(14)


@pytest.fixture(scope="session")
def spectrum4v():
    return full_diagonalize(build_chain(4), keep_vectors=True)


@pytest.fixture(scope="session")
def spectrum6v():
    return full_diagonalize(build_chain(6), keep_vectors=True)


@pytest.fixture(scope="session")
def spectrum8v():
    return full_diagonalize(build_chain(8), keep_vectors=True)


@pytest.fixture(scope="session")
def spectrum10v():
    return full_diagonalize(build_chain(10), keep_vectors=True)
