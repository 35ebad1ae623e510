import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgmsim.scenarios.metrics import (
    InvalidStateError,
    check_density_matrix,
    coherence,
    concurrence,
    infidelity_to_pure,
    trace_distance,
)

from conftest import random_density

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)


def werner(p):
    return p * np.outer(BELL, BELL) + (1 - p) * np.eye(4) / 4


@pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.5, 0.9, 1.0])
def test_concurrence_of_werner_states(p):
    # closed form: max(0, (3p - 1) / 2)
    assert np.isclose(concurrence(werner(p)), max(0.0, (3 * p - 1) / 2), atol=1e-12)


def test_concurrence_of_pure_states():
    a, b = 0.6, 0.8
    ket = np.array([a, 0, 0, b])
    assert np.isclose(concurrence(np.outer(ket, ket)), 2 * a * b)
    prod = np.kron([1, 0], [0.6, 0.8])
    assert np.isclose(concurrence(np.outer(prod, prod)), 0.0, atol=1e-12)


@given(st.integers(0, 10_000))
def test_concurrence_range_and_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 4, rank=int(rng.integers(1, 5)))
    c = concurrence(rho)
    assert -1e-12 <= c <= 1 + 1e-12
    u1, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    u2, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    u = np.kron(u1, u2)
    assert np.isclose(concurrence(u @ rho @ u.conj().T), c, atol=1e-7)


@given(st.integers(0, 10_000), st.integers(2, 5))
def test_coherence_range(seed, dim):
    rho = random_density(np.random.default_rng(seed), dim)
    assert 0 <= coherence(rho) <= dim - 1 + 1e-9


def test_coherence_extremes():
    assert np.isclose(coherence(np.full((3, 3), 1 / 3)), 2.0)
    assert coherence(np.diag([0.5, 0.5])) == 0.0


def test_coherence_in_rotated_basis():
    plus = np.full((2, 2), 0.5)
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.isclose(coherence(plus, basis=h), 0.0)


def test_distances():
    rho = np.outer(BELL, BELL)
    assert np.isclose(trace_distance(rho, np.eye(4) / 4), 0.75)
    assert np.isclose(infidelity_to_pure(werner(0.5), BELL), 1 - (0.5 + 0.5 / 4))


@pytest.mark.parametrize(
    "bad",
    [np.array([[1, 1], [0, 0]]), np.diag([0.6, 0.6]), np.diag([1.5, -0.5]), np.ones((2, 3))],
)
def test_invalid_states_rejected(bad):
    with pytest.raises(InvalidStateError):
        check_density_matrix(bad)


def test_concurrence_needs_two_qubits():
    with pytest.raises(InvalidStateError):
        concurrence(np.eye(3) / 3)
