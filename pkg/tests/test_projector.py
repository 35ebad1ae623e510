import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgmsim.lindblad import Liouvillian
from dgmsim.network import DgmNetwork, Edge, Vertex
from dgmsim.numerics import NumericalError, apply_super, spectral_norm
from dgmsim.projector import (
    dissipative_timescale,
    ergodic_projector,
    reduced_resolvent,
    resolvent_by_quadrature,
    steady_projector,
    steady_structure,
)
from dgmsim.spaces import pauli

from conftest import random_density


def test_damped_qubit_projector_and_resolvent():
    gen = Liouvillian(2, dissipators=((pauli("-"), 0.5),))
    st_ = steady_structure(gen)
    assert st_.kernel_dim == 1
    rho = apply_super(st_.p0, np.array([[0.3, 0.2], [0.2, 0.7]]))
    assert np.allclose(rho, np.diag([1.0, 0.0]))
    assert np.isclose(st_.tau, 4.0)  # coherences decay at rate gamma/2
    assert np.isclose(spectral_norm(st_.s), 4.0)


@given(st.integers(0, 10_000))
def test_identities_on_random_generators(seed):
    rng = np.random.default_rng(seed)
    ops = tuple((rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)), 1.0) for _ in range(2))
    st_ = steady_structure(Liouvillian(3, dissipators=ops))
    assert st_.kernel_dim == 1
    assert max(st_.residuals().values()) < 1e-8


def test_dfs_module_kernel_is_logical_operator_space():
    st_ = steady_structure(Vertex("dfs2", 1.0).liouvillian())
    assert st_.kernel_dim == 4
    assert np.isclose(st_.tau, 1.0)
    assert max(st_.residuals().values()) < 1e-12


def test_projector_is_oblique_not_orthogonal():
    p0, _ = steady_projector(Vertex("dfs2", 1.0).liouvillian())
    assert not np.allclose(p0, p0.conj().T)


def test_resolvent_matches_quadrature_oracle():
    cavities = DgmNetwork((Vertex("jc", 0.8, n_max=2), Vertex("jc", 0.8, n_max=2)), (Edge(0, 1, "boson_hop", 0.7),))
    l0 = cavities.unperturbed().matrix
    p0, _ = steady_projector(l0)
    s = reduced_resolvent(l0, p0)
    rng = np.random.default_rng(5)
    probe = rng.normal(size=(l0.shape[0], 2))
    quad = resolvent_by_quadrature(l0, p0, apply_to=probe)
    assert np.allclose(s @ probe, quad, rtol=0, atol=1e-7)


def test_ergodic_average_converges():
    l0 = Vertex("dfs2", 1.0).liouvillian().matrix
    p0, _ = steady_projector(l0)
    errs = [spectral_norm(ergodic_projector(l0, t, samples=4 * int(t)) - p0) for t in (10.0, 100.0)]
    assert errs[1] < errs[0] / 5


def test_zero_generator_gives_identity():
    p0, k = steady_projector(np.zeros((4, 4)))
    assert k == 4 and np.allclose(p0, np.eye(4))


def test_no_kernel_raises():
    with pytest.raises(NumericalError):
        steady_projector(-np.eye(4))


def test_timescale_of_unitary_generator_is_infinite():
    assert dissipative_timescale(Liouvillian(2, hamiltonian=pauli("x"))) == float("inf")


def test_timescale_needs_nonzero_spectrum():
    with pytest.raises(NumericalError):
        dissipative_timescale(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_projector_action_on_states_is_trace_preserving(rng):
    l0 = Vertex("dfs3", 0.7).liouvillian()
    p0, k = steady_projector(l0)
    assert k == 9
    rho = apply_super(p0, random_density(rng, 8))
    assert np.isclose(np.trace(rho), 1.0)
    assert np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) > -1e-10
