import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgmsim.effective import (
    ScalingProblem,
    default_time_grid,
    first_order_generator,
    fit_loglog,
    projected_error,
    scaling_sweep,
    second_order_generator,
)
from dgmsim.lindblad import Liouvillian, hamiltonian_super
from dgmsim.network import Vertex, global_projector
from dgmsim.projector import reduced_resolvent, steady_projector
from dgmsim.scenarios.dfs import dfs_pair_network, fig2_problem, logical_generators
from dgmsim.spaces import pauli


@given(st.floats(0.2, 3.0), st.floats(-2.0, 2.0))
def test_fit_recovers_exact_power_law(slope, log_c):
    t = default_time_grid(10, 1e4, 5)
    err = 10.0 ** log_c * t ** (-slope)
    s, c, n = fit_loglog(t, err)
    assert np.isclose(s, slope) and np.isclose(c, log_c) and n == len(t)


def test_fit_uses_largest_times():
    t = np.array([1.0, 10, 100, 1000])
    err = np.array([5.0, 1e-1, 1e-2, 1e-3])
    s, _c, n = fit_loglog(t, err, fit_points=3)
    assert n == 3 and np.isclose(s, 1.0)


def test_fit_validation():
    with pytest.raises(ValueError):
        fit_loglog([1, 2], [1, 0])
    with pytest.raises(ValueError):
        fit_loglog([1, 2, 3], [1, 2, 3], fit_points=5)


def test_default_grid_endpoints():
    g = default_time_grid()
    assert len(g) == 61 and np.isclose(g[0], 10) and np.isclose(g[-1], 1e4)


def test_sweep_needs_five_times():
    with pytest.raises(ValueError):
        scaling_sweep(lambda t: 1 / t, [1, 2, 3])
    with pytest.raises(ValueError):
        scaling_sweep(lambda t: 1 / t, [-1, 2, 3, 4, 5])


def test_sweep_result_is_order_independent():
    r1 = scaling_sweep(lambda t: 2 / t, [10, 1000, 100, 30, 300])
    r2 = scaling_sweep(lambda t: 2 / t, [1000, 300, 100, 30, 10], workers=2)
    assert r1.samples == r2.samples and np.isclose(r1.slope, 1.0)


def test_first_order_generator_of_logical_x():
    """P0 K P0 on a single DFS module reproduces the logical Pauli x exactly."""
    net = dfs_pair_network(1.0, 1.0)
    p0 = global_projector(net)
    k = hamiltonian_super(np.kron(logical_generators(1.0)["x"].physical, np.eye(4)))
    g = first_order_generator(k, p0)
    assert np.allclose(g, p0 @ g @ p0)
    assert np.linalg.norm(g) > 0


def test_second_order_warns_only_when_first_order_survives():
    dephased = Liouvillian(2, dissipators=((pauli("z"), 1.0),)).matrix
    p0, _ = steady_projector(dephased)
    s = reduced_resolvent(dephased, p0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        gen = second_order_generator(hamiltonian_super(pauli("x")), p0, s)
    # sigma^x drives population transfer at rate 2 * |g|^2 * tau_coh with tau_coh = 1/2
    rho = np.diag([1.0, 0.0]).reshape(-1, order="F")
    assert np.isclose((gen @ rho)[0], -1.0)

    module = Vertex("dfs2", 1.0).liouvillian().matrix
    p1, _ = steady_projector(module)
    s1 = reduced_resolvent(module, p1)
    with pytest.warns(RuntimeWarning):
        second_order_generator(hamiltonian_super(logical_generators(1.0)["x"].physical), p1, s1)


def test_scaling_problem_error_vanishes_at_large_t():
    prob = fig2_problem("entangling")
    assert prob.error(1e4) < prob.error(10.0) / 100


def test_projected_error_matches_problem():
    prob = fig2_problem("zz")
    t = 50.0
    direct = projected_error(prob.l0 + prob.k_tilde / t, prob.effective, prob.p0, t)
    assert np.isclose(direct, prob.error(t))


def test_scaling_problem_validation():
    prob = fig2_problem("zz")
    with pytest.raises(ValueError):
        ScalingProblem(prob.l0, prob.k_tilde, prob.p0, order=3)
    with pytest.raises(ValueError):
        ScalingProblem(prob.l0, prob.k_tilde, prob.p0, order=2)
