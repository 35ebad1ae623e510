import numpy as np
import pytest

from dgmsim.numerics import spectral_norm
from dgmsim.scenarios.jc import (
    JcParams,
    coherence_closed_form,
    coherence_curve,
    concurrence_curve,
    effective_state,
    jc_effective_analytic,
    jc_factored_effective,
    jc_numeric_effective,
    vacuum_isometry,
)
from dgmsim.scenarios.metrics import check_density_matrix, concurrence


def _rel(a, b):
    return spectral_norm(a - b) / spectral_norm(b)


@pytest.mark.parametrize(
    "kw",
    [
        dict(J=0.0),
        dict(g_a=0.7, g_b=1.3, J=1.3, tau=0.6),
        dict(J=0.4, omega_q_a=0.3, omega_q_b=-0.2, omega_a=0.5, omega_b=0.1),
        dict(J=0.3, n_b=0, g_b=0.0),
        dict(J=0.8, n_a=2, n_b=1),
    ],
)
def test_factored_generator_matches_closed_form(kw):
    p = JcParams(**kw)
    assert _rel(jc_factored_effective(p), jc_effective_analytic(p).liouvillian()) < 1e-10


def test_dense_and_factored_routes_agree():
    p = JcParams(g_a=0.9, J=0.5, tau=1.2, n_b=0, g_b=0.0)
    assert spectral_norm(jc_numeric_effective(p) - jc_factored_effective(p)) < 1e-12


def test_truncation_does_not_matter():
    p2 = JcParams(g_a=0.7, g_b=1.3, J=1.1, tau=0.9, n_max=2)
    p3 = JcParams(g_a=0.7, g_b=1.3, J=1.1, tau=0.9, n_max=3)
    assert spectral_norm(jc_factored_effective(p2) - jc_factored_effective(p3)) < 1e-10


def test_zero_hopping_rate():
    eff = jc_effective_analytic(JcParams(g_a=0.3, J=0.0, tau=2.0))
    assert np.isclose(eff.rate_a, 4 * 2.0 * 0.09) and eff.j_eff == 0.0


def test_params_validation():
    with pytest.raises(ValueError):
        JcParams(tau=0.0)
    with pytest.raises(ValueError):
        JcParams(n_a=0)
    with pytest.raises(ValueError):
        jc_numeric_effective(JcParams(n_max=1))


def test_vacuum_isometry():
    v = vacuum_isometry(JcParams())
    assert v.shape == (36, 4) and np.allclose(v.conj().T @ v, np.eye(4))


def test_coherence_matches_closed_form():
    js = np.linspace(0, 3, 7)
    for tau in (0.5, 1.0, 2.0):
        got = coherence_curve(js, tau)
        ref = [coherence_closed_form(j, tau, 1.0) for j in js]
        assert np.allclose(got, ref, rtol=0, atol=1e-10)


def test_concurrence_starts_maximal_and_rises_with_j():
    c = concurrence_curve(np.linspace(0, 5, 11), 1.0)
    assert np.all(np.diff(c) >= -1e-12)
    # zero elapsed time at fixed g leaves the Bell state untouched
    bell = np.zeros((4, 4), dtype=complex)
    bell[0, 0] = bell[3, 3] = bell[0, 3] = bell[3, 0] = 0.5
    p = JcParams(g_a=0.1, g_b=0.1, J=0.7)
    assert np.isclose(concurrence(effective_state(p, bell, 0.0)), 1.0)


def test_curves_cross_where_the_rates_swap():
    """At fixed J the effective decay rate 4 tau g^2 / (1 + 4 J^2 tau^2) is
    not monotone in tau: longer tau decays faster when 4 J^2 tau1 tau2 < 1."""
    rate = lambda j, tau: 4 * tau / (1 + 4 * (j * tau) ** 2)  # noqa: E731
    assert rate(0.0, 2.0) > rate(0.0, 1.0)
    assert rate(2.0, 2.0) < rate(2.0, 1.0)
    crossing = 1 / (2 * np.sqrt(1.0 * 2.0))
    assert np.isclose(rate(crossing, 1.0), rate(crossing, 2.0))
    low = coherence_curve([0.0, 2.0], 1.0)
    high = coherence_curve([0.0, 2.0], 2.0)
    assert low[0] > high[0] and low[1] < high[1]


def test_effective_states_are_physical():
    p = JcParams(g_a=0.2, g_b=0.3, J=0.4)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = rho0[3, 3] = rho0[0, 3] = rho0[3, 0] = 0.5
    for t in (0.0, 1.0, 10.0, 100.0):
        check_density_matrix(effective_state(p, rho0, t), tol=1e-9)
