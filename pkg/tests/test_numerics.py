import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dgmsim.numerics import (
    NumericalError,
    apply_product_super,
    apply_super,
    devectorize,
    expm,
    kron,
    sandwich_super,
    schur_sorted,
    solve_sylvester,
    spectral_norm,
    super_dim,
    super_kron,
    trace_functional,
    trace_norm,
    vectorize,
)


def taylor_expm(m, terms=30, squarings=8):
    """Independent oracle: truncated Taylor series with scaling and squaring."""
    a = m / 2.0 ** squarings
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def power_norm(m, iters=500):
    """Largest singular value by power iteration on m^H m."""
    v = np.ones(m.shape[1], dtype=complex)
    for _ in range(iters):
        v = m.conj().T @ (m @ v)
        v /= np.linalg.norm(v)
    return np.linalg.norm(m @ v)


def _cplx(shape):
    finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
    return st.tuples(arrays(float, shape, elements=finite), arrays(float, shape, elements=finite)).map(
        lambda p: p[0] + 1j * p[1]
    )


@given(_cplx((4, 4)))
def test_vectorize_round_trip(x):
    assert np.array_equal(devectorize(vectorize(x)), x)


def test_vectorize_is_column_stacking():
    x = np.arange(9).reshape(3, 3)
    v = vectorize(x)
    assert v[1] == x[1, 0] and v[3] == x[0, 1]


@given(_cplx((3, 3)), _cplx((3, 3)), _cplx((3, 3)))
def test_sandwich_super_matches_direct_product(a, b, x):
    assert np.allclose(apply_super(sandwich_super(a, b), x), a @ x @ b)


@given(_cplx((2, 2)), _cplx((2, 2)), _cplx((3, 3)), _cplx((3, 3)))
def test_kron_mixed_product(a, b, c, d):
    assert np.allclose(kron(a, c) @ kron(b, d), kron(a @ b, c @ d))


def test_sandwich_composition(rng):
    a, b, c, d = (rng.normal(size=(3, 3)) for _ in range(4))
    assert np.allclose(sandwich_super(a, b) @ sandwich_super(c, d), sandwich_super(a @ c, d @ b))


def test_super_kron_equals_sandwich_of_krons(rng):
    a, b = rng.normal(size=(2, 2)), rng.normal(size=(2, 2))
    c, d = rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
    lhs = super_kron((sandwich_super(a, b), 2), (sandwich_super(c, d), 3))
    assert np.allclose(lhs, sandwich_super(np.kron(a, c), np.kron(b, d)))


def test_apply_product_super_matches_super_kron(rng):
    facs = [(rng.normal(size=(d * d, d * d)) + 1j * rng.normal(size=(d * d, d * d)), d) for d in (2, 3, 2)]
    x = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    assert np.allclose(apply_product_super(facs, x), apply_super(super_kron(*facs), x))


def test_super_kron_rejects_wrong_dim():
    with pytest.raises(ValueError):
        super_kron((np.eye(4), 3))


def test_super_dim():
    assert super_dim(np.eye(16)) == 4
    with pytest.raises(ValueError):
        super_dim(np.eye(5))


def test_trace_functional(rng):
    x = rng.normal(size=(4, 4))
    assert np.isclose(trace_functional(4) @ vectorize(x), np.trace(x))


@pytest.mark.parametrize("scale", [0.1, 1.0, 8.0])
def test_expm_matches_taylor_oracle(rng, scale):
    m = scale * (rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    ref = taylor_expm(m, terms=40, squarings=12)
    assert np.linalg.norm(expm(m) - ref) <= 1e-10 * max(1.0, np.linalg.norm(ref))


def test_expm_of_nilpotent_is_exact():
    n = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
    assert np.allclose(expm(n), np.eye(3) + n + n @ n / 2)


def test_expm_rejects_non_square():
    with pytest.raises(ValueError):
        expm(np.ones((2, 3)))


def test_spectral_norm_matches_power_iteration(rng):
    m = rng.normal(size=(7, 5)) + 1j * rng.normal(size=(7, 5))
    assert np.isclose(spectral_norm(m), power_norm(m), rtol=1e-9)


def test_trace_norm_of_hermitian(rng):
    h = rng.normal(size=(4, 4))
    h = h + h.T
    assert np.isclose(trace_norm(h), np.sum(np.abs(np.linalg.eigvalsh(h))))


def test_schur_sorted_puts_selection_first(rng):
    m = np.diag([3.0, -1.0, 0.0, 2.0]) + np.triu(rng.normal(size=(4, 4)), 1)
    q, t, k = schur_sorted(m, lambda lam: abs(lam) < 1.5)
    assert k == 2
    assert np.allclose(q @ t @ q.conj().T, m)
    assert np.all(np.abs(np.diag(t)[:k]) < 1.5)


def test_solve_sylvester_residual(rng):
    a = np.triu(rng.normal(size=(3, 3))) + 5 * np.eye(3)
    b = np.triu(rng.normal(size=(2, 2)))
    c = rng.normal(size=(3, 2))
    x = solve_sylvester(a, b, c)
    assert np.allclose(a @ x - x @ b, c)


def test_solve_sylvester_rejects_overlapping_spectra():
    with pytest.raises(NumericalError):
        solve_sylvester(np.eye(2), np.eye(2), np.ones((2, 2)))
