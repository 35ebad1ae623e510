"""Dense complex linear algebra shared by every other module.

Operators are plain ``numpy`` arrays.  Superoperators are ``(D*D, D*D)``
arrays acting on column-stacked operators: ``vec(X)[i + j*D] = X[i, j]``.
Under that convention ``X -> A X B`` is the matrix ``kron(B.T, A)``.
"""
from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.linalg as sla


class NumericalError(RuntimeError):
    """A decomposition or linear solve could not be carried out reliably."""


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*ops: np.ndarray) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def vectorize(x: np.ndarray) -> np.ndarray:
    """Column-stack a square matrix into a 1-D vector of length ``D*D``."""
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"vectorize expects a square matrix, got shape {x.shape}")
    return x.reshape(-1, order="F")


def devectorize(v: np.ndarray, dim: int | None = None) -> np.ndarray:
    v = np.asarray(v).reshape(-1)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    if dim * dim != v.size:
        raise ValueError(f"vector of length {v.size} is not a {dim}x{dim} operator")
    return v.reshape((dim, dim), order="F")


def super_dim(superop: np.ndarray) -> int:
    """Hilbert dimension D of a ``(D*D, D*D)`` superoperator."""
    n = superop.shape[0]
    d = int(round(np.sqrt(n)))
    if superop.ndim != 2 or superop.shape[1] != n or d * d != n:
        raise ValueError(f"not a superoperator shape: {superop.shape}")
    return d


def sandwich_super(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of ``X -> a @ X @ b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"sandwich_super needs equal square factors, got {a.shape} and {b.shape}")
    return np.kron(b.T, a)


def apply_super(superop: np.ndarray, x: np.ndarray) -> np.ndarray:
    return devectorize(superop @ vectorize(x), x.shape[0])


def trace_functional(dim: int) -> np.ndarray:
    """Row vector ``t`` with ``t @ vec(X) == trace(X)``."""
    return vectorize(np.eye(dim)).astype(complex)


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling and squaring with a degree-13 Pade kernel)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expm expects a square matrix, got shape {m.shape}")
    return sla.expm(m)


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def trace_norm(m: np.ndarray) -> float:
    return float(np.sum(np.linalg.svd(np.asarray(m), compute_uv=False)))


def schur_sorted(
    m: np.ndarray, predicate: Callable[[complex], bool]
) -> tuple[np.ndarray, np.ndarray, int]:
    """Complex Schur form ``m = Q T Q^H`` with the selected eigenvalues leading.

    Returns ``(Q, T, k)`` where the eigenvalues for which ``predicate`` holds
    occupy ``T[:k, :k]``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"schur_sorted expects a square matrix, got shape {m.shape}")
    try:
        t, q, k = sla.schur(m, output="complex", sort=lambda lam: bool(predicate(lam)))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"Schur decomposition failed: {exc}") from exc
    return q, t, int(k)


def solve_sylvester(a: np.ndarray, b: np.ndarray, c: np.ndarray, gap_tol: float = 0.0) -> np.ndarray:
    """Solve ``a X - X b = c``.

    Raises NumericalError when the spectra of ``a`` and ``b`` are closer than
    ``gap_tol`` (or coincide), since the equation is then ill-posed.
    """
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    b = np.atleast_2d(np.asarray(b, dtype=complex))
    c = np.atleast_2d(np.asarray(c, dtype=complex))
    if c.shape != (a.shape[0], b.shape[0]):
        raise ValueError(f"incompatible shapes {a.shape}, {b.shape}, {c.shape}")
    if c.size == 0:
        return np.zeros_like(c)
    ea = _eigvals(a)
    eb = _eigvals(b)
    sep = np.min(np.abs(ea[:, None] - eb[None, :]))
    if sep <= gap_tol or sep == 0.0:
        raise NumericalError(f"Sylvester equation ill-posed: spectral separation {sep:.3e}")
    if not np.any(c):
        return np.zeros_like(c)
    x = sla.solve_sylvester(a, -b, c)
    return x


def _eigvals(m: np.ndarray) -> np.ndarray:
    if np.allclose(np.tril(m, -1), 0.0):
        return np.diag(m).copy()
    return np.linalg.eigvals(m)


def is_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol * scale)


def super_kron(*factors: tuple[np.ndarray, int]) -> np.ndarray:
    """Superoperator of the tensor product of maps on ordered subsystems.

    ``factors`` is a sequence of ``(superop, dim)``.  The plain Kronecker
    product of superoperators acts on ``vec(X) (x) vec(Y)``, which is a
    permutation of ``vec(X (x) Y)``; this routine applies that permutation.

    With column stacking, a superoperator ``A`` on dimension ``d`` reshaped
    C-order to ``(d, d, d, d)`` is indexed ``[j', i', j, i]`` for the map
    ``|i><j| -> sum A[...] |i'><j'|``.  Two factors combine by interleaving
    their axes: ``(a,b,c,d) x (e,f,g,h) -> (a,e,b,f,c,g,d,h)``.
    """
    out, d_out = None, 1
    for sup, d in factors:
        sup = np.asarray(sup)
        if sup.shape != (d * d, d * d):
            raise ValueError(f"superoperator shape {sup.shape} does not match dim {d}")
        if out is None:
            out, d_out = sup.astype(complex), d
            continue
        a4 = out.reshape(d_out, d_out, d_out, d_out)
        b4 = sup.reshape(d, d, d, d)
        c8 = np.einsum("abcd,efgh->aebfcgdh", a4, b4)
        d_out *= d
        out = c8.reshape(d_out * d_out, d_out * d_out)
    if out is None:
        return np.ones((1, 1), dtype=complex)
    return out


def apply_product_super(factors: list[tuple[np.ndarray, int]], x: np.ndarray) -> np.ndarray:
    """Apply the tensor product of local superoperators to ``x`` without forming it.

    Equivalent to ``apply_super(super_kron(*factors), x)``; useful when the
    global superoperator would be too large to store.
    """
    dims = [d for _, d in factors]
    n = len(dims)
    total = int(np.prod(dims))
    x = np.asarray(x, dtype=complex)
    if x.shape != (total, total):
        raise ValueError(f"operator shape {x.shape} does not match dims {dims}")
    t = x.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows, cols = letters[:n], letters[n:2 * n]
    for m, (sup, d) in enumerate(factors):
        a4 = np.asarray(sup).reshape(d, d, d, d)  # [j', i', j, i]
        new_r, new_c = "Y", "Z"
        src = rows + cols
        dst = rows[:m] + new_r + rows[m + 1:] + cols[:m] + new_c + cols[m + 1:]
        t = np.einsum(f"{new_c}{new_r}{cols[m]}{rows[m]},{src}->{dst}", a4, t)
    return t.reshape(total, total)
