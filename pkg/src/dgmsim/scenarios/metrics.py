"""State metrics: coherence, concurrence and distances."""
from __future__ import annotations

import numpy as np

from ..numerics import trace_norm
from ..spaces import pauli


class InvalidStateError(ValueError):
    pass


def check_density_matrix(rho: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidStateError(f"density matrix has trace {np.trace(rho).real:.6g}")
    if np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < -tol:
        raise InvalidStateError("density matrix is not positive semidefinite")
    return rho


def coherence(rho: np.ndarray, basis: np.ndarray | None = None) -> float:
    """l1-norm of coherence: sum of |rho_ij| over i != j, in ``basis`` (columns) if given."""
    rho = check_density_matrix(rho)
    if basis is not None:
        basis = np.asarray(basis, dtype=complex)
        rho = basis.conj().T @ rho @ basis
    off = np.abs(rho)
    return float(off.sum() - np.trace(off))


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit state.

    ``l_i`` are the decreasing eigenvalues of ``sqrt(sqrt(rho) rho~ sqrt(rho))``
    with ``rho~ = (Y x Y) rho* (Y x Y)``.
    """
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise InvalidStateError("concurrence needs a two-qubit (4x4) state")
    yy = np.kron(pauli("y"), pauli("y"))
    rho_tilde = yy @ rho.conj() @ yy
    root = _psd_sqrt(rho)
    inner = root @ rho_tilde @ root
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(0.5 * (inner + inner.conj().T)), 0.0, None))
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    return 0.5 * trace_norm(np.asarray(rho) - np.asarray(sigma))


def infidelity_to_pure(rho: np.ndarray, ket: np.ndarray) -> float:
    ket = np.asarray(ket, dtype=complex).reshape(-1)
    return float(1.0 - np.real(ket.conj() @ rho @ ket))
