"""Zero-eigenvalue spectral projector, reduced resolvent and time-scale of a Liouvillian."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .lindblad import as_matrix
from .numerics import (
    NumericalError,
    expm,
    schur_sorted,
    solve_sylvester,
    spectral_norm,
    super_dim,
    trace_functional,
)

DEFAULT_ZERO_TOL = 1e-9


def _zero_threshold(l0: np.ndarray, tol: float) -> tuple[float, float]:
    scale = spectral_norm(l0)
    return scale, tol * scale


def steady_projector(l0, tol: float = DEFAULT_ZERO_TOL) -> tuple[np.ndarray, int]:
    """Spectral projector onto the kernel of ``l0`` and the kernel dimension.

    The eigenvalues with ``|lambda| < tol * ||l0||`` are moved to the leading
    block of a sorted complex Schur form ``T = [[T11, T12], [0, T22]]``.  The
    coupling block is removed by ``Z = [[I, X], [0, I]]`` with
    ``T11 X - X T22 = -T12``, giving ``P0 = Q [[I, -X], [0, 0]] Q^H``.  The
    result is a (generally oblique) projector; no diagonalizability of the
    decaying sector is assumed.
    """
    l0 = np.asarray(as_matrix(l0), dtype=complex)
    n = l0.shape[0]
    scale, thresh = _zero_threshold(l0, tol)
    if scale == 0.0:
        return np.eye(n, dtype=complex), n
    q, t, k = schur_sorted(l0, lambda lam: abs(lam) < thresh)
    if k == 0:
        raise NumericalError("Liouvillian has no eigenvalue in the zero cluster")
    if k == n:
        return np.eye(n, dtype=complex), n
    t11, t12, t22 = t[:k, :k], t[:k, k:], t[k:, k:]
    x = solve_sylvester(t11, t22, -t12, gap_tol=thresh)
    block = np.zeros((n, n), dtype=complex)
    block[:k, :k] = np.eye(k)
    block[:k, k:] = -x
    return q @ block @ q.conj().T, k


def reduced_resolvent(l0, p0: np.ndarray) -> np.ndarray:
    """``S = Q0 (L0 + P0)^-1 Q0``; ``L0 + P0`` is invertible when ``P0`` is the kernel projector."""
    l0 = np.asarray(as_matrix(l0), dtype=complex)
    n = l0.shape[0]
    q0 = np.eye(n) - p0
    try:
        inner = np.linalg.solve(l0 + p0, q0)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"L0 + P0 is singular: {exc}") from exc
    if not np.all(np.isfinite(inner)):
        raise NumericalError("L0 + P0 is numerically singular")
    return q0 @ inner


def resolvent_by_quadrature(l0, p0: np.ndarray, apply_to: np.ndarray | None = None,
                            epsabs: float = 1e-10, epsrel: float = 1e-8) -> np.ndarray:
    """``-int_0^inf exp(t L0) Q0 dt`` by adaptive quadrature.

    Independent of :func:`reduced_resolvent`; used only as a cross-check.
    ``apply_to`` restricts the integral to ``S @ apply_to`` to save work.
    """
    l0 = np.asarray(as_matrix(l0), dtype=complex)
    n = l0.shape[0]
    q0 = np.eye(n) - p0
    rhs = q0 if apply_to is None else q0 @ apply_to

    def integrand(t):
        return -(expm(t * l0) @ rhs)

    value, _err = integrate.quad_vec(integrand, 0.0, np.inf, epsabs=epsabs, epsrel=epsrel)
    return value


def ergodic_projector(l0, t_avg: float, samples: int = 4000) -> np.ndarray:
    """Time average of ``exp(t L0)`` over ``[0, t_avg]`` (trapezoid rule, uniform grid)."""
    l0 = np.asarray(as_matrix(l0), dtype=complex)
    n = l0.shape[0]
    if not np.any(l0):
        return np.eye(n, dtype=complex)
    dt = t_avg / samples
    step = expm(dt * l0)
    current = np.eye(n, dtype=complex)
    total = 0.5 * current
    for _ in range(samples - 1):
        current = step @ current
        total += current
    current = step @ current
    total += 0.5 * current
    return total / samples


def dissipative_timescale(l0, tol: float = DEFAULT_ZERO_TOL) -> float:
    """``1 / min |Re lambda|`` over the eigenvalues outside the zero cluster."""
    l0 = np.asarray(as_matrix(l0), dtype=complex)
    _scale, thresh = _zero_threshold(l0, tol)
    lam = np.linalg.eigvals(l0)
    rest = lam[np.abs(lam) >= thresh]
    if rest.size == 0:
        raise NumericalError("every eigenvalue lies in the zero cluster")
    slowest = np.min(np.abs(rest.real))
    if slowest == 0.0:
        return float("inf")
    return float(1.0 / slowest)


@dataclass(frozen=True, eq=False)
class SteadyStructure:
    l0: np.ndarray
    p0: np.ndarray
    q0: np.ndarray
    s: np.ndarray
    tau: float
    kernel_dim: int

    @property
    def dim(self) -> int:
        return super_dim(self.l0)

    def residuals(self) -> dict[str, float]:
        """Spectral-norm residuals of the defining identities.

        Entries involving ``L0`` once are divided by ``||L0||``; ``S`` enters
        multiplied by ``L0`` so those are dimensionless already.
        """
        n = self.l0.shape[0]
        scale = spectral_norm(self.l0) or 1.0
        tr = trace_functional(self.dim)
        eye = np.eye(n)
        return {
            "P0^2 - P0": spectral_norm(self.p0 @ self.p0 - self.p0),
            "P0 L0": spectral_norm(self.p0 @ self.l0) / scale,
            "L0 P0": spectral_norm(self.l0 @ self.p0) / scale,
            "S L0 - Q0": spectral_norm(self.s @ self.l0 - self.q0),
            "L0 S - Q0": spectral_norm(self.l0 @ self.s - self.q0),
            "P0 S": spectral_norm(self.p0 @ self.s) * scale,
            "S P0": spectral_norm(self.s @ self.p0) * scale,
            "Q0 - (1 - P0)": spectral_norm(self.q0 - (eye - self.p0)),
            "tr P0 - tr": float(np.linalg.norm(tr @ self.p0 - tr)),
        }


def steady_structure(l0, tol: float = DEFAULT_ZERO_TOL) -> SteadyStructure:
    l0 = np.asarray(as_matrix(l0), dtype=complex)
    p0, k = steady_projector(l0, tol)
    s = reduced_resolvent(l0, p0)
    n = l0.shape[0]
    tau = dissipative_timescale(l0, tol) if k < n else float("inf")
    return SteadyStructure(l0=l0, p0=p0, q0=np.eye(n) - p0, s=s, tau=tau, kernel_dim=k)
