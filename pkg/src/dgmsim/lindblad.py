"""Liouvillian assembly and exact propagation."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .numerics import expm, is_hermitian, sandwich_super, super_dim, trace_functional


def dissipator(ops: Sequence[tuple[np.ndarray, float]]) -> np.ndarray:
    """Sum over ``rate * (L X L^dag - {L^dag L, X}/2)`` as a superoperator."""
    ops = list(ops)
    if not ops:
        raise ValueError("dissipator needs at least one (operator, rate) pair")
    dim = np.asarray(ops[0][0]).shape[0]
    eye = np.eye(dim, dtype=complex)
    out = np.zeros((dim * dim, dim * dim), dtype=complex)
    for op, rate in ops:
        op = np.asarray(op, dtype=complex)
        if op.shape != (dim, dim):
            raise ValueError(f"Lindblad operator of shape {op.shape} in a dimension-{dim} dissipator")
        if rate < 0:
            raise ValueError(f"negative rate {rate}")
        ldl = op.conj().T @ op
        out += rate * (
            sandwich_super(op, op.conj().T) - 0.5 * sandwich_super(ldl, eye) - 0.5 * sandwich_super(eye, ldl)
        )
    return out


def hamiltonian_super(k: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """``X -> -i [K, X]``."""
    k = np.asarray(k, dtype=complex)
    if not is_hermitian(k, tol):
        raise ValueError("Hamiltonian is not Hermitian")
    eye = np.eye(k.shape[0], dtype=complex)
    return -1j * (sandwich_super(k, eye) - sandwich_super(eye, k))


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Hamiltonian plus Lindblad dissipators, with optional raw superoperator terms.

    ``dissipators`` holds ``(L_k, rate_k)`` pairs, rates as inverse times.
    ``extra`` carries already-assembled superoperators (used for perturbations
    that are not of plain Lindblad form, e.g. first-order jump-operator errors).
    """

    dim: int
    hamiltonian: np.ndarray | None = None
    dissipators: tuple[tuple[np.ndarray, float], ...] = ()
    extra: tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self):
        if self.hamiltonian is not None:
            h = np.asarray(self.hamiltonian)
            if h.shape != (self.dim, self.dim):
                raise ValueError(f"Hamiltonian shape {h.shape} does not match dim {self.dim}")
            if not is_hermitian(h):
                raise ValueError("Hamiltonian is not Hermitian")
        for op, rate in self.dissipators:
            if np.asarray(op).shape != (self.dim, self.dim):
                raise ValueError("Lindblad operator dimension mismatch")
            if rate < 0:
                raise ValueError(f"negative rate {rate}")
        for sup in self.extra:
            if super_dim(np.asarray(sup)) != self.dim:
                raise ValueError("extra superoperator dimension mismatch")

    @cached_property
    def matrix(self) -> np.ndarray:
        n = self.dim * self.dim
        out = np.zeros((n, n), dtype=complex)
        if self.hamiltonian is not None:
            out += hamiltonian_super(self.hamiltonian)
        if self.dissipators:
            out += dissipator(self.dissipators)
        for sup in self.extra:
            out += sup
        return out

    def __add__(self, other: "Liouvillian") -> "Liouvillian":
        if self.dim != other.dim:
            raise ValueError("cannot add Liouvillians of different dimension")
        if self.hamiltonian is None:
            h = other.hamiltonian
        elif other.hamiltonian is None:
            h = self.hamiltonian
        else:
            h = self.hamiltonian + other.hamiltonian
        return Liouvillian(self.dim, h, self.dissipators + other.dissipators, self.extra + other.extra)

    def trace_residual(self) -> float:
        return float(np.max(np.abs(trace_functional(self.dim) @ self.matrix), initial=0.0))


def as_matrix(gen) -> np.ndarray:
    """Accept a Liouvillian or a raw superoperator array."""
    if isinstance(gen, Liouvillian):
        return gen.matrix
    return np.asarray(gen)


def propagate(gen, t: float) -> np.ndarray:
    """``exp(t * L)``."""
    if t < 0:
        raise ValueError("propagation time must be non-negative")
    return expm(t * as_matrix(gen))
