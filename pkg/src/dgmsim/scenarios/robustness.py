"""Encoding errors that the steady-state projector removes at first order.

Two DFS modules (two qubits each, collective damping) are coupled by the
hopping control.  An error Hamiltonian

    V = sum_{alpha,beta in {e0,e1}, i,j in {0,1}} zeta[alpha,beta,i,j] |alpha><i| (x) |beta><j| + h.c.

only connects the logical space to the excited triplet states, so
``Pi12 V Pi12 = 0``.  The same ``V`` used as a Lindblad-operator error
(``eta_i = V``) gives an ``L1`` with ``P0 L1 P0 = 0``.  Both are added at the
same ``1/T`` scale as the control and leave the effective dynamics unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..effective import ScalingProblem, SweepResult, default_time_grid, first_order_generator, scaling_sweep
from ..lindblad import hamiltonian_super
from ..network import global_projector
from ..numerics import kron, sandwich_super, spectral_norm
from ..spaces import SpaceLayout, collective, dfs_basis, embed, triplet_excited
from .dfs import dfs_pair_network, logical_generators

KINDS = ("hamiltonian", "lindbladian")


@dataclass(frozen=True, eq=False)
class ErrorMatrix:
    """Coefficients ``zeta[alpha, beta, i, j]`` with a common modulus and random phases."""

    zeta: np.ndarray
    magnitude: float
    seed: int | None = None

    def __post_init__(self):
        z = np.asarray(self.zeta, dtype=complex)
        if z.shape != (2, 2, 2, 2):
            raise ValueError(f"error matrix must have shape (2, 2, 2, 2), got {z.shape}")
        if self.magnitude < 0:
            raise ValueError("magnitude must be non-negative")
        if not np.allclose(np.abs(z), self.magnitude, atol=1e-12):
            raise ValueError("all entries must share the stated magnitude")
        object.__setattr__(self, "zeta", z)

    @classmethod
    def sample(cls, magnitude: float, seed: int, stream: int = 0) -> "ErrorMatrix":
        """Phases uniform on [0, 2pi) from the stream ``(seed, stream)``."""
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))
        phases = rng.uniform(0.0, 2.0 * np.pi, size=(2, 2, 2, 2))
        return cls(magnitude * np.exp(1j * phases), float(magnitude), seed)

    @classmethod
    def zero(cls) -> "ErrorMatrix":
        return cls(np.zeros((2, 2, 2, 2), dtype=complex), 0.0)


def hamiltonian_error(zeta: ErrorMatrix) -> np.ndarray:
    """The error Hamiltonian ``V`` on the 16-dimensional two-module space."""
    logical = dfs_basis(2).vectors
    excited = np.stack(triplet_excited(), axis=1)
    v = np.zeros((16, 16), dtype=complex)
    for a in range(2):
        for b in range(2):
            for i in range(2):
                for j in range(2):
                    c = zeta.zeta[a, b, i, j]
                    if c == 0:
                        continue
                    left = np.outer(excited[:, a], logical[:, i].conj())
                    right = np.outer(excited[:, b], logical[:, j].conj())
                    v += c * kron(left, right)
    return v + v.conj().T


def module_lowerings() -> list[np.ndarray]:
    lay = SpaceLayout.qubits(2, 2)
    return [embed(collective("-", 2), list(lay.module_positions(m)), lay) for m in range(2)]


def lindblad_error(zeta: ErrorMatrix, rates: Sequence[float] = (1.0, 1.0)) -> np.ndarray:
    """``L1(rho) = sum_i (eta rho L_i^dag - 1/2 {L_i^dag eta, rho}) + h.c.`` with ``eta = V``.

    ``L_i = sqrt(rate_i) S^-_i`` matches the unperturbed collective damping.
    """
    eta = hamiltonian_error(zeta)
    eye = np.eye(16, dtype=complex)
    out = np.zeros((256, 256), dtype=complex)
    for low, rate in zip(module_lowerings(), rates):
        lo = np.sqrt(rate) * low
        ld = lo.conj().T
        half = sandwich_super(eta, ld) - 0.5 * (sandwich_super(ld @ eta, eye) + sandwich_super(eye, ld @ eta))
        # (M(rho))^dag for Hermitian rho: conj-transposed factors, swapped sides
        mirror = sandwich_super(lo, eta.conj().T) - 0.5 * (
            sandwich_super(eye, eta.conj().T @ lo) + sandwich_super(eta.conj().T @ lo, eye)
        )
        out += half + mirror
    return out


def logical_projector_pair() -> np.ndarray:
    p = dfs_basis(2).projector
    return kron(p, p)


def structural_residuals(zeta: ErrorMatrix) -> dict[str, float]:
    """``||Pi12 V Pi12||`` and ``||P0 L1 P0||`` (spectral norms)."""
    pi = logical_projector_pair()
    v = hamiltonian_error(zeta)
    p0 = global_projector(dfs_pair_network(1.0, 1.0))
    l1 = lindblad_error(zeta)
    return {
        "pi_v_pi": spectral_norm(pi @ v @ pi),
        "p0_l1_p0": spectral_norm(p0 @ l1 @ p0),
    }


def robustness_problem(kind: str, zeta: ErrorMatrix, g_t: float = 2.0,
                       tau1: float = 1.0, tau2: float = 1.0) -> ScalingProblem:
    """First-order problem with the hopping control plus an encoding error.

    The effective generator is always the error-free ``P0 Ktilde P0``.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    net = dfs_pair_network(tau1, tau2)
    l0 = net.unperturbed().matrix
    p0 = global_projector(net)
    k = hamiltonian_super(logical_generators(g_t)["entangling"].physical)
    if kind == "hamiltonian":
        pert = hamiltonian_super(hamiltonian_error(zeta))
    else:
        pert = lindblad_error(zeta, (1.0 / tau1, 1.0 / tau2))
    return ScalingProblem(l0=l0, k_tilde=k, p0=p0, order=1,
                          effective=first_order_generator(k, p0), perturbation_tilde=pert)


def robustness_sweep(kind: str, magnitudes: Sequence[float] = (0.5, 1.0), seed: int = 0,
                     times: Sequence[float] | None = None, fit_points: int | None = None,
                     g_t: float = 2.0) -> list[SweepResult]:
    """Reference (zeta = 0) sweep followed by one sweep per nonzero magnitude."""
    times = default_time_grid() if times is None else times
    out = [scaling_sweep(robustness_problem(kind, ErrorMatrix.zero(), g_t), times, fit_points, label="zeta=0")]
    for idx, mag in enumerate(magnitudes):
        if mag <= 0:
            raise ValueError("magnitudes must be positive; the zero reference is always included")
        zeta = ErrorMatrix.sample(mag, seed, stream=idx)
        out.append(scaling_sweep(robustness_problem(kind, zeta, g_t), times, fit_points, label=f"|zeta|={mag:g}"))
    return out
