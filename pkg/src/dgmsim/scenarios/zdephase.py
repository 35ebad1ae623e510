"""Population transfer between two z-dephasing modules (one qubit each).

Starting from ``|0><0| (x) |1><1|`` the collective hopping ``g (S^+ S^- + h.c.)``
acts at second order and relaxes the populations of ``|01>`` and ``|10>``
towards each other.  With ``S^z = sigma^z / 2`` at rate ``1/tau`` the second-order
generator on ``rho_ss(a) (x) rho_ss(b)`` is

    -2 tau g^2 (a - b) (|01><01| - |10><10|)

so ``p(|01>) = (1 + exp(-4 T g^2 tau)) / 2``.  The commonly quoted form with
``exp(-2 T g^2 tau)`` (half the rate) is kept as ``quoted_*`` for comparison;
it corresponds to doubling the dephasing rate.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..lindblad import Liouvillian, hamiltonian_super
from ..network import DgmNetwork, Edge, Vertex, global_projector
from ..numerics import devectorize, expm, vectorize
from ..projector import reduced_resolvent
from ..spaces import basis_ket, projector
from .metrics import trace_distance


def zdephase_network(tau: float, g: float) -> DgmNetwork:
    return DgmNetwork(
        (Vertex("zdephase", tau, qubits=1), Vertex("zdephase", tau, qubits=1)),
        (Edge(0, 1, "collective_hop", g),),
    )


def initial_state() -> np.ndarray:
    return projector(basis_ket("01"))


def _populations(rate: float) -> tuple[float, float]:
    decay = np.exp(-rate)
    return 0.5 * (1.0 + decay), 0.5 * (1.0 - decay)


def effective_populations(g: float, tau: float, t: float) -> tuple[float, float]:
    return _populations(4.0 * t * g * g * tau)


def quoted_populations(g: float, tau: float, t: float) -> tuple[float, float]:
    return _populations(2.0 * t * g * g * tau)


def _mixture(p01: float, p10: float) -> np.ndarray:
    return p01 * projector(basis_ket("01")) + p10 * projector(basis_ket("10"))


def effective_state(g: float, tau: float, t: float) -> np.ndarray:
    return _mixture(*effective_populations(g, tau, t))


def quoted_state(g: float, tau: float, t: float) -> np.ndarray:
    return _mixture(*quoted_populations(g, tau, t))


def generator_action(g: float, tau: float, a: float, b: float, quoted: bool = False) -> np.ndarray:
    """Closed-form second-order generator on ``rho_ss(a) (x) rho_ss(b)``."""
    c = 1.0 if quoted else 2.0
    return -c * tau * g * g * (a - b) * (projector(basis_ket("01")) - projector(basis_ket("10")))


def steady_product(a: float, b: float) -> np.ndarray:
    rho_a = np.diag([a, 1.0 - a]).astype(complex)
    rho_b = np.diag([b, 1.0 - b]).astype(complex)
    return np.kron(rho_a, rho_b)


def numeric_generator(g: float, tau: float) -> np.ndarray:
    """``-P0 K S K P0`` for the physical coupling ``g``."""
    net = zdephase_network(tau, g)
    l0 = net.unperturbed().matrix
    p0 = global_projector(net)
    s = reduced_resolvent(l0, p0)
    k = hamiltonian_super(net.coupling_hamiltonian())
    return -(p0 @ k @ s @ k @ p0)


def zdephasing_scenario(g: float, tau: float, t: float) -> tuple[Liouvillian, np.ndarray]:
    """Full Liouvillian (physical ``g``) and the closed-form effective state at time ``t``."""
    if min(g, tau, t) <= 0:
        raise ValueError("g, tau and T must be positive")
    net = zdephase_network(tau, g)
    full = net.unperturbed() + Liouvillian(net.dim, hamiltonian=net.coupling_hamiltonian())
    return full, effective_state(g, tau, t)


@dataclass(eq=False)
class ZdephaseStateError:
    """Trace distance of the exact state to the effective one with ``T g^2`` fixed.

    ``quoted=True`` measures against the half-rate closed form instead.
    """

    tau: float = 1.0
    tg2: float = 1.0
    quoted: bool = False

    def __post_init__(self):
        net = zdephase_network(self.tau, 1.0)
        self._l0 = net.unperturbed().matrix
        self._k = hamiltonian_super(np.sqrt(self.tg2) * net.coupling_hamiltonian())
        self._start = vectorize(initial_state())
        # T g^2 is fixed, so the target does not depend on T
        state = quoted_state if self.quoted else effective_state
        self._target = state(np.sqrt(self.tg2), self.tau, 1.0)

    def full_state(self, t: float) -> np.ndarray:
        return devectorize(expm(t * self._l0 + np.sqrt(t) * self._k) @ self._start, 4)

    def effective_state(self) -> np.ndarray:
        return self._target

    def error(self, t: float) -> float:
        return trace_distance(self.full_state(t), self._target)
