"""CNOT from seven dissipatively generated logical gates, and Bell-state preparation.

Gate order (application order, i.e. right to left in the circuit product)::

    Y1(pi/2), S_i, X1(pi), S_i, X1(pi/2), X2(-pi/2), Y1(-pi/2)

Every segment runs for ``T/7`` under the collective damping of both modules
plus its own control Hamiltonian ``Ktilde / (T/7)``, so that the effective
first-order map of each segment is exactly the ideal logical gate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..lindblad import hamiltonian_super
from ..network import DgmNetwork, global_projector
from ..numerics import apply_super, devectorize, expm, vectorize
from ..spaces import SpaceLayout, embed, pauli, projector
from .dfs import SQRT2, dfs_pair_network, logical_isometry
from .metrics import infidelity_to_pure, trace_distance

_LOGICAL_X = np.array([[0, 1], [1, 0]], dtype=complex)
_LOGICAL_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_EYE2 = np.eye(2, dtype=complex)


def sqisw() -> np.ndarray:
    """Square root of iSWAP in the basis ``|00>, |01>, |10>, |11>`` (logical)."""
    s = 1.0 / SQRT2
    return np.array(
        [[1, 0, 0, 0], [0, s, -1j * s, 0], [0, -1j * s, s, 0], [0, 0, 0, 1]], dtype=complex
    )


def rotation(axis: str, theta: float) -> np.ndarray:
    gen = {"x": _LOGICAL_X, "y": _LOGICAL_Y}[axis]
    return np.cos(theta / 2) * _EYE2 - 1j * np.sin(theta / 2) * gen


def cnot_matrix() -> np.ndarray:
    return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class GateSegment:
    label: str
    physical: np.ndarray     # O(1) control Hamiltonian, applied as physical / (T/7)
    logical: np.ndarray      # ideal 4x4 logical unitary
    duration_fraction: float = 1.0 / 7.0


def _single_qubit_segment(axis: str, module: int, theta: float, layout: SpaceLayout) -> GateSegment:
    # sqrt2 * sigma on qubit 2 of a module projects onto the logical Pauli
    pos = layout.position(module, 1)
    k = (theta / 2) * SQRT2 * embed(pauli(axis), [pos], layout)
    rot = rotation(axis, theta)
    logical = np.kron(rot, _EYE2) if module == 0 else np.kron(_EYE2, rot)
    return GateSegment(f"{axis.upper()}{module + 1}({theta / np.pi:+.2g}pi)", k, logical)


def _sqisw_segment(layout: SpaceLayout) -> GateSegment:
    # The hopping term with strength g yields -g/2 on the swap pair, so the
    # printed S_i (coefficient -i/sqrt2) needs g = -pi/2.
    hop = np.kron(pauli("+"), pauli("-")) + np.kron(pauli("-"), pauli("+"))
    k = -(np.pi / 2) * embed(hop, [layout.position(0, 1), layout.position(1, 0)], layout)
    return GateSegment("S_i", k, sqisw())


def cnot_sequence() -> list[GateSegment]:
    """The seven segments in application order."""
    lay = SpaceLayout.qubits(2, 2)
    pi = np.pi
    return [
        _single_qubit_segment("y", 0, pi / 2, lay),
        _sqisw_segment(lay),
        _single_qubit_segment("x", 0, pi, lay),
        _sqisw_segment(lay),
        _single_qubit_segment("x", 0, pi / 2, lay),
        _single_qubit_segment("x", 1, -pi / 2, lay),
        _single_qubit_segment("y", 0, -pi / 2, lay),
    ]


def ideal_product(segments: list[GateSegment] | None = None) -> np.ndarray:
    u = np.eye(4, dtype=complex)
    for seg in segments or cnot_sequence():
        u = seg.logical @ u
    return u


def gate_fidelity(u: np.ndarray, target: np.ndarray) -> float:
    """``|tr(target^dag u)| / d``; equals 1 iff equal up to global phase."""
    return float(abs(np.trace(target.conj().T @ u)) / u.shape[0])


def bell_initial_logical() -> np.ndarray:
    plus = np.array([1, 1], dtype=complex) / SQRT2
    return np.kron(plus, np.array([1, 0], dtype=complex))


def bell_target_logical() -> np.ndarray:
    return np.array([1, 0, 0, 1], dtype=complex) / SQRT2


@dataclass(eq=False)
class BellPreparation:
    """Exact dissipative evolution through the seven segments.

    ``error(T)`` is the trace distance to the target Bell state; with
    ``metric="infidelity"`` it is ``1 - <psi+|rho|psi+>`` instead.
    """

    tau1: float = 1.0
    tau2: float = 1.0
    metric: str = "trace"
    network: DgmNetwork = field(init=False)

    def __post_init__(self):
        if self.metric not in ("trace", "infidelity"):
            raise ValueError(f"unknown metric {self.metric!r}")
        self.network = dfs_pair_network(self.tau1, self.tau2)
        self._l0 = self.network.unperturbed().matrix
        self._segments = cnot_sequence()
        self._k = [hamiltonian_super(seg.physical) for seg in self._segments]
        self._iso = logical_isometry(2, 2)
        self.rho0 = projector(self._iso @ bell_initial_logical())
        self.target_ket = self._iso @ bell_target_logical()

    def final_state(self, t: float) -> np.ndarray:
        v = vectorize(self.rho0)
        for k, seg in zip(self._k, self._segments):
            dt = seg.duration_fraction * t
            v = expm(dt * self._l0 + k) @ v
        return devectorize(v, self.network.dim)

    def effective_state(self) -> np.ndarray:
        """Composition of the first-order effective maps ``exp(P0 K P0)``."""
        p0 = global_projector(self.network)
        rho = self.rho0
        for k in self._k:
            rho = apply_super(expm(p0 @ k @ p0), rho)
        return rho

    def ideal_state(self) -> np.ndarray:
        ket = self._iso @ (ideal_product(self._segments) @ bell_initial_logical())
        return projector(ket)

    def distance(self, rho: np.ndarray) -> float:
        if self.metric == "trace":
            return trace_distance(rho, projector(self.target_ket))
        return infidelity_to_pure(rho, self.target_ket)

    def error(self, t: float) -> float:
        return self.distance(self.final_state(t))


def bell_prep_error(t: float, tau1: float = 1.0, tau2: float = 1.0, metric: str = "trace") -> float:
    return BellPreparation(tau1, tau2, metric).error(t)
