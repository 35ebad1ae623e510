"""Collective-amplitude-damping modules and the logical gates they support.

Each module of two (three) qubits has a two (three) dimensional DFS.  Control
Hamiltonians are projected onto the DFS at first order; the helpers here
build the physical Hamiltonians, their expected logical generators, and the
numerical restriction of ``P0 K P0`` to the logical operator space.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..effective import ScalingProblem
from ..lindblad import hamiltonian_super
from ..network import DgmNetwork, Edge, Vertex, global_projector
from ..numerics import apply_product_super, kron_all, vectorize
from ..projector import steady_projector
from ..spaces import SpaceLayout, dfs_basis, embed, pauli

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class LogicalCoupling:
    """A physical Hamiltonian and the logical generator it should induce.

    ``physical`` acts on ``n_modules`` modules of ``n_qubits`` qubits;
    ``logical`` is written in the product DFS basis (module 1 most significant).
    """

    name: str
    n_qubits: int
    n_modules: int
    physical: np.ndarray
    logical: np.ndarray


def logical_isometry(n_qubits: int, n_modules: int) -> np.ndarray:
    """Columns are the product DFS states ``|a b ...>`` in the physical basis."""
    v = dfs_basis(n_qubits).vectors
    return kron_all(*([v] * n_modules))


def logical_matrix(pairs: dict[tuple[int, int], complex], size: int) -> np.ndarray:
    m = np.zeros((size, size), dtype=complex)
    for (r, c), val in pairs.items():
        m[r, c] += val
    return m


def _two_module_ket(a: int, b: int, levels: int) -> int:
    return a * levels + b


def swap_generator(strength: float) -> np.ndarray:
    """``strength * (|0bar 1bar><1bar 0bar| + h.c.)`` in the ordered 2x2-module logical basis."""
    i01, i10 = _two_module_ket(0, 1, 2), _two_module_ket(1, 0, 2)
    return logical_matrix({(i01, i10): strength, (i10, i01): strength}, 4)


def logical_generators(g: float = 1.0) -> dict[str, LogicalCoupling]:
    """Physical controls on two-qubit DFS modules with their logical generators.

    Logical Paulis are ``sx = |1><0| + |0><1|``, ``sz = |1><1| - |0><0|`` and
    ``sy = i|1><0| - i|0><1|`` (bars dropped).  The inter-module logical forms
    are the ones these DFS states actually produce: the hopping term
    gives ``-g/2`` on the swap pair and ``sz_2 (x) sz_1`` gives ``g |1 1><1 1|``.
    """
    lay1 = SpaceLayout.qubits(2)
    lay2 = SpaceLayout.qubits(2, 2)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.diag([-1.0, 1.0]).astype(complex)
    out = {
        "x": LogicalCoupling("x", 2, 1, g * SQRT2 * embed(pauli("x"), [1], lay1), g * sx),
        "y": LogicalCoupling("y", 2, 1, g * SQRT2 * embed(pauli("y"), [1], lay1), g * sy),
        "z": LogicalCoupling("z", 2, 1, g * embed(np.kron(pauli("z"), pauli("z")), [0, 1], lay1), g * sz),
    }
    hop = np.kron(pauli("+"), pauli("-")) + np.kron(pauli("-"), pauli("+"))
    out["entangling"] = LogicalCoupling(
        "entangling", 2, 2, g * embed(hop, [1, 2], lay2), swap_generator(-g / 2)
    )
    out["zz"] = LogicalCoupling(
        "zz", 2, 2, g * embed(np.kron(pauli("z"), pauli("z")), [1, 2], lay2),
        logical_matrix({(3, 3): g}, 4),
    )
    return out


def quoted_logical_forms(g: float = 1.0) -> dict[str, np.ndarray]:
    """Commonly quoted inter-module forms, kept for comparison with the derived ones.

    ``+g/2`` on the swap pair for the hopping term and ``g |0 0><0 0|`` for
    ``sz_2 (x) sz_1``.  Neither matches ``P0 K P0`` in the DFS basis above.
    """
    return {"entangling": swap_generator(g / 2), "zz": logical_matrix({(0, 0): g}, 4)}


def three_qubit_coupling(g: float = 1.0) -> LogicalCoupling:
    """Hopping between qubit 3 of module 1 and qubit 1 of module 2 (three-qubit DFS modules).

    Induces ``g/sqrt3 (|2 0><1 2| + h.c.) - g/3 (|2 1><1 2| + h.c.)``.
    """
    lay = SpaceLayout.qubits(3, 3)
    hop = np.kron(pauli("+"), pauli("-")) + np.kron(pauli("-"), pauli("+"))
    k = g * embed(hop, [2, 3], lay)
    idx = lambda a, b: _two_module_ket(a, b, 3)  # noqa: E731
    a = g / np.sqrt(3.0)
    b = -g / 3.0
    logical = logical_matrix(
        {
            (idx(2, 0), idx(1, 2)): a, (idx(1, 2), idx(2, 0)): a,
            (idx(2, 1), idx(1, 2)): b, (idx(1, 2), idx(2, 1)): b,
        },
        9,
    )
    return LogicalCoupling("three_qubit", 3, 2, k, logical)


def dfs_vertex(n_qubits: int, tau: float) -> Vertex:
    return Vertex("dfs2" if n_qubits == 2 else "dfs3", tau)


def local_projectors(n_qubits: int, taus) -> list[tuple[np.ndarray, int]]:
    out = []
    for tau in taus:
        v = dfs_vertex(n_qubits, tau)
        p, _ = steady_projector(v.liouvillian().matrix)
        out.append((p, v.dim))
    return out


def orthogonal_restriction(coupling: LogicalCoupling) -> np.ndarray:
    """``Pi K Pi`` written in the logical basis."""
    v = logical_isometry(coupling.n_qubits, coupling.n_modules)
    return v.conj().T @ coupling.physical @ v


def projected_logical_superop(coupling: LogicalCoupling, taus=None) -> np.ndarray:
    """``P0 (-i[K, .]) P0`` restricted to logical operators, as a superoperator on them.

    ``P0`` is the product of the numerically computed local projectors, applied
    lazily so three-qubit pairs never materialize the 4096x4096 superoperator.
    """
    if taus is None:
        taus = [1.0] * coupling.n_modules
    factors = local_projectors(coupling.n_qubits, taus)
    v = logical_isometry(coupling.n_qubits, coupling.n_modules)
    size = v.shape[1]
    k = coupling.physical
    cols = []
    for c in range(size):
        for r in range(size):
            e = np.outer(v[:, r], v[:, c].conj())
            x = apply_product_super(factors, e)
            y = -1j * (k @ x - x @ k)
            z = apply_product_super(factors, y)
            cols.append(vectorize(v.conj().T @ z @ v))
    return np.stack(cols, axis=1)


def expected_logical_superop(coupling: LogicalCoupling) -> np.ndarray:
    return hamiltonian_super(coupling.logical)


def dfs_pair_network(tau1: float = 1.0, tau2: float = 0.5, n_qubits: int = 2) -> DgmNetwork:
    return DgmNetwork((dfs_vertex(n_qubits, tau1), dfs_vertex(n_qubits, tau2)))


def fig2_problem(coupling: str = "entangling", tau1: float = 1.0, tau2: float = 0.5,
                 g_t: float = 1.0) -> ScalingProblem:
    """First-order problem for the two-module network with ``gT`` held fixed."""
    if coupling not in ("entangling", "zz"):
        raise ValueError(f"fig2 coupling must be 'entangling' or 'zz', got {coupling!r}")
    net = dfs_pair_network(tau1, tau2)
    k = logical_generators(g_t)[coupling].physical
    return ScalingProblem(
        l0=net.unperturbed().matrix,
        k_tilde=hamiltonian_super(k),
        p0=global_projector(net),
        order=1,
    )


def hop_network(tau1: float, tau2: float, g: float) -> DgmNetwork:
    """Two DFS modules joined by the hopping edge (same operator as ``logical_generators``)."""
    return DgmNetwork((dfs_vertex(2, tau1), dfs_vertex(2, tau2)), (Edge(0, 1, "hop", g, (2, 1)),))
