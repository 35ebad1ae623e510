"""Networks of dissipation-generated modules (DGMs).

A network is an undirected simple graph.  Each vertex is a module with its
own fast dissipator; each edge carries a coupling Hamiltonian between two
modules.  The Hilbert space is the tensor product of the modules in vertex
order, and inside a module the qubits come first, then any ancilla (cavity).

Config files are INI-style (``configparser``)::

    [vertex.0]
    kind = dfs2          ; dfs2 | dfs3 | zdephase | jc
    tau = 1.0            ; dissipation time of the module
    qubits = 1           ; zdephase / jc only
    n_max = 2            ; jc only: boson truncation
    g = 0.0              ; jc only: qubit-cavity coupling (a perturbation)

    [edge.0]
    i = 0
    j = 1
    coupling = hop       ; hop | zz | collective_hop | boson_hop
    strength = 1.0
    anchors = 2, 1       ; optional 1-based qubit indices in modules i and j

``boson_hop`` edges belong to the unperturbed generator (they act between
cavities); every other edge is a perturbation.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .lindblad import Liouvillian
from .numerics import super_kron
from .projector import DEFAULT_ZERO_TOL, dissipative_timescale, steady_projector
from .spaces import SpaceLayout, collective, embed, embed_module, ladder, pauli

VERTEX_KINDS = ("dfs2", "dfs3", "zdephase", "jc")
COUPLINGS = ("hop", "zz", "collective_hop", "boson_hop")


class NetworkError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    kind: str
    tau: float
    qubits: int = 0
    n_max: int = 2
    g: float = 0.0

    def __post_init__(self):
        if self.kind not in VERTEX_KINDS:
            raise NetworkError(f"unknown vertex kind {self.kind!r}")
        if self.tau <= 0:
            raise NetworkError("vertex tau must be positive")
        if self.kind == "dfs2":
            object.__setattr__(self, "qubits", 2)
        elif self.kind == "dfs3":
            object.__setattr__(self, "qubits", 3)
        elif self.kind == "zdephase" and self.qubits < 1:
            object.__setattr__(self, "qubits", 1)
        if self.kind == "jc" and self.n_max < 1:
            raise NetworkError("jc vertices need n_max >= 1")

    @property
    def dims(self) -> tuple[int, ...]:
        qubit_dims = (2,) * self.qubits
        if self.kind == "jc":
            return qubit_dims + (self.n_max + 1,)
        return qubit_dims

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def local_layout(self) -> SpaceLayout:
        return SpaceLayout((self.dims,))

    def _qubit_op(self, kind: str) -> np.ndarray:
        """Collective qubit operator of this module, embedded in the module space."""
        lay = self.local_layout()
        op = collective(kind, self.qubits)
        return embed(op, list(range(self.qubits)), lay)

    def cavity_op(self) -> np.ndarray:
        lay = self.local_layout()
        return embed(ladder(self.n_max), [self.qubits], lay)

    def lindblad_ops(self) -> list[tuple[np.ndarray, float]]:
        """Local jump operators with rates, written on the module space."""
        rate = 1.0 / self.tau
        if self.kind in ("dfs2", "dfs3"):
            return [(self._qubit_op("-"), rate)]
        if self.kind == "zdephase":
            return [(self._qubit_op("z"), rate)]
        return [(self.cavity_op(), rate)]

    def local_hamiltonian(self) -> np.ndarray | None:
        """Intra-module perturbation: Jaynes-Cummings coupling for ``jc`` vertices."""
        if self.kind != "jc" or self.qubits == 0 or self.g == 0.0:
            return None
        c = self.cavity_op()
        sp = self._qubit_op("+")
        return self.g * (c @ sp + c.conj().T @ sp.conj().T)

    def liouvillian(self) -> Liouvillian:
        return Liouvillian(self.dim, dissipators=tuple(self.lindblad_ops()))


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    coupling: str
    strength: float
    anchors: tuple[int, int] | None = None

    def __post_init__(self):
        if self.coupling not in COUPLINGS:
            raise NetworkError(f"unknown coupling {self.coupling!r}")
        if self.i == self.j:
            raise NetworkError("self-loops are not allowed")

    @property
    def in_generator(self) -> bool:
        """True for couplings that belong to the unperturbed generator."""
        return self.coupling == "boson_hop"


@dataclass(frozen=True)
class DgmNetwork:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    layout: SpaceLayout = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise NetworkError("a network needs at least one vertex")
        seen = set()
        for e in self.edges:
            for v in (e.i, e.j):
                if not 0 <= v < len(self.vertices):
                    raise NetworkError(f"edge references missing vertex {v}")
            key = frozenset((e.i, e.j))
            if key in seen:
                raise NetworkError(f"duplicate edge between {e.i} and {e.j}")
            seen.add(key)
        object.__setattr__(self, "layout", SpaceLayout(tuple(v.dims for v in self.vertices)))

    @property
    def dim(self) -> int:
        return self.layout.dim

    def edge_operator(self, edge: Edge) -> np.ndarray:
        """Embedded (strength-weighted) Hamiltonian of one edge."""
        vi, vj = self.vertices[edge.i], self.vertices[edge.j]
        lay = self.layout
        if edge.coupling in ("hop", "zz"):
            if vi.qubits == 0 or vj.qubits == 0:
                raise NetworkError(f"{edge.coupling} edge needs qubits on both modules")
            a, b = edge.anchors if edge.anchors is not None else (vi.qubits, 1)
            if not (1 <= a <= vi.qubits and 1 <= b <= vj.qubits):
                raise NetworkError(f"edge anchors {a, b} out of range")
            pos = [lay.position(edge.i, a - 1), lay.position(edge.j, b - 1)]
            if edge.coupling == "hop":
                sp, sm = pauli("+"), pauli("-")
                op = np.kron(sp, sm) + np.kron(sm, sp)
            else:
                op = np.kron(pauli("z"), pauli("z"))
            return edge.strength * embed(op, pos, lay)
        if edge.coupling == "collective_hop":
            sp_i = embed(collective("+", vi.qubits), lay.module_positions(edge.i)[: vi.qubits], lay)
            sm_j = embed(collective("-", vj.qubits), lay.module_positions(edge.j)[: vj.qubits], lay)
            op = sp_i @ sm_j
            return edge.strength * (op + op.conj().T)
        # boson_hop
        if vi.kind != "jc" or vj.kind != "jc":
            raise NetworkError("boson_hop edges connect two jc vertices")
        ci = embed(ladder(vi.n_max), [lay.position(edge.i, vi.qubits)], lay)
        cj = embed(ladder(vj.n_max), [lay.position(edge.j, vj.qubits)], lay)
        return edge.strength * (ci.conj().T @ cj + ci @ cj.conj().T)

    def unperturbed(self) -> Liouvillian:
        """Sum of local dissipators plus couplings that belong to the generator."""
        ops = []
        for idx, v in enumerate(self.vertices):
            for op, rate in v.lindblad_ops():
                ops.append((embed_module(op, idx, self.layout), rate))
        h = None
        gen_edges = [e for e in self.edges if e.in_generator]
        if gen_edges:
            h = sum(self.edge_operator(e) for e in gen_edges)
        return Liouvillian(self.dim, hamiltonian=h, dissipators=tuple(ops))

    def coupling_hamiltonian(self) -> np.ndarray:
        """Perturbing Hamiltonian: every non-generator edge plus vertex-local perturbations."""
        k = np.zeros((self.dim, self.dim), dtype=complex)
        for e in self.edges:
            if not e.in_generator:
                k += self.edge_operator(e)
        for idx, v in enumerate(self.vertices):
            h = v.local_hamiltonian()
            if h is not None:
                k += embed_module(h, idx, self.layout)
        return k


def global_liouvillian(net: DgmNetwork) -> Liouvillian:
    """Full generator: local dissipators plus every edge Hamiltonian (unscaled)."""
    base = net.unperturbed()
    k = net.coupling_hamiltonian()
    if not np.any(k):
        return base
    return base + Liouvillian(net.dim, hamiltonian=k)


def global_projector(net: DgmNetwork, tol: float = DEFAULT_ZERO_TOL) -> np.ndarray:
    """Tensor product of the local steady-state projectors.

    Exact when every generator edge preserves the product structure of the
    local kernels (no edges, or cavity hopping between vacuum-relaxing
    modules).
    """
    factors = []
    for v in net.vertices:
        p, _k = steady_projector(v.liouvillian().matrix, tol)
        factors.append((p, v.dim))
    return super_kron(*factors)


def local_kernel_dims(net: DgmNetwork, tol: float = DEFAULT_ZERO_TOL) -> list[int]:
    return [steady_projector(v.liouvillian().matrix, tol)[1] for v in net.vertices]


def error_budget(net: DgmNetwork, tau_global: float | None = None) -> float:
    """Worst-case first-order error scale ``J_max * |E| * tau`` with ``tau`` the slowest module."""
    edges = [e for e in net.edges if not e.in_generator]
    if not edges:
        return 0.0
    j_max = max(abs(e.strength) for e in edges)
    if tau_global is None:
        tau_global = max(dissipative_timescale(v.liouvillian().matrix) for v in net.vertices)
    return j_max * len(edges) * tau_global


def load_network(path: str | Path) -> DgmNetwork:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    with open(path) as fh:
        parser.read_file(fh)
    return network_from_config(parser)


def network_from_config(parser: configparser.ConfigParser) -> DgmNetwork:
    vertices, edges = {}, []
    vertex_keys = {"kind", "tau", "qubits", "n_max", "g"}
    edge_keys = {"i", "j", "coupling", "strength", "anchors"}
    for name in parser.sections():
        sec = parser[name]
        head, _, idx = name.partition(".")
        if head == "vertex":
            unknown = set(sec) - vertex_keys
            if unknown:
                raise NetworkError(f"[{name}] unknown keys {sorted(unknown)}")
            vertices[int(idx)] = Vertex(
                kind=sec.get("kind", ""),
                tau=sec.getfloat("tau", 1.0),
                qubits=sec.getint("qubits", 0),
                n_max=sec.getint("n_max", 2),
                g=sec.getfloat("g", 0.0),
            )
        elif head == "edge":
            unknown = set(sec) - edge_keys
            if unknown:
                raise NetworkError(f"[{name}] unknown keys {sorted(unknown)}")
            anchors = None
            if "anchors" in sec:
                parts = [int(p) for p in sec["anchors"].split(",")]
                if len(parts) != 2:
                    raise NetworkError(f"[{name}] anchors needs two entries")
                anchors = (parts[0], parts[1])
            edges.append(Edge(sec.getint("i"), sec.getint("j"), sec.get("coupling", ""),
                              sec.getfloat("strength", 1.0), anchors))
        else:
            raise NetworkError(f"unknown section [{name}]")
    if sorted(vertices) != list(range(len(vertices))):
        raise NetworkError("vertex sections must be numbered 0..n-1")
    return DgmNetwork(tuple(vertices[k] for k in range(len(vertices))), tuple(edges))
