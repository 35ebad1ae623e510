"""Hilbert-space layouts, elementary operators and the DFS logical bases.

Basis convention: ``|0>`` is the qubit ground state, so ``sigma^-|0> = 0``
and ``pauli("z") = diag(-1, +1)``.  With this choice the lowest-weight
collective states (``|00>``, ``|000>``) are the computational all-zeros
states.  Multi-qubit kets are written ``|q1 q2 ...>`` with qubit 1 as the
most significant tensor factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .numerics import kron_all

_SQRT2 = np.sqrt(2.0)

_PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    # sigma^y = i(sigma^- - sigma^+) so that sigma^+ = (sigma^x + i sigma^y)/2
    "y": np.array([[0, 1j], [-1j, 0]], dtype=complex),
    "z": np.array([[-1, 0], [0, 1]], dtype=complex),
    "+": np.array([[0, 0], [1, 0]], dtype=complex),
    "-": np.array([[0, 1], [0, 0]], dtype=complex),
}


def pauli(kind: str) -> np.ndarray:
    try:
        return _PAULI[kind.lower()].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli kind {kind!r}; expected one of x, y, z, +, -") from None


def ladder(n_max: int) -> np.ndarray:
    """Truncated bosonic annihilation operator on ``span{|0>, ..., |n_max>}``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(complex)


def single_site(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """Embed a 2x2 operator on qubit ``site`` (0-based) of ``n`` qubits."""
    eye = np.eye(2, dtype=complex)
    return kron_all(*[op if k == site else eye for k in range(n)])


def collective(kind: str, n: int) -> np.ndarray:
    """Collective spin operator: ``S^+-`` is a sum of sigma^+-, ``S^z`` half the sum of sigma^z."""
    if n < 1:
        raise ValueError("need at least one qubit")
    kind = kind.lower()
    if kind in ("+", "-"):
        single = pauli(kind)
    elif kind == "z":
        single = 0.5 * pauli("z")
    elif kind in ("x", "y"):
        single = 0.5 * pauli(kind)
    else:
        raise ValueError(f"unknown collective kind {kind!r}")
    return sum(single_site(single, k, n) for k in range(n))


def basis_ket(bits: str) -> np.ndarray:
    """Computational ket from a bit string such as ``"010"``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


@dataclass(frozen=True, eq=False)
class LogicalBasis:
    """Orthonormal DFS states of an ``n_qubits`` collective-damping module.

    ``vectors`` holds the logical states as columns, ordered ``|0bar>, |1bar>, ...``.
    """

    n_qubits: int
    vectors: np.ndarray

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.vectors @ self.vectors.conj().T

    def ket(self, index: int) -> np.ndarray:
        return self.vectors[:, index].copy()


def dfs_basis(n: int) -> LogicalBasis:
    """Lowest-weight (S^- annihilated) states for two or three qubits.

    n = 2: ``|0bar>`` is the singlet ``(|01> - |10>)/sqrt2`` and ``|1bar> = |00>``.
    n = 3: ``|0bar> = (|010> - |100>)/sqrt2``,
    ``|1bar> = (|100> + |010> - 2|001>)/sqrt6`` and ``|2bar> = |000>``.
    """
    b = basis_ket
    if n == 2:
        cols = [(b("01") - b("10")) / _SQRT2, b("00")]
    elif n == 3:
        cols = [
            (b("010") - b("100")) / _SQRT2,
            (b("100") + b("010") - 2 * b("001")) / np.sqrt(6.0),
            b("000"),
        ]
    else:
        raise ValueError(f"DFS basis is only tabulated for 2 or 3 qubits, got {n}")
    return LogicalBasis(n, np.stack(cols, axis=1))


def triplet_excited(n: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """``|e0> = |1,0>`` and ``|e1> = |1,1>`` for a two-qubit module."""
    if n != 2:
        raise ValueError("excited triplet states are defined for two qubits only")
    return (basis_ket("01") + basis_ket("10")) / _SQRT2, basis_ket("11")


@dataclass(frozen=True)
class SpaceLayout:
    """Ordered subsystem dimensions grouped by module.

    ``modules`` is a tuple of tuples, e.g. ``((2, 2), (2, 2))`` for two
    two-qubit modules or ``((2, 3), (2, 3))`` for two qubit+cavity modules.
    Subsystem positions are global 0-based indices into the flattened tuple.
    """

    modules: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mods = tuple(tuple(int(d) for d in m) for m in self.modules)
        object.__setattr__(self, "modules", mods)
        for m in mods:
            if not m:
                raise ValueError("empty module in layout")
            if any(d < 2 for d in m):
                raise ValueError(f"subsystem dimensions must be >= 2, got {m}")

    @classmethod
    def qubits(cls, *counts: int) -> "SpaceLayout":
        return cls(tuple((2,) * c for c in counts))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for m in self.modules for d in m)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def module_dim(self, index: int) -> int:
        return int(np.prod(self.modules[index]))

    def module_dims(self) -> tuple[int, ...]:
        return tuple(int(np.prod(m)) for m in self.modules)

    def position(self, module: int, local: int) -> int:
        """Global subsystem index of subsystem ``local`` (0-based) inside ``module``."""
        if not 0 <= module < len(self.modules):
            raise IndexError(f"module {module} out of range")
        if not 0 <= local < len(self.modules[module]):
            raise IndexError(f"subsystem {local} out of range for module {module}")
        return sum(len(m) for m in self.modules[:module]) + local

    def module_positions(self, module: int) -> list[int]:
        start = self.position(module, 0)
        return list(range(start, start + len(self.modules[module])))


def embed(op: np.ndarray, positions: Sequence[int], layout: SpaceLayout) -> np.ndarray:
    """Place ``op`` on the given subsystems, identity elsewhere.

    ``op`` is written in the tensor order of ``positions`` (which need not be
    sorted); the result respects the layout order.
    """
    dims = layout.dims
    n = len(dims)
    positions = list(positions)
    if len(set(positions)) != len(positions):
        raise ValueError("repeated subsystem position")
    for p in positions:
        if not 0 <= p < n:
            raise IndexError(f"subsystem position {p} out of range for {n} subsystems")
    sub = [dims[p] for p in positions]
    d_sub = int(np.prod(sub))
    op = np.asarray(op, dtype=complex)
    if op.shape != (d_sub, d_sub):
        raise ValueError(f"operator shape {op.shape} does not match subsystem dims {sub}")
    rest = [p for p in range(n) if p not in positions]
    d_rest = int(np.prod([dims[p] for p in rest])) if rest else 1
    full = np.kron(op, np.eye(d_rest, dtype=complex))
    # full is ordered (positions..., rest...); permute to layout order
    order = positions + rest
    k = len(order)
    shape = [dims[p] for p in order]
    t = full.reshape(shape + shape)
    perm_axes = [order.index(p) for p in range(n)]
    t = t.transpose(perm_axes + [k + a for a in perm_axes])
    return t.reshape(layout.dim, layout.dim)


def embed_module(op: np.ndarray, module: int, layout: SpaceLayout) -> np.ndarray:
    """Embed an operator acting on a whole module."""
    return embed(op, layout.module_positions(module), layout)


def product_state(*kets: np.ndarray) -> np.ndarray:
    return reduce(np.kron, [np.asarray(k, dtype=complex) for k in kets])


def projector(ket: np.ndarray) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex).reshape(-1)
    return np.outer(ket, ket.conj())
