"""Two lossy cavities coupled by photon hopping, each holding qubits.

The cavities (with hopping ``J``) form the fast unperturbed generator; the
Jaynes-Cummings coupling ``g (c S^+ + c^dag S^-)`` is the perturbation and
vanishes at first order, so the qubits see a second-order Lindbladian with

    1/tau_eff = 4 tau g^2 / (1 + 4 (J tau)^2)
    J_eff     = -4 J g_A g_B tau^2 / (1 + 4 (J tau)^2)

Layout: (qubits of A, cavity A, qubits of B, cavity B).  ``n_b = 0`` leaves
cavity B empty of qubits.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..effective import ScalingProblem
from ..lindblad import Liouvillian, hamiltonian_super
from ..network import DgmNetwork, Edge, Vertex
from ..numerics import NumericalError, apply_product_super, devectorize, expm, vectorize
from ..projector import reduced_resolvent, steady_projector
from ..spaces import SpaceLayout, collective, embed
from .metrics import coherence, concurrence, trace_distance


@dataclass(frozen=True)
class JcParams:
    g_a: float = 1.0
    g_b: float = 1.0
    J: float = 0.5
    tau: float = 1.0
    omega_a: float = 0.0
    omega_b: float = 0.0
    omega_q_a: float = 0.0
    omega_q_b: float = 0.0
    n_a: int = 1
    n_b: int = 1
    n_max: int = 2

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.n_a < 1 or self.n_b < 0:
            raise ValueError("need at least one qubit in cavity A")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")

    @property
    def qubit_count(self) -> int:
        return self.n_a + self.n_b


@dataclass(frozen=True)
class JcEffective:
    j_eff: float
    rate_a: float
    rate_b: float
    params: JcParams

    def liouvillian(self) -> np.ndarray:
        """Effective generator on the qubits alone (A qubits then B qubits)."""
        p = self.params
        lay = SpaceLayout.qubits(*([p.n_a, p.n_b] if p.n_b else [p.n_a]))
        dim = lay.dim
        s_a = embed(collective("-", p.n_a), list(range(p.n_a)), lay)
        h = p.omega_q_a * embed(collective("z", p.n_a), list(range(p.n_a)), lay)
        ops = [(s_a, self.rate_a)]
        if p.n_b:
            pos_b = list(range(p.n_a, p.n_a + p.n_b))
            s_b = embed(collective("-", p.n_b), pos_b, lay)
            ops.append((s_b, self.rate_b))
            h = h + p.omega_q_b * embed(collective("z", p.n_b), pos_b, lay)
            xy = s_a.conj().T @ s_b
            h = h + self.j_eff * (xy + xy.conj().T)
        return Liouvillian(dim, hamiltonian=h, dissipators=tuple(ops)).matrix


def jc_effective_analytic(p: JcParams) -> JcEffective:
    denom = 1.0 + 4.0 * (p.J * p.tau) ** 2
    rate = lambda g: 4.0 * p.tau * g * g / denom  # noqa: E731
    j_eff = -4.0 * p.J * p.g_a * p.g_b * p.tau ** 2 / denom
    return JcEffective(j_eff=j_eff, rate_a=rate(p.g_a), rate_b=rate(p.g_b) if p.n_b else 0.0, params=p)


def jc_network(p: JcParams) -> DgmNetwork:
    a = Vertex("jc", p.tau, qubits=p.n_a, n_max=p.n_max, g=p.g_a)
    b = Vertex("jc", p.tau, qubits=p.n_b, n_max=p.n_max, g=p.g_b if p.n_b else 0.0)
    return DgmNetwork((a, b), (Edge(0, 1, "boson_hop", p.J),))


def frequency_hamiltonian(p: JcParams, net: DgmNetwork) -> np.ndarray:
    """``K0 = sum omega^q S^z + omega c^dag c``."""
    lay = net.layout
    k0 = np.zeros((lay.dim, lay.dim), dtype=complex)
    for idx, (wq, wc) in enumerate(((p.omega_q_a, p.omega_a), (p.omega_q_b, p.omega_b))):
        v = net.vertices[idx]
        pos = lay.module_positions(idx)
        if v.qubits and wq:
            k0 += wq * embed(collective("z", v.qubits), pos[: v.qubits], lay)
        if wc:
            c = v.cavity_op()
            k0 += wc * embed(c.conj().T @ c, pos, lay)
    return k0


def vacuum_isometry(p: JcParams, net: DgmNetwork | None = None) -> np.ndarray:
    """Map from the qubit space into (qubits (x) vacuum) of the full model."""
    net = net or jc_network(p)
    dims = net.layout.dims
    nq = p.qubit_count
    cav_a = p.n_a
    cav_b = p.n_a + 1 + p.n_b
    qubit_positions = [i for i in range(len(dims)) if i not in (cav_a, cav_b)]
    iso = np.zeros((net.dim, 2 ** nq), dtype=complex)
    for col in range(2 ** nq):
        bits = [(col >> (nq - 1 - k)) & 1 for k in range(nq)]
        idx = [0] * len(dims)
        for pos, bit in zip(qubit_positions, bits):
            idx[pos] = bit
        iso[np.ravel_multi_index(idx, dims), col] = 1.0
    return iso


def lift_super(iso: np.ndarray) -> np.ndarray:
    """Superoperator of ``X -> V X V^dag`` for a rectangular ``V``."""
    return np.kron(iso.conj(), iso)


def jc_numeric_effective(p: JcParams) -> np.ndarray:
    """Second-order generator of the full truncated model, restricted to qubits (x) vacuum.

    ``-P0 K S K P0`` plus, when qubit frequencies are set, the first-order
    ``P0 K0 P0``.  Only the columns of the qubit sector are solved for.
    """
    if p.n_max < 2:
        raise ValueError("n_max must be at least 2 for an exact second-order generator")
    net = jc_network(p)
    l0 = net.unperturbed().matrix
    p0, _k = steady_projector(l0)
    k_sup = hamiltonian_super(net.coupling_hamiltonian())
    iso = vacuum_isometry(p, net)
    w = lift_super(iso)
    w_back = lift_super(iso.conj().T)
    n = l0.shape[0]
    kp = k_sup @ (p0 @ w)
    q0 = np.eye(n) - p0
    try:
        s_kp = q0 @ np.linalg.solve(l0 + p0, q0 @ kp)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"L0 + P0 singular: {exc}") from exc
    gen = -(p0 @ (k_sup @ s_kp))
    k0 = frequency_hamiltonian(p, net)
    if np.any(k0):
        gen = gen + p0 @ hamiltonian_super(k0) @ p0 @ w
    return w_back @ gen


def _cavity_positions(p: JcParams) -> list[int]:
    return [p.n_a, p.n_a + 1 + p.n_b]


def _cavity_action(sup: np.ndarray, x: np.ndarray, dims: tuple[int, ...], cav: list[int]) -> np.ndarray:
    """Apply ``id_qubits (x) sup`` where ``sup`` acts on the two cavities together."""
    n = len(dims)
    qubits = [i for i in range(n) if i not in cav]
    order = qubits + cav
    dq = int(np.prod([dims[i] for i in qubits]))
    dc = int(np.prod([dims[i] for i in cav]))
    t = x.reshape(dims + dims).transpose(order + [n + i for i in order]).reshape(dq * dc, dq * dc)
    y = apply_product_super([(np.eye(dq * dq), dq), (sup, dc)], t)
    back = np.argsort(order + [n + i for i in order])
    sub = tuple(dims[i] for i in order)
    return y.reshape(sub + sub).transpose(back).reshape(x.shape)


def jc_factored_effective(p: JcParams) -> np.ndarray:
    """Same generator as ``jc_numeric_effective`` without forming global superoperators.

    ``L0`` acts on the cavities only, so ``P0`` and ``S`` are the identity on
    the qubits tensored with the two-cavity projector and resolvent.  Cost is
    set by the ``(n_max+1)^2``-dimensional cavity pair, so larger truncations
    stay cheap.
    """
    if p.n_max < 2:
        raise ValueError("n_max must be at least 2 for an exact second-order generator")
    net = jc_network(p)
    cav_net = DgmNetwork(
        (Vertex("jc", p.tau, qubits=0, n_max=p.n_max), Vertex("jc", p.tau, qubits=0, n_max=p.n_max)),
        (Edge(0, 1, "boson_hop", p.J),),
    )
    l_c = cav_net.unperturbed().matrix
    p_c, _k = steady_projector(l_c)
    s_c = reduced_resolvent(l_c, p_c)
    dims, cav = net.layout.dims, _cavity_positions(p)
    h = net.coupling_hamiltonian()
    k0 = frequency_hamiltonian(p, net)
    iso = vacuum_isometry(p, net)
    dq = iso.shape[1]
    comm = lambda a, x: -1j * (a @ x - x @ a)  # noqa: E731
    cols = []
    for c in range(dq):
        for r in range(dq):
            e = np.zeros((dq, dq), dtype=complex)
            e[r, c] = 1.0
            x = iso @ e @ iso.conj().T
            z = _cavity_action(s_c, comm(h, x), dims, cav)
            out = -_cavity_action(p_c, comm(h, z), dims, cav)
            if np.any(k0):
                out = out + _cavity_action(p_c, comm(k0, x), dims, cav)
            cols.append(vectorize(iso.conj().T @ out @ iso))
    return np.stack(cols, axis=1)


def effective_state(p: JcParams, rho0: np.ndarray, t: float) -> np.ndarray:
    gen = jc_effective_analytic(p).liouvillian()
    return devectorize(expm(t * gen) @ vectorize(rho0), rho0.shape[0])


def _plus_state() -> np.ndarray:
    return np.full((2, 2), 0.5, dtype=complex)


def _bell_state() -> np.ndarray:
    ket = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0)
    return np.outer(ket, ket.conj())


def coherence_closed_form(J: float, tau: float, tg2: float) -> float:
    """``exp(-T / (2 tau_eff))`` with ``T g^2`` fixed."""
    return float(np.exp(-0.5 * 4.0 * tau * tg2 / (1.0 + 4.0 * (J * tau) ** 2)))


def coherence_curve(j_list, tau: float, tg2: float = 1.0, t: float = 100.0) -> list[float]:
    """Coherence of one qubit (cavity B empty) after time ``t`` from ``|+>`` under the effective dynamics."""
    g = np.sqrt(tg2 / t)
    out = []
    for J in j_list:
        p = JcParams(g_a=g, g_b=0.0, J=float(J), tau=tau, n_a=1, n_b=0)
        out.append(coherence(effective_state(p, _plus_state(), t)))
    return out


def concurrence_curve(j_list, tau: float, tg2: float = 1.0, t: float = 100.0) -> list[float]:
    """Concurrence of the two qubits from ``(|00> + |11>)/sqrt2`` under the effective dynamics."""
    g = np.sqrt(tg2 / t)
    out = []
    for J in j_list:
        p = JcParams(g_a=g, g_b=g, J=float(J), tau=tau, n_a=1, n_b=1)
        out.append(concurrence(effective_state(p, _bell_state(), t)))
    return out


@dataclass(eq=False)
class JcStateError:
    """Trace distance between full and effective states with ``T g^2`` fixed (second-order scaling).

    The full model starts in ``rho0 (x) vacuum``; the effective state uses
    the closed-form generator.
    """

    params: JcParams
    rho0: np.ndarray
    tg2: float = 1.0

    def __post_init__(self):
        unit = replace(self.params, g_a=1.0, g_b=1.0 if self.params.n_b else 0.0)
        net = jc_network(unit)
        self._l0 = net.unperturbed().matrix
        self._k = hamiltonian_super(np.sqrt(self.tg2) * net.coupling_hamiltonian())
        self._iso = vacuum_isometry(unit, net)
        eff = jc_effective_analytic(replace(unit, g_a=np.sqrt(self.tg2),
                                            g_b=np.sqrt(self.tg2) if unit.n_b else 0.0))
        # T * L_eff(g) with g = gtilde / sqrt(T) is T-independent
        rho_eff = devectorize(expm(eff.liouvillian()) @ vectorize(self.rho0), self.rho0.shape[0])
        self._target = self._iso @ rho_eff @ self._iso.conj().T
        self._start = vectorize(self._iso @ self.rho0 @ self._iso.conj().T)
        self.problem = ScalingProblem(l0=self._l0, k_tilde=self._k, p0=np.eye(self._l0.shape[0]),
                                      order=2, effective=np.zeros_like(self._l0))

    def full_state(self, t: float) -> np.ndarray:
        v = expm(self.problem.full_generator(t)) @ self._start
        return devectorize(v, self._iso.shape[0])

    def effective_state(self) -> np.ndarray:
        return self._target

    def error(self, t: float) -> float:
        return trace_distance(self.full_state(t), self._target)


def coherence_state_error(J: float = 0.5, tau: float = 1.0, tg2: float = 1.0, n_max: int = 2) -> JcStateError:
    return JcStateError(JcParams(J=J, tau=tau, n_a=1, n_b=0, g_b=0.0, n_max=n_max), _plus_state(), tg2)
