"""Effective generators inside the steady manifold and error-scaling sweeps.

Scaling convention: callers hand over the O(1) perturbation ``Ktilde``.  For
first-order problems the physical perturbation is ``Ktilde / T``, for second
order ``Ktilde / sqrt(T)``.  Multiplying the full generator by ``T`` gives
``T L0 + Ktilde`` or ``T L0 + sqrt(T) Ktilde``, while the effective maps are
``exp(P0 Ktilde P0)`` and ``exp(-P0 Ktilde S Ktilde P0)``, independent of T.
"""
from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

import numpy as np

from .lindblad import as_matrix
from .numerics import expm, spectral_norm

log = logging.getLogger(__name__)


def _check_shapes(*mats: np.ndarray) -> None:
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise ValueError(f"superoperator shapes differ: {sorted(shapes)}")


def first_order_generator(k_super, p0: np.ndarray) -> np.ndarray:
    k_super = as_matrix(k_super)
    _check_shapes(k_super, p0)
    return p0 @ k_super @ p0


def second_order_generator(k_super, p0: np.ndarray, s: np.ndarray, first_order_tol: float = 1e-9) -> np.ndarray:
    """``-P0 K S K P0``.  Warns when ``P0 K P0`` does not vanish."""
    k_super = as_matrix(k_super)
    _check_shapes(k_super, p0, s)
    kp = k_super @ p0
    first = spectral_norm(p0 @ kp)
    scale = max(spectral_norm(k_super), 1.0)
    if first > first_order_tol * scale:
        warnings.warn(
            f"first-order generator is non-zero (norm {first:.3e}); second-order result is incomplete",
            RuntimeWarning,
            stacklevel=2,
        )
    return -(p0 @ (k_super @ (s @ kp)))


def projected_error(l_full, g_eff: np.ndarray, p0: np.ndarray, t: float) -> float:
    """``|| (exp(T L) - exp(G)) P0 ||`` with ``L`` already carrying the 1/T or 1/sqrt(T) scaling.

    ``g_eff`` is the time-integrated effective generator, i.e. the exponent
    of the effective map at time ``T``.
    """
    l_full = as_matrix(l_full)
    _check_shapes(l_full, g_eff, p0)
    return spectral_norm((expm(t * l_full) - expm(g_eff)) @ p0)


class ErrorModel(Protocol):
    def error(self, t: float) -> float: ...


@dataclass(frozen=True, eq=False)
class ScalingProblem:
    """Unperturbed generator plus an O(1) perturbation, compared against an effective map.

    ``order`` selects the ``1/T`` (first) or ``1/sqrt(T)`` (second) scaling of
    ``k_tilde``.  ``effective`` is the T-independent exponent of the effective
    map; when omitted it is built from ``P0`` (and ``S`` for second order).
    ``perturbation_tilde`` is an extra O(1) term scaled like ``k_tilde`` that
    is *not* part of the effective generator (encoding errors).
    """

    l0: np.ndarray
    k_tilde: np.ndarray
    p0: np.ndarray
    order: int = 1
    s: np.ndarray | None = None
    effective: np.ndarray | None = None
    perturbation_tilde: np.ndarray | None = None
    _eff_map: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        eff = self.effective
        if eff is None:
            if self.order == 1:
                eff = first_order_generator(self.k_tilde, self.p0)
            else:
                if self.s is None:
                    raise ValueError("second-order problems need the reduced resolvent")
                eff = second_order_generator(self.k_tilde, self.p0, self.s)
            object.__setattr__(self, "effective", eff)
        object.__setattr__(self, "_eff_map", expm(eff))

    def full_generator(self, t: float) -> np.ndarray:
        """``T * L`` for evolution time ``T``."""
        pert = self.k_tilde if self.perturbation_tilde is None else self.k_tilde + self.perturbation_tilde
        if self.order == 1:
            return t * self.l0 + pert
        return t * self.l0 + np.sqrt(t) * pert

    def exact_map(self, t: float) -> np.ndarray:
        return expm(self.full_generator(t))

    def effective_map(self) -> np.ndarray:
        return self._eff_map

    def error(self, t: float) -> float:
        return spectral_norm((self.exact_map(t) - self._eff_map) @ self.p0)


@dataclass(frozen=True)
class SweepResult:
    """Errors versus evolution time with a log-log fit.

    ``slope`` and ``intercept`` come from least squares on
    ``log10(error) = slope * log10(1/T) + intercept`` using the
    ``fit_points`` largest-T samples.
    """

    samples: tuple[tuple[float, float], ...]
    slope: float
    intercept: float
    fit_points: int
    label: str = ""

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    @property
    def errors(self) -> np.ndarray:
        return np.array([e for _, e in self.samples])


def fit_loglog(times: Sequence[float], errors: Sequence[float], fit_points: int | None = None) -> tuple[float, float, int]:
    """Least-squares slope/intercept of log10(error) against log10(1/T) on the largest-T samples."""
    times = np.asarray(times, dtype=float)
    errors = np.asarray(errors, dtype=float)
    order = np.argsort(times)
    times, errors = times[order], errors[order]
    n = len(times) if fit_points is None else int(fit_points)
    if n < 2 or n > len(times):
        raise ValueError(f"cannot fit {n} points from {len(times)} samples")
    t, e = times[-n:], errors[-n:]
    if np.any(e <= 0):
        raise ValueError("log-log fit needs strictly positive errors")
    slope, intercept = np.polyfit(np.log10(1.0 / t), np.log10(e), 1)
    return float(slope), float(intercept), n


def default_time_grid(t_min: float = 10.0, t_max: float = 1e4, per_decade: int = 20) -> np.ndarray:
    """Log-spaced grid including both end points."""
    decades = np.log10(t_max / t_min)
    count = int(round(decades * per_decade)) + 1
    return np.logspace(np.log10(t_min), np.log10(t_max), count)


def scaling_sweep(model: ErrorModel | Callable[[float], float], times: Sequence[float],
                  fit_points: int | None = None, workers: int = 1, label: str = "") -> SweepResult:
    """Evaluate ``model.error(T)`` on ``times`` and fit the log-log slope.

    ``model`` may also be a plain callable ``T -> error``.
    """
    times = sorted(float(t) for t in times)
    if any(t <= 0 for t in times):
        raise ValueError("evolution times must be positive")
    if len(times) < 5:
        raise ValueError("a sweep needs at least five times")
    if fit_points is not None and fit_points > len(times):
        raise ValueError(f"fit_points={fit_points} exceeds the {len(times)} samples")
    err_fn = model.error if hasattr(model, "error") else model
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(err_fn, times))
    else:
        errors = [err_fn(t) for t in times]
    errors = [float(e) for e in errors]
    slope, intercept, n = fit_loglog(times, errors, fit_points)
    log.debug("sweep %s: slope %.4f over %d points", label, slope, n)
    return SweepResult(tuple(zip(times, errors)), slope, intercept, n, label)
