"""Run configuration for the figure runner.

A config file is INI with a single ``[run]`` section.  Every key is
optional; anything not listed below is rejected::

    [run]
    tau1 = 1.0              ; dissipation time of module 1
    tau2 = 0.5              ; dissipation time of module 2
    taus = 0.5, 1, 2        ; cavity decay times for the J sweeps
    g_t = 1.0               ; T * g for first-order scenarios
    tg2 = 1.0               ; T * g^2 for second-order scenarios
    J = 0.5                 ; cavity hopping for single-J runs (inverse time)
    j_max = 5.0             ; J sweeps run over linspace(0, j_max, j_points)
    j_points = 51
    t_eval = 100.0          ; evolution time of the J sweeps
    tmin = 10.0             ; T grid is logspace(tmin, tmax, points)
    tmax = 10000.0
    points = 61
    fit_points = 0          ; 0 means fit every sample
    n_max = 2               ; boson truncation
    seed = 0
    magnitudes = 0.5, 1.0   ; |zeta| values (in units where Tg is O(1))

All times and rates are in the same arbitrary units; ``g`` and ``J`` are
inverse times.  Command-line flags override file values.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np


class ConfigError(ValueError):
    """Malformed or out-of-range run configuration."""


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(p) for p in text.split(",") if p.strip())


@dataclass(frozen=True)
class RunConfig:
    tau1: float = 1.0
    tau2: float = 0.5
    taus: tuple[float, ...] = (0.5, 1.0, 2.0)
    g_t: float = 1.0
    tg2: float = 1.0
    J: float = 0.5
    j_max: float = 5.0
    j_points: int = 51
    t_eval: float = 100.0
    tmin: float = 10.0
    tmax: float = 1e4
    points: int = 61
    fit_points: int = 0
    n_max: int = 2
    seed: int = 0
    magnitudes: tuple[float, ...] = (0.5, 1.0)

    def __post_init__(self):
        positive = ("tau1", "tau2", "g_t", "tg2", "j_max", "t_eval", "tmin", "tmax")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if any(t <= 0 for t in self.taus) or not self.taus:
            raise ConfigError("taus must be a non-empty list of positive values")
        if any(m <= 0 for m in self.magnitudes):
            raise ConfigError("magnitudes must be positive (the zero reference is always run)")
        if self.J < 0:
            raise ConfigError("J must be non-negative")
        if self.tmax <= self.tmin:
            raise ConfigError("tmax must exceed tmin")
        if self.points < 5:
            raise ConfigError("points must be at least 5")
        if self.j_points < 2:
            raise ConfigError("j_points must be at least 2")
        if self.fit_points < 0 or self.fit_points > self.points:
            raise ConfigError("fit_points must lie in [0, points]")
        if self.n_max < 2:
            raise ConfigError("n_max must be at least 2")

    def times(self) -> np.ndarray:
        return np.logspace(np.log10(self.tmin), np.log10(self.tmax), self.points)

    def j_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.j_max, self.j_points)

    def fit(self) -> int | None:
        """Number of largest-T samples to fit (``None`` for all)."""
        return self.fit_points or None

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        try:
            return replace(self, **kw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


_KEYS = {f.name: f.type for f in fields(RunConfig)}


SCENARIO_DEFAULTS = {
    "fig2": {},
    "fig4-coherence": {},
    "fig5-concurrence": {},
    "fig6-ham-robustness": {"tau2": 1.0, "g_t": 2.0},
    "fig7-lindblad-robustness": {"tau2": 1.0, "g_t": 2.0},
    "fig8-cnot": {"tau2": 1.0, "fit_points": 10},
    "verify": {},
    "jc-crosscheck": {},
    "zdephase": {"tau1": 1.0},
}


def parse_config(text: str) -> dict:
    """Validated key/value overrides from config text."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str  # keep J upper-case
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    extra = [s for s in parser.sections() if s != "run"]
    if extra:
        raise ConfigError(f"unknown sections {extra}; only [run] is allowed")
    if not parser.has_section("run"):
        return {}
    sec = parser["run"]
    unknown = sorted(set(sec) - set(_KEYS))
    if unknown:
        raise ConfigError(f"unknown keys {unknown}")
    kw = {}
    for key, raw in sec.items():
        kind = _KEYS[key]
        try:
            if "tuple" in str(kind):
                kw[key] = _floats(raw)
            elif kind in (int, "int"):
                kw[key] = int(raw)
            else:
                kw[key] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc
    return kw


def load_config(scenario: str, path: str | Path | None = None, **flags) -> RunConfig:
    """Scenario defaults, then the config file, then command-line flags."""
    if scenario not in SCENARIO_DEFAULTS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    kw = dict(SCENARIO_DEFAULTS[scenario])
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        kw.update(parse_config(text))
    kw.update({k: v for k, v in flags.items() if v is not None})
    explicit = path is not None and "fit_points" in parse_config(text)
    if not explicit and "fit_points" in kw:
        # a scenario default never exceeds a user-shortened grid
        kw["fit_points"] = min(kw["fit_points"], kw.get("points", RunConfig.points))
    return RunConfig().with_overrides(**kw)
