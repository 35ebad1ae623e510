"""Command-line runner that writes the data behind each figure as CSV.

    dgm-sim <subcommand> [--config PATH] [--seed N] [--out DIR] [--tmax X] [--points N]

Exit codes: 0 success, 1 a ``verify`` residual exceeded its tolerance,
2 configuration error, 3 numerical failure (projector or Sylvester solve).
CSV files have one header row, floats written with 17 significant digits,
and trailing ``# key = value`` lines holding fit summaries.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .config import SCENARIO_DEFAULTS, ConfigError, RunConfig, load_config
from .effective import scaling_sweep
from .network import NetworkError, Vertex
from .numerics import NumericalError, spectral_norm
from .projector import steady_structure

log = logging.getLogger("dgmsim")

VERIFY_TOL = 1e-8


@dataclass
class Table:
    """Rows of equal length plus ``(key, value)`` summary lines."""

    columns: list[str]
    rows: list[list] = field(default_factory=list)
    summary: list[tuple[str, object]] = field(default_factory=list)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def format_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        if len(row) != len(table.columns):
            raise ValueError(f"row of length {len(row)} under {len(table.columns)} columns")
        writer.writerow([_fmt(v) for v in row])
    for key, value in table.summary:
        buf.write(f"# {key} = {_fmt(value)}\n")
    return buf.getvalue()


def emit_csv(table: Table, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_csv(table))
    return path


def read_csv(path: str | Path) -> Table:
    """Inverse of ``emit_csv``; numeric cells come back as floats."""
    lines = Path(path).read_text().splitlines()
    body = [ln for ln in lines if not ln.startswith("#")]
    summary = []
    for ln in lines:
        if ln.startswith("# "):
            key, _, value = ln[2:].partition(" = ")
            summary.append((key, _parse_cell(value)))
    reader = csv.reader(body)
    columns = next(reader, [])
    rows = [[_parse_cell(c) for c in r] for r in reader]
    return Table(columns, rows, summary)


def _parse_cell(text: str):
    try:
        return float(text)
    except ValueError:
        return text


# --- subcommands ---------------------------------------------------------

def _sweep_table(results, time_label: str = "T") -> Table:
    times = results[0].times
    table = Table([time_label] + [f"error[{r.label}]" for r in results])
    for i, t in enumerate(times):
        table.rows.append([float(t)] + [float(r.errors[i]) for r in results])
    for r in results:
        table.summary.append((f"slope[{r.label}]", r.slope))
        table.summary.append((f"fit_points[{r.label}]", r.fit_points))
    return table


def run_fig2(cfg: RunConfig) -> Table:
    from .scenarios.dfs import fig2_problem

    results = [
        scaling_sweep(fig2_problem(c, cfg.tau1, cfg.tau2, cfg.g_t), cfg.times(), cfg.fit(), label=c)
        for c in ("entangling", "zz")
    ]
    return _sweep_table(results)


def _j_sweep(cfg: RunConfig, curve: Callable) -> Table:
    grid = cfg.j_grid()
    curves = [curve(grid, tau, cfg.tg2, cfg.t_eval) for tau in cfg.taus]
    table = Table(["J"] + [f"tau={tau:g}" for tau in cfg.taus])
    for i, j in enumerate(grid):
        table.rows.append([float(j)] + [float(c[i]) for c in curves])
    for tau, c in zip(cfg.taus, curves):
        table.summary.append((f"monotone[tau={tau:g}]", bool(np.all(np.diff(c) >= -1e-12))))
    return table


def run_fig4(cfg: RunConfig) -> Table:
    from .scenarios.jc import coherence_closed_form, coherence_curve

    table = _j_sweep(cfg, coherence_curve)
    worst = 0.0
    for k, tau in enumerate(cfg.taus):
        for row in table.rows:
            worst = max(worst, abs(row[k + 1] - coherence_closed_form(row[0], tau, cfg.tg2)))
    table.summary.append(("max_abs_closed_form_deviation", worst))
    return table


def run_fig5(cfg: RunConfig) -> Table:
    from .scenarios.jc import concurrence_curve

    return _j_sweep(cfg, concurrence_curve)


def _robustness(kind: str, cfg: RunConfig) -> Table:
    from .scenarios.robustness import ErrorMatrix, robustness_sweep, structural_residuals

    results = robustness_sweep(kind, cfg.magnitudes, cfg.seed, cfg.times(), cfg.fit(), cfg.g_t)
    table = _sweep_table(results)
    ref = results[0].errors
    for idx, (mag, r) in enumerate(zip(cfg.magnitudes, results[1:])):
        table.summary.append((f"above_reference[{r.label}]", bool(np.all(r.errors >= ref))))
        res = structural_residuals(ErrorMatrix.sample(mag, cfg.seed, stream=idx))
        for key, val in res.items():
            table.summary.append((f"{key}[{r.label}]", val))
    return table


def run_fig6(cfg: RunConfig) -> Table:
    return _robustness("hamiltonian", cfg)


def run_fig7(cfg: RunConfig) -> Table:
    return _robustness("lindbladian", cfg)


def run_fig8(cfg: RunConfig) -> Table:
    from .scenarios.cnot import BellPreparation, gate_fidelity, cnot_matrix, ideal_product

    model = BellPreparation(cfg.tau1, cfg.tau2)
    times = cfg.times()
    states = [model.final_state(t) for t in times]
    trace = [model.distance(rho) for rho in states]
    infid = BellPreparation(cfg.tau1, cfg.tau2, metric="infidelity")
    inf = [infid.distance(rho) for rho in states]
    results = [
        scaling_sweep(dict(zip(times, trace)).__getitem__, times, cfg.fit(), label="trace_distance"),
        scaling_sweep(dict(zip(times, inf)).__getitem__, times, cfg.fit(), label="infidelity"),
    ]
    table = _sweep_table(results)
    table.summary.append(("ideal_cnot_fidelity", gate_fidelity(ideal_product(), cnot_matrix())))
    return table


def verify_models(cfg: RunConfig) -> list[tuple[str, object]]:
    """``(name, L0)`` pairs covering every scenario's unperturbed generator."""
    from .scenarios.dfs import dfs_pair_network, dfs_vertex
    from .scenarios.jc import JcParams, jc_network
    from .scenarios.zdephase import zdephase_network

    return [
        ("dephased_qubit", Vertex("zdephase", cfg.tau1, qubits=1).liouvillian()),
        ("dfs2_module", dfs_vertex(2, cfg.tau1).liouvillian()),
        ("dfs3_module", dfs_vertex(3, cfg.tau1).liouvillian()),
        ("dfs2_pair", dfs_pair_network(cfg.tau1, cfg.tau2).unperturbed()),
        ("zdephase_pair", zdephase_network(cfg.tau1, 1.0).unperturbed()),
        ("jc_one_qubit", jc_network(JcParams(J=cfg.J, n_b=0, g_b=0.0, n_max=cfg.n_max)).unperturbed()),
        ("jc_two_qubit", jc_network(JcParams(J=cfg.J, n_max=cfg.n_max)).unperturbed()),
    ]


def run_verify(cfg: RunConfig) -> Table:
    table = Table(["model", "quantity", "residual"])
    worst = 0.0
    for name, l0 in verify_models(cfg):
        st = steady_structure(l0)
        for key, val in st.residuals().items():
            table.rows.append([name, key, val])
            worst = max(worst, val)
        table.summary.append((f"kernel_dim[{name}]", st.kernel_dim))
    table.summary.append(("max_residual", worst))
    table.summary.append(("all_below_tolerance", worst < VERIFY_TOL))
    return table


def run_jc_crosscheck(cfg: RunConfig) -> Table:
    """Dense and factored numerical generators against the closed form, plus truncation change."""
    from .scenarios.jc import JcParams, jc_effective_analytic, jc_factored_effective, jc_numeric_effective

    grid = [(1.0, 1.0, 0.0, 1.0), (1.0, 1.0, cfg.J, cfg.tau1), (0.7, 1.3, 1.3, 0.6)]
    table = Table(["g_a", "g_b", "J", "tau", "rel_diff_dense", "rel_diff_factored", "nmax_change"])
    for g_a, g_b, J, tau in grid:
        p = JcParams(g_a=g_a, g_b=g_b, J=J, tau=tau, n_max=cfg.n_max)
        ana = jc_effective_analytic(p).liouvillian()
        scale = spectral_norm(ana)
        fac = jc_factored_effective(p)
        dense = jc_numeric_effective(JcParams(g_a=g_a, g_b=g_b, J=J, tau=tau, n_max=2))
        bigger = jc_factored_effective(JcParams(g_a=g_a, g_b=g_b, J=J, tau=tau, n_max=cfg.n_max + 1))
        table.rows.append([g_a, g_b, J, tau, spectral_norm(dense - ana) / scale,
                           spectral_norm(fac - ana) / scale, spectral_norm(bigger - fac) / scale])
    worst = max(max(r[4:]) for r in table.rows)
    table.summary.append(("max_relative_deviation", worst))
    return table


def run_zdephase(cfg: RunConfig) -> Table:
    from .scenarios.zdephase import ZdephaseStateError

    results = [
        scaling_sweep(ZdephaseStateError(cfg.tau1, cfg.tg2), cfg.times(), cfg.fit(), label="derived"),
        scaling_sweep(ZdephaseStateError(cfg.tau1, cfg.tg2, quoted=True), cfg.times(), cfg.fit(),
                      label="quoted"),
    ]
    return _sweep_table(results)


COMMANDS: dict[str, Callable[[RunConfig], Table]] = {
    "fig2": run_fig2,
    "fig4-coherence": run_fig4,
    "fig5-concurrence": run_fig5,
    "fig6-ham-robustness": run_fig6,
    "fig7-lindblad-robustness": run_fig7,
    "fig8-cnot": run_fig8,
    "verify": run_verify,
    "jc-crosscheck": run_jc_crosscheck,
    "zdephase": run_zdephase,
}
assert set(COMMANDS) == set(SCENARIO_DEFAULTS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dgm-sim", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="INI file with a [run] section")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--tmax", type=float)
        p.add_argument("--points", type=int)
    return parser


def run(command: str, cfg: RunConfig, out_dir: str | Path) -> tuple[int, Path]:
    table = COMMANDS[command](cfg)
    path = emit_csv(table, Path(out_dir) / f"{command}.csv")
    code = 0
    if command == "verify" and dict(table.summary)["all_below_tolerance"] is not True:
        code = 1
    return code, path


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.command, args.config, seed=args.seed, tmax=args.tmax, points=args.points)
        code, path = run(args.command, cfg, args.out)
    except (ConfigError, NetworkError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    print(path)
    return code


if __name__ == "__main__":
    sys.exit(main())
