"""Seeded Monte Carlo aggregation of percolation measurements.

Trial i draws its seed from (master_seed, i) through the stateless hash,
so any subset of trials can run anywhere, in any order, on any worker
count, and the assembled rows are identical.  The CSV schema is part of
the package's external contract: column order is fixed, optional fields
are empty rather than zero, and float formatting is shortest-roundtrip.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Iterable, Sequence

import numpy as np

from ..errors import ParameterError
from .._rng import derive
from ..graphs import Graph
from .mask import sample
from .measures import component_diameter, components, two_core
from .predictors import _WORK_BUDGET, local_predictors


@dataclass(frozen=True)
class MonteCarloOptions:
    """Trial options: what to measure beyond components and cores."""

    audit: bool = False
    ecc_vertex: int | None = None
    threads: int | None = None
    work_budget: int = _WORK_BUDGET


@dataclass(frozen=True)
class ResultRow:
    """One trial's measurements; fractions are per-vertex of the host graph."""

    trial: int
    seed: int
    n: int
    m: int
    p: float
    R: int | None
    c1_frac: float
    c2_size: int
    e1_frac: float
    excess_frac: float
    d_frac: tuple[float, ...]  # open-degree profile of the giant, k = 1..dmax
    core_v_frac: float
    core_e_frac: float
    ds_frac: tuple[float, ...]  # core-degree profile of the giant core, k = 2..dmax
    bridges_frac: float
    noncore_giant_frac: float
    audit_e1: int | None = None
    audit_v1: int | None = None
    audit_e2: int | None = None
    audit_v2: int | None = None
    ecc_v: int | None = None


def csv_columns(dmax: int) -> list[str]:
    cols = ["trial", "seed", "n", "m", "p", "R",
            "c1_frac", "c2_size", "e1_frac", "excess_frac"]
    cols += [f"d{k}_frac" for k in range(1, dmax + 1)]
    cols += ["core_v_frac", "core_e_frac"]
    cols += [f"ds{k}_frac" for k in range(2, dmax + 1)]
    cols += ["bridges_frac", "noncore_giant_frac",
             "audit_e1", "audit_v1", "audit_e2", "audit_v2", "ecc_v"]
    return cols


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def row_fields(row: ResultRow) -> list[str]:
    fields = [_fmt(row.trial), _fmt(row.seed), _fmt(row.n), _fmt(row.m),
              _fmt(row.p), _fmt(row.R), _fmt(row.c1_frac), _fmt(row.c2_size),
              _fmt(row.e1_frac), _fmt(row.excess_frac)]
    fields += [_fmt(x) for x in row.d_frac]
    fields += [_fmt(row.core_v_frac), _fmt(row.core_e_frac)]
    fields += [_fmt(x) for x in row.ds_frac]
    fields += [_fmt(row.bridges_frac), _fmt(row.noncore_giant_frac),
               _fmt(row.audit_e1), _fmt(row.audit_v1), _fmt(row.audit_e2),
               _fmt(row.audit_v2), _fmt(row.ecc_v)]
    return fields


def write_csv(path, rows: Sequence[ResultRow], dmax: int,
              header_lines: Iterable[str] = (),
              extra: Sequence[tuple[str, Sequence[str]]] | None = None) -> None:
    """Write rows in the documented schema.

    header_lines become leading '# ' comments; extra optionally prepends
    named columns (one (name, values) pair per column, used by sweeps).
    """
    extra = extra or []
    lines = [f"# {h}" for h in header_lines]
    lines.append(",".join([name for name, _ in extra] + csv_columns(dmax)))
    for i, row in enumerate(rows):
        front = [vals[i] for _, vals in extra]
        lines.append(",".join(front + row_fields(row)))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def run_trial(g: Graph, p: float, trial: int, seed: int,
              R: int = 50, audit: bool = False,
              ecc_vertex: int | None = None,
              work_budget: int = _WORK_BUDGET) -> ResultRow:
    """Measure one percolation sample into a ResultRow."""
    mask = sample(g, p, seed)
    comp = components(g, mask)
    core = two_core(g, mask, comp)
    n = g.n
    dmax = int(g.degrees().max()) if g.m else 0

    counts = comp.degree_counts
    d_frac = tuple(float(counts[k]) / n if k < counts.size else 0.0
                   for k in range(1, dmax + 1))
    core_counts = core.degree_counts
    ds_frac = tuple(float(core_counts[k]) / n if k < core_counts.size else 0.0
                    for k in range(2, dmax + 1))

    audit_e1 = audit_v1 = audit_e2 = audit_v2 = None
    if audit:
        preds = local_predictors(g, mask, R, comp, core, work_budget=work_budget)
        audit_e1 = preds.audit_e1
        audit_v1 = preds.audit_v1
        audit_e2 = preds.audit_e2
        audit_v2 = preds.audit_v2

    ecc = None
    if ecc_vertex is not None:
        ecc, _ = component_diameter(g, mask, ecc_vertex)

    return ResultRow(
        trial=trial,
        seed=seed,
        n=n,
        m=g.m,
        p=float(p),
        R=int(R) if audit else None,
        c1_frac=comp.c1_size / n,
        c2_size=comp.c2_size,
        e1_frac=comp.e1_count / n,
        excess_frac=comp.excess / n,
        d_frac=d_frac,
        core_v_frac=core.core_v / n,
        core_e_frac=core.core_e / n,
        ds_frac=ds_frac,
        bridges_frac=core.bridge_count / n,
        noncore_giant_frac=core.noncore_total / n,
        audit_e1=audit_e1,
        audit_v1=audit_v1,
        audit_e2=audit_e2,
        audit_v2=audit_v2,
        ecc_v=ecc,
    )


_WORKER: dict = {}


def _init_worker(g, p, R, audit, ecc_vertex, work_budget):
    _WORKER["args"] = (g, p, R, audit, ecc_vertex, work_budget)


def _run_remote(task):
    trial, seed = task
    g, p, R, audit, ecc_vertex, work_budget = _WORKER["args"]
    return run_trial(g, p, trial, seed, R, audit, ecc_vertex, work_budget)


def resolve_threads(requested: int | None = None) -> int:
    """Worker count: GIANTLAB_THREADS beats the option beats cpu count."""
    env = os.environ.get("GIANTLAB_THREADS")
    if env:
        return max(1, int(env))
    if requested is not None:
        return max(1, int(requested))
    return os.cpu_count() or 1


_STAT_PREFIX = ("c1_frac", "c2_size", "e1_frac", "excess_frac")
_STAT_SUFFIX = ("core_v_frac", "core_e_frac", "bridges_frac",
                "noncore_giant_frac", "audit_e1", "audit_v1", "audit_e2",
                "audit_v2", "ecc_v")


def summary_stats(rows: Sequence[ResultRow], dmax: int) -> dict[str, dict[str, float]]:
    """Mean, sample standard deviation, and standard error per column.

    Columns absent from every row (disabled audits, no eccentricity
    vertex) are omitted; a single trial reports zero spread.
    """
    columns: dict[str, list[float]] = {}

    def put(name: str, value):
        if value is not None:
            columns.setdefault(name, []).append(float(value))

    for row in rows:
        for name in _STAT_PREFIX:
            put(name, getattr(row, name))
        for k in range(1, dmax + 1):
            put(f"d{k}_frac", row.d_frac[k - 1])
        for k in range(2, dmax + 1):
            put(f"ds{k}_frac", row.ds_frac[k - 2])
        for name in _STAT_SUFFIX:
            put(name, getattr(row, name))

    out = {}
    for name in [c for c in csv_columns(dmax) if c in columns]:
        vals = np.asarray(columns[name], dtype=np.float64)
        mean = float(vals.mean())
        std = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
        out[name] = {
            "mean": mean,
            "std": std,
            "stderr": std / float(np.sqrt(vals.size)),
        }
    return out


def monte_carlo(g: Graph, p: float, trials: int, R: int = 50,
                master_seed: int = 0,
                options: MonteCarloOptions | None = None
                ) -> tuple[list[ResultRow], dict[str, dict[str, float]]]:
    """Run seeded percolation trials and aggregate per-column statistics.

    Row i always uses seed derive(master_seed, i); the worker pool (fork
    based, sized by resolve_threads) only changes wall time, never output.
    """
    if trials < 1:
        raise ParameterError(f"need at least one trial, got {trials}")
    options = options or MonteCarloOptions()
    tasks = [(i, derive(master_seed, i)) for i in range(int(trials))]
    threads = resolve_threads(options.threads)

    rows: list[ResultRow | None] = [None] * len(tasks)
    if threads > 1 and len(tasks) > 1:
        ctx = get_context("fork")
        init_args = (g, p, R, options.audit, options.ecc_vertex,
                     options.work_budget)
        with ProcessPoolExecutor(max_workers=threads, mp_context=ctx,
                                 initializer=_init_worker,
                                 initargs=init_args) as pool:
            for row in pool.map(_run_remote, tasks):
                rows[row.trial] = row
    else:
        for trial, seed in tasks:
            rows[trial] = run_trial(g, p, trial, seed, R, options.audit,
                                    options.ecc_vertex, options.work_budget)

    done = [r for r in rows if r is not None]
    dmax = int(g.degrees().max()) if g.m else 0
    return done, summary_stats(done, dmax)
