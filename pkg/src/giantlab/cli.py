"""Command line front end.

Subcommands: forecast, build, percolate, sweep, audit.  Configuration is
a flat key=value file overridable by flags; the fully resolved mapping is
echoed into every output so a result file identifies its own provenance.
Exit codes are stable: 0 success, 2 usage, 3 I/O, 4 generation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import __version__
from ._rng import derive
from .errors import (
    FormatError,
    GenerationError,
    GiantLabError,
    InfeasibleError,
    ParameterError,
)
from .graphs import (
    high_girth_regular,
    parse_graph,
    random_regular,
    theorem2_build,
    theorem3_build,
    write_graph,
)
from .percolation import (
    MonteCarloOptions,
    components,
    giant_subgraph,
    local_predictors,
    longest_path_lb,
    minor_order_lb,
    monte_carlo,
    sample,
    separator_search,
    two_core,
    write_csv,
)
from .theory import PercolationParams, forecast_document

# seed streams kept structurally disjoint from trial indices, which are
# always a single derive() level below the master seed
_GRAPH_STREAM = 1 << 32
_SWEEP_STREAM = (1 << 32) + 1

_MINOR_SOFT_TARGET = 20


class UsageError(GiantLabError):
    """Bad flags or config; maps to exit code 2."""


def parse_count(text: str) -> int:
    """Vertex counts in the forms 100000, 1e5, 10^5, or 3*10^5."""
    s = str(text).strip().lower().replace(" ", "")
    m = re.fullmatch(r"10\^(\d+)", s)
    if m:
        return 10 ** int(m.group(1))
    m = re.fullmatch(r"(\d+)\*10\^(\d+)", s)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    try:
        value = float(s)
    except ValueError:
        raise ValueError(f"not a count: {text!r}") from None
    if not value.is_integer():
        raise ValueError(f"count must be an integer: {text!r}")
    return int(value)


def _parse_bool(text: str) -> bool:
    s = str(text).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# every key a percolate/sweep config may carry, with its parser
_CONFIG_SCHEMA = {
    "kind": str,
    "graph": str,
    "n": parse_count,
    "d": int,
    "p": float,
    "alpha": float,
    "eps": float,
    "delta": float,
    "m_gadget": int,
    "girth": int,
    "R": int,
    "trials": int,
    "seed": int,
    "audit": _parse_bool,
    "ecc_vertex": int,
    "threads": int,
    "csv": str,
    "summary": str,
    "p_grid": str,
    "n_grid": str,
}


def read_config(path) -> dict:
    """Flat key=value lines; blank lines and # comments are ignored."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    out: dict = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _CONFIG_SCHEMA:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            out[key] = _CONFIG_SCHEMA[key](value.strip())
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return out


def _merge_flags(config: dict, args: argparse.Namespace, keys) -> dict:
    merged = dict(config)
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


# output sinks are not provenance: leaving them out keeps repeated runs
# byte-identical no matter where their files land
_SINK_KEYS = ("csv", "summary")


def _echo_lines(config: dict) -> list[str]:
    lines = [f"giantlab v{__version__}"]
    lines += [f"{k}={config[k]}" for k in sorted(config) if k not in _SINK_KEYS]
    return lines


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _emit_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, default=_json_default) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# graph acquisition shared by percolate, sweep, audit
# ---------------------------------------------------------------------------

def _require(config: dict, keys, context: str) -> None:
    missing = [k for k in keys if k not in config]
    if missing:
        raise UsageError(f"{context} needs {', '.join(missing)}")


def build_graph(config: dict, p: float, graph_seed: int):
    """Build or load the host graph.

    Returns (graph, effective degree for forecasts, default eccentricity
    vertex or None, build report dict or None).
    """
    kind = config.get("kind", "file" if "graph" in config else None)
    if kind is None:
        raise UsageError("set kind=... or graph=PATH")
    if kind == "file":
        _require(config, ["graph"], "kind=file")
        g = parse_graph(config["graph"])
        d_eff = int(g.degrees().max()) if g.m else 0
        return g, d_eff, None, None
    if kind == "regular":
        _require(config, ["n", "d"], "kind=regular")
        g = random_regular(config["n"], config["d"], seed=graph_seed)
        return g, config["d"], None, None
    if kind == "theorem2":
        _require(config, ["n", "alpha", "d"], "kind=theorem2")
        g, report = theorem2_build(
            config["n"], config["alpha"], config["d"], p,
            delta=config.get("delta", 0.1),
            m_gadget=config.get("m_gadget"),
            R=config.get("girth", 3),
            seed=graph_seed)
        return g, config["d"], None, report.to_json()
    if kind == "theorem3":
        _require(config, ["eps", "n"], "kind=theorem3")
        g, root, report = theorem3_build(p, config["eps"], config["n"],
                                         seed=graph_seed)
        return g, int(report.parameters["d"]), root, report.to_json()
    if kind == "high_girth":
        _require(config, ["n", "d", "girth"], "kind=high_girth")
        g = high_girth_regular(config["n"], config["d"], config["girth"])
        return g, config["d"], None, None
    raise UsageError(f"unknown kind {kind!r}")


def _forecast_or_none(d: int, p: float):
    try:
        return forecast_document(PercolationParams(d=d, p=p))
    except ParameterError:
        return None


# ---------------------------------------------------------------------------
# forecast
# ---------------------------------------------------------------------------

def cmd_forecast(args) -> int:
    if not 3 <= args.d:
        raise UsageError(f"-d must be at least 3, got {args.d}")
    if not 0.0 <= args.p <= 1.0:
        raise UsageError(f"-p must lie in [0, 1], got {args.p}")
    doc = forecast_document(PercolationParams(d=args.d, p=args.p))
    if args.json:
        _emit_json(doc, None)
        return 0
    print(f"d={doc['d']} p={doc['p']:g} "
          f"{'supercritical' if not doc['subcritical'] else 'subcritical'}")
    for key in ("q", "theta1", "eta1", "theta2", "eta2", "excess"):
        print(f"{key}={doc[key]:.6f}")
    for k, value in enumerate(doc["alpha"], start=1):
        print(f"alpha[{k}]={value:.6f}")
    for k, value in enumerate(doc["beta"], start=2):
        print(f"beta[{k}]={value:.6f}")
    return 0


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    config = {k: v for k, v in (
        ("kind", args.kind), ("n", args.n), ("d", args.d), ("p", args.p),
        ("alpha", args.alpha), ("eps", args.eps), ("delta", args.delta),
        ("m_gadget", args.m_gadget), ("girth", args.girth),
        ("seed", args.seed)) if v is not None}
    if args.kind in ("theorem2", "theorem3") and "p" not in config:
        raise UsageError(f"--kind {args.kind} needs -p")
    seed = config.get("seed", 0)
    g, _, root, report = build_graph(config, config.get("p", 0.0), seed)
    write_graph(g, args.out, comments=_echo_lines(config))
    doc = {"config": {"version": __version__, **config}}
    if report is None:
        doc["report"] = {
            "kind": args.kind,
            "parameters": {k: v for k, v in config.items() if k != "kind"},
            "counts": {"n": g.n, "m": g.m},
            "checks": [],
            "notes": {},
        }
    else:
        doc["report"] = report
    if root is not None:
        doc["report"]["notes"]["root"] = root
    _emit_json(doc, args.report)
    return 0


# ---------------------------------------------------------------------------
# percolate
# ---------------------------------------------------------------------------

_PERCOLATE_FLAGS = ("kind", "graph", "n", "d", "p", "alpha", "eps", "delta",
                    "m_gadget", "girth", "R", "trials", "seed", "audit",
                    "ecc_vertex", "threads", "csv", "summary")


def _resolve_experiment(args, extra_keys=()) -> dict:
    config = read_config(args.config) if args.config else {}
    config = _merge_flags(config, args, _PERCOLATE_FLAGS + tuple(extra_keys))
    config.setdefault("trials", 1)
    config.setdefault("seed", 0)
    config.setdefault("R", 50)
    config.setdefault("audit", False)
    if config["trials"] < 1:
        raise UsageError(f"trials must be positive, got {config['trials']}")
    return config


def _run_block(g, d_eff, config, p, master_seed, default_ecc):
    ecc_vertex = config.get("ecc_vertex", default_ecc)
    options = MonteCarloOptions(
        audit=config["audit"],
        ecc_vertex=ecc_vertex,
        threads=config.get("threads"))
    rows, stats = monte_carlo(g, p, config["trials"], R=config["R"],
                              master_seed=master_seed, options=options)
    return rows, stats, _forecast_or_none(d_eff, p)


def cmd_percolate(args) -> int:
    config = _resolve_experiment(args)
    if "p" not in config:
        raise UsageError("percolate needs -p or p= in the config")
    if "csv" not in config:
        raise UsageError("percolate needs --csv or csv= in the config")
    p = config["p"]
    seed = config["seed"]
    g, d_eff, default_ecc, report = build_graph(
        config, p, derive(seed, _GRAPH_STREAM, 0))

    rows, stats, forecast = _run_block(g, d_eff, config, p, seed, default_ecc)
    dmax = int(g.degrees().max()) if g.m else 0
    write_csv(config["csv"], rows, dmax, _echo_lines(config))

    doc = {
        "config": {"version": __version__, **config},
        "forecast": forecast,
        "summary_stats": stats,
    }
    if report is not None:
        doc["build_report"] = report
    _emit_json(doc, config.get("summary"))
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _parse_p_grid(text: str) -> list[float]:
    s = text.strip()
    if ":" in s:
        parts = s.split(":")
        if len(parts) != 3:
            raise UsageError(f"p_grid range must read start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(x) for x in parts)
        except ValueError:
            raise UsageError(f"bad p_grid range {text!r}") from None
        if step <= 0:
            raise UsageError(f"p_grid step must be positive, got {step}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(max(count, 0))]
    return [float(x) for x in s.split(",") if x.strip()]


def _parse_n_grid(text: str) -> list[int]:
    try:
        return [parse_count(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_sweep(args) -> int:
    config = _resolve_experiment(args, extra_keys=("p_grid", "n_grid"))
    if "csv" not in config:
        raise UsageError("sweep needs --csv or csv= in the config")
    has_p = "p_grid" in config
    has_n = "n_grid" in config
    if has_p == has_n:
        raise UsageError("sweep needs exactly one of p_grid or n_grid")

    if has_p:
        grid = _parse_p_grid(config["p_grid"])
    else:
        grid = _parse_n_grid(config["n_grid"])
        if "p" not in config:
            raise UsageError("an n_grid sweep needs -p or p= in the config")
    if not grid:
        raise UsageError("sweep grid is empty")

    seed = config["seed"]
    all_rows = []
    grid_values = []
    forecasts = {}
    stats_by_point = {}
    mean_c2 = []
    dmax = 0
    for idx, point in enumerate(grid):
        point_config = dict(config)
        if has_p:
            p = float(point)
        else:
            p = config["p"]
            point_config["n"] = int(point)
        # the host graph depends on p for theorem2 builds, so a fresh
        # graph per grid point keeps the two sweep flavors uniform
        g, d_eff, default_ecc, _ = build_graph(
            point_config, p, derive(seed, _GRAPH_STREAM, idx))
        rows, stats, forecast = _run_block(
            g, d_eff, point_config, p, derive(seed, _SWEEP_STREAM, idx),
            default_ecc)
        label = f"{point:g}" if has_p else str(point)
        forecasts[label] = forecast
        stats_by_point[label] = stats
        all_rows.extend(rows)
        grid_values.extend([label] * len(rows))
        dmax = max(dmax, int(g.degrees().max()) if g.m else 0)
        mean_c2.append(stats["c2_size"]["mean"])

    write_csv(config["csv"], all_rows, dmax, _echo_lines(config),
              extra=[("grid", grid_values)])

    doc = {
        "config": {"version": __version__, **config},
        "forecast": forecasts,
        "summary_stats": stats_by_point,
    }
    if has_n and config.get("kind") == "theorem2":
        log_n = np.log([float(x) for x in grid])
        log_c2 = np.log(np.maximum(mean_c2, 1.0))
        slope, intercept = np.polyfit(log_n, log_c2, 1)
        doc["slope_fit"] = {
            "slope": float(slope),
            "intercept": float(intercept),
            "log_n": log_n.tolist(),
            "log_mean_c2": log_c2.tolist(),
        }
    _emit_json(doc, config.get("summary"))
    return 0


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

def cmd_audit(args) -> int:
    config = _resolve_experiment(args)
    if "p" not in config:
        raise UsageError("audit needs -p or p= in the config")
    p = config["p"]
    seed = config["seed"]
    g, d_eff, default_ecc, _ = build_graph(
        config, p, derive(seed, _GRAPH_STREAM, 0))

    mask = sample(g, p, derive(seed, 0))
    comp = components(g, mask)
    core = two_core(g, mask, comp)
    preds = local_predictors(g, mask, config["R"], comp, core)
    path = longest_path_lb(g, mask)
    sub, _ = giant_subgraph(g, mask, comp)
    notes = []
    if sub.n and sub.m:
        sep = separator_search(sub)
        minor = minor_order_lb(sub)
        if minor.order < _MINOR_SOFT_TARGET:
            notes.append(f"minor order {minor.order} below soft target "
                         f"{_MINOR_SOFT_TARGET}")
        separator_doc = {
            "found": sep.found,
            "exhaustive": sep.exhaustive,
            "size": sep.size if sep.found else None,
        }
        minor_order = minor.order
    else:
        separator_doc = None
        minor_order = None
        notes.append("giant too small for witness searches")

    n = g.n
    doc = {
        "config": {"version": __version__, **config},
        "forecast": _forecast_or_none(d_eff, p),
        "sample": {
            "n": n,
            "m": g.m,
            "c1_frac": comp.c1_size / n,
            "c2_size": comp.c2_size,
            "e1_frac": comp.e1_count / n,
            "core_v_frac": core.core_v / n,
            "core_e_frac": core.core_e / n,
            "bridges_frac": core.bridge_count / n,
            "noncore_giant_frac": core.noncore_total / n,
        },
        "predictors": {
            "R": config["R"],
            "e1": preds.e1_count,
            "e2": preds.e2_count,
            "v1": preds.v1_count,
            "v2": preds.v2_count,
            "audit_e1": preds.audit_e1,
            "audit_v1": preds.audit_v1,
            "audit_e2": preds.audit_e2,
            "audit_v2": preds.audit_v2,
        },
        "witnesses": {
            "longest_path_edges": len(path) - 1,
            "separator": separator_doc,
            "minor_order": minor_order,
        },
        "notes": notes,
    }
    _emit_json(doc, config.get("summary"))
    return 0


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------

def _add_builder_flags(sub, with_kind_default=None):
    sub.add_argument("--kind", choices=["regular", "theorem2", "theorem3",
                                        "high_girth", "file"],
                     default=with_kind_default)
    sub.add_argument("--graph", help="path to a graph file (kind=file)")
    sub.add_argument("-n", "--n", type=parse_count,
                     help="vertex count, accepts 1e5 and 10^5 forms")
    sub.add_argument("-d", "--d", type=int, help="degree")
    sub.add_argument("-p", "--p", type=float, help="edge retention probability")
    sub.add_argument("--alpha", type=float, help="second-component exponent")
    sub.add_argument("--eps", type=float, help="degree exponent control")
    sub.add_argument("--delta", type=float, help="matching fraction")
    sub.add_argument("--m-gadget", dest="m_gadget", type=int,
                     help="gadget graph size")
    sub.add_argument("--girth", type=int, help="girth target for built parts")
    sub.add_argument("--seed", type=int, help="master seed")


def _add_experiment_flags(sub):
    _add_builder_flags(sub)
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("-R", "--R", type=int, help="predictor radius")
    sub.add_argument("--trials", type=int)
    sub.add_argument("--audit", dest="audit", action="store_const", const=True)
    sub.add_argument("--no-audit", dest="audit", action="store_const", const=False)
    sub.add_argument("--ecc-vertex", dest="ecc_vertex", type=int,
                     help="vertex whose eccentricity each trial records")
    sub.add_argument("--threads", type=int)
    sub.add_argument("--csv", help="output CSV path")
    sub.add_argument("--summary", help="output summary JSON path (default stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giantlab",
        description="Percolation experiments on regular graphs.")
    parser.add_argument("--version", action="version",
                        version=f"giantlab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    fc = subs.add_parser("forecast", help="print theory forecasts for (d, p)")
    fc.add_argument("-d", "--d", type=int, required=True)
    fc.add_argument("-p", "--p", type=float, required=True)
    fc.add_argument("--json", action="store_true")
    fc.set_defaults(func=cmd_forecast)

    bd = subs.add_parser("build", help="build a graph and write it to a file")
    _add_builder_flags(bd)
    bd.add_argument("--out", required=True, help="output graph path")
    bd.add_argument("--report", help="report JSON path (default stdout)")
    bd.set_defaults(func=cmd_build)

    pc = subs.add_parser("percolate", help="run percolation trials on one graph")
    _add_experiment_flags(pc)
    pc.set_defaults(func=cmd_percolate)

    sw = subs.add_parser("sweep", help="percolate across a p or n grid")
    _add_experiment_flags(sw)
    sw.add_argument("--p-grid", dest="p_grid",
                    help="comma list or start:stop:step")
    sw.add_argument("--n-grid", dest="n_grid", help="comma list of counts")
    sw.set_defaults(func=cmd_sweep)

    ad = subs.add_parser("audit", help="predictor audits and structure witnesses")
    _add_experiment_flags(ad)
    ad.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
