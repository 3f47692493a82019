"""The three sweep figures.

Theory curves are taken verbatim from the summary JSON; empirical
points are per-grid-point trial means from the CSV.  Rendering is
deterministic: fixed geometry, a pinned hash salt for SVG element ids,
and no timestamps in the output.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from .inputs import ReportInput, SchemaError, SummaryDoc, SweepTable

_RC = {"svg.hashsalt": "giantlab-plots", "svg.fonttype": "none"}
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2")


def save_svg(fig: Figure, path) -> Path:
    path = Path(path)
    with matplotlib.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def _first_value(table: SweepTable, label: str, name: str):
    vals = table.values(label, name)
    if not vals or vals[0] is None:
        raise SchemaError(
            f"{table.path}: column {name!r} is empty at grid point {label!r}")
    return vals[0]


def _ordered_labels(table: SweepTable, axis: str) -> list[str]:
    # grid labels sorted by their axis value, not lexically
    return sorted(table.labels,
                  key=lambda lab: _first_value(table, lab, axis))


def _degree(doc: SummaryDoc, label: str) -> int:
    d = doc.forecast_value(label, "d")
    if not isinstance(d, int) or d < 3:
        raise SchemaError(f"{doc.path}: forecast 'd' malformed for {label!r}")
    return d


def build_degree_figure(table: SweepTable, doc: SummaryDoc) -> Figure:
    labels = _ordered_labels(table, "p")
    d = _degree(doc, labels[0])
    table.require("p", *(f"d{k}_frac" for k in range(1, d + 1)),
                  *(f"ds{k}_frac" for k in range(2, d + 1)))
    ps = [_first_value(table, lab, "p") for lab in labels]

    fig = Figure(figsize=(6.8, 4.6), dpi=100)
    ax = fig.add_subplot()
    for k in range(1, d + 1):
        curve = [doc.forecast_value(lab, "alpha")[k - 1] for lab in labels]
        pts = [table.mean(lab, f"d{k}_frac") for lab in labels]
        c = _COLORS[(k - 1) % len(_COLORS)]
        ax.plot(ps, curve, color=c, lw=1.4, label=f"giant deg {k}")
        ax.plot(ps, pts, "o", color=c, ms=4, mfc="none")
    for k in range(2, d + 1):
        curve = [doc.forecast_value(lab, "beta")[k - 2] for lab in labels]
        pts = [table.mean(lab, f"ds{k}_frac") for lab in labels]
        c = _COLORS[(d + k - 2) % len(_COLORS)]
        ax.plot(ps, curve, color=c, lw=1.4, ls="--", label=f"core deg {k}")
        ax.plot(ps, pts, "s", color=c, ms=4, mfc="none")
    ax.set_xlabel("p")
    ax.set_ylabel("fraction of vertices")
    ax.set_title("degree profile: giant (solid) and 2-core (dashed)")
    ax.legend(fontsize=8, ncols=2)
    ax.grid(True, alpha=0.25)
    return fig


def build_giant_figure(table: SweepTable, doc: SummaryDoc) -> Figure:
    table.require("p", "c1_frac", "core_v_frac")
    labels = _ordered_labels(table, "p")
    ps = [_first_value(table, lab, "p") for lab in labels]

    fig = Figure(figsize=(6.8, 4.6), dpi=100)
    ax = fig.add_subplot()
    theta1 = [doc.forecast_value(lab, "theta1") for lab in labels]
    theta2 = [doc.forecast_value(lab, "theta2") for lab in labels]
    ax.plot(ps, theta1, color=_COLORS[0], lw=1.4, label="theta1 (giant)")
    ax.plot(ps, [table.mean(lab, "c1_frac") for lab in labels],
            "o", color=_COLORS[0], ms=4, mfc="none")
    ax.plot(ps, theta2, color=_COLORS[1], lw=1.4, ls="--",
            label="theta2 (2-core)")
    ax.plot(ps, [table.mean(lab, "core_v_frac") for lab in labels],
            "s", color=_COLORS[1], ms=4, mfc="none")
    ax.set_xlabel("p")
    ax.set_ylabel("fraction of vertices")
    ax.set_title("giant component and its 2-core")
    ax.legend(fontsize=9)
    ax.grid(True, alpha=0.25)
    return fig


def build_scaling_figure(table: SweepTable, doc: SummaryDoc) -> Figure:
    table.require("n", "c2_size")
    if doc.slope_fit is None:
        raise SchemaError(f"{doc.path}: missing top-level key 'slope_fit'")
    for key in ("slope", "intercept"):
        if key not in doc.slope_fit:
            raise SchemaError(f"{doc.path}: slope_fit is missing {key!r}")
    labels = _ordered_labels(table, "n")
    ns = [_first_value(table, lab, "n") for lab in labels]
    means = [table.mean(lab, "c2_size") for lab in labels]

    slope = doc.slope_fit["slope"]
    intercept = doc.slope_fit["intercept"]
    fit = [math.exp(intercept + slope * math.log(n)) for n in ns]

    fig = Figure(figsize=(6.8, 4.6), dpi=100)
    ax = fig.add_subplot()
    ax.plot(ns, fit, color=_COLORS[1], lw=1.2,
            label=f"fit: slope = {slope:.3f}")
    ax.plot(ns, means, "o", color=_COLORS[0], ms=5, mfc="none",
            label="mean |C2|")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("second component size")
    ax.set_title("second-component scaling")
    ax.annotate(f"slope = {slope:.3f}", xy=(0.05, 0.92),
                xycoords="axes fraction", fontsize=10)
    ax.legend(fontsize=9, loc="lower right")
    ax.grid(True, which="both", alpha=0.25)
    return fig


def render(inp: ReportInput) -> list[Path]:
    """Write every figure the inputs support; returns the paths."""
    table, doc = inp.load()
    out = Path(inp.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if doc.grid_kind == "p":
        written.append(save_svg(build_degree_figure(table, doc),
                                out / "degrees.svg"))
        written.append(save_svg(build_giant_figure(table, doc),
                                out / "giant.svg"))
    else:
        written.append(save_svg(build_scaling_figure(table, doc),
                                out / "scaling.svg"))
    return written
