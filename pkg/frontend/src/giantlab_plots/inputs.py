"""Readers for the two files a sweep leaves behind.

The CSV carries one row per (grid point, trial); the JSON summary
carries the resolved config, the closed-form forecasts per grid point,
aggregate statistics, and (for scaling sweeps) a slope fit.  Everything
downstream consumes these files only; no theory is recomputed here.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean


class SchemaError(ValueError):
    """An input file does not match the sweep output layout."""


def _parse_cell(text: str):
    # empty cells mean "not recorded", never zero
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class SweepTable:
    """Parsed sweep CSV: rows grouped by grid label in file order."""

    path: str
    columns: tuple[str, ...]
    rows: tuple[dict, ...]
    labels: tuple[str, ...]

    def require(self, *names: str) -> None:
        for name in names:
            if name not in self.columns:
                raise SchemaError(
                    f"{self.path}: missing required column {name!r}")

    def values(self, label: str, name: str) -> list:
        self.require(name)
        return [row[name] for row in self.rows if row["grid"] == label]

    def mean(self, label: str, name: str) -> float:
        vals = [v for v in self.values(label, name) if v is not None]
        if not vals:
            raise SchemaError(
                f"{self.path}: column {name!r} has no values at "
                f"grid point {label!r}")
        return fmean(vals)


def read_sweep_csv(path) -> SweepTable:
    path = Path(path)
    with open(path, newline="", encoding="ascii") as fh:
        numbered = [(i, ln) for i, ln in enumerate(fh, start=1)
                    if ln.strip() and not ln.startswith("#")]
    if not numbered:
        raise SchemaError(f"{path}: no header row")
    header = next(csv.reader([numbered[0][1]]))
    for name in ("grid", "trial", "n", "p"):
        if name not in header:
            raise SchemaError(f"{path}: missing required column {name!r}")
    rows = []
    labels: list[str] = []
    for lineno, line in numbered[1:]:
        record = next(csv.reader([line]))
        if len(record) != len(header):
            raise SchemaError(
                f"{path}: row {lineno} has {len(record)} fields, "
                f"header has {len(header)}")
        row = {name: _parse_cell(cell) for name, cell in zip(header, record)}
        row["grid"] = record[header.index("grid")]  # labels stay strings
        if row["grid"] not in labels:
            labels.append(row["grid"])
        rows.append(row)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return SweepTable(str(path), tuple(header), tuple(rows), tuple(labels))


@dataclass(frozen=True)
class SummaryDoc:
    """Parsed sweep summary JSON."""

    path: str
    config: dict
    forecast: dict
    summary_stats: dict
    slope_fit: dict | None

    @property
    def grid_kind(self) -> str:
        if "p_grid" in self.config:
            return "p"
        if "n_grid" in self.config:
            return "n"
        raise SchemaError(
            f"{self.path}: config carries neither 'p_grid' nor 'n_grid'")

    def forecast_value(self, label: str, key: str):
        try:
            doc = self.forecast[label]
        except KeyError:
            raise SchemaError(
                f"{self.path}: no forecast for grid point {label!r}") from None
        try:
            return doc[key]
        except KeyError:
            raise SchemaError(
                f"{self.path}: forecast for {label!r} is missing "
                f"{key!r}") from None


def read_summary_json(path) -> SummaryDoc:
    path = Path(path)
    with open(path, encoding="ascii") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    for key in ("config", "forecast", "summary_stats"):
        if key not in doc:
            raise SchemaError(f"{path}: missing top-level key {key!r}")
    return SummaryDoc(str(path), doc["config"], doc["forecast"],
                      doc["summary_stats"], doc.get("slope_fit"))


@dataclass(frozen=True)
class ReportInput:
    """The three paths a report run needs."""

    csv_path: Path
    forecast_path: Path
    out_dir: Path

    def load(self) -> tuple[SweepTable, SummaryDoc]:
        return read_sweep_csv(self.csv_path), read_summary_json(
            self.forecast_path)
