"""Figure rendering for sweep outputs.

Consumes the CSV and summary JSON files a sweep writes; never
recomputes any of the forecasts they contain.
"""

from .figures import (
    build_degree_figure,
    build_giant_figure,
    build_scaling_figure,
    render,
    save_svg,
)
from .inputs import (
    ReportInput,
    SchemaError,
    SummaryDoc,
    SweepTable,
    read_summary_json,
    read_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ReportInput",
    "SchemaError",
    "SummaryDoc",
    "SweepTable",
    "build_degree_figure",
    "build_giant_figure",
    "build_scaling_figure",
    "read_summary_json",
    "read_sweep_csv",
    "render",
    "save_svg",
]
