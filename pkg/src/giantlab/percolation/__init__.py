"""Percolation sampling, component measurements, and witness searches."""

from .mask import EdgeMask, sample
from .measures import (
    ComponentSummary,
    CoreSummary,
    component_diameter,
    components,
    diameter_lower_bound,
    giant_subgraph,
    path_counts,
    two_core,
)
from .montecarlo import (
    MonteCarloOptions,
    ResultRow,
    csv_columns,
    monte_carlo,
    resolve_threads,
    row_fields,
    run_trial,
    summary_stats,
    write_csv,
)
from .predictors import PredictorSets, local_predictors
from .witnesses import (
    MinorWitness,
    SeparatorResult,
    longest_path_lb,
    minor_order_lb,
    separator_search,
)

__all__ = [
    "ComponentSummary",
    "CoreSummary",
    "EdgeMask",
    "MinorWitness",
    "MonteCarloOptions",
    "PredictorSets",
    "ResultRow",
    "SeparatorResult",
    "component_diameter",
    "components",
    "csv_columns",
    "diameter_lower_bound",
    "giant_subgraph",
    "local_predictors",
    "longest_path_lb",
    "minor_order_lb",
    "monte_carlo",
    "path_counts",
    "resolve_threads",
    "row_fields",
    "run_trial",
    "sample",
    "separator_search",
    "summary_stats",
    "two_core",
    "write_csv",
]
