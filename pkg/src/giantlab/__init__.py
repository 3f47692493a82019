"""giantlab: percolation forecasts, adversarial constructions, and seeded Monte Carlo."""

from .errors import (
    BudgetError,
    FormatError,
    GenerationError,
    GiantLabError,
    InfeasibleError,
    ParameterError,
    SchemaError,
)
from .graphs import (
    BuildReport,
    Graph,
    build_T_tree,
    cheeger_lower_bound,
    girth,
    high_girth_regular,
    parse_graph,
    random_regular,
    subdivide,
    theorem2_build,
    theorem3_build,
    write_graph,
)
from .percolation import (
    ComponentSummary,
    CoreSummary,
    EdgeMask,
    MinorWitness,
    MonteCarloOptions,
    PredictorSets,
    ResultRow,
    SeparatorResult,
    components,
    local_predictors,
    longest_path_lb,
    minor_order_lb,
    monte_carlo,
    sample,
    separator_search,
    two_core,
)
from .theory import (
    DegreeForecast,
    GiantForecast,
    PercolationParams,
    RootedTreeShape,
    SeriesForecast,
    degree_forecast,
    forecast_document,
    giant_forecast,
    large_d_series,
    path_density,
    solve_q,
    tree_density,
)

__version__ = "0.1.0"
