from .graph import Graph, from_edge_list, girth, parse_graph, subdivide, write_graph
from .generators import (
    high_girth_regular,
    moore_bound,
    pairing_model,
    random_regular,
    stub_repair_regular,
)
from .spectral import cheeger_lower_bound, is_connected, lambda2_and_vector
from .constructions import (
    BuildReport,
    build_T_tree,
    t_tree_leaf_range,
    theorem2_build,
    theorem3_build,
)

__all__ = [
    "Graph",
    "from_edge_list",
    "girth",
    "parse_graph",
    "subdivide",
    "write_graph",
    "high_girth_regular",
    "moore_bound",
    "pairing_model",
    "random_regular",
    "stub_repair_regular",
    "cheeger_lower_bound",
    "is_connected",
    "lambda2_and_vector",
    "BuildReport",
    "build_T_tree",
    "t_tree_leaf_range",
    "theorem2_build",
    "theorem3_build",
]
