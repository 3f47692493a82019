"""Local radius-R predictors for giant and 2-core membership.

For an open edge xy, the one-sided event asks whether the component of y
in the open graph minus xy reaches R vertices.  E1 collects open edges
where either side reaches R, E2 those where both do; V1 holds vertices
with an incident open edge whose far side reaches R, and V2 the endpoints
of E2.  The audit fields measure how far these local rules drift from the
true giant and giant-2-core, which is the package's empirical handle on
their accuracy as R grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BudgetError, ParameterError
from ..graphs import Graph
from .._kernels import predictor_flags
from .mask import EdgeMask
from .measures import ComponentSummary, CoreSummary, components, two_core

# Upper bound on visited vertices across all truncated searches of one
# call; 2 queries of at most R visits per open edge must fit under it.
_WORK_BUDGET = 500_000_000


@dataclass(frozen=True)
class PredictorSets:
    """Predictor sets of one sample plus their audits against the truth."""

    R: int
    e1_mask: np.ndarray = field(repr=False)
    e2_mask: np.ndarray = field(repr=False)
    v1_mask: np.ndarray = field(repr=False)
    v2_mask: np.ndarray = field(repr=False)
    audit_e1: int
    audit_v1: int
    audit_e2: int
    audit_v2: int

    @property
    def e1_count(self) -> int:
        return int(self.e1_mask.sum())

    @property
    def e2_count(self) -> int:
        return int(self.e2_mask.sum())

    @property
    def v1_count(self) -> int:
        return int(self.v1_mask.sum())

    @property
    def v2_count(self) -> int:
        return int(self.v2_mask.sum())


def local_predictors(g: Graph, mask: EdgeMask, R: int = 50,
                     comp: ComponentSummary | None = None,
                     core: CoreSummary | None = None,
                     work_budget: int = _WORK_BUDGET) -> PredictorSets:
    """Evaluate both directional events per open edge and audit the sets.

    Cost is O(R * d) per open edge; a call whose worst case exceeds
    work_budget raises BudgetError before starting.
    """
    R = int(R)
    if R < 1:
        raise ParameterError(f"radius must be >= 1, got {R}")
    if mask.graph is not g and mask.graph != g:
        raise ParameterError("mask belongs to a different graph")
    open_edges = mask.open_count
    if 2 * open_edges * R > work_budget:
        raise BudgetError(
            f"predictor search needs up to {2 * open_edges * R} vertex visits, "
            f"over the budget of {work_budget}; lower R or raise work_budget")

    indptr, nbr, eid = g.adjacency()
    eu = g.edges[:, 0].astype(np.int64)
    ev = g.edges[:, 1].astype(np.int64)
    a_uv, a_vu = predictor_flags(indptr, nbr, eid, eu, ev, mask.open, R)

    e1 = mask.open & (a_uv | a_vu)
    e2 = mask.open & (a_uv & a_vu)
    v1 = np.zeros(g.n, dtype=np.bool_)
    v1[eu[mask.open & a_uv]] = True
    v1[ev[mask.open & a_vu]] = True
    v2 = np.zeros(g.n, dtype=np.bool_)
    v2[eu[e2]] = True
    v2[ev[e2]] = True

    if comp is None:
        comp = components(g, mask)
    if core is None:
        core = two_core(g, mask, comp)
    giant_edge = mask.open & comp.giant_mask[eu]
    giant_core_vertex = core.core_vertex_mask & comp.giant_mask
    giant_core_edge = core.core_edge_mask & comp.giant_mask[eu]

    return PredictorSets(
        R=R,
        e1_mask=e1,
        e2_mask=e2,
        v1_mask=v1,
        v2_mask=v2,
        audit_e1=int((e1 ^ giant_edge).sum()),
        audit_v1=int((v1 ^ comp.giant_mask).sum()),
        audit_e2=int((e2 ^ giant_core_edge).sum()),
        audit_v2=int((v2 ^ giant_core_vertex).sum()),
    )
