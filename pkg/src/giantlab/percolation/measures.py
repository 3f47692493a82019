"""Component, 2-core, and distance measurements on percolation samples.

Component identity follows a fixed convention: components are ordered by
decreasing size with ties broken by smallest contained vertex, and C1 is
the first.  Degree histograms always count open-degree (degree within the
percolated subgraph), and the 2-core histogram counts degree within the
induced core subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError
from ..graphs import Graph
from .._kernels import (
    bfs_eccentricity,
    count_bridges,
    giant_path_counts,
    open_degrees,
    two_core_peel,
    uf_component_labels,
)
from .mask import EdgeMask


def _check_mask(g: Graph, mask: EdgeMask) -> None:
    if mask.graph is not g and mask.graph != g:
        raise ParameterError("mask belongs to a different graph")


@dataclass(frozen=True)
class ComponentSummary:
    """Open components of one sample, giant first."""

    sizes: np.ndarray = field(repr=False)
    c1_size: int
    c2_size: int
    e1_count: int
    excess: int
    degree_counts: np.ndarray = field(repr=False)  # index k = giant vertices of open-degree k
    giant_mask: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)

    @property
    def component_count(self) -> int:
        return int(self.sizes.size)


def components(g: Graph, mask: EdgeMask) -> ComponentSummary:
    """Union-find over open edges, with the documented tie-break."""
    _check_mask(g, mask)
    indptr, nbr, eid = g.adjacency()
    eu = g.edges[:, 0].astype(np.int64)
    ev = g.edges[:, 1].astype(np.int64)
    labels = uf_component_labels(eu, ev, mask.open, g.n)

    counts = np.bincount(labels, minlength=g.n)
    roots, first_member = np.unique(labels, return_index=True)
    sizes = counts[roots]
    # ties in size resolved toward the smallest member; np.unique scans
    # vertices in order, so first_member is exactly that minimum
    order = np.lexsort((first_member, -sizes))
    sizes_sorted = sizes[order]
    c1_root = roots[order[0]]
    giant = labels == c1_root

    deg_open = open_degrees(indptr, nbr, eid, mask.open)
    e1_count = int((mask.open & giant[eu]).sum())
    dmax = int(g.degrees().max()) if g.m else 0
    degree_counts = np.bincount(deg_open[giant], minlength=dmax + 1)

    c1 = int(sizes_sorted[0])
    c2 = int(sizes_sorted[1]) if sizes_sorted.size > 1 else 0
    return ComponentSummary(
        sizes=sizes_sorted.astype(np.int64),
        c1_size=c1,
        c2_size=c2,
        e1_count=e1_count,
        excess=e1_count - c1 + 1,
        degree_counts=degree_counts.astype(np.int64),
        giant_mask=giant,
        labels=labels,
    )


@dataclass(frozen=True)
class CoreSummary:
    """2-core measurements of one sample, centered on the giant's core."""

    core_v: int  # vertices of the giant's 2-core
    core_e: int
    degree_counts: np.ndarray = field(repr=False)  # index k = giant-core vertices of core-degree k
    bridge_count: int
    noncore_total: int  # 2-core vertices summed over all non-giant components
    excess: int
    core_vertex_mask: np.ndarray = field(repr=False)
    core_edge_mask: np.ndarray = field(repr=False)


def two_core(g: Graph, mask: EdgeMask,
             comp: ComponentSummary | None = None) -> CoreSummary:
    """Iterative peeling to the 2-core, plus bridges of the giant's core.

    Passing a precomputed ComponentSummary avoids repeating union-find.
    """
    _check_mask(g, mask)
    if comp is None:
        comp = components(g, mask)
    indptr, nbr, eid = g.adjacency()
    core_vertex, core_edge = two_core_peel(indptr, nbr, eid, mask.open)

    eu = g.edges[:, 0].astype(np.int64)
    giant_core_vertex = core_vertex & comp.giant_mask
    giant_core_edge = core_edge & comp.giant_mask[eu]
    core_v = int(giant_core_vertex.sum())
    core_e = int(giant_core_edge.sum())
    noncore_total = int(core_vertex.sum()) - core_v

    ends = g.edges[giant_core_edge].ravel()
    core_deg = np.bincount(ends, minlength=g.n)
    dmax = int(g.degrees().max()) if g.m else 0
    degree_counts = np.bincount(core_deg[giant_core_vertex], minlength=dmax + 1)

    bridges = count_bridges(indptr, nbr, eid, core_edge, giant_core_vertex)
    return CoreSummary(
        core_v=core_v,
        core_e=core_e,
        degree_counts=degree_counts.astype(np.int64),
        bridge_count=int(bridges),
        noncore_total=noncore_total,
        excess=core_e - core_v + 1 if core_v else 0,
        core_vertex_mask=core_vertex,
        core_edge_mask=core_edge,
    )


def component_diameter(g: Graph, mask: EdgeMask, v: int) -> tuple[int, int]:
    """(eccentricity of v within its open component, component size)."""
    _check_mask(g, mask)
    v = int(v)
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range")
    indptr, nbr, eid = g.adjacency()
    ecc, size, _ = bfs_eccentricity(indptr, nbr, eid, mask.open, v)
    return int(ecc), int(size)


def diameter_lower_bound(g: Graph, sweeps: int = 8) -> int:
    """Multi-sweep BFS lower bound on the diameter of the whole graph.

    Each sweep restarts from the farthest vertex of the previous one; the
    answer is exact on trees and a lower bound in general.
    """
    if g.n < 2:
        return 0
    indptr, nbr, eid = g.adjacency()
    all_open = np.ones(g.m, dtype=np.bool_)
    src = 0
    best = 0
    for _ in range(max(1, int(sweeps))):
        ecc, _, far = bfs_eccentricity(indptr, nbr, eid, all_open, src)
        if ecc <= best and far == src:
            break
        best = max(best, int(ecc))
        src = int(far)
    return best


def path_counts(g: Graph, mask: EdgeMask,
                comp: ComponentSummary | None = None) -> dict[int, int]:
    """Counts of simple open paths with 1, 2, 3 edges lying in the giant.

    The one-edge count equals the giant's edge count by construction,
    which anchors comparisons against the per-vertex density formula.
    """
    _check_mask(g, mask)
    if comp is None:
        comp = components(g, mask)
    indptr, nbr, eid = g.adjacency()
    eu = g.edges[:, 0].astype(np.int64)
    ev = g.edges[:, 1].astype(np.int64)
    deg_open = open_degrees(indptr, nbr, eid, mask.open)
    c1, c2, c3 = giant_path_counts(indptr, nbr, eid, eu, ev, mask.open,
                                   comp.giant_mask, deg_open)
    return {1: int(c1), 2: int(c2), 3: int(c3)}


def giant_subgraph(g: Graph, mask: EdgeMask,
                   comp: ComponentSummary | None = None) -> tuple[Graph, np.ndarray]:
    """The giant open component as a standalone Graph.

    Returns (subgraph, original_ids) with original_ids[i] the vertex of g
    that became vertex i; the inverse ordering is by ascending original id.
    """
    _check_mask(g, mask)
    if comp is None:
        comp = components(g, mask)
    members = np.flatnonzero(comp.giant_mask)
    remap = np.full(g.n, -1, np.int64)
    remap[members] = np.arange(members.size)
    eu = g.edges[:, 0].astype(np.int64)
    keep = mask.open & comp.giant_mask[eu]
    sub_edges = remap[g.edges[keep].astype(np.int64)]
    return Graph(members.size, sub_edges), members
