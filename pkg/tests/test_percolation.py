"""Percolation sampling and measurement tests.

Component structure is cross-checked against a plain BFS oracle kept
independent of the union-find implementation under test.
"""

import numpy as np
import pytest

from giantlab import Graph, random_regular
from giantlab.errors import BudgetError, ParameterError
from giantlab.percolation import (
    EdgeMask,
    component_diameter,
    components,
    diameter_lower_bound,
    giant_subgraph,
    local_predictors,
    path_counts,
    sample,
    two_core,
)
from giantlab._rng import generator


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def open_adjacency(g, mask):
    adj = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        if mask.open[i]:
            adj[u].append(int(v))
            adj[v].append(int(u))
    return adj


def bfs_components(g, mask):
    """Oracle: component membership lists via breadth-first search."""
    adj = open_adjacency(g, mask)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        members = []
        while queue:
            u = queue.pop()
            members.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(members))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def random_graph(rng, n, extra):
    edges = [(i, i + 1) for i in range(n - 1)]
    pool = [(u, v) for u in range(n) for v in range(u + 1, n) if v != u + 1]
    take = rng.choice(len(pool), size=min(extra, len(pool)), replace=False)
    edges += [pool[i] for i in take]
    return Graph(n, edges)


class TestSample:
    def test_all_open_at_one(self):
        g = cycle(50)
        mask = sample(g, 1.0, 3)
        assert mask.open.all()
        assert mask.open_count == 50
        assert mask.open_fraction() == 1.0

    def test_all_closed_at_zero(self):
        mask = sample(cycle(50), 0.0, 3)
        assert not mask.open.any()

    def test_deterministic_in_seed(self):
        g = cycle(500)
        a = sample(g, 0.6, 9)
        b = sample(g, 0.6, 9)
        assert np.array_equal(a.open, b.open)
        c = sample(g, 0.6, 10)
        assert not np.array_equal(a.open, c.open)

    def test_open_fraction_concentrates(self):
        n = 1_000_000
        src = np.arange(n, dtype=np.int64)
        edges = np.column_stack([src[:-1], src[1:]])
        g = Graph(n, np.vstack([edges, [[0, n - 1]]]))
        mask = sample(g, 0.75, 2024)
        assert abs(mask.open_fraction() - 0.75) < 0.002

    def test_rejects_bad_probability(self):
        with pytest.raises(ParameterError):
            sample(cycle(5), 1.2, 0)
        with pytest.raises(ParameterError):
            sample(cycle(5), -0.1, 0)

    def test_mask_validates_shape(self):
        g = cycle(5)
        with pytest.raises(ParameterError):
            EdgeMask(g, 0.5, 0, np.ones(4, dtype=bool))
        with pytest.raises(ParameterError):
            EdgeMask(g, 0.5, 0, np.ones(5, dtype=np.int8))


class TestComponents:
    def test_single_cycle(self):
        g = cycle(9)
        comp = components(g, sample(g, 1.0, 0))
        assert comp.c1_size == 9
        assert comp.c2_size == 0
        assert comp.e1_count == 9
        assert comp.excess == 1
        assert comp.component_count == 1
        assert list(comp.degree_counts) == [0, 0, 9]

    def test_empty_sample_gives_singletons(self):
        g = cycle(7)
        comp = components(g, sample(g, 0.0, 0))
        assert comp.c1_size == 1
        assert comp.c2_size == 1
        assert comp.component_count == 7
        assert comp.e1_count == 0
        assert comp.excess == 0
        # the giant tie-break lands on vertex 0
        assert comp.giant_mask[0]
        assert comp.giant_mask.sum() == 1

    def test_tie_break_toward_smallest_vertex(self):
        # two triangles of equal size; the giant is the one holding vertex 0
        g = Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
        comp = components(g, sample(g, 1.0, 0))
        assert comp.c1_size == 3
        assert comp.c2_size == 3
        assert list(np.flatnonzero(comp.giant_mask)) == [0, 1, 2]

    def test_matches_bfs_oracle(self):
        rng = generator(555)
        for _ in range(60):
            n = int(rng.integers(2, 60))
            g = random_graph(rng, n, int(rng.integers(0, 40)))
            mask = sample(g, float(rng.uniform(0.2, 0.9)), int(rng.integers(1 << 40)))
            comp = components(g, mask)
            oracle = bfs_components(g, mask)
            assert list(comp.sizes) == [len(c) for c in oracle]
            assert comp.c1_size == len(oracle[0])
            assert list(np.flatnonzero(comp.giant_mask)) == oracle[0]
            open_deg = np.zeros(n, dtype=int)
            for i, (u, v) in enumerate(g.edges):
                if mask.open[i]:
                    open_deg[u] += 1
                    open_deg[v] += 1
            e1 = sum(open_deg[v] for v in oracle[0]) // 2
            assert comp.e1_count == e1


class TestTwoCore:
    def test_forest_has_empty_core(self):
        g = path(8)
        core = two_core(g, sample(g, 1.0, 0))
        assert core.core_v == 0
        assert core.core_e == 0
        assert core.bridge_count == 0
        assert core.excess == 0

    def test_cycle_is_its_own_core(self):
        g = cycle(9)
        core = two_core(g, sample(g, 1.0, 0))
        assert core.core_v == 9
        assert core.core_e == 9
        assert core.bridge_count == 0
        assert list(core.degree_counts) == [0, 0, 9]

    def test_pendant_trees_peel_away(self):
        # triangle with a path of two pendant vertices hanging off vertex 0
        g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4)])
        core = two_core(g, sample(g, 1.0, 0))
        assert core.core_v == 3
        assert core.core_e == 3
        assert sorted(np.flatnonzero(core.core_vertex_mask)) == [0, 1, 2]

    def test_noncore_counts_other_components(self):
        # giant = path of 5 (no core), plus a separate triangle with core 3
        g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (5, 7), (6, 7)])
        core = two_core(g, sample(g, 1.0, 0))
        assert core.core_v == 0
        assert core.noncore_total == 3

    def test_bridge_inside_core(self):
        # two triangles joined by one edge: that edge survives peeling and
        # is the only bridge of the core
        g = Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
        core = two_core(g, sample(g, 1.0, 0))
        assert core.core_v == 6
        assert core.core_e == 7
        assert core.bridge_count == 1

    def test_core_preserves_excess(self):
        # peeling removes one vertex and one edge at a time, so the giant's
        # excess survives whenever any core is left
        rng = generator(77)
        for _ in range(40):
            n = int(rng.integers(4, 80))
            g = random_graph(rng, n, int(rng.integers(0, 60)))
            mask = sample(g, float(rng.uniform(0.4, 1.0)), int(rng.integers(1 << 40)))
            comp = components(g, mask)
            core = two_core(g, mask, comp)
            if core.core_v:
                assert core.excess == comp.excess


class TestDiameters:
    def test_path_eccentricity(self):
        g = path(6)
        assert component_diameter(g, sample(g, 1.0, 0), 0) == (5, 6)
        assert component_diameter(g, sample(g, 1.0, 0), 2) == (3, 6)

    def test_cycle_eccentricity(self):
        g = cycle(10)
        ecc, size = component_diameter(g, sample(g, 1.0, 0), 0)
        assert (ecc, size) == (5, 10)

    def test_closed_sample_isolates(self):
        g = cycle(10)
        assert component_diameter(g, sample(g, 0.0, 0), 3) == (0, 1)

    def test_diameter_lower_bound_path(self):
        assert diameter_lower_bound(path(40)) == 39

    def test_diameter_lower_bound_cycle(self):
        assert diameter_lower_bound(cycle(12)) == 6


class TestPathCounts:
    def test_cycle_counts(self):
        g = cycle(9)
        assert path_counts(g, sample(g, 1.0, 0)) == {1: 9, 2: 9, 3: 9}

    def test_triangle_has_no_three_step_path(self):
        g = cycle(3)
        assert path_counts(g, sample(g, 1.0, 0)) == {1: 3, 2: 3, 3: 0}

    def test_short_path_counts(self):
        g = path(4)
        assert path_counts(g, sample(g, 1.0, 0)) == {1: 3, 2: 2, 3: 1}

    def test_star_pairs_at_center(self):
        g = Graph(6, [(0, i) for i in range(1, 6)])
        assert path_counts(g, sample(g, 1.0, 0)) == {1: 5, 2: 10, 3: 0}

    def test_counts_restricted_to_giant(self):
        # giant path of 4 plus a disjoint edge: the edge contributes nothing
        g = Graph(6, [(0, 1), (1, 2), (2, 3), (4, 5)])
        assert path_counts(g, sample(g, 1.0, 0)) == {1: 3, 2: 2, 3: 1}

    def test_brute_force_small(self):
        rng = generator(31)
        for _ in range(25):
            n = int(rng.integers(3, 14))
            g = random_graph(rng, n, int(rng.integers(0, 14)))
            mask = sample(g, float(rng.uniform(0.5, 1.0)), int(rng.integers(1 << 40)))
            comp = components(g, mask)
            got = path_counts(g, mask, comp)
            adj = open_adjacency(g, mask)
            want = {1: 0, 2: 0, 3: 0}
            giant = set(np.flatnonzero(comp.giant_mask))
            for length in (1, 2, 3):
                count = 0
                for start in giant:
                    stack = [(start, (start,))]
                    while stack:
                        u, seq = stack.pop()
                        if len(seq) == length + 1:
                            count += 1
                            continue
                        for w in adj[u]:
                            if w not in seq:
                                stack.append((w, seq + (w,)))
                want[length] = count // 2
            assert got == want


class TestPredictors:
    def test_cycle_everything_qualifies(self):
        g = cycle(30)
        mask = sample(g, 1.0, 0)
        pr = local_predictors(g, mask, R=10)
        assert pr.e1_count == 30
        assert pr.e2_count == 30
        assert pr.v1_count == 30
        assert pr.v2_count == 30
        assert (pr.audit_e1, pr.audit_v1, pr.audit_e2, pr.audit_v2) == (0, 0, 0, 0)

    def test_long_path_window(self):
        g = path(200)
        mask = sample(g, 1.0, 0)
        pr = local_predictors(g, mask, R=50)
        assert pr.e1_count == 199
        assert pr.e2_count == 101
        assert pr.v1_count == 200
        assert pr.audit_e1 == 0
        assert pr.audit_v1 == 0
        # the core is empty here, so the two-sided sets are pure excess
        assert pr.audit_e2 == 101
        assert pr.audit_v2 == 102

    def test_containments(self):
        g = random_regular(500, 3, seed=5)
        mask = sample(g, 0.75, 17)
        pr = local_predictors(g, mask, R=8)
        assert not np.any(pr.e2_mask & ~pr.e1_mask)
        assert not np.any(pr.v2_mask & ~pr.v1_mask)
        assert not np.any(pr.e1_mask & ~mask.open)

    def test_audits_match_direct_recount(self):
        g = random_regular(300, 3, seed=6)
        mask = sample(g, 0.8, 23)
        comp = components(g, mask)
        core = two_core(g, mask, comp)
        pr = local_predictors(g, mask, R=6, comp=comp, core=core)
        eu = g.edges[:, 0]
        giant_edge = mask.open & comp.giant_mask[eu]
        giant_core_edge = core.core_edge_mask & comp.giant_mask[eu]
        giant_core_vertex = core.core_vertex_mask & comp.giant_mask
        assert pr.audit_e1 == int((pr.e1_mask ^ giant_edge).sum())
        assert pr.audit_v1 == int((pr.v1_mask ^ comp.giant_mask).sum())
        assert pr.audit_e2 == int((pr.e2_mask ^ giant_core_edge).sum())
        assert pr.audit_v2 == int((pr.v2_mask ^ giant_core_vertex).sum())

    def test_rejects_bad_radius(self):
        g = cycle(6)
        with pytest.raises(ParameterError):
            local_predictors(g, sample(g, 1.0, 0), R=0)

    def test_budget_guard(self):
        g = path(200)
        with pytest.raises(BudgetError):
            local_predictors(g, sample(g, 1.0, 0), R=50, work_budget=100)


class TestGiantSubgraph:
    def test_relabels_members(self):
        # giant is the 4-path on odd vertices once even ones are cut off
        g = Graph(8, [(1, 3), (3, 5), (5, 7), (0, 2)])
        sub, members = giant_subgraph(g, sample(g, 1.0, 0))
        assert list(members) == [1, 3, 5, 7]
        assert sub.n == 4
        assert sub.m == 3
        assert [tuple(e) for e in sub.edges] == [(0, 1), (1, 2), (2, 3)]

    def test_respects_mask(self):
        g = cycle(6)
        bits = np.ones(6, dtype=bool)
        bits[0] = False
        mask = EdgeMask(g, 0.5, 0, bits)
        sub, members = giant_subgraph(g, mask)
        assert sub.n == 6
        assert sub.m == 5
