"""Adversarial builders: stretched trees, grafted cores, distant roots."""

import math

import numpy as np
import pytest

from giantlab.errors import ParameterError
from giantlab.graphs import (
    Graph,
    build_T_tree,
    girth,
    t_tree_leaf_range,
    theorem2_build,
    theorem3_build,
)


def eccentricity(g: Graph, v: int) -> int:
    indptr, nbr, _ = g.adjacency()
    dist = np.full(g.n, -1, np.int64)
    dist[v] = 0
    frontier = [v]
    ecc = 0
    while frontier:
        nxt = []
        for x in frontier:
            for y in nbr[indptr[x]:indptr[x + 1]]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    ecc = max(ecc, int(dist[y]))
                    nxt.append(int(y))
        frontier = nxt
    return ecc


class TestTTree:
    def test_plain_binary_depth_two(self):
        g = build_T_tree(2, 2, 0, 3)
        assert g.n == 7
        assert g.m == 6
        assert girth(g) == math.inf
        assert g.degrees().tolist() == [2, 3, 3, 1, 1, 1, 1]

    def test_last_level_stretched(self):
        g = build_T_tree(2, 2, 1, 2)
        assert g.n == 11
        assert g.m == 10

    def test_stretch_length_one_is_plain(self):
        assert build_T_tree(3, 3, 2, 1) == build_T_tree(3, 3, 0, 1)

    def test_leaf_range(self):
        lo, hi = t_tree_leaf_range(3, 2)
        assert (lo, hi) == (4, 13)
        g = build_T_tree(3, 2, 1, 4)
        assert g.degrees()[lo:hi].tolist() == [1] * 9

    def test_root_is_zero_with_full_arity(self):
        g = build_T_tree(4, 2, 2, 3)
        assert g.degrees()[0] == 4

    def test_height_grows_with_stretching(self):
        # two deepest edge levels stretched threefold: 1 + 2*3 edges deep
        g = build_T_tree(2, 3, 2, 3)
        assert eccentricity(g, 0) == 1 + 2 * 3

    def test_single_vertex(self):
        g = build_T_tree(2, 0, 0, 1)
        assert g.n == 1
        assert g.m == 0

    def test_validation(self):
        with pytest.raises(ParameterError):
            build_T_tree(1, 2, 0, 1)
        with pytest.raises(ParameterError):
            build_T_tree(2, 2, 3, 1)
        with pytest.raises(ParameterError):
            build_T_tree(2, 2, 1, 0)
        with pytest.raises(ParameterError):
            build_T_tree(2, -1, 0, 1)


class TestTheorem2:
    def test_reference_parameters(self):
        g, rep = theorem2_build(10**4, 0.5, 3, 0.75, seed=1)
        assert rep.parameters["h"] == 4
        assert rep.parameters["L"] == 13

    def test_reference_inequality(self):
        _, rep = theorem2_build(10**4, 0.5, 3, 0.75, seed=1)
        chk = {c["name"]: c for c in rep.checks}
        surv = chk["chain_survival_vs_inverse_sqrt_n"]
        assert surv["passed"]
        assert surv["value"] == pytest.approx(0.75**52 * 10**3, rel=1e-9)
        assert surv["value"] == pytest.approx(3.2e-4, rel=0.02)
        assert surv["threshold"] == pytest.approx(0.01, rel=1e-9)
        assert chk["single_chain_decay_vs_inverse_degree_sq"]["passed"]

    def test_cubic_output_is_regular(self):
        g, _ = theorem2_build(10**4, 0.5, 3, 0.75, seed=2)
        deg = g.degrees()
        assert deg.min() == 3 and deg.max() == 3

    def test_leaf_bookkeeping(self):
        g, rep = theorem2_build(10**4, 0.5, 3, 0.75, seed=3)
        d = 3
        h = rep.parameters["h"]
        assert rep.counts["n_leaves"] == rep.counts["n_subdiv"] * (d - 2) * (d - 1) ** h
        assert rep.counts["n"] == g.n
        assert g.region_counts()["H2"] == rep.counts["n_leaves"] + rep.counts["n2"]

    def test_edge_count_matches_regularity(self):
        g, _ = theorem2_build(10**4, 0.5, 3, 0.75, seed=4)
        assert 2 * g.m == 3 * g.n

    def test_deterministic(self):
        a, ra = theorem2_build(10**4, 0.5, 3, 0.75, seed=7)
        b, rb = theorem2_build(10**4, 0.5, 3, 0.75, seed=7)
        assert a == b
        assert ra.counts == rb.counts

    def test_seed_changes_graph(self):
        a, _ = theorem2_build(10**4, 0.5, 3, 0.75, seed=1)
        b, _ = theorem2_build(10**4, 0.5, 3, 0.75, seed=2)
        assert a != b

    def test_desk_scale_calibration(self):
        # small matching fraction and gadget keep the second core dominant
        g, rep = theorem2_build(3 * 10**4, 0.6, 3, 0.75,
                                delta=0.02, m_gadget=4, R=3, seed=5)
        assert rep.counts["n2"] > 0
        assert g.degrees().max() == 3
        frac = rep.counts["n_h2_region"] / rep.counts["n"]
        assert 0.4 < frac < 0.8
        assert rep.notes["overflow"] <= 1

    def test_quartic_output(self):
        g, rep = theorem2_build(2000, 0.5, 4, 0.6, seed=6)
        deg = g.degrees()
        assert deg.min() == 4 and deg.max() == 4

    def test_subcritical_p_rejected(self):
        with pytest.raises(ParameterError):
            theorem2_build(10**4, 0.5, 3, 0.4, seed=0)

    def test_girth_notes_present(self):
        _, rep = theorem2_build(10**4, 0.5, 3, 0.75, seed=8)
        assert rep.notes["girth_gadget"] >= 3
        assert rep.notes["girth_h1"] >= 3
        assert rep.passed()


class TestTheorem3:
    def test_tiny_parameters(self):
        g, v, rep = theorem3_build(0.5, 0.9, 3000, seed=1)
        p = rep.parameters
        assert (p["d"], p["h_n"], p["h_star"]) == (5, 4, 3)
        assert (p["alpha"], p["beta"], p["N"]) == (3, 5, 625)
        assert v == 0
        assert g.degrees()[v] == 5

    def test_reference_parameters(self):
        # medium target hits the same d with a shallower tree
        _, _, rep = theorem3_build(0.5, 0.5, 60000, seed=1)
        p = rep.parameters
        assert p["d"] == 16
        assert p["h_n"] == 3
        assert p["alpha"] == 8
        assert p["beta"] == 8
        assert p["N"] == 16**3

    def test_partner_count_bracketed(self):
        _, _, rep = theorem3_build(0.5, 0.9, 3000, seed=2)
        N = rep.parameters["N"]
        assert 3000 / rep.parameters["d"] < N <= 3000
        assert all(c["passed"] for c in rep.checks)

    def test_max_degree_attained_exactly_at_partners(self):
        g, _, rep = theorem3_build(0.5, 0.9, 3000, seed=3)
        d = rep.parameters["d"]
        N = rep.parameters["N"]
        deg = g.degrees()
        assert deg.max() == d + 2
        # one partner gives up a stub when N*d is odd
        expected = N - 1 if (N * d) % 2 else N
        assert int((deg == d + 2).sum()) == expected

    def test_region_counts(self):
        g, _, rep = theorem3_build(0.5, 0.9, 3000, seed=4)
        regions = g.region_counts()
        assert regions["T1"] == rep.counts["n_T1"]
        assert regions["T2"] == rep.counts["n_T2"]
        assert regions["F"] == rep.counts["n_F"]
        assert g.n == rep.counts["n"]

    def test_deterministic(self):
        a, _, _ = theorem3_build(0.5, 0.9, 3000, seed=5)
        b, _, _ = theorem3_build(0.5, 0.9, 3000, seed=5)
        assert a == b

    def test_validation(self):
        with pytest.raises(ParameterError):
            theorem3_build(1.5, 0.5, 1000, seed=0)
        with pytest.raises(ParameterError):
            theorem3_build(0.5, 1.5, 1000, seed=0)
        # n_target below the required degree leaves no room for any tree
        with pytest.raises(ParameterError):
            theorem3_build(0.5, 0.5, 10, seed=0)
