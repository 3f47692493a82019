"""Adversarial graph families with slow or localized percolation behavior.

Two parameterized builders live here.  The first grafts a small random
regular core (H1) onto a large one (H2) through sparse trees whose edges
are stretched into chains of high-girth gadgets; the chains attenuate the
percolation signal so the second-largest cluster tracks the small core.
The second glues two subdivided complete trees onto a subdivided regular
partner graph so that one distinguished root sits far from everything
while clusters stay tiny.

Both return the finished Graph together with a BuildReport recording the
resolved parameters, region sizes, and the analytic inequalities the
parameters were chosen to satisfy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import GenerationError, ParameterError
from .._rng import derive
from .graph import Graph, girth, subdivide
from .generators import high_girth_regular, pairing_model, random_regular, stub_repair_regular


@dataclass(frozen=True)
class BuildReport:
    """What a construction actually built, and whether its sizing holds."""

    kind: str
    parameters: dict[str, Any]
    counts: dict[str, int]
    checks: list[dict[str, Any]] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "parameters": dict(self.parameters),
            "counts": dict(self.counts),
            "checks": [dict(c) for c in self.checks],
            "notes": dict(self.notes),
        }


def _check(name: str, value: float, relation: str, threshold: float) -> dict[str, Any]:
    if relation == "<=":
        ok = value <= threshold
    elif relation == "<":
        ok = value < threshold
    elif relation == ">":
        ok = value > threshold
    else:
        raise ValueError(relation)
    return {"name": name, "value": value, "relation": relation,
            "threshold": threshold, "passed": bool(ok)}


# ---------------------------------------------------------------------------
# complete trees with stretched lower levels
# ---------------------------------------------------------------------------

def _tree_level_offsets(k: int, h: int) -> np.ndarray:
    """offsets[l] = first vertex id at depth l in the level-major layout."""
    sizes = k ** np.arange(h + 1, dtype=object)
    offsets = np.zeros(h + 2, dtype=np.int64)
    for level in range(h + 1):
        offsets[level + 1] = offsets[level] + int(sizes[level])
    return offsets


def _plain_tree_edges(k: int, h: int) -> np.ndarray:
    """Parent-child edges of the complete k-ary depth-h tree, level-major."""
    offsets = _tree_level_offsets(k, h)
    blocks = []
    for level in range(1, h + 1):
        children = np.arange(offsets[level], offsets[level + 1], dtype=np.int64)
        parents = offsets[level - 1] + (children - offsets[level]) // k
        blocks.append(np.stack([parents, children], axis=1))
    if not blocks:
        return np.zeros((0, 2), np.int64)
    return np.concatenate(blocks)


def t_tree_leaf_range(k: int, h: int) -> tuple[int, int]:
    """Vertex-id range [start, stop) of the depth-h leaves; stable under
    the stretched build because fresh path vertices are appended."""
    offsets = _tree_level_offsets(k, h)
    return int(offsets[h]), int(offsets[h + 1])


def build_T_tree(k: int, h: int, h_star: int, L_star: int) -> Graph:
    """Complete k-ary depth-h tree whose deepest h_star edge levels are
    each stretched into a path of L_star edges.

    Vertices 0..(k^(h+1)-1)/(k-1)-1 are the tree in level-major order
    (root is 0); stretch vertices follow.  L_star = 1 leaves the tree as
    is.
    """
    k = int(k)
    h = int(h)
    h_star = int(h_star)
    L_star = int(L_star)
    if k < 2:
        raise ParameterError(f"arity must be >= 2, got {k}")
    if h < 0:
        raise ParameterError(f"depth must be >= 0, got {h}")
    if not 0 <= h_star <= h:
        raise ParameterError(f"stretched depth must lie in [0, {h}], got {h_star}")
    if L_star < 1:
        raise ParameterError(f"stretch length must be >= 1, got {L_star}")
    offsets = _tree_level_offsets(k, h)
    edges = _plain_tree_edges(k, h)
    base = Graph(int(offsets[h + 1]), edges) if h > 0 else Graph(1, np.zeros((0, 2), np.int64))
    if h_star == 0 or L_star == 1 or h == 0:
        return base
    deep = edges[edges[:, 1] >= offsets[h - h_star + 1]]
    return subdivide(base, deep, L_star)


# ---------------------------------------------------------------------------
# small core behind gadget chains
# ---------------------------------------------------------------------------

def _greedy_matching(edges: np.ndarray, n: int) -> np.ndarray:
    """Indices of a maximal matching, scanning edges in id order."""
    used = np.zeros(n, dtype=bool)
    picked = []
    for i in range(edges.shape[0]):
        a = int(edges[i, 0])
        b = int(edges[i, 1])
        if not used[a] and not used[b]:
            used[a] = True
            used[b] = True
            picked.append(i)
    return np.array(picked, dtype=np.int64)


def theorem2_build(n_target: int, alpha: float, d: int, p: float,
                   delta: float = 0.1, m_gadget: int | None = None,
                   R: int = 3, seed: int = 0) -> tuple[Graph, BuildReport]:
    """d-regular graph of roughly n_target vertices whose second-largest
    percolation cluster scales like n_target**alpha.

    A random d-regular core H1 on ~n_target**alpha vertices has a
    delta-fraction matching subdivided; each subdivision vertex carries
    d-2 complete (d-1)-ary trees of depth h whose edges are replaced by
    chains of L high-girth gadgets, and the tree leaves are absorbed as
    degree-(d-1) vertices into a second random core H2 that fills the
    remaining budget.  h and L are sized so open chains are too rare to
    bridge the cores at percolation parameter p.

    Region labels: H1, SUBDIV, TREE (internal), GADGET, H2 (leaves and
    fresh vertices).  The realized vertex count can exceed n_target when
    the scaffolding alone overflows it; counts in the report are exact.
    """
    n_target = int(n_target)
    d = int(d)
    R = int(R)
    if d < 3:
        raise ParameterError(f"degree must be >= 3, got {d}")
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"exponent alpha must lie in (0, 1), got {alpha}")
    if not 1.0 / (d - 1) < p < 1.0:
        raise ParameterError(
            f"retention probability must lie in (1/(d-1), 1) = "
            f"({1.0 / (d - 1):.6g}, 1), got {p}")
    if not 0.0 < delta <= 0.5:
        raise ParameterError(f"matching fraction must lie in (0, 0.5], got {delta}")
    if m_gadget is None:
        m_gadget = d + 1
    m_gadget = int(m_gadget)

    log_ratio = math.log(1.0 / p) / math.log(d - 1)
    h = math.ceil(0.5 * (1.0 - alpha) * math.log(n_target) / math.log(d - 1))
    L = math.ceil((2.0 + alpha) / ((1.0 - alpha) * log_ratio))
    if h < 1 or L < 1:
        raise ParameterError(f"sizing gave h={h}, L={L}; need both >= 1")

    n1 = int(n_target ** alpha)
    if (n1 * d) % 2:
        n1 -= 1
    if n1 <= d:
        raise ParameterError(
            f"n_target**alpha = {n1} is too small for a {d}-regular core")

    h1 = random_regular(n1, d, derive(seed, 0))
    matching = _greedy_matching(h1.edges, n1)
    n_hat1 = math.ceil(delta * n1)
    if matching.size < n_hat1:
        raise GenerationError(
            f"maximal matching has {matching.size} edges; need {n_hat1} "
            f"(delta={delta})")
    matched = matching[:n_hat1]

    gadget = high_girth_regular(m_gadget, d, R)
    cut_x = int(gadget.edges[0, 0])
    cut_y = int(gadget.edges[0, 1])
    gadget_internal = gadget.edges[1:].astype(np.int64)

    arity = d - 1
    trees_per_subdiv = d - 2
    tree_internal = (arity**h - 1) // (arity - 1) if arity > 1 else h
    leaves_per_tree = arity**h
    tree_size = tree_internal + leaves_per_tree
    tree_edges_local = _plain_tree_edges(arity, h)
    edges_per_tree = tree_edges_local.shape[0]

    n_trees = n_hat1 * trees_per_subdiv
    n_chains = n_trees * edges_per_tree
    m_int = gadget_internal.shape[0]

    # vertex layout: H1 | SUBDIV | tree blocks | gadget copies | fresh H2
    subdiv_start = n1
    tree_start = subdiv_start + n_hat1
    gadget_start = tree_start + n_trees * tree_size
    n_gadget = n_chains * L * m_gadget
    fresh_start = gadget_start + n_gadget
    n_hat2 = n_trees * leaves_per_tree

    # fresh_start counts every vertex laid out so far, leaves included
    n2 = max(n_target - fresh_start, 0)
    if d % 2 and (n_hat2 * (d - 1) + n2 * d) % 2:
        n2 += 1
    if n_hat2 + n2 <= d:
        raise GenerationError(
            f"second core would have {n_hat2 + n2} vertices; n_target too small")
    n_total = fresh_start + n2

    edge_parts: list[np.ndarray] = []

    keep = np.ones(h1.m, dtype=bool)
    keep[matched] = False
    edge_parts.append(h1.edges[keep].astype(np.int64))

    subdiv_ids = subdiv_start + np.arange(n_hat1, dtype=np.int64)
    a_ends = h1.edges[matched, 0].astype(np.int64)
    b_ends = h1.edges[matched, 1].astype(np.int64)
    edge_parts.append(np.stack([a_ends, subdiv_ids], axis=1))
    edge_parts.append(np.stack([subdiv_ids, b_ends], axis=1))

    tree_bases = tree_start + np.arange(n_trees, dtype=np.int64) * tree_size
    roots = tree_bases
    owners = np.repeat(subdiv_ids, trees_per_subdiv)
    edge_parts.append(np.stack([owners, roots], axis=1))

    # all tree edges across all blocks, block-major then level-major
    if edges_per_tree:
        pa = (tree_bases[:, None] + tree_edges_local[None, :, 0]).ravel()
        ch = (tree_bases[:, None] + tree_edges_local[None, :, 1]).ravel()
        copy_bases = gadget_start + np.arange(n_chains * L, dtype=np.int64) * m_gadget
        copy_grid = copy_bases.reshape(n_chains, L)

        internal = (copy_bases[:, None, None] + gadget_internal[None, :, :])
        edge_parts.append(internal.reshape(-1, 2))

        edge_parts.append(np.stack([pa, copy_grid[:, 0] + cut_x], axis=1))
        if L > 1:
            left = (copy_grid[:, :-1] + cut_y).ravel()
            right = (copy_grid[:, 1:] + cut_x).ravel()
            edge_parts.append(np.stack([left, right], axis=1))
        edge_parts.append(np.stack([copy_grid[:, -1] + cut_y, ch], axis=1))

    # second core on the tree leaves plus fresh vertices
    leaf_local = np.arange(tree_internal, tree_size, dtype=np.int64)
    leaf_ids = (tree_bases[:, None] + leaf_local[None, :]).ravel()
    fresh_ids = fresh_start + np.arange(n2, dtype=np.int64)
    h2_members = np.concatenate([leaf_ids, fresh_ids])
    h2_degrees = np.concatenate([
        np.full(n_hat2, d - 1, np.int64), np.full(n2, d, np.int64)])
    h2 = pairing_model(h2_degrees, derive(seed, 1))
    edge_parts.append(h2_members[h2.edges.astype(np.int64)])

    codes = np.zeros(n_total, dtype=np.uint8)
    codes[:n1] = 1
    codes[subdiv_start:tree_start] = 2
    tree_region = codes[tree_start:gadget_start].reshape(n_trees, tree_size)
    tree_region[:, :tree_internal] = 3
    tree_region[:, tree_internal:] = 5
    codes[gadget_start:fresh_start] = 4
    codes[fresh_start:] = 5

    graph = Graph(n_total, np.concatenate(edge_parts), label_codes=codes,
                  label_names=("H1", "SUBDIV", "TREE", "GADGET", "H2"))

    # compared in log domain so extreme parameters cannot underflow the
    # verdict, but reported linearly for readability
    lhs = h * L * math.log(p) + 0.5 * (1.0 + alpha) * math.log(n_target)
    rhs = -0.5 * math.log(n_target)
    lhs2 = L * math.log(p)
    rhs2 = -2.0 * math.log(d)
    report = BuildReport(
        kind="theorem2",
        parameters={
            "n_target": n_target, "alpha": alpha, "d": d, "p": p,
            "delta": delta, "m_gadget": m_gadget, "R": R, "seed": seed,
            "h": h, "L": L,
        },
        counts={
            "n1": n1, "n_subdiv": n_hat1, "n_tree_internal": n_trees * tree_internal,
            "n_leaves": n_hat2, "n_gadget": n_gadget, "n2": n2,
            "n_h2_region": n_hat2 + n2, "n": graph.n, "m": graph.m,
        },
        checks=[
            {"name": "chain_survival_vs_inverse_sqrt_n",
             "value": math.exp(lhs), "relation": "<=",
             "threshold": math.exp(rhs), "passed": bool(lhs <= rhs)},
            {"name": "single_chain_decay_vs_inverse_degree_sq",
             "value": math.exp(lhs2), "relation": "<",
             "threshold": math.exp(rhs2), "passed": bool(lhs2 < rhs2)},
        ],
        notes={
            "girth_h1": girth(h1),
            "girth_gadget": girth(gadget),
            "girth_h2": girth(h2),
            "overflow": graph.n - n_target,
        },
    )
    return graph, report


# ---------------------------------------------------------------------------
# distant root behind subdivided trees
# ---------------------------------------------------------------------------

def theorem3_build(p: float, eps: float, n_target: int,
                   seed: int = 0) -> tuple[Graph, int, BuildReport]:
    """Bounded-degree graph where percolation at parameter p leaves every
    cluster polynomially small yet the distinguished vertex keeps high
    eccentricity inside its own cluster.

    Two complete d-ary trees of depth h_n, with the deepest h_star edge
    levels stretched (by alpha and beta respectively), share their d**h_n
    leaf slots with a d-regular partner graph whose every edge is also
    stretched by beta.  Returns (graph, v, report) with v the root of the
    first tree.  Maximum degree is d + 2, attained at the shared slots.
    """
    n_target = int(n_target)
    if not 0.0 < p < 1.0:
        raise ParameterError(f"retention probability must lie in (0, 1), got {p}")
    if not 0.0 < eps < 1.0:
        raise ParameterError(f"exponent eps must lie in (0, 1), got {eps}")
    log_inv_p = math.log(1.0 / p)
    d_real = math.exp((2.0 / eps) * log_inv_p)
    if d_real > 1e8:
        raise ParameterError(
            f"required degree {d_real:.3g} is impractically large; raise p or eps")
    d = math.ceil(d_real)

    h_n = 0
    power = 1
    while power * d <= n_target:
        power *= d
        h_n += 1
    if h_n < 1:
        raise ParameterError(
            f"n_target={n_target} is below the degree d={d}; no tree fits")
    N = power
    alpha = math.ceil(math.log(d) / (eps * log_inv_p))
    beta = math.ceil(2.0 * math.log(d) / log_inv_p)
    h_star = math.floor(eps * h_n)

    t1 = build_T_tree(d, h_n, h_star, alpha)
    t2 = build_T_tree(d, h_n, h_star, beta)
    leaf_lo, leaf_hi = t_tree_leaf_range(d, h_n)

    deficit = N - 1 if (N * d) % 2 else None
    f0 = stub_repair_regular(N, d, derive(seed, 0), degree_deficit_vertex=deficit)
    f = subdivide(f0, f0.edges, beta)

    off_t2 = t1.n
    off_f = off_t2 + t2.n
    n_total = off_f + f.n

    leaf_ids = np.arange(leaf_lo, leaf_hi, dtype=np.int64)
    w_ids = off_f + np.arange(N, dtype=np.int64)
    parts = [
        t1.edges.astype(np.int64),
        t2.edges.astype(np.int64) + off_t2,
        f.edges.astype(np.int64) + off_f,
        np.stack([leaf_ids, w_ids], axis=1),
        np.stack([leaf_ids + off_t2, w_ids], axis=1),
    ]

    codes = np.zeros(n_total, dtype=np.uint8)
    codes[:off_t2] = 1
    codes[off_t2:off_f] = 2
    codes[off_f:] = 3
    graph = Graph(n_total, np.concatenate(parts), label_codes=codes,
                  label_names=("T1", "T2", "F"))
    v = 0

    max_deg = int(graph.degrees().max())
    report = BuildReport(
        kind="theorem3",
        parameters={
            "p": p, "eps": eps, "n_target": n_target, "seed": seed,
            "d": d, "h_n": h_n, "h_star": h_star, "alpha": alpha,
            "beta": beta, "N": N,
        },
        counts={
            "n_T1": t1.n, "n_T2": t2.n, "n_F": f.n,
            "n": graph.n, "m": graph.m,
        },
        checks=[
            _check("partners_at_most_n_target", float(N), "<=", float(n_target)),
            _check("partners_exceed_n_target_over_d", float(N), ">", n_target / d),
            _check("max_degree", float(max_deg), "<=", float(d + 2)),
        ],
        notes={
            "height_T1": h_n + (alpha - 1) * h_star,
            "height_T2": h_n + (beta - 1) * h_star,
            "root": v,
        },
    )
    return graph, v, report
