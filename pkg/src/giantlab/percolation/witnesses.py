"""Heuristic structure witnesses: long paths, small separators, minors.

Everything here returns a verified witness (or an explicit negative), not
an optimum: the path is a lower bound on the longest path, the separator
an upper bound on the smallest balanced one, the clique minor a lower
bound on the largest.  Tiny separator instances (n <= 12) are settled
exactly by exhaustion instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import GiantLabError, ParameterError
from ..graphs import Graph
from ..graphs.spectral import is_connected, lambda2_and_vector
from .._kernels import dfs_deepest
from .mask import EdgeMask
from .measures import components

_EXHAUSTIVE_LIMIT = 12


# ---------------------------------------------------------------------------
# longest path
# ---------------------------------------------------------------------------

def _edge_lookup(g: Graph):
    codes = g.edges[:, 0].astype(np.int64) * g.n + g.edges[:, 1]
    return codes


def _verify_path(g: Graph, mask: EdgeMask, path: np.ndarray) -> None:
    if np.unique(path).size != path.size:
        raise GiantLabError("path witness repeats a vertex")
    if path.size < 2:
        return
    a = np.minimum(path[:-1], path[1:]).astype(np.int64)
    b = np.maximum(path[:-1], path[1:])
    want = a * g.n + b
    codes = _edge_lookup(g)
    idx = np.searchsorted(codes, want)
    ok = (idx < g.m) & (codes[np.minimum(idx, g.m - 1)] == want)
    if not np.all(ok):
        raise GiantLabError("path witness uses a missing edge")
    if not np.all(mask.open[idx]):
        raise GiantLabError("path witness uses a closed edge")


def longest_path_lb(g: Graph, mask: EdgeMask) -> np.ndarray:
    """Two-sweep DFS heuristic for a long simple open path.

    The first DFS starts in the largest open component; the second starts
    from the deepest vertex the first one found.  The returned vertex
    sequence is verified simple and open before being handed back.
    """
    comp = components(g, mask)
    start = int(np.flatnonzero(comp.giant_mask)[0])
    indptr, nbr, eid = g.adjacency()
    if g.m == 0 or comp.c1_size == 1:
        return np.array([start], dtype=np.int64)
    _, turn = dfs_deepest(indptr, nbr, eid, mask.open, start)
    parent, deepest = dfs_deepest(indptr, nbr, eid, mask.open, int(turn))
    hops = [int(deepest)]
    while parent[hops[-1]] >= 0:
        hops.append(int(parent[hops[-1]]))
    path = np.array(hops[::-1], dtype=np.int64)
    _verify_path(g, mask, path)
    return path


# ---------------------------------------------------------------------------
# balanced separators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparatorResult:
    """Outcome of a balanced-separator search on a connected graph.

    found: a witness exists below; exhaustive: the answer was settled by
    full enumeration (always the case at n <= 12), so a negative is a
    proof of nonexistence and a positive is minimum-size.
    """

    found: bool
    exhaustive: bool
    separator: np.ndarray | None = field(default=None, repr=False)
    side_a: np.ndarray | None = field(default=None, repr=False)
    side_b: np.ndarray | None = field(default=None, repr=False)

    @property
    def size(self) -> int | None:
        return int(self.separator.size) if self.found else None


def _verify_separator(g: Graph, sep, a, b) -> None:
    n = g.n
    tag = np.zeros(n, dtype=np.int8)
    tag[a] = 1
    tag[b] = 2
    tag[sep] = 3
    if int((tag > 0).sum()) != n:
        raise GiantLabError("separator parts do not cover the graph")
    if a.size == 0 or b.size == 0:
        raise GiantLabError("separator has an empty side")
    limit = 2 * n / 3
    if a.size > limit or b.size > limit:
        raise GiantLabError("separator sides break the 2/3 balance")
    tu = tag[g.edges[:, 0]]
    tv = tag[g.edges[:, 1]]
    if np.any((tu == 1) & (tv == 2)) or np.any((tu == 2) & (tv == 1)):
        raise GiantLabError("separator leaves an edge between the sides")


def _grouping_with_balance(sizes: list[int], limit: float):
    """Indices of a component grouping with both groups <= limit, or None."""
    k = len(sizes)
    total = sum(sizes)
    for bits in range(1, 2**k - 1):
        s = sum(sizes[i] for i in range(k) if bits & (1 << i))
        if s <= limit and total - s <= limit:
            return bits
    return None


def _exhaustive_separator(g: Graph) -> SeparatorResult:
    n = g.n
    limit = 2 * n / 3
    vertices = list(range(n))
    adj = [set() for _ in range(n)]
    for u, v in g.edges.tolist():
        adj[u].add(v)
        adj[v].add(u)
    for size in range(0, n - 1):
        for sep in itertools.combinations(vertices, size):
            sset = set(sep)
            comps = []
            seen = set(sset)
            for s in vertices:
                if s in seen:
                    continue
                stack = [s]
                seen.add(s)
                comp = [s]
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            comp.append(y)
                            stack.append(y)
                comps.append(comp)
            if len(comps) < 2:
                continue
            bits = _grouping_with_balance([len(c) for c in comps], limit)
            if bits is None:
                continue
            a = sorted(v for i, c in enumerate(comps) if bits & (1 << i) for v in c)
            b = sorted(v for i, c in enumerate(comps) if not bits & (1 << i) for v in c)
            res = SeparatorResult(
                found=True, exhaustive=True,
                separator=np.array(sep, dtype=np.int64),
                side_a=np.array(a, dtype=np.int64),
                side_b=np.array(b, dtype=np.int64))
            _verify_separator(g, res.separator, res.side_a, res.side_b)
            return res
    return SeparatorResult(found=False, exhaustive=True)


def separator_search(g_sub: Graph) -> SeparatorResult:
    """Smallest balanced vertex separator this search can certify.

    Heuristic: order vertices by the Fiedler vector and, for every
    balanced split point, take the smaller one-sided boundary as the
    separator candidate.  Inputs with at most 12 vertices are settled
    exactly by exhaustion instead, so their negatives are proofs.
    """
    if not is_connected(g_sub):
        raise ParameterError("separator search expects a connected graph")
    if g_sub.n <= _EXHAUSTIVE_LIMIT:
        return _exhaustive_separator(g_sub)

    n = g_sub.n
    limit = 2 * n / 3
    _, fiedler = lambda2_and_vector(g_sub)
    order = np.argsort(fiedler, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    ru = rank[g_sub.edges[:, 0]]
    rv = rank[g_sub.edges[:, 1]]
    lo = np.minimum(ru, rv)
    hi = np.maximum(ru, rv)

    best = None
    t_first = math.ceil(n / 3)
    t_last = math.floor(2 * n / 3)
    # cap the sweep at ~256 split points so huge inputs stay cheap
    stride = max(1, (t_last - t_first) // 256)
    for t in range(t_first, t_last + 1, stride):
        crossing = (lo < t) & (hi >= t)
        if not crossing.any():
            continue
        for side in range(2):
            if side == 0:
                sep_ranks = np.unique(lo[crossing])
            else:
                sep_ranks = np.unique(hi[crossing])
            if best is not None and sep_ranks.size >= best[0].size:
                continue
            if side == 0:
                a_ranks = np.setdiff1d(np.arange(t), sep_ranks, assume_unique=True)
                b_ranks = np.arange(t, n)
            else:
                a_ranks = np.arange(t)
                b_ranks = np.setdiff1d(np.arange(t, n), sep_ranks, assume_unique=True)
            if a_ranks.size == 0 or b_ranks.size == 0:
                continue
            if a_ranks.size > limit or b_ranks.size > limit:
                continue
            best = (order[sep_ranks], order[a_ranks], order[b_ranks])
    if best is None:
        return SeparatorResult(found=False, exhaustive=False)
    sep, a, b = (np.sort(x.astype(np.int64)) for x in best)
    _verify_separator(g_sub, sep, a, b)
    return SeparatorResult(found=True, exhaustive=False,
                           separator=sep, side_a=a, side_b=b)


# ---------------------------------------------------------------------------
# clique minors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinorWitness:
    """A K_t minor: t disjoint connected branch sets, pairwise adjacent."""

    order: int
    branch_sets: tuple[np.ndarray, ...] = field(repr=False)


def _verify_minor(g: Graph, sets: list[np.ndarray]) -> None:
    t = len(sets)
    membership = np.full(g.n, -1, np.int64)
    for i, s in enumerate(sets):
        if np.any(membership[s] >= 0):
            raise GiantLabError("minor branch sets overlap")
        membership[s] = i
    # connectivity of each branch set
    indptr, nbr, _ = g.adjacency()
    for i, s in enumerate(sets):
        seen = {int(s[0])}
        stack = [int(s[0])]
        want = set(int(x) for x in s)
        while stack:
            x = stack.pop()
            for y in nbr[indptr[x]:indptr[x + 1]]:
                y = int(y)
                if y in want and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != want:
            raise GiantLabError("minor branch set is not connected")
    pair = np.zeros((t, t), dtype=bool)
    mu = membership[g.edges[:, 0]]
    mv = membership[g.edges[:, 1]]
    both = (mu >= 0) & (mv >= 0) & (mu != mv)
    pair[mu[both], mv[both]] = True
    pair[mv[both], mu[both]] = True
    missing = ~(pair | np.eye(t, dtype=bool))
    if missing.any():
        raise GiantLabError("minor branch sets are not pairwise adjacent")


def _ball_partition(g: Graph, ball: int) -> list[np.ndarray]:
    """Connected branch sets of ~ball vertices by truncated BFS, in
    ascending seed order; every vertex lands in exactly one set."""
    indptr, nbr, _ = g.adjacency()
    owner = np.full(g.n, -1, np.int64)
    sets = []
    for seed in range(g.n):
        if owner[seed] >= 0:
            continue
        members = [seed]
        owner[seed] = len(sets)
        frontier = [seed]
        while frontier and len(members) < ball:
            nxt = []
            for x in frontier:
                for y in nbr[indptr[x]:indptr[x + 1]]:
                    y = int(y)
                    if owner[y] < 0:
                        owner[y] = len(sets)
                        members.append(y)
                        nxt.append(y)
                        if len(members) >= ball:
                            break
                if len(members) >= ball:
                    break
            frontier = nxt
        sets.append(np.array(sorted(members), dtype=np.int64))
    return sets


def _quotient_adjacency(g: Graph, sets: list[np.ndarray]) -> list[set[int]]:
    membership = np.full(g.n, -1, np.int64)
    for i, s in enumerate(sets):
        membership[s] = i
    mu = membership[g.edges[:, 0]]
    mv = membership[g.edges[:, 1]]
    adj: list[set[int]] = [set() for _ in sets]
    cross = mu != mv
    for a, b in zip(mu[cross].tolist(), mv[cross].tolist()):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _grow_clique(g: Graph, sets: list[np.ndarray], adj: list[set[int]],
                 path_budget: int) -> list[int]:
    order = sorted(range(len(sets)), key=lambda i: (-len(adj[i]), i))
    clique: list[int] = []
    used = np.zeros(g.n, dtype=bool)
    indptr, nbr, _ = g.adjacency()
    grown = {i: sets[i] for i in range(len(sets))}
    for cand in order:
        missing = [c for c in clique if c not in adj[cand]]
        if len(missing) == 1 and path_budget > 0:
            # try to absorb a connector path through unclaimed vertices
            target = missing[0]
            target_set = set(int(x) for x in grown[target])
            blocked = used.copy()
            blocked[grown[cand]] = True
            prev = {int(x): -1 for x in grown[cand]}
            frontier = [int(x) for x in grown[cand]]
            hit = -1
            visited = 0
            while frontier and hit < 0 and visited < path_budget:
                nxt = []
                for x in frontier:
                    for y in nbr[indptr[x]:indptr[x + 1]]:
                        y = int(y)
                        if y in target_set:
                            hit = x
                            break
                        if not blocked[y] and y not in prev:
                            prev[y] = x
                            nxt.append(y)
                            visited += 1
                    if hit >= 0:
                        break
                frontier = nxt
            if hit >= 0:
                extra = []
                x = hit
                while prev[x] >= 0:
                    extra.append(x)
                    x = prev[x]
                grown[cand] = np.array(
                    sorted(set(grown[cand].tolist()) | set(extra)), dtype=np.int64)
                adj[cand].add(target)
                adj[target].add(cand)
                missing = []
        if not missing:
            conflict = used[grown[cand]].any()
            if not conflict:
                clique.append(cand)
                used[grown[cand]] = True
    return [grown[i] for i in clique]


def minor_order_lb(g_sub: Graph) -> MinorWitness:
    """Greedy verified clique-minor witness.

    Partitions the graph into BFS balls at several radic scales (down to
    singletons, so complete graphs come out exact), greedily assembles a
    pairwise-adjacent family, and attempts single-connector path
    augmentation before giving up on a candidate.
    """
    if not is_connected(g_sub):
        raise ParameterError("minor search expects a connected graph")
    n = g_sub.n
    root = math.isqrt(n)
    sizes = sorted({1, 2, max(1, root // 2), max(1, root), max(1, 2 * root)})
    best: list[np.ndarray] = [np.arange(n, dtype=np.int64)]
    for ball in sizes:
        if ball > n:
            continue
        sets = _ball_partition(g_sub, ball)
        adj = _quotient_adjacency(g_sub, sets)
        chosen = _grow_clique(g_sub, sets, adj, path_budget=20 * ball)
        if len(chosen) > len(best):
            best = chosen
    _verify_minor(g_sub, best)
    return MinorWitness(order=len(best), branch_sets=tuple(best))
