"""Random and extremal regular graph generators.

Two random models back the constructions:

* the pairing (configuration) model with full restart on any self-loop or
  duplicate edge, which samples exactly uniformly over simple outcomes but
  needs ~exp((d*d-1)/4) attempts per success, so it is the small-degree
  workhorse;
* a stub-repair variant that pairs greedily and reshuffles only the
  colliding stubs, which scales to large degree at the price of a mild
  bias we never rely on.

high_girth_regular finds a small d-regular graph of girth >= R by
deterministic backtracking over lexicographically ordered completions,
pruned by a truncated BFS feasibility test.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import GenerationError, InfeasibleError, ParameterError
from .._rng import derive, generator
from .graph import Graph

_PAIRING_BASE_ATTEMPTS = 200
_SEARCH_NODE_BUDGET = 4_000_000


def _check_degree_sum(degrees: np.ndarray) -> None:
    if int(degrees.sum()) % 2:
        raise ParameterError("degree sum must be even")
    if degrees.min(initial=0) < 0:
        raise ParameterError("degrees must be nonnegative")


def _pair_stubs_once(stubs: np.ndarray, n: int, rng) -> np.ndarray | None:
    """One pairing attempt; None when it produces a loop or duplicate."""
    pool = stubs.copy()
    rng.shuffle(pool)
    u = pool[0::2]
    v = pool[1::2]
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    if np.any(lo == hi):
        return None
    code = lo.astype(np.int64) * n + hi
    code.sort()
    if np.any(code[1:] == code[:-1]):
        return None
    return np.stack([lo, hi], axis=1)


def pairing_model(degrees, seed: int) -> Graph:
    """Uniform simple graph with the given degree sequence, by restart.

    The attempt budget grows with the expected restart count for regular
    sequences; exhausting it raises GenerationError.
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    n = degrees.size
    _check_degree_sum(degrees)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    if stubs.size == 0:
        return Graph(n, np.zeros((0, 2), np.int64))
    rng = generator(seed)
    mean_sq = float((degrees * (degrees - 1)).sum()) / max(float(degrees.sum()), 1.0)
    expected_restarts = math.exp(mean_sq / 2.0 + mean_sq * mean_sq / 4.0)
    attempts = _PAIRING_BASE_ATTEMPTS + int(min(60.0 * expected_restarts, 2e6))
    for _ in range(attempts):
        edges = _pair_stubs_once(stubs, n, rng)
        if edges is not None:
            return Graph(n, edges)
    raise GenerationError(
        f"pairing model failed to produce a simple graph in {attempts} attempts"
    )


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Uniform random d-regular simple graph on n vertices."""
    n = int(n)
    d = int(d)
    if d < 1:
        raise ParameterError(f"degree must be positive, got {d}")
    if n <= d:
        raise ParameterError(f"need n > d, got n={n}, d={d}")
    if (n * d) % 2:
        raise ParameterError(f"n*d must be even, got n={n}, d={d}")
    return pairing_model(np.full(n, d, np.int64), seed)


def stub_repair_regular(n: int, d: int, seed: int, degree_deficit_vertex: int | None = None) -> Graph:
    """Near-uniform d-regular graph by greedy pairing with collision repair.

    When n*d is odd the pairing is impossible; callers may designate one
    vertex to receive degree d-1 instead via degree_deficit_vertex.
    """
    n = int(n)
    d = int(d)
    if d < 1 or n <= d:
        raise ParameterError(f"need n > d >= 1, got n={n}, d={d}")
    degrees = np.full(n, d, np.int64)
    if (n * d) % 2:
        if degree_deficit_vertex is None:
            raise ParameterError(f"n*d must be even, got n={n}, d={d}")
        degrees[int(degree_deficit_vertex)] -= 1
    _check_degree_sum(degrees)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    rng = generator(seed)

    for _ in range(40):
        seen: set[int] = set()
        out: list[tuple[int, int]] = []
        pending = stubs.copy()
        rng.shuffle(pending)
        stalls = 0
        while pending.size:
            retry: list[int] = []
            for i in range(0, pending.size, 2):
                a = int(pending[i])
                b = int(pending[i + 1])
                if a == b:
                    retry.append(a)
                    retry.append(b)
                    continue
                lo, hi = (a, b) if a < b else (b, a)
                code = lo * n + hi
                if code in seen:
                    retry.append(a)
                    retry.append(b)
                    continue
                seen.add(code)
                out.append((lo, hi))
            if not retry:
                return Graph(n, np.array(out, dtype=np.int64))
            if len(retry) == pending.size:
                stalls += 1
                if stalls > 20:
                    break
            else:
                stalls = 0
            pending = np.array(retry, dtype=np.int64)
            rng.shuffle(pending)
    raise GenerationError("stub repair failed to converge; degree sequence too tight")


# ---------------------------------------------------------------------------
# high-girth search
# ---------------------------------------------------------------------------

def moore_bound(d: int, R: int) -> int:
    """Minimum possible order of a d-regular graph with girth >= R."""
    if R <= 3:
        return d + 1
    if d == 2:
        return R
    if R % 2:
        r = (R - 1) // 2
        return 1 + d * ((d - 1) ** r - 1) // (d - 2)
    r = R // 2
    return 2 * ((d - 1) ** r - 1) // (d - 2)


def _far_enough(adj: list[set[int]], u: int, v: int, R: int) -> bool:
    """True when dist(u, v) >= R - 1, by BFS from u truncated at R - 2."""
    if R <= 2:
        return u != v
    if v in adj[u]:
        return False
    limit = R - 2
    frontier = [u]
    seen = {u}
    depth = 0
    while frontier and depth < limit:
        depth += 1
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y == v:
                    return False
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return True


def high_girth_regular(m: int, d: int, R: int) -> Graph:
    """Smallest-lexicographic d-regular graph on m vertices with girth >= R.

    Deterministic: backtracking over edge choices in ascending vertex
    order, so repeated calls agree.  Infeasible orders below the Moore
    bound raise InfeasibleError immediately; a search that exhausts its
    node budget raises GenerationError (try a larger m).
    """
    m = int(m)
    d = int(d)
    R = int(R)
    if d < 3:
        raise ParameterError(f"degree must be >= 3, got {d}")
    if R < 3:
        raise ParameterError(f"girth requirement must be >= 3, got {R}")
    bound = moore_bound(d, R)
    if m < bound:
        raise InfeasibleError(
            f"no {d}-regular graph of girth >= {R} on {m} vertices; "
            f"the Moore bound requires at least {bound}"
        )
    if (m * d) % 2:
        raise ParameterError(f"m*d must be even, got m={m}, d={d}")

    deg = [0] * m
    adj: list[set[int]] = [set() for _ in range(m)]
    chosen: list[tuple[int, int]] = []
    budget = [_SEARCH_NODE_BUDGET]

    def extend() -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise GenerationError(
                f"high-girth search exceeded its node budget at m={m}, d={d}, R={R}; "
                "retry with a larger vertex count"
            )
        u = -1
        for x in range(m):
            if deg[x] < d:
                u = x
                break
        if u < 0:
            return True
        # All vertices below u are full, so every neighbor of u above u was
        # chosen while u led the search; forcing new partners beyond the
        # largest of them enumerates each neighbor set once, in order.
        floor = u
        for w in adj[u]:
            if w > floor:
                floor = w
        for v in range(floor + 1, m):
            if deg[v] >= d or not _far_enough(adj, u, v, R):
                continue
            adj[u].add(v)
            adj[v].add(u)
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            if extend():
                return True
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            adj[u].discard(v)
            adj[v].discard(u)
        return False

    if not extend():
        raise GenerationError(
            f"exhaustive search found no {d}-regular graph of girth >= {R} "
            f"on {m} vertices"
        )
    return Graph(m, np.array(chosen, dtype=np.int64))
