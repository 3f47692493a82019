"""Closed-form forecasts for supercritical bond percolation on d-regular graphs.

Keep each edge of a d-regular, locally tree-like graph independently with
probability p.  When the branching ratio p*(d-1) exceeds 1, a unique giant
component appears, and its asymptotic statistics are elementary functions of
the extinction probability q: the smallest root in [0,1] of

    q = (1 - p + p*q)**(d-1)

which is the extinction probability of a Galton-Watson process with
Bin(d-1, p) offspring.  This module evaluates that fixed point and every
closed-form quantity derived from it:

* ``giant_forecast``  - giant and 2-core vertex/edge densities,
* ``degree_forecast`` - degree profiles alpha_k (giant) and beta_k (2-core),
* ``large_d_series``  - cubic expansions in xi where p = (1+xi)/(d-1),
* ``path_density``    - per-vertex density of ell-edge paths in the giant,
* ``tree_density``    - density of vertices whose radius-k neighborhood in
                        the percolated graph realizes a given rooted shape.

All arithmetic is double precision.  Functions are pure and safe to call
concurrently.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError, SeriesRangeWarning, SubcriticalWarning

_FIXED_POINT_TOL = 1e-14
_MAX_FIXED_POINT_ITERATIONS = 100_000
_BISECTION_CEILING = 1.0 - 1e-9
_MAX_SHAPE_DEPTH = 4


@dataclass(frozen=True)
class PercolationParams:
    """Degree d >= 3 and edge-retention probability p in (0, 1]."""

    d: int
    p: float

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise ParameterError(f"degree d must be an integer, got {self.d!r}")
        if self.d < 3:
            raise ParameterError(f"degree d must be at least 3, got {self.d}")
        p = float(self.p)
        if not (0.0 < p <= 1.0) or math.isnan(p):
            raise ParameterError(f"retention probability p must lie in (0, 1], got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def branching(self) -> float:
        """Mean offspring count p*(d-1) of the exploration process."""
        return self.p * (self.d - 1)

    @property
    def critical_p(self) -> float:
        return 1.0 / (self.d - 1)

    @property
    def supercritical(self) -> bool:
        """True when p exceeds the critical point 1/(d-1)."""
        return self.p * (self.d - 1) > 1.0


@dataclass(frozen=True)
class GiantForecast:
    """Asymptotic per-vertex densities of the giant component and its 2-core.

    theta1 / theta2 are vertex fractions of the giant and of its 2-core;
    eta1 / eta2 are the matching edge counts per vertex (eta values may
    exceed 1).  excess1 = eta1 - theta1 and excess2 = eta2 - theta2 agree
    analytically: trimming the giant down to its 2-core removes pendant
    trees, which cost one vertex and one edge each.
    """

    q: float
    theta1: float
    eta1: float
    theta2: float
    eta2: float
    excess1: float
    excess2: float
    subcritical: bool

    @property
    def excess(self) -> float:
        return self.excess1


@dataclass(frozen=True)
class DegreeForecast:
    """Per-vertex densities of degree-k vertices.

    ``alpha[k-1]`` forecasts vertices of open-degree k in the giant
    (k = 1..d); ``beta[k-2]`` forecasts vertices of degree k in the giant's
    2-core (k = 2..d), degrees counted within the 2-core.
    """

    d: int
    alpha: tuple[float, ...]
    beta: tuple[float, ...]

    def alpha_k(self, k: int) -> float:
        if not 1 <= k <= self.d:
            raise ParameterError(f"alpha_k defined for 1 <= k <= {self.d}, got {k}")
        return self.alpha[k - 1]

    def beta_k(self, k: int) -> float:
        if not 2 <= k <= self.d:
            raise ParameterError(f"beta_k defined for 2 <= k <= {self.d}, got {k}")
        return self.beta[k - 2]


@dataclass(frozen=True)
class SeriesForecast:
    """Truncated cubic expansions around the critical point (see large_d_series)."""

    xi: float
    q: float
    theta1: float
    eta1: float
    theta2: float
    eta2: float
    excess: float


def solve_q(params: PercolationParams) -> float:
    """Extinction probability q of the Bin(d-1, p) branching process.

    Returns the unique root in [0, 1) of q = (1-p+pq)**(d-1) when the
    process is supercritical, and 1.0 otherwise.  The residual
    |q - (1-p+pq)**(d-1)| is at most 1e-12.

    Iterating q <- g(q) from q = 0 converges monotonically to the smallest
    fixed point.  Near the critical point the contraction factor approaches
    1, so after the iteration budget we fall back to bisection on g(q) - q,
    bracketing the leftmost root from below.
    """
    d, p = params.d, params.p
    if not params.supercritical:
        return 1.0
    base = 1.0 - p
    exponent = d - 1
    q = 0.0
    for _ in range(_MAX_FIXED_POINT_ITERATIONS):
        nxt = (base + p * q) ** exponent
        if abs(nxt - q) <= _FIXED_POINT_TOL:
            # Polish to the machine fixed point: when q is tiny (p near 1)
            # a 1e-14 step still carries relative error that downstream
            # quotient identities would amplify.
            q = nxt
            for _ in range(64):
                nxt = (base + p * q) ** exponent
                if nxt == q:
                    break
                q = nxt
            return q
        q = nxt

    def residual(t: float) -> float:
        return (base + p * t) ** exponent - t

    lo, hi = q, _BISECTION_CEILING
    if residual(hi) >= 0.0:
        # Barely supercritical: the root sits within 1e-9 of 1, where the
        # ceiling itself already meets the residual contract.
        return hi
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def giant_forecast(params: PercolationParams) -> GiantForecast:
    """Evaluate the giant-component and 2-core density formulas at (d, p)."""
    d, p = params.d, params.p
    if not params.supercritical:
        return GiantForecast(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, subcritical=True)
    q = solve_q(params)
    theta1 = 1.0 - q * (1.0 - p) - p * q * q
    eta1 = 0.5 * p * d * (1.0 - q**2)
    theta2 = 1.0 - q - (d - 1) * p * q * (1.0 - q)
    eta2 = 0.5 * p * d * (1.0 - q) ** 2
    return GiantForecast(
        q=q,
        theta1=theta1,
        eta1=eta1,
        theta2=theta2,
        eta2=eta2,
        excess1=eta1 - theta1,
        excess2=eta2 - theta2,
        subcritical=False,
    )


def degree_forecast(params: PercolationParams) -> DegreeForecast:
    """Degree profiles alpha_k (giant) and beta_k (2-core of the giant).

    alpha_k = C(d,k) p^k (1-p)^(d-k) (1 - q^k) for k = 1..d.  beta_k is
    evaluated in the binomial form C(d,k) (p(1-q))^k (1-p+pq)^(d-k), i.e.
    P(Bin(d, p(1-q)) = k), which equals the quotient form
    C(d,k) p^k (1-q)^k q / (1-p+pq)^(k-1) wherever that is well defined but
    avoids its 0/0 at p = 1.
    """
    d, p = params.d, params.p
    if not params.supercritical:
        return DegreeForecast(d=d, alpha=(0.0,) * d, beta=(0.0,) * (d - 1))
    q = solve_q(params)
    survival = 1.0 - q
    dual = 1.0 - p + p * q
    alpha = tuple(
        math.comb(d, k) * p**k * (1.0 - p) ** (d - k) * (1.0 - q**k)
        for k in range(1, d + 1)
    )
    beta = tuple(
        math.comb(d, k) * (p * survival) ** k * dual ** (d - k)
        for k in range(2, d + 1)
    )
    return DegreeForecast(d=d, alpha=alpha, beta=beta)


def large_d_series(xi: float) -> SeriesForecast:
    """Cubic expansions of q and the density forecasts as d grows.

    Parametrize p = (1+xi)/(d-1) with fixed xi > 0.  As d -> infinity,

        q      -> 1 - 2 xi + (8/3) xi^2 - (28/9) xi^3 + O(xi^4)
        theta1 -> 2 xi - (8/3) xi^2 + (28/9) xi^3
        eta1   -> 2 xi - (8/3) xi^2 + (34/9) xi^3
        theta2 -> 2 xi^2 - 4 xi^3
        eta2   -> 2 xi^2 - (10/3) xi^3
        excess -> (2/3) xi^3        (both excesses agree at this order)

    The truncation is only meaningful for small xi; values above 0.3 emit
    a SeriesRangeWarning.
    """
    xi = float(xi)
    if not xi > 0.0 or math.isnan(xi):
        raise ParameterError(f"series parameter xi must be positive, got {xi!r}")
    if xi > 0.3:
        warnings.warn(
            f"cubic series evaluated at xi={xi:g} > 0.3; truncation error is large",
            SeriesRangeWarning,
            stacklevel=2,
        )
    x2 = xi * xi
    x3 = x2 * xi
    return SeriesForecast(
        xi=xi,
        q=1.0 - 2.0 * xi + (8.0 / 3.0) * x2 - (28.0 / 9.0) * x3,
        theta1=2.0 * xi - (8.0 / 3.0) * x2 + (28.0 / 9.0) * x3,
        eta1=2.0 * xi - (8.0 / 3.0) * x2 + (34.0 / 9.0) * x3,
        theta2=2.0 * x2 - 4.0 * x3,
        eta2=2.0 * x2 - (10.0 / 3.0) * x3,
        excess=(2.0 / 3.0) * x3,
    )


def path_density(params: PercolationParams, ell: int) -> float:
    """Per-vertex density of simple ell-edge paths inside the giant.

    Counts unordered simple paths with ell edges whose vertices all lie in
    the giant component, divided by n:

        (1/2) d (d-1)^(ell-1) p^ell (1 - q^(ell+1) (1-p+pq)^(1-ell))

    At ell = 1 this reduces exactly to eta1, the giant's edge density.
    Subcritical parameters return 0.0 and emit a SubcriticalWarning.
    """
    if not isinstance(ell, int) or isinstance(ell, bool) or ell < 1:
        raise ParameterError(f"path length ell must be an integer >= 1, got {ell!r}")
    if not params.supercritical:
        warnings.warn(
            "path density requested at subcritical parameters; returning 0",
            SubcriticalWarning,
            stacklevel=2,
        )
        return 0.0
    d, p = params.d, params.p
    q = solve_q(params)
    dual = 1.0 - p + p * q
    return 0.5 * d * (d - 1) ** (ell - 1) * p**ell * (1.0 - q ** (ell + 1) * dual ** (1 - ell))


class RootedTreeShape:
    """A small rooted tree pattern, given by parent pointers or child lists.

    ``parents[v]`` is the parent index of vertex v, with ``parents[0] == -1``
    for the root; every parent must precede its children, so the array is
    its own topological order.  Derived: ``depth`` (root at depth 0) and
    ``depth_counts[j]``, the number of vertices at depth exactly j.
    """

    __slots__ = ("parents", "children", "depths", "depth")

    def __init__(self, parents: Sequence[int]):
        parents = tuple(int(x) for x in parents)
        if not parents or parents[0] != -1:
            raise ParameterError("shape must have a single root at index 0 with parent -1")
        n = len(parents)
        children: list[list[int]] = [[] for _ in range(n)]
        depths = [0] * n
        for v in range(1, n):
            u = parents[v]
            if not 0 <= u < v:
                raise ParameterError(
                    f"shape vertex {v} needs a parent with smaller index, got {u}"
                )
            children[u].append(v)
            depths[v] = depths[u] + 1
        self.parents = parents
        self.children = tuple(tuple(c) for c in children)
        self.depths = tuple(depths)
        self.depth = max(depths)

    @classmethod
    def from_children(cls, children: Sequence[Sequence[int]]) -> "RootedTreeShape":
        parents = [-1] * len(children)
        for u, kids in enumerate(children):
            for v in kids:
                parents[v] = u
        return cls(parents)

    def __len__(self) -> int:
        return len(self.parents)

    def depth_count(self, j: int) -> int:
        """Number of vertices at depth exactly j."""
        return sum(1 for x in self.depths if x == j)

    def canonical(self) -> tuple:
        """Canonical nested-tuple form under rooted isomorphism."""

        def canon(v: int) -> tuple:
            return tuple(sorted(canon(c) for c in self.children[v]))

        return canon(0)


def _shape_match_probability(label: tuple, slots: int, depth_left: int, p: float,
                             inner_slots: int, memo: dict) -> float:
    """Probability that the cluster of a vertex with ``slots`` tree children
    and ``depth_left`` remaining levels is rooted-isomorphic to ``label``.

    ``label`` is a canonical nested tuple; distinct child classes are
    disjoint events per child slot, so the count of slot assignments is the
    multinomial over class multiplicities (this is the automorphism
    correction: repeated identical subtrees are interchangeable).
    """
    key = (label, slots, depth_left)
    hit = memo.get(key)
    if hit is not None:
        return hit
    r = len(label)
    if depth_left == 0:
        value = 1.0 if r == 0 else 0.0
    elif r > slots:
        value = 0.0
    else:
        groups = Counter(label)
        ways = math.factorial(slots)
        for mult in groups.values():
            ways //= math.factorial(mult)
        ways //= math.factorial(slots - r)
        value = float(ways) * (1.0 - p) ** (slots - r)
        for cls, mult in groups.items():
            sub = _shape_match_probability(cls, inner_slots, depth_left - 1, p,
                                           inner_slots, memo)
            value *= (p * sub) ** mult
    memo[key] = value
    return value


def tree_density(params: PercolationParams, shape: RootedTreeShape,
                 ambient_depth: int | None = None) -> tuple[float, float]:
    """Density of giant vertices whose radius-k neighborhood realizes ``shape``.

    The ambient picture is the radius-k neighborhood of a vertex in a
    d-regular graph of girth > 2k: a tree whose root has d children and
    whose internal vertices have d-1 children each, truncated at depth k.
    ``alpha_T`` is the probability that the root's percolation cluster
    inside that tree is rooted-isomorphic to ``shape``, computed by exact
    dynamic programming over rooted-isomorphism classes.

    Only the ell := shape.depth_count(k) boundary vertices at depth exactly
    k can reach beyond the neighborhood, and each survives onward with
    probability 1-q independently, so the density of giant vertices showing
    this neighborhood is (1 - q**ell) * alpha_T.

    ``ambient_depth`` defaults to the shape's own depth; passing a larger k
    evaluates the same shape as a cluster of the deeper neighborhood.
    Returns ``(alpha_T, giant_density)``.
    """
    d = params.d
    k = shape.depth if ambient_depth is None else int(ambient_depth)
    if k < 1 or k > _MAX_SHAPE_DEPTH:
        raise ParameterError(
            f"neighborhood depth must lie in 1..{_MAX_SHAPE_DEPTH}, got {k}"
        )
    if shape.depth > k:
        raise ParameterError(
            f"shape depth {shape.depth} exceeds the ambient depth {k}"
        )
    if len(shape.children[0]) > d:
        raise ParameterError(
            f"shape root has {len(shape.children[0])} children; at most d={d} allowed"
        )
    for v in range(1, len(shape)):
        if len(shape.children[v]) > d - 1:
            raise ParameterError(
                f"shape vertex {v} has {len(shape.children[v])} children; "
                f"at most d-1={d - 1} allowed"
            )
    if not params.supercritical:
        warnings.warn(
            "tree density requested at subcritical parameters; giant density is 0",
            SubcriticalWarning,
            stacklevel=2,
        )
        alpha_t = _shape_match_probability(shape.canonical(), d, k, params.p, d - 1, {})
        return alpha_t, 0.0
    q = solve_q(params)
    alpha_t = _shape_match_probability(shape.canonical(), d, k, params.p, d - 1, {})
    ell = shape.depth_count(k)
    return alpha_t, (1.0 - q**ell) * alpha_t


def forecast_document(params: PercolationParams) -> dict:
    """Bundle every forecast into one JSON-ready mapping.

    Keys: d, p, q, theta1, eta1, theta2, eta2, excess, subcritical,
    alpha (list, k = 1..d), beta (list, k = 2..d).
    """
    giant = giant_forecast(params)
    degrees = degree_forecast(params)
    return {
        "d": params.d,
        "p": params.p,
        "q": giant.q,
        "theta1": giant.theta1,
        "eta1": giant.eta1,
        "theta2": giant.theta2,
        "eta2": giant.eta2,
        "excess": giant.excess1,
        "subcritical": giant.subcritical,
        "alpha": list(degrees.alpha),
        "beta": list(degrees.beta),
    }
