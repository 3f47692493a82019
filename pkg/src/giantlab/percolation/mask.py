"""Bond percolation sampling.

A mask keeps one open/closed bit per edge, indexed exactly like the edge
array of the graph it belongs to.  Bits come from a counter-based Philox
stream keyed by the seed, with the edge index as the counter position, so
the same (graph, p, seed) triple gives the same mask on every platform
and under any parallel schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError
from .._rng import generator
from ..graphs import Graph


@dataclass(frozen=True)
class EdgeMask:
    """Open-edge indicator for one percolation sample of one graph."""

    graph: Graph
    p: float
    seed: int
    open: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.open.shape != (self.graph.m,) or self.open.dtype != np.bool_:
            raise ParameterError("mask bits must be one bool per graph edge")

    @property
    def open_count(self) -> int:
        return int(self.open.sum())

    def open_fraction(self) -> float:
        return self.open_count / self.graph.m if self.graph.m else 0.0


def sample(g: Graph, p: float, seed: int) -> EdgeMask:
    """Independent Bernoulli(p) bond percolation on g."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"retention probability must lie in [0, 1], got {p}")
    if p == 1.0:
        bits = np.ones(g.m, dtype=np.bool_)
    elif p == 0.0:
        bits = np.zeros(g.m, dtype=np.bool_)
    else:
        bits = generator(seed).random(g.m) < p
    bits.setflags(write=False)
    return EdgeMask(graph=g, p=p, seed=int(seed), open=bits)
