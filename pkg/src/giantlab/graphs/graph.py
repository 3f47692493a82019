"""Immutable simple undirected graphs with compressed adjacency.

Vertices are dense integers 0..n-1.  Edges are stored as a sorted (m, 2)
array of pairs with u < v, no duplicates, no self-loops; the edge index in
this array is the edge identity used by percolation masks.  Optional vertex
labels tag construction regions (H1, TREE, GADGET, H2, T1, T2, F, SUBDIV).

The serialized text format is bit-exact and ASCII:

    #giantlab-graph v1
    n m
    u v          (m lines, lexicographically sorted, 0 <= u < v < n)
    L v TAG      (optional label lines, ascending v)
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import FormatError, ParameterError
from .._kernels import girth_kernel

_MAGIC = "#giantlab-graph v1"


class Graph:
    """Immutable simple graph; see module docstring for conventions."""

    __slots__ = ("n", "edges", "label_codes", "label_names", "_indptr", "_nbr", "_eid")

    def __init__(self, n: int, edges, labels: Mapping[int, str] | None = None,
                 label_codes: np.ndarray | None = None,
                 label_names: Sequence[str] | None = None):
        n = int(n)
        if n < 1:
            raise ParameterError(f"vertex count must be positive, got {n}")
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise ParameterError("edge endpoint out of range")
            lo = arr.min(axis=1)
            hi = arr.max(axis=1)
            if np.any(lo == hi):
                raise ParameterError("self-loop in edge list")
            code = lo * n + hi
            order = np.argsort(code, kind="stable")
            code = code[order]
            if np.any(code[1:] == code[:-1]):
                raise ParameterError("duplicate edge in edge list")
            canon = np.empty_like(arr)
            canon[:, 0] = lo[order]
            canon[:, 1] = hi[order]
            arr = canon
        else:
            arr = arr.reshape(0, 2)
        arr = arr.astype(np.int32, copy=False)
        arr.setflags(write=False)
        self.n = n
        self.edges = arr

        codes, names = self._resolve_labels(n, labels, label_codes, label_names)
        self.label_codes = codes
        self.label_names = names
        self._indptr = None
        self._nbr = None
        self._eid = None

    @staticmethod
    def _resolve_labels(n, labels, label_codes, label_names):
        if labels is not None and label_codes is not None:
            raise ParameterError("pass labels either as a mapping or as codes, not both")
        if label_codes is not None:
            codes = np.asarray(label_codes, dtype=np.uint8)
            if codes.shape != (n,):
                raise ParameterError("label code array must have one entry per vertex")
            names = ("",) + tuple(label_names or ())
            if codes.max(initial=0) >= len(names):
                raise ParameterError("label code exceeds the declared name table")
            codes = codes.copy()
            codes.setflags(write=False)
            return codes, names
        if labels:
            names_list: list[str] = [""]
            index: dict[str, int] = {}
            codes = np.zeros(n, dtype=np.uint8)
            for v, tag in labels.items():
                v = int(v)
                if not 0 <= v < n:
                    raise ParameterError(f"label vertex {v} out of range")
                slot = index.get(tag)
                if slot is None:
                    slot = len(names_list)
                    if slot > 255:
                        raise ParameterError("too many distinct labels")
                    names_list.append(str(tag))
                    index[tag] = slot
                codes[v] = slot
            codes.setflags(write=False)
            return codes, tuple(names_list)
        return None, ("",)

    # -- basic accessors ----------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.edges.ravel(), minlength=self.n)
        return deg.astype(np.int64)

    def label_of(self, v: int) -> str | None:
        if self.label_codes is None:
            return None
        code = int(self.label_codes[v])
        return self.label_names[code] if code else None

    def labels_dict(self) -> dict[int, str]:
        if self.label_codes is None:
            return {}
        out = {}
        for v in np.flatnonzero(self.label_codes):
            out[int(v)] = self.label_names[int(self.label_codes[v])]
        return out

    def region_counts(self) -> dict[str, int]:
        if self.label_codes is None:
            return {}
        counts = np.bincount(self.label_codes, minlength=len(self.label_names))
        return {
            name: int(counts[code])
            for code, name in enumerate(self.label_names)
            if code and counts[code]
        }

    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR neighbor lists: (indptr, neighbors, edge_ids).

        Neighbors of v are ``neighbors[indptr[v]:indptr[v+1]]`` in ascending
        order, and ``edge_ids`` gives the index of each incident edge in the
        edge array.  Built lazily and cached; the arrays are read-only.
        """
        if self._indptr is None:
            m = self.m
            src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
            dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
            eid = np.concatenate([np.arange(m, dtype=np.int64)] * 2) if m else np.zeros(0, np.int64)
            order = np.lexsort((dst, src))
            src = src[order]
            dst = dst[order]
            eid = eid[order]
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.add.at(indptr, src + 1, 1)
            np.cumsum(indptr, out=indptr)
            nbr = dst.astype(np.int32)
            eids = eid.astype(np.int32)
            for a in (indptr, nbr, eids):
                a.setflags(write=False)
            self._indptr, self._nbr, self._eid = indptr, nbr, eids
        return self._indptr, self._nbr, self._eid

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if self.n != other.n or not np.array_equal(self.edges, other.edges):
            return False
        return self.labels_dict() == other.labels_dict()

    def __hash__(self):
        return hash((self.n, self.m))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]], **kw) -> Graph:
    return Graph(n, list(edges), **kw)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def write_graph(g: Graph, path, comments=()) -> None:
    """Write ``g`` in the text format; byte-identical for equal graphs.

    Extra provenance may be passed as ``comments``: each entry becomes a
    ``# ...`` line between the magic header and the size line, where the
    parser ignores it.
    """
    parts = [_MAGIC]
    parts.extend(f"# {c}" for c in comments)
    parts.append(f"{g.n} {g.m}")
    if g.m:
        # One join over formatted pairs keeps this linear and deterministic.
        cols = g.edges.astype(str)
        parts.extend(" ".join(row) for row in cols)
    if g.label_codes is not None:
        for v in np.flatnonzero(g.label_codes):
            parts.append(f"L {v} {g.label_names[int(g.label_codes[v])]}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")


def parse_graph(path) -> Graph:
    """Parse the text format back into a Graph; errors carry line numbers."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != _MAGIC:
        raise FormatError(f"missing magic header {_MAGIC!r}", line=1)
    # provenance comments may sit between the magic and size lines
    start = 1
    while start < len(lines) and lines[start].startswith("#"):
        start += 1
    if start >= len(lines):
        raise FormatError("missing size line", line=start + 1)
    size_line = start + 1
    fields = lines[start].split()
    if len(fields) != 2:
        raise FormatError("size line must read 'n m'", line=size_line)
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError as exc:
        raise FormatError(f"bad size line: {exc}", line=size_line) from None
    if n < 1 or m < 0:
        raise FormatError("size line out of range", line=size_line)
    body = start + 1
    if len(lines) < body + m:
        raise FormatError(f"expected {m} edge lines", line=len(lines))

    edges = np.zeros((m, 2), dtype=np.int64)
    prev_code = -1
    for i in range(m):
        lineno = body + i + 1
        fields = lines[body + i].split()
        if len(fields) != 2:
            raise FormatError("edge line must read 'u v'", line=lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError("edge endpoints must be integers", line=lineno) from None
        if u == v:
            raise FormatError(f"self-loop {u} {v}", line=lineno)
        if not (0 <= u < v < n):
            raise FormatError(f"edge {u} {v} violates 0 <= u < v < n", line=lineno)
        code = u * n + v
        if code == prev_code:
            raise FormatError(f"duplicate edge {u} {v}", line=lineno)
        if code < prev_code:
            raise FormatError(f"edge {u} {v} breaks lexicographic order", line=lineno)
        prev_code = code
        edges[i, 0] = u
        edges[i, 1] = v

    labels: dict[int, str] = {}
    for j, raw in enumerate(lines[body + m:]):
        lineno = body + m + j + 1
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != 3 or fields[0] != "L":
            raise FormatError("trailing lines must read 'L v TAG'", line=lineno)
        try:
            v = int(fields[1])
        except ValueError:
            raise FormatError("label vertex must be an integer", line=lineno) from None
        if not 0 <= v < n:
            raise FormatError(f"label vertex {v} out of range", line=lineno)
        labels[v] = fields[2]
    return Graph(n, edges, labels=labels or None)


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def girth(g: Graph) -> float:
    """Length of the shortest cycle, or math.inf for acyclic graphs.

    Exact: a BFS from every vertex records, over every non-tree edge (u, w)
    it meets, the candidate dist(u) + dist(w) + 1; the minimum over all
    roots is the girth.  Each BFS stops expanding once it can no longer
    improve the incumbent, which keeps the scan cheap on graphs whose
    shortest cycle is short.
    """
    if g.m == 0:
        return math.inf
    indptr, nbr, eid = g.adjacency()
    best = girth_kernel(indptr, nbr, eid, g.n)
    return math.inf if best < 0 else float(best)


def subdivide(g: Graph, edge_set, L: int, fresh_label: str | None = None) -> Graph:
    """Replace each selected edge by a path of L edges through fresh vertices.

    ``edge_set`` is an iterable of (u, v) pairs that must all be edges of g;
    L = 1 returns a structurally equal graph.  Fresh vertices are appended
    after the existing ones, in the edge-id order of the selected edges,
    and optionally carry ``fresh_label``.
    """
    L = int(L)
    if L < 1:
        raise ParameterError(f"subdivision length must be >= 1, got {L}")
    pairs = np.asarray(list(edge_set), dtype=np.int64).reshape(-1, 2)
    if pairs.size == 0:
        return Graph(g.n, g.edges, labels=g.labels_dict() or None)
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    want = lo * g.n + hi
    have = g.edges[:, 0].astype(np.int64) * g.n + g.edges[:, 1]
    idx = np.searchsorted(have, want)
    ok = (idx < g.m)
    ok &= have[np.minimum(idx, g.m - 1)] == want
    if not np.all(ok):
        bad = pairs[np.flatnonzero(~ok)[0]]
        raise ParameterError(f"edge {tuple(int(x) for x in bad)} not present")
    sel = np.unique(idx)
    if sel.size != idx.size:
        raise ParameterError("edge selected twice for subdivision")
    if L == 1:
        return Graph(g.n, g.edges, labels=g.labels_dict() or None)

    keep_mask = np.ones(g.m, dtype=bool)
    keep_mask[sel] = False
    kept = g.edges[keep_mask].astype(np.int64)

    k = sel.size
    per = L - 1
    fresh = g.n + np.arange(k * per, dtype=np.int64).reshape(k, per)
    a = g.edges[sel, 0].astype(np.int64)
    b = g.edges[sel, 1].astype(np.int64)
    chain_u = np.concatenate([a[:, None], fresh], axis=1)
    chain_v = np.concatenate([fresh, b[:, None]], axis=1)
    chains = np.stack([chain_u.ravel(), chain_v.ravel()], axis=1)

    n_new = g.n + k * per
    labels = g.labels_dict()
    if fresh_label is not None:
        for v in range(g.n, n_new):
            labels[v] = fresh_label
    return Graph(n_new, np.concatenate([kept, chains]), labels=labels or None)
