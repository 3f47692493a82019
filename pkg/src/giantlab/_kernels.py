"""Compiled inner loops shared across the package.

Everything here is a plain-array kernel (CSR adjacency or edge arrays in,
scalars or arrays out) so the compiled code stays independent of the Graph
wrapper.  cache=True persists the compiled artifacts next to this file,
which also lets forked worker processes reuse them.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_UNREACHED = np.int32(2**30)


@njit(cache=True)
def girth_kernel(indptr, nbr, eid, n):
    """Shortest cycle length, or -1 if the graph is acyclic.

    BFS from every root; every non-tree edge (u, w) seen while expanding u
    yields the candidate dist[u] + dist[w] + 1.  Expansion stops once
    2*dist[u] >= best, so the per-root cost is bounded by the incumbent.
    """
    best = _UNREACHED
    dist = np.full(n, -1, np.int32)
    par_edge = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    for s in range(n):
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        dist[s] = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if 2 * du >= best:
                break
            for j in range(indptr[u], indptr[u + 1]):
                w = nbr[j]
                e = eid[j]
                if dist[w] < 0:
                    dist[w] = du + 1
                    par_edge[w] = e
                    queue[tail] = w
                    tail += 1
                elif e != par_edge[u]:
                    c = du + dist[w] + 1
                    if c < best:
                        best = c
        for i in range(tail):
            v = queue[i]
            dist[v] = -1
            par_edge[v] = -1
        if best == 3:
            break
    if best >= _UNREACHED:
        return -1
    return int(best)


@njit(cache=True)
def open_degrees(indptr, nbr, eid, open_mask):
    """Degree of each vertex within the open subgraph."""
    n = indptr.size - 1
    deg = np.zeros(n, np.int64)
    for v in range(n):
        c = 0
        for j in range(indptr[v], indptr[v + 1]):
            if open_mask[eid[j]]:
                c += 1
        deg[v] = c
    return deg


@njit(cache=True)
def uf_component_labels(eu, ev, open_mask, n):
    """Union-find over open edges; labels[v] is the component root of v."""
    parent = np.arange(n, dtype=np.int64)
    size = np.ones(n, np.int64)
    for i in range(eu.size):
        if not open_mask[i]:
            continue
        a = eu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ev[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    labels = np.empty(n, np.int64)
    for v in range(n):
        r = v
        while parent[r] != r:
            r = parent[r]
        x = v
        while parent[x] != r:
            nxt = parent[x]
            parent[x] = r
            x = nxt
        labels[v] = r
    return labels


@njit(cache=True)
def two_core_peel(indptr, nbr, eid, open_mask):
    """Peel open-degree <= 1 vertices to a fixpoint.

    Returns (core_vertex_mask, core_edge_mask): the vertices surviving the
    peel and the open edges with both endpoints surviving.
    """
    n = indptr.size - 1
    deg = open_degrees(indptr, nbr, eid, open_mask)
    alive_edge = open_mask.copy()
    removed = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    top = 0
    for v in range(n):
        if deg[v] <= 1:
            removed[v] = True
            stack[top] = v
            top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        for j in range(indptr[v], indptr[v + 1]):
            e = eid[j]
            if alive_edge[e]:
                alive_edge[e] = False
                w = nbr[j]
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] <= 1:
                        removed[w] = True
                        stack[top] = w
                        top += 1
    return ~removed, alive_edge


@njit(cache=True)
def count_bridges(indptr, nbr, eid, edge_alive, vert_alive):
    """Bridges of the subgraph given by the alive masks, via low-link."""
    n = indptr.size - 1
    disc = np.full(n, -1, np.int64)
    low = np.empty(n, np.int64)
    parent_edge = np.full(n, -1, np.int64)
    stack_v = np.empty(n, np.int64)
    stack_j = np.empty(n, np.int64)
    bridges = 0
    timer = 0
    for s in range(n):
        if not vert_alive[s] or disc[s] >= 0:
            continue
        top = 0
        stack_v[0] = s
        stack_j[0] = indptr[s]
        disc[s] = timer
        low[s] = timer
        timer += 1
        while top >= 0:
            v = stack_v[top]
            j = stack_j[top]
            if j < indptr[v + 1]:
                stack_j[top] += 1
                e = eid[j]
                w = nbr[j]
                if not edge_alive[e] or not vert_alive[w]:
                    continue
                if disc[w] < 0:
                    disc[w] = timer
                    low[w] = timer
                    timer += 1
                    parent_edge[w] = e
                    top += 1
                    stack_v[top] = w
                    stack_j[top] = indptr[w]
                elif e != parent_edge[v]:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                top -= 1
                if top >= 0:
                    u = stack_v[top]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] > disc[u]:
                        bridges += 1
    return bridges


@njit(cache=True)
def predictor_flags(indptr, nbr, eid, eu, ev, open_mask, R):
    """For each open edge i = (u, v), decide both directional events:
    a_uv[i] is true when the component of v in the open graph minus edge i
    holds at least R vertices (and symmetrically a_vu).  Each query is a
    BFS truncated at R visited vertices."""
    m = eu.size
    n = indptr.size - 1
    a_uv = np.zeros(m, np.bool_)
    a_vu = np.zeros(m, np.bool_)
    stamp = np.zeros(n, np.int64)
    queue = np.empty(R + 1, np.int64)
    cur = 0
    for i in range(m):
        if not open_mask[i]:
            continue
        for side in range(2):
            src = ev[i] if side == 0 else eu[i]
            cur += 1
            stamp[src] = cur
            queue[0] = src
            head = 0
            tail = 1
            count = 1
            reached = count >= R
            while head < tail and not reached:
                x = queue[head]
                head += 1
                for j in range(indptr[x], indptr[x + 1]):
                    e2 = eid[j]
                    if e2 == i or not open_mask[e2]:
                        continue
                    w = nbr[j]
                    if stamp[w] != cur:
                        stamp[w] = cur
                        queue[tail] = w
                        tail += 1
                        count += 1
                        if count >= R:
                            reached = True
                            break
            if side == 0:
                a_uv[i] = reached
            else:
                a_vu[i] = reached
    return a_uv, a_vu


@njit(cache=True)
def bfs_eccentricity(indptr, nbr, eid, open_mask, src):
    """(eccentricity of src in its open component, component size,
    smallest farthest vertex)."""
    n = indptr.size - 1
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int64)
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    ecc = 0
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        for j in range(indptr[v], indptr[v + 1]):
            if not open_mask[eid[j]]:
                continue
            w = nbr[j]
            if dist[w] < 0:
                dist[w] = dv + 1
                if dv + 1 > ecc:
                    ecc = dv + 1
                queue[tail] = w
                tail += 1
    far = src
    for v in range(n):
        if dist[v] == ecc:
            far = v
            break
    return ecc, tail, far


@njit(cache=True)
def dfs_deepest(indptr, nbr, eid, open_mask, src):
    """Iterative DFS from src in the open subgraph.

    Returns (parent, deepest vertex); parent[v] = -1 for the root, -2 for
    unvisited, so the root-to-deepest walk is a simple open path.
    """
    n = indptr.size - 1
    parent = np.full(n, -2, np.int64)
    depth = np.full(n, -1, np.int64)
    stack_v = np.empty(n, np.int64)
    stack_j = np.empty(n, np.int64)
    parent[src] = -1
    depth[src] = 0
    stack_v[0] = src
    stack_j[0] = indptr[src]
    top = 0
    best = src
    while top >= 0:
        v = stack_v[top]
        j = stack_j[top]
        if j < indptr[v + 1]:
            stack_j[top] += 1
            if not open_mask[eid[j]]:
                continue
            w = nbr[j]
            if parent[w] == -2:
                parent[w] = v
                depth[w] = depth[v] + 1
                if depth[w] > depth[best]:
                    best = w
                top += 1
                stack_v[top] = w
                stack_j[top] = indptr[w]
        else:
            top -= 1
    return parent, best


@njit(cache=True)
def giant_path_counts(indptr, nbr, eid, eu, ev, open_mask, in_giant, deg_open):
    """Counts of simple open paths with 1, 2, and 3 edges, all of whose
    vertices lie in the giant.

    One-edge paths are giant open edges; two-edge paths are counted at
    their middle vertex; three-edge paths at their middle edge, with the
    closing-triangle walks (equal endpoints) subtracted.
    """
    n = indptr.size - 1
    m = eu.size
    count1 = 0
    count3 = 0
    stamp = np.full(n, -1, np.int64)
    for i in range(m):
        if not open_mask[i]:
            continue
        u = eu[i]
        if not in_giant[u]:
            continue
        v = ev[i]
        count1 += 1
        common = 0
        for j in range(indptr[u], indptr[u + 1]):
            if open_mask[eid[j]]:
                stamp[nbr[j]] = i
        for j in range(indptr[v], indptr[v + 1]):
            if open_mask[eid[j]] and stamp[nbr[j]] == i:
                common += 1
        count3 += (deg_open[u] - 1) * (deg_open[v] - 1) - common
    count2 = 0
    for x in range(n):
        if in_giant[x]:
            dx = deg_open[x]
            count2 += dx * (dx - 1) // 2
    return count1, count2, count3
