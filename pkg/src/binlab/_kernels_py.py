"""Pure-Python layer-peeling kernels (fallback for the compiled extension).

Both kernels take a CSR adjacency (indptr, indices over 0-based node ids)
and return 1-based layer indices per node.  Semantics must match
binlab._native exactly; the benchmark and the test suite compare the two.
"""

from __future__ import annotations


def peel_deg(indptr, indices, is_white, s, t):
    """DEG(s,t): repeatedly remove whites of residual degree <= s and blacks
    of residual degree <= t.  Returns a list of layer indices (1-based)."""
    indptr = list(indptr)
    indices = list(indices)
    n = len(indptr) - 1
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    layer = [0] * n
    alive = list(range(n))
    lay = 0
    while alive:
        lay += 1
        removed = [
            v for v in alive if deg[v] <= (s if is_white[v] else t)
        ]
        if not removed:
            raise RuntimeError("peel_deg stalled (not a forest?)")
        for v in removed:
            layer[v] = lay
        for v in removed:
            for j in range(indptr[v], indptr[v + 1]):
                u = indices[j]
                if layer[u] == 0:
                    deg[u] -= 1
        alive = [v for v in alive if layer[v] == 0]
    return layer


def peel_arc(indptr, indices, r, delta):
    """ARC(r, delta): repeatedly remove leaves (residual degree <= 1) and
    nodes with no residual-degree >= delta node within distance r.

    Returns (layer, reason) where reason[v] is 1 for raked (leaf / isolated)
    and 2 for compressed; a node qualifying as both is recorded raked.
    """
    indptr = list(indptr)
    indices = list(indices)
    n = len(indptr) - 1
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    layer = [0] * n
    reason = [0] * n
    alive = list(range(n))
    lay = 0
    while alive:
        lay += 1
        # multi-source BFS from high-degree nodes, depth r
        covered = [False] * n
        frontier = [v for v in alive if deg[v] >= delta]
        for v in frontier:
            covered[v] = True
        for _ in range(r):
            nxt = []
            for v in frontier:
                for j in range(indptr[v], indptr[v + 1]):
                    u = indices[j]
                    if layer[u] == 0 and not covered[u]:
                        covered[u] = True
                        nxt.append(u)
            frontier = nxt
        removed = []
        for v in alive:
            if deg[v] <= 1:
                layer[v] = lay
                reason[v] = 1
                removed.append(v)
            elif not covered[v]:
                layer[v] = lay
                reason[v] = 2
                removed.append(v)
        if not removed:
            raise RuntimeError("peel_arc stalled (not a forest?)")
        for v in removed:
            for j in range(indptr[v], indptr[v + 1]):
                u = indices[j]
                if layer[u] == 0:
                    deg[u] -= 1
        alive = [v for v in alive if layer[v] == 0]
    return layer, reason
