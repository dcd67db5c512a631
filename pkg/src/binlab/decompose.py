"""Layer decompositions of 2-colored trees: DEG(s,t) and aggressive
rake-and-compress ARC(r, Delta), plus structural checkers.

DEG peels low-residual-degree nodes (whites <= s, blacks <= t).  ARC peels
leaves/isolated nodes ("raked") together with nodes that see no
residual-degree >= Delta node within distance r ("compressed"); a node
qualifying as both is recorded raked.

The inner peeling loops run in a compiled kernel when the extension is
built (see binlab._kernels); the pure-Python fallback is semantically
identical.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import _kernels
from .tree_core import WHITE

LOW_DEGREE = "low-degree"
RAKED = "raked"
COMPRESSED = "compressed"

_REASON_CODE = {1: RAKED, 2: COMPRESSED}


class DecomposeError(ValueError):
    pass


@dataclass
class LayerDecomposition:
    layer_of: list      # index 0 unused; layer_of[v] >= 1
    reason: list        # index 0 unused; strings from {low-degree, raked, compressed}
    layer_count: int
    params: tuple       # ("deg", s, t) or ("arc", r, Delta)

    def layers(self):
        """Node lists per layer, 1-based: layers()[i] is layer i+1."""
        out = [[] for _ in range(self.layer_count)]
        for v in range(1, len(self.layer_of)):
            out[self.layer_of[v] - 1].append(v)
        return out

    def sizes(self):
        sizes = [0] * self.layer_count
        for v in range(1, len(self.layer_of)):
            sizes[self.layer_of[v] - 1] += 1
        return sizes


def _csr(tree):
    indptr = [0]
    indices = []
    for v in tree.nodes():
        indices.extend(u - 1 for u in tree.adj[v])
        indptr.append(len(indices))
    return indptr, indices


def degen_set(tree, s, t, removed=None):
    """Whites of residual degree <= s plus blacks of residual degree <= t
    in the subforest with `removed` nodes deleted."""
    if s < 1 or t < 1:
        raise DecomposeError("s and t must be >= 1")
    removed = removed or set()
    out = set()
    for v in tree.nodes():
        if v in removed:
            continue
        deg = sum(1 for u in tree.adj[v] if u not in removed)
        if deg <= (s if tree.colors[v] == WHITE else t):
            out.add(v)
    return out


def deg_decompose(tree, s, t):
    if s < 1 or t < 1:
        raise DecomposeError("s and t must be >= 1")
    indptr, indices = _csr(tree)
    is_white = [1 if tree.colors[v] == WHITE else 0 for v in tree.nodes()]
    layer0 = _kernels.peel_deg(indptr, indices, is_white, s, t)
    layer = [0] + [int(x) for x in layer0]
    k = max(layer[1:])
    dec = LayerDecomposition(
        layer_of=layer,
        reason=[None] + [LOW_DEGREE] * tree.n,
        layer_count=k,
        params=("deg", s, t),
    )
    if s >= 2 and t >= 2:
        _assert_deg_shrinkage(dec, tree.n, s, t)
    return dec


def _assert_deg_shrinkage(dec, n, s, t):
    # two peeling steps shrink the residual forest by a factor s*t (+2 slack)
    sizes = dec.sizes()
    residual = [n]
    for sz in sizes:
        residual.append(residual[-1] - sz)
    for i in range(len(residual) - 2):
        if residual[i + 2] > residual[i] / (s * t) + 2:
            raise AssertionError(
                f"DEG shrinkage violated: |G_{i + 2}|={residual[i + 2]} "
                f"> {residual[i]}/{s * t} + 2"
            )


def leaves_set(tree, removed=None):
    """Residual degree <= 1 nodes (leaves and isolated nodes)."""
    removed = removed or set()
    out = set()
    for v in tree.nodes():
        if v in removed:
            continue
        deg = sum(1 for u in tree.adj[v] if u not in removed)
        if deg <= 1:
            out.add(v)
    return out


def ext_set(tree, r, delta, removed=None):
    """Nodes with no residual-degree >= delta node within closed distance r."""
    if r < 1 or delta < 2:
        raise DecomposeError("need r >= 1 and Delta >= 2")
    removed = removed or set()
    alive = [v for v in tree.nodes() if v not in removed]
    deg = {}
    for v in alive:
        deg[v] = sum(1 for u in tree.adj[v] if u not in removed)
    covered = set(v for v in alive if deg[v] >= delta)
    frontier = deque((v, 0) for v in covered)
    while frontier:
        v, dist = frontier.popleft()
        if dist == r:
            continue
        for u in tree.adj[v]:
            if u in deg and u not in covered:
                covered.add(u)
                frontier.append((u, dist + 1))
    return {v for v in alive if v not in covered}


def arc_decompose(tree, r, delta):
    if r < 1 or delta < 2:
        raise DecomposeError("need r >= 1 and Delta >= 2")
    indptr, indices = _csr(tree)
    layer0, reason0 = _kernels.peel_arc(indptr, indices, r, delta)
    layer = [0] + [int(x) for x in layer0]
    reason = [None] + [_REASON_CODE[int(c)] for c in reason0]
    return LayerDecomposition(
        layer_of=layer,
        reason=reason,
        layer_count=max(layer[1:]),
        params=("arc", r, delta),
    )


@dataclass
class RakedNeighborViolation:
    node: int
    detail: str


def check_raked_neighbors(dec, tree, delta, k, r):
    """Check the raked-neighbor guarantees of an ARC(r, delta-k+1) run.

    Every degree-`delta` node must have its k lowest-layer neighbors raked;
    for r >= 2 additionally all second neighbors through those nodes must
    be raked.  Returns None or a RakedNeighborViolation.
    """
    for v in tree.nodes():
        if tree.degree(v) != delta:
            continue
        nbrs = sorted(
            tree.adj[v],
            key=lambda u: (dec.layer_of[u], dec.reason[u] != RAKED, u),
        )
        lowest = nbrs[:k]
        for u in lowest:
            if dec.reason[u] != RAKED:
                return RakedNeighborViolation(
                    v, f"neighbor {u} (layer {dec.layer_of[u]}) not raked"
                )
        if r >= 2:
            for u in lowest:
                for w in tree.adj[u]:
                    if w != v and dec.reason[w] != RAKED:
                        return RakedNeighborViolation(
                            v, f"second neighbor {w} via {u} not raked"
                        )
    return None


def layer_stats(dec):
    sizes = dec.sizes()
    r = dec.params[1] if dec.params[0] == "arc" else 1
    return {
        "layer_count": dec.layer_count,
        "sizes": sizes,
        "rounds_estimate": dec.layer_count * r,
    }


def dump(dec):
    """Debug/golden dump: one `layer <node> <index> <reason>` line per node."""
    lines = []
    for v in range(1, len(dec.layer_of)):
        lines.append(f"layer {v} {dec.layer_of[v]} {dec.reason[v]}")
    return "\n".join(lines) + "\n"
