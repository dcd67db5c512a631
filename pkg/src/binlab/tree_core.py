"""2-colored trees: construction, generators, serialization, basic queries.

Node ids are dense integers 1..n.  Colors are 'w' and 'b'.  Every edge joins
a white node and a black node, and edges are stored canonically as (min, max)
pairs sorted lexicographically, so serialization is byte-stable.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

WHITE = "w"
BLACK = "b"


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class TreeKind:
    """Generator descriptor: kind name plus its parameters."""

    kind: str  # path | star | regular | random | caterpillar
    params: dict = field(default_factory=dict)


@dataclass(eq=False)
class ColoredTree:
    n: int
    colors: tuple  # index 0 unused; colors[v] in {'w','b'}
    edges: tuple   # (u, v) with u < v, sorted
    adj: tuple     # adj[v] = sorted tuple of neighbors, index 0 unused

    @cached_property
    def edge_index(self):
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v):
        return len(self.adj[v])

    def color(self, v):
        return self.colors[v]

    def nodes(self):
        return range(1, self.n + 1)

    def __eq__(self, other):
        return (
            isinstance(other, ColoredTree)
            and self.n == other.n
            and self.colors == other.colors
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.colors, self.edges))


def build(colors, edges):
    """Validate and build a ColoredTree from a color list and edge pairs.

    `colors` is indexed from node 1 (a plain list of 'w'/'b' of length n).
    Rejects cycles, disconnection, monochromatic edges, duplicates and
    out-of-range ids.
    """
    colors = list(colors)
    n = len(colors)
    if n < 1:
        raise TreeError("tree needs at least one node")
    for c in colors:
        if c not in (WHITE, BLACK):
            raise TreeError(f"invalid color {c!r}")
    edges = [tuple(sorted(e)) for e in edges]
    if len(edges) != n - 1:
        raise TreeError(f"expected {n - 1} edges, got {len(edges)}")
    seen = set()
    adj = [[] for _ in range(n + 1)]
    full = [None] + colors
    for (u, v) in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise TreeError(f"edge ({u},{v}) out of range")
        if u == v:
            raise TreeError(f"self-loop at {u}")
        if (u, v) in seen:
            raise TreeError(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        if full[u] == full[v]:
            raise TreeError(f"monochromatic-edge ({u},{v})")
        adj[u].append(v)
        adj[v].append(u)
    # n-1 edges + connected => tree (acyclic follows)
    if n > 1:
        seen_nodes = {1}
        queue = deque([1])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen_nodes:
                    seen_nodes.add(y)
                    queue.append(y)
        if len(seen_nodes) != n:
            raise TreeError("graph is disconnected")
    return ColoredTree(
        n=n,
        colors=tuple(full),
        edges=tuple(sorted(edges)),
        adj=tuple(tuple(sorted(a)) for a in adj),
    )


def _opposite(c):
    return BLACK if c == WHITE else WHITE


def generate(kind, n, seed=0, **params):
    """Deterministic tree generator.  `kind` is a TreeKind or a kind name.

    Supported kinds:
      path                     alternating w-b path, starts white
      star                     one center (params: center='w'), n-1 leaves
      regular                  params: deg_white=d, deg_black=delta; grown in
                               BFS order from a white root until n nodes,
                               last level may be ragged
      random                   params: cap=None; uniform random recursive
                               attachment; the parent of node i is drawn
                               uniformly among nodes of degree < cap, using
                               the Mersenne Twister (Python `random`) seeded
                               with `seed`
      caterpillar              params: spine=k; alternating spine of length k
                               with leaves spread round-robin
    """
    if isinstance(kind, TreeKind):
        params = {**kind.params, **params}
        kind = kind.kind
    if n < 1:
        raise TreeError("n must be positive")

    if kind == "path":
        if n < 2:
            raise TreeError("path needs n >= 2")
        colors = [WHITE if i % 2 == 0 else BLACK for i in range(n)]
        edges = [(i, i + 1) for i in range(1, n)]
        return build(colors, edges)

    if kind == "star":
        if n < 2:
            raise TreeError("star needs n >= 2")
        center = params.get("center", WHITE)
        if center not in (WHITE, BLACK):
            raise TreeError(f"invalid center color {center!r}")
        colors = [center] + [_opposite(center)] * (n - 1)
        edges = [(1, i) for i in range(2, n + 1)]
        return build(colors, edges)

    if kind == "regular":
        d = params.get("deg_white", 3)
        delta = params.get("deg_black", 3)
        if d < 2 or delta < 2:
            raise TreeError("regular needs degrees >= 2")
        colors = [WHITE]
        edges = []
        # queue of (node, free slots); root gets d children, internal
        # nodes keep one slot for their parent
        queue = deque([(1, d)])
        while queue and len(colors) < n:
            v, slots = queue.popleft()
            c = _opposite(colors[v - 1])
            child_slots = (d if c == WHITE else delta) - 1
            for _ in range(slots):
                if len(colors) >= n:
                    break
                colors.append(c)
                u = len(colors)
                edges.append((v, u))
                queue.append((u, child_slots))
        return build(colors, edges)

    if kind == "random":
        if n < 2:
            raise TreeError("random needs n >= 2")
        cap = params.get("cap")
        if cap is not None and cap < 2:
            raise TreeError("degree cap must be >= 2")
        rng = random.Random(seed)
        colors = [WHITE]
        edges = []
        deg = [0, 0]  # deg[v] for v >= 1
        eligible = [1]  # nodes with degree < cap, swap-removed when full
        pos = {1: 0}
        for i in range(2, n + 1):
            if not eligible:
                raise TreeError("degree cap too tight to attach all nodes")
            parent = eligible[rng.randrange(len(eligible))]
            colors.append(_opposite(colors[parent - 1]))
            edges.append((parent, i))
            deg.append(1)
            deg[parent] += 1
            if cap is not None and deg[parent] >= cap:
                j = pos.pop(parent)
                last = eligible[-1]
                eligible[j] = last
                pos[last] = j
                eligible.pop()
                if last == parent:
                    pos.pop(parent, None)
            if cap is None or 1 < cap:
                eligible.append(i)
                pos[i] = len(eligible) - 1
        return build(colors, edges)

    if kind == "caterpillar":
        if n < 2:
            raise TreeError("caterpillar needs n >= 2")
        spine = params.get("spine", max(2, n // 2))
        if not (2 <= spine <= n):
            raise TreeError("spine length out of range")
        colors = [WHITE if i % 2 == 0 else BLACK for i in range(spine)]
        edges = [(i, i + 1) for i in range(1, spine)]
        for i in range(spine + 1, n + 1):
            host = 1 + (i - spine - 1) % spine
            colors.append(_opposite(colors[host - 1]))
            edges.append((host, i))
        return build(colors, edges)

    raise TreeError(f"unknown tree kind {kind!r}")


TREE_MAGIC = "binlab-tree v1"


def write_tree(tree):
    lines = [TREE_MAGIC, f"n {tree.n}"]
    for v in tree.nodes():
        lines.append(f"v {v} {tree.colors[v]}")
    for (u, v) in tree.edges:
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def read_tree(text):
    lines = text.splitlines()
    if not lines or lines[0] != TREE_MAGIC:
        raise TreeError("malformed header")
    if len(lines) < 2 or not lines[1].startswith("n "):
        raise TreeError("missing node count")
    try:
        n = int(lines[1][2:])
    except ValueError:
        raise TreeError("bad node count") from None
    if len(lines) != 1 + 1 + n + max(n - 1, 0):
        raise TreeError("wrong line count for declared n")
    colors = []
    for i in range(n):
        parts = lines[2 + i].split()
        if len(parts) != 3 or parts[0] != "v":
            raise TreeError(f"bad node line {lines[2 + i]!r}")
        if int(parts[1]) != i + 1:
            raise TreeError("node ids must be ascending 1..n")
        colors.append(parts[2])
    edges = []
    for i in range(n - 1):
        parts = lines[2 + n + i].split()
        if len(parts) != 3 or parts[0] != "e":
            raise TreeError(f"bad edge line {lines[2 + n + i]!r}")
        u, v = int(parts[1]), int(parts[2])
        if u >= v:
            raise TreeError("edges must satisfy u < v")
        edges.append((u, v))
    return build(colors, edges)


def induced_components(tree, keep):
    """Connected components of the subgraph induced by nodes with keep(v).

    Returns a list of sorted node lists, ordered by smallest member.
    """
    kept = [v for v in tree.nodes() if keep(v)]
    kept_set = set(kept)
    seen = set()
    comps = []
    for start in kept:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in tree.adj[x]:
                if y in kept_set and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def _bfs_far(tree, start, allowed):
    dist = {start: 0}
    queue = deque([start])
    far, fard = start, 0
    while queue:
        x = queue.popleft()
        for y in tree.adj[x]:
            if y in allowed and y not in dist:
                dist[y] = dist[x] + 1
                if dist[y] > fard:
                    far, fard = y, dist[y]
                queue.append(y)
    return far, fard, len(dist)


def diameter(tree, nodes=None):
    """Longest shortest path (in edges) within `nodes`, by double BFS sweep."""
    if nodes is None:
        allowed = set(tree.nodes())
    else:
        allowed = set(nodes)
    if not allowed:
        raise TreeError("diameter of empty node set")
    start = next(iter(allowed))
    a, _, reached = _bfs_far(tree, start, allowed)
    if reached != len(allowed):
        raise TreeError("node set induces a disconnected subgraph")
    _, d, _ = _bfs_far(tree, a, allowed)
    return d
