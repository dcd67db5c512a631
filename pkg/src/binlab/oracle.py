"""Exact solver and verifier for binary labeling problems on trees.

The oracle roots the tree at node 1 and runs a bottom-up feasibility DP.
The set of reachable selected-child-edge counts of a node is kept as a
Python int bitmask (bit x set = x is reachable), so merging a child is two
shifts and an or.  Prefix masks are stored per node to reconstruct one
concrete solution top-down.

Everything here is iterative; component sizes in the 10^5 range must work.
"""

from __future__ import annotations

from .problem_model import ProblemError
from .tree_core import WHITE, TreeError


class InfeasibleError(Exception):
    """The instance provably has no valid labeling."""


def is_relevant(tree, prob, v):
    if tree.colors[v] == WHITE:
        return tree.degree(v) == prob.d
    return tree.degree(v) == prob.delta


def node_mask(tree, prob, v):
    """Allowed selected-edge-count bitmask for node v (all counts when the
    node is not relevant)."""
    deg = tree.degree(v)
    if tree.colors[v] == WHITE:
        if deg == prob.d:
            return prob.white.mask()
    elif deg == prob.delta:
        return prob.black.mask()
    return (1 << (deg + 1)) - 1


def verify(tree, prob, solution, mask_of=None):
    """Check a solution (set of (u,v) edges, u < v).  Returns a list of
    violating nodes, empty when valid."""
    sol = set(solution)
    for e in sol:
        if e not in tree.edge_index:
            raise TreeError(f"solution edge {e} not in tree")
    bad = []
    for v in tree.nodes():
        cnt = sum(1 for u in tree.adj[v] if (min(u, v), max(u, v)) in sol)
        mask = mask_of(v) if mask_of else node_mask(tree, prob, v)
        if not (mask >> cnt) & 1:
            bad.append(v)
    return bad


def solve(tree, prob, mask_of=None, root=1):
    """Return one valid solution as a sorted tuple of edges, or raise
    InfeasibleError.

    `mask_of(v)` overrides the per-node allowed-count bitmask; the default
    constrains exactly the relevant nodes.  Deterministic: prefers labeling
    an edge 0, and the smallest admissible count at the root.
    """
    if mask_of is None:
        mask_of = lambda v: node_mask(tree, prob, v)
    n = tree.n
    if not (1 <= root <= n):
        raise ProblemError(f"root {root} out of range")

    parent = [0] * (n + 1)
    order = [root]
    parent[root] = -1
    for v in order:
        for u in tree.adj[v]:
            if parent[u] == 0 and u != root:
                parent[u] = v
                order.append(u)
    if len(order) != n:
        raise TreeError("tree is disconnected")

    children = [[] for _ in range(n + 1)]
    for v in order[1:]:
        children[parent[v]].append(v)

    # feas[v] = (feasible with parent edge 0, with parent edge 1)
    feas = [None] * (n + 1)
    # prefix[v][i] = reachable child-count mask after merging children[v][:i]
    prefix = [None] * (n + 1)

    for v in reversed(order):
        mask = mask_of(v)
        pre = [1]
        r = 1
        for c in children[v]:
            f0, f1 = feas[c]
            r = (r if f0 else 0) | ((r << 1) if f1 else 0)
            pre.append(r)
            if r == 0:
                break
        prefix[v] = pre
        if r == 0:
            feas[v] = (False, False)
        else:
            feas[v] = (bool(r & mask), bool((r << 1) & mask))
        if v == root and not feas[v][0]:
            raise InfeasibleError(f"no labeling exists (stuck at node {v})")

    # top-down reconstruction; need[v] = required selected-child-edge count
    selected = []
    need = [None] * (n + 1)
    root_mask = prefix[root][len(children[root])] & mask_of(root)
    need[root] = (root_mask & -root_mask).bit_length() - 1
    for v in order:
        x = need[v]
        kids = children[v]
        pre = prefix[v]
        for i in range(len(kids) - 1, -1, -1):
            c = kids[i]
            f0, f1 = feas[c]
            if f0 and (pre[i] >> x) & 1:
                lbl = 0
            elif f1 and x > 0 and (pre[i] >> (x - 1)) & 1:
                lbl = 1
            else:
                raise AssertionError("reconstruction lost feasibility")
            if lbl:
                selected.append((min(v, c), max(v, c)))
                x -= 1
            # child now owes itself a count with lbl on its parent edge
            cmask = (prefix[c][len(children[c])] << lbl) & mask_of(c)
            cmask >>= lbl
            need[c] = (cmask & -cmask).bit_length() - 1
        if x != 0:
            raise AssertionError("reconstruction count mismatch")
    return tuple(sorted(selected))


def exhaustive_solve(tree, prob, mask_of=None):
    """Brute force over all labelings; returns the lexicographically first
    valid solution or None.  Only for tiny trees."""
    m = len(tree.edges)
    if m > 20:
        raise ProblemError("exhaustive_solve limited to 20 edges")
    if mask_of is None:
        mask_of = lambda v: node_mask(tree, prob, v)
    for bits in range(1 << m):
        sol = {tree.edges[i] for i in range(m) if (bits >> i) & 1}
        if not verify(tree, prob, sol, mask_of):
            return tuple(sorted(sol))
    return None


SOLUTION_MAGIC = "binlab-sol v1"


def write_solution(solution):
    lines = [SOLUTION_MAGIC]
    for (u, v) in sorted(solution):
        lines.append(f"s {u} {v}")
    return "\n".join(lines) + "\n"


def read_solution(text):
    lines = text.splitlines()
    if not lines or lines[0] != SOLUTION_MAGIC:
        raise ProblemError("malformed solution header")
    sol = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "s":
            raise ProblemError(f"bad solution line {ln!r}")
        u, v = int(parts[1]), int(parts[2])
        if u >= v:
            raise ProblemError("solution edges must satisfy u < v")
        sol.append((u, v))
    if sol != sorted(sol):
        raise ProblemError("solution edges must be sorted")
    return tuple(sol)
