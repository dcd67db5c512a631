"""Solver families for binary labeling problems on 2-colored trees.

All solvers return the solution as a sorted tuple of selected edges (the
edges labeled 1); every other edge is labeled 0.  The dispatcher
solve_auto classifies the problem, picks a strategy, transports the
labeling through switch/reverse wrappers, verifies, and falls back to the
exact oracle when no specialized solver applies or verification fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle
from .classifier import (
    CONSTANT,
    LINEAR,
    LOG,
    UNSOLVABLE,
    Classification,
    classify_broad,
    classify_fine,
    select_solver,
)
from .decompose import RAKED, arc_decompose, deg_decompose
from .problem_model import (
    ProblemError,
    complete_node,
    max_resiliency,
    reverse,
    switch,
    to_string,
)
from .tree_core import BLACK, WHITE, build, induced_components


class SolverError(ProblemError):
    pass


def verify(tree, prob, solution):
    return oracle.verify(tree, prob, solution)


def color_swap(tree):
    colors = [BLACK if tree.colors[v] == WHITE else WHITE for v in tree.nodes()]
    return build(colors, tree.edges)


def _apply_chain(tree, prob, chain):
    t, p = tree, prob
    for step in chain:
        if step == "switch":
            p = switch(p)
            t = color_swap(t)
        elif step == "reverse":
            p = reverse(p)
        else:
            raise SolverError(f"unknown transform {step!r}")
    return t, p


def _transport_back(tree, solution, chain):
    # switch leaves the edge set alone; each reverse complements it
    if sum(1 for s in chain if s == "reverse") % 2 == 1:
        sol = set(solution)
        return tuple(e for e in tree.edges if e not in sol)
    return tuple(sorted(solution))


def solve_constant(tree, prob):
    """O(1)-class solver: all zeros when 0 is allowed on both sides, else
    (under some switch/reverse chain) W is full and each relevant black
    picks min(B) smallest-id edges."""
    for chain in ((), ("reverse",), ("switch",), ("switch", "reverse")):
        t, p = _apply_chain(tree, prob, chain)
        if 0 in p.white and 0 in p.black:
            return _transport_back(tree, (), chain)
        if len(p.white.allowed) == p.d + 1 and p.black:
            k = min(p.black.allowed)
            sel = []
            for v in t.nodes():
                if t.colors[v] == BLACK and t.degree(v) == p.delta:
                    for u in t.adj[v][:k]:
                        sel.append((min(u, v), max(u, v)))
            return _transport_back(tree, sel, chain)
    raise SolverError("problem is not of the constant-class form")


def _edge_slots(tree):
    return [None] * len(tree.edges)


def _finish(tree, labels):
    return tuple(e for e, lab in zip(tree.edges, labels) if lab == 1)


def solve_resilient(tree, prob, s=None, t=None, stats=None):
    """DEG-based solver for (s,t)-resilient problems.

    Intra-layer edges are 0; layers are completed top-down, each node
    labeling its remaining free edges via the smallest admissible count,
    assigning 1s to the free edges with smallest opposite-endpoint id.
    """
    if s is None or t is None:
        rt = max_resiliency(prob.white, prob.black)
        if rt is None:
            raise SolverError("problem is not resilient")
        s, t = rt
    dec = deg_decompose(tree, s, t)
    if stats is not None:
        stats["layer_count"] = dec.layer_count
        stats["rounds_estimate"] = dec.layer_count
    labels = _edge_slots(tree)
    eidx = tree.edge_index
    layer = dec.layer_of
    for i, (u, v) in enumerate(tree.edges):
        if layer[u] == layer[v]:
            labels[i] = 0
    order = sorted(tree.nodes(), key=lambda v: (-layer[v], v))
    for v in order:
        free = []
        fixed_ones = 0
        for u in tree.adj[v]:
            i = eidx[(min(u, v), max(u, v))]
            if labels[i] is None:
                free.append((u, i))
            elif labels[i] == 1:
                fixed_ones += 1
        if not free:
            continue
        if oracle.is_relevant(tree, prob, v):
            cs = prob.white if tree.colors[v] == WHITE else prob.black
            x = complete_node(cs, fixed_ones, len(free))
            if x is None:
                raise SolverError(
                    f"completion infeasible at node {v}: resiliency violated")
            need = x - fixed_ones
        else:
            need = 0
        free.sort()
        for j, (_, i) in enumerate(free):
            labels[i] = 1 if j < need else 0
    sol = _finish(tree, labels)
    bad = verify(tree, prob, sol)
    if bad:
        raise SolverError(f"resilient solver produced invalid labeling at {bad[:5]}")
    return sol


def _sorted_neighbors(tree, dec, v):
    # lowest layer first; raked preferred within a layer; then smallest id
    return sorted(
        tree.adj[v],
        key=lambda u: (dec.layer_of[u], dec.reason[u] != RAKED, u),
    )


def _label_lowest(tree, dec, labels, eidx, v, want):
    """Label edges to v's `want` lowest-layer neighbors 1 and the rest of
    the free edges 0; zero-fill when fewer than `want` neighbors exist."""
    nbrs = _sorted_neighbors(tree, dec, v)
    chosen = set(nbrs[:want]) if len(nbrs) >= want else set()
    for u in tree.adj[v]:
        i = eidx[(min(u, v), max(u, v))]
        if labels[i] is None:
            labels[i] = 1 if u in chosen else 0


def solve_factor(tree, prob, k, l, stats=None):
    """Backward layer sweep for (d, delta, {k}, {l}) style constraints."""
    if k < 1 or l < 1 or k not in prob.white or l not in prob.black:
        raise SolverError("factor needs k in W, l in B, both >= 1")
    if prob.d - k < 1 or prob.delta - l < 1:
        raise SolverError("factor needs d-k >= 1 and delta-l >= 1")
    delta_param = min(prob.d - k, prob.delta - l) + 1
    dec = arc_decompose(tree, 1, delta_param)
    if stats is not None:
        stats["layer_count"] = dec.layer_count
        stats["rounds_estimate"] = dec.layer_count * 1
    labels = _edge_slots(tree)
    eidx = tree.edge_index
    layer = dec.layer_of
    for i, (u, v) in enumerate(tree.edges):
        if layer[u] == layer[v]:
            labels[i] = 0
    for v in sorted(tree.nodes(), key=lambda v: (-layer[v], v)):
        ones = sum(
            1 for u in tree.adj[v]
            if labels[eidx[(min(u, v), max(u, v))]] == 1
        )
        quota = k if tree.colors[v] == WHITE else l
        want = quota - 1 if ones >= 1 else quota
        _label_lowest(tree, dec, labels, eidx, v, max(want, 0))
    return _finish(tree, labels)


def solve_quasi(tree, prob, k, l, stats=None):
    """Backward layer sweep for (d, delta, {k}, {0, delta-l}) constraints."""
    if k < 1 or l < 0 or k not in prob.white:
        raise SolverError("quasi needs k in W with k >= 1 and l >= 0")
    if 0 not in prob.black or (prob.delta - l) not in prob.black:
        raise SolverError("quasi needs {0, delta-l} in B")
    if prob.d - k < 2:
        raise SolverError("quasi needs d-k >= 2")
    dec = arc_decompose(tree, 2, prob.d - k + 1)
    if stats is not None:
        stats["layer_count"] = dec.layer_count
        stats["rounds_estimate"] = dec.layer_count * 2
    labels = _edge_slots(tree)
    eidx = tree.edge_index
    layer = dec.layer_of
    for i, (u, v) in enumerate(tree.edges):
        if layer[u] == layer[v]:
            labels[i] = 0
    for v in sorted(tree.nodes(), key=lambda v: (-layer[v], v)):
        ones = sum(
            1 for u in tree.adj[v]
            if labels[eidx[(min(u, v), max(u, v))]] == 1
        )
        if tree.colors[v] == BLACK:
            if ones == 0:
                for u in tree.adj[v]:
                    i = eidx[(min(u, v), max(u, v))]
                    if labels[i] is None:
                        labels[i] = 0
            else:
                # keep the l lowest-layer edges 0, the rest become 1
                nbrs = _sorted_neighbors(tree, dec, v)
                keep = set(nbrs[:l])
                for u in tree.adj[v]:
                    i = eidx[(min(u, v), max(u, v))]
                    if labels[i] is None:
                        labels[i] = 0 if u in keep else 1
        else:
            want = k - 1 if ones >= 1 else k
            _label_lowest(tree, dec, labels, eidx, v, max(want, 0))
    return _finish(tree, labels)


def solve_linear(tree, prob, stats=None):
    """Per-component exact solver for linear-class problems.

    Components of the subgraph induced by relevant nodes are solved with
    the tree DP over the component plus its incident edges; all other
    edges are labeled 0.
    """
    relevant = {v for v in tree.nodes() if oracle.is_relevant(tree, prob, v)}
    comps = induced_components(tree, lambda v: v in relevant)
    if stats is not None:
        stats["components"] = len(comps)
        stats["layer_count"] = 0
        stats["rounds_estimate"] = 0
    selected = []
    for comp in comps:
        comp_set = set(comp)
        nodes = set(comp)
        edges = []
        for v in comp:
            for u in tree.adj[v]:
                nodes.add(u)
                e = (min(u, v), max(u, v))
                if u not in comp_set or v < u:
                    edges.append(e)
        local = {v: i + 1 for i, v in enumerate(sorted(nodes))}
        back = {i: v for v, i in local.items()}
        sub = build(
            [tree.colors[v] for v in sorted(nodes)],
            [(local[a], local[b]) for (a, b) in edges],
        )

        def mask_of(i, back=back, comp_set=comp_set, sub=sub):
            v = back[i]
            if v in comp_set:
                cs = prob.white if tree.colors[v] == WHITE else prob.black
                return cs.mask()
            return (1 << (sub.degree(i) + 1)) - 1

        try:
            sol = oracle.solve(sub, prob, mask_of=mask_of)
        except oracle.InfeasibleError:
            raise oracle.InfeasibleError(
                f"infeasible component containing node {comp[0]}")
        for (a, b) in sol:
            u, v = back[a], back[b]
            selected.append((min(u, v), max(u, v)))
    return tuple(sorted(selected))


@dataclass
class SolveResult:
    solution: tuple        # None when infeasible
    strategy: object
    classification: Classification
    fallback: bool = False
    note: str = ""


def _run_strategy(tree, prob, strat, stats=None):
    t, p = _apply_chain(tree, prob, strat.transforms)
    if strat.name == "constant":
        sol = solve_constant(t, p)
    elif strat.name == "resilient":
        sol = solve_resilient(t, p, *strat.params, stats=stats)
    elif strat.name == "factor":
        sol = solve_factor(t, p, *strat.params, stats=stats)
    elif strat.name == "quasi":
        sol = solve_quasi(t, p, *strat.params, stats=stats)
    elif strat.name == "linear":
        sol = solve_linear(t, p, stats=stats)
    else:
        raise SolverError(f"cannot run strategy {strat.name}")
    return _transport_back(tree, sol, strat.transforms)


def solve_auto(tree, prob, budget=None, stats=None):
    """Classify, pick a strategy, solve, verify; oracle on any failure."""
    w_str, b_str = to_string(prob.white), to_string(prob.black)
    broad = classify_broad(w_str, b_str)
    if broad == LOG:
        cls = classify_fine(prob, budget=budget)
    else:
        cls = Classification(broad=broad)
    strat = select_solver(prob, cls, budget=budget)

    sol = None
    fallback = False
    note = strat.note
    if strat.name not in ("unsolvable", "oracle-fallback"):
        try:
            cand = _run_strategy(tree, prob, strat, stats=stats)
            if not verify(tree, prob, cand):
                sol = cand
            else:
                fallback = True
                note = f"{strat.name} output failed verification"
        except (SolverError, oracle.InfeasibleError) as exc:
            fallback = True
            note = f"{strat.name} failed: {exc}"
    else:
        fallback = strat.name == "oracle-fallback"

    if sol is None:
        try:
            sol = oracle.solve(tree, prob)
        except oracle.InfeasibleError:
            return SolveResult(None, strat, cls, fallback=fallback,
                               note=note or "instance infeasible")
    bad = verify(tree, prob, sol)
    if bad:
        raise AssertionError(f"final labeling invalid at nodes {bad[:5]}")
    return SolveResult(sol, strat, cls, fallback=fallback, note=note)
