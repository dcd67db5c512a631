"""Minimal synchronous message-passing engine.

Nodes run the same deterministic program in lock-step rounds: every step
call in round i sees exactly the messages sent in round i-1.  Messages are
addressed by port (the index of the neighbor in the node's sorted
adjacency list) and may be arbitrary Python values.  A node stops once it
produces an output; its outbox from the output step is still delivered.

rounds_used is the largest step index at which any node produced output,
so a program that outputs immediately uses 0 rounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class EngineError(RuntimeError):
    pass


@dataclass
class RoundTrace:
    rounds_used: int
    outputs: dict  # node id -> output value


def _ports(tree):
    return tuple(
        {u: i for i, u in enumerate(tree.adj[v])} if v else None
        for v in range(tree.n + 1)
    )


def _run(tree, program, id_assignment=None, max_steps=None):
    ids = id_assignment or {v: v for v in tree.nodes()}
    if sorted(ids) != list(tree.nodes()) or len(set(ids.values())) != tree.n:
        raise EngineError("id assignment must be a bijection on the nodes")
    port_of = _ports(tree)
    states = {
        v: program.init(ids[v], tree.degree(v), tree.colors[v], tree.n)
        for v in tree.nodes()
    }
    outputs = {}
    out_step = {}
    inboxes = {v: {} for v in tree.nodes()}
    step_idx = 0
    while len(outputs) < tree.n:
        if max_steps is not None and step_idx > max_steps:
            break
        nxt = {v: {} for v in tree.nodes()}
        for v in tree.nodes():
            if v in outputs:
                continue
            state, outbox, out = program.step(states[v], inboxes[v])
            states[v] = state
            for port, msg in (outbox or {}).items():
                u = tree.adj[v][port]
                if u not in outputs:
                    nxt[u][port_of[u][v]] = msg
            if out is not None:
                outputs[v] = out
                out_step[v] = step_idx
        inboxes = nxt
        step_idx += 1
    return outputs, out_step


def run_sync(tree, program, id_assignment=None, max_rounds=None):
    outputs, out_step = _run(tree, program, id_assignment,
                             max_steps=max_rounds)
    if len(outputs) < tree.n:
        raise EngineError(f"round cap {max_rounds} exceeded")
    rounds = max(out_step.values()) if out_step else 0
    return RoundTrace(rounds_used=rounds, outputs=outputs)


def measure_rounds(program, tree, id_assignment=None, max_rounds=None):
    return run_sync(tree, program, id_assignment, max_rounds).rounds_used


def _ball(tree, center, radius):
    dist = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if dist[v] == radius:
            continue
        for u in tree.adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def locality_probe(program, tree_a, tree_b, node_a, node_b, radius):
    """Compare the two pointed nodes' outputs after `radius` rounds.

    Precondition (checked): the radius-`radius` balls around the two nodes
    are identical, including node ids, colors, degrees, and edges.
    """
    if node_a != node_b:
        raise EngineError("pointed nodes must carry the same id")
    ball_a = _ball(tree_a, node_a, radius)
    ball_b = _ball(tree_b, node_b, radius)
    sig_a = sorted(
        (v, tree_a.colors[v], tree_a.degree(v), d) for v, d in ball_a.items())
    sig_b = sorted(
        (v, tree_b.colors[v], tree_b.degree(v), d) for v, d in ball_b.items())
    edges_a = {e for e in tree_a.edges if e[0] in ball_a and e[1] in ball_a}
    edges_b = {e for e in tree_b.edges if e[0] in ball_b and e[1] in ball_b}
    if node_a != node_b or sig_a != sig_b or edges_a != edges_b:
        raise EngineError("radius-T views are not id-isomorphic")
    out_a, _ = _run(tree_a, program, max_steps=radius)
    out_b, _ = _run(tree_b, program, max_steps=radius)
    return out_a.get(node_a) == out_b.get(node_b)


class DegLayerProgram:
    """DEG(s,t) node program; outputs the 1-based layer index."""

    def __init__(self, s, t):
        if s < 1 or t < 1:
            raise EngineError("s and t must be >= 1")
        self.s = s
        self.t = t

    def init(self, node_id, degree, color, n):
        return {
            "deg": degree,
            "thr": self.s if color == "w" else self.t,
            "nports": degree,
            "iter": 0,
        }

    def step(self, state, inbox):
        for msg in inbox.values():
            if msg == "gone":
                state["deg"] -= 1
        state["iter"] += 1
        if state["deg"] <= state["thr"]:
            outbox = {p: "gone" for p in range(state["nports"])}
            return state, outbox, state["iter"]
        return state, {}, None


class ArcLayerProgram:
    """ARC(r, delta) node program; outputs (layer, reason_code).

    Each peeling iteration takes r+1 rounds: one round announcing the
    high-degree flag, then r rounds of coverage-token flooding; nodes
    decide at the last of those and removal notices ride the output step.
    reason codes match the sequential kernels (1 raked, 2 compressed).
    """

    def __init__(self, r, delta):
        if r < 1 or delta < 2:
            raise EngineError("need r >= 1 and delta >= 2")
        self.r = r
        self.delta = delta

    def init(self, node_id, degree, color, n):
        return {
            "deg": degree,
            "nports": degree,
            "phase": 0,      # 0 = announce, 1..r = flood; decide at phase r
            "iter": 1,
            "covered": False,
            "gone_ports": set(),
        }

    def _alive_ports(self, state):
        return [p for p in range(state["nports"]) if p not in state["gone_ports"]]

    def step(self, state, inbox):
        r = self.r
        if state["phase"] == 0:
            for port, msg in inbox.items():
                if msg == ("gone",):
                    state["gone_ports"].add(port)
                    state["deg"] -= 1
            state["covered"] = state["deg"] >= self.delta
            out = {}
            if state["covered"]:
                for p in self._alive_ports(state):
                    out[p] = ("cov", r - 1)
            state["phase"] = 1
            return state, out, None

        got = False
        best_ttl = -1
        for port, msg in inbox.items():
            if isinstance(msg, tuple) and msg and msg[0] == "cov":
                got = True
                best_ttl = max(best_ttl, msg[1])
        newly = got and not state["covered"]
        if newly:
            state["covered"] = True
        out = {}
        if newly and best_ttl > 0:
            for p in self._alive_ports(state):
                out[p] = ("cov", best_ttl - 1)

        if state["phase"] < r:
            state["phase"] += 1
            return state, out, None

        # decision point
        if state["deg"] <= 1:
            reason = 1
        elif not state["covered"]:
            reason = 2
        else:
            state["phase"] = 0
            lay = state["iter"]
            state["iter"] = lay + 1
            state["covered"] = False
            return state, out, None
        for p in self._alive_ports(state):
            out[p] = ("gone",)
        return state, out, (state["iter"], reason)
