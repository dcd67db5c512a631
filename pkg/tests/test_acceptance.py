"""Acceptance gate: structural and scaling checks, one pass/fail line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the per-criterion
lines as they complete.
"""

import math
import time

import numpy as np

from binlab import oracle
from binlab.classifier import (
    LINEAR,
    LOG,
    LOG_D,
    LOG_DELTA,
    LOG_N,
    classify_broad,
    classify_family,
    classify_fine,
)
from binlab.decompose import arc_decompose, check_raked_neighbors, deg_decompose
from binlab.lang_families import (
    PairedLoop,
    check_aux_claim,
    family_loops,
    family_table,
    loop_to_string,
    structural_simplicity,
)
from binlab.local_engine import ArcLayerProgram, DegLayerProgram, run_sync
from binlab.problem_model import (
    DEFAULT_BUDGET,
    constraint,
    problem,
    shift,
    to_string,
)
from binlab.solvers import solve_auto, solve_factor, solve_quasi, verify
from binlab.tree_core import WHITE, diameter, generate, induced_components

from conftest import make_rng, random_problem, random_tree


def report(num, name, ok, detail=""):
    line = f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def splitting(d, delta):
    return problem(d, delta, set(range(1, d)), set(range(1, delta)))


def matching(d, delta):
    return problem(d, delta, {1}, {1})


def test_c01_shift_table_golden():
    start = time.perf_counter()
    x20 = constraint(20, {5, 15})
    expected = {
        1: {4, 5, 14, 15},
        2: {3, 4, 5, 13, 14, 15},
        3: {2, 3, 4, 5, 12, 13, 14, 15},
        4: {1, 2, 3, 4, 5, 11, 12, 13, 14, 15},
        5: set(range(0, 6)) | set(range(10, 16)),
        6: set(range(0, 6)) | set(range(9, 15)),
        7: set(range(0, 6)) | set(range(8, 14)),
        10: set(range(0, 11)),
        15: set(range(0, 6)),
    }
    bad = []
    for k, want in expected.items():
        got = shift(x20, k)
        if got.degree != 20 - k or got.allowed != frozenset(want):
            bad.append(k)
    elapsed = time.perf_counter() - start
    report(1, "shift table golden", not bad and elapsed < 1.0,
           f"{len(expected)} shifts, {elapsed:.3f}s")


def test_c02_oracle_equivalence():
    start = time.perf_counter()
    rng = make_rng(20250801)
    mismatches = 0
    count = 10000
    for _ in range(count):
        t = random_tree(rng, 9)  # at most 8 edges
        p = random_problem(rng, 4)
        brute = oracle.exhaustive_solve(t, p)
        try:
            oracle.solve(t, p)
            dp_ok = True
        except oracle.InfeasibleError:
            dp_ok = False
        if dp_ok != (brute is not None):
            mismatches += 1
    elapsed = time.perf_counter() - start
    report(2, "oracle equivalence on small instances",
           mismatches == 0 and elapsed < 300,
           f"{count} instances, {mismatches} mismatches, {elapsed:.1f}s")


def test_c03_solver_soundness_completeness():
    start = time.perf_counter()
    rng = make_rng(77001)
    mismatches = 0
    count = 10000
    for _ in range(count):
        t = random_tree(rng, 14)
        p = random_problem(rng, 4)
        res = solve_auto(t, p)
        try:
            oracle.solve(t, p)
            feasible = True
        except oracle.InfeasibleError:
            feasible = False
        if (res.solution is not None) != feasible:
            mismatches += 1
        elif res.solution is not None and verify(t, p, res.solution):
            mismatches += 1
    elapsed = time.perf_counter() - start
    report(3, "solve_auto matches oracle",
           mismatches == 0 and elapsed < 300,
           f"{count} instances, {mismatches} mismatches, {elapsed:.1f}s")


def test_c04_deg_shrinkage_exact():
    start = time.perf_counter()
    s = t = 10
    n = 100000
    worst = 0.0
    for seed in range(100):
        tree = generate("random", n, seed=seed)
        dec = deg_decompose(tree, s, t)
        sizes = dec.sizes()
        residual2 = tree.n - sum(sizes[:2])
        worst = max(worst, residual2)
        if residual2 > n / (s * t) + 2:
            report(4, "DEG two-step shrinkage", False,
                   f"seed {seed}: |V(G_2)|={residual2}")
    elapsed = time.perf_counter() - start
    report(4, "DEG two-step shrinkage", elapsed < 60,
           f"100 trees, worst |V(G_2)|={worst:.0f} <= {n // (s * t) + 2}, "
           f"{elapsed:.1f}s")


def test_c05_arc_scaling():
    start = time.perf_counter()
    sizes = (10**3, 10**4, 10**5, 10**6)
    counts = {}
    ok = True
    detail = []
    for s in (3, 10, 50):
        for n in sizes:
            tree = generate("regular", n, deg_white=s, deg_black=s)
            dec = arc_decompose(tree, 1, s)
            counts[(s, n)] = dec.layer_count
            bound = 10 * math.log(tree.n, s) + 10
            if dec.layer_count > bound:
                ok = False
                detail.append(f"s={s} n={n}: {dec.layer_count} > {bound:.1f}")
    if counts[(50, 10**6)] > counts[(3, 10**6)] / 2:
        ok = False
        detail.append("s=50 layer count not half of s=3 at n=1e6")
    elapsed = time.perf_counter() - start
    report(5, "ARC layer scaling", ok and elapsed < 600,
           "; ".join(detail) or
           f"layers(3)={counts[(3, 10**6)]}, layers(50)={counts[(50, 10**6)]}, "
           f"{elapsed:.1f}s")


def test_c06_raked_neighbor_lemmas():
    start = time.perf_counter()
    rng = make_rng(31337)
    violations = 0
    checked = 0
    for _ in range(1000):
        tree = generate("random", rng.randint(3, 200),
                        seed=rng.randrange(10**9))
        delta = max(tree.degree(v) for v in tree.nodes())
        for (r, k) in ((1, 1), (1, 2), (2, 1), (2, 2)):
            if delta - k + 1 < 2:
                continue
            dec = arc_decompose(tree, r, delta - k + 1)
            if check_raked_neighbors(dec, tree, delta, k, r) is not None:
                violations += 1
            checked += 1
    elapsed = time.perf_counter() - start
    report(6, "raked-neighbor guarantees",
           violations == 0 and elapsed < 120,
           f"{checked} checks, {violations} violations, {elapsed:.1f}s")


def test_c07_component_diameter_lemma():
    start = time.perf_counter()
    rng = make_rng(424242)
    violations = 0
    for _ in range(1000):
        tree = generate("random", rng.randint(2, 300),
                        seed=rng.randrange(10**9))
        for (s, t) in ((2, 2), (5, 3), (10, 10)):
            def keep(v, s=s, t=t):
                want = s if tree.colors[v] == WHITE else t
                return tree.degree(v) == want

            for comp in induced_components(tree, keep):
                if diameter(tree, comp) > 4 * tree.n / (s + t) + 4:
                    violations += 1
    elapsed = time.perf_counter() - start
    report(7, "induced-component diameter bound",
           violations == 0 and elapsed < 120,
           f"1000 trees x 3 degree pairs, {violations} violations, "
           f"{elapsed:.1f}s")


def test_c08_classifier_goldens():
    split_fam = family_loops([PairedLoop(u="01", v="1", y="0")])
    deviations = []

    def broad_of(p):
        return classify_broad(to_string(p.white), to_string(p.black))

    if broad_of(splitting(2, 2)) != LINEAR:
        deviations.append("splitting(2,2) not linear")
    cls = classify_family(split_fam, split_fam, 5, 4)
    if cls.broad != LOG or cls.fine != LOG_D:
        deviations.append(f"splitting(5,4) -> {cls.broad}/{cls.fine}")
    for d in (2, 3, 5, 9):
        if broad_of(matching(d, 2)) != LINEAR:
            deviations.append(f"matching({d},2) not linear")
    p = matching(5, 5)
    if broad_of(p) != LOG or classify_fine(p).fine != LOG_DELTA:
        deviations.append("matching(5,5) not log_delta")
    p = problem(5, 3, {4}, {1})
    if broad_of(p) != LOG:
        deviations.append("W={d-1},B={1} not broad log")
    elif classify_fine(p).fine != LOG_N:
        deviations.append("W={d-1},B={1} not log_n")
    report(8, "classifier golden set", not deviations, "; ".join(deviations))


def test_c09_language_constants():
    start = time.perf_counter()
    corpus = [
        PairedLoop(u="01", v="1", y="0"),          # 01^+0
        PairedLoop(u="01", v="0", y="0"),          # 010^+
        PairedLoop(u="010", v="0"),                # 010^+ written differently
        PairedLoop(v="10", x="0"),
        PairedLoop(u="11", v="1", y="0"),
        PairedLoop(u="0", v="1", y="0"),
        PairedLoop(u="0", v="01", w="1", x="10", y="0"),
        PairedLoop(u="1", v="0", x="0", y="1"),
        PairedLoop(u="00", v="0", y="100"),
        PairedLoop(v="0", w="1", x="0"),
        PairedLoop(u="0", v="00", w="11", x="0", y="0"),
        PairedLoop(u="10", x="1", y="01"),
    ]
    failures = [loop_to_string(lp) for lp in corpus
                if check_aux_claim(lp, span=256) is not None]
    logfam = family_table(
        lambda k: constraint(k, {max(1, k.bit_length() - 1)}))
    rep = structural_simplicity(logfam, 70000, DEFAULT_BUDGET)
    if rep.simple:
        failures.append("floor(log k) family reported simple")
    elapsed = time.perf_counter() - start
    report(9, "paired-loop constants and pathological family",
           not failures and elapsed < 60,
           "; ".join(failures) or
           f"{len(corpus)} loops verified, log-family fails at degree "
           f"{rep.failure[0]}, {elapsed:.1f}s")


def test_c10_local_engine_equivalence():
    start = time.perf_counter()
    rng = make_rng(90210)
    reason_code = {"raked": 1, "compressed": 2}
    mismatches = 0
    for i in range(500):
        tree = generate("random", rng.randint(2, 120),
                        seed=rng.randrange(10**9))
        dec = deg_decompose(tree, 2, 2)
        trace = run_sync(tree, DegLayerProgram(2, 2),
                         max_rounds=3 * dec.layer_count + 3)
        if any(trace.outputs[v] != dec.layer_of[v] for v in tree.nodes()):
            mismatches += 1
        if trace.rounds_used > 3 * 1 * dec.layer_count:
            mismatches += 1

        r, delta = ((1, 3) if i % 2 == 0 else (2, 4))
        dec = arc_decompose(tree, r, delta)
        trace = run_sync(tree, ArcLayerProgram(r, delta),
                         max_rounds=3 * r * dec.layer_count + 3)
        want = {v: (dec.layer_of[v], reason_code[dec.reason[v]])
                for v in tree.nodes()}
        if any(trace.outputs[v] != want[v] for v in tree.nodes()):
            mismatches += 1
        if trace.rounds_used > 3 * r * dec.layer_count:
            mismatches += 1
    elapsed = time.perf_counter() - start
    report(10, "node programs match sequential peeling",
           mismatches == 0 and elapsed < 300,
           f"500 trees, {mismatches} mismatches, {elapsed:.1f}s")


def _round_trend(d, delta, base, run):
    sizes = (1000, 3000, 10000, 30000, 100000, 300000, 1000000)
    xs, ys, ln = [], [], []
    for n in sizes:
        tree = generate("regular", n, deg_white=d, deg_black=delta)
        stats = {}
        run(tree, stats)
        xs.append(math.log(tree.n, base))
        ys.append(stats["rounds_estimate"])
        ln.append(math.log(tree.n))
    xs, ys, ln = np.array(xs), np.array(ys, dtype=float), np.array(ln)
    primary = float(xs @ ys / (xs @ xs))   # proportional fit rounds ~ a*x
    resid_slope = float(np.polyfit(ln, ys - primary * xs, 1)[0])
    return primary, resid_slope


def test_c11_factor_quasi_round_trend():
    start = time.perf_counter()
    p_factor = problem(20, 5, {1}, {1})
    a1, c1 = _round_trend(
        20, 5, 5, lambda t, st: solve_factor(t, p_factor, 1, 1, stats=st))
    p_quasi = problem(50, 5, {1}, {0, 4})
    a2, c2 = _round_trend(
        50, 5, 50, lambda t, st: solve_quasi(t, p_quasi, 1, 1, stats=st))
    ok = abs(c1) < 0.2 * a1 and abs(c2) < 0.2 * a2
    elapsed = time.perf_counter() - start
    report(11, "factor/quasi base-of-log trend",
           ok and elapsed < 600,
           f"factor ratio {abs(c1) / a1:.3f}, quasi ratio {abs(c2) / a2:.3f}, "
           f"{elapsed:.1f}s")
