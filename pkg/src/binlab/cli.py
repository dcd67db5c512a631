"""Command line workbench: generate trees, classify and solve problems,
verify solutions, analyze constraint families, and run scaling benchmarks.

Exit codes: 0 ok, 1 infeasible/unsolvable, 2 invalid input, 3 internal
invariant violation.  Every path that writes a solution re-verifies it
before exiting.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import classifier, lang_families as lf, oracle, solvers
from .problem_model import (
    DEFAULT_BUDGET,
    Problem,
    ProblemError,
    StructureBudget,
    constraint,
    from_string,
)
from .tree_core import TreeError, generate, read_tree, write_tree

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3

PROBLEM_MAGIC = "binlab-problem v1"


@dataclass
class ProblemSpec:
    """Parsed problem file: degrees plus one constraint family per color."""

    d: int
    delta: int
    white: lf.LanguageFamily
    black: lf.LanguageFamily

    def problem(self, d=None, delta=None):
        d = self.d if d is None else d
        delta = self.delta if delta is None else delta
        return Problem(
            d, delta,
            lf.set_at_degree(self.white, d),
            lf.set_at_degree(self.black, delta),
        )


def _parse_side(form, payload, degree, base_dir):
    if form == "set":
        if payload.strip() == "-":
            vals = set()
        else:
            vals = {int(x) for x in payload.split(",") if x.strip() != ""}
        return lf.family_table({degree: constraint(degree, vals)})
    if form == "string":
        cs = from_string(payload)
        if cs.degree != degree:
            raise ProblemError(
                f"string length {len(payload)} does not match degree {degree}")
        return lf.family_table({degree: cs})
    if form == "loops":
        loops = [lf.loop_from_string(t) for t in payload.split(";") if t]
        if not loops:
            raise ProblemError("empty loop list")
        return lf.family_loops(loops)
    if form == "grammar":
        path = os.path.join(base_dir, payload)
        with open(path) as fh:
            return lf.family_grammar(lf.parse_grammar(fh.read()))
    raise ProblemError(f"unknown constraint source {form!r}")


def parse_problem(text, base_dir="."):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != PROBLEM_MAGIC:
        raise ProblemError(f"problem file must start with {PROBLEM_MAGIC!r}")
    fields = {}
    for ln in lines[1:]:
        parts = ln.split(None, 1)
        if len(parts) != 2 or parts[0] in fields:
            raise ProblemError(f"bad or duplicate problem line {ln!r}")
        fields[parts[0]] = parts[1]
    for key in ("d", "delta", "white", "black"):
        if key not in fields:
            raise ProblemError(f"problem file missing {key!r} line")
    d = int(fields["d"])
    delta = int(fields["delta"])
    sides = {}
    for key, degree in (("white", d), ("black", delta)):
        parts = fields[key].split(None, 1)
        if len(parts) != 2:
            raise ProblemError(f"bad {key} line {fields[key]!r}")
        sides[key] = _parse_side(parts[0], parts[1], degree, base_dir)
    return ProblemSpec(d=d, delta=delta, white=sides["white"],
                       black=sides["black"])


def read_problem_file(path):
    with open(path) as fh:
        return parse_problem(fh.read(), base_dir=os.path.dirname(path) or ".")


def _read_tree_file(path):
    with open(path) as fh:
        return read_tree(fh.read())


def cmd_gen(args):
    params = {}
    if args.kind == "regular":
        params = {"deg_white": args.deg_white, "deg_black": args.deg_black}
    tree = generate(args.kind, args.n, seed=args.seed, **params)
    with open(args.output, "w") as fh:
        fh.write(write_tree(tree))
    print(f"wrote {args.kind} tree with {tree.n} nodes to {args.output}")
    return EXIT_OK


def _budget_from_args(args):
    if args.epsilon is None and args.cap is None:
        return DEFAULT_BUDGET
    eps = Fraction(args.epsilon) if args.epsilon else DEFAULT_BUDGET.epsilon
    cap = args.cap if args.cap is not None else DEFAULT_BUDGET.cap
    return StructureBudget(eps, cap)


def cmd_classify(args):
    spec = read_problem_file(args.problem)
    d = args.d if args.d is not None else spec.d
    delta = args.delta if args.delta is not None else spec.delta
    budget = _budget_from_args(args)
    prob = spec.problem(d, delta)
    from .problem_model import to_string

    broad = classifier.classify_broad(to_string(prob.white),
                                      to_string(prob.black))
    print(f"broad {broad}")
    if broad == classifier.UNSOLVABLE:
        return EXIT_INFEASIBLE
    if broad == classifier.LOG:
        wf = spec.white if spec.white.kind == "loops" else None
        bf = spec.black if spec.black.kind == "loops" else None
        cls = classifier.classify_fine(prob, budget=budget,
                                       white_family=wf, black_family=bf)
        print(f"fine {cls.fine}")
        for step in cls.path:
            print(f"path {step}")
        if cls.warning:
            print(f"warning {cls.warning}")
    return EXIT_OK


def _forced_solve(tree, prob, name, stats):
    if name == "oracle":
        if stats is not None:
            stats["layer_count"] = 0
            stats["rounds_estimate"] = 0
        return oracle.solve(tree, prob)
    strat = classifier.force_strategy(prob, name)
    if strat is None:
        raise ProblemError(f"solver {name!r} not applicable to this problem")
    return solvers._run_strategy(tree, prob, strat, stats=stats)


def cmd_solve(args):
    spec = read_problem_file(args.problem)
    tree = _read_tree_file(args.tree)
    prob = spec.problem()
    stats = {}
    if args.solver == "auto":
        res = solvers.solve_auto(tree, prob, stats=stats)
        if res.solution is None:
            print(f"infeasible: {res.note}")
            return EXIT_INFEASIBLE
        sol = res.solution
        tag = res.strategy.name + (" (oracle fallback)" if res.fallback else "")
    else:
        try:
            sol = _forced_solve(tree, prob, args.solver, stats)
        except oracle.InfeasibleError as exc:
            print(f"infeasible: {exc}")
            return EXIT_INFEASIBLE
        tag = args.solver
    bad = oracle.verify(tree, prob, sol)
    if bad:
        print(f"internal error: labeling invalid at nodes {bad[:5]}",
              file=sys.stderr)
        return EXIT_INTERNAL
    with open(args.output, "w") as fh:
        fh.write(oracle.write_solution(sol))
    print(f"solved with {tag}: {len(sol)} selected edges -> {args.output}")
    return EXIT_OK


def cmd_verify(args):
    spec = read_problem_file(args.problem)
    tree = _read_tree_file(args.tree)
    prob = spec.problem()
    with open(args.solution) as fh:
        sol = oracle.read_solution(fh.read())
    bad = oracle.verify(tree, prob, sol)
    if bad:
        print("violations at nodes: " + " ".join(str(v) for v in bad))
        return EXIT_INFEASIBLE
    print("ok")
    return EXIT_OK


def cmd_lang(args):
    spec = read_problem_file(args.problem)
    all_simple = True
    for side, fam in (("white", spec.white), ("black", spec.black)):
        rep = lf.structural_simplicity(fam, args.probe, DEFAULT_BUDGET)
        if rep.simple:
            eps = rep.epsilon if rep.epsilon is not None else "-"
            print(f"{side} simple epsilon={eps} C={rep.capC} N={rep.minN}")
        else:
            all_simple = False
            k, why = rep.failure
            print(f"{side} not-simple degree={k} reason={why}")
    return EXIT_OK if all_simple else EXIT_INFEASIBLE


_BENCH_FAMILIES = {
    "matching": lambda d, delta: Problem(
        d, delta, constraint(d, {1}), constraint(delta, {1})),
    "splitting": lambda d, delta: Problem(
        d, delta, constraint(d, range(1, d)), constraint(delta, range(1, delta))),
    "quasi": lambda d, delta: Problem(
        d, delta, constraint(d, {1}), constraint(delta, {0, delta - 1})),
}


def _parse_degree_token(tok):
    if ":" in tok:
        a, b = tok.split(":", 1)
        return int(a), int(b)
    v = int(tok)
    return v, v


def _bench_cell(family, solver, size, d, delta, seed):
    prob = _BENCH_FAMILIES[family](d, delta)
    tree = generate("regular", size, seed=seed, deg_white=d, deg_black=delta)
    stats = {}
    start = time.perf_counter()
    if solver == "auto":
        res = solvers.solve_auto(tree, prob, stats=stats)
        sol = res.solution
    else:
        sol = _forced_solve(tree, prob, solver, stats)
    wall_ms = (time.perf_counter() - start) * 1000.0
    valid = sol is not None and not oracle.verify(tree, prob, sol)
    return {
        "family": family,
        "solver": solver,
        "n": tree.n,
        "d": d,
        "delta": delta,
        "seed": seed,
        "layers": stats.get("layer_count", 0),
        "rounds": stats.get("rounds_estimate", 0),
        "wall_ms": f"{wall_ms:.3f}",
        "valid": "true" if valid else "false",
    }


CSV_FIELDS = ["family", "solver", "n", "d", "delta", "seed",
              "layers", "rounds", "wall_ms", "valid"]


def cmd_bench(args):
    if args.family not in _BENCH_FAMILIES:
        raise ProblemError(f"unknown bench family {args.family!r}")
    sizes = [int(x) for x in args.sizes.split(",")]
    if sizes != sorted(sizes):
        raise ProblemError("sizes must be ascending")
    degrees = [_parse_degree_token(t) for t in args.degrees.split(",")]
    if args.seeds < 1:
        raise ProblemError("seeds must be >= 1")
    cells = sorted(
        (size, d, delta, seed)
        for size in sizes
        for (d, delta) in degrees
        for seed in range(args.seeds)
    )
    rows = []
    for (size, d, delta, seed) in cells:
        row = _bench_cell(args.family, args.solver, size, d, delta, seed)
        if row["valid"] != "true":
            print(f"internal error: invalid labeling in cell "
                  f"n={size} d={d} delta={delta} seed={seed}", file=sys.stderr)
            return EXIT_INTERNAL
        rows.append(row)
    with open(args.csv, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="binlab",
        description="binary labeling problems on 2-colored trees",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a tree file")
    g.add_argument("--kind", required=True,
                   choices=["path", "star", "regular", "random", "caterpillar"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--deg-white", type=int, default=3)
    g.add_argument("--deg-black", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("classify", help="broad and fine complexity class")
    c.add_argument("--problem", required=True)
    c.add_argument("--d", type=int)
    c.add_argument("--delta", type=int)
    c.add_argument("--epsilon", help="rational p/q center-goodness budget")
    c.add_argument("--cap", type=int, help="edge-goodness cap")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", help="solve an instance and write a solution")
    s.add_argument("--problem", required=True)
    s.add_argument("--tree", required=True)
    s.add_argument("--solver", default="auto",
                   choices=["auto", "constant", "resilient", "factor",
                            "quasi", "linear", "oracle"])
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("--problem", required=True)
    v.add_argument("--tree", required=True)
    v.add_argument("--solution", required=True)
    v.set_defaults(func=cmd_verify)

    lang = sub.add_parser("lang", help="constraint-language analysis")
    lsub = lang.add_subparsers(dest="lang_cmd", required=True)
    la = lsub.add_parser("analyze", help="structural-simplicity constants")
    la.add_argument("--problem", required=True)
    la.add_argument("--probe", type=int, default=256)
    la.set_defaults(func=cmd_lang)

    b = sub.add_parser("bench", help="scaling benchmark, CSV output")
    b.add_argument("--family", required=True)
    b.add_argument("--solver", default="auto")
    b.add_argument("--sizes", required=True, help="ascending comma list")
    b.add_argument("--degrees", required=True,
                   help="comma list of D or D:DELTA tokens")
    b.add_argument("--seeds", type=int, default=1)
    b.add_argument("--csv", required=True)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except oracle.InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (TreeError, ProblemError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
