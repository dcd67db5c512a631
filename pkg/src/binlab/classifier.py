"""Complexity classification of binary labeling problem families.

Two levels: the broad class (unsolvable / constant / log / linear) decided
by matching the constraint strings against a fixed pattern table, and the
fine-grained logarithmic class (log_d / log_delta / log_n) decided by a
flowchart over edge-goodness and the shapes of the two strings.

The pattern table is data, not code: rows are written in a small pattern
language (literal bits, `*` for a single wildcard bit, `T^+` for one or
more repetitions of the preceding token, plus the specials `any` and
`nonempty`).  The table is stored up to symmetry; inputs are matched under
all four combinations of the switch and reverse transformations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import lang_families as lf
from .problem_model import (
    DEFAULT_BUDGET,
    ProblemError,
    is_edge_good,
    max_resiliency,
    to_string,
)

UNSOLVABLE = "unsolvable"
CONSTANT = "constant"
LOG = "log"
LINEAR = "linear"

LOG_D = "log_d"
LOG_DELTA = "log_delta"
LOG_N = "log_n"


class ClassifierError(ProblemError):
    pass


def _pattern_regex(pat):
    if pat == "any":
        return re.compile(r"^[01]+$")
    if pat == "nonempty":
        # the set is nonempty: at least one 1 somewhere
        return re.compile(r"^[01]*1[01]*$")
    out = []
    for c in pat:
        if c == "*":
            out.append("[01]")
        elif c in "01":
            out.append(c)
        elif c == "+":
            out.append("+")
        else:
            raise ClassifierError(f"bad pattern char {c!r} in {pat!r}")
    return re.compile("^" + "".join(out) + "$")


def _rows(pairs):
    return tuple((_pattern_regex(w), _pattern_regex(b)) for (w, b) in pairs)


# canonical half of the table; switch and reverse variants of the input
# are matched against these rows
_UNSOLVABLE_ROWS = _rows([
    ("000+", "any"),
    ("100+", "0**+"),
])
_CONSTANT_ROWS = _rows([
    ("111+", "nonempty"),
    ("1**+", "1**+"),
])
# second row frozen with the low-degree side at length exactly 3: the
# one-or-more linear pattern with unrestricted length also swallows
# families that the fine-grained flowchart places in the log region
_LINEAR_ROWS = _rows([
    ("10+1", "010"),
    ("*10+", "01*"),
])


def _variants(w, b):
    rw, rb = w[::-1], b[::-1]
    return [(w, b), (rw, rb), (b, w), (rb, rw)]


def _match_rows(rows, w, b):
    return any(
        rw.match(vw) and rb.match(vb)
        for (vw, vb) in _variants(w, b)
        for (rw, rb) in rows
    )


def classify_broad(w, b):
    """Broad class from the two constraint strings (lengths d+1, delta+1)."""
    for s in (w, b):
        if len(s) < 3 or any(c not in "01" for c in s):
            raise ClassifierError(f"bad constraint string {s!r}")
    if _match_rows(_UNSOLVABLE_ROWS, w, b):
        return UNSOLVABLE
    if _match_rows(_CONSTANT_ROWS, w, b):
        return CONSTANT
    if _match_rows(_LINEAR_ROWS, w, b):
        return LINEAR
    return LOG


@dataclass
class Classification:
    broad: str
    fine: str = None
    path: list = field(default_factory=list)
    warning: str = None


def _edge_good_side(cs, cap, family=None):
    """Edge-goodness of one side.  With a loop family, the per-degree case
    designation decides; the literal cap test only applies to bare sets."""
    if family is not None and family.kind == "loops":
        return lf.family_case(family, cs.degree) == lf.CASE_EDGE
    return is_edge_good(cs, cap)


def classify_fine(prob, budget=None, white_family=None, black_family=None,
                  white_cap=None, black_cap=None):
    """Fine-grained class of a log-class problem via the decision flowchart.

    Roles are normalized to d >= delta by switching first; log_d / log_delta
    in the result always name the original problem's sides.
    """
    w_str, b_str = to_string(prob.white), to_string(prob.black)
    broad = classify_broad(w_str, b_str)
    if broad != LOG:
        raise ClassifierError(f"fine class undefined for broad class {broad}")
    budget = budget or DEFAULT_BUDGET

    swapped = prob.delta > prob.d
    if swapped:
        hi, lo = prob.black, prob.white
        hi_fam, lo_fam = black_family, white_family
        hi_cap, lo_cap = black_cap, white_cap
    else:
        hi, lo = prob.white, prob.black
        hi_fam, lo_fam = white_family, black_family
        hi_cap, lo_cap = white_cap, black_cap
    hi_cap = hi_cap if hi_cap is not None else budget.cap
    lo_cap = lo_cap if lo_cap is not None else budget.cap

    def unswap(cls):
        if not swapped or cls == LOG_N:
            return cls
        return LOG_DELTA if cls == LOG_D else LOG_D

    path = []
    res = Classification(broad=LOG, path=path)

    if not _edge_good_side(hi, hi_cap, hi_fam):
        path.append("high-degree constraint not edge-good")
        res.fine = unswap(LOG_D)
        return res
    path.append("high-degree constraint edge-good")

    lo_str = to_string(lo)
    if not (lo_str[0] == "0" and lo_str[-1] == "0"):
        path.append("low-degree string not of shape 0b'0")
        res.fine = unswap(LOG_D)
        hs = to_string(hi)
        if (re.match(r"^0+1+$", hs) and re.match(r"^1+0+$", lo_str)) or (
            re.match(r"^1+0+$", hs) and re.match(r"^0+1+$", lo_str)
        ):
            res.warning = (
                "one-sided staircase shapes admit a known log-round lower "
                "bound; the flowchart still routes them to log_d"
            )
        return res
    path.append("low-degree string of shape 0b'0")

    if not _edge_good_side(lo, lo_cap, lo_fam):
        path.append("low-degree constraint not edge-good")
        res.fine = unswap(LOG_DELTA)
        return res
    path.append("low-degree constraint edge-good")

    d_hi, d_lo = hi.degree, lo.degree
    right_hi = hi.allowed and min(hi.allowed) >= d_hi + 1 - hi_cap
    left_hi = hi.allowed and max(hi.allowed) <= hi_cap - 1
    right_lo = lo.allowed and min(lo.allowed) >= d_lo + 1 - lo_cap
    left_lo = lo.allowed and max(lo.allowed) <= lo_cap - 1
    if (right_hi and left_lo) or (left_hi and right_lo):
        path.append("opposed-edge final test holds")
        res.fine = LOG_N
    else:
        path.append("opposed-edge final test fails")
        res.fine = unswap(LOG_DELTA)
    return res


def classify_family(white_family, black_family, d, delta, probe=256):
    """Classify a family pair at concrete degrees.

    Establishes structural simplicity for both sides first, then runs the
    broad and (when log) fine classification with family-derived constants.
    """
    from .problem_model import Problem

    w_rep = lf.structural_simplicity(white_family, probe, DEFAULT_BUDGET)
    b_rep = lf.structural_simplicity(black_family, probe, DEFAULT_BUDGET)
    if not w_rep.simple or not b_rep.simple:
        bad = w_rep if not w_rep.simple else b_rep
        raise ClassifierError(f"family not structurally simple: {bad.failure}")
    w_cs = lf.set_at_degree(white_family, d)
    b_cs = lf.set_at_degree(black_family, delta)
    prob = Problem(d, delta, w_cs, b_cs)
    broad = classify_broad(to_string(w_cs), to_string(b_cs))
    if broad != LOG:
        return Classification(broad=broad)
    return classify_fine(
        prob,
        white_family=white_family,
        black_family=black_family,
        white_cap=w_rep.capC,
        black_cap=b_rep.capC,
    )


@dataclass(frozen=True)
class Strategy:
    name: str   # constant | resilient | factor | quasi | linear | oracle-fallback
    params: tuple = ()
    transforms: tuple = ()  # applied to the problem before the base solver
    note: str = ""


def _constant_form(prob):
    """Transform chain under which the constant-class solver applies."""
    from .problem_model import reverse, switch

    chains = [((), prob), (("reverse",), None), (("switch",), None),
              (("switch", "reverse"), None)]
    for chain, _ in chains:
        q = prob
        for t in chain:
            q = switch(q) if t == "switch" else reverse(q)
        if 0 in q.white and 0 in q.black:
            return Strategy("constant", params=("zeros",), transforms=chain)
        if len(q.white.allowed) == q.d + 1 and q.black:
            return Strategy("constant", params=("ones",), transforms=chain)
    return None


def _log_candidates(prob, budget=None):
    """All applicable log-class strategies as (base, priority, Strategy)."""
    from .problem_model import reverse, switch

    budget = budget or DEFAULT_BUDGET
    cap = max(budget.cap, 1)
    candidates = []

    # bases below 2 give no logarithmic guarantee (DEG shrinkage needs
    # s,t >= 2; a base-1 log is no better than the generic fallback)
    rt = max_resiliency(prob.white, prob.black)
    if rt is not None:
        s, t = rt
        if 2 <= s < prob.d and 2 <= t < prob.delta:
            candidates.append((max(s, t), 3,
                               Strategy("resilient", params=(s, t))))

    for chain in ((), ("reverse",)):
        q = reverse(prob) if chain else prob
        ks = [k for k in q.white.allowed if 1 <= k <= cap and q.d - k >= 1]
        ls = [l for l in q.black.allowed if 1 <= l <= cap and q.delta - l >= 1]
        if ks and ls:
            k, l = min(ks), min(ls)
            base = min(q.d - k, q.delta - l)
            if base >= 2:
                candidates.append((base, 2,
                                   Strategy("factor", params=(k, l),
                                            transforms=chain)))

    for chain in ((), ("reverse",), ("switch",), ("switch", "reverse")):
        q = prob
        for t in chain:
            q = switch(q) if t == "switch" else reverse(q)
        if 0 not in q.black:
            continue
        ks = [k for k in q.white.allowed if 1 <= k <= cap and q.d - k >= 2]
        es = [e for e in q.black.allowed if e != 0]
        if ks and es:
            k = min(ks)
            l = min(q.delta - e for e in es)
            if l >= 0:
                candidates.append((q.d - k, 1,
                                   Strategy("quasi", params=(k, l),
                                            transforms=chain)))
    return candidates


def select_solver(prob, cls, budget=None):
    """Pick the solver family achieving the largest base of logarithm.

    Candidates score by their log base: resilient max(s,t), factor
    min(d-k, delta-l), quasi d'-k; the highest base wins, ties broken
    resilient > factor > quasi.  No candidate means oracle-fallback.
    """
    if cls.broad == UNSOLVABLE:
        return Strategy("unsolvable")
    if cls.broad == CONSTANT:
        st = _constant_form(prob)
        return st if st else Strategy("oracle-fallback",
                                      note="constant form not matched")
    if cls.broad == LINEAR:
        return Strategy("linear")

    candidates = _log_candidates(prob, budget)
    if not candidates:
        note = "log_n-class problem: no specialized solver" \
            if cls.fine == LOG_N else ""
        return Strategy("oracle-fallback", note=note)
    candidates.sort(key=lambda c: (c[0], c[1]), reverse=True)
    return candidates[0][2]


def force_strategy(prob, name, budget=None):
    """Best applicable strategy of one named family, or None.

    `name` is one of constant, resilient, factor, quasi, linear, oracle.
    """
    if name == "oracle":
        return Strategy("oracle-fallback")
    if name == "linear":
        return Strategy("linear")
    if name == "constant":
        return _constant_form(prob)
    hits = [c for c in _log_candidates(prob, budget) if c[2].name == name]
    if not hits:
        return None
    hits.sort(key=lambda c: (c[0], c[1]), reverse=True)
    return hits[0][2]
