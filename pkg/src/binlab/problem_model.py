"""Binary labeling problems: constraint sets, transformations, structure tests.

A problem is (d, delta, W, B): white nodes of degree exactly d must have a
selected-edge count in W, black nodes of degree exactly delta a count in B.
Constraint sets double as bit strings of length degree+1 (bit i = "count i
allowed"), which is the representation the classifier works on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class ProblemError(ValueError):
    pass


def iroot(x, k):
    """Floor of the k-th root of a non-negative integer, exact."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0, k >= 1")
    if x < 2 or k == 1:
        return x
    # Newton iteration on integers, started from a power-of-two overestimate
    r = 1 << (x.bit_length() // k + 1)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def pow_floor(k, e: Fraction):
    """floor(k**e) for integer k >= 0 and rational e >= 0, exact."""
    return iroot(k ** e.numerator, e.denominator)


def pow_ceil(k, e: Fraction):
    """ceil(k**e) for integer k >= 0 and rational e >= 0, exact."""
    p = k ** e.numerator
    r = iroot(p, e.denominator)
    return r if r ** e.denominator == p else r + 1


@dataclass(frozen=True)
class ConstraintSet:
    degree: int
    allowed: frozenset

    def __post_init__(self):
        if self.degree < 0:
            raise ProblemError("degree must be >= 0")
        if any(not (0 <= x <= self.degree) for x in self.allowed):
            raise ProblemError("constraint element out of range")
        object.__setattr__(self, "allowed", frozenset(self.allowed))

    def __contains__(self, x):
        return x in self.allowed

    def __iter__(self):
        return iter(sorted(self.allowed))

    def __bool__(self):
        return bool(self.allowed)

    def mask(self):
        m = 0
        for x in self.allowed:
            m |= 1 << x
        return m


def constraint(degree, allowed):
    return ConstraintSet(degree, frozenset(allowed))


def to_string(cs: ConstraintSet) -> str:
    return "".join("1" if i in cs.allowed else "0" for i in range(cs.degree + 1))


def from_string(s: str) -> ConstraintSet:
    if not s or any(c not in "01" for c in s):
        raise ProblemError(f"not a bit string: {s!r}")
    return constraint(len(s) - 1, {i for i, c in enumerate(s) if c == "1"})


@dataclass(frozen=True)
class Problem:
    d: int
    delta: int
    white: ConstraintSet
    black: ConstraintSet

    def __post_init__(self):
        if self.d < 2 or self.delta < 2:
            raise ProblemError("degrees must be >= 2")
        if self.white.degree != self.d or self.black.degree != self.delta:
            raise ProblemError("constraint degrees must match d and delta")


def problem(d, delta, white, black):
    return Problem(d, delta, constraint(d, white), constraint(delta, black))


@dataclass(frozen=True)
class StructureBudget:
    """Fixed-degree constants for the center-good / edge-good tests."""

    epsilon: Fraction
    cap: int

    def __post_init__(self):
        if not (0 < self.epsilon < 1):
            raise ProblemError("epsilon must be in (0,1)")
        if self.cap < 0:
            raise ProblemError("cap must be >= 0")


DEFAULT_BUDGET = StructureBudget(Fraction(1, 4), 2)


def switch(p: Problem) -> Problem:
    return Problem(p.delta, p.d, p.black, p.white)


def reverse_set(cs: ConstraintSet) -> ConstraintSet:
    return constraint(cs.degree, {cs.degree - x for x in cs.allowed})


def reverse(p: Problem) -> Problem:
    return Problem(p.d, p.delta, reverse_set(p.white), reverse_set(p.black))


def shift(cs: ConstraintSet, k: int) -> ConstraintSet:
    """Shift by k: degree drops by k; x is allowed iff some x+i was, 0<=i<=k."""
    if not (0 <= k <= cs.degree):
        raise ProblemError(f"shift amount {k} out of range for degree {cs.degree}")
    new_deg = cs.degree - k
    allowed = set()
    for x in cs.allowed:
        for i in range(k + 1):
            if 0 <= x - i <= new_deg:
                allowed.add(x - i)
    return constraint(new_deg, allowed)


def is_center_good(cs: ConstraintSet, epsilon) -> bool:
    """True iff some element lies in [k^eps, k^(1-eps)], exact integer bounds."""
    eps = Fraction(epsilon)
    if not (0 < eps < 1):
        raise ProblemError("epsilon must be in (0,1)")
    k = cs.degree
    lo = pow_ceil(k, eps)
    hi = pow_floor(k, 1 - eps)
    return any(lo <= x <= hi for x in cs.allowed)


def is_edge_good(cs: ConstraintSet, cap: int) -> bool:
    """True iff every element is within `cap` of 0 or of the degree."""
    if cap < 0:
        raise ProblemError("cap must be >= 0")
    k = cs.degree
    return all(x <= cap or x >= k - cap for x in cs.allowed)


def longest_zero_run(cs: ConstraintSet) -> int:
    run = best = 0
    for i in range(cs.degree + 1):
        if i in cs.allowed:
            run = 0
        else:
            run += 1
            if run > best:
                best = run
    return best


def max_resiliency(w: ConstraintSet, b: ConstraintSet):
    """Largest (s,t) with no 0-run of length d+1-s in W-hat / delta+1-t in
    B-hat; None when either side comes out below 1."""
    s = w.degree - longest_zero_run(w)
    t = b.degree - longest_zero_run(b)
    if s < 1 or t < 1:
        return None
    return (s, t)


def complete_node(cs: ConstraintSet, fixed_ones: int, free_edges: int):
    """Smallest admissible total count reachable from the partial labeling.

    `fixed_ones` edges are already labeled 1 and `free_edges` are unlabeled;
    returns the target count x (set x - fixed_ones free edges to 1), or None
    if no element of the constraint is reachable.
    """
    if fixed_ones < 0 or free_edges < 0:
        raise ProblemError("counts must be non-negative")
    for x in sorted(cs.allowed):
        if fixed_ones <= x <= fixed_ones + free_edges:
            return x
    return None
