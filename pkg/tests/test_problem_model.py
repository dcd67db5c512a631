from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binlab.problem_model import (
    ProblemError,
    complete_node,
    constraint,
    from_string,
    iroot,
    is_center_good,
    is_edge_good,
    longest_zero_run,
    max_resiliency,
    pow_ceil,
    pow_floor,
    problem,
    reverse,
    reverse_set,
    shift,
    switch,
    to_string,
)


def cs(degree, *xs):
    return constraint(degree, set(xs))


# exact integer powers

@given(st.integers(0, 10**12), st.integers(1, 7))
def test_iroot_exact(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


@given(st.integers(2, 10**6),
       st.fractions(min_value=Fraction(1, 16), max_value=Fraction(15, 16),
                    max_denominator=16))
def test_pow_bounds_bracket_real_power(k, e):
    lo, hi = pow_ceil(k, e), pow_floor(k, e)
    # floor <= k^e <= ceil, checked without floats
    assert hi ** e.denominator <= k ** e.numerator
    assert lo ** e.denominator >= k ** e.numerator
    assert lo - hi in (0, 1)


# string representation

def test_string_roundtrip():
    c = cs(5, 0, 2, 5)
    assert to_string(c) == "101001"
    assert from_string("101001") == c


@given(st.integers(2, 12), st.sets(st.integers(0, 12)))
def test_roundtrip_random(degree, xs):
    xs = {x for x in xs if x <= degree}
    c = constraint(degree, xs)
    assert from_string(to_string(c)) == c


def test_bad_inputs():
    with pytest.raises(ProblemError):
        constraint(3, {4})
    with pytest.raises(ProblemError):
        from_string("01x")
    with pytest.raises(ProblemError):
        problem(1, 3, {0}, {0})


# transformations

def test_switch_and_reverse_are_involutions():
    p = problem(4, 3, {1, 4}, {0, 2})
    assert switch(switch(p)) == p
    assert reverse(reverse(p)) == p
    assert switch(p).white == p.black


@given(st.integers(2, 15), st.sets(st.integers(0, 15), min_size=1))
def test_reverse_set_involution(degree, xs):
    xs = {x for x in xs if x <= degree}
    if not xs:
        xs = {0}
    c = constraint(degree, xs)
    assert reverse_set(reverse_set(c)) == c


def test_shift_definition_small():
    c = cs(6, 2, 6)
    assert sorted(shift(c, 2).allowed) == [0, 1, 2, 4]


@given(st.integers(2, 15), st.sets(st.integers(0, 15), min_size=1),
       st.integers(0, 15))
def test_shift_matches_set_definition(degree, xs, k):
    xs = {x for x in xs if x <= degree}
    if not xs or k > degree:
        return
    c = constraint(degree, xs)
    got = shift(c, k)
    want = {x - i for x in xs for i in range(k + 1)} & set(range(degree - k + 1))
    assert got.allowed == frozenset(want)
    assert got.degree == degree - k


def test_shift_out_of_range():
    with pytest.raises(ProblemError):
        shift(cs(4, 2), 5)


# structure tests

def test_center_good_exact_bounds():
    # degree 16, eps=1/4: window is [2, 8]
    assert is_center_good(cs(16, 2), Fraction(1, 4))
    assert is_center_good(cs(16, 8), Fraction(1, 4))
    assert not is_center_good(cs(16, 1), Fraction(1, 4))
    assert not is_center_good(cs(16, 9), Fraction(1, 4))


def test_edge_good():
    assert is_edge_good(cs(10, 0, 2, 9), 2)
    assert not is_edge_good(cs(10, 5), 2)
    assert is_edge_good(cs(10), 0)  # vacuous


def test_longest_zero_run_and_resiliency():
    assert longest_zero_run(from_string("0100110")) == 2
    assert longest_zero_run(from_string("0000")) == 4
    assert max_resiliency(from_string("01110"), from_string("0110")) == (3, 2)
    assert max_resiliency(from_string("0001"), from_string("010")) is None


def test_complete_node():
    c = cs(6, 2, 5)
    assert complete_node(c, 0, 6) == 2
    assert complete_node(c, 3, 3) == 5
    assert complete_node(c, 6, 0) is None
    assert complete_node(cs(4), 0, 4) is None


@settings(max_examples=200)
@given(st.integers(2, 10), st.sets(st.integers(0, 10), min_size=1),
       st.integers(0, 10), st.integers(0, 10))
def test_complete_node_reachable(degree, xs, ones, free):
    xs = {x for x in xs if x <= degree}
    if not xs:
        return
    c = constraint(degree, xs)
    x = complete_node(c, ones, free)
    if x is None:
        assert all(not (ones <= y <= ones + free) for y in xs)
    else:
        assert x in xs and ones <= x <= ones + free
