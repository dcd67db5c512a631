from fractions import Fraction

import pytest

from binlab.lang_families import (
    CASE_CENTER,
    CASE_EDGE,
    PairedLoop,
    ThinnessError,
    aux_constants,
    check_aux_claim,
    check_thin,
    family_case,
    family_grammar,
    family_loops,
    family_table,
    loop_from_string,
    loop_to_string,
    parse_grammar,
    set_at_degree,
    structural_simplicity,
    word_at_length,
)
from binlab.problem_model import DEFAULT_BUDGET, constraint

LOOP_01P0 = PairedLoop(u="01", v="1", y="0")    # {010, 0110, 01110, ...}
LOOP_010P = PairedLoop(u="01", v="0", y="0")    # {010, 0100, 01000, ...}


def test_loop_words():
    assert LOOP_01P0.word_at_length(5) == "01110"
    assert LOOP_01P0.word_at_length(2) is None
    assert LOOP_010P.word_at_length(4) == "0100"
    fam = family_loops([LOOP_01P0])
    assert word_at_length(fam, 5) == "01110"
    assert word_at_length(fam, 2) is None


def test_loop_serialization_roundtrip():
    for lp in (LOOP_01P0, LOOP_010P, PairedLoop(v="10", x="0")):
        assert loop_from_string(loop_to_string(lp)) == lp
    with pytest.raises(ValueError):
        loop_from_string("0:1:0")
    with pytest.raises(ValueError):
        PairedLoop(u="02")


def test_set_at_degree():
    fam = family_loops([LOOP_01P0])
    assert set_at_degree(fam, 4) == constraint(4, {1, 2, 3})
    # sinkless-orientation-style string 1110 at degree 3
    tab = family_table({3: constraint(3, {0, 1, 2})})
    assert set_at_degree(tab, 3) == constraint(3, {0, 1, 2})
    for k in range(2, 200):
        assert set_at_degree(fam, k) == constraint(k, set(range(1, k)))


def test_thinness():
    ok = family_loops([LOOP_01P0])
    assert check_thin(ok, 64) is None
    # same language written twice stays thin
    dup = family_loops([LOOP_010P, PairedLoop(u="010", v="0")])
    assert check_thin(dup, 64) is None
    bad = family_loops([PairedLoop(v="1"), PairedLoop(x="1", y="0")])
    hit = check_thin(bad, 16)
    assert hit is not None and hit[1] != hit[2]
    with pytest.raises(ThinnessError):
        word_at_length(bad, 3)


def test_aux_constants_cases():
    # all-zero repetition: only edge 1s possible
    a = aux_constants(LOOP_010P)
    assert a.case == CASE_EDGE
    # both loops pumping: center case with the alpha formula
    b = aux_constants(PairedLoop(v="10", x="0"))
    assert b.case == CASE_CENTER
    assert b.alpha == Fraction(1, 3)
    assert b.shiftB == 1
    # one empty side with a 1 in the repeating part
    c = aux_constants(PairedLoop(u="0", v="1", y="0"))
    assert c.case == CASE_CENTER
    assert c.alpha == Fraction(1, 2)
    assert c.shiftB == 3
    # all-zero pumping, 1 only in the fixed part
    d = aux_constants(PairedLoop(u="01", v="0", x="", y=""))
    assert d.case == CASE_EDGE
    assert d.capC == 2
    # non-zero w forces the |v|,|x| >= 1 analysis path
    e = aux_constants(PairedLoop(v="0", w="1", x="0"))
    assert e.case == CASE_CENTER
    assert e.alpha == Fraction(1, 2)


def test_aux_claims_verified_by_enumeration():
    corpus = [
        LOOP_01P0,
        LOOP_010P,
        PairedLoop(v="10", x="0"),
        PairedLoop(u="11", v="1", y="0"),
        PairedLoop(u="0", v="01", w="1", x="10", y="0"),
        PairedLoop(u="1", v="0", x="0", y="1"),
        PairedLoop(u="00", v="0", y="100"),
    ]
    for lp in corpus:
        assert check_aux_claim(lp, span=200) is None, loop_to_string(lp)


def test_family_case_per_degree():
    fam = family_loops([LOOP_01P0, LOOP_010P])
    # both loops generate every length >= 3; center-case loop wins
    assert family_case(fam, 5) == CASE_CENTER
    only_edge = family_loops([LOOP_010P])
    assert family_case(only_edge, 5) == CASE_EDGE
    assert family_case(only_edge, 1) is None


def test_structural_simplicity_loops():
    rep = structural_simplicity(family_loops([LOOP_01P0]), 256)
    assert rep.simple
    assert rep.epsilon >= Fraction(1, 4)
    rep = structural_simplicity(family_loops([LOOP_010P]), 256)
    assert rep.simple
    assert rep.capC >= 1


def test_structural_simplicity_table_families():
    from binlab.problem_model import iroot

    center = family_table(lambda k: constraint(k, {max(1, iroot(k, 2))}))
    assert structural_simplicity(center, 64, DEFAULT_BUDGET).simple
    # floor(log2 k): eventually below k^epsilon for every fixed epsilon
    logfam = family_table(
        lambda k: constraint(k, {max(1, k.bit_length() - 1)}))
    rep = structural_simplicity(logfam, 70000, DEFAULT_BUDGET)
    assert not rep.simple
    assert rep.failure[0] > 256


def test_grammar_enumeration():
    g = parse_grammar("S -> 0 T 0\nT -> 1\nT -> 1 T\n")
    assert g.words_of_length(4) == {"0110"}
    assert g.words_of_length(2) == set()
    fam = family_grammar(g)
    assert word_at_length(fam, 5) == "01110"
    assert set_at_degree(fam, 6) == constraint(6, {1, 2, 3, 4, 5})
    rep = structural_simplicity(fam, 40, DEFAULT_BUDGET)
    assert rep.simple


def test_grammar_epsilon_and_errors():
    g = parse_grammar("S -> -\nS -> 0 S\n")
    assert g.words_of_length(0) == {""}
    assert g.words_of_length(3) == {"000"}
    with pytest.raises(ValueError):
        parse_grammar("S => 0\n")
    with pytest.raises(ValueError):
        parse_grammar("S -> 0 U\n")
    with pytest.raises(ValueError):
        g.words_of_length(10**6)
