from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superqg.freealg import AlgElement, Alphabet, parse_word
from superqg.pairing import (
    make_sigma_DJ,
    make_sigma_R,
    make_sigma_tilde_R,
    pair,
    pair_words,
    pair_words_naive,
    verify_convolution,
)
from superqg.qfield import ONE, ZERO, Q, parse_qrat, q_pow
from superqg.rmatrix import build_R

from conftest import SMALL_CASES, case_id, datum_of

QM = Q - Q.inverse()


def _specs(case):
    d = datum_of(case)
    b = build_R(d)
    A = Alphabet(d)
    return A, make_sigma_R(b, A), make_sigma_tilde_R(b, A), make_sigma_DJ(d, A)


def _with_inverses(A, letters):
    extra = [A.l_inv(x.kind[1], x.i) for x in letters if x.i == x.j]
    return list(letters) + extra


def _words(draw_letters, max_size):
    return st.lists(st.sampled_from(draw_letters), max_size=max_size).map(tuple)


def P(spec, a, b):
    A = spec.alphabet
    return pair_words(spec, parse_word(A, a), parse_word(A, b))


def test_gl11_frozen_values():
    A, s, t, dj = _specs(("gl", "01", None))
    assert P(s, "l+11", "l-11") == Q.inverse()
    assert P(s, "l+22", "l-22") == Q
    assert P(s, "l+12", "l-21") == -QM
    assert P(s, "l+11^-1", "l-11") == Q
    assert P(t, "l-21", "l+12") == QM
    assert P(dj, "f1", "e1") == QM.inverse()
    assert P(dj, "f1 f1", "e1 e1") == ZERO
    assert P(dj, "K[1,-1]", "K[1,-1]") == ONE


def test_gl2_frozen_values():
    A, s, t, dj = _specs(("gl", "00", None))
    assert P(s, "l+11 l+12", "l-21 l-22") == -QM
    assert P(dj, "f1", "e1") == -QM.inverse()
    assert P(dj, "f1 f1", "e1 e1") == parse_qrat("(q^4 + q^2) / (q^4 - 2*q^2 + 1)")
    assert P(dj, "K[1,-1]", "K[1,-1]") == q_pow(-2)


def test_empty_words_pair_to_one():
    A, s, t, dj = _specs(("gl", "01", None))
    for spec in (s, t, dj):
        assert pair_words(spec, (), ()) == ONE
    assert pair_words(s, (), (A.lm(2, 1),)) == ZERO


@pytest.mark.parametrize("case", SMALL_CASES, ids=case_id)
@given(data=st.data())
def test_nonzero_weight_pairs_vanish(case, data):
    A, s, _, _ = _specs(case)
    a = data.draw(_words(_with_inverses(A, A.plus_letters()), 3))
    b = data.draw(_words(_with_inverses(A, A.minus_letters()), 3))
    if any(x + y for x, y in zip(A.degree(a), A.degree(b))):
        assert pair_words(s, a, b) == ZERO


@pytest.mark.parametrize("case", SMALL_CASES, ids=case_id)
@given(data=st.data())
def test_memoized_matches_naive(case, data):
    A, s, t, _ = _specs(case)
    plus = _with_inverses(A, A.plus_letters())
    minus = _with_inverses(A, A.minus_letters())
    a = data.draw(_words(plus, 3))
    b = data.draw(_words(minus, 3))
    assert pair_words(s, a, b) == pair_words_naive(s, a, b)
    assert pair_words(t, b, a) == pair_words_naive(t, b, a)


@pytest.mark.parametrize("case", SMALL_CASES[:3], ids=case_id)
def test_memoized_matches_naive_exhaustive_length_2(case):
    A, s, _, _ = _specs(case)
    for a in A.words(A.plus_letters(), 2):
        for b in A.words(A.minus_letters(), 2):
            assert pair_words(s, a, b) == pair_words_naive(s, a, b)


@pytest.mark.parametrize("case", SMALL_CASES, ids=case_id)
def test_dj_cartan_multiplicativity(case):
    A, _, _, dj = _specs(case)
    d = A.d
    Ks = [A.K(d.simple_root_vector(i)) for i in range(1, d.rank + 1)]
    for i in range(1, d.rank + 1):
        for k1 in Ks:
            for k2 in Ks:
                lhs = pair_words(dj, (A.f(i), k1), (A.e(i), k2))
                rhs = pair_words(dj, (A.f(i),), (A.e(i),)) * pair_words(dj, (k1,), (k2,))
                assert lhs == rhs


@pytest.mark.parametrize("case", [("gl", "01", None), ("osp", "101", None)], ids=case_id)
def test_convolution_generator_level(case):
    _, s, t, _ = _specs(case)
    rows = verify_convolution(s, t, 1)
    assert all(r["status"] == "pass" for r in rows)


def test_pair_is_bilinear():
    A, s, _, _ = _specs(("gl", "01", None))
    x = AlgElement.word((A.lp(1, 2),)).scale(Q) + AlgElement.word((A.lp(1, 1),))
    y = AlgElement.word((A.lm(2, 1),))
    assert pair(s, x, y) == Q * pair_words(s, (A.lp(1, 2),), (A.lm(2, 1),))


def test_wrong_letter_kinds_raise():
    A, s, t, dj = _specs(("gl", "01", None))
    with pytest.raises(ValueError):
        pair_words(s, (A.lm(2, 1),), (A.lp(1, 2),))
    with pytest.raises(ValueError):
        pair_words(dj, (A.e(1),), (A.f(1),))
