from __future__ import annotations

from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superqg.freealg import AlgElement, Alphabet, parse_word
from superqg.qfield import ONE, ZERO, Q
from superqg.rootdata import wadd

from conftest import SMALL_CASES, case_id, datum_of


def _letters(A: Alphabet):
    d = A.d
    out = list(A.plus_letters()) + list(A.minus_letters())
    out += [A.l_inv(s, k) for s in "+-" for k in range(1, d.N + 1)]
    for i in range(1, d.rank + 1):
        out += [A.e(i), A.f(i), A.K(d.simple_root_vector(i))]
    return out


def _alphabet(case):
    return Alphabet(datum_of(case))


def _accumulate(pairs):
    acc = defaultdict(lambda: ZERO)
    for key, c in pairs:
        acc[key] = acc[key] + c
    return {k: v for k, v in acc.items() if not v.is_zero()}


def _counit_left(A, w):
    return _accumulate((w2, c) for (w1, w2), c in A.word_coproduct(w) if A.word_counit(w1))


def _counit_right(A, w):
    return _accumulate((w1, c) for (w1, w2), c in A.word_coproduct(w) if A.word_counit(w2))


def _coassoc(A, w):
    left = _accumulate(
        ((a, b, w2), c * c2) for (w1, w2), c in A.word_coproduct(w) for (a, b), c2 in A.word_coproduct(w1)
    )
    right = _accumulate(
        ((w1, a, b), c * c2) for (w1, w2), c in A.word_coproduct(w) for (a, b), c2 in A.word_coproduct(w2)
    )
    return left, right


@pytest.mark.parametrize("case", SMALL_CASES, ids=case_id)
@given(data=st.data())
def test_counit_axiom_up_to_length_4(case, data):
    A = _alphabet(case)
    letters = _letters(A)
    w = tuple(data.draw(st.lists(st.sampled_from(letters), max_size=4)))
    assert _counit_left(A, w) == {w: ONE}
    assert _counit_right(A, w) == {w: ONE}


def test_counit_exhaustive_gl11():
    A = _alphabet(("gl", "01", None))
    for w in A.words(_letters(A), 3):
        assert _counit_left(A, w) == {w: ONE}
        assert _counit_right(A, w) == {w: ONE}


@pytest.mark.parametrize("case", SMALL_CASES[:3], ids=case_id)
def test_coassociativity_exhaustive_length_3(case):
    A = _alphabet(case)
    letters = [x for x in _letters(A) if not x.inv][:8]
    for w in A.words(letters, 3):
        left, right = _coassoc(A, w)
        assert left == right, w


@pytest.mark.parametrize("case", SMALL_CASES, ids=case_id)
@given(data=st.data())
def test_coproduct_preserves_degree(case, data):
    A = _alphabet(case)
    w = tuple(data.draw(st.lists(st.sampled_from(_letters(A)), max_size=4)))
    deg, par = A.degree(w), Alphabet.parity(w)
    for (w1, w2), _ in A.word_coproduct(w):
        assert wadd(A.degree(w1), A.degree(w2)) == deg
        assert (Alphabet.parity(w1) + Alphabet.parity(w2)) % 2 == par


def test_grouplike_letters_are_even_and_degree_zero():
    A = _alphabet(("osp", "0110", None))
    for x in _letters(A):
        if x.grouplike:
            assert x.par == 0 and not any(x.deg)


def test_inverse_only_for_diagonal_letters():
    A = _alphabet(("gl", "011", None))
    with pytest.raises(ValueError):
        parse_word(A, "l+12^-1")
    with pytest.raises(ValueError):
        A.lp(2, 1)
    assert A.inverse_letter(A.l_inv("+", 2)) == A.lp(2, 2)


def test_counit_values():
    A = _alphabet(("gl", "01", None))
    assert A.word_counit(parse_word(A, "K[1,-1] l+11")) == 1
    assert A.word_counit(parse_word(A, "e1")) == 0
    assert A.word_counit(()) == 1


def test_parse_word_tokens():
    A = _alphabet(("gl", "011", None))
    w = parse_word(A, "l+12 * l-(3,1) l+11^-1 e2 f1 K[1,0,-1]")
    assert [x.kind for x in w] == ["l+", "l-", "l+", "e", "f", "K"]
    assert w[2].inv
    assert parse_word(A, "") == ()
    assert A.parse("e1") == (A.e(1),)
    with pytest.raises(ValueError):
        parse_word(A, "x7")
    with pytest.raises(ValueError):
        parse_word(A, "e9")
    with pytest.raises(ValueError):
        parse_word(A, "K[1,0]")


def test_algebra_element_arithmetic():
    A = _alphabet(("gl", "01", None))
    x = AlgElement.word((A.e(1),))
    y = AlgElement.word((A.f(1),))
    assert (x + y) * x == x * x + y * x
    assert (x - x).is_zero()
    assert x.scale(Q) * y == (x * y).scale(Q)
    assert x.parity() == 1
