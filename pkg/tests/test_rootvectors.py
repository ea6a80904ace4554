from __future__ import annotations

import pytest

from superqg.freealg import AlgElement
from superqg.qfield import ONE, Q, parse_qrat, q_pow
from superqg.rootdata import build_datum, convex_order
from superqg.rootvectors import (
    PBWMonomial,
    c_scalar,
    correspondence_check,
    costandard_factorization,
    dj_root_vector,
    e_normalization,
    f_normalization,
    gram_check,
    iter_simple_pairings,
    pbw_enumerate,
    rtt_root_vector,
    composite_prefactor,
    verify_ru_factorization,
)

from conftest import ALL_CASES, OSP_CASES, case_id, datum_of

QM = Q - Q.inverse()


def _support_ok(d, rv, sign):
    target = tuple(sign * x for x in d.root_vector(rv.root))
    for (r, c), _ in rv.rep_matrix:
        a, b = r[0], c[0]
        if tuple(x - y for x, y in zip(d.eps(a), d.eps(b))) != target:
            return False
    return bool(len(rv.rep_matrix))


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_root_vector_degrees_and_support(case):
    d = datum_of(case)
    for r in convex_order(d):
        e, f = dj_root_vector(d, r, "e"), dj_root_vector(d, r, "f")
        assert _support_ok(d, e, 1) and _support_ok(d, f, -1), r
        # L+- slices act by lowering/raising units, so the RTT side is mirrored
        e, f = rtt_root_vector(d, r, "e"), rtt_root_vector(d, r, "f")
        assert _support_ok(d, e, -1) and _support_ok(d, f, 1), r
        for word in e.word.terms:
            assert word[0].owner.degree(word) == d.root_vector(r)


def test_gl11_rtt_root_vectors_frozen():
    d = build_datum("gl", "01")
    e = rtt_root_vector(d, (1, 2), "e").word
    f = rtt_root_vector(d, (1, 2), "f").word
    ((we, ce),) = e.terms.items()
    ((wf, cf),) = f.terms.items()
    assert [repr(x) for x in we] == ["l+11^-1", "l+12"]
    assert ce == parse_qrat("(q^2) / (q^2 - 1)")
    assert [repr(x) for x in wf] == ["l-21", "l-11^-1"]
    assert cf == parse_qrat("(-1) / (q^2 - 1)")


def test_normalizations():
    d = build_datum("gl", "01")
    assert e_normalization(d, 1, 2) == q_pow(-1) * QM
    assert f_normalization(d, 1, 2) == 1 - q_pow(2)
    d = build_datum("gl", "00")
    assert e_normalization(d, 1, 2) == q_pow(-1) * QM


def test_gl_composite_rtt_word():
    d = build_datum("gl", "011")
    ((w, c),) = rtt_root_vector(d, (1, 3), "e").word.terms.items()
    assert [repr(x) for x in w] == ["l+11^-1", "l+13"]
    assert c == parse_qrat("(q^2) / (q^2 - 1)")


def test_costandard_factorization():
    assert costandard_factorization(build_datum("gl", "011"), (1, 3)) == ((1, 2), (2, 3))
    assert costandard_factorization(build_datum("gl", "011"), (1, 2)) is None
    c = build_datum("osp", "1111")
    assert c.type_tag == "C"
    assert costandard_factorization(c, (1, 4)) == ((1, 2), (1, 3))


def test_c_scalars_frozen():
    assert c_scalar(build_datum("gl", "011"), (2, 3), 1) == ONE
    assert c_scalar(build_datum("gl", "011"), (2, 3), 2) == 1 + q_pow(-2)
    assert c_scalar(build_datum("osp", "0110"), (2, 3), 2) == 1 + q_pow(-4)
    assert c_scalar(build_datum("osp", "101"), (1, 2), 2) == 1 - q_pow(-1)


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_pbw_exponent_caps(case):
    d = datum_of(case)
    for m in pbw_enumerate(d, 4):
        assert m.height(d) <= 4
        for r, k in m.exponents:
            if d.is_isotropic(r):
                assert k <= 1


def test_pbw_gl11_height_2():
    d = build_datum("gl", "01")
    ms = pbw_enumerate(d, 2)
    assert sorted((m.as_map() for m in ms), key=len) == [{}, {(1, 2): 1}]


def test_pbw_counts_frozen():
    counts = {p: len(pbw_enumerate(build_datum("gl", p), 4)) for p in ("01", "011")}
    assert counts == {"01": 2, "011": 14}
    assert len(pbw_enumerate(build_datum("osp", "101"), 4)) == 5


def test_pbw_monomial_helpers():
    d = build_datum("gl", "011")
    m = PBWMonomial.from_map({(2, 3): 2, (1, 2): 1})
    assert m.get((2, 3)) == 2 and m.get((1, 3)) == 0
    assert m.height(d) == 3
    assert m.degree(d) == (1, 1, -2)
    assert m.label(d) == "e2,3^2*e1,2"


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_ru_factorization(case):
    rows = verify_ru_factorization(datum_of(case))
    assert [r["status"] for r in rows] == ["pass", "pass"]


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_correspondence(case):
    rows = correspondence_check(datum_of(case))
    assert rows
    for r in rows:
        assert r["status"] in ("pass", "skipped"), r


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_simple_pairings(case):
    for label, sig, tilde in iter_simple_pairings(datum_of(case)):
        assert sig == QM.inverse(), label
        assert tilde == -QM.inverse(), label


@pytest.mark.parametrize("case", OSP_CASES, ids=case_id)
def test_composite_prefactors_are_signs(case):
    d = datum_of(case)
    for r in convex_order(d):
        c = composite_prefactor(d, r)
        if r[1] == d.prime(r[0]):
            assert c is None
        else:
            assert c in (ONE, -ONE)


def test_composite_prefactor_sign_flip():
    d = build_datum("osp", "00000")
    assert composite_prefactor(d, (1, 4)) == -ONE
    assert composite_prefactor(d, (1, 3)) == ONE


@pytest.mark.parametrize(
    "case", [c for c in ALL_CASES if c[1] != "010010"], ids=case_id
)
def test_gram_matches_closed_form(case):
    rows = gram_check(datum_of(case), 4)
    assert rows
    assert all(r["status"] == "pass" for r in rows), [r for r in rows if r["status"] != "pass"]


@pytest.mark.parametrize("theta", [None, "+-++++"])
def test_gram_long_root_bracket_variant(theta):
    d = build_datum("osp", "010010", theta)
    rows = gram_check(d, 4, long_roots="bracket")
    assert all(r["status"] == "pass" for r in rows)


def test_gram_gauss_slice_witness():
    d = build_datum("osp", "1111")
    bad = [r for r in gram_check(d, 4) if r["status"] == "fail"]
    assert bad and all("witness" in r for r in bad)


def test_alg_element_type():
    assert isinstance(rtt_root_vector(build_datum("gl", "01"), (1, 2), "e").word, AlgElement)
