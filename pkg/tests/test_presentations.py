from __future__ import annotations

import pytest

from superqg.freealg import AlgElement, Alphabet
from superqg.grading import TWISTED
from superqg.pairing import make_sigma_R
from superqg.presentations import (
    SIGN_PAIRS,
    compare_relation_sets,
    cross_relations,
    crosscheck,
    extract_rll,
    omega_duality,
    table_check,
    table_rows,
    twist_equivalence,
    zeta_twist,
)
from superqg.qfield import Q
from superqg.rmatrix import build_R
from superqg.rootdata import build_datum

from conftest import ALL_CASES, GL_CASES, OSP_CASES, case_id, datum_of


def _bundle(case):
    return build_R(datum_of(case))


def test_gl11_rll_relations_frozen():
    b = _bundle(("gl", "01", None))
    A = Alphabet(b.datum)
    rs = extract_rll(b, ("+", "+"), alphabet=A)
    w = lambda *xs: AlgElement.word(tuple(xs))  # noqa: E731
    l11, l12, l22 = A.lp(1, 1), A.lp(1, 2), A.lp(2, 2)
    assert rs.get(1, 1, 1, 2) == w(l11, l12).scale(Q.inverse()) - w(l12, l11)
    assert rs.get(1, 2, 1, 2) == w(l12, l12).scale(-(Q + Q.inverse()))
    assert rs.get(1, 1, 2, 2) == w(l11, l22) - w(l22, l11)


@pytest.mark.parametrize("case", ALL_CASES[:4], ids=case_id)
def test_relation_sets_have_n4_components(case):
    b = _bundle(case)
    N = b.datum.N
    for signs in SIGN_PAIRS:
        rs = extract_rll(b, signs)
        assert len(list(rs.components())) == N**4
        assert 0 < len(rs) <= N**4


def test_zeta_twist_signs():
    A = Alphabet(build_datum("gl", "011"))
    odd, even = A.lp(1, 2), A.lp(1, 1)
    x = AlgElement.word((odd, odd)) + AlgElement.word((odd, even))
    assert zeta_twist(x) == -AlgElement.word((odd, odd)) + AlgElement.word((odd, even))
    assert zeta_twist(zeta_twist(x)) == x


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_twist_equivalence(case):
    rows = twist_equivalence(_bundle(case))
    assert [r["name"] for r in rows] == ["twist[++]", "twist[--]", "twist[+-]"]
    assert all(r["status"] == "pass" for r in rows)


def test_twisted_braiding_changes_something():
    b = _bundle(("gl", "011", None))
    std = extract_rll(b, ("+", "+"))
    tw = extract_rll(b, ("+", "+"), TWISTED)
    assert compare_relation_sets(std, tw) is not None


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_cross_relations_match_mixed_rll(case):
    b = _bundle(case)
    rows = crosscheck(b, make_sigma_R(b))
    assert all(r["status"] == "pass" for r in rows)


def test_cross_relations_direct_compare():
    b = _bundle(("osp", "101", None))
    A = Alphabet(b.datum)
    mixed = extract_rll(b, ("+", "-"), alphabet=A)
    assert compare_relation_sets(cross_relations(make_sigma_R(b, A)), mixed) is None


@pytest.mark.parametrize("case", GL_CASES, ids=case_id)
def test_omega_duality_gl(case):
    assert all(r["status"] == "pass" for r in omega_duality(_bundle(case)))


@pytest.mark.parametrize("case", OSP_CASES, ids=case_id)
def test_omega_duality_osp_defect(case):
    # follows from the R^st != R_21 discrepancy of the orthosymplectic R-matrix
    rows = omega_duality(_bundle(case))
    assert {r["status"] for r in rows} == {"fail"}


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_e_side_tables(case):
    d = datum_of(case)
    rows = table_check(d, sides=("e",))
    assert len(rows) == len(table_rows(d))
    for r in rows:
        assert r["status"] in ("pass", "skipped"), r
        if r["status"] == "skipped":
            assert r["reason"]
        else:
            assert r["instances"] > 0


@pytest.mark.parametrize("case", GL_CASES, ids=case_id)
def test_gl_f_side_and_mixed(case):
    rows = table_check(datum_of(case), sides=("f",), mixed=True)
    assert all(r["status"] != "fail" for r in rows), [r for r in rows if r["status"] == "fail"]


@pytest.mark.parametrize("case", OSP_CASES, ids=case_id)
def test_osp_f_side_fails_only_on_mirror_rows(case):
    rows = table_check(datum_of(case), sides=("f",))
    failing = {r["row_id"] for r in rows if r["status"] == "fail"}
    assert failing and failing <= {"mirror", "mirror_fork"}


def test_three_step_chain_row():
    rows = {r["row_id"]: r for r in table_check(build_datum("gl", "011"), sides=("e",))}
    assert rows["chain"]["status"] == "pass"


def test_d_type_vanishing_row():
    d = build_datum("osp", "010010")
    assert d.type_tag == "D"
    rows = {(r["table"], r["row_id"]): r for r in table_check(d, sides=("e",))}
    assert rows[("D-extra", "vanishing")]["status"] == "pass"


def test_guarded_rows_are_reported():
    rows = table_check(build_datum("osp", "101"), sides=("e",))
    skipped = [r for r in rows if r["status"] == "skipped"]
    assert any(r["reason"] == "needs s >= 2" for r in skipped)
    assert sum(1 for r in rows if r["status"] == "pass") >= 1
