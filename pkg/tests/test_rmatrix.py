from __future__ import annotations

import pytest

from superqg.gtensor import GradedMatrix, supertranspose, tensor_legs
from superqg.qfield import ONE, Q, QRat, parse_qrat, q_pow
from superqg.rmatrix import (
    build_R,
    build_rep,
    check_structure,
    evaluated_L,
    flip_matrix,
    serre_check,
    serre_relations,
)
from superqg.rootdata import build_datum

from conftest import ALL_CASES, GL_CASES, OSP_CASES, case_id, datum_of
from oracle import dense_R, to_qrat

STRUCTURAL = ("yang_baxter", "yang_baxter_variant", "braid", "inverse", "factorization")


def _dense_key(N, r, c):
    (a1, a2), (b1, b2) = divmod(r, N), divmod(c, N)
    return (a1 + 1, a2 + 1), (b1 + 1, b2 + 1)


@pytest.mark.parametrize(
    "case",
    [("gl", "01", None), ("gl", "011", None), ("gl", "0110", None), ("osp", "101", None), ("osp", "000", None),
     ("osp", "0110", None), ("osp", "1111", None), ("osp", "101", "-++")],
    ids=case_id,
)
def test_entries_match_dense_oracle(case):
    d = datum_of(case)
    b = build_R(d)
    N = d.N
    for inverse, M in ((False, b.R), (True, b.R_inv)):
        D = dense_R(d, inverse)
        seen = 0
        for r in range(N * N):
            for c in range(N * N):
                if D[r, c] == 0:
                    continue
                seen += 1
                assert M.entries.get(_dense_key(N, r, c)) == to_qrat(D[r, c])
        assert seen == len(M)


def test_gl11_frozen_entries():
    R = build_R(build_datum("gl", "01")).R
    assert R.get((1, 1), (1, 1)) == Q.inverse()
    assert R.get((2, 2), (2, 2)) == Q
    assert R.get((1, 2), (2, 1)) == Q - Q.inverse()
    assert R.get((2, 1), (2, 1)) == ONE
    assert len(R) == 5


def test_osp12_frozen_entries():
    R = build_R(build_datum("osp", "101")).R
    assert R.get((1, 1), (1, 1)) == ONE
    assert R.get((1, 3), (1, 3)) == q_pow(-2)
    assert R.get((1, 3), (3, 1)) == parse_qrat("(q^3 + q^2 - q - 1) / (q^3)")
    assert R.get((1, 3), (2, 2)) == 1 - q_pow(-2)
    assert R.get((2, 2), (3, 1)) == (1 - q_pow(2)) * q_pow(-3)
    assert R.get((3, 3), (3, 3)) == ONE
    assert len(R) == 14


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_structure_identities(case):
    d = datum_of(case)
    rows = {r["name"]: r for r in check_structure(build_R(d), build_rep(d))}
    for name in STRUCTURAL:
        assert rows[name]["status"] == "pass", rows[name]
    inter = [r for n, r in rows.items() if n.startswith(("intertwiner", "chevalley"))]
    assert inter and all(r["status"] == "pass" for r in inter)


@pytest.mark.parametrize("case", GL_CASES, ids=case_id)
def test_gl_supertranspose_symmetry(case):
    R = build_R(datum_of(case)).R
    assert supertranspose(R) == tensor_legs(R, (2, 1), 2)


@pytest.mark.parametrize("case", OSP_CASES, ids=case_id)
def test_osp_supertranspose_defect_is_diagonal_power(case):
    # R^st and R_21 agree up to a power of q on the E_ij (x) E_i'j' terms only
    d = datum_of(case)
    R = build_R(d).R
    st, r21 = supertranspose(R), tensor_legs(R, (2, 1), 2)
    for key in set(st.entries) | set(r21.entries):
        a, b = st.entries.get(key), r21.entries.get(key)
        if a == b:
            continue
        (i, k), (j, l) = key
        assert k == d.prime(i) and l == d.prime(j)
        ratio = a / b
        assert any(ratio == q_pow(e) for e in range(-4, 5) if e)


def test_osp_supertranspose_defect_witness():
    d = build_datum("osp", "101")
    R = build_R(d).R
    st, r21 = supertranspose(R), tensor_legs(R, (2, 1), 2)
    key = ((2, 2), (1, 3))
    assert st.entries[key] == Q * r21.entries[key]


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_serre_catalog_vanishes(case):
    rows = serre_check(build_rep(datum_of(case)))
    assert all(r["status"] == "pass" for r in rows), [r for r in rows if r["status"] != "pass"]


def test_serre_labels_cover_types():
    labels = lambda p: {lbl.split("[")[0] for lbl, *_ in serre_relations(build_rep(build_datum("osp", p)))}  # noqa: E731
    assert "C:long_right" in labels("0110")
    assert "B:short_right" in labels("00000")
    assert any(x.startswith("D:") for x in labels("010010"))


@pytest.mark.parametrize("case", ALL_CASES, ids=case_id)
def test_evaluated_L_triangular_and_inverse_diagonals(case):
    d = datum_of(case)
    Lp, Lm = evaluated_L(build_R(d))
    assert all(i <= j for i, j in Lp)
    assert all(i >= j for i, j in Lm)
    ident = GradedMatrix.identity(d.N, 1, d.parity)
    for k in range(1, d.N + 1):
        assert Lp[(k, k)] * Lm[(k, k)] == ident


def test_gl_df_image_simple_entry():
    d = build_datum("gl", "011")
    rep = build_rep(d)
    Lp, _ = evaluated_L(build_R(d))
    for i in (1, 2):
        expect = (rep.f[i] * rep.cartan_H(i + 1, -1)).scale(-(Q - Q.inverse()))
        assert Lp[(i, i + 1)] == expect


def test_c_type_df_image_long_entry():
    d = build_datum("osp", "0110")
    assert d.type_tag == "C"
    rep = build_rep(d)
    _, Lm = evaluated_L(build_R(d))
    s, sp_ = d.s, d.prime(d.s)
    expect = (rep.cartan_H(sp_) * rep.e[s]).scale(-(q_pow(2) - q_pow(-2)))
    assert Lm[(sp_, s)] == expect


def test_flip_is_involution():
    d = build_datum("gl", "011")
    P = flip_matrix(d)
    assert P @ P == GradedMatrix.identity(d.N, 2, d.parity)


def test_rs_times_ru_shapes():
    b = build_R(build_datum("osp", "0110"))
    assert b.R_s.legs == b.R_u.legs == 2
    assert all(r == c for r, c in b.R_s.entries)
    assert isinstance(next(iter(b.R_s.entries.values())), QRat)
