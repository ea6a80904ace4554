from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superqg.grading import STANDARD, TWISTED
from superqg.gtensor import (
    GradedMatrix,
    from_json,
    gauss_triangular,
    kron,
    matmul,
    supertranspose,
    tensor_legs,
    to_json,
)
from superqg.qfield import ONE, Q, QRat, q_pow
from superqg.rmatrix import build_R, evaluated_L
from superqg.rootdata import build_datum

PAR = (0, 1, 1)
N = len(PAR)
idx = st.integers(1, N)
small = st.integers(-3, 3).filter(bool).map(lambda k: QRat.from_int(k) * q_pow(k % 3))


@st.composite
def scalar_matrix(draw, legs=1, homogeneous=None):
    entries = {}
    for _ in range(draw(st.integers(0, 4))):
        rows = tuple(draw(idx) for _ in range(legs))
        cols = tuple(draw(idx) for _ in range(legs))
        entries[(rows, cols)] = draw(small)
    m = GradedMatrix(N, legs, PAR, entries)
    if homogeneous is not None:
        m = m.like({k: v for k, v in m.entries.items() if m.unit_parity(k) == homogeneous})
    return m


@st.composite
def matrix_coeff_matrix(draw):
    """Two-leg matrix whose coefficients are homogeneous one-leg matrices."""
    entries = {}
    for _ in range(draw(st.integers(0, 3))):
        a, c = draw(idx), draw(idx)
        coeff = GradedMatrix.unit(N, PAR, a, c, draw(small))
        rows = (draw(idx), draw(idx))
        cols = (draw(idx), draw(idx))
        entries[(rows, cols)] = coeff
    return GradedMatrix(N, 2, PAR, entries)


def test_unit_parity_and_identity():
    e = GradedMatrix.unit(N, PAR, 1, 2)
    assert e.parity() == 1
    ident = GradedMatrix.identity(N, 2, PAR)
    assert len(ident) == N * N
    assert matmul(ident, ident) == ident


def test_inhomogeneous_parity_raises():
    m = GradedMatrix.unit(N, PAR, 1, 2) + GradedMatrix.unit(N, PAR, 1, 1)
    with pytest.raises(ValueError):
        m.parity()


def test_odd_units_anticommute_across_legs():
    e12 = GradedMatrix.unit(N, PAR, 1, 2)
    a = tensor_legs(e12, (1,), 2)
    b = tensor_legs(e12, (2,), 2)
    assert matmul(a, b) == -matmul(b, a)


@pytest.mark.parametrize("braiding", [STANDARD, TWISTED], ids=lambda b: b.tag)
@given(data=st.data())
def test_matmul_associative_scalar(braiding, data):
    x, y, z = (data.draw(scalar_matrix(legs=2)) for _ in range(3))
    assert matmul(matmul(x, y, braiding), z, braiding) == matmul(x, matmul(y, z, braiding), braiding)


@pytest.mark.parametrize("braiding", [STANDARD, TWISTED], ids=lambda b: b.tag)
@given(data=st.data())
def test_matmul_associative_matrix_coefficients(braiding, data):
    x, y, z = (data.draw(matrix_coeff_matrix()) for _ in range(3))
    assert matmul(matmul(x, y, braiding), z, braiding) == matmul(x, matmul(y, z, braiding), braiding)


@given(scalar_matrix(legs=1))
def test_tensor_legs_composition(a):
    two = tensor_legs(a, (2,), 2)
    assert tensor_legs(two, (1, 3), 3) == tensor_legs(a, (3,), 3)
    assert tensor_legs(two, (3, 1), 3) == tensor_legs(a, (1,), 3)


@given(scalar_matrix(legs=2))
def test_tensor_legs_identity_slots(a):
    assert tensor_legs(a, (1, 2), 2) == a
    swapped = tensor_legs(a, (2, 1), 2)
    assert tensor_legs(swapped, (2, 1), 2) == a


def test_tensor_legs_rejects_bad_slots():
    a = GradedMatrix.unit(N, PAR, 1, 2)
    with pytest.raises(ValueError):
        tensor_legs(a, (1, 2), 2)
    with pytest.raises(ValueError):
        tensor_legs(a, (3,), 2)


@given(scalar_matrix(homogeneous=0), scalar_matrix(homogeneous=1), st.booleans(), st.booleans())
def test_supertranspose_product_rule(even, odd, first_odd, second_odd):
    x = odd if first_odd else even
    y = odd if second_odd else even
    sign = -1 if first_odd and second_odd else 1
    lhs = supertranspose(x * y)
    rhs = (supertranspose(y) * supertranspose(x)).scale(QRat.from_int(sign))
    assert lhs == rhs


@given(scalar_matrix(legs=2))
def test_full_supertranspose_commutes_with_flip(a):
    flip = lambda m: tensor_legs(m, (2, 1), 2)  # noqa: E731
    assert supertranspose(flip(a)) == flip(supertranspose(a))


def test_supertranspose_sign_convention():
    # odd column index: E_ij -> (-1)^(|j|(|i|+|j|)) E_ji
    assert supertranspose(GradedMatrix.unit(N, PAR, 1, 2)) == GradedMatrix.unit(N, PAR, 2, 1, -ONE)
    assert supertranspose(GradedMatrix.unit(N, PAR, 2, 1)) == GradedMatrix.unit(N, PAR, 1, 2)


def test_kron_matches_leg_embedding():
    a = GradedMatrix.unit(N, PAR, 1, 2, Q)
    b = GradedMatrix.unit(N, PAR, 3, 1)
    assert kron(a, b) == tensor_legs(a, (1,), 2) * tensor_legs(b, (2,), 2)


def test_gauss_unipotent_entry_gl11():
    b = build_R(build_datum("gl", "01"))
    Lp, _ = evaluated_L(b)
    d = b.datum
    big = GradedMatrix(2, 1, d.parity, {((i,), (j,)): v for (i, j), v in Lp.items()})
    diag, U = gauss_triangular(big, "upper")
    assert diag[0] == Lp[(1, 1)]
    assert U[1, 2] == Lp[(1, 1)].inverse() * Lp[(1, 2)]
    assert U[1, 1] == GradedMatrix.identity(2, 1, d.parity)


def test_gauss_rejects_non_triangular():
    m = GradedMatrix(N, 1, PAR, {((2,), (1,)): ONE, ((1,), (1,)): ONE, ((2,), (2,)): ONE, ((3,), (3,)): ONE})
    with pytest.raises(ValueError):
        gauss_triangular(m, "upper")
    diag, W = gauss_triangular(m, "lower")
    assert W[2, 1] == ONE


@given(scalar_matrix(legs=2))
def test_json_roundtrip(a):
    assert from_json(to_json(a)) == a


def test_inverse_of_scalar_matrix():
    m = GradedMatrix.diagonal(PAR, [Q, ONE, Q + 1]) + GradedMatrix.unit(N, PAR, 1, 2, ONE)
    assert m * m.inverse() == GradedMatrix.identity(N, 1, PAR)
