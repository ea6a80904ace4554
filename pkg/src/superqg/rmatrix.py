"""Evaluated R-matrices, the defining representation, and their checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .gtensor import GradedMatrix, kron, supertranspose, tensor_legs
from .qfield import ONE, Q, QRat, q_pow
from .rootdata import RootDatum, Weight, wadd, wscale

__all__ = [
    "RMatrixBundle",
    "FundRep",
    "Homog",
    "build_R",
    "build_rep",
    "evaluated_L",
    "check_structure",
    "serre_relations",
    "serre_check",
    "qbracket",
    "flip_matrix",
]

QQ = Q - Q.inverse()  # q - q^-1


def _int_exp(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"non-integer q-exponent {x} in {what}")
    return int(x)


@dataclass
class RMatrixBundle:
    datum: RootDatum
    R: GradedMatrix
    R_inv: GradedMatrix
    R_s: GradedMatrix
    R_u: GradedMatrix
    _cache: dict = field(default_factory=dict, repr=False)

    def entry(self, i: int, j: int, k: int, l: int) -> QRat | None:
        return self.R.entries.get(((i, k), (j, l)))

    def inv_entry(self, i: int, j: int, k: int, l: int) -> QRat | None:
        return self.R_inv.entries.get(((i, k), (j, l)))


def _add(entries: dict, key: tuple, val: QRat) -> None:
    if key in entries:
        v = entries[key] + val
        if v.is_zero():
            del entries[key]
        else:
            entries[key] = v
    elif not val.is_zero():
        entries[key] = val


def _osp_offdiag_exponent(d: RootDatum, i: int, j: int, rho_sign: int, jsign: int) -> int:
    """(+/-)(rho, eps_i - eps_j) - (eps_i,eps_i)/2 + jsign (eps_j,eps_j)/2, checked integral."""
    x = rho_sign * (d.rho(i) - d.rho(j)) - Fraction(d.eps_form(i, i), 2) + jsign * Fraction(d.eps_form(j, j), 2)
    return _int_exp(x, f"R-matrix entry ({i},{j})")


def build_R(d: RootDatum) -> RMatrixBundle:
    N, ps = d.N, d.parity
    R: dict = {}
    Ri: dict = {}
    Rs: dict = {}
    Ru: dict = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            e = d.eps_tilde_form(i, j)
            R[((i, j), (i, j))] = q_pow(-e)
            Ri[((i, j), (i, j))] = q_pow(e)
            Rs[((i, j), (i, j))] = q_pow(-e)
            Ru[((i, j), (i, j))] = ONE
    c = 0 if d.mode == "gl" else 1  # (eps~_C, eps~_C)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            sj = -1 if d.p(j) else 1
            # E_ij (x) E_ji part
            _add(R, ((i, j), (j, i)), -QQ * q_pow(-c) * sj)
            _add(Ri, ((i, j), (j, i)), QQ * q_pow(c) * sj)
            _add(Ru, ((i, j), (j, i)), -QQ * q_pow(d.eps_form(i, j)) * sj)
            if d.mode == "gl":
                continue
            ip, jp = d.prime(i), d.prime(j)
            sgn = (-1 if d.p(j) * (d.p(i) + d.p(j)) % 2 else 1) * d.th(i) * d.th(j)
            eR = _osp_offdiag_exponent(d, i, j, +1, +1)
            eRi = _osp_offdiag_exponent(d, i, j, -1, +1)
            eRu = _osp_offdiag_exponent(d, i, j, +1, -1)
            _add(R, ((i, ip), (j, jp)), QQ * q_pow(-c) * sj * sgn * q_pow(eR))
            _add(Ri, ((i, ip), (j, jp)), -QQ * q_pow(c) * sj * sgn * q_pow(eRi))
            _add(Ru, ((i, ip), (j, jp)), QQ * sj * sgn * q_pow(eRu))
    mk = lambda e: GradedMatrix(N, 2, ps, e)  # noqa: E731
    return RMatrixBundle(d, mk(R), mk(Ri), mk(Rs), mk(Ru))


# representation


@dataclass(frozen=True)
class Homog:
    """A homogeneous matrix together with its weight and parity."""

    mat: GradedMatrix
    deg: Weight
    par: int

    def __mul__(self, other: Homog) -> Homog:
        return Homog(self.mat * other.mat, wadd(self.deg, other.deg), (self.par + other.par) % 2)

    def scale(self, c: QRat) -> Homog:
        return Homog(self.mat.scale(c), self.deg, self.par)


@dataclass
class FundRep:
    datum: RootDatum
    e: dict[int, GradedMatrix]
    f: dict[int, GradedMatrix]
    kappa: dict[int, QRat]

    def cartan(self, weight: Sequence[int]) -> GradedMatrix:
        """Image of q^weight: diagonal with entries q^(weight, eps~_a)."""
        d = self.datum
        vals = [q_pow(d.form(weight, d.eps_tilde(a))) for a in range(1, d.N + 1)]
        return GradedMatrix.diagonal(d.parity, vals)

    def cartan_H(self, k: int, sign: int = 1) -> GradedMatrix:
        """q^{+-H_k} (gl) or q^{+-H~_k} (osp)."""
        d = self.datum
        w = d.eps(k) if d.mode == "gl" else d.eps_tilde(k)
        return self.cartan(wscale(sign, w))

    def K(self, i: int, sign: int = 1) -> GradedMatrix:
        """q^{+-h_i}."""
        return self.cartan(wscale(sign, self.datum.simple_root_vector(i)))

    def E(self, i: int) -> Homog:
        d = self.datum
        return Homog(self.e[i], d.simple_root_vector(i), d.simple_root_parity(i))

    def F(self, i: int) -> Homog:
        d = self.datum
        return Homog(self.f[i], wscale(-1, d.simple_root_vector(i)), d.simple_root_parity(i))

    def identity(self) -> GradedMatrix:
        return GradedMatrix.identity(self.datum.N, 1, self.datum.parity)


def _X(d: RootDatum, i: int, j: int) -> GradedMatrix:
    sgn = -1 if d.p(i) * (d.p(i) + d.p(j)) % 2 else 1
    m = GradedMatrix.unit(d.N, d.parity, i, j)
    return m + GradedMatrix.unit(d.N, d.parity, d.prime(j), d.prime(i), QRat.from_int(-sgn * d.th(i) * d.th(j)))


def build_rep(d: RootDatum) -> FundRep:
    e: dict[int, GradedMatrix] = {}
    f: dict[int, GradedMatrix] = {}
    kappa: dict[int, QRat] = {}
    unit = lambda i, j, c=ONE: GradedMatrix.unit(d.N, d.parity, i, j, c)  # noqa: E731
    for i in range(1, d.rank + 1):
        kappa[i] = ONE
        sgn = -1 if d.p(i) else 1
        if d.mode == "gl":
            e[i] = unit(i, i + 1)
            f[i] = unit(i + 1, i, QRat.from_int(sgn))
            continue
        s = d.s
        if i < s or d.type_tag == "B":
            e[i] = _X(d, i, i + 1)
            f[i] = _X(d, i + 1, i).scale(QRat.from_int(sgn))
        elif d.type_tag == "C":
            kappa[i] = (Q + Q.inverse()) / 2
            e[i] = unit(s, d.prime(s))
            f[i] = unit(d.prime(s), s, kappa[i] * -2)
        else:
            e[i] = _X(d, s - 1, d.prime(s))
            f[i] = _X(d, d.prime(s), s - 1).scale(QRat.from_int(-1 if d.p(s - 1) else 1))
    return FundRep(d, e, f, kappa)


def evaluated_L(b: RMatrixBundle) -> tuple[dict, dict]:
    """Slice the R-matrices into N x N arrays of one-leg matrices.

    ``Lp[(i, j)]`` comes from R_21 (upper triangular) and ``Lm[(i, j)]`` from
    R^-1 (lower triangular); missing keys are zero.
    """
    if "L" in b._cache:
        return b._cache["L"]
    d = b.datum
    ps = d.parity
    Lp: dict = {}
    Lm: dict = {}
    for ((i, c), (j, dd)), v in b.R.entries.items():
        sgn = -1 if (ps[i - 1] + ps[j - 1]) * (ps[c - 1] + ps[dd - 1]) % 2 else 1
        Lp.setdefault((i, j), {})[((c,), (dd,))] = v if sgn > 0 else -v
    for ((c, k), (dd, l)), v in b.R_inv.entries.items():
        Lm.setdefault((k, l), {})[((c,), (dd,))] = v
    Lp = {k: GradedMatrix(d.N, 1, ps, v) for k, v in Lp.items()}
    Lm = {k: GradedMatrix(d.N, 1, ps, v) for k, v in Lm.items()}
    for (i, j) in Lp:
        if i > j:
            raise ValueError(f"L+ is not upper triangular at ({i},{j})")
    for (i, j) in Lm:
        if i < j:
            raise ValueError(f"L- is not lower triangular at ({i},{j})")
    b._cache["L"] = (Lp, Lm)
    return Lp, Lm


# brackets


def qbracket(d: RootDatum, x: Homog, y: Homog, product: Callable[[Homog, Homog], Homog] | None = None) -> Homog:
    """[[x, y]] = x y - (-1)^(|x||y|) q^((deg x, deg y)) y x."""
    mul = product or (lambda a, b: a * b)
    sgn = -1 if x.par * y.par else 1
    xy = mul(x, y)
    yx = mul(y, x)
    c = q_pow(d.form(x.deg, y.deg)) * (-sgn)
    return Homog(xy.mat + yx.mat.scale(c), xy.deg, xy.par)


def flip_matrix(d: RootDatum) -> GradedMatrix:
    """The super flip on V (x) V as a two-leg matrix."""
    ent = {}
    for i in range(1, d.N + 1):
        for j in range(1, d.N + 1):
            ent[((i, j), (j, i))] = QRat.from_int(-1 if d.p(j) else 1)
    return GradedMatrix(d.N, 2, d.parity, ent)


def _coproducts(rep: FundRep) -> list[tuple[str, GradedMatrix]]:
    d = rep.datum
    I = rep.identity()
    out = []
    for i in range(1, d.rank + 1):
        out.append((f"e{i}", kron(rep.K(i), rep.e[i]) + kron(rep.e[i], I)))
        out.append((f"f{i}", kron(I, rep.f[i]) + kron(rep.f[i], rep.K(i, -1))))
    for k in range(1, (d.N if d.mode == "gl" else d.s + 1) + 1):
        K = rep.cartan_H(k)
        out.append((f"qH{k}", kron(K, K)))
    return out


def chevalley_check(rep: FundRep) -> list[dict]:
    d = rep.datum
    rows = []
    for i in range(1, d.rank + 1):
        for j in range(1, d.rank + 1):
            E, F = rep.E(i), rep.F(j)
            sgn = -1 if E.par * F.par else 1
            lhs = E.mat * F.mat - (F.mat * E.mat).scale(QRat.from_int(sgn))
            rhs = GradedMatrix.zero(d.N, 1, d.parity)
            if i == j:
                rhs = (rep.K(i) - rep.K(i, -1)).scale(QQ.inverse())
            rows.append({"name": f"chevalley[{i},{j}]", "status": "pass" if lhs == rhs else "fail"})
    return rows


def check_structure(b: RMatrixBundle, rep: FundRep) -> list[dict]:
    d = b.datum
    R = b.R
    rows: list[dict] = []

    def record(name: str, lhs: GradedMatrix, rhs: GradedMatrix) -> None:
        row: dict[str, Any] = {"name": name, "status": "pass" if lhs == rhs else "fail"}
        if row["status"] == "fail":
            row["witness"] = str(lhs.first_difference(rhs))
        rows.append(row)

    R12 = tensor_legs(R, (1, 2), 3)
    R13 = tensor_legs(R, (1, 3), 3)
    R23 = tensor_legs(R, (2, 3), 3)
    record("yang_baxter", R12 @ R13 @ R23, R23 @ R13 @ R12)
    R21 = tensor_legs(R, (2, 1), 2)
    R31 = tensor_legs(R, (3, 1), 3)
    R21_3 = tensor_legs(R, (2, 1), 3)
    record("yang_baxter_variant", R23 @ R21_3 @ R31, R31 @ R21_3 @ R23)
    Rh = flip_matrix(d) @ R
    Rh12 = tensor_legs(Rh, (1, 2), 3)
    Rh23 = tensor_legs(Rh, (2, 3), 3)
    record("braid", Rh12 @ Rh23 @ Rh12, Rh23 @ Rh12 @ Rh23)
    I2 = GradedMatrix.identity(d.N, 2, d.parity)
    record("inverse", R @ b.R_inv, I2)
    record("supertranspose", supertranspose(R), R21)
    record("factorization", b.R_u @ b.R_s, R)
    for name, D in _coproducts(rep):
        record(f"intertwiner[{name}]", Rh @ D, D @ Rh)
    rows.extend(chevalley_check(rep))
    return rows


# Serre catalogs


def serre_relations(rep: FundRep, side: str = "e") -> list[tuple[str, Homog, Homog | None]]:
    """All applicable Serre relations as (label, lhs, rhs) with rhs None meaning zero."""
    d = rep.datum
    n = d.rank
    gen = rep.E if side == "e" else rep.F
    br = lambda x, y: qbracket(d, x, y)  # noqa: E731
    a = lambda i: d.simple_root_vector(i)  # noqa: E731
    even = lambda i: d.simple_root_parity(i) == 0  # noqa: E731
    out: list[tuple[str, Homog, Homog | None]] = []
    limit = n if d.mode == "gl" else n - 1  # indices allowed in relations 2 and 3
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if d.form(a(i), a(j)) == 0:
                out.append((f"orthogonal[{i},{j}]", br(gen(i), gen(j)), None))
    for i in range(1, limit + 1):
        for j in range(1, limit + 1):
            if abs(i - j) == 1 and even(i):
                out.append((f"adjacent[{i},{j}]", br(gen(i), br(gen(i), gen(j))), None))
    for i in range(2, limit):
        if not even(i):
            out.append((f"odd_middle[{i}]", br(br(br(gen(i - 1), gen(i)), gen(i + 1)), gen(i)), None))
    if d.mode == "gl":
        return out
    s = d.s
    t = d.type_tag
    g = gen
    if t == "B" and s >= 2:
        if even(s - 1):
            out.append(("B:short_left", br(g(s - 1), br(g(s - 1), g(s))), None))
        if even(s):
            out.append(("B:short_right", br(br(br(g(s - 1), g(s)), g(s)), g(s)), None))
        if not even(s - 1) and s >= 3:
            out.append(("B:odd_middle", br(br(br(g(s - 2), g(s - 1)), g(s)), g(s - 1)), None))
    if t == "C" and s >= 2:
        if even(s - 1):
            out.append(("C:long_left", br(g(s - 1), br(g(s - 1), br(g(s - 1), g(s)))), None))
        out.append(("C:long_right", br(br(g(s - 1), g(s)), g(s)), None))
        if s >= 3 and not even(s - 2) and not even(s - 1):
            x = br(g(s - 2), g(s - 1))
            out.append(("C:odd_pair", br(br(br(x, g(s)), x), g(s - 1)), None))
        if s >= 4 and even(s - 2) and not even(s - 1):
            y = br(br(br(g(s - 3), g(s - 2)), g(s - 1)), g(s))
            out.append(("C:long_chain", br(br(br(y, g(s - 1)), g(s - 2)), g(s - 1)), None))
    if t == "D":
        if s >= 3 and even(s - 2):
            out.append(("D:fork_left", br(g(s - 2), br(g(s - 2), g(s))), None))
        if s >= 3 and even(s):
            out.append(("D:fork_right", br(br(g(s - 2), g(s)), g(s)), None))
        if s >= 4 and not even(s - 2):
            out.append(("D:fork_quartic", br(br(br(g(s - 3), g(s - 2)), g(s)), g(s - 2)), None))
        if s >= 3 and not even(s):
            out.append(("D:fork_exchange", br(br(g(s - 2), g(s - 1)), g(s)), br(br(g(s - 2), g(s)), g(s - 1))))
    return out


def serre_check(rep: FundRep) -> list[dict]:
    rows = []
    for side in ("e", "f"):
        for label, lhs, rhs in serre_relations(rep, side):
            ok = lhs.mat.is_zero() if rhs is None else lhs.mat == rhs.mat
            rows.append({"name": f"serre[{side}:{label}]", "status": "pass" if ok else "fail"})
    return rows
