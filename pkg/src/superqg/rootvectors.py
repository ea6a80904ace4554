"""Quantum root vectors, PBW monomials, Gram matrices and R_u factorization.

Two parallel constructions live here.  On the Drinfeld-Jimbo side root vectors
are iterated q-brackets of Chevalley letters.  On the RTT side they are
normalized Gauss slices ``(l+_ii)^-1 l+_ij`` and ``l-_ji (l-_ii)^-1``.  Both
sides are evaluated in the defining representation through
:class:`RTTRepModel` and :class:`~superqg.rmatrix.FundRep`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .freealg import AlgElement, Alphabet
from .gtensor import GradedMatrix, kron
from .pairing import PairingSpec, make_sigma_DJ, make_sigma_R, make_sigma_tilde_R, pair
from .qfield import ONE, ZERO, Q, QRat, q_pow
from .rmatrix import QQ, FundRep, Homog, RMatrixBundle, build_R, build_rep, evaluated_L, qbracket
from .rootdata import Root, RootDatum, Weight, convex_order, wadd, wscale

__all__ = [
    "RootVector",
    "PBWMonomial",
    "RTTRepModel",
    "DatumContext",
    "canonical_root",
    "costandard_factorization",
    "dj_root_vector",
    "rtt_root_vector",
    "e_normalization",
    "f_normalization",
    "xi_simple_images",
    "composite_prefactor",
    "correspondence_check",
    "pbw_enumerate",
    "pbw_word",
    "chi",
    "c_scalar",
    "gram_check",
    "verify_ru_factorization",
    "iter_simple_pairings",
    "rtt_long_bracket",
]


def _sgn(x: int) -> int:
    return -1 if x % 2 else 1


@dataclass(frozen=True)
class RootVector:
    root: Root
    side: str
    word: AlgElement
    rep_matrix: GradedMatrix


@dataclass(frozen=True)
class PBWMonomial:
    """Exponents keyed by root, stored as a sorted tuple of (root, m) with m > 0."""

    exponents: tuple[tuple[Root, int], ...]

    @classmethod
    def from_map(cls, m: dict[Root, int]) -> PBWMonomial:
        return cls(tuple(sorted((r, k) for r, k in m.items() if k)))

    def as_map(self) -> dict[Root, int]:
        return dict(self.exponents)

    def get(self, r: Root) -> int:
        return self.as_map().get(r, 0)

    def degree(self, d: RootDatum) -> Weight:
        w = d.zero_weight()
        for r, k in self.exponents:
            w = wadd(w, wscale(k, d.root_vector(r)))
        return w

    def height(self, d: RootDatum) -> int:
        return sum(k * d.height(r) for r, k in self.exponents)

    def ordered(self, d: RootDatum) -> list[tuple[Root, int]]:
        """Exponents in increasing convex order."""
        pos = {r: n for n, r in enumerate(convex_order(d))}
        return sorted(self.exponents, key=lambda t: pos[t[0]])

    def label(self, d: RootDatum) -> str:
        if not self.exponents:
            return "1"
        return "*".join(f"e{r[0]},{r[1]}" + (f"^{k}" if k > 1 else "") for r, k in reversed(self.ordered(d)))


# root labels


def canonical_root(d: RootDatum, label: Root) -> Root:
    """The reduced positive root label equal (as a weight) to ``label``."""
    if label in d.reduced_positive_roots:
        return label
    if d.mode == "osp":
        alt = (d.prime(label[1]), d.prime(label[0]))
        if alt in d.reduced_positive_roots:
            return alt
    raise ValueError(f"{label} is not a reduced positive root of {d.describe()}")


def _simple_index(d: RootDatum, r: Root) -> int | None:
    try:
        return d.simple_roots.index(r) + 1
    except ValueError:
        return None


def costandard_factorization(d: RootDatum, gamma: Root) -> tuple[Root, Root] | None:
    """(alpha, beta) with e_gamma = [[e_alpha, e_beta]]; ``None`` for simple roots."""
    if gamma not in d.reduced_positive_roots:
        raise ValueError(f"{gamma} is not in the reduced positive system")
    if _simple_index(d, gamma) is not None:
        return None
    i, j = gamma
    s = d.s
    if d.mode == "osp":
        pr = d.prime
        if d.type_tag == "C" and j == pr(i) and i < s:
            return canonical_root(d, (i, s)), canonical_root(d, (i, pr(s)))
        if d.type_tag == "D":
            if j == pr(s) and i < s - 1:
                return canonical_root(d, (i, s - 1)), canonical_root(d, (s - 1, pr(s)))
            if j == pr(i) and i < s:
                return canonical_root(d, (i, s)), canonical_root(d, (i, pr(s)))
    return canonical_root(d, (i, j - 1)), canonical_root(d, (j - 1, j))


# RTT normalizations


def e_normalization(d: RootDatum, i: int, j: int) -> QRat:
    """Scalar c with (l+_ii)^-1 l+_ij = c * e_ij."""
    return q_pow(-d.eps_form(i, i)) * QQ * _sgn(d.p(i) * d.p(j))


def f_normalization(d: RootDatum, i: int, j: int) -> QRat:
    """Scalar c with l-_ji (l-_ii)^-1 = c * f_ji."""
    prefix = sum(d.p(k) for k in range(i, j))
    return -(q_pow(d.eps_form(i, i)) * QQ) * _sgn(prefix + d.p(i) * d.p(j))


class RTTRepModel:
    """Images of RTT elements under l+-_ij -> slices of the evaluated R-matrices.

    This assignment respects every standard RLL relation, so it is a
    representation of the RTT algebra on V.
    """

    def __init__(self, b: RMatrixBundle):
        self.bundle = b
        self.datum = b.datum
        self.Lp, self.Lm = evaluated_L(b)
        self._zero = GradedMatrix.zero(b.datum.N, 1, b.datum.parity)
        self._cache: dict = {}

    def l(self, sign: str, i: int, j: int) -> GradedMatrix:
        src = self.Lp if sign == "+" else self.Lm
        return src.get((i, j), self._zero)

    def qH(self, k: int, sign: int = 1) -> Homog:
        """q^{+-H_k}: the diagonal slice l+-_kk."""
        d = self.datum
        return Homog(self.l("+" if sign > 0 else "-", k, k), d.zero_weight(), 0)

    def qH_pair(self, i: int, j: int, sign: int = 1) -> Homog:
        """q^{+-H_ij} = q^{+-H_i} (q^{+-H_j})^-1."""
        a, b = self.qH(i, sign), self.qH(j, sign)
        return Homog(a.mat * b.mat.inverse(), a.deg, 0)

    def _deg(self, i: int, j: int) -> tuple[Weight, int]:
        d = self.datum
        return tuple(x - y for x, y in zip(d.eps(i), d.eps(j))), (d.p(i) + d.p(j)) % 2

    def e(self, i: int, j: int) -> Homog:
        key = ("e", i, j)
        if key not in self._cache:
            d = self.datum
            if not 1 <= i < j <= d.N:
                raise ValueError(f"e_{i}{j} needs 1 <= i < j <= N")
            m = self.l("+", i, i).inverse() * self.l("+", i, j)
            deg, par = self._deg(i, j)
            self._cache[key] = Homog(m.scale(e_normalization(d, i, j).inverse()), deg, par)
        return self._cache[key]

    def f(self, j: int, i: int) -> Homog:
        key = ("f", j, i)
        if key not in self._cache:
            d = self.datum
            if not 1 <= i < j <= d.N:
                raise ValueError(f"f_{j}{i} needs 1 <= i < j <= N")
            m = self.l("-", j, i) * self.l("-", i, i).inverse()
            deg, par = self._deg(j, i)
            self._cache[key] = Homog(m.scale(f_normalization(d, i, j).inverse()), deg, par)
        return self._cache[key]


@dataclass
class DatumContext:
    """Lazily built objects shared by the checks for one datum."""

    datum: RootDatum
    _dj: dict = field(default_factory=dict, repr=False)
    _rtt: dict = field(default_factory=dict, repr=False)

    @cached_property
    def bundle(self) -> RMatrixBundle:
        return build_R(self.datum)

    @cached_property
    def rep(self) -> FundRep:
        return build_rep(self.datum)

    @cached_property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.datum)

    @cached_property
    def model(self) -> RTTRepModel:
        return RTTRepModel(self.bundle)

    @cached_property
    def sigma_R(self) -> PairingSpec:
        return make_sigma_R(self.bundle, self.alphabet)

    @cached_property
    def sigma_tilde(self) -> PairingSpec:
        return make_sigma_tilde_R(self.bundle, self.alphabet)

    @cached_property
    def sigma_dj(self) -> PairingSpec:
        return make_sigma_DJ(self.datum, self.alphabet)


_CONTEXTS: dict[RootDatum, DatumContext] = {}


def _ctx(d: RootDatum | DatumContext) -> DatumContext:
    if isinstance(d, DatumContext):
        return d
    c = _CONTEXTS.get(d)
    if c is None:
        c = _CONTEXTS[d] = DatumContext(d)
    return c


# root vectors


def _dj_bracket(d: RootDatum, x: tuple[AlgElement, Homog], y: tuple[AlgElement, Homog]) -> tuple[AlgElement, Homog]:
    (wx, hx), (wy, hy) = x, y
    c = q_pow(d.form(hx.deg, hy.deg)) * _sgn(hx.par * hy.par)
    return wx * wy - (wy * wx).scale(c), qbracket(d, hx, hy)


def dj_root_vector(d: RootDatum | DatumContext, gamma: Root, side: str) -> RootVector:
    """e_gamma / f_gamma from iterated q-brackets along costandard factorizations."""
    if side not in ("e", "f"):
        raise ValueError(f"side must be 'e' or 'f', got {side!r}")
    ctx = _ctx(d)
    dd = ctx.datum
    key = (gamma, side)
    hit = ctx._dj.get(key)
    if hit is not None:
        return hit
    split = costandard_factorization(dd, gamma)
    A, rep = ctx.alphabet, ctx.rep
    if split is None:
        k = _simple_index(dd, gamma)
        if side == "e":
            word, h = AlgElement.word((A.e(k),)), rep.E(k)
        else:
            word, h = AlgElement.word((A.f(k),)), rep.F(k)
    else:
        a, b = (dj_root_vector(ctx, r, side) for r in split)
        ha = Homog(a.rep_matrix, _side_deg(dd, a.root, side), dd.root_parity(a.root))
        hb = Homog(b.rep_matrix, _side_deg(dd, b.root, side), dd.root_parity(b.root))
        word, h = _dj_bracket(dd, (a.word, ha), (b.word, hb))
        if side == "f":
            c = -q_pow(-dd.form(dd.root_vector(a.root), dd.root_vector(b.root))) * _sgn(ha.par * hb.par)
            word, h = word.scale(c), h.scale(c)
    rv = RootVector(gamma, side, word, h.mat)
    ctx._dj[key] = rv
    return rv


def _side_deg(d: RootDatum, r: Root, side: str) -> Weight:
    v = d.root_vector(r)
    return v if side == "e" else wscale(-1, v)


def rtt_root_vector(d: RootDatum | DatumContext, gamma: Root, side: str) -> RootVector:
    """Normalized Gauss word for e_ij (side 'e') or f_ji (side 'f')."""
    if side not in ("e", "f"):
        raise ValueError(f"side must be 'e' or 'f', got {side!r}")
    ctx = _ctx(d)
    dd = ctx.datum
    key = (gamma, side)
    hit = ctx._rtt.get(key)
    if hit is not None:
        return hit
    i, j = gamma
    if not 1 <= i < j <= dd.N:
        raise ValueError(f"root label {gamma} needs 1 <= i < j <= N")
    A = ctx.alphabet
    if side == "e":
        word = AlgElement.word((A.l_inv("+", i), A.lp(i, j)), e_normalization(dd, i, j).inverse())
        mat = ctx.model.e(i, j).mat
    else:
        word = AlgElement.word((A.lm(j, i), A.l_inv("-", i)), f_normalization(dd, i, j).inverse())
        mat = ctx.model.f(j, i).mat
    rv = RootVector(gamma, side, word, mat)
    ctx._rtt[key] = rv
    return rv


# correspondence


def xi_simple_images(d: RootDatum | DatumContext) -> list[tuple[int, Root, QRat, QRat]]:
    """Per simple index k: (k, RTT label, c_e, c_f) with xi(e_k) = c_e e_label, xi(f_k) = c_f f_label'."""
    ctx = _ctx(d)
    dd = ctx.datum
    out = []
    for k, r in enumerate(dd.simple_roots, start=1):
        ce = cf = ONE
        if dd.mode == "osp" and dd.type_tag == "C" and k == dd.s:
            ce, cf = (ONE + Q * Q).inverse(), Q
        out.append((k, r, ce, cf))
    return out


def composite_prefactor(d: RootDatum, gamma: Root) -> QRat | None:
    """Scalar p with xi(e_gamma) = p e_gamma for the displayed cases, else ``None``."""
    i, j = gamma
    if d.mode == "gl":
        return ONE
    s = d.s
    t = d.type_tag
    if t == "B" and j <= s + 1:
        return ONE
    if t in ("C", "D") and j <= s:
        return ONE
    jj = d.prime(j)  # gamma = eps_i + eps_jj
    if not (i < jj <= s):
        return None
    prod_ = 1
    for k in range(jj, s + 1):
        prod_ *= -_sgn(d.p(k) * (d.p(k) + d.p(k + 1)))
    if t == "B":
        return QRat.from_int(d.th(jj) * d.th(s + 1) * prod_)
    return QRat.from_int(-d.th(jj) * d.th(s) * prod_)


def _composite_f_prefactor(d: RootDatum, gamma: Root) -> QRat | None:
    p = composite_prefactor(d, gamma)
    if p is None or d.mode == "gl" or d.type_tag != "C":
        return p
    if d.prime(gamma[1]) <= d.s and gamma[0] < d.prime(gamma[1]):
        return p * (Q + Q.inverse())
    return p


def _eval_dj_word(ctx: DatumContext, word: AlgElement, images: dict) -> GradedMatrix:
    dd = ctx.datum
    tot = GradedMatrix.zero(dd.N, 1, dd.parity)
    for w, c in word.terms.items():
        m = GradedMatrix.identity(dd.N, 1, dd.parity)
        for let in w:
            m = m * images[(let.kind, let.i)]
        tot = tot + m.scale(c)
    return tot


def correspondence_check(d: RootDatum | DatumContext) -> list[dict]:
    ctx = _ctx(d)
    dd = ctx.datum
    rep, model = ctx.rep, ctx.model
    osp = dd.mode == "osp"
    rows: list[dict] = []

    def rec(name: str, ok: bool, **extra) -> None:
        rows.append({"name": name, "status": "pass" if ok else "fail", **extra})

    def cart(k: int, sign: int) -> GradedMatrix:
        return rep.cartan_H(k, sign)

    # images of the diagonal and simple-root generators under the slice map
    for k in range(1, dd.N + 1):
        rec(f"image[l+{k}{k}]", model.l("+", k, k) == cart(k, -1))
        rec(f"image[l-{k}{k}]", model.l("-", k, k) == cart(k, 1))
    for k, (i, j) in enumerate(dd.simple_roots, start=1):
        rec(f"image[l+{i},{j}]", model.l("+", i, j) == (rep.f[k] * cart(j, -1)).scale(-QQ))
        if osp and dd.type_tag == "C" and k == dd.s:
            want = (cart(dd.prime(dd.s), 1) * rep.e[k]).scale(-(Q * Q - Q.inverse() * Q.inverse()))
        else:
            want = (cart(j, 1) * rep.e[k]).scale(QQ * _sgn(dd.p(j)))
        rec(f"image[l-{j},{i}]", model.l("-", j, i) == want)

    # roundtrip scalars along phi_F^-1, xi, omega_R^-1 and the slice map
    for k, (a, b), ce, cf in xi_simple_images(ctx):
        g = dd.simple_root_vector(k)
        scal = dd.form(dd.eps(b), g)
        if osp and dd.type_tag == "C" and k == dd.s:
            e_img = model.f(b, a).scale(ce) * model.qH_pair(a, b, -1)
            f_img = model.qH_pair(a, b, 1) * model.e(a, b).scale(cf)
        else:
            pa, pb = dd.p(a), dd.p(b)
            c1 = -q_pow(dd.eps_form(a, a)) * _sgn(pa * pb + pa + pb)
            c2 = -q_pow(-dd.eps_form(a, a)) * _sgn(pa * pb)
            e_img = model.f(b, a).scale(c1) * model.qH_pair(a, b, -1)
            f_img = model.qH_pair(a, b, 1) * model.e(a, b).scale(c2)
        rec(f"roundtrip[e{k}]", e_img.mat == rep.e[k].scale(q_pow(scal)), scalar=f"q^{scal}")
        rec(f"roundtrip[f{k}]", f_img.mat == rep.f[k].scale(q_pow(-scal)), scalar=f"q^{-scal}")
    ncart = dd.N if dd.mode == "gl" else dd.s + 1
    for k in range(1, ncart + 1):
        for sign in (1, -1):
            # q^{+-H_k} -> q^{-+H_k} in RTT, which the slice map sends back to q^{+-H_k}
            rec(f"roundtrip[qH{k}{'+' if sign > 0 else '-'}]", model.qH(k, -sign).mat == cart(k, sign))

    # xi on all root vectors: the DJ word in xi(e_k), xi(f_k) against the RTT root vector
    e_imgs, f_imgs = {}, {}
    for k, (a, b), ce, cf in xi_simple_images(ctx):
        e_imgs[("e", k)] = model.e(a, b).mat.scale(ce)
        f_imgs[("f", k)] = model.f(b, a).mat.scale(cf)
    for gamma in convex_order(dd):
        pe = composite_prefactor(dd, gamma)
        if pe is None:
            rows.append({"name": f"xi[{gamma[0]},{gamma[1]}]", "status": "skipped", "reason": "no closed-form prefactor"})
            continue
        pf = _composite_f_prefactor(dd, gamma)
        ev = _eval_dj_word(ctx, dj_root_vector(ctx, gamma, "e").word, e_imgs)
        fv = _eval_dj_word(ctx, dj_root_vector(ctx, gamma, "f").word, f_imgs)
        rec(f"xi[e{gamma[0]},{gamma[1]}]", ev == model.e(*gamma).mat.scale(pe))
        rec(f"xi[f{gamma[0]},{gamma[1]}]", fv == model.f(gamma[1], gamma[0]).mat.scale(pf))
    if osp and dd.type_tag == "D":
        rec("vanishing[e_ss']", model.e(dd.s, dd.prime(dd.s)).mat.is_zero())
    return rows


# PBW


def _capped(d: RootDatum, r: Root) -> bool:
    return d.is_isotropic(r)


def pbw_enumerate(d: RootDatum, height: int = 4, degree: Weight | None = None) -> list[PBWMonomial]:
    """All admissible monomials of total height <= ``height`` (optionally of one degree)."""
    if height < 0:
        raise ValueError("height bound must be non-negative")
    roots = convex_order(d)
    hs = [d.height(r) for r in roots]
    out: list[PBWMonomial] = []

    def rec(idx: int, left: int, cur: dict) -> None:
        if idx == len(roots):
            m = PBWMonomial.from_map(cur)
            if degree is None or m.degree(d) == tuple(degree):
                out.append(m)
            return
        r, h = roots[idx], hs[idx]
        top = left // h
        if _capped(d, r):
            top = min(top, 1)
        for k in range(top + 1):
            if k:
                cur[r] = k
            rec(idx + 1, left - k * h, cur)
            cur.pop(r, None)

    rec(0, height, {})
    return out


def _is_long_composite(d: RootDatum, r: Root) -> bool:
    return d.mode == "osp" and d.type_tag in ("C", "D") and r[1] == d.prime(r[0]) and r[0] < d.s


def rtt_long_bracket(d: RootDatum | DatumContext, gamma: Root, side: str) -> AlgElement:
    """Word for a long root (i, i') as the q-bracket of the RTT vectors at (i, s) and (i, s')."""
    ctx = _ctx(d)
    dd = ctx.datum
    if not _is_long_composite(dd, gamma):
        raise ValueError(f"{gamma} is not a composite long root")
    a, b = costandard_factorization(dd, gamma)
    va, vb = dd.root_vector(a), dd.root_vector(b)
    sg = _sgn(dd.root_parity(a) * dd.root_parity(b))
    x, y = rtt_root_vector(ctx, a, side).word, rtt_root_vector(ctx, b, side).word
    w = x * y - (y * x).scale(q_pow(dd.form(va, vb)) * sg)
    if side == "f":
        w = w.scale(-q_pow(-dd.form(va, vb)) * sg)
    return w


def pbw_word(
    d: RootDatum | DatumContext, m: PBWMonomial, side: str, kind: str = "rtt", long_roots: str = "gauss"
) -> AlgElement:
    """Ordered product with larger roots on the left.

    ``long_roots='bracket'`` replaces composite C/D long roots by :func:`rtt_long_bracket`.
    """
    ctx = _ctx(d)
    build = rtt_root_vector if kind == "rtt" else dj_root_vector
    out = AlgElement.one()
    for r, k in reversed(m.ordered(ctx.datum)):
        if kind == "rtt" and long_roots == "bracket" and _is_long_composite(ctx.datum, r):
            w = rtt_long_bracket(ctx, r, side)
        else:
            w = build(ctx, r, side).word
        for _ in range(k):
            out = out * w
    return out


def chi(d: RootDatum, m: PBWMonomial) -> int:
    ex = m.ordered(d)
    tot = 0
    for a in range(len(ex)):
        ra, ka = ex[a]
        pa = d.root_parity(ra)
        tot += (ka * (ka - 1) // 2) * pa
        for b in range(a + 1, len(ex)):
            rb, kb = ex[b]
            tot += ka * kb * pa * d.root_parity(rb)
    return tot


def c_scalar(d: RootDatum, r: Root, p: int) -> QRat:
    """C_{gamma,p} = prod_{k=1}^p (1 - x^k) / (1 - x) with x = (-1)^|e| q^((gamma,gamma))."""
    v = d.root_vector(r)
    x = q_pow(d.form(v, v)) * _sgn(d.root_parity(r))
    out = ONE
    for k in range(1, p + 1):
        out = out * (ONE - x**k) / (ONE - x)
    return out


def _det(rows: list[list[QRat]]) -> QRat:
    n = len(rows)
    a = [list(r) for r in rows]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inverse()
        for r in range(c + 1, n):
            if not a[r][c].is_zero():
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def gram_check(
    d: RootDatum | DatumContext, height: int = 4, degree: Weight | None = None, long_roots: str = "gauss"
) -> list[dict]:
    """Brute-force Gram matrices of dual PBW words against the closed form, per degree.

    ``long_roots`` selects the root vectors for composite C/D long roots: the
    normalized Gauss slice (``'gauss'``) or the q-bracket (``'bracket'``).
    """
    if long_roots not in ("gauss", "bracket"):
        raise ValueError(f"long_roots must be 'gauss' or 'bracket', got {long_roots!r}")
    ctx = _ctx(d)
    dd = ctx.datum
    spec = ctx.sigma_tilde
    unit = {r: PBWMonomial(((r, 1),)) for r in convex_order(dd)}
    single = {
        r: pair(spec, pbw_word(ctx, m, "f", long_roots=long_roots), pbw_word(ctx, m, "e", long_roots=long_roots))
        for r, m in unit.items()
    }
    groups: dict[Weight, list[PBWMonomial]] = {}
    for m in pbw_enumerate(dd, height, degree):
        if m.exponents:
            groups.setdefault(m.degree(dd), []).append(m)
    rows = []
    for deg in sorted(groups, key=lambda w: (sum(abs(x) for x in w), w)):
        mons = groups[deg]
        fw = [pbw_word(ctx, m, "f", long_roots=long_roots) for m in mons]
        ew = [pbw_word(ctx, m, "e", long_roots=long_roots) for m in mons]
        gram = [[pair(spec, fw[a], ew[b]) for b in range(len(mons))] for a in range(len(mons))]
        bad = None
        for a, ma in enumerate(mons):
            for b, mb in enumerate(mons):
                want = ZERO
                if ma == mb:
                    want = QRat.from_int(_sgn(chi(dd, ma)))
                    for r, k in ma.exponents:
                        want = want * c_scalar(dd, r, k) * single[r] ** k
                if gram[a][b] != want:
                    bad = bad or f"({ma.label(dd)}, {mb.label(dd)}): got {gram[a][b]}, closed form {want}"
        invertible = not _det(gram).is_zero()
        row = {
            "name": f"gram{list(deg)}",
            "status": "pass" if bad is None and invertible else "fail",
            "size": len(mons),
        }
        if bad:
            row["witness"] = bad
        elif not invertible:
            row["witness"] = "singular Gram matrix"
        rows.append(row)
    return rows


# R_u factorization


def _local_factor(ctx: DatumContext, r: Root) -> tuple[GradedMatrix, list[QRat]]:
    dd = ctx.datum
    e = dj_root_vector(ctx, r, "e")
    f = dj_root_vector(ctx, r, "f")
    I = GradedMatrix.identity(dd.N, 1, dd.parity)
    out = GradedMatrix.identity(dd.N, 2, dd.parity)
    ek, fk = I, I
    ew, fw = AlgElement.one(), AlgElement.one()
    denoms = []
    k = 0
    cap = 1 if _capped(dd, r) else None
    while cap is None or k < cap:
        k += 1
        ek, fk = ek * e.rep_matrix, fk * f.rep_matrix
        ew, fw = ew * e.word, fw * f.word
        if ek.is_zero() or fk.is_zero():
            break
        c = pair(ctx.sigma_dj, fw, ew)
        if c.is_zero():
            raise ZeroDivisionError(f"pairing denominator (f^{k}, e^{k}) vanishes at root {r}")
        denoms.append(c)
        out = out + kron(ek, fk).scale(c.inverse())
    return out, denoms


def verify_ru_factorization(d: RootDatum | DatumContext) -> list[dict]:
    ctx = _ctx(d)
    dd = ctx.datum
    b = ctx.bundle
    M = GradedMatrix.identity(dd.N, 2, dd.parity)
    denoms = {}
    for r in reversed(convex_order(dd)):
        F, cs = _local_factor(ctx, r)
        denoms[r] = cs
        M = M @ F
    rows = []
    row = {"name": "ru_factorization", "status": "pass" if M == b.R_u else "fail", "roots": len(denoms)}
    if M != b.R_u:
        row["witness"] = str(M.first_difference(b.R_u))
    rows.append(row)
    # R_s from the Cartan exponent: q^{-sum_k sign_k H_k (x) H_k}, with the central term in osp mode
    ent = {}
    for a in range(1, dd.N + 1):
        for c in range(1, dd.N + 1):
            ha, hc = dd.eps_tilde(a), dd.eps_tilde(c)
            ent[((a, c), (a, c))] = q_pow(-sum(s * x * y for s, x, y in zip(dd.form_diag, ha, hc)))
    Rs = GradedMatrix(dd.N, 2, dd.parity, ent)
    rows.append({"name": "rs_closed_form", "status": "pass" if Rs == b.R_s else "fail"})
    return rows


def iter_simple_pairings(d: RootDatum | DatumContext) -> Iterator[tuple[str, QRat, QRat]]:
    """(label, sigma_R(xi(e_k), xi(f_k)), sigma~_R(xi(f_k), xi(e_k))) per simple index."""
    ctx = _ctx(d)
    for k, (a, b), ce, cf in xi_simple_images(ctx):
        e = rtt_root_vector(ctx, (a, b), "e").word.scale(ce)
        f = rtt_root_vector(ctx, (a, b), "f").word.scale(cf)
        yield f"{a},{b}", pair(ctx.sigma_R, e, f), pair(ctx.sigma_tilde, f, e)
