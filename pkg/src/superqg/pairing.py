"""Skew pairings between free superbialgebras, evaluated recursively.

Word pairs are reduced to letter pairs with

    (x a', b) = sum (-1)^(|a'||b1|) (x, b1) (a', b2)      over Delta(b)
    (a, y b') = sum (a2, y) (a1, b')                      over Delta(a)

and memoized per pairing.  Pairs whose total weight is nonzero vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .freealg import AlgElement, Alphabet, Letter, Word
from .qfield import ONE, ZERO, Q, QRat, q_pow
from .rmatrix import RMatrixBundle
from .rootdata import RootDatum

__all__ = [
    "PairingSpec",
    "PairingError",
    "make_sigma_R",
    "make_sigma_tilde_R",
    "make_sigma_DJ",
    "pair",
    "pair_words",
    "pair_words_naive",
    "verify_convolution",
]


class PairingError(ValueError):
    """Raised when group-like rules cannot determine a base value."""


@dataclass
class PairingSpec:
    name: str
    alphabet: Alphabet
    left_letters: list[Letter]
    right_letters: list[Letter]
    raw: Callable[[Letter, Letter], QRat]
    memo: dict = field(default_factory=dict, repr=False)

    def base(self, x: Letter, y: Letter) -> QRat:
        if not (x.inv or y.inv):
            return self.raw(x, y)
        if not (x.grouplike and y.grouplike):
            return ZERO
        v = self.raw(self.alphabet.inverse_letter(x) if x.inv else x, self.alphabet.inverse_letter(y) if y.inv else y)
        if x.inv and y.inv:
            return v
        if v.is_zero():
            raise PairingError(f"cannot pair {x!r} with {y!r}: group-like base value vanishes")
        return v.inverse()


def _zero_weight(w) -> bool:
    return not any(w)


def pair_words(spec: PairingSpec, a: Word, b: Word) -> QRat:
    A = spec.alphabet
    if not a:
        return ONE if A.word_counit(b) else ZERO
    if not b:
        return ONE if A.word_counit(a) else ZERO
    da, db = A.degree(a), A.degree(b)
    if any(x + y for x, y in zip(da, db)):
        return ZERO
    key = (a, b)
    hit = spec.memo.get(key)
    if hit is not None:
        return hit
    if len(a) == 1 and len(b) == 1:
        val = spec.base(a[0], b[0])
    elif len(a) >= len(b):
        x, rest = a[:1], a[1:]
        prest = Alphabet.parity(rest)
        val = ZERO
        for (b1, b2), c in A.word_coproduct(b):
            if any(u + v for u, v in zip(x[0].deg, A.degree(b1))):
                continue
            v1 = pair_words(spec, x, b1)
            if v1.is_zero():
                continue
            v2 = pair_words(spec, rest, b2)
            if v2.is_zero():
                continue
            t = c * v1 * v2
            if prest and Alphabet.parity(b1):
                t = -t
            val = val + t
    else:
        y, rest = b[:1], b[1:]
        val = ZERO
        for (a1, a2), c in A.word_coproduct(a):
            if any(u + v for u, v in zip(y[0].deg, A.degree(a2))):
                continue
            v1 = pair_words(spec, a2, y)
            if v1.is_zero():
                continue
            v2 = pair_words(spec, a1, rest)
            if v2.is_zero():
                continue
            val = val + c * v1 * v2
    spec.memo[key] = val
    return val


def pair_words_naive(spec: PairingSpec, a: Word, b: Word) -> QRat:
    """Unmemoized reference: always peel the left word, never prune."""
    A = spec.alphabet
    if not a:
        return ONE if A.word_counit(b) else ZERO
    if not b:
        return ONE if A.word_counit(a) else ZERO
    if len(a) == 1:
        if len(b) == 1:
            return spec.base(a[0], b[0])
        y, rest = b[:1], b[1:]
        tot = ZERO
        for (a1, a2), c in A.word_coproduct(a):
            tot = tot + c * pair_words_naive(spec, a2, y) * pair_words_naive(spec, a1, rest)
        return tot
    x, rest = a[:1], a[1:]
    prest = Alphabet.parity(rest)
    tot = ZERO
    for (b1, b2), c in A.word_coproduct(b):
        t = c * pair_words_naive(spec, x, b1) * pair_words_naive(spec, rest, b2)
        if prest and Alphabet.parity(b1):
            t = -t
        tot = tot + t
    return tot


def pair(spec: PairingSpec, a: AlgElement, b: AlgElement) -> QRat:
    tot = ZERO
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            v = pair_words(spec, wa, wb)
            if not v.is_zero():
                tot = tot + ca * cb * v
    return tot


def _sign(x: int) -> int:
    return -1 if x % 2 else 1


def make_sigma_R(b: RMatrixBundle, alphabet: Alphabet | None = None) -> PairingSpec:
    A = alphabet or Alphabet(b.datum)
    d = b.datum

    def raw(x: Letter, y: Letter) -> QRat:
        if x.kind != "l+" or y.kind != "l-":
            raise ValueError(f"sigma_R pairs l+ letters with l- letters, got {x!r}, {y!r}")
        i, j, k, l = x.i, x.j, y.i, y.j
        v = b.entry(i, j, k, l)
        if v is None:
            return ZERO
        return v * _sign((d.p(i) + d.p(j)) * (d.p(k) + d.p(l)))

    return PairingSpec("sigmaR", A, A.plus_letters(), A.minus_letters(), raw)


def make_sigma_tilde_R(b: RMatrixBundle, alphabet: Alphabet | None = None) -> PairingSpec:
    A = alphabet or Alphabet(b.datum)
    d = b.datum

    def raw(x: Letter, y: Letter) -> QRat:
        if x.kind != "l-" or y.kind != "l+":
            raise ValueError(f"sigma~_R pairs l- letters with l+ letters, got {x!r}, {y!r}")
        c, dd, a, bb = x.i, x.j, y.i, y.j
        v = b.inv_entry(a, bb, c, dd)
        if v is None:
            return ZERO
        # (l-_cd, l+_ab) = (-1)^(|ab||cd|) (R^-1)_{ab,cd}; fixed by the convolution identity
        return v * _sign((d.p(a) + d.p(bb)) * (d.p(c) + d.p(dd)))

    return PairingSpec("sigmaTildeR", A, A.minus_letters(), A.plus_letters(), raw)


def make_sigma_DJ(d: RootDatum, alphabet: Alphabet | None = None) -> PairingSpec:
    A = alphabet or Alphabet(d)
    qm = Q.inverse() - Q

    def raw(x: Letter, y: Letter) -> QRat:
        if x.kind == "K" and y.kind == "K":
            return q_pow(-d.form(x.weight, y.weight))
        if x.kind == "f" and y.kind == "e":
            if x.i != y.i:
                return ZERO
            return qm.inverse() * _sign(x.par * y.par)
        if x.kind in ("f", "K") and y.kind in ("e", "K"):
            return ZERO
        raise ValueError(f"DJ pairing takes (f or K, e or K) letters, got {x!r}, {y!r}")

    left = [A.f(i) for i in range(1, d.rank + 1)]
    right = [A.e(i) for i in range(1, d.rank + 1)]
    return PairingSpec("dj", A, left, right, raw)


def verify_convolution(s: PairingSpec, s_inv: PairingSpec, max_len: int = 2) -> list[dict]:
    """Check that ``s_inv`` (transposed) is the convolution inverse of ``s``.

    For all word pairs (a, b) of weight zero up to ``max_len`` letters per side,
    both convolution orders must return eps(a) eps(b).
    """
    A = s.alphabet
    lefts = list(A.words(s.left_letters, max_len))
    rights = list(A.words(s.right_letters, max_len))
    by_deg: dict = {}
    for w in rights:
        by_deg.setdefault(A.degree(w), []).append(w)

    def inv_pair(a: Word, b: Word) -> QRat:
        return pair_words(s_inv, b, a)

    rows = []
    failures = 0
    checked = 0
    for a in lefts:
        neg = tuple(-x for x in A.degree(a))
        da = A.word_coproduct(a)
        for b in by_deg.get(neg, ()):
            db = A.word_coproduct(b)
            target = ONE if (A.word_counit(a) and A.word_counit(b)) else ZERO
            lhs = rhs = ZERO
            for (a1, a2), ca in da:
                pa2 = Alphabet.parity(a2)
                for (b1, b2), cb in db:
                    sg = -1 if pa2 and Alphabet.parity(b1) else 1
                    c = ca * cb * sg
                    x = pair_words(s, a1, b1)
                    if not x.is_zero():
                        y = inv_pair(a2, b2)
                        if not y.is_zero():
                            lhs = lhs + c * x * y
                    x = inv_pair(a1, b1)
                    if not x.is_zero():
                        y = pair_words(s, a2, b2)
                        if not y.is_zero():
                            rhs = rhs + c * x * y
            checked += 1
            if lhs != target or rhs != target:
                failures += 1
                if failures <= 5:
                    rows.append({"name": "convolution", "status": "fail", "witness": f"{a!r} | {b!r}"})
    rows.append({"name": f"convolution[{checked} pairs]", "status": "pass" if failures == 0 else "fail"})
    return rows
