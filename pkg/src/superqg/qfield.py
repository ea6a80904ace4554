"""Exact arithmetic in the rational function field Q(q).

Values are stored as a reduced quotient of integer polynomials backed by
FLINT.  Laurent monomials such as ``q**-3`` are ordinary quotients whose
denominator is a power of ``q``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from flint import fmpq, fmpz_poly

__all__ = ["QRat", "Q", "ONE", "ZERO", "q_pow", "as_qrat", "eval_at", "parse_qrat"]

_ZERO_POLY = fmpz_poly([])
_ONE_POLY = fmpz_poly([1])
_X = fmpz_poly([0, 1])

Scalar = Union["QRat", int, Fraction]


class QRat:
    """An element of Q(q) in canonical form.

    The denominator has positive leading coefficient, numerator and
    denominator are coprime in Z[q], and the combined integer content is 1.
    Rational constants are folded into the integer polynomials.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: fmpz_poly, den: fmpz_poly = _ONE_POLY, *, _reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash: int | None = None

    # construction helpers

    @classmethod
    def from_int(cls, n: int) -> QRat:
        return cls(fmpz_poly([n]), _ONE_POLY, _reduced=True)

    @classmethod
    def from_fraction(cls, x: Fraction) -> QRat:
        return cls(fmpz_poly([x.numerator]), fmpz_poly([x.denominator]), _reduced=True)

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def parity(self) -> int:
        return 0

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # arithmetic

    def __add__(self, other: Scalar) -> QRat:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.is_one():
                return QRat(self.num + o.num, _ONE_POLY, _reduced=True)
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> QRat:
        return QRat(-self.num, self.den, _reduced=True)

    def __sub__(self, other: Scalar) -> QRat:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> QRat:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalar) -> QRat:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return QRat(self.num * o.num, _ONE_POLY, _reduced=True)
        return QRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> QRat:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRat(self.den, self.num)

    def __truediv__(self, other: Scalar) -> QRat:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> QRat:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> QRat:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return QRat(self.num**k, self.den**k, _reduced=True)

    # comparison and hashing

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)  # type: ignore[arg-type]
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()), tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # text form

    def __str__(self) -> str:
        n = _poly_str(self.num)
        if self.den.is_one():
            return n
        return f"({n}) / ({_poly_str(self.den)})"

    def __repr__(self) -> str:
        return f"QRat('{self}')"

    def __reduce__(self):
        return (parse_qrat, (str(self),))


def _reduce(num: fmpz_poly, den: fmpz_poly) -> tuple[fmpz_poly, fmpz_poly]:
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _coerce(x: object) -> QRat | None:
    if isinstance(x, QRat):
        return x
    if isinstance(x, int):
        return QRat.from_int(x)
    if isinstance(x, Fraction):
        return QRat.from_fraction(x)
    return None


def as_qrat(x: Scalar) -> QRat:
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return o


def _poly_str(p: fmpz_poly) -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    parts: list[str] = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


Q = QRat(_X, _ONE_POLY, _reduced=True)
ONE = QRat.from_int(1)
ZERO = QRat.from_int(0)


def q_pow(k: int) -> QRat:
    """The Laurent monomial q**k."""
    if k >= 0:
        return QRat(fmpz_poly([0] * k + [1]), _ONE_POLY, _reduced=True)
    return QRat(_ONE_POLY, fmpz_poly([0] * (-k) + [1]), _reduced=True)


def eval_at(a: QRat, t: Fraction | int) -> Fraction:
    """Substitute the exact rational ``t`` for q."""
    t = fmpq(Fraction(t).numerator, Fraction(t).denominator)
    d = a.den(t)
    if d == 0:
        raise ZeroDivisionError(f"pole of {a} at q = {t}")
    v = a.num(t) / d
    return Fraction(int(v.p), int(v.q))


_TERM = re.compile(r"\s*([+-]?)\s*(\d+)?\s*(\*)?\s*(q(?:\s*\^\s*(-?\d+))?)?\s*")


def _parse_laurent(text: str) -> QRat:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, digits, star, mono, exp = m.groups()
        if not first and not sign:
            raise ValueError(f"missing operator near {text[pos:]!r}")
        if digits is None and mono is None:
            raise ValueError(f"empty term near {text[pos:]!r}")
        if star and (digits is None or mono is None):
            raise ValueError(f"dangling '*' near {text[pos:]!r}")
        c = int(digits) if digits is not None else 1
        if sign == "-":
            c = -c
        e = 0 if mono is None else (int(exp) if exp is not None else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    if not coeffs:
        raise ValueError("empty polynomial")
    low, top = min(min(coeffs), 0), max(coeffs)
    poly = fmpz_poly([coeffs.get(e, 0) for e in range(low, top + 1)])
    return QRat(poly) * q_pow(low)


def parse_qrat(text: str) -> QRat:
    """Inverse of ``str``: accepts ``"3*q^2 - 1"``, ``"q^-2"`` or ``"(p) / (r)"``."""
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i
    if split is None:
        return _parse_laurent(text)
    num = _parse_laurent(text[:split])
    den = _parse_laurent(text[split + 1 :])
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in parsed rational function")
    return num / den
