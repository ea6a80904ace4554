"""Free superalgebras on graded letters, with coproduct and counit.

Two alphabets live here.  The matrix-coefficient side has letters
``l+_ij`` (i <= j), ``l-_ij`` (i >= j) and formal inverses of the diagonal
ones.  The Chevalley side has ``e_i``, ``f_i`` and group-like Cartan
letters ``K(w)`` labelled by a weight ``w``.  Letters are interned per
alphabet so words are cheap tuples usable as memo keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .qfield import ONE, QRat, as_qrat
from .rootdata import RootDatum, Weight, wadd, wscale

__all__ = ["Letter", "Alphabet", "AlgElement", "TensorElement", "Word", "parse_word"]


@dataclass(frozen=True, eq=False)
class Letter:
    kind: str  # "l+", "l-", "e", "f", "K"
    i: int
    j: int
    inv: bool
    weight: Weight
    deg: Weight
    par: int
    order: tuple
    owner: "Alphabet" = field(repr=False, default=None)

    @property
    def grouplike(self) -> bool:
        return self.kind == "K" or (self.kind in ("l+", "l-") and self.i == self.j)

    def __repr__(self) -> str:
        if self.kind == "K":
            return f"K{list(self.weight)}"
        if self.kind in ("e", "f"):
            return f"{self.kind}{self.i}"
        base = f"{self.kind}{self.i}{self.j}" if max(self.i, self.j) < 10 else f"{self.kind}({self.i},{self.j})"
        return base + ("^-1" if self.inv else "")

    def __lt__(self, other: Letter) -> bool:
        return self.order < other.order


Word = tuple[Letter, ...]


class Alphabet:
    """Letter factory and structure maps for one root datum."""

    def __init__(self, d: RootDatum):
        self.d = d
        self._letters: dict[tuple, Letter] = {}
        self._deg: dict[Word, Weight] = {}
        self._cop: dict[Word, TensorElement] = {}
        self.zero_w = d.zero_weight()

    # letters

    def _make(self, kind: str, i: int = 0, j: int = 0, inv: bool = False, weight: Weight = ()) -> Letter:
        key = (kind, i, j, inv, weight)
        let = self._letters.get(key)
        if let is None:
            d = self.d
            if kind in ("l+", "l-"):
                deg = tuple(a - b for a, b in zip(d.eps(i), d.eps(j)))
                par = (d.p(i) + d.p(j)) % 2
            elif kind == "e":
                deg, par = d.simple_root_vector(i), d.simple_root_parity(i)
            elif kind == "f":
                deg, par = wscale(-1, d.simple_root_vector(i)), d.simple_root_parity(i)
            else:
                deg, par = self.zero_w, 0
            rank = {"l+": 0, "l-": 1, "f": 2, "e": 3, "K": 4}[kind]
            let = Letter(kind, i, j, inv, weight, deg, par, (rank, i, j, inv, weight), self)
            self._letters[key] = let
        return let

    def lp(self, i: int, j: int) -> Letter:
        if i > j:
            raise ValueError(f"l+_{i}{j} is zero by convention")
        return self._make("l+", i, j)

    def lm(self, i: int, j: int) -> Letter:
        if i < j:
            raise ValueError(f"l-_{i}{j} is zero by convention")
        return self._make("l-", i, j)

    def l(self, sign: str, i: int, j: int) -> Letter:
        return self.lp(i, j) if sign == "+" else self.lm(i, j)

    def l_inv(self, sign: str, i: int) -> Letter:
        return self._make("l+" if sign == "+" else "l-", i, i, True)

    def e(self, i: int) -> Letter:
        return self._make("e", i)

    def f(self, i: int) -> Letter:
        return self._make("f", i)

    def K(self, weight: Weight) -> Letter:
        return self._make("K", weight=tuple(weight))

    def inverse_letter(self, let: Letter) -> Letter:
        if not let.grouplike:
            raise ValueError(f"{let!r} is not group-like")
        if let.kind == "K":
            return self.K(wscale(-1, let.weight))
        return self._make(let.kind, let.i, let.j, not let.inv)

    def plus_letters(self, with_inverses: bool = True) -> list[Letter]:
        N = self.d.N
        out = [self.lp(i, j) for i in range(1, N + 1) for j in range(i, N + 1)]
        if with_inverses:
            out += [self.l_inv("+", i) for i in range(1, N + 1)]
        return out

    def minus_letters(self, with_inverses: bool = True) -> list[Letter]:
        N = self.d.N
        out = [self.lm(i, j) for i in range(1, N + 1) for j in range(1, i + 1)]
        if with_inverses:
            out += [self.l_inv("-", i) for i in range(1, N + 1)]
        return out

    # degrees

    def degree(self, w: Word) -> Weight:
        deg = self._deg.get(w)
        if deg is None:
            deg = self.zero_w
            for let in w:
                deg = wadd(deg, let.deg)
            self._deg[w] = deg
        return deg

    @staticmethod
    def parity(w: Word) -> int:
        return sum(let.par for let in w) % 2

    # structure maps

    def letter_coproduct(self, let: Letter) -> TensorElement:
        d = self.d
        t: dict = {}
        if let.grouplike and (let.kind == "K" or let.inv or let.i == let.j):
            t[((let,), (let,))] = ONE
        elif let.kind in ("l+", "l-"):
            i, j = let.i, let.j
            lo, hi = (i, j) if let.kind == "l+" else (j, i)
            sign_char = "+" if let.kind == "l+" else "-"
            for k in range(lo, hi + 1):
                sgn = -1 if (d.p(i) + d.p(k)) * (d.p(k) + d.p(j)) % 2 else 1
                t[((self.l(sign_char, i, k),), (self.l(sign_char, k, j),))] = QRat.from_int(sgn)
        elif let.kind == "e":
            t[((self.K(d.simple_root_vector(let.i)),), (let,))] = ONE
            t[((let,), ())] = ONE
        elif let.kind == "f":
            t[((), (let,))] = ONE
            t[((let,), (self.K(wscale(-1, d.simple_root_vector(let.i))),))] = ONE
        else:
            raise ValueError(f"unknown letter {let!r}")
        return TensorElement(t)

    def word_coproduct(self, w: Word) -> TensorElement:
        res = self._cop.get(w)
        if res is not None:
            return res
        if not w:
            res = TensorElement({((), ()): ONE})
        elif len(w) == 1:
            res = self.letter_coproduct(w[0])
        else:
            half = len(w) // 2
            res = self.word_coproduct(w[:half]) * self.word_coproduct(w[half:])
        self._cop[w] = res
        return res

    def coproduct(self, x: AlgElement) -> TensorElement:
        out = TensorElement()
        for w, c in x.terms.items():
            out = out + self.word_coproduct(w).scale(c)
        return out

    @staticmethod
    def letter_counit(let: Letter) -> int:
        if let.kind in ("e", "f"):
            return 0
        if let.kind == "K" or let.inv:
            return 1
        return 1 if let.i == let.j else 0

    def word_counit(self, w: Word) -> int:
        for let in w:
            if not self.letter_counit(let):
                return 0
        return 1

    def counit(self, x: AlgElement) -> QRat:
        tot = QRat.from_int(0)
        for w, c in x.terms.items():
            if self.word_counit(w):
                tot = tot + c
        return tot

    def parse(self, text: str) -> Word:
        return parse_word(self, text)

    def words(self, letters: Iterable[Letter], max_len: int) -> Iterator[Word]:
        letters = list(letters)
        layer: list[Word] = [()]
        yield ()
        for _ in range(max_len):
            layer = [w + (x,) for w in layer for x in letters]
            yield from layer


class AlgElement:
    """A finite Q(q)-linear combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, QRat] | None = None):
        self.terms: dict[Word, QRat] = {}
        if terms:
            for w, c in terms.items():
                c = as_qrat(c)
                if not c.is_zero():
                    self.terms[w] = c

    @classmethod
    def word(cls, w: Iterable[Letter], c: QRat | int = 1) -> AlgElement:
        return cls({tuple(w): as_qrat(c)})

    @classmethod
    def one(cls) -> AlgElement:
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def parity(self) -> int:
        ps = {Alphabet.parity(w) for w in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def __add__(self, other: AlgElement) -> AlgElement:
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, AlgElement):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
        res = AlgElement()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> AlgElement:
        res = AlgElement()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other: AlgElement) -> AlgElement:
        return self + (-other)

    def scale(self, c: QRat | int) -> AlgElement:
        c = as_qrat(c)
        if c.is_zero():
            return AlgElement()
        res = AlgElement()
        res.terms = {w: c * v for w, v in self.terms.items()}
        return res

    def __mul__(self, other: object) -> AlgElement:
        if isinstance(other, (int, QRat)):
            return self.scale(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        out: dict[Word, QRat] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = c1 * c2
                out[w] = out[w] + v if w in out else v
        return AlgElement(out)

    def __rmul__(self, other: object) -> AlgElement:
        if isinstance(other, (int, QRat)):
            return self.scale(other)
        return NotImplemented

    def inverse(self) -> AlgElement:
        """Inverse of a single group-like letter, as its formal inverse letter."""
        if len(self.terms) == 1:
            (w, c), = self.terms.items()
            if len(w) == 1 and w[0].grouplike:
                return AlgElement.word((w[0].owner.inverse_letter(w[0]),), c.inverse())
        raise ValueError("only single group-like letters are invertible in the free algebra")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: [x.order for x in t[0]]):
            mono = "*".join(repr(x) for x in w) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


class TensorElement:
    """A finite combination of word pairs; products carry the super sign."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[Word, Word], QRat] | None = None):
        self.terms: dict[tuple[Word, Word], QRat] = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        res = TensorElement()
        res.terms = out
        return res

    def scale(self, c: QRat) -> TensorElement:
        return TensorElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            pb = Alphabet.parity(b)
            for (a2, b2), c2 in other.terms.items():
                v = c1 * c2
                if pb and Alphabet.parity(a2):
                    v = -v
                k = (a + a2, b + b2)
                out[k] = out[k] + v if k in out else v
        return TensorElement(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())


_TOKEN = re.compile(
    r"(?P<l>l(?P<sg>[+-])(?:(?P<i>\d)(?P<j>\d)|\((?P<i2>\d+),(?P<j2>\d+)\))(?P<inv>\^-1)?)"
    r"|(?P<ef>[ef])(?P<k>\d+)"
    r"|K\[(?P<w>-?\d+(?:,-?\d+)*)\]"
)


def parse_word(A: Alphabet, text: str) -> Word:
    """Parse letters such as ``l+12``, ``l-(10,3)``, ``l+11^-1``, ``e2``, ``K[1,0,-1]``.

    Letters may be separated by whitespace or ``*``; the empty string is the empty word.
    """
    out = []
    for tok in re.split(r"[\s*]+", text.strip()):
        if not tok or tok == "1":
            continue
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise ValueError(f"cannot parse letter {tok!r}")
        if m["l"]:
            i, j = (int(m["i"]), int(m["j"])) if m["i"] else (int(m["i2"]), int(m["j2"]))
            if not (1 <= i <= A.d.N and 1 <= j <= A.d.N):
                raise ValueError(f"index out of range in {tok!r}")
            if m["inv"]:
                if i != j:
                    raise ValueError(f"only diagonal letters have inverses: {tok!r}")
                out.append(A.l_inv(m["sg"], i))
            else:
                out.append(A.l(m["sg"], i, j))
        elif m["ef"]:
            k = int(m["k"])
            if not 1 <= k <= A.d.rank:
                raise ValueError(f"simple index out of range in {tok!r}")
            out.append(A.e(k) if m["ef"] == "e" else A.f(k))
        else:
            w = tuple(int(x) for x in m["w"].split(","))
            if len(w) != len(A.d.zero_weight()):
                raise ValueError(f"weight in {tok!r} must have {len(A.d.zero_weight())} entries")
            out.append(A.K(w))
    return tuple(out)
