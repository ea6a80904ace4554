"""Sparse graded matrices with tensor legs.

An entry is keyed by ``(rows, cols)``, two tuples of 1-based indices, one per
leg, so ``((i1, i2), (j1, j2))`` is the matrix unit ``E_{i1 j1} (x) E_{i2 j2}``.
Coefficients only need ``is_zero``, ``+``, ``*``, ``parity`` and
``inverse``; QRat, one-leg GradedMatrix and AlgElement all qualify.
"""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Any, Callable, Iterable, Iterator, Sequence

from .grading import GDegree, STANDARD, Bicharacter
from .qfield import ONE, QRat, as_qrat, parse_qrat

__all__ = [
    "GradedMatrix",
    "matmul",
    "tensor_legs",
    "kron",
    "supertranspose",
    "gauss_triangular",
    "to_json",
    "from_json",
]

Key = tuple[tuple[int, ...], tuple[int, ...]]


def _is_zero(c: Any) -> bool:
    if isinstance(c, int):
        return c == 0
    return c.is_zero()


def _coeff_parity(c: Any) -> int:
    if isinstance(c, int):
        return 0
    return c.parity()


class GradedMatrix:
    __slots__ = ("N", "legs", "parity_seq", "entries", "_rows")

    def __init__(self, N: int, legs: int, parity_seq: Sequence[int], entries: dict[Key, Any] | None = None):
        if len(parity_seq) != N:
            raise ValueError("parity sequence length does not match dimension")
        self.N = N
        self.legs = legs
        self.parity_seq = tuple(parity_seq)
        self.entries: dict[Key, Any] = {}
        self._rows: dict | None = None
        if entries:
            for k, v in entries.items():
                if not _is_zero(v):
                    self.entries[k] = v

    # constructors

    @classmethod
    def zero(cls, N: int, legs: int, parity_seq: Sequence[int]) -> GradedMatrix:
        return cls(N, legs, parity_seq)

    @classmethod
    def identity(cls, N: int, legs: int, parity_seq: Sequence[int], one: Any = ONE) -> GradedMatrix:
        out = cls(N, legs, parity_seq)
        for idx in _all_diag(N, legs):
            out.entries[(idx, idx)] = one
        return out

    @classmethod
    def unit(cls, N: int, parity_seq: Sequence[int], i: int, j: int, coeff: Any = ONE) -> GradedMatrix:
        return cls(N, 1, parity_seq, {((i,), (j,)): coeff})

    @classmethod
    def diagonal(cls, parity_seq: Sequence[int], values: Sequence[Any]) -> GradedMatrix:
        N = len(values)
        return cls(N, 1, parity_seq, {((a + 1,), (a + 1,)): v for a, v in enumerate(values)})

    def like(self, entries: dict[Key, Any] | None = None) -> GradedMatrix:
        return GradedMatrix(self.N, self.legs, self.parity_seq, entries)

    # grading

    def unit_parity(self, key: Key) -> int:
        rows, cols = key
        return sum(self.parity_seq[i - 1] + self.parity_seq[j - 1] for i, j in zip(rows, cols)) % 2

    def degree_of(self, key: Key) -> GDegree:
        return GDegree(_coeff_parity(self.entries[key]), self.unit_parity(key))

    def parity(self) -> int:
        """Total parity, as a coefficient; fails on inhomogeneous matrices."""
        seen = {(_coeff_parity(c) + self.unit_parity(k)) % 2 for k, c in self.entries.items()}
        if len(seen) > 1:
            raise ValueError("matrix is not homogeneous")
        return seen.pop() if seen else 0

    # coefficient protocol

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __iter__(self) -> Iterator[tuple[Key, Any]]:
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, rows: Sequence[int], cols: Sequence[int], default: Any = None) -> Any:
        return self.entries.get((tuple(rows), tuple(cols)), default)

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.entries.get(((i,), (j,)))

    def _check_shape(self, other: GradedMatrix) -> None:
        if (self.N, self.legs, self.parity_seq) != (other.N, other.legs, other.parity_seq):
            raise ValueError("shape or parity mismatch between graded matrices")

    def __add__(self, other: Any) -> GradedMatrix:
        if not isinstance(other, GradedMatrix):
            if isinstance(other, (int, QRat)) and _is_zero(other):
                return self
            return NotImplemented
        self._check_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            if k in out:
                s = out[k] + v
                if _is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        res = self.like()
        res.entries = out
        return res

    __radd__ = __add__

    def __neg__(self) -> GradedMatrix:
        res = self.like()
        res.entries = {k: -v for k, v in self.entries.items()}
        return res

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        return self + (-other)

    def scale(self, c: Any) -> GradedMatrix:
        """Left multiplication by an even scalar."""
        if _is_zero(c):
            return self.like()
        return self.like({k: c * v for k, v in self.entries.items()})

    def __mul__(self, other: Any) -> GradedMatrix:
        if isinstance(other, GradedMatrix):
            return matmul(self, other, STANDARD)
        if isinstance(other, (int, QRat)):
            return self.scale(as_qrat(other))
        return NotImplemented

    def __rmul__(self, other: Any) -> GradedMatrix:
        if isinstance(other, (int, QRat)):
            return self.scale(as_qrat(other))
        return NotImplemented

    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        return matmul(self, other, STANDARD)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, QRat)) and _is_zero(other):
            return not self.entries
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.N, self.legs, self.parity_seq) == (other.N, other.legs, other.parity_seq) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.N, self.legs, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.entries.items()))
        return f"GradedMatrix(N={self.N}, legs={self.legs}, {{{body}}})"

    def map(self, f: Callable[[Any], Any]) -> GradedMatrix:
        return self.like({k: f(v) for k, v in self.entries.items()})

    def first_difference(self, other: GradedMatrix) -> Key | None:
        for k in sorted(set(self.entries) | set(other.entries)):
            a, b = self.entries.get(k), other.entries.get(k)
            if a is None or b is None or a != b:
                return k
        return None

    def is_diagonal(self) -> bool:
        return all(r == c for r, c in self.entries)

    def inverse(self) -> GradedMatrix:
        """Inverse of a one-leg matrix with field coefficients."""
        if self.legs != 1:
            raise ValueError("inverse is only implemented for one-leg matrices")
        if self.is_diagonal():
            if len(self.entries) != self.N:
                raise ZeroDivisionError("singular diagonal matrix")
            return self.like({k: v.inverse() for k, v in self.entries.items()})
        return _gauss_jordan_inverse(self)

    def rows_index(self) -> dict:
        if self._rows is None:
            rows: dict = defaultdict(list)
            for (r, c), v in self.entries.items():
                rows[r].append((c, v))
            self._rows = rows
        return self._rows


def _all_diag(N: int, legs: int) -> Iterable[tuple[int, ...]]:
    if legs == 0:
        yield ()
        return
    for rest in _all_diag(N, legs - 1):
        for i in range(1, N + 1):
            yield rest + (i,)


def _gauss_jordan_inverse(m: GradedMatrix) -> GradedMatrix:
    N = m.N
    a = [[m.entries.get(((i,), (j,)), None) for j in range(1, N + 1)] for i in range(1, N + 1)]
    zero = next(iter(m.entries.values())) * 0 if m.entries else QRat.from_int(0)
    one = zero + 1
    a = [[x if x is not None else zero for x in row] for row in a]
    inv = [[one if i == j else zero for j in range(N)] for i in range(N)]
    for c in range(N):
        pr = next((r for r in range(c, N) if not _is_zero(a[r][c])), None)
        if pr is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[pr] = a[pr], a[c]
        inv[c], inv[pr] = inv[pr], inv[c]
        p = a[c][c].inverse()
        a[c] = [p * x for x in a[c]]
        inv[c] = [p * x for x in inv[c]]
        for r in range(N):
            if r != c and not _is_zero(a[r][c]):
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
    return m.like({((i + 1,), (j + 1,)): inv[i][j] for i in range(N) for j in range(N)})


def matmul(A: GradedMatrix, B: GradedMatrix, b: Bicharacter = STANDARD) -> GradedMatrix:
    """Product of ``A`` and ``B`` with Koszul signs for the bicharacter ``b``.

    Moving the coefficient of ``B`` past the matrix unit of ``A`` costs
    ``b((0, |E_A|), (|c_B|, 0))``.  Reordering matrix units of different
    legs costs ``(-1)^(|M_p| |N_q|)`` for ``p > q`` in either braiding.
    """
    A._check_shape(B)
    ps = A.parity_seq
    L = A.legs
    brows = B.rows_index()
    acc: dict[Key, Any] = {}
    for (ar, ac), av in A.entries.items():
        hits = brows.get(ac)
        if not hits:
            continue
        a_legs = [(ps[i - 1] + ps[j - 1]) % 2 for i, j in zip(ar, ac)]
        a_par = sum(a_legs) % 2
        # suffix sums of A's leg parities, for the cross-leg sign
        suffix = [0] * (L + 1)
        for p in range(L - 1, -1, -1):
            suffix[p] = suffix[p + 1] + a_legs[p]
        for bc, bv in hits:
            sign = 1
            cp = _coeff_parity(bv)
            if cp or a_par:
                sign = b(GDegree(0, a_par), GDegree(cp, 0))
            cross = 0
            for qleg in range(L - 1):
                nb = (ps[ac[qleg] - 1] + ps[bc[qleg] - 1]) % 2
                if nb:
                    cross += suffix[qleg + 1]
            if cross % 2:
                sign = -sign
            prod = av * bv
            if sign < 0:
                prod = -prod
            key = (ar, bc)
            if key in acc:
                acc[key] = acc[key] + prod
            else:
                acc[key] = prod
    out = A.like()
    out.entries = {k: v for k, v in acc.items() if not _is_zero(v)}
    return out


def tensor_legs(A: GradedMatrix, slots: Sequence[int], total: int) -> GradedMatrix:
    """Embed the legs of ``A`` into positions ``slots`` of a ``total``-leg space.

    The remaining legs carry the identity.  Placing matrix units out of their
    original order costs the super flip sign for every inverted pair.
    """
    slots = tuple(slots)
    if len(slots) != A.legs:
        raise ValueError(f"{len(slots)} slots given for {A.legs} legs")
    if len(set(slots)) != len(slots):
        raise ValueError(f"duplicate slot in {slots}")
    if any(not 1 <= s <= total for s in slots):
        raise ValueError(f"slots {slots} out of range 1..{total}")
    ps = A.parity_seq
    free = [p for p in range(1, total + 1) if p not in slots]
    out = GradedMatrix(A.N, total, ps)
    inversions = [(a, c) for a in range(len(slots)) for c in range(a + 1, len(slots)) if slots[a] > slots[c]]
    for (rows, cols), v in A.entries.items():
        lp = [(ps[i - 1] + ps[j - 1]) % 2 for i, j in zip(rows, cols)]
        sign = 1
        for a, c in inversions:
            if lp[a] and lp[c]:
                sign = -sign
        for fill in _all_diag(A.N, len(free)):
            r = [0] * total
            cc = [0] * total
            for k, s in enumerate(slots):
                r[s - 1] = rows[k]
                cc[s - 1] = cols[k]
            for k, s in enumerate(free):
                r[s - 1] = fill[k]
                cc[s - 1] = fill[k]
            out.entries[(tuple(r), tuple(cc))] = v if sign > 0 else -v
    return out


def kron(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """Graded tensor product of scalar matrices: legs of A then legs of B."""
    if A.parity_seq != B.parity_seq:
        raise ValueError("parity mismatch")
    out = GradedMatrix(A.N, A.legs + B.legs, A.parity_seq)
    for (ar, ac), av in A.entries.items():
        for (br, bc), bv in B.entries.items():
            out.entries[(ar + br, ac + bc)] = av * bv
    return out


def supertranspose(A: GradedMatrix, legs: Sequence[int] | None = None) -> GradedMatrix:
    """Apply E_ij -> (-1)^(j(i+j)) E_ji on the chosen legs (all by default)."""
    sel = range(1, A.legs + 1) if legs is None else legs
    sel = set(sel)
    ps = A.parity_seq
    out = A.like()
    for (rows, cols), v in A.entries.items():
        r, c = list(rows), list(cols)
        sign = 1
        for p in sel:
            i, j = rows[p - 1], cols[p - 1]
            if ps[j - 1] * (ps[i - 1] + ps[j - 1]) % 2:
                sign = -sign
            r[p - 1], c[p - 1] = j, i
        out.entries[(tuple(r), tuple(c))] = v if sign > 0 else -v
    return out


def gauss_triangular(L: GradedMatrix, side: str) -> tuple[list[Any], GradedMatrix]:
    """Split a triangular one-leg matrix into diagonal and unipotent parts.

    ``upper``: L = D U with U = D^-1 L.  ``lower``: L = W D with W = L D^-1.
    """
    if L.legs != 1:
        raise ValueError("Gauss decomposition needs a one-leg matrix")
    if side not in ("upper", "lower"):
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    for (r, c) in L.entries:
        i, j = r[0], c[0]
        if (side == "upper" and i > j) or (side == "lower" and i < j):
            raise ValueError(f"matrix is not {side} triangular: entry ({i},{j})")
    diag = []
    for k in range(1, L.N + 1):
        d = L.entries.get(((k,), (k,)))
        if d is None:
            raise ZeroDivisionError(f"diagonal entry {k} is zero")
        try:
            d.inverse()
        except (ZeroDivisionError, ValueError) as exc:
            raise ZeroDivisionError(f"diagonal entry {k} is not invertible") from exc
        diag.append(d)
    inv = [d.inverse() for d in diag]
    out = L.like()
    for (r, c), v in L.entries.items():
        i, j = r[0], c[0]
        out.entries[(r, c)] = inv[i - 1] * v if side == "upper" else v * inv[j - 1]
    return diag, out


def to_json(A: GradedMatrix) -> str:
    rows = [{"index": [list(r), list(c)], "coefficient": str(v)} for (r, c), v in sorted(A.entries.items())]
    return json.dumps({"N": A.N, "legs": A.legs, "parity": "".join(map(str, A.parity_seq)), "entries": rows})


def from_json(text: str) -> GradedMatrix:
    data = json.loads(text)
    par = [int(ch) for ch in data["parity"]]
    out = GradedMatrix(data["N"], data["legs"], par)
    for row in data["entries"]:
        r, c = row["index"]
        out.entries[(tuple(r), tuple(c))] = parse_qrat(row["coefficient"])
    return out
