"""Root and weight data attached to a parity sequence.

Weights are integer vectors.  In ``gl`` mode the basis is eps_1..eps_N.  In
``osp`` mode it is eps_1..eps_s followed by one central coordinate, so that
eps_{i'} = -eps_i, the middle weight of an odd-length sequence is zero, and
the shifted weights eps~_a = eps_a + eps_C pair through the extra slot.
All public index arguments are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "RootDatum",
    "Weight",
    "parse_parity",
    "parse_theta",
    "default_theta",
    "build_gl_datum",
    "build_osp_datum",
    "build_datum",
    "convex_order",
    "alternate_theta",
]

Weight = tuple[int, ...]
Root = tuple[int, int]


def parse_parity(text: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(text, str):
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"parity sequence must be a non-empty string over '0'/'1', got {text!r}")
        return tuple(int(ch) for ch in text)
    out = tuple(int(x) for x in text)
    if not out or any(x not in (0, 1) for x in out):
        raise ValueError(f"parity entries must be 0 or 1, got {out!r}")
    return out


def parse_theta(text: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(text, str):
        if any(ch not in "+-" for ch in text):
            raise ValueError(f"theta string must use '+'/'-', got {text!r}")
        return tuple(1 if ch == "+" else -1 for ch in text)
    return tuple(int(x) for x in text)


def theta_str(theta: Sequence[int]) -> str:
    return "".join("+" if t == 1 else "-" for t in theta)


def _check_osp_parity(parity: tuple[int, ...]) -> None:
    N = len(parity)
    if N < 2:
        raise ValueError("osp mode needs at least two basis vectors")
    n = sum(parity)
    if n % 2:
        raise ValueError(f"odd n: the number of odd entries ({n}) must be even")
    for i in range(N):
        if parity[i] != parity[N - 1 - i]:
            raise ValueError(f"parity sequence not symmetric: entries {i + 1} and {N - i} differ")
    if N % 2 and parity[N // 2]:
        raise ValueError("middle entry of an odd-length osp parity sequence must be even")


def default_theta(parity: Sequence[int]) -> tuple[int, ...]:
    N = len(parity)
    half = (N + 1) // 2
    theta = [1] * N
    for i in range(half, N):
        j = N - 1 - i
        theta[i] = 1 if parity[i] == 0 else -theta[j]
    return tuple(theta)


def alternate_theta(parity: Sequence[int]) -> tuple[int, ...] | None:
    """Default theta with the first odd pair flipped; ``None`` when every index is even."""
    par = parse_parity(parity) if isinstance(parity, str) else tuple(parity)
    theta = list(default_theta(par))
    N = len(par)
    for i in range((N + 1) // 2):
        if par[i]:
            theta[i], theta[N - 1 - i] = -theta[i], -theta[N - 1 - i]
            return tuple(theta)
    return None


def _check_theta(parity: tuple[int, ...], theta: tuple[int, ...]) -> None:
    N = len(parity)
    if len(theta) != N:
        raise ValueError(f"theta has length {len(theta)}, expected {N}")
    for i, t in enumerate(theta):
        if t not in (1, -1):
            raise ValueError(f"theta entry {i + 1} must be +1 or -1")
        if parity[i] == 0 and t != 1:
            raise ValueError(f"theta entry {i + 1} must be +1 at an even index")
        j = N - 1 - i
        if parity[i] == 1 and t != -theta[j]:
            raise ValueError(f"theta entries {i + 1} and {j + 1} must be opposite at odd indices")


@dataclass(frozen=True)
class RootDatum:
    mode: str
    parity: tuple[int, ...]
    theta: tuple[int, ...] | None
    N: int
    s: int
    type_tag: str
    dim: int
    form_diag: tuple[int, ...]
    eps_vectors: tuple[Weight, ...]
    eps_tilde_vectors: tuple[Weight, ...]
    rho_eps: tuple[Fraction, ...]
    positive_roots: tuple[Root, ...]
    reduced_positive_roots: tuple[Root, ...]
    simple_roots: tuple[Root, ...]
    _height: dict = field(default_factory=dict, compare=False, repr=False)

    # indices and parities

    def p(self, i: int) -> int:
        return self.parity[i - 1]

    def prime(self, i: int) -> int:
        return self.N + 1 - i

    def th(self, i: int) -> int:
        if self.theta is None:
            raise ValueError("theta is only defined in osp mode")
        return self.theta[i - 1]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def parity_str(self) -> str:
        return "".join(str(x) for x in self.parity)

    # weights and forms

    def form(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(d * x * y for d, x, y in zip(self.form_diag, a, b))

    def eps(self, i: int) -> Weight:
        return self.eps_vectors[i - 1]

    def eps_tilde(self, i: int) -> Weight:
        return self.eps_tilde_vectors[i - 1]

    def eps_form(self, i: int, j: int) -> int:
        return self.form(self.eps(i), self.eps(j))

    def eps_tilde_form(self, i: int, j: int) -> int:
        return self.form(self.eps_tilde(i), self.eps_tilde(j))

    def rho(self, i: int) -> Fraction:
        return self.rho_eps[i - 1]

    def zero_weight(self) -> Weight:
        return (0,) * self.dim

    # roots

    def root_vector(self, r: Root) -> Weight:
        return wsub(self.eps(r[0]), self.eps(r[1]))

    def root_parity(self, r: Root) -> int:
        return (self.p(r[0]) + self.p(r[1])) % 2

    def is_isotropic(self, r: Root) -> bool:
        v = self.root_vector(r)
        return self.root_parity(r) == 1 and self.form(v, v) == 0

    def simple_root_vector(self, i: int) -> Weight:
        return self.root_vector(self.simple_roots[i - 1])

    def simple_root_parity(self, i: int) -> int:
        return self.root_parity(self.simple_roots[i - 1])

    def simple_coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of ``v`` in the basis of simple roots."""
        n = self.rank
        cols = [self.simple_root_vector(i + 1) for i in range(n)]
        rows = [[Fraction(cols[c][r]) for c in range(n)] + [Fraction(v[r])] for r in range(self.dim)]
        # Gauss-Jordan on the (dim x rank) system; the extra rows must vanish.
        piv_row = 0
        pivots = []
        for c in range(n):
            pr = next((r for r in range(piv_row, len(rows)) if rows[r][c] != 0), None)
            if pr is None:
                continue
            rows[piv_row], rows[pr] = rows[pr], rows[piv_row]
            inv = 1 / rows[piv_row][c]
            rows[piv_row] = [x * inv for x in rows[piv_row]]
            for r in range(len(rows)):
                if r != piv_row and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_row])]
            pivots.append(c)
            piv_row += 1
        if any(rows[r][n] != 0 for r in range(piv_row, len(rows))):
            raise ValueError(f"{tuple(v)} is not in the root lattice")
        out = [Fraction(0)] * n
        for r, c in enumerate(pivots):
            out[c] = rows[r][n]
        return tuple(out)

    def height(self, r: Root) -> int:
        if r not in self._height:
            h = sum(self.simple_coordinates(self.root_vector(r)))
            if h.denominator != 1:
                raise ValueError(f"root {r} has non-integral height")
            self._height[r] = int(h)
        return self._height[r]

    def describe(self) -> dict:
        out = {"mode": self.mode, "parity": self.parity_str, "type": self.type_tag}
        if self.theta is not None:
            out["theta"] = theta_str(self.theta)
        return out


def wadd(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wscale(k: int, a: Sequence[int]) -> Weight:
    return tuple(k * x for x in a)


def _unit(n: int, k: int) -> Weight:
    return tuple(1 if t == k else 0 for t in range(n))


def build_gl_datum(parity: str | Sequence[int]) -> RootDatum:
    par = parse_parity(parity)
    N = len(par)
    if N < 2:
        raise ValueError("gl mode needs N >= 2")
    eps = tuple(_unit(N, k) for k in range(N))
    roots = tuple((i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1))
    return RootDatum(
        mode="gl",
        parity=par,
        theta=None,
        N=N,
        s=N - 1,
        type_tag="A",
        dim=N,
        form_diag=tuple(-1 if x else 1 for x in par),
        eps_vectors=eps,
        eps_tilde_vectors=eps,
        rho_eps=tuple(Fraction(0) for _ in range(N)),
        positive_roots=roots,
        reduced_positive_roots=roots,
        simple_roots=tuple((i, i + 1) for i in range(1, N)),
    )


def build_osp_datum(parity: str | Sequence[int], theta: str | Sequence[int] | None = None) -> RootDatum:
    par = parse_parity(parity)
    _check_osp_parity(par)
    N = len(par)
    s = N // 2
    th = default_theta(par) if theta is None else parse_theta(theta)
    _check_theta(par, th)
    m = N - sum(par)
    if m % 2:
        tag = "B"
    elif par[s - 1]:
        tag = "C"
    else:
        tag = "D"
    if tag == "D" and s < 2:
        raise ValueError("even orthogonal part needs s >= 2 for a D-type datum")
    dim = s + 1
    eps: list[Weight] = []
    for a in range(1, N + 1):
        if a <= s:
            eps.append(_unit(dim, a - 1))
        elif N % 2 and a == s + 1:
            eps.append((0,) * dim)
        else:
            eps.append(wscale(-1, _unit(dim, N - a)))
    central = _unit(dim, s)
    eps_t = tuple(wadd(e, central) for e in eps)
    form_diag = tuple(-1 if par[k] else 1 for k in range(s)) + (1,)

    def pr(a: int) -> int:
        return N + 1 - a

    positive = [(a, b) for a in range(1, N + 1) for b in range(a + 1, N + 1) if b < pr(a)]
    positive += [(a, pr(a)) for a in range(1, s + 1) if par[a - 1]]
    positive.sort()
    if tag == "B":
        reduced = [r for r in positive if r[1] != pr(r[0])]
    else:
        reduced = list(positive)
    simple: list[Root] = [(i, i + 1) for i in range(1, s)]
    if tag == "B":
        simple.append((s, s + 1))
    elif tag == "C":
        simple.append((s, pr(s)))
    else:
        simple.append((s - 1, pr(s)))

    def form(a: Sequence[int], b: Sequence[int]) -> int:
        return sum(d * x * y for d, x, y in zip(form_diag, a, b))

    rho2 = [0] * dim
    for a, b in positive:
        v = wsub(eps[a - 1], eps[b - 1])
        sgn = -1 if (par[a - 1] + par[b - 1]) % 2 else 1
        rho2 = [x + sgn * y for x, y in zip(rho2, v)]
    rho_eps = tuple(Fraction(form(rho2, eps[k]), 2) for k in range(N))

    return RootDatum(
        mode="osp",
        parity=par,
        theta=th,
        N=N,
        s=s,
        type_tag=tag,
        dim=dim,
        form_diag=form_diag,
        eps_vectors=tuple(eps),
        eps_tilde_vectors=eps_t,
        rho_eps=rho_eps,
        positive_roots=tuple(positive),
        reduced_positive_roots=tuple(reduced),
        simple_roots=tuple(simple),
    )


def build_datum(mode: str, parity: str | Sequence[int], theta: str | Sequence[int] | None = None) -> RootDatum:
    if mode == "gl":
        if theta is not None:
            raise ValueError("theta is only meaningful in osp mode")
        return build_gl_datum(parity)
    if mode == "osp":
        return build_osp_datum(parity, theta)
    raise ValueError(f"unknown mode {mode!r}")


def convex_order(d: RootDatum) -> list[Root]:
    """Lexicographic on pairs, except that a long root (i, i') sits right after (i, s).

    This is the order of the corresponding dominant Lyndon words; plain pair order
    is not convex once some 2*eps_i is a root.
    """
    if d.mode == "gl":
        return sorted(d.reduced_positive_roots)
    mid = d.s + 0.5
    return sorted(d.reduced_positive_roots, key=lambda r: (r[0], mid if r[1] == d.prime(r[0]) else r[1]))
