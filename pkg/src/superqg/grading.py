"""Z2 x Z2 degrees, the two sign bicharacters, and the twisting cocycle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

__all__ = [
    "GDegree",
    "Bicharacter",
    "STANDARD",
    "TWISTED",
    "koszul_sign",
    "perm_sign",
    "cocycle_twist",
]


class GDegree(NamedTuple):
    coeff: int = 0
    matrix: int = 0

    def __add__(self, other: object) -> GDegree:  # type: ignore[override]
        if not isinstance(other, GDegree):
            return NotImplemented
        return GDegree((self.coeff + other.coeff) % 2, (self.matrix + other.matrix) % 2)


@dataclass(frozen=True)
class Bicharacter:
    tag: str
    rule: Callable[[GDegree, GDegree], int]

    def __call__(self, x: GDegree, y: GDegree) -> int:
        return self.rule(x, y)


def _standard(g: GDegree, h: GDegree) -> int:
    return -1 if ((g.coeff + g.matrix) * (h.coeff + h.matrix)) % 2 else 1


def _twisted(g: GDegree, h: GDegree) -> int:
    return -1 if (g.coeff * h.coeff + g.matrix * h.matrix) % 2 else 1


STANDARD = Bicharacter("standard", _standard)
TWISTED = Bicharacter("twisted", _twisted)


def koszul_sign(x: GDegree, y: GDegree, b: Bicharacter) -> int:
    return b(x, y)


def perm_sign(degrees: Sequence[GDegree], perm: Sequence[int], b: Bicharacter) -> int:
    """Sign picked up by reordering homogeneous factors.

    ``perm[k]`` is the index of the input factor that lands in slot ``k``.
    Every pair of factors whose relative order is reversed contributes
    ``b`` of their degrees.
    """
    n = len(degrees)
    if len(perm) != n:
        raise ValueError(f"permutation of length {len(perm)} for {n} factors")
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    sign = 1
    for a in range(n):
        for c in range(a + 1, n):
            if perm[a] > perm[c]:
                sign *= b(degrees[perm[a]], degrees[perm[c]])
    return sign


def cocycle_twist(x: int, y: int) -> int:
    """zeta(x, y) = (-1)^(x y) on coefficient parities; self-inverse."""
    return -1 if (x * y) % 2 else 1
