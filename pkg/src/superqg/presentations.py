"""Quadratic relations from RLL equations, their twists, and the table identities.

Relations are stored as :class:`~superqg.freealg.AlgElement` values (sparse maps
from words of at most two letters to coefficients), keyed by the matrix
component ``(i, j, k, l)`` of ``E_ij (x) E_kl``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .freealg import AlgElement, Alphabet, Letter
from .grading import STANDARD, TWISTED, Bicharacter
from .gtensor import GradedMatrix, matmul
from .pairing import PairingSpec, pair_words
from .qfield import ONE, ZERO, Q, QRat, as_qrat, q_pow
from .rmatrix import Homog, RMatrixBundle, qbracket
from .rootdata import RootDatum, wadd, wsub

__all__ = [
    "QuadraticRelation",
    "RelationSet",
    "SIGN_PAIRS",
    "extract_rll",
    "zeta_twist",
    "twist_equivalence",
    "cross_relations",
    "compare_relation_sets",
    "crosscheck",
    "omega_letter",
    "omega_duality",
    "TableRow",
    "table_rows",
    "table_check",
]

QuadraticRelation = AlgElement
SIGN_PAIRS: tuple[tuple[str, str], ...] = (("+", "+"), ("-", "-"), ("+", "-"))
Component = tuple[int, int, int, int]


@dataclass(frozen=True)
class RelationSet:
    """Nonzero relations of one sign pair; absent components are identically zero."""

    signs: tuple[str, str]
    braiding: str
    N: int
    relations: dict[Component, AlgElement]

    def get(self, i: int, j: int, k: int, l: int) -> AlgElement:
        return self.relations.get((i, j, k, l), AlgElement())

    def components(self) -> Iterable[Component]:
        r = range(1, self.N + 1)
        return ((i, j, k, l) for i in r for j in r for k in r for l in r)

    def __len__(self) -> int:
        return len(self.relations)


def _check_signs(signs: tuple[str, str]) -> None:
    if tuple(signs) not in SIGN_PAIRS:
        raise ValueError(f"sign pair must be one of {SIGN_PAIRS}, got {signs!r}")


def _L_matrix(A: Alphabet, sign: str, leg: int) -> GradedMatrix:
    d = A.d
    N = d.N
    ent = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if (sign == "+" and i > j) or (sign == "-" and i < j):
                continue
            x = AlgElement.word((A.l(sign, i, j),))
            for a in range(1, N + 1):
                ent[((i, a), (j, a)) if leg == 1 else ((a, i), (a, j))] = x
    return GradedMatrix(N, 2, d.parity, ent)


def _to_relation_set(M: GradedMatrix, signs, braiding: Bicharacter) -> RelationSet:
    rel = {}
    for ((i, k), (j, l)), v in M.entries.items():
        if not v.is_zero():
            rel[(i, j, k, l)] = v
    return RelationSet(tuple(signs), braiding.tag, M.N, rel)


def extract_rll(
    b: RMatrixBundle,
    signs: tuple[str, str],
    braiding: Bicharacter = STANDARD,
    alphabet: Alphabet | None = None,
) -> RelationSet:
    """Components of R12 L1 L2 - L2 L1 R12 for the sign pair ``signs``."""
    _check_signs(signs)
    A = alphabet or Alphabet(b.datum)
    nu, eta = signs
    one = AlgElement.one()
    R = b.R.map(lambda c: one.scale(c))
    L1 = _L_matrix(A, nu, 1)
    L2 = _L_matrix(A, eta, 2)
    lhs = matmul(matmul(R, L1, braiding), L2, braiding)
    rhs = matmul(matmul(L2, L1, braiding), R, braiding)
    return _to_relation_set(lhs - rhs, signs, braiding)


def zeta_twist(x: AlgElement) -> AlgElement:
    """Multiply each two-letter term by (-1)^(|a||b|) of its letters' parities."""
    return AlgElement({w: (-c if len(w) == 2 and w[0].par and w[1].par else c) for w, c in x.terms.items()})


def twist_equivalence(b: RMatrixBundle, alphabet: Alphabet | None = None, per_component: bool = False) -> list[dict]:
    """Compare twisted-braiding relations with the twist of standard ones.

    One row per sign pair (or per component when ``per_component``).
    """
    A = alphabet or Alphabet(b.datum)
    rows = []
    for signs in SIGN_PAIRS:
        std = extract_rll(b, signs, STANDARD, A)
        tw = extract_rll(b, signs, TWISTED, A)
        tag = "".join(signs)
        bad = []
        for comp in std.components():
            ok = zeta_twist(std.get(*comp)) == tw.get(*comp)
            if per_component:
                rows.append({"name": f"twist[{tag}]{comp}", "status": "pass" if ok else "fail"})
            elif not ok:
                bad.append(comp)
        if not per_component:
            row = {"name": f"twist[{tag}]", "status": "fail" if bad else "pass", "components": std.N**4}
            if bad:
                row["witness"] = str(bad[0])
            rows.append(row)
    return rows


def cross_relations(spec: PairingSpec) -> RelationSet:
    """Double cross-relations u(l+_ij, l-_kl) placed at component (i, j, k, l).

    u(a, b) = sum (-1)^(|b2||a|) [ (-1)^(|a1||b1|) (a1, b1) a2 b2 - (a2, b2) b1 a1 ].
    """
    A = spec.alphabet
    N = A.d.N
    rel = {}
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            a = (A.lp(i, j),)
            pa = Alphabet.parity(a)
            da = A.word_coproduct(a)
            for k in range(1, N + 1):
                for l in range(1, k + 1):
                    bw = (A.lm(k, l),)
                    u = AlgElement()
                    for (b1, b2), cb in A.word_coproduct(bw):
                        for (a1, a2), ca in da:
                            c = ca * cb
                            if pa and Alphabet.parity(b2):
                                c = -c
                            t1 = pair_words(spec, a1, b1)
                            if not t1.is_zero():
                                if Alphabet.parity(a1) and Alphabet.parity(b1):
                                    t1 = -t1
                                u = u + AlgElement.word(a2 + b2, t1 * c)
                            t2 = pair_words(spec, a2, b2)
                            if not t2.is_zero():
                                u = u - AlgElement.word(b1 + a1, t2 * c)
                    if u:
                        rel[(i, j, k, l)] = u
    return RelationSet(("+", "-"), "double", N, rel)


def compare_relation_sets(x: RelationSet, y: RelationSet) -> tuple[Component, AlgElement, AlgElement] | None:
    """First component (in index order) where the two sets differ, or ``None``."""
    for comp in sorted(set(x.relations) | set(y.relations)):
        if x.get(*comp) != y.get(*comp):
            return comp, x.get(*comp), y.get(*comp)
    return None


def crosscheck(b: RMatrixBundle, spec: PairingSpec) -> list[dict]:
    mixed = extract_rll(b, ("+", "-"), STANDARD, spec.alphabet)
    diff = compare_relation_sets(cross_relations(spec), mixed)
    row = {"name": "cross_relations", "status": "pass" if diff is None else "fail", "components": len(mixed)}
    if diff is not None:
        comp, u, r = diff
        row["witness"] = f"{comp}: double gives {u!r}, RLL gives {r!r}"
    return [row]


def omega_letter(A: Alphabet, x: Letter) -> AlgElement:
    """Image of an l-letter under L+- -> (L-+)^st: l_ab -> (-1)^(a(a+b)) l_ba."""
    d = A.d
    if x.kind not in ("l+", "l-"):
        raise ValueError(f"omega acts on l-letters, got {x!r}")
    other = "-" if x.kind == "l+" else "+"
    if x.inv:
        return AlgElement.word((A.l_inv(other, x.i),))
    sgn = -1 if d.p(x.i) * (d.p(x.i) + d.p(x.j)) % 2 else 1
    return AlgElement.word((A.l(other, x.j, x.i),), sgn)


def _omega(A: Alphabet, x: AlgElement) -> AlgElement:
    out = AlgElement()
    for w, c in x.terms.items():
        t = AlgElement.one().scale(c)
        for let in w:
            t = t * omega_letter(A, let)
        out = out + t
    return out


def omega_duality(b: RMatrixBundle, alphabet: Alphabet | None = None) -> list[dict]:
    """Every omega-image of a (+,+) relation is, up to sign, a (-,-) relation and vice versa."""
    A = alphabet or Alphabet(b.datum)
    sets = {s: extract_rll(b, s, STANDARD, A) for s in (("+", "+"), ("-", "-"))}
    rows = []
    for src, dst in ((("+", "+"), ("-", "-")), (("-", "-"), ("+", "+"))):
        target = set(sets[dst].relations.values())
        miss = None
        for comp, r in sorted(sets[src].relations.items()):
            img = _omega(A, r)
            if img not in target and -img not in target:
                miss = comp
                break
        row = {"name": f"omega[{''.join(src)}->{''.join(dst)}]", "status": "pass" if miss is None else "fail"}
        if miss is not None:
            row["witness"] = str(miss)
        rows.append(row)
    return rows


# table identities, evaluated in the representation model

Node = tuple


def E(i: int, j: int) -> Node:
    return ("e", i, j)


def H(k: int, sign: int = 1) -> Node:
    return ("h", k, sign)


def br(x: Node, y: Node) -> Node:
    return ("br", x, y)


def star(x: Node, y: Node) -> Node:
    return ("mul", x, y)


def lin(*pairs: tuple[QRat | int, Node]) -> Node:
    return ("lin", pairs)


ONE_NODE: Node = ("one",)
ZERO_NODE: Node = ("lin", ())


@dataclass(frozen=True)
class TableRow:
    """One identity family: ``instances(d)`` yields (index, lhs, rhs) or a skip reason string."""

    table: str
    row_id: str
    instances: Callable[[RootDatum], list | str]


def _sgn(x: int) -> int:
    return -1 if x % 2 else 1


class _Evaluator:
    def __init__(self, d: RootDatum, model, side: str):
        self.d = d
        self.model = model
        self.side = side
        self.ident = Homog(GradedMatrix.identity(d.N, 1, d.parity), d.zero_weight(), 0)

    def leaf_e(self, i: int, j: int) -> Homog:
        if self.side == "e":
            return self.model.e(i, j)
        d = self.d
        pre = sum(d.p(k) for k in range(i, j))
        c = -q_pow(d.form(d.eps(i), wadd(d.eps(i), d.eps(j)))) * _sgn(pre + d.p(i) * (d.p(i) + d.p(j)))
        return self.model.f(j, i).scale(c)

    def leaf_h(self, k: int, sign: int) -> Homog:
        return self.model.qH(k, sign if self.side == "e" else -sign)

    def __call__(self, n: Node) -> Homog:
        tag = n[0]
        if tag == "e":
            return self.leaf_e(n[1], n[2])
        if tag == "h":
            return self.leaf_h(n[1], n[2])
        if tag == "one":
            return self.ident
        if tag == "mul":
            x, y = self(n[1]), self(n[2])
            return (x * y).scale(QRat.from_int(_sgn(x.par * y.par)))
        if tag == "br":
            x, y = self(n[1]), self(n[2])
            return qbracket(self.d, x, y).scale(QRat.from_int(_sgn(x.par * y.par)))
        if tag == "lin":
            out = None
            for c, sub in n[1]:
                h = self(sub).scale(as_qrat(c))
                out = h if out is None else Homog(out.mat + h.mat, out.deg, out.par)
            return out if out is not None else Homog(self.ident.mat.scale(ZERO), self.d.zero_weight(), 0)
        raise ValueError(f"unknown node {tag!r}")


def _rows_gl() -> list[TableRow]:
    def cartan_commute(d):
        r = range(1, d.N + 1)
        return [((i, j, a, b), star(H(i, a), H(j, b)), star(H(j, b), H(i, a))) for i in r for j in r for a in (1, -1) for b in (1, -1)]

    return [
        TableRow("gl", "cartan_commute", cartan_commute),
        TableRow("gl", "cartan_inverse", _cartan_inverse),
        TableRow("gl", "cartan_conjugation", _cartan_conjugation),
        TableRow("gl", "chain", lambda d: _chain(d, [(i, j) for i in range(1, d.N) for j in range(i + 1, d.N)])),
        TableRow("gl", "distant_commute", lambda d: _distant(d, d.N - 1)),
        TableRow("gl", "odd_square", lambda d: _odd_simple_square(d, range(1, d.N))),
        TableRow("gl", "serre_left", lambda d: _serre_left(d, range(1, d.N - 1))),
        TableRow("gl", "serre_right", lambda d: _serre_right(d, range(2, d.N))),
        TableRow("gl", "serre_quartic", lambda d: _serre_quartic(d, range(2, d.N - 1))),
        TableRow("gl", "odd_root_square", lambda d: _odd_root_square(d, lambda i, j: d.p(i) != d.p(j))),
    ]


def _cartan_inverse(d):
    r = range(1, d.N + 1)
    return [((i, a), star(H(i, a), H(i, -a)), ONE_NODE) for i in r for a in (1, -1)]


def _cartan_conjugation(d):
    r = range(1, d.N + 1)
    out = []
    for a in r:
        for i in r:
            for j in range(i + 1, d.N + 1):
                c = q_pow(d.form(d.eps(a), wsub(d.eps(i), d.eps(j))))
                out.append(((a, i, j), star(star(H(a), E(i, j)), H(a, -1)), lin((c, E(i, j)))))
    return out


def _chain_sign(d, i, j):
    return _sgn((d.p(i) + d.p(j)) * (d.p(j) + d.p(j + 1)))


def _chain(d, pairs):
    return [((i, j), E(i, j + 1), lin((_chain_sign(d, i, j), br(E(i, j), E(j, j + 1))))) for i, j in pairs]


def _distant(d, top):
    return [((i, j), br(E(i, i + 1), E(j, j + 1)), ZERO_NODE) for i in range(1, top + 1) for j in range(i + 2, top + 1)]


def _odd_simple_square(d, rng):
    return [((i,), br(E(i, i + 1), E(i, i + 1)), ZERO_NODE) for i in rng if d.p(i) != d.p(i + 1)]


def _odd_root_square(d, pred):
    return [((i, j), br(E(i, j), E(i, j)), ZERO_NODE) for i in range(1, d.N + 1) for j in range(i + 1, d.N + 1) if pred(i, j)]


def _serre_left(d, rng):
    return [((i,), br(E(i, i + 1), br(E(i, i + 1), E(i + 1, i + 2))), ZERO_NODE) for i in rng]


def _serre_right(d, rng):
    return [((i,), br(br(E(i - 1, i), E(i, i + 1)), E(i, i + 1)), ZERO_NODE) for i in rng]


def _serre_quartic(d, rng):
    return [((i,), br(br(br(E(i - 1, i), E(i, i + 1)), E(i + 1, i + 2)), E(i, i + 1)), ZERO_NODE) for i in rng]


def _rows_osp_common() -> list[TableRow]:
    def cartan_commute(d):
        r = range(1, d.N + 1)
        return [((i, j, a, b), star(H(i, a), H(j, b)), star(H(j, b), H(i, a))) for i in r for j in r for a in (1, -1) for b in (1, -1)]

    return [
        TableRow("osp", "cartan_commute", cartan_commute),
        TableRow("osp", "cartan_inverse", _cartan_inverse),
        TableRow("osp", "cartan_conjugation", _cartan_conjugation),
        TableRow("osp", "odd_isotropic_square", lambda d: _odd_root_square(d, lambda i, j: d.is_isotropic((i, j)))),
    ]


def _cartan_pairs(d, top):
    pr = d.prime
    return [
        ((i, j), star(H(i), H(pr(i))), star(H(j), H(pr(j))))
        for i in range(1, top + 1)
        for j in range(i + 1, top + 1)
    ]


def _mirror(d, rng):
    pr = d.prime
    out = []
    for i in rng:
        c = -_sgn(d.p(i) * (d.p(i) + d.p(i + 1))) * d.th(i) * d.th(i + 1)
        out.append(((i,), E(i, i + 1), lin((c, E(pr(i + 1), pr(i))))))
    return out


def _chain_pairs(d, skip_s: bool):
    pr = d.prime
    return [(i, j) for i in range(1, d.N + 1) for j in range(i + 1, pr(i + 1)) if j + 1 <= d.N and not (skip_s and j == d.s)]


def _mirror_chain(d, pairs):
    pr = d.prime
    return [
        ((i, j), E(pr(j + 1), pr(i)), lin((_chain_sign(d, i, j), br(E(pr(j + 1), pr(j)), E(pr(j), pr(i))))))
        for i, j in pairs
    ]


def _long_root(d, rng, outer: bool):
    pr = d.prime
    out = []
    for i in rng:
        a, b = (E(i, pr(i + 1)), E(pr(i + 1), pr(i))) if outer else (E(i, i + 1), E(i + 1, pr(i)))
        c = -q_pow(-d.eps_form(i, i) - d.eps_form(i + 1, i + 1))
        out.append(((i,), E(i, pr(i)), lin((_sgn(d.p(i) + d.p(i + 1)), star(a, b)), (c, star(b, a)))))
    return out


def _need(cond: bool, reason: str, build: Callable[[], list]) -> list | str:
    return build() if cond else reason


def _rows_B() -> list[TableRow]:
    T = "B"
    return [
        TableRow(T, "cartan_pairs", lambda d: _cartan_pairs(d, d.s + 1)),
        TableRow(T, "mirror", lambda d: _mirror(d, range(1, d.s + 1))),
        TableRow(T, "chain", lambda d: _chain(d, _chain_pairs(d, False))),
        TableRow(T, "long_root_outer", lambda d: _long_root(d, range(1, d.s + 1), True)),
        TableRow(T, "mirror_chain", lambda d: _mirror_chain(d, _chain_pairs(d, False))),
        TableRow(T, "long_root_inner", lambda d: _long_root(d, range(1, d.s + 1), False)),
        TableRow(T, "distant_commute", lambda d: _distant(d, d.s)),
        TableRow(T, "odd_square", lambda d: _odd_simple_square(d, range(1, d.s))),
        TableRow(T, "serre_left", lambda d: _serre_left(d, range(1, d.s))),
        TableRow(T, "serre_right", lambda d: _serre_right(d, range(2, d.s))),
        TableRow(
            T,
            "serre_short_quartic",
            lambda d: _need(
                d.s >= 2,
                "needs s >= 2",
                lambda: [
                    ((d.s,), br(br(br(E(d.s - 1, d.s), E(d.s, d.s + 1)), E(d.s, d.s + 1)), E(d.s, d.s + 1)), ZERO_NODE)
                ],
            ),
        ),
        TableRow(T, "serre_quartic", lambda d: _serre_quartic(d, range(2, d.s))),
    ]


def _long_chain(d, left: bool):
    s, pr = d.s, d.prime
    c = ONE + Q * Q
    if left:
        return [((i,), lin((c, E(i, pr(s)))), br(E(i, s), E(s, pr(s)))) for i in range(1, s)]
    return [((i,), lin((c, E(s, pr(i)))), br(E(s, pr(s)), E(pr(s), pr(i)))) for i in range(1, s)]


def _rows_C() -> list[TableRow]:
    T = "C"

    def serre_long(d):
        s = d.s
        if s < 4:
            return "needs s >= 4"
        x = br(br(E(s - 3, s - 2), E(s - 2, s - 1)), E(s - 1, s))
        x = br(br(br(br(x, E(s, d.prime(s))), E(s - 1, s)), E(s - 2, s - 1)), E(s - 1, s))
        return [((s,), x, ZERO_NODE)]

    return [
        TableRow(T, "cartan_pairs", lambda d: _cartan_pairs(d, d.s)),
        TableRow(T, "mirror", lambda d: _mirror(d, range(1, d.s))),
        TableRow(T, "chain", lambda d: _chain(d, _chain_pairs(d, True))),
        TableRow(T, "long_chain_left", lambda d: _long_chain(d, True)),
        TableRow(T, "long_root_outer", lambda d: _long_root(d, range(1, d.s), True)),
        TableRow(T, "mirror_chain", lambda d: _mirror_chain(d, _chain_pairs(d, True))),
        TableRow(T, "long_chain_right", lambda d: _long_chain(d, False)),
        TableRow(T, "long_root_inner", lambda d: _long_root(d, range(1, d.s), False)),
        TableRow(T, "distant_commute", lambda d: _distant(d, d.s)),
        TableRow(T, "odd_square", lambda d: _odd_simple_square(d, range(1, d.s))),
        TableRow(T, "serre_left", lambda d: _serre_left(d, range(1, d.s - 1))),
        TableRow(T, "serre_right", lambda d: _serre_right(d, range(2, d.s + 1))),
        TableRow(T, "serre_quartic", lambda d: _serre_quartic(d, range(2, d.s - 1))),
        TableRow(T, "serre_long", serre_long),
    ]


def _rows_C_extra() -> list[TableRow]:
    T = "C-extra"

    def cubic(d):
        s, ss = d.s, d.prime(d.s)
        if s < 2:
            return "needs s >= 2"
        a = E(s - 1, s)
        return [((s,), br(a, br(a, br(a, E(s, ss)))), ZERO_NODE)]

    def odd_pair(d):
        s, ss = d.s, d.prime(d.s)
        if s < 3:
            return "needs s >= 3"
        if not (d.root_parity((s - 2, s - 1)) and d.root_parity((s - 1, s))):
            return "needs both simple roots s-2, s-1 odd"
        x = br(E(s - 2, s - 1), E(s - 1, s))
        return [((s,), br(br(br(x, E(s, ss)), x), E(s - 1, s)), ZERO_NODE)]

    return [TableRow(T, "serre_cubic", cubic), TableRow(T, "odd_pair", odd_pair)]


def _rows_D() -> list[TableRow]:
    T = "D"

    def mirror_fork(d):
        s, pr = d.s, d.prime
        if s < 2:
            return "needs s >= 2"
        c = -_sgn(d.p(s - 1) * (d.p(s - 1) + d.p(s))) * d.th(s - 1) * d.th(pr(s))
        return [((s,), E(s - 1, pr(s)), lin((c, E(s, pr(s - 1)))))]

    def fork_chain(d, left: bool):
        s, pr = d.s, d.prime
        out = []
        for i in range(1, s - 1):
            if left:
                c = _sgn((d.p(i) + d.p(s - 1)) * (d.p(s - 1) + d.p(s)))
                out.append(((i,), E(i, pr(s)), lin((c, br(E(i, s - 1), E(s - 1, pr(s)))))))
            else:
                c = _sgn((d.p(i) + d.p(s)) * (d.p(s - 1) + d.p(s)))
                out.append(((i,), E(i, pr(s - 1)), lin((c, br(E(i, s), E(s, pr(s - 1)))))))
        return out or "needs s >= 3"

    def fork_mirror(d, left: bool):
        s, pr = d.s, d.prime
        out = []
        for i in range(1, s - 1):
            if left:
                c = _sgn((d.p(i) + d.p(s - 1)) * (d.p(s - 1) + d.p(s)))
                out.append(((i,), E(s, pr(i)), lin((c, br(E(s, pr(s - 1)), E(pr(s - 1), pr(i)))))))
            else:
                c = _sgn((d.p(i) + d.p(s)) * (d.p(s - 1) + d.p(s)))
                out.append(((i,), E(s - 1, pr(i)), lin((c, br(E(s - 1, pr(s)), E(pr(s), pr(i)))))))
        return out or "needs s >= 3"

    def fork(d):
        return E(d.s - 1, d.prime(d.s))

    def fork_commute(d):
        return [((i,), br(E(i, i + 1), fork(d)), ZERO_NODE) for i in range(1, d.s - 2)] or "needs s >= 4"

    def fork_odd_square(d):
        if d.s < 2:
            return "needs s >= 2"
        if not d.root_parity((d.s - 1, d.prime(d.s))):
            return "needs the fork root odd"
        return [((d.s,), br(fork(d), fork(d)), ZERO_NODE)]

    def fork_serre_left(d):
        s = d.s
        if s < 3:
            return "needs s >= 3"
        return [((s,), br(E(s - 2, s - 1), br(E(s - 2, s - 1), fork(d))), ZERO_NODE)]

    def fork_serre_right(d):
        s = d.s
        if s < 3:
            return "needs s >= 3"
        return [((s,), br(br(E(s - 2, s - 1), fork(d)), fork(d)), ZERO_NODE)]

    def fork_serre_quartic(d):
        s = d.s
        if s < 4:
            return "needs s >= 4"
        return [((s,), br(br(br(E(s - 3, s - 2), E(s - 2, s - 1)), fork(d)), E(s - 2, s - 1)), ZERO_NODE)]

    return [
        TableRow(T, "cartan_pairs", lambda d: _cartan_pairs(d, d.s)),
        TableRow(T, "mirror", lambda d: _mirror(d, range(1, d.s + 1))),
        TableRow(T, "mirror_fork", mirror_fork),
        TableRow(T, "chain", lambda d: _chain(d, _chain_pairs(d, True))),
        TableRow(T, "fork_chain_left", lambda d: fork_chain(d, True)),
        TableRow(T, "fork_chain_right", lambda d: fork_chain(d, False)),
        TableRow(T, "long_root_outer", lambda d: _long_root(d, range(1, d.s), True)),
        TableRow(T, "mirror_chain", lambda d: _mirror_chain(d, _chain_pairs(d, True))),
        TableRow(T, "fork_mirror_left", lambda d: fork_mirror(d, True)),
        TableRow(T, "fork_mirror_right", lambda d: fork_mirror(d, False)),
        TableRow(T, "long_root_inner", lambda d: _long_root(d, range(1, d.s), False)),
        TableRow(T, "distant_commute", lambda d: _distant(d, d.s - 1)),
        TableRow(T, "fork_commute", fork_commute),
        TableRow(T, "odd_square", lambda d: _odd_simple_square(d, range(1, d.s))),
        TableRow(T, "fork_odd_square", fork_odd_square),
        TableRow(T, "serre_left", lambda d: _serre_left(d, range(1, d.s - 1))),
        TableRow(T, "fork_serre_left", fork_serre_left),
        TableRow(T, "serre_right", lambda d: _serre_right(d, range(2, d.s))),
        TableRow(T, "fork_serre_right", fork_serre_right),
        TableRow(T, "serre_quartic", lambda d: _serre_quartic(d, range(2, d.s - 1))),
        TableRow(T, "fork_serre_quartic", fork_serre_quartic),
    ]


def _rows_D_extra() -> list[TableRow]:
    T = "D-extra"

    def even_fork(d):
        s = d.s
        if s < 2:
            return "needs s >= 2"
        if d.root_parity((s - 1, s)):
            return "needs e_{s-1,s} even"
        return [((s,), br(E(s - 1, s), E(s - 1, d.prime(s))), ZERO_NODE)]

    def exchange(d):
        s, ss = d.s, d.prime(d.s)
        if s < 3:
            return "needs s >= 3"
        return [((s,), br(br(E(s - 2, s - 1), E(s - 1, s)), E(s - 1, ss)), br(br(E(s - 2, s - 1), E(s - 1, ss)), E(s - 1, s)))]

    def vanishing(d):
        return [((d.s,), E(d.s, d.prime(d.s)), ZERO_NODE)]

    return [TableRow(T, "even_fork_commute", even_fork), TableRow(T, "fork_exchange", exchange), TableRow(T, "vanishing", vanishing)]


def table_rows(d: RootDatum) -> list[TableRow]:
    """Every identity family that applies to the datum's type."""
    if d.mode == "gl":
        return _rows_gl()
    rows = _rows_osp_common()
    if d.type_tag == "B":
        rows += _rows_B()
    elif d.type_tag == "C":
        rows += _rows_C() + _rows_C_extra()
    else:
        rows += _rows_D() + _rows_D_extra()
    return rows


def _mixed_gl(d: RootDatum, model) -> dict:
    """[e_{i,i+1}, f_{j+1,j}] against the Cartan difference quotient."""
    bad = None
    n = 0
    for i in range(1, d.N):
        for j in range(1, d.N):
            x, y = model.e(i, i + 1), model.f(j + 1, j)
            tw = _sgn(x.par * y.par)
            comm = (x * y).mat - (y * x).mat.scale(QRat.from_int(_sgn(x.par * y.par)))
            lhs = comm.scale(QRat.from_int(tw * _sgn((d.p(i) + d.p(i + 1)) * (d.p(j) + d.p(j + 1)))))
            rhs = GradedMatrix.zero(d.N, 1, d.parity)
            if i == j:
                rhs = (model.qH_pair(i, i + 1, 1).mat - model.qH_pair(i, i + 1, -1).mat).scale((Q - Q.inverse()).inverse())
            n += 1
            if lhs != rhs and bad is None:
                bad = (i, j)
    row = {"table": "gl-mixed", "row_id": "ef_commutator", "status": "pass" if bad is None else "fail", "instances": n}
    if bad:
        row["witness"] = str(bad)
    return row


def table_check(d: RootDatum, model=None, sides: Iterable[str] = ("e", "f"), mixed: bool = False) -> list[dict]:
    """Evaluate every table row in the representation model.

    The f side evaluates the same expressions with each leaf replaced by its
    image under L+- -> (L-+)^st.  Rows with no admissible index are skipped.
    """
    if model is None:
        from .rootvectors import RTTRepModel
        from .rmatrix import build_R

        model = RTTRepModel(build_R(d))
    rows = []
    for side in sides:
        ev = _Evaluator(d, model, side)
        suffix = "" if side == "e" else ":f"
        for tr in table_rows(d):
            inst = tr.instances(d)
            row = {"table": tr.table + suffix, "row_id": tr.row_id}
            if isinstance(inst, str) or not inst:
                row.update(status="skipped", reason=inst if isinstance(inst, str) else "no index satisfies the guard")
                rows.append(row)
                continue
            bad = None
            for idx, lhs, rhs in inst:
                if ev(lhs).mat != ev(rhs).mat:
                    bad = idx
                    break
            row.update(status="pass" if bad is None else "fail", instances=len(inst))
            if bad is not None:
                row["witness"] = str(bad)
            rows.append(row)
    if mixed and d.mode == "gl":
        rows.append(_mixed_gl(d, model))
    return rows
