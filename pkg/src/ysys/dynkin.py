"""Exact root-system data for the finite Dynkin types.

Roots are stored as integer coefficient vectors in the simple-root basis.
The inner product is the rational Gram matrix normalized so that long roots
have squared length 2; with that normalization every pairing used downstream
(heights, Weyl-vector pairings, lattice indices) is an exact Fraction.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DynkinType",
    "RootSystem",
    "build_root_system",
    "DynkinError",
]


class DynkinError(ValueError):
    """Invalid (family, rank) combination or malformed type string."""


_VALID_FAMILIES = "ABCDEFG"

# family -> t (squared-length ratio of long to short roots)
_T_BY_FAMILY = {"A": 1, "B": 2, "C": 2, "D": 1, "E": 1, "F": 2, "G": 3}


@dataclass(frozen=True, order=True)
class DynkinType:
    """A finite Dynkin type such as A_3 or G_2."""

    family: str
    rank: int

    def __post_init__(self):
        fam, r = self.family, self.rank
        if fam not in _VALID_FAMILIES:
            raise DynkinError(f"unknown family {fam!r}")
        ok = (
            (fam == "A" and r >= 1)
            or (fam == "B" and r >= 2)
            or (fam == "C" and r >= 2)
            or (fam == "D" and r >= 4)
            or (fam == "E" and r in (6, 7, 8))
            or (fam == "F" and r == 4)
            or (fam == "G" and r == 2)
        )
        if not ok:
            raise DynkinError(f"invalid Dynkin type {fam}{r}")

    @staticmethod
    def parse(text: str) -> "DynkinType":
        text = text.strip().replace("_", "")
        if len(text) < 2:
            raise DynkinError(f"cannot parse Dynkin type {text!r}")
        fam = text[0].upper()
        try:
            rank = int(text[1:])
        except ValueError as exc:
            raise DynkinError(f"cannot parse Dynkin type {text!r}") from exc
        return DynkinType(fam, rank)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def t(self) -> int:
        return _T_BY_FAMILY[self.family]

    @property
    def is_simply_laced(self) -> bool:
        return self.family in "ADE"

    @property
    def dual_coxeter(self) -> int:
        fam, r = self.family, self.rank
        if fam == "A":
            return r + 1
        if fam == "B":
            return 2 * r - 1
        if fam == "C":
            return r + 1
        if fam == "D":
            return 2 * r - 2
        if fam == "E":
            return {6: 12, 7: 18, 8: 30}[r]
        return 9 if fam == "F" else 4


def _edges(dt: DynkinType) -> list[tuple[int, int]]:
    """Edges of the diagram, 1-based node pairs (node numbering of the
    standard finite-type diagrams; E-series branch node carries the last
    chain label)."""
    fam, r = dt.family, dt.rank
    if fam in "ABC":
        return [(a, a + 1) for a in range(1, r)]
    if fam == "D":
        return [(a, a + 1) for a in range(1, r - 1)] + [(r - 2, r)]
    if fam == "E":
        if r == 6:
            return [(1, 2), (2, 3), (3, 4), (3, 5), (5, 6)]
        if r == 7:
            return [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]
        return [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)]
    if fam == "F":
        return [(1, 2), (2, 3), (3, 4)]
    return [(1, 2)]  # G2


def _t_values(dt: DynkinType) -> tuple[int, ...]:
    """Per-node t_a = 2/<alpha_a, alpha_a>; short nodes carry t_a = t."""
    fam, r, t = dt.family, dt.rank, dt.t
    if fam in "ADE":
        return (1,) * r
    if fam == "B":
        return (1,) * (r - 1) + (2,)
    if fam == "C":
        return (2,) * (r - 1) + (1,)
    if fam == "F":
        return (1, 1, 2, 2)
    return (1, 3)  # G2: node 1 long, node 2 short


def _cartan_matrix(dt: DynkinType) -> tuple[tuple[int, ...], ...]:
    """C[a][b] = 2<alpha_a, alpha_b> / <alpha_a, alpha_a>, 0-based."""
    r = dt.rank
    tv = _t_values(dt)
    c = [[0] * r for _ in range(r)]
    for a in range(r):
        c[a][a] = 2
    for (a, b) in _edges(dt):
        a -= 1
        b -= 1
        # <alpha_a, alpha_b> = -1 for every diagram edge under the
        # long-root-squared-2 normalization except short-short pairs,
        # where it equals -1/t.  C follows from C_ab = t_a <alpha_a, alpha_b>.
        pair = Fraction(-1)
        if tv[a] > 1 and tv[b] > 1:
            pair = Fraction(-1, tv[a])
        c[a][b] = int(tv[a] * pair)
        c[b][a] = int(tv[b] * pair)
    return tuple(tuple(row) for row in c)


def _solve_rational(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Q."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


@dataclass(frozen=True)
class RootSystem:
    """Root system data of a finite Dynkin type, all rational-exact.

    Vectors live in Q^r expressed in the simple-root basis, so the a-th
    simple root is the a-th standard basis vector and `gram` carries the
    inner product.
    """

    dynkin: DynkinType
    cartan: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    t_values: tuple[int, ...]
    all_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    rho: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return self.dynkin.rank

    @property
    def t(self) -> int:
        return self.dynkin.t

    @property
    def dual_coxeter(self) -> int:
        return self.dynkin.dual_coxeter

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        return tuple(tuple(1 if j == a else 0 for j in range(r)) for a in range(r))

    def pairing(self, x, y) -> Fraction:
        """Inner product <x, y>, exact."""
        r = self.rank
        if len(x) != r or len(y) != r:
            raise ValueError("vector dimension mismatch")
        total = Fraction(0)
        for a in range(r):
            if x[a] == 0:
                continue
            for b in range(r):
                if y[b] != 0:
                    total += Fraction(x[a]) * self.gram[a][b] * Fraction(y[b])
        return total

    def is_long(self, root) -> bool:
        return self.pairing(root, root) == 2

    @property
    def long_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.all_roots if self.is_long(b))

    @property
    def short_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.all_roots if not self.is_long(b))

    @property
    def dim_lie_algebra(self) -> int:
        return self.rank + len(self.all_roots)

    def weight_lattice_index(self) -> int:
        """|P/Q| = |det Cartan|."""
        return abs(_int_det(self.cartan))

    def sector_lattice_index(self, level: int) -> int:
        """|Q / l M| = prod_a (l * t_a)."""
        if level < 1:
            raise ValueError("level must be >= 1")
        out = 1
        for ta in self.t_values:
            out *= level * ta
        return out


def _int_det(mat) -> int:
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    assert det.denominator == 1
    return int(det)


@functools.lru_cache(maxsize=None)
def build_root_system(dt: DynkinType) -> RootSystem:
    """Construct the root system of `dt` with long roots of squared length 2."""
    r = dt.rank
    cartan = _cartan_matrix(dt)
    tv = _t_values(dt)
    gram = tuple(
        tuple(Fraction(cartan[a][b], tv[a]) for b in range(r)) for a in range(r)
    )

    # Close the simple roots under the simple reflections
    # s_a(v) = v - <v, alpha_a^vee> alpha_a, with <alpha_b, alpha_a^vee> = C[a][b].
    simple = [tuple(1 if j == a else 0 for j in range(r)) for a in range(r)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for a in range(r):
                coeff = sum(cartan[a][b] * v[b] for b in range(r))
                w = list(v)
                w[a] -= coeff
                w = tuple(w)
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt

    all_roots = tuple(sorted(roots))
    positive = tuple(b for b in all_roots if all(x >= 0 for x in b))
    assert 2 * len(positive) == len(all_roots)

    # rho solves <rho, alpha_a> = <alpha_a, alpha_a>/2 = 1/t_a for all a.
    gram_rows = [list(row) for row in gram]
    rho = tuple(_solve_rational(gram_rows, [Fraction(1, ta) for ta in tv]))

    rs = RootSystem(
        dynkin=dt,
        cartan=cartan,
        gram=gram,
        t_values=tv,
        all_roots=all_roots,
        positive_roots=positive,
        rho=rho,
    )

    # Construction invariants.
    two_rho = [Fraction(0)] * r
    for b in positive:
        for a in range(r):
            two_rho[a] += b[a]
    assert all(two_rho[a] == 2 * rho[a] for a in range(r))
    assert all(rs.pairing(b, b) in (2, Fraction(2, dt.t)) for b in all_roots)
    assert max(tv) == dt.t
    return rs
