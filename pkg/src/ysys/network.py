"""Mutation networks, adjacency/Neumann-Zagier matrices, sector group.

The mutation network contracts the quiver transitions of a loop to a
bipartite graph: black vertices are equivalence classes of (vertex, time)
pairs under "unchanged by this step" plus the closing permutation, square
vertices are the mutation events.  Broken edges (N0), square-to-black
arrows (N+) and black-to-square arrows (N-) are counted without cancelling
opposite pairs.  A_+ = N0 - N+ and A_- = N0 - N- always satisfy the
symplectic symmetry A_+ A_-^T = A_- A_+^T; for nondegenerate loops
K = A_+^{-1} A_- is computed exactly over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ysys.dynkin import DynkinType, build_root_system
from ysys.quiver import MutationLoop

__all__ = [
    "MutationNetwork",
    "NZMatrices",
    "HGroup",
    "build_network",
    "nz_matrices",
    "family_nz_matrices",
    "k_closed_form",
    "h_group",
    "sigma_classes",
    "smith_normal_form",
]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True)
class MutationNetwork:
    """Black classes, and E x Delta adjacency matrices (Delta = steps)."""

    classes: tuple[tuple[tuple[int, int], ...], ...]
    n0: tuple[tuple[int, ...], ...]
    n_plus: tuple[tuple[int, ...], ...]
    n_minus: tuple[tuple[int, ...], ...]

    @property
    def num_black(self) -> int:
        return len(self.classes)

    @property
    def num_square(self) -> int:
        return len(self.n0[0]) if self.n0 else 0

    def class_of(self, vertex: int, time: int) -> int:
        for idx, cls in enumerate(self.classes):
            if (vertex, time) in cls:
                return idx
        raise KeyError((vertex, time))


def build_network(loop: MutationLoop) -> MutationNetwork:
    """Mutation network of a closed loop."""
    n, T = loop.n, loop.length
    uf = _UnionFind()
    for t in range(1, T + 1):
        k = loop.seq[t - 1]
        for i in range(n):
            if i != k:
                uf.union((i, t - 1), (i, t))
    for i in range(n):
        uf.union((loop.nu(i), T), (i, 0))

    roots = {}
    for t in range(T + 1):
        for i in range(n):
            r = uf.find((i, t))
            roots.setdefault(r, []).append((i, t))
    classes = tuple(tuple(sorted(v)) for _, v in sorted(roots.items()))
    cls_index = {}
    for idx, cls in enumerate(classes):
        for pair in cls:
            cls_index[pair] = idx

    e = len(classes)
    n0 = [[0] * T for _ in range(e)]
    npl = [[0] * T for _ in range(e)]
    nmi = [[0] * T for _ in range(e)]
    for t in range(1, T + 1):
        k = loop.seq[t - 1]
        q = loop.quiver_at(t - 1)
        n0[cls_index[(k, t - 1)]][t - 1] += 1
        n0[cls_index[(k, t)]][t - 1] += 1
        for i in range(n):
            if i == k:
                continue
            out = q.arrows(k, i)  # Q_{m_t, i}(t-1): square -> black
            if out:
                npl[cls_index[(i, t - 1)]][t - 1] += out
            into = q.arrows(i, k)  # Q_{i, m_t}(t-1): black -> square
            if into:
                nmi[cls_index[(i, t - 1)]][t - 1] += into

    freeze = lambda m: tuple(tuple(row) for row in m)
    return MutationNetwork(classes, freeze(n0), freeze(npl), freeze(nmi))


@dataclass(frozen=True)
class NZMatrices:
    a_plus: tuple[tuple[int, ...], ...]
    a_minus: tuple[tuple[int, ...], ...]
    k: tuple[tuple[Fraction, ...], ...] | None  # None when A_+ is singular

    @property
    def degenerate(self) -> bool:
        return self.k is None


def _rational_solve_matrix(a_rows, b_rows):
    """X with A X = B over Q, or None if A is singular."""
    n = len(a_rows)
    aug = [
        [Fraction(x) for x in a_rows[i]] + [Fraction(x) for x in b_rows[i]]
        for i in range(n)
    ]
    m = len(b_rows[0])
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(aug[i][n + j] for j in range(m)) for i in range(n))


def nz_matrices(net: MutationNetwork) -> NZMatrices:
    """A_+ = N0 - N+, A_- = N0 - N-, and exact K = A_+^{-1} A_-."""
    e, T = net.num_black, net.num_square
    ap = tuple(
        tuple(net.n0[i][j] - net.n_plus[i][j] for j in range(T)) for i in range(e)
    )
    am = tuple(
        tuple(net.n0[i][j] - net.n_minus[i][j] for j in range(T)) for i in range(e)
    )
    _assert_symplectic(ap, am)
    k = _rational_solve_matrix(ap, am) if e == T else None
    return NZMatrices(ap, am, k)


def _assert_symplectic(ap, am):
    e = len(ap)
    T = len(ap[0]) if ap else 0
    for i in range(e):
        for j in range(e):
            lhs = sum(ap[i][t] * am[j][t] for t in range(T))
            rhs = sum(am[i][t] * ap[j][t] for t in range(T))
            assert lhs == rhs, f"A+ A-^T not symmetric at ({i},{j})"


def family_nz_matrices(fl, net: MutationNetwork) -> NZMatrices:
    """NZ matrices reordered so rows and columns follow the folded index
    set (a, m) lexicographically: square t identifies with tau'(m_t), the
    black class through (m_t, t-1) with the same pair."""
    jdx = list(fl.j_index)
    T = net.num_square
    if len(jdx) != T or net.num_black != T:
        raise ValueError("loop is not regular or identification failed")
    col_of = {}
    row_of = {}
    for t in range(1, T + 1):
        pair = fl.fold_label(fl.loop.seq[t - 1])
        col_of[pair] = t - 1
        row_of[pair] = net.class_of(fl.loop.seq[t - 1], t - 1)
    cols = [col_of[p] for p in jdx]
    rows = [row_of[p] for p in jdx]
    raw = nz_matrices(net)
    ap = tuple(tuple(raw.a_plus[i][j] for j in cols) for i in rows)
    am = tuple(tuple(raw.a_minus[i][j] for j in cols) for i in rows)
    k = None
    if raw.k is not None:
        k = _rational_solve_matrix(ap, am)
    return NZMatrices(ap, am, k)


def k_closed_form(dt: DynkinType, level: int) -> tuple[tuple[Fraction, ...], ...]:
    """The folded kernel K_{(a,m),(b,k)} = (min(t_b m, t_a k) - mk/l) <alpha_a, alpha_b>."""
    if level < 2:
        raise ValueError("level must be >= 2")
    rs = build_root_system(dt)
    tv = rs.t_values
    jdx = [
        (a, m)
        for a in range(1, dt.rank + 1)
        for m in range(1, tv[a - 1] * level)
    ]
    out = []
    for (a, m) in jdx:
        row = []
        for (b, k) in jdx:
            pair = rs.gram[a - 1][b - 1]
            row.append(
                (Fraction(min(tv[b - 1] * m, tv[a - 1] * k)) - Fraction(m * k, level))
                * pair
            )
        out.append(tuple(row))
    return tuple(out)


def k_is_positive_definite(k) -> bool:
    """Rational LDL^T pivots all positive."""
    n = len(k)
    a = [[Fraction(x) for x in row] for row in k]
    for i in range(n):
        if a[i][i] <= 0:
            return False
        for j in range(i + 1, n):
            f = a[j][i] / a[i][i]
            if f != 0:
                a[j] = [x - f * y for x, y in zip(a[j], a[i])]
    return True


def smith_normal_form(mat) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (nonzero ones)."""
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors = []
    top = 0
    while top < min(rows, cols):
        # locate a nonzero pivot of minimal absolute value
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        pivot = a[top][top]
        for i in range(top + 1, rows):
            if a[i][top] != 0:
                q = a[i][top] // pivot
                a[i] = [x - q * y for x, y in zip(a[i], a[top])]
        for j in range(top + 1, cols):
            if a[top][j] != 0:
                q = a[top][j] // pivot
                for i in range(rows):
                    a[i][j] -= q * a[i][top]
        if any(a[i][top] != 0 for i in range(top + 1, rows)) or any(
            a[top][j] != 0 for j in range(top + 1, cols)
        ):
            continue  # Euclid remainders left; re-pick a smaller pivot
        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(top + 1, rows):
            if any(a[i][j] % pivot != 0 for j in range(top + 1, cols)):
                offender = i
                break
        if offender is not None:
            a[top] = [x + y for x, y in zip(a[top], a[offender])]
            continue
        factors.append(abs(pivot))
        top += 1
    return factors


@dataclass(frozen=True)
class HGroup:
    """Finite abelian group Z^Delta / A_+^T Z^E via invariant factors."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def h_group(nz: NZMatrices) -> HGroup:
    if nz.degenerate:
        raise ValueError("A_+ singular: sector group not finite")
    e = len(nz.a_plus)
    at = [[nz.a_plus[i][j] for i in range(e)] for j in range(len(nz.a_plus[0]))]
    factors = smith_normal_form(at)
    if len(factors) < len(at):
        raise ValueError("A_+ singular: sector group not finite")
    return HGroup(tuple(d for d in factors))


def sigma_classes(dt: DynkinType, level: int) -> list[tuple[int, ...]]:
    """Residue representatives (c_1..c_r), 0 <= c_a < l t_a, of Q / l M."""
    rs = build_root_system(dt)
    ranges = [range(level * ta) for ta in rs.t_values]
    out = [()]
    for rng in ranges:
        out = [prefix + (c,) for prefix in out for c in rng]
    return out
