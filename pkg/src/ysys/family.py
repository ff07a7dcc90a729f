"""Level-l quivers and mutation loops for every finite Dynkin type.

Vertices are parameterized by pairs (a, m): `a` is a node of the unfolded
(simply-laced) companion diagram and m = 1..kappa_a*l - 1 a grid row, where
kappa_a is 1 on columns folding onto long nodes and t on the column(s) over
short nodes.  For ADE the companion diagram is the type itself and the
B-matrix is the standard product-with-A_{l-1} construction; for BCFG the
arrows follow the level-l ladder patterns with doubled (tripled) middle
columns.

The loop mutates two half-step blocks and closes up to the permutation nu
(identity for ADE, the column fold otherwise).  Within each block no two
vertices are connected, so the mutation order inside a block is irrelevant;
`build_family_loop` asserts that property at construction time.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ysys.dynkin import DynkinType, build_root_system
from ysys.quiver import MutationLoop, Permutation, Quiver

__all__ = ["FamilyLoop", "build_family_loop", "companion_type", "tau_map"]


def companion_type(dt: DynkinType) -> DynkinType:
    """Simply-laced diagram whose columns fold onto dt."""
    fam, r = dt.family, dt.rank
    if fam in "ADE":
        return dt
    if fam == "B":
        return DynkinType("A", 2 * r - 1)
    if fam == "C":
        return DynkinType("D", r + 1)
    if fam == "F":
        return DynkinType("E", 6)
    return DynkinType("D", 4)


def tau_map(dt: DynkinType) -> tuple[int, ...]:
    """Fold tau from companion nodes onto dt nodes, 1-based values."""
    fam, r = dt.family, dt.rank
    if fam in "ADE":
        return tuple(range(1, r + 1))
    if fam == "B":
        return tuple(a if a <= r else 2 * r - a for a in range(1, 2 * r))
    if fam == "C":
        return tuple(min(a, r) for a in range(1, r + 2))
    if fam == "F":
        return (1, 2, 3, 4, 2, 1)
    return (1, 2, 1, 1)  # G2 on D4: the middle node 2 is the short column


@dataclass(frozen=True)
class FamilyLoop:
    """Quiver Q(X_r, l) with its mutation loop and bookkeeping maps."""

    dynkin: DynkinType
    level: int
    loop: MutationLoop
    blocks: tuple[tuple[int, ...], tuple[int, ...]]
    labels: tuple[tuple[int, int], ...]  # vertex -> (a, m), 1-based
    tau: tuple[int, ...]
    kappa: tuple[int, ...]
    sign_of: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def period(self) -> int:
        """Order t(l + h_dual) after which the loop dynamics repeats."""
        return self.dynkin.t * (self.level + self.dynkin.dual_coxeter)

    @property
    def j_index(self) -> tuple[tuple[int, int], ...]:
        """The folded index set {(a, m) | 1<=a<=r, 1<=m<=t_a*l-1}."""
        rs = build_root_system(self.dynkin)
        out = []
        for a in range(1, self.dynkin.rank + 1):
            for m in range(1, rs.t_values[a - 1] * self.level):
                out.append((a, m))
        return tuple(out)

    def vertex(self, a: int, m: int) -> int:
        return self.labels.index((a, m))

    def fold_label(self, v: int) -> tuple[int, int]:
        """tau'(a, m) = (tau(a), m) for vertex v."""
        a, m = self.labels[v]
        return (self.tau[a - 1], m)

    def flipped(self) -> "FamilyLoop":
        """Same quiver family with the two half-step blocks swapped
        (ADE only: rebuilt with the opposite bipartite coloring)."""
        if not self.dynkin.is_simply_laced:
            raise ValueError("bipartite flip is an ADE notion")
        return _build_ade(self.dynkin, self.level, flip=True)


def _bipartite_colors(dt: DynkinType) -> tuple[int, ...]:
    """2-coloring of the diagram by BFS parity; node 1 gets color -1."""
    from ysys.dynkin import _edges

    r = dt.rank
    adj = [[] for _ in range(r + 1)]
    for a, b in _edges(dt):
        adj[a].append(b)
        adj[b].append(a)
    color = [0] * (r + 1)
    color[1] = -1
    queue = [1]
    while queue:
        a = queue.pop()
        for b in adj[a]:
            if color[b] == 0:
                color[b] = -color[a]
                queue.append(b)
    return tuple(color[1:])


def _assemble(dt, level, labels, sign, arrows, nu_images, block_pred):
    """Common tail: build B, blocks, permutation, validate, wrap up."""
    n = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    b = np.zeros((n, n), dtype=np.int64)
    for (u, v), cnt in arrows.items():
        b[index[u], index[v]] += cnt
        b[index[v], index[u]] -= cnt
    quiver = Quiver(b)

    block1 = tuple(sorted(index[lab] for lab in labels if block_pred(lab) == 1))
    block2 = tuple(sorted(index[lab] for lab in labels if block_pred(lab) == 2))
    for block in (block1, block2):
        for i in block:
            for j in block:
                assert b[i, j] == 0, (
                    f"half-step block not mutually disconnected at "
                    f"{labels[i]} -> {labels[j]}"
                )

    nu = Permutation(tuple(index[nu_images(lab)] for lab in labels))
    loop = MutationLoop(quiver, block1 + block2, nu)
    assert loop.is_regular()
    fl = FamilyLoop(
        dynkin=dt,
        level=level,
        loop=loop,
        blocks=(block1, block2),
        labels=tuple(labels),
        tau=tau_map(dt),
        kappa=tuple(
            build_root_system(dt).t_values[t - 1] for t in tau_map(dt)
        ),
        sign_of=None if sign is None else tuple(sign(lab) for lab in labels),
    )
    return fl


def _build_ade(dt: DynkinType, level: int, flip: bool = False) -> FamilyLoop:
    r = dt.rank
    lp = level - 1
    cartan = build_root_system(dt).cartan
    cartan_a = build_root_system(DynkinType("A", lp)).cartan
    cx = _bipartite_colors(dt)
    if flip:
        cx = tuple(-c for c in cx)
    ca = tuple(1 if m % 2 == 1 else -1 for m in range(1, lp + 1))

    labels = [(a, m) for a in range(1, r + 1) for m in range(1, lp + 1)]

    def sgn(lab):
        a, m = lab
        return 1 if cx[a - 1] == ca[m - 1] else -1

    arrows = {}
    for (a, m) in labels:
        for (b, k) in labels:
            ea, eb = cx[a - 1], cx[b - 1]
            fa, fb = ca[m - 1], ca[k - 1]
            val = 0
            if m == k and a != b:
                if (ea, fa, eb, fb) == (-1, 1, 1, 1) or (ea, fa, eb, fb) == (1, -1, -1, -1):
                    val = -cartan[a - 1][b - 1]
                elif (ea, fa, eb, fb) == (1, 1, -1, 1) or (ea, fa, eb, fb) == (-1, -1, 1, -1):
                    val = cartan[a - 1][b - 1]
            elif a == b and m != k:
                if (ea, fa, fb) == (1, 1, -1) or (ea, fa, fb) == (-1, -1, 1):
                    val = -cartan_a[m - 1][k - 1]
                elif (ea, fa, fb) == (1, -1, 1) or (ea, fa, fb) == (-1, 1, -1):
                    val = cartan_a[m - 1][k - 1]
            if val > 0:
                arrows[((a, m), (b, k))] = val

    return _assemble(
        dt,
        level,
        labels,
        sgn,
        arrows,
        nu_images=lambda lab: lab,
        block_pred=lambda lab: 1 if sgn(lab) == 1 else 2,
    )


def _build_b(dt: DynkinType, level: int) -> FamilyLoop:
    r, lp = dt.rank, level - 1
    black = r
    cols = list(range(1, 2 * r))

    def height(a):
        return 2 * level - 1 if a == black else lp

    labels = [(a, m) for a in cols for m in range(1, height(a) + 1)]

    def sgn(lab):
        a, m = lab
        if a == black:
            return 1 if m % 2 == 1 else -1
        if a < black:
            return 1 if (a + m - r) % 2 != 0 else -1
        return 1 if (a + m - r) % 2 == 0 else -1

    arrows = {}

    def arrow(u, v, c=1):
        arrows[(u, v)] = arrows.get((u, v), 0) + c

    for a in cols:
        if a == black:
            for p in range(1, 2 * level, 2):
                for q in (p - 3, p - 1, p + 1, p + 3):
                    if 1 <= q <= 2 * level - 1 and q % 2 == 0:
                        arrow((a, p), (a, q))
        else:
            for m in range(1, lp):
                u, v = (a, m), (a, m + 1)
                arrow(u, v) if sgn(u) == 1 else arrow(v, u)
    for a in cols[:-1]:
        if a == black or a + 1 == black:
            continue
        for m in range(1, lp + 1):
            u, v = (a, m), (a + 1, m)
            arrow(u, v) if sgn(u) == -1 else arrow(v, u)
    for a in (black - 1, black + 1):
        for m in range(1, lp + 1):
            if sgn((a, m)) == -1:
                arrow((a, m), (black, 2 * m - 1))
                arrow((a, m), (black, 2 * m + 1))
    for m in range(1, level):
        arrow((black, 2 * m), (black - 1, m))
        arrow((black, 2 * m), (black + 1, m))

    def nu_images(lab):
        a, m = lab
        return lab if a == black else (2 * r - a, m)

    def block_pred(lab):
        a, m = lab
        if a == black:
            return 1 if m % 2 == 1 else 2
        return 1 if sgn(lab) == 1 else 0

    return _assemble(dt, level, labels, sgn, arrows, nu_images, block_pred)


def _build_c(dt: DynkinType, level: int) -> FamilyLoop:
    r, lp = dt.rank, level - 1
    blacks = list(range(1, r))
    wl, wr = r, r + 1

    def height(a):
        return 2 * level - 1 if a in blacks else lp

    labels = [(a, m) for a in blacks + [wl, wr] for m in range(1, height(a) + 1)]

    def sgn(lab):
        a, m = lab
        if a in blacks:
            return 1 if (a + m - r) % 2 == 0 else -1
        if a == wl:
            return 1 if m % 2 == 0 else -1
        return 1 if m % 2 == 1 else -1

    arrows = {}

    def arrow(u, v, c=1):
        arrows[(u, v)] = arrows.get((u, v), 0) + c

    for a in blacks:
        for p in range(1, 2 * level - 1):
            u, v = (a, p), (a, p + 1)
            arrow(u, v) if sgn(u) == 1 else arrow(v, u)
    for a in blacks[:-1]:
        for p in range(1, 2 * level):
            u, v = (a, p), (a + 1, p)
            arrow(u, v) if sgn(u) == -1 else arrow(v, u)
    for c in (wl, wr):
        for m in range(1, lp):
            u, v = (c, m), (c, m + 1)
            arrow(u, v) if m % 2 == 0 else arrow(v, u)
        for m in range(1, lp + 1):
            if sgn((c, m)) == -1:
                arrow((c, m), (r - 1, 2 * m - 1))
                arrow((c, m), (r - 1, 2 * m + 1))
    for m in range(1, level):
        arrow((r - 1, 2 * m), (wl, m))
        arrow((r - 1, 2 * m), (wr, m))

    def nu_images(lab):
        a, m = lab
        if a == wl:
            return (wr, m)
        if a == wr:
            return (wl, m)
        return lab

    def block_pred(lab):
        a, m = lab
        if a in blacks:
            return 1 if sgn(lab) == 1 else 2
        return 1 if sgn(lab) == 1 else 0

    return _assemble(dt, level, labels, sgn, arrows, nu_images, block_pred)


def _build_f(dt: DynkinType, level: int) -> FamilyLoop:
    lp = level - 1
    blacks = (3, 4)
    whites = (1, 2, 5, 6)

    def height(a):
        return 2 * level - 1 if a in blacks else lp

    labels = [(a, m) for a in (1, 2, 3, 4, 5, 6) for m in range(1, height(a) + 1)]

    def sgn(lab):
        a, m = lab
        if a == 3:
            return 1 if m % 2 == 1 else -1
        if a == 4:
            return 1 if m % 2 == 0 else -1
        if a in (2, 6):
            return 1 if m % 2 == 0 else -1
        return 1 if m % 2 == 1 else -1  # columns 1 and 5

    arrows = {}

    def arrow(u, v, c=1):
        arrows[(u, v)] = arrows.get((u, v), 0) + c

    for a in blacks:
        for p in range(1, 2 * level - 1):
            u, v = (a, p), (a, p + 1)
            arrow(u, v) if sgn(u) == 1 else arrow(v, u)
    for p in range(1, 2 * level):
        u, v = (4, p), (3, p)
        arrow(u, v) if sgn(u) == -1 else arrow(v, u)
    for c in whites:
        vertical_from_even = c in (2, 5)
        for m in range(1, lp):
            u, v = (c, m), (c, m + 1)
            if vertical_from_even:
                arrow(u, v) if m % 2 == 0 else arrow(v, u)
            else:
                arrow(u, v) if m % 2 == 1 else arrow(v, u)
    for (ci, co) in ((2, 1), (5, 6)):
        for m in range(1, lp + 1):
            u, v = (ci, m), (co, m)
            arrow(u, v) if sgn(u) == -1 else arrow(v, u)
    for ci in (2, 5):
        for m in range(1, lp + 1):
            if sgn((ci, m)) == -1:
                arrow((ci, m), (3, 2 * m - 1))
                arrow((ci, m), (3, 2 * m + 1))
    for m in range(1, level):
        arrow((3, 2 * m), (2, m))
        arrow((3, 2 * m), (5, m))

    swap = {1: 6, 6: 1, 2: 5, 5: 2, 3: 3, 4: 4}

    def block_pred(lab):
        a, m = lab
        if a in blacks:
            return 1 if sgn(lab) == 1 else 2
        return 1 if sgn(lab) == 1 else 0

    return _assemble(
        dt,
        level,
        labels,
        sgn,
        arrows,
        nu_images=lambda lab: (swap[lab[0]], lab[1]),
        block_pred=block_pred,
    )


def _build_g(dt: DynkinType, level: int) -> FamilyLoop:
    lp = level - 1
    black = 2
    w1, w2, w3 = 1, 3, 4  # companion D4 outer nodes, in nu-cycle order

    def height(a):
        return 3 * level - 1 if a == black else lp

    labels = [(a, m) for a in (1, 2, 3, 4) for m in range(1, height(a) + 1)]

    arrows = {}

    def arrow(u, v, c=1):
        arrows[(u, v)] = arrows.get((u, v), 0) + c

    for p in range(1, 3 * level, 2):
        for q in (p - 3, p - 1, p + 1, p + 3):
            if 1 <= q <= 3 * level - 1 and q % 2 == 0:
                arrow((black, p), (black, q))

    for (c, from_even) in ((w1, True), (w2, False), (w3, True)):
        for m in range(1, lp):
            u, v = (c, m), (c, m + 1)
            if from_even:
                arrow(u, v) if m % 2 == 0 else arrow(v, u)
            else:
                arrow(u, v) if m % 2 == 1 else arrow(v, u)

    for m in range(1, level):
        if m % 2 == 1:
            # odd grid rows sit against black rows 3m-2 .. 3m+2
            arrow((w1, m), (black, 3 * m - 2))
            arrow((w1, m), (black, 3 * m))
            arrow((w1, m), (black, 3 * m + 2))
            arrow((black, 3 * m - 1), (w1, m))
            arrow((black, 3 * m + 1), (w1, m))
            arrow((w2, m), (black, 3 * m))
            arrow((black, 3 * m - 1), (w2, m))
            arrow((black, 3 * m + 1), (w2, m))
            arrow((w3, m), (black, 3 * m))
        else:
            arrow((black, 3 * m), (w1, m))
            arrow((w2, m), (black, 3 * m - 1))
            arrow((w2, m), (black, 3 * m + 1))
            arrow((black, 3 * m), (w2, m))
            arrow((w3, m), (black, 3 * m - 1))
            arrow((w3, m), (black, 3 * m + 1))
            arrow((black, 3 * m - 2), (w3, m))
            arrow((black, 3 * m), (w3, m))
            arrow((black, 3 * m + 2), (w3, m))

    def sgn(lab):
        a, m = lab
        if a == black:
            return 1 if m % 2 == 1 else -1
        if a == w1:
            return 1 if m % 2 == 0 else -1
        if a == w3:
            return 1 if m % 2 == 1 else -1
        return 0

    cycle = {w1: w2, w2: w3, w3: w1, black: black}

    def block_pred(lab):
        a, m = lab
        if a == black:
            return 1 if m % 2 == 1 else 2
        if a == w1 and m % 2 == 0:
            return 1
        if a == w3 and m % 2 == 1:
            return 2
        return 0

    return _assemble(
        dt,
        level,
        labels,
        sgn,
        arrows,
        nu_images=lambda lab: (cycle[lab[0]], lab[1]),
        block_pred=block_pred,
    )


@functools.lru_cache(maxsize=None)
def build_family_loop(dt: DynkinType, level: int) -> FamilyLoop:
    """Quiver and mutation loop of (dt, level); raises for level < 2."""
    if level < 2:
        raise ValueError("level must be >= 2")
    fam = dt.family
    if fam in "ADE":
        return _build_ade(dt, level)
    if fam == "B":
        return _build_b(dt, level)
    if fam == "C":
        return _build_c(dt, level)
    if fam == "F":
        return _build_f(dt, level)
    return _build_g(dt, level)


def expected_nz_plus(dt: DynkinType, level: int) -> list[list[int]]:
    """Closed-form A_+: block-diagonal Cartan matrices of type A_{t_a l - 1}."""
    rs = build_root_system(dt)
    jdx = []
    for a in range(1, dt.rank + 1):
        for m in range(1, rs.t_values[a - 1] * level):
            jdx.append((a, m))
    size = len(jdx)
    out = [[0] * size for _ in range(size)]
    for i, (a, m) in enumerate(jdx):
        for j, (b, k) in enumerate(jdx):
            if a == b:
                if m == k:
                    out[i][j] = 2
                elif abs(m - k) == 1:
                    out[i][j] = -1
    return out


def expected_nz_minus(dt: DynkinType, level: int) -> list[list[Fraction]]:
    """Closed-form A_- = A_+ K with K the folded min-kernel matrix."""
    from ysys.network import k_closed_form

    ap = expected_nz_plus(dt, level)
    km = k_closed_form(dt, level)
    size = len(ap)
    out = [
        [sum(ap[i][n] * km[n][j] for n in range(size)) for j in range(size)]
        for i in range(size)
    ]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def cross_validate_network(fl: FamilyLoop) -> bool:
    """Check the constructed loop's NZ matrices against the closed forms.

    Mismatching entries indicate a quiver-encoding bug; the diagnostic lists
    them all.
    """
    from ysys.network import build_network, family_nz_matrices

    nz = family_nz_matrices(fl, build_network(fl.loop))
    ap_exp = expected_nz_plus(fl.dynkin, fl.level)
    am_exp = expected_nz_minus(fl.dynkin, fl.level)
    bad = []
    size = len(ap_exp)
    for i in range(size):
        for j in range(size):
            if nz.a_plus[i][j] != ap_exp[i][j]:
                bad.append(("A+", i, j, nz.a_plus[i][j], ap_exp[i][j]))
            if nz.a_minus[i][j] != am_exp[i][j]:
                bad.append(("A-", i, j, nz.a_minus[i][j], am_exp[i][j]))
    if bad:
        lines = "\n".join(
            f"  {which}[{i},{j}] = {got}, expected {want}"
            for which, i, j, got, want in bad[:40]
        )
        raise AssertionError(
            f"network mismatch for {fl.dynkin} level {fl.level}:\n{lines}"
        )
    return True
