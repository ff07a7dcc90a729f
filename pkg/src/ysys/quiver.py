"""Quivers as skew-symmetric integer matrices, mutation, mutation loops.

A quiver with n vertices (no 1-loops, no 2-cycles) is the skew-symmetric
integer matrix B with B[i][j] = #arrows(i -> j) - #arrows(j -> i).
Vertex indices are 0-based; label maps live in `family`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Quiver", "Permutation", "MutationLoop", "QuiverError"]


class QuiverError(ValueError):
    pass


def _freeze(mat: np.ndarray) -> np.ndarray:
    mat.setflags(write=False)
    return mat


@dataclass(frozen=True)
class Quiver:
    b: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.b, dtype=np.int64)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise QuiverError("B must be a square matrix")
        if not np.array_equal(b, -b.T):
            raise QuiverError("B must be skew-symmetric")
        object.__setattr__(self, "b", _freeze(b.copy()))

    @property
    def n(self) -> int:
        return self.b.shape[0]

    def arrows(self, i: int, j: int) -> int:
        """Number of arrows i -> j, max(0, B_ij)."""
        return max(0, int(self.b[i, j]))

    def mutate(self, k: int) -> "Quiver":
        """Quiver mutation at vertex k (matrix form of the three-step rule)."""
        n = self.n
        if not 0 <= k < n:
            raise QuiverError(f"vertex {k} out of range for n={n}")
        b = self.b
        bp = b.copy()
        bp[k, :] = -b[k, :]
        bp[:, k] = -b[:, k]
        col = b[:, k]
        row = b[k, :]
        # B_ij + sgn(B_ik) max(B_ik B_kj, 0) for i, j != k
        pos = np.outer(np.maximum(col, 0), np.maximum(row, 0))
        neg = np.outer(np.maximum(-col, 0), np.maximum(-row, 0))
        delta = pos - neg
        delta[k, :] = 0
        delta[:, k] = 0
        bp += delta
        out = object.__new__(Quiver)
        object.__setattr__(out, "b", _freeze(bp))
        return out

    def permuted(self, nu: "Permutation") -> "Quiver":
        """Relabeled quiver sigma(Q)_{ij} = Q_{nu^-1(i), nu^-1(j)}."""
        if nu.n != self.n:
            raise QuiverError("permutation size mismatch")
        inv = nu.inverse().images
        bp = self.b[np.ix_(inv, inv)].copy()
        out = object.__new__(Quiver)
        object.__setattr__(out, "b", _freeze(bp))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and np.array_equal(self.b, other.b)

    def __hash__(self):
        return hash(self.b.tobytes())

    def to_json(self) -> dict:
        return {"n": self.n, "b": self.b.tolist()}

    @staticmethod
    def from_json(data: dict) -> "Quiver":
        return Quiver(np.array(data["b"], dtype=np.int64))


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0..n-1}; images[i] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise QuiverError("not a permutation")
        object.__setattr__(self, "images", images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self*other)(i) = self(other(i))."""
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            orb = []
            j = i
            while not seen[j]:
                seen[j] = True
                orb.append(j)
                j = self.images[j]
            out.append(tuple(orb))
        return out

    def orbit_of(self, i: int) -> tuple[int, ...]:
        orb = [i]
        j = self.images[i]
        while j != i:
            orb.append(j)
            j = self.images[j]
        return tuple(sorted(orb))


@dataclass(frozen=True)
class MutationLoop:
    """A triple (Q, m, nu) with nu(Q(T)) = Q(0); closure checked eagerly."""

    quiver: Quiver
    seq: tuple[int, ...]
    nu: Permutation
    _quivers: tuple[Quiver, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        seq = tuple(int(k) for k in self.seq)
        object.__setattr__(self, "seq", seq)
        if self.nu.n != self.quiver.n:
            raise QuiverError("permutation size mismatch")
        qs = [self.quiver]
        for k in seq:
            qs.append(qs[-1].mutate(k))
        if qs[-1].permuted(self.nu) != self.quiver:
            raise QuiverError("not a mutation loop: nu(Q(T)) != Q(0)")
        object.__setattr__(self, "_quivers", tuple(qs))

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def length(self) -> int:
        return len(self.seq)

    def quiver_at(self, t: int) -> Quiver:
        """Q(t), the quiver after the first t mutations (0 <= t <= T)."""
        return self._quivers[t]

    def is_regular(self) -> bool:
        """Every nu-orbit meets the sequence, and each at most once."""
        orbit_reps = {}
        for orb in self.nu.orbits():
            for v in orb:
                orbit_reps[v] = orb[0]
        hit = [orbit_reps[k] for k in self.seq]
        return len(set(hit)) == len(hit) and set(hit) == set(orbit_reps.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b": self.quiver.b.tolist(),
            "m": list(self.seq),
            "nu": list(self.nu.images),
        }

    @staticmethod
    def from_json(data: dict) -> "MutationLoop":
        return MutationLoop(
            Quiver(np.array(data["b"], dtype=np.int64)),
            tuple(data["m"]),
            Permutation(tuple(data["nu"])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def loads(text: str) -> "MutationLoop":
        return MutationLoop.from_json(json.loads(text))
