"""Exact linear algebra over the rationals for small dense systems.

Vectors are tuples of Fraction, matrices are tuples of row tuples.
Everything is deterministic: pivots are always the leftmost nonzero
coordinate, and no floats appear anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(v: Vec, c: Fraction) -> Vec:
    return tuple(c * a for a in v)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def mat_vec(m: Mat, v: Vec) -> Vec:
    """Apply a matrix given as rows to a column vector."""
    return tuple(sum((a * b for a, b in zip(row, v, strict=True)), ZERO) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col, strict=True)), ZERO) for col in bt)
        for row in a
    )


class RrefBasis:
    """A subspace kept in reduced row echelon form.

    Supports incremental growth, membership tests and quotient
    coordinates (the non-pivot coordinates after full reduction).
    """

    __slots__ = ("dim", "rows", "pivots")

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[Vec] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "RrefBasis":
        other = RrefBasis(self.dim)
        other.rows = list(self.rows)
        other.pivots = list(self.pivots)
        return other

    def reduce(self, v: Sequence[Fraction]) -> Vec:
        cur = list(v)
        for piv, row in zip(self.pivots, self.rows):
            c = cur[piv]
            if c != 0:
                for j in range(piv, self.dim):
                    cur[j] -= c * row[j]
        return tuple(cur)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero(self.reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert a vector; returns True if the rank grew."""
        res = self.reduce(v)
        piv = next((j for j, x in enumerate(res) if x != 0), None)
        if piv is None:
            return False
        res = scale(res, ONE / res[piv])
        # eliminate the new pivot from existing rows, keep rows sorted by pivot
        self.rows = [sub(r, scale(res, r[piv])) if r[piv] != 0 else r for r in self.rows]
        pos = next((i for i, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(pos, res)
        self.pivots.insert(pos, piv)
        return True

    def add_all(self, vectors: Iterable[Sequence[Fraction]]) -> None:
        for v in vectors:
            self.add(v)

    def nonpivot_coords(self) -> list[int]:
        pivset = set(self.pivots)
        return [j for j in range(self.dim) if j not in pivset]

    def quotient_coords(self, v: Sequence[Fraction]) -> Vec:
        """Coordinates of the class of v in the quotient by this subspace."""
        res = self.reduce(v)
        return tuple(res[j] for j in self.nonpivot_coords())

    def equals(self, other: "RrefBasis") -> bool:
        return self.dim == other.dim and self.rows == other.rows


def span(vectors: Iterable[Sequence[Fraction]], dim: int) -> RrefBasis:
    basis = RrefBasis(dim)
    basis.add_all(vectors)
    return basis


def nullspace(rows: Sequence[Sequence[Fraction]], dim: int) -> list[Vec]:
    """Basis of {x : A x = 0} for A given by rows acting on length-dim vectors."""
    constraints = span(rows, dim)
    pivots = constraints.pivots
    free = constraints.nonpivot_coords()
    basis = []
    for f in free:
        x = [ZERO] * dim
        x[f] = ONE
        for piv, row in zip(pivots, constraints.rows):
            x[piv] = -row[f]
        basis.append(tuple(x))
    return basis
