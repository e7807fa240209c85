"""Hermite normal form and full-rank lattices in Q^n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from ..errors import ContainmentError, DimError, RankError, SingularError
from .matrix import MatQ


def _xgcd(a, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(m):
    """Column-style Hermite normal form of an integer n x k matrix of rank n.

    Returns ``(H, U)`` with ``M @ U == [H | 0]``, U unimodular (k x k) and H
    the n x n upper-triangular matrix whose pivots H[i][i] are positive and
    whose entries to the right of each pivot lie in [0, pivot).
    """
    rows = []
    for r in (m.rows if isinstance(m, MatQ) else m):
        row = [Fraction(x) for x in r]
        if any(x.denominator != 1 for x in row):
            raise ValueError("hnf needs an integer matrix")
        rows.append([int(x) for x in row])
    n = len(rows)
    k = len(rows[0]) if n else 0
    # work on columns; each column carries its U-column along
    cols = [[rows[i][j] for i in range(n)] for j in range(k)]
    ucols = [[int(i == j) for i in range(k)] for j in range(k)]

    def combine(a, b, x, y):
        return [x * p + y * q for p, q in zip(a, b)]

    active = list(range(k))
    pivot_col = [None] * n
    for i in range(n - 1, -1, -1):
        live = [j for j in active if cols[j][i] != 0]
        if not live:
            raise RankError("matrix does not have full row rank")
        p = live[0]
        for j in live[1:]:
            a, b = cols[p][i], cols[j][i]
            x, y, g = _xgcd(a, b)
            # [p j] <- [p j] @ [[x, -b/g], [y, a/g]]  (determinant 1)
            newp = combine(cols[p], cols[j], x, y)
            newj = combine(cols[p], cols[j], -b // g, a // g)
            cols[p], cols[j] = newp, newj
            newup = combine(ucols[p], ucols[j], x, y)
            newuj = combine(ucols[p], ucols[j], -b // g, a // g)
            ucols[p], ucols[j] = newup, newuj
        if cols[p][i] < 0:
            cols[p] = [-v for v in cols[p]]
            ucols[p] = [-v for v in ucols[p]]
        pivot_col[i] = p
        active.remove(p)
    # reduce entries right of each pivot
    for jj in range(n):
        cj = pivot_col[jj]
        for i in range(jj - 1, -1, -1):
            ci = pivot_col[i]
            q = cols[cj][i] // cols[ci][i]
            if q:
                cols[cj] = [a - q * b for a, b in zip(cols[cj], cols[ci])]
                ucols[cj] = [a - q * b for a, b in zip(ucols[cj], ucols[ci])]
    order = pivot_col + active
    h = MatQ.from_columns([cols[j] for j in pivot_col]) if n else MatQ([])
    u = MatQ.from_columns([ucols[j] for j in order]) if k else MatQ([])
    return h, u


@dataclass(frozen=True)
class Lattice:
    """Full-rank Z-submodule of Q^n, stored as (1/denominator) * span(hnf).

    ``hnf`` is an integer upper-triangular matrix in canonical column HNF and
    ``denominator`` is minimal, so equal lattices have equal fields.
    """

    hnf: MatQ
    denominator: int

    @property
    def n(self):
        return self.hnf.n

    @property
    def basis(self):
        """Rational basis matrix, basis vectors as columns."""
        return self.hnf * Fraction(1, self.denominator)

    @classmethod
    def standard(cls, n):
        return cls(MatQ.identity(n), 1)

    @classmethod
    def from_generators(cls, n, vectors):
        """Lattice spanned by rational vectors (must span Q^n)."""
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        if any(len(v) != n for v in vectors):
            raise DimError("generator has the wrong length")
        if not vectors:
            raise RankError("no generators")
        d = lcm(1, *(x.denominator for v in vectors for x in v))
        ints = [[int(v[i] * d) for v in vectors] for i in range(n)]
        h, _ = hnf(ints)
        g = d
        for r in h.rows:
            for x in r:
                g = gcd(g, int(x))
        return cls(h * Fraction(1, g), d // g)

    @classmethod
    def from_basis(cls, b):
        return cls.from_generators(b.n, b.columns())

    def contains(self, v):
        x = self.basis.inverse() @ tuple(v)
        return all(c.denominator == 1 for c in x)

    def __contains__(self, v):
        return self.contains(v)

    def to_dict(self):
        return {"basis": self.basis.to_strings()}


def _check_dims(a, b):
    if a.n != b.n:
        raise DimError(f"lattices live in dimensions {a.n} and {b.n}")


def lattice_sum(a, b):
    _check_dims(a, b)
    return Lattice.from_generators(a.n, a.basis.columns() + b.basis.columns())


def dual_lattice(a):
    """{y : y.x in Z for all x in a}, basis B^{-T}."""
    return Lattice.from_basis(a.basis.inverse().T)


def lattice_intersect(a, b):
    """Largest common sublattice, via duality: (A* + B*)*."""
    _check_dims(a, b)
    return dual_lattice(lattice_sum(dual_lattice(a), dual_lattice(b)))


def lattice_image(m, a):
    if m.shape != (a.n, a.n):
        raise DimError("matrix and lattice dimensions differ")
    if m.det() == 0:
        raise SingularError("image of a lattice under a singular matrix")
    return Lattice.from_basis(m @ a.basis)


def lattice_index(big, small):
    """[big : small]; raises ContainmentError unless small <= big."""
    _check_dims(big, small)
    coords = big.basis.inverse() @ small.basis
    if not coords.is_integral():
        raise ContainmentError("lattice is not contained in the other")
    return int(abs(coords.det()))


def lattice_contains(big, small):
    _check_dims(big, small)
    return (big.basis.inverse() @ small.basis).is_integral()
