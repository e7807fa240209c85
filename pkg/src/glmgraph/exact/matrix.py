"""Exact rational matrices.

Scalars are :class:`fractions.Fraction`, which is always reduced with a
positive denominator.  Matrices are immutable and hashable so that they can
be stored in sets during group closure computations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm

from ..errors import DimError, SingularError
from .poly import Poly

Rat = Fraction


def rat(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x):
    """``num/den`` (or ``num`` when integral); never a decimal."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class MatQ:
    """Immutable n x n (or n x k) matrix over Q."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(rat(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimError("ragged matrix")
        self.rows = rows
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n, k=None):
        return cls([[0] * (n if k is None else k) for _ in range(n)])

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        cols = list(cols)
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    # basic protocol -------------------------------------------------------

    @property
    def n(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.n, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, MatQ) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"MatQ({self.to_strings()})"

    def to_strings(self):
        return [[rat_str(x) for x in r] for r in self.rows]

    def tolist(self):
        return [list(r) for r in self.rows]

    def columns(self):
        return [tuple(self.rows[i][j] for i in range(self.n)) for j in range(self.ncols)]

    @property
    def T(self):
        return MatQ(list(zip(*self.rows)))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        _same_shape(self, other)
        return MatQ([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        _same_shape(self, other)
        return MatQ([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatQ([[-a for a in r] for r in self.rows])

    def __mul__(self, c):
        c = rat(c)
        return MatQ([[a * c for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, MatQ):
            if self.ncols != other.n:
                raise DimError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            return MatQ([[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols]
                         for r in self.rows])
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise DimError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), Fraction(0)) for r in self.rows)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = MatQ.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # predicates -------------------------------------------------------------

    def is_square(self):
        return self.n == self.ncols

    def is_identity(self):
        return self == MatQ.identity(self.n)

    def is_integral(self):
        return all(x.denominator == 1 for r in self.rows for x in r)

    def is_symmetric(self):
        return self.is_square() and all(self.rows[i][j] == self.rows[j][i]
                                        for i in range(self.n) for j in range(i))

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def denominator(self):
        return lcm(1, *(x.denominator for r in self.rows for x in r))

    # elimination --------------------------------------------------------------

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DimError("determinant of a non-square matrix")
        n = self.n
        if n == 0:
            return Fraction(1)
        scale = Fraction(1)
        a = []
        for r in self.rows:
            d = lcm(1, *(x.denominator for x in r))
            scale /= d
            a.append([int(x * d) for x in r])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            akk = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * akk - a[i][k] * a[k][j]) // prev
            prev = akk
        return sign * a[n - 1][n - 1] * scale

    def inverse(self):
        if not self.is_square():
            raise DimError("inverse of a non-square matrix")
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise SingularError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return MatQ([r[n:] for r in a])


def _same_shape(a, b):
    if a.shape != b.shape:
        raise DimError(f"shape mismatch {a.shape} vs {b.shape}")


class SymQ(MatQ):
    """Symmetric rational matrix, used as a Gram matrix."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_symmetric():
            raise ValueError("SymQ entries must be symmetric")

    def __repr__(self):
        return f"SymQ({self.to_strings()})"


def as_sym(m):
    return m if isinstance(m, SymQ) else SymQ(m.rows)


def is_positive_definite(s):
    """Exact PD test by rational LDL^T on the diagonal.

    Without pivoting, the k-th pivot is the ratio of consecutive leading
    principal minors, so S > 0 iff every pivot is positive.
    """
    n = s.n
    a = [list(r) for r in s.rows]
    for k in range(n):
        p = a[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return True


# symmetric-matrix coordinates ----------------------------------------------


def sym_index(n):
    """Coordinates (i, j), i <= j, in lexicographic order."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym_from_coords(n, coords):
    idx = sym_index(n)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in zip(idx, coords):
        rows[i][j] = rows[j][i] = Fraction(c)
    return SymQ(rows)


def invariance_constraints(m):
    """Rows of the linear system M^T S M - S = 0 in the (i <= j) coordinates."""
    n = m.n
    idx = sym_index(n)
    cols = []
    for (a, b) in idx:
        e = [[Fraction(0)] * n for _ in range(n)]
        e[a][b] = e[b][a] = Fraction(1)
        e = MatQ(e)
        img = m.T @ e @ m - e
        cols.append([img[i, j] for (i, j) in idx])
    return [list(r) for r in zip(*cols)]


def nullspace(rows, nvars):
    """Basis of the rational solution space of ``rows @ x = 0``.

    Reduced row echelon form with columns scanned left to right; each basis
    vector is the primitive integer multiple with its free coordinate positive.
    """
    a = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nvars
        v[f] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[f]
        basis.append(_primitive(v))
    return basis


def _primitive(v):
    from math import gcd

    d = lcm(1, *(x.denominator for x in v))
    ints = [int(x * d) for x in v]
    g = reduce(gcd, ints, 0) or 1
    return [Fraction(x // g) for x in ints]


def solve_linear_subspace(n, constraints=()):
    """Basis of the subspace of Sym_n cut out by linear constraints.

    Each constraint is a coefficient row over the n(n+1)/2 coordinates
    S[i][j], i <= j, in lexicographic order; a constraint may also be given
    as a MatQ M, meaning M^T S M = S.
    """
    rows = []
    for c in constraints:
        if isinstance(c, MatQ):
            if c.shape != (n, n):
                raise DimError("constraint matrix has the wrong size")
            rows.extend(invariance_constraints(c))
        else:
            if len(c) != n * (n + 1) // 2:
                raise DimError("constraint row has the wrong length")
            rows.append(list(c))
    return [sym_from_coords(n, v) for v in nullspace(rows, n * (n + 1) // 2)]


def char_poly(m):
    """det(xI - M) by the Faddeev-LeVerrier recursion."""
    n = m.n
    if n == 0:
        return Poly([1])
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = MatQ.identity(n)
    mk = MatQ.zeros(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(m @ mk).trace() / k
    return Poly(coeffs)


# finite order ------------------------------------------------------------------


def totient(m):
    result = m
    p = 2
    k = m
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


_candidate_cache = {}


def candidate_orders(n):
    """Orders of finite-order elements of GL_n(Q).

    An element of order m has m = lcm(m_1, ..., m_r) for cyclotomic factors
    Phi_{m_i} of its characteristic polynomial, so sum(phi(m_i)) <= n.
    """
    if n in _candidate_cache:
        return _candidate_cache[n]
    bound = 2 * n * n + 2
    small = [m for m in range(1, bound + 1) if totient(m) <= n]
    reach = {(0, 1)}
    for m in small:
        cost = totient(m)
        new = set(reach)
        for c, l in reach:
            c2 = c + cost
            while c2 <= n:
                new.add((c2, lcm(l, m)))
                c2 += cost
        reach = new
    result = tuple(sorted({l for _, l in reach}))
    _candidate_cache[n] = result
    return result


def order_of(m):
    """Least k >= 1 with M^k = I, or None when M has infinite order."""
    d = m.det()
    if d == 0:
        raise SingularError("order of a singular matrix")
    if abs(d) != 1:
        return None
    cp = char_poly(m)
    if not cp.is_integral():
        return None
    ident = MatQ.identity(m.n)
    for k in candidate_orders(m.n):
        if m ** k == ident:
            return k
    return None
