"""Univariate polynomials over Q and exact unit-circle root tests."""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class Poly:
    """Polynomial with rational coefficients, lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_descending(cls, coeffs):
        return cls(list(coeffs)[::-1])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self or not other:
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return Poly([]), Poly(rem)
        quot = [Fraction(0)] * dq
        lead = other.leading
        for k in range(dq - 1, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m):
        """Horner evaluation at a square matrix."""
        from .matrix import MatQ

        ident = MatQ.identity(m.n)
        acc = MatQ.zeros(m.n)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident * c
        return acc

    def derivative(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self:
            return self
        lead = self.leading
        return Poly([c / lead for c in self.coeffs])

    def reciprocal(self):
        """x^deg * p(1/x)."""
        return Poly(self.coeffs[::-1])

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def primitive(self):
        """Positive-leading integer multiple with content 1."""
        if not self:
            return self
        d = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * d) for c in self.coeffs]
        from math import gcd

        g = 0
        for x in ints:
            g = gcd(g, x)
        if ints[-1] < 0:
            g = -g
        return Poly([x // g for x in ints])


def _coerce(x):
    return x if isinstance(x, Poly) else Poly([x])


def poly_gcd(a, b):
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
        # primitive parts keep coefficient growth in check
        if b:
            b = b.primitive()
    return a.monic()


def squarefree_part(p):
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p):
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        seq.append(r)
    return seq


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, lo, hi):
    """Distinct real roots of p in (lo, hi]."""
    seq = sturm_sequence(p)
    return _sign_changes([q(lo) for q in seq]) - _sign_changes([q(hi) for q in seq])


def descartes_positive(p):
    """Sign changes of the coefficient sequence.

    Exact count of positive roots when every root of p is real.
    """
    return _sign_changes(p.coeffs)


def schur_cohn_matrix(p):
    """Hermitian form whose inertia counts roots inside/outside |z| = 1.

    For p of degree d with real coefficients this is A A^T - B B^T with A, B
    the lower-triangular Toeplitz matrices built from (a_d, ..., a_1) and
    (a_0, ..., a_{d-1}).  When p and its reciprocal are coprime, the number of
    positive (negative) eigenvalues equals the number of roots strictly inside
    (outside) the unit circle.
    """
    from .matrix import MatQ

    a = p.coeffs
    d = p.degree
    rows = []
    for j in range(d):
        row = []
        for k in range(d):
            s = Fraction(0)
            for i in range(min(j, k) + 1):
                s += a[d - j + i] * a[d - k + i] - a[j - i] * a[k - i]
            row.append(s)
        rows.append(row)
    return MatQ(rows)


def _inertia(sym):
    from .matrix import char_poly

    cp = char_poly(sym)
    pos = descartes_positive(cp)
    neg = descartes_positive(Poly([c * (-1) ** k for k, c in enumerate(cp.coeffs)]))
    return pos, neg


def _reciprocal_pairs_on_circle(g):
    """True iff every root of the self-reciprocal factor g has modulus 1."""
    g = squarefree_part(g)
    for r in (1, -1):
        while g.degree > 0 and g(r) == 0:
            g = g // Poly([-r, 1])
    if g.degree <= 0:
        return True
    if g.degree % 2:
        # odd self-reciprocal squarefree polynomials vanish at 1 or -1
        raise ArithmeticError("unexpected odd self-reciprocal factor")
    m = g.degree // 2
    c = g.coeffs
    # g(z) = z^m R(z + 1/z), with z^k + z^-k = V_k(z + 1/z)
    y = Poly([0, 1])
    v_prev, v_cur = Poly([2]), y
    r = Poly([c[m]])
    for k in range(1, m + 1):
        r = r + c[m + k] * v_cur
        v_prev, v_cur = v_cur, y * v_cur - v_prev
    return count_real_roots(r, Fraction(-2), Fraction(2)) == r.degree


def has_root_outside_unit_circle(p):
    """Exactly decide whether p has a root z with |z| > 1."""
    p = Poly(p.coeffs).monic()
    while p.degree > 0 and p.coeffs[0] == 0:
        p = Poly(p.coeffs[1:])
    if p.degree <= 0:
        return False
    g = poly_gcd(p, p.reciprocal())
    h = p
    while True:
        common = poly_gcd(h, g)
        if common.degree <= 0:
            break
        h = h // common
    if h.degree > 0:
        _, outside = _inertia(schur_cohn_matrix(h))
        if outside:
            return True
    if g.degree > 0:
        return not _reciprocal_pairs_on_circle(g)
    return False


def has_all_roots_on_unit_circle(p):
    """True iff every root of p (p(0) != 0) lies on |z| = 1."""
    if p.coeffs and p.coeffs[0] == 0:
        return False
    return not has_root_outside_unit_circle(p) and not has_root_outside_unit_circle(p.reciprocal())
