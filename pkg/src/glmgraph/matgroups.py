"""Decision procedures for finitely generated subgroups of GL_n(Q).

Three questions are answered about ``<M_1, ..., M_k>``: is it finite, is it
conjugate in GL_n(R) into O(n), and is it conjugate in GL_n(Q) into GL_n(Z).
Positive answers carry exact certificates; negative answers carry an exact
witness; anything else is reported as undecided together with diagnostics.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .errors import DimError, NotAGroup
from .exact import (
    Lattice,
    MatQ,
    SymQ,
    char_poly,
    has_root_outside_unit_circle,
    is_positive_definite,
    lattice_image,
    lattice_intersect,
    order_of,
    solve_linear_subspace,
)
from .exact.matrix import nullspace

YES, NO, UNDECIDED = "yes", "no", "undecided"


@dataclass(frozen=True)
class MatGroupGens:
    n: int
    gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for m in self.gens:
            if m.shape != (self.n, self.n):
                raise DimError(f"generator of shape {m.shape} in dimension {self.n}")
            if m.det() == 0:
                raise ValueError("generators must be invertible")

    def letters(self):
        """(index, sign) pairs for every generator and inverse."""
        return [(i, s) for i in range(len(self.gens)) for s in (1, -1)]

    def matrix(self, word):
        acc = MatQ.identity(self.n)
        for i, s in word:
            acc = acc @ (self.gens[i] if s == 1 else self.gens[i].inverse())
        return acc

    def conjugate(self, q):
        qi = q.inverse()
        return MatGroupGens(self.n, tuple(q @ m @ qi for m in self.gens))


def short_words(group, depth):
    """Freely reduced words of length 1..depth over generators and inverses."""
    letters = group.letters()
    for length in range(1, depth + 1):
        for word in itertools.product(letters, repeat=length):
            if any(a[0] == b[0] and a[1] == -b[1] for a, b in zip(word, word[1:])):
                continue
            yield word


def gl_f3_order(n):
    return prod(3 ** n - 3 ** i for i in range(n))


# certificates -----------------------------------------------------------------


@dataclass(frozen=True)
class FormCertificate:
    S: SymQ
    kind: str = field(default="form", init=False)


@dataclass(frozen=True)
class LatticeCertificate:
    L: Lattice
    kind: str = field(default="lattice", init=False)


@dataclass(frozen=True)
class ClosureCertificate:
    order: int
    elements: tuple
    kind: str = field(default="closure", init=False)


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: object = None
    witness: dict = None
    diagnostics: dict = None

    @property
    def yes(self):
        return self.status == YES

    @property
    def no(self):
        return self.status == NO


@dataclass(frozen=True)
class FinitenessResult:
    finite: bool
    order: int = None
    elements: tuple = None
    witness: tuple = None  # word
    reason: str = None

    @property
    def certificate(self):
        if not self.finite:
            return None
        return ClosureCertificate(self.order, self.elements)


def verify_certificate(group, cert):
    if isinstance(cert, FormCertificate):
        s = cert.S
        if s.shape != (group.n, group.n) or not s.is_symmetric():
            return False
        if any(m.T @ s @ m != s for m in group.gens):
            return False
        return is_positive_definite(s)
    if isinstance(cert, LatticeCertificate):
        if cert.L.n != group.n:
            return False
        return all(lattice_image(m, cert.L) == cert.L for m in group.gens)
    if isinstance(cert, ClosureCertificate):
        elems = set(cert.elements)
        if len(elems) != cert.order or len(cert.elements) != cert.order:
            return False
        if MatQ.identity(group.n) not in elems:
            return False
        return all(x @ m in elems for x in elems for m in group.gens)
    raise TypeError(f"unknown certificate {cert!r}")


def transform_certificate(cert, q):
    """Certificate for the conjugated group {Q M Q^-1}."""
    qi = q.inverse()
    if isinstance(cert, FormCertificate):
        return FormCertificate(SymQ((qi.T @ cert.S @ qi).rows))
    if isinstance(cert, LatticeCertificate):
        return LatticeCertificate(lattice_image(q, cert.L))
    if isinstance(cert, ClosureCertificate):
        return ClosureCertificate(cert.order, tuple(q @ x @ qi for x in cert.elements))
    raise TypeError(f"unknown certificate {cert!r}")


# finiteness --------------------------------------------------------------------


def decide_finite(group, cap=None, depth=2):
    """Finite(order) or Infinite(witness word, reason).

    The closure search is complete: a finite subgroup of GL_n(Q) is conjugate
    into GL_n(Z) and reduction mod 3 is injective on it, so its order is at
    most |GL_n(F_3)|.  Every element of a finite group has integral trace of
    absolute value at most n, which prunes infinite groups early.
    """
    n = group.n
    cap = gl_f3_order(n) if cap is None else cap
    for i, m in enumerate(group.gens):
        if abs(m.det()) != 1:
            return FinitenessResult(False, witness=((i, 1),), reason="non-unit determinant")
    for word in short_words(group, depth):
        if order_of(group.matrix(word)) is None:
            return FinitenessResult(False, witness=word, reason="infinite-order element")
    ident = MatQ.identity(n)
    steps = [(i, s, group.gens[i] if s == 1 else group.gens[i].inverse())
             for i, s in group.letters()]
    parent = {ident: None}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for i, s, m in steps:
            y = x @ m
            if y in parent:
                continue
            parent[y] = (x, (i, s))
            tr = y.trace()
            if tr.denominator != 1 or abs(tr) > n:
                return FinitenessResult(False, witness=_word_to(parent, y),
                                        reason="infinite-order element")
            order.append(y)
            if len(order) > cap:
                return FinitenessResult(False, witness=_word_to(parent, y),
                                        reason="closure cap exceeded")
            queue.append(y)
    return FinitenessResult(True, order=len(order), elements=tuple(order))


def _word_to(parent, y):
    word = []
    while parent[y] is not None:
        y, letter = parent[y]
        word.append(letter)
    return tuple(reversed(word))


# invariant forms -------------------------------------------------------------------


def invariant_form_space(group):
    return solve_linear_subspace(group.n, list(group.gens))


def _primitive_form(s):
    d = s.denominator()
    g = 0
    for r in s.rows:
        for x in r:
            g = gcd(g, int(x * d))
    return SymQ((s * Fraction(d, g)).rows)


def _form_witness(group, depth):
    """Exact reason no invariant positive-definite form exists, if one is seen."""
    for word in short_words(group, depth):
        m = group.matrix(word)
        cp = char_poly(m)
        if has_root_outside_unit_circle(cp):
            return {"word": word, "char_poly": str(cp),
                    "reason": "eigenvalue of modulus > 1"}
        if (cp.is_integral() and abs(cp.coeffs[0]) == 1
                and not has_root_outside_unit_circle(cp.reciprocal())
                and order_of(m) is None):
            # all eigenvalues are roots of unity but M has infinite order,
            # so M is not semisimple
            return {"word": word, "char_poly": str(cp),
                    "reason": "non-semisimple element with root-of-unity eigenvalues"}
    return None


def _common_kernel(basis):
    n = basis[0].n
    rows = [list(r) for s in basis for r in s.rows]
    return nullspace(rows, n)


def _numeric_form(group, basis, *, iterations, tol, den_cap):
    n = group.n
    mats = []
    for m in group.gens:
        mats.append(np.array(m.rows, dtype=float))
        mats.append(np.array(m.inverse().rows, dtype=float))
    s = np.eye(n)
    diff = float("inf")
    it = 0
    for it in range(1, iterations + 1):
        t = sum(a.T @ s @ a for a in mats) / len(mats)
        new = 0.5 * (s + t)
        new *= n / np.trace(new)
        diff = float(np.max(np.abs(new - s)))
        s = new
        if diff < tol:
            break
    flat = np.array([np.array(b.rows, dtype=float).ravel() for b in basis]).T
    coords, *_ = np.linalg.lstsq(flat, s.ravel(), rcond=None)
    residual = float(np.max(np.abs(flat @ coords - s.ravel())))
    # forms are scale-free; rationalise relative to the largest coordinate
    coords = coords / np.max(np.abs(coords))
    tried = []
    caps = []
    c = 1
    while c < den_cap:
        caps.append(c)
        c *= 10
    caps.append(den_cap)
    for cap in caps:
        q = [Fraction(float(x)).limit_denominator(cap) for x in coords]
        if not any(q):
            continue
        cand = basis[0] * q[0]
        for b, x in zip(basis[1:], q[1:]):
            cand = cand + b * x
        tried.append(cap)
        if is_positive_definite(cand):
            return SymQ(cand.rows), {"iterations": it, "last_step": diff,
                                    "projection_residual": residual, "denominator_caps": tried}
    eig = float(np.min(np.linalg.eigvalsh((s + s.T) / 2)))
    return None, {"iterations": it, "last_step": diff, "projection_residual": residual,
                  "denominator_caps": tried, "min_eigenvalue": eig}


def decide_conjugate_into_On(group, *, finiteness=None, depth=2, iterations=200,
                             tol=1e-12, den_cap=10 ** 6):
    n = group.n
    fin = decide_finite(group, depth=depth) if finiteness is None else finiteness
    if fin.finite:
        s = MatQ.zeros(n)
        for a in fin.elements:
            s = s + a.T @ a
        return Verdict(YES, FormCertificate(_primitive_form(s)),
                       diagnostics={"method": "group averaging", "group_order": fin.order})
    basis = invariant_form_space(group)
    if not basis:
        return Verdict(NO, witness={"reason": "no nonzero invariant symmetric form"},
                       diagnostics={"form_space_dim": 0})
    diag = {"form_space_dim": len(basis)}
    wit = _form_witness(group, depth)
    if wit is not None:
        return Verdict(NO, witness=wit, diagnostics=diag)
    if len(basis) == 1:
        for s in (basis[0], -basis[0]):
            if is_positive_definite(s):
                return Verdict(YES, FormCertificate(_primitive_form(s)),
                               diagnostics={**diag, "method": "one-dimensional form space"})
        return Verdict(NO, witness={"reason": "invariant forms span a line with no definite element",
                                    "form": basis[0].to_strings()}, diagnostics=diag)
    kernel = _common_kernel(basis)
    if kernel:
        return Verdict(NO, witness={"reason": "every invariant form is degenerate on a common vector",
                                    "vector": [str(x) for x in kernel[0]]}, diagnostics=diag)
    s, info = _numeric_form(group, basis, iterations=iterations, tol=tol, den_cap=den_cap)
    diag.update(info)
    if s is not None:
        s = _primitive_form(s)
        if verify_certificate(group, FormCertificate(s)):
            return Verdict(YES, FormCertificate(s), diagnostics={**diag, "method": "averaging"})
    return Verdict(UNDECIDED, diagnostics=diag)


# invariant lattices ----------------------------------------------------------------


def decide_conjugate_into_GLnZ(group, *, max_iters=64, window=8, depth=2):
    """Search for a lattice preserved by every generator.

    Starting from Z^n, repeatedly add the images under all generators and
    inverses.  If some invariant lattice exists the chain is bounded and the
    indices strictly drop, so it stabilises.
    """
    for word in short_words(group, depth):
        m = group.matrix(word)
        d = m.det()
        if abs(d) != 1:
            return Verdict(NO, witness={"word": word, "det": str(d),
                                        "reason": "determinant is not a unit"})
        cp = char_poly(m)
        if not cp.is_integral():
            return Verdict(NO, witness={"word": word, "char_poly": str(cp),
                                        "reason": "characteristic polynomial is not integral"})
    mats = []
    for m in group.gens:
        mats.extend([m, m.inverse()])
    lat = Lattice.standard(group.n)
    denominators = [lat.denominator]
    for it in range(1, max_iters + 1):
        vecs = lat.basis.columns()
        for m in mats:
            vecs.extend((m @ lat.basis).columns())
        new = Lattice.from_generators(group.n, vecs)
        if new == lat:
            return Verdict(YES, LatticeCertificate(lat), diagnostics={"iterations": it})
        lat = new
        denominators.append(lat.denominator)
    tail = denominators[-(window + 1):]
    growing = len(tail) > window and all(a < b for a, b in zip(tail, tail[1:]))
    return Verdict(UNDECIDED, diagnostics={"iterations": max_iters,
                                           "denominators": denominators,
                                           "denominator_growth": growing})


def finite_group_invariant_lattice(elements):
    """Intersection of A(Z^n) over a finite matrix group."""
    elements = list(elements)
    if not elements:
        raise NotAGroup("empty element list")
    elems = set(elements)
    n = elements[0].n
    if MatQ.identity(n) not in elems or any(a @ b not in elems for a in elems for b in elems):
        raise NotAGroup("element list is not closed under multiplication")
    std = Lattice.standard(n)
    lat = std
    for a in elements:
        lat = lattice_intersect(lat, lattice_image(a, std))
    return lat
