"""The modular homomorphism and its affine lift.

Everything is expressed in the coordinates of the base vertex group.  The
transport matrix P_w identifies G_w (x) Q with G_v (x) Q along the spanning
tree, so a vertex generator e_k of G_w acts on Q^n as the translation by
P_w e_k, and the stable letter of e acts linearly by M_e.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownGenerator
from .exact import MatQ
from .graph import OrientedEdge, stable_letter, vertex_letter


@dataclass(frozen=True)
class ModularRep:
    base_vertex: str
    transport: dict  # vertex -> P_w
    edge_images: dict  # (edge id, forward) -> M_e
    tree_edges: frozenset

    def image(self, e):
        return self.edge_images[(e.id, e.forward)]

    def generators(self):
        """Edge ids and matrices generating the image: one per non-tree pair."""
        return [(eid, m) for (eid, fwd), m in self.edge_images.items()
                if fwd and eid not in self.tree_edges]


def modular_generators(g, tree):
    n = g.rank
    ident = MatQ.identity(n)
    transport = {tree.root: ident}
    queue = deque([tree.root])
    tree_pairs = [e for e in g.edges if e.id in tree]
    while queue:
        v = queue.popleft()
        for pair in tree_pairs:
            for e in (OrientedEdge(pair, True), OrientedEdge(pair, False)):
                if e.initial == v and e.terminal not in transport:
                    transport[e.terminal] = transport[v] @ e.matrix @ e.reverse_matrix.inverse()
                    queue.append(e.terminal)
    images = {}
    for e in g.oriented_edges():
        p_from = transport[e.initial]
        p_to = transport[e.terminal]
        images[(e.id, e.forward)] = p_to @ e.reverse_matrix @ e.matrix.inverse() @ p_from.inverse()
    return ModularRep(tree.root, transport, images, tree.edges)


@dataclass(frozen=True)
class AffineElement:
    """x -> linear @ x + translation."""

    translation: tuple
    linear: MatQ

    @classmethod
    def identity(cls, n):
        return cls((Fraction(0),) * n, MatQ.identity(n))

    def __matmul__(self, other):
        shifted = self.linear @ other.translation
        return AffineElement(tuple(a + b for a, b in zip(self.translation, shifted)),
                             self.linear @ other.linear)

    def inverse(self):
        inv = self.linear.inverse()
        return AffineElement(tuple(-x for x in inv @ self.translation), inv)

    def is_identity(self):
        return not any(self.translation) and self.linear.is_identity()

    def __call__(self, x):
        return tuple(a + b for a, b in zip(self.linear @ tuple(x), self.translation))


@dataclass(frozen=True)
class AffineRep:
    rank: int
    images: dict  # generator name -> AffineElement

    def __getitem__(self, letter):
        try:
            return self.images[letter]
        except KeyError:
            raise UnknownGenerator(letter) from None

    def with_image(self, letter, element):
        images = dict(self.images)
        images[letter] = element
        return AffineRep(self.rank, images)


def delta_affine(g, tree, rep=None):
    rep = modular_generators(g, tree) if rep is None else rep
    n = g.rank
    zero = (Fraction(0),) * n
    images = {}
    for v in g.vertices:
        cols = rep.transport[v].columns()
        for k in range(n):
            images[vertex_letter(v, k)] = AffineElement(cols[k], MatQ.identity(n))
    for e in g.edges:
        images[stable_letter(e.id)] = AffineElement(zero, rep.edge_images[(e.id, True)])
    return AffineRep(n, images)


def evaluate_word(rep, word):
    """Compose the images of a word left to right."""
    acc = AffineElement.identity(rep.rank)
    inverses = {}
    for letter, sign in word:
        el = rep[letter]
        if sign < 0:
            if letter not in inverses:
                inverses[letter] = el.inverse()
            el = inverses[letter]
        acc = acc @ el
    return acc


@dataclass(frozen=True)
class PresentationCheck:
    ok: bool
    relator: tuple = None
    value: AffineElement = None
    label: str = None

    def __bool__(self):
        return self.ok


def verify_presentation(rep, pres):
    labels = pres.labels or (None,) * len(pres.relators)
    for rel, label in zip(pres.relators, labels):
        val = evaluate_word(rep, rel)
        if not val.is_identity():
            return PresentationCheck(False, rel, val, label)
    return PresentationCheck(True)
