"""Random GLM graphs for property checks."""

from __future__ import annotations

import random

from .exact import MatQ
from .graph import EdgePair, GLMGraph


def random_matrix(rng, n, lo=-3, hi=3, unimodular=False):
    while True:
        m = MatQ([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        d = m.det()
        if d != 0 and (not unimodular or abs(d) == 1):
            return m


def random_unimodular(rng, n, steps=6):
    """Product of random elementary integer matrices."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            rows = [[-r for r in row] for row in rows] if rng.random() < 0.5 else rows
            continue
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            rows[i], rows[j] = rows[j], rows[i]
    return MatQ(rows)


def random_graph(rng=None, n=None, vertices=None, extra_edges=None, lo=-3, hi=3):
    """Connected graph: a random spanning tree plus extra edges (loops allowed)."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    n = rng.choice([1, 2, 3]) if n is None else n
    nv = rng.randint(1, 3) if vertices is None else vertices
    extra = rng.randint(0, 2) if extra_edges is None else extra_edges
    names = [f"v{i}" for i in range(nv)]
    ends = [(names[i], names[rng.randrange(i)]) for i in range(1, nv)]
    ends += [(rng.choice(names), rng.choice(names)) for _ in range(extra)]
    rng.shuffle(ends)
    pairs = []
    for k, (a, b) in enumerate(ends):
        pairs.append(EdgePair(f"e{k}", a, b, random_matrix(rng, n, lo, hi),
                              random_matrix(rng, n, lo, hi)))
    return GLMGraph(n, tuple(names), tuple(pairs)).validate()
