"""End-to-end acceptance checks, one test per criterion.

Each criterion prints a PASS/FAIL line in the terminal summary.
"""

import itertools
import json
import random
from fractions import Fraction as F

import numpy as np

from glmgraph.classifier import analyze, certificate_from_dict, image_generators, verdict_triple
from glmgraph.cli import cli_main
from glmgraph.exact import Lattice, MatQ, SymQ, lattice_image
from glmgraph.graph import (
    all_spanning_trees,
    build,
    load,
    reduce,
    spanning_tree,
    standard_presentation,
    tree_ball,
)
from glmgraph.matgroups import (
    FormCertificate,
    MatGroupGens,
    decide_conjugate_into_GLnZ,
    decide_finite,
    transform_certificate,
    verify_certificate,
)
from glmgraph.modular import AffineElement, delta_affine, verify_presentation
from glmgraph.randgraph import random_graph, random_unimodular

from conftest import VALID


def bs(m, n):
    return build(1, ["a"], [("t", "a", "a", [[m]], [[n]])])


LM = build(2, ["v"], [("e", "v", "v", [[1, -2], [2, 1]], [[2, -1], [1, 2]])])


def test_criterion_1_leary_minasyan(criterion):
    with criterion(1, "Leary-Minasyan graph: exact modular image and verdicts"):
        rep = analyze(LM)
        _, group, _ = image_generators(reduce(LM))
        assert group.gens == (MatQ([[4, 3], [-3, 4]]) * F(1, 5),)
        assert rep.verdicts == {"biautomatic": "no", "cat0": "yes", "residually_finite": "no"}
        cert = certificate_from_dict(rep.certificates["form"])
        assert cert == FormCertificate(SymQ([[1, 0], [0, 1]]))
        assert verify_certificate(group, cert)


def test_criterion_2_baumslag_solitar_oracle(criterion):
    with criterion(2, "BS(m,n) verdicts for 1 <= |m|,|n| <= 6 match the closed form"):
        values = [k for k in range(-6, 7) if k]
        for m, n in itertools.product(values, values):
            equal = abs(m) == abs(n)
            rf = abs(m) == 1 or abs(n) == 1 or equal
            want = ("yes" if equal else "no",) * 2 + ("yes" if rf else "no",)
            assert analyze(bs(m, n)).verdict_triple() == want, (m, n)


def _perturbed(rep, g, rng):
    """Add 1 to one entry of one stable letter image, keeping it invertible."""
    letter = f"t[{rng.choice(g.edges).id}]"
    lin = rep[letter].linear
    while True:
        i, j = rng.randrange(g.rank), rng.randrange(g.rank)
        rows = [list(r) for r in lin.rows]
        rows[i][j] += rng.choice([-1, 1])
        m = MatQ(rows)
        if m.det() != 0:
            return rep.with_image(letter, AffineElement(rep[letter].translation, m))


def test_criterion_3_presentation_self_check(criterion):
    with criterion(3, "affine lift satisfies every relator; perturbations are caught"):
        rng = random.Random(2024)
        graphs = [random_graph(rng, n=rng.choice([1, 2, 3])) for _ in range(200)]
        for g in graphs:
            tree = spanning_tree(g)
            assert verify_presentation(delta_affine(g, tree), standard_presentation(g, tree))
        caught = 0
        for g in graphs:
            if not g.edges:
                continue
            tree = spanning_tree(g)
            bad = _perturbed(delta_affine(g, tree), g, rng)
            res = verify_presentation(bad, standard_presentation(g, tree))
            assert not res and res.relator is not None
            caught += 1
            if caught == 50:
                break
        assert caught == 50


R4 = MatQ([[0, -1], [1, 0]])
R6 = MatQ([[0, -1], [1, 1]])
SWAP = MatQ([[0, 1], [1, 0]])
CYC3 = MatQ([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
# generating sets of known finite groups: cyclic, dihedral and signed permutation groups
FINITE_SETS = [
    [MatQ([[-1]])],
    [R4], [R6], [MatQ([[0, -1], [1, -1]])], [SWAP], [MatQ([[1, 1], [0, -1]])],
    [R4, MatQ([[1, 0], [0, -1]])], [R6, SWAP],
    [CYC3], [MatQ([[0, -1, 0], [1, 0, 0], [0, 0, -1]])],
    [CYC3, MatQ([[0, 1, 0], [1, 0, 0], [0, 0, 1]])],
    [CYC3, MatQ.diag(-1, 1, 1)],
]


def _closure_order(gens):
    """Independent oracle: integer numpy closure of a set of integer matrices."""
    arrs = [np.array([[int(x) for x in r] for r in m.rows], dtype=np.int64) for m in gens]
    n = arrs[0].shape[0]
    seen = {np.eye(n, dtype=np.int64).tobytes()}
    frontier = [np.eye(n, dtype=np.int64)]
    while frontier:
        nxt = []
        for x in frontier:
            for a in arrs:
                y = x @ a
                key = y.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(y)
        frontier = nxt
        assert len(seen) <= 10_000
    return len(seen)


def test_criterion_4_finiteness_soundness(criterion):
    with criterion(4, "finite conjugates get the right order; Anosov conjugates are infinite"):
        rng = random.Random(7)
        anosov = MatQ([[2, 1], [1, 1]])
        for _ in range(100):
            n = rng.choice([1, 2, 3])
            ds = rng.choice([gens for gens in FINITE_SETS if gens[0].n == n])
            q = random_unimodular(rng, n, 5)
            qi = q.inverse()
            conj = [q @ d @ qi for d in ds]
            assert all(c.is_integral() for c in conj)
            res = decide_finite(MatGroupGens(n, conj))
            assert res.finite and res.order == _closure_order(conj)
            if n == 2:
                inf = decide_finite(MatGroupGens(2, [q @ anosov @ qi]))
                assert not inf.finite
        for _ in range(30):
            q = random_unimodular(rng, 2, 5)
            assert not decide_finite(MatGroupGens(2, [q @ anosov @ q.inverse()])).finite


def _random_rational(rng, n):
    while True:
        q = MatQ([[F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)])
        if q.det() != 0:
            return q


def test_criterion_5_certificate_round_trip(criterion, tmp_path, capsys):
    with criterion(5, "every certificate re-verifies via certify and under conjugation"):
        pool = []
        for path in VALID:
            rep = analyze(load(path))
            assert cli_main(["analyze", "--quiet", "--write-certificates", str(tmp_path),
                             str(path)]) == 0
            written = sorted(tmp_path.glob(f"{path.stem}.*.json"))
            assert len(written) == len(rep.certificates)
            for cert in written:
                assert cli_main(["certify", str(path), "--certificate", str(cert), "--json"]) == 0
                assert json.loads(capsys.readouterr().out.strip().splitlines()[-1])["valid"]
            _, group, _ = image_generators(rep.reduced_graph())
            pool += [(group, certificate_from_dict(doc)) for doc in rep.certificates.values()]
        assert pool
        rng = random.Random(5)
        for _ in range(50):
            group, cert = rng.choice(pool)
            q = _random_rational(rng, group.n)
            moved = transform_certificate(cert, q)
            assert verify_certificate(group.conjugate(q), moved)


def test_criterion_6_consistency(criterion, corpus):
    with criterion(6, "report invariants, reduction invariance and tree independence"):
        rng = random.Random(6)
        graphs = list(corpus.values()) + [random_graph(rng) for _ in range(500)]
        multi_tree = 0
        for g in graphs:
            rep = analyze(g)
            v = rep.verdicts
            assert (v["biautomatic"] == "yes") == rep.finiteness["finite"]
            assert not rep.finiteness["finite"] or v["cat0"] == "yes"
            assert v["biautomatic"] != "yes" or v["cat0"] == "yes"
            assert rep.verdict_triple() == analyze(reduce(g)).verdict_triple()
            trees = all_spanning_trees(g, limit=2)
            if len(trees) == 2:
                multi_tree += 1
                assert verdict_triple(g, trees[0]) == verdict_triple(g, trees[1])
        assert multi_tree >= 20


def test_criterion_7_tree_degrees(criterion):
    with criterion(7, "tree-ball centre degrees: 5, 10, 2 and the determinant sum"):
        assert tree_ball(bs(2, 3), 1).center.degree == 5
        assert tree_ball(LM, 1).center.degree == 10
        assert tree_ball(bs(1, 1), 1).center.degree == 2
        rng = random.Random(77)
        for _ in range(50):
            g = random_graph(rng)
            ball = tree_ball(g, 1)
            root = ball.center.vertex_type
            want = sum(abs(e.matrix.det()) for e in g.oriented_edges() if e.initial == root)
            assert ball.center.degree == want == ball.ball_degree(0) == len(ball.nodes) - 1


def test_criterion_8_lattice_fixpoint(criterion):
    with criterion(8, "half-shear lattice fixpoint within 3 iterations, integral conjugate"):
        m = MatQ([[1, F(1, 2)], [0, 1]])
        v = decide_conjugate_into_GLnZ(MatGroupGens(2, [m]))
        assert v.yes and v.diagnostics["iterations"] <= 3
        lat = v.certificate.L
        assert lattice_image(m, lat) == lat
        b = lat.basis
        conj = b.inverse() @ m @ b
        assert conj.is_integral() and abs(conj.det()) == 1
        assert lat == Lattice.from_generators(2, [(F(1, 2), 0), (0, 1)])
