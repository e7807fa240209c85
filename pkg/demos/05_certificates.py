"""Certificates survive a change of basis.

Every positive verdict carries an exact certificate.  Conjugating the group
by Q sends an invariant form S to Q^-T S Q^-1 and a lattice L to Q L; the
transformed certificates verify for the conjugated group.
"""

import random
from fractions import Fraction

from glmgraph import analyze, build
from glmgraph.classifier import certificate_from_dict, image_generators
from glmgraph.exact import MatQ
from glmgraph.matgroups import transform_certificate, verify_certificate

g = build(2, ["v"], [("e", "v", "v", [[1, 0], [0, 1]], [[0, -1], [1, 1]])])
report = analyze(g)
_, group, _ = image_generators(report.reduced_graph())
print("verdicts:", report.verdicts)

rng = random.Random(0)
q = MatQ([[Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)])
print("change of basis:", q.to_strings())
for kind, doc in report.certificates.items():
    cert = certificate_from_dict(doc)
    moved = transform_certificate(cert, q)
    print(f"{kind:>8}: original {verify_certificate(group, cert)}, "
          f"transformed {verify_certificate(group.conjugate(q), moved)}")
