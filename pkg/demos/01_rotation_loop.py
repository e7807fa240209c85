"""A rank-2 loop whose modular image is an irrational-angle rotation.

The two inclusions are multiplication by the Gaussian integers 1+2i and 2+i.
Their quotient has modulus 1 but infinite order, so the modular image is an
infinite subgroup of SO(2): the group is CAT(0), but it is neither
biautomatic nor residually finite.
"""

from glmgraph import analyze, build
from glmgraph.classifier import cat0_action_data, render_text

g = build(2, ["v"], [("e", "v", "v", [[1, -2], [2, 1]], [[2, -1], [1, 2]])])

report = analyze(g)
print(render_text(report))

# The invariant form is the identity, so the conjugator is the identity too.
action = cat0_action_data(report)
print("\ninvariant form:", action["form"])
print("conjugator:", action["conjugator"])
print("each vertex of the Bass-Serre tree has degree", action["tree_degrees"]["v"])
