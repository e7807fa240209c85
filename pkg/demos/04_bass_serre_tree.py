"""Balls in the Bass-Serre tree.

A vertex of type w has |det A_e| neighbours across each oriented edge e
leaving w, so the tree of BS(2,3) is 5-regular and its balls grow like 4^r.
"""

from glmgraph import build
from glmgraph.graph import tree_ball

bs23 = build(1, ["a"], [("t", "a", "a", [[2]], [[3]])])
ball = tree_ball(bs23, 4)
for r in range(5):
    print(f"radius {r}: {len(ball.restrict(r).nodes)} vertices")

# Two vertex types: the ball alternates between degrees.
g = build(1, ["u", "w"], [("e", "u", "w", [[2]], [[3]]), ("f", "u", "w", [[1]], [[1]])])
ball = tree_ball(g, 3)
for depth in range(4):
    types = sorted({(nd.vertex_type, nd.degree) for nd in ball.nodes if nd.depth == depth})
    print("depth", depth, "vertex types and degrees:", types)

print()
print(tree_ball(bs23, 1).to_dot())
