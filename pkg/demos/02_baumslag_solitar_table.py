"""Verdict table for the Baumslag-Solitar groups BS(m, n).

In rank 1 the modular image is generated by n/m, which makes every verdict
readable from m and n alone.  The table below is computed by the full
pipeline, not by that shortcut.
"""

from glmgraph import analyze, build

SHORT = {"yes": "Y", "no": "n", "undecided": "?"}

values = [1, 2, 3, -2, 4, 6]
print("verdicts: biautomatic / CAT(0) / residually finite\n")
print("m\\n " + "".join(f"{n:>7}" for n in values))
for m in values:
    cells = []
    for n in values:
        g = build(1, ["a"], [("t", "a", "a", [[m]], [[n]])])
        cells.append("".join(SHORT[x] for x in analyze(g).verdict_triple()))
    print(f"{m:>3} " + "".join(f"{c:>7}" for c in cells))

# The diagonal (|m| = |n|) is virtually Z^2: everything holds.  The first
# row and column are ascending HNN extensions, which are residually finite
# even though the modular image n/m is not integral.
