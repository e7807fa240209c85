"""Finite modular images, invariant forms and invariant lattices."""

from fractions import Fraction

from glmgraph import MatGroupGens, decide_conjugate_into_GLnZ, decide_conjugate_into_On, decide_finite
from glmgraph.exact import MatQ
from glmgraph.matgroups import finite_group_invariant_lattice

# A dihedral group of order 12, hidden by a rational change of basis.
q = MatQ([[2, 1], [Fraction(1, 3), 1]])
gens = MatGroupGens(2, [MatQ([[0, -1], [1, 1]]), MatQ([[0, 1], [1, 0]])]).conjugate(q)
for m in gens.gens:
    print("generator", m.to_strings())

fin = decide_finite(gens)
print("\nfinite:", fin.finite, "order:", fin.order)

# Averaging the standard form over the group gives an invariant one.
form = decide_conjugate_into_On(gens, finiteness=fin)
print("invariant form:", form.certificate.S.to_strings())

# Intersecting the images of Z^2 gives an invariant lattice, so the group
# is conjugate into GL_2(Z).
lat = finite_group_invariant_lattice(fin.elements)
print("invariant lattice basis:", lat.basis.to_strings())

# The lattice search reaches an invariant lattice from the other side, by
# summing images of Z^2 until nothing changes.
shear = MatGroupGens(2, [MatQ([[1, Fraction(1, 2)], [0, 1]])])
v = decide_conjugate_into_GLnZ(shear)
print("\nshear by 1/2:", v.status, "after", v.diagnostics["iterations"], "iterations")
b = v.certificate.L.basis
print("conjugated generator:", (b.inverse() @ shear.gens[0] @ b).to_strings())
