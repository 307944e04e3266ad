"""The versal deformation of the cone over the rational normal quartic.

The lifting algorithm extends the universal first-order family order by
order.  At each order the part of the error term that cannot be absorbed
into the family is recorded as an obstruction equation; the equations G
cut the base space of the versal family out of the parameter space.

For this cone the family closes up at order 3 and the base is the union
of a three-plane and a line, a classical picture: the general fibre over
one component smooths the cone completely, over the other it deforms
into the cone over a different curve.
"""

from fractions import Fraction
from pathlib import Path

from versal import (
    as_generator_matrix,
    buchberger,
    hilbert_function,
    load_input,
    parameter_ring,
    versal_deformation,
)
from versal.render import format_matrix

cone = load_input(Path(__file__).parent / "data" / "quartic_cone.vdef")

res = versal_deformation(cone.generators, logger=print)

print("\nparameters:", ", ".join(res.parameters))
print("\nfamily F:")
print(format_matrix(res.family()))
print("\nbase equations G:")
print(format_matrix(res.obstruction_equations()))

# The identity transpose(F*R) + C*G vanishes exactly, not just up to the
# reached order -- that is what "Solution is polynomial" asserts.
F, R = res.family(), res.relations()
C, G = res.coefficient_matrix(), res.obstruction_equations()
print("\nexact deformation identity:",
      ((F * R).transpose() + C * G).is_zero())

# Basis-independent description of the base: its Hilbert function.
T = parameter_ring(res.ring)
base = buchberger([G[i, 0].map_ring(T) for i in range(G.rows)])
print("base Hilbert function:",
      [hilbert_function(base, (d,)) for d in range(3)])

# Specializing the parameters to a point of V(G) gives a flat fibre: its
# staircase has the same size as the central one.  The point below lies
# on the line component (t1 = 2*t4, t2 = t3 = 0).
point = {"t1": Fraction(2), "t2": Fraction(0),
         "t3": Fraction(0), "t4": Fraction(1)}
fibre = [F[0, j].substitute(point) for j in range(F.cols)]
print("\nfibre over", point)
for p in fibre:
    print("   ", p)
