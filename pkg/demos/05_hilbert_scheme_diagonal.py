"""A multigraded Hilbert scheme germ, computed through its deformations.

The input ideal lives in QQ[x1..x3, y1..y3, z1..z3] with the Z^3 grading
that puts each block of variables in its own coordinate.  Its quotient
has the Hilbert function of the small diagonal plane; the multigraded
Hilbert scheme near this point is the space of all ideals with that
Hilbert function.

Deformations that stay inside the Hilbert scheme are the degree-(0,0,0)
piece of the normal module, and the obstruction space is the matching
piece of T2.  The lifting algorithm then presents the germ as the zero
set of the equations G inside an 18-dimensional parameter space.
"""

from pathlib import Path

from versal import (
    as_generator_matrix,
    cotangent2,
    format_expr,
    load_input,
    normal_matrix,
    versal_deformation,
)

diag = load_input(Path(__file__).parent / "data" / "diagonal_p2cubed.vdef")
F0 = as_generator_matrix(diag.generators)

t1 = normal_matrix(F0, (0, 0, 0))
t2 = cotangent2(F0, (0, 0, 0))
print("tangent space of the Hilbert scheme germ:", t1.dimension)
print("obstruction space:                       ", t2.dimension)

res = versal_deformation(F0, t1=t1, t2=t2, logger=print)

G = res.obstruction_equations()
nonzero = [G[i, 0] for i in range(G.rows) if not G[i, 0].is_zero()]
print("\nthe germ is cut out by", len(nonzero), "equations, all cubic:")
for g in nonzero:
    print("   ", format_expr(g))
