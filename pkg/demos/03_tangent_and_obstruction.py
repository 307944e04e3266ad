"""First-order deformations and obstructions of isolated singularities.

T1 classifies the first-order deformations of an ideal, T2 receives the
obstructions against extending them to higher order.  For the cone over
the rational normal curve of degree four both spaces are nontrivial,
which is what makes its deformation theory interesting: the four tangent
directions cannot all be realized simultaneously.
"""

from pathlib import Path

from versal import (
    as_generator_matrix,
    cotangent1,
    cotangent2,
    first_syzygies,
    load_input,
    normal_matrix,
)
from versal.render import format_matrix

cone = load_input(Path(__file__).parent / "data" / "quartic_cone.vdef")
F0 = as_generator_matrix(cone.generators)

t1 = cotangent1(F0)
print("dim T1 =", t1.dimension, "  degrees:", t1.degrees)
print(format_matrix(t1.vectors))

t2 = cotangent2(F0)
print("\ndim T2 =", t2.dimension, "  degrees:", t2.degrees)
print(format_matrix(t2.vectors))

# The tangent vectors of an embedded deformation problem live in the
# normal module; its graded piece in the tangent degree contains the T1
# classes together with the trivial deformations coming from coordinate
# changes.
nm = normal_matrix(F0, (-1,))
print("\ndim of the degree -1 normal module piece =", nm.dimension)

R0 = first_syzygies(F0)
print("first syzygies:", R0.rows, "x", R0.cols)

# A hypersurface by contrast is never obstructed.
from versal import RingSpec, parse_expr

plane_curve = as_generator_matrix(
    [parse_expr("x^2 - y^3", RingSpec(("x", "y"), (), ((3,), (2,))))])
print("\ncusp: dim T1 =", cotangent1(plane_curve).dimension,
      " dim T2 =", cotangent2(plane_curve).dimension)
