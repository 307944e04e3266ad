"""Exact polynomial arithmetic, gradings and deformation parameters.

Everything in this package happens over the rationals: coefficients are
`fractions.Fraction`, so no result is ever rounded.
"""

from fractions import Fraction

from versal import (
    Polynomial,
    RingSpec,
    extend_with_parameters,
    format_expr,
    parse_expr,
)

# A polynomial ring is described by a RingSpec.  Without degrees it is
# ungraded; with one integer per variable it carries a grading.
plain = RingSpec(("x", "y"))
graded = RingSpec(("x", "y"), (), ((3,), (2,)))

p = parse_expr("x^2 - y^3", graded)
print("p               =", format_expr(p))
print("p homogeneous?  ", p.is_homogeneous(), "of degree", p.multi_degree())

q = parse_expr("1/2*x*y + y^2", plain)
print("q               =", format_expr(q))
print("q^2             =", format_expr(q * q))
print("q at x=2        =", format_expr(q.substitute({"x": Fraction(2)})))
print("dq/dy           =", format_expr(q.partial_derivative("y")))

# Multigraded rings use degree tuples.  The degree of a monomial is the
# sum of its variable degrees, componentwise.
mg = RingSpec(("u", "v", "w"), (), ((1, 0), (0, 1), (1, 1)))
r = parse_expr("u*v - w", mg)
print("\nmultigraded r   =", format_expr(r), "degree", r.multi_degree())

# Deformation parameters form a second block of variables.  Extending a
# graded ring requires degrees for the new parameters so that families
# stay homogeneous.
St, names = extend_with_parameters(graded, 2, degrees=((4,), (6,)))
family = parse_expr("x^2 - y^3 + t1*y + t2", St)
print("\nparameters      =", names)
print("family          =", format_expr(family))
print("family degree   =", family.multi_degree())
print("order-1 piece   =", format_expr(family.t_piece(1)))
print("order-0 piece   =", format_expr(family.t_truncate(0)))
