"""Groebner bases, normal forms, syzygies and Hilbert functions.

The monomial order is graded reverse lexicographic throughout, which
makes every result here reproducible bit for bit.
"""

from versal import (
    RingSpec,
    as_generator_matrix,
    buchberger,
    format_expr,
    hilbert_function,
    koszul_syzygies,
    parse_expr,
    syzygy_matrix,
)

ring = RingSpec(("x", "y", "z"), (), ((1,),) * 3)
gens = [parse_expr(s, ring) for s in ("x^2 - y*z", "x*y - z^2")]

gb = buchberger(gens)
print("reduced basis:")
for p in gb.polynomials():
    print("   ", format_expr(p))

# Normal forms give canonical representatives modulo the ideal, and the
# cofactor form expresses the reduction as an explicit combination.
probe = parse_expr("x^3 + y^3", ring)
print("\nnormal form of x^3 + y^3 :", format_expr(gb.normal_form(probe)))
print("membership of x^2 - y*z  :", gb.contains(gens[0]))

tracked = buchberger(gens, track=True)
nf, cofs = tracked.normal_form(probe, with_cofactors=True)
rebuilt = nf
for c, g in zip(cofs, gens):
    rebuilt = rebuilt + c * g
print("cofactors reconstruct    :", rebuilt == probe)

# Relations among the generators: syzygy_matrix computes a minimal
# generating set; the Koszul relations are always among them.
F = as_generator_matrix(gens)
S = syzygy_matrix(F)
print("\nsyzygies:", S.rows, "x", S.cols, "   F*S == 0 :", (F * S).is_zero())
K = koszul_syzygies(F)
print("Koszul  :", K.rows, "x", K.cols, "   F*K == 0 :", (F * K).is_zero())

# Counting: the Hilbert function of the quotient ring.
print("\nHilbert function of S/I:")
for d in range(6):
    print("    H(%d) = %d" % (d, hilbert_function(gb, (d,))))
