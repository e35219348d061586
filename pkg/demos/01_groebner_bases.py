"""
Polynomials, graded revlex and Groebner bases
=============================================

"""

from ginlab.groebner import buchberger, initial_ideal, reduce
from ginlab.poly import RingSpec, compare_revlex, parse_polynomial

R = RingSpec(("x", "y", "z"))

# graded revlex: degree first, then the smaller last exponent wins
print(compare_revlex((0, 2, 0), (1, 0, 1)))   # y^2 > x*z

f = parse_polynomial("x^2 - y^2 + 1/2*x*z", R)
g = parse_polynomial("x*y - z^2", R)
print("f =", f)
print("g =", g)

gb = buchberger([f, g])
for h in gb:
    print("  ", h)

# the initial ideal is generated by the leading monomials
print("in(I) =", initial_ideal(gb).to_string(R.variables))

# f*g reduces to zero, z^3 does not
print(reduce(f * g, list(gb)))
print(reduce(parse_polynomial("z^3", R), list(gb)))
