"""
Newton polyhedra and the volume of the limiting polytope
========================================================

"""

from fractions import Fraction
from math import factorial

from ginlab.asymptotics import CIType, predicted_polyhedron
from ginlab.gin import gin_sequence
from ginlab.poly import Field
from ginlab.polytope import complement_volume, newton_polyhedron, scale
from ginlab.staircase import length_artinian
from ginlab.verify import make_ci

t = CIType((2, 3))
spec = make_ci(t, "generic", seed=0, field=Field(32003))
seq = gin_sequence(spec.generators, 4, seed=0)

for n in range(1, 5):
    P = scale(newton_polyhedron(seq[n]), Fraction(1, n))
    q = Fraction(factorial(2) * length_artinian(seq[n]), n ** 2)
    # r! length / n^r approaches d_1 d_2 = 6 from above
    print(n, "volume quotient", q, "  complement of P/n", complement_volume(P))
    for f in P.facets:
        print("     ", f.normal, ">=", f.rhs)

limit = predicted_polyhedron(t)
print("predicted polytope vertices", [tuple(map(str, v)) for v in limit.vertices])
print("complement volume", complement_volume(limit), "= d1 d2 / 2!")
