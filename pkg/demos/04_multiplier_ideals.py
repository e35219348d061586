"""
Multiplier ideals of monomial ideals
====================================

"""

from fractions import Fraction

from ginlab.asymptotics import CIType, asymptotic_multiplier_ideal_empirical, ci_asymptotic_multiplier_ideal, multiplier_ideal
from ginlab.gin import gin_sequence
from ginlab.poly import Field
from ginlab.staircase import MonomialIdeal
from ginlab.verify import make_ci

names = ("x", "y")
J = MonomialIdeal([(2, 0), (0, 2)], 2)
for c in (Fraction(1, 2), 1, Fraction(3, 2), 2):
    res = multiplier_ideal(J, c, 12)
    print("c =", c, res.ideal.to_string(names), "complete" if res.complete else "truncated")

# asymptotic version from gin(I^p) of a generic (2,2) complete intersection
t = CIType((2, 2))
spec = make_ci(t, "generic", seed=0, field=Field(32003))
seq = gin_sequence(spec.generators, 8, seed=0)
for p in (4, 8):
    res, _ = asymptotic_multiplier_ideal_empirical(seq, 1, p, 12)
    print("p =", p, res.ideal.to_string(spec.ring.variables))

# closed form: sum (lambda_i + 1) / d_i > c
print("closed form", ci_asymptotic_multiplier_ideal(t, 1).ideal.to_string(spec.ring.variables))
