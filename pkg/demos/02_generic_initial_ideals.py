"""
Generic initial ideals of powers of a complete intersection
===========================================================

"""

from ginlab.asymptotics import CIType, predicted_pure_powers
from ginlab.gin import gin_sequence
from ginlab.poly import Field
from ginlab.staircase import length_artinian, pure_powers
from ginlab.verify import make_ci

t = CIType((2, 3))
spec = make_ci(t, "generic", seed=0, field=Field(32003))
for f in spec.generators:
    print(f)

seq = gin_sequence(spec.generators, 4, seed=0)
for n in range(1, 5):
    J = seq[n]
    print(n, J.to_string(spec.ring.variables))
    print("   pure powers", pure_powers(J), "predicted", predicted_pure_powers(t, n))
    print("   length", length_artinian(J))

# gin(I^i) gin(I^j) sits inside gin(I^(i+j))
print("graded system:", seq.is_graded_system())
