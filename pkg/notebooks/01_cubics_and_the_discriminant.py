"""
Cubics, roots and the discriminant
==================================

A monic cubic z^3 + b z^2 + c z + d is a point (b, c, d). Its roots come
back from the tangent planes through that point, and the sign of the
discriminant tells how many of them are real.
"""

import numpy as np

from polystrata import MonicPoly, RootConfig, from_roots, roots
from polystrata.strata import horizon, solve_by_tangency
from polystrata.viete import discriminant, real_cubic_chamber, viete_map

# (z - 1)(z - 2)(z + 3) from its roots
P = viete_map([1.0, 2.0, -3.0])
print("coefficients", P.coeffs.real)

# every root u gives a plane u^2 b + u c + d = -u^3 through P
for u, plane in solve_by_tangency(P):
    print(f"root {u.real:+.3f}  normal {np.round(plane.normals[0].real, 3)}")

# real cubics: three real roots when the discriminant is positive
for coeffs in ([0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, -3.0, 2.0]):
    Q = MonicPoly(coeffs, field="real")
    print(coeffs, "D =", discriminant(Q), real_cubic_chamber(Q), "horizon flats:", len(horizon(Q)))

# a double root shows up as one cluster of multiplicity 2
R = from_roots(RootConfig([1.0, -2.0], [2, 1]))
print(roots(R))
