"""
Tangent spaces of multiplicity strata
=====================================

A polynomial whose roots have multiplicities mu lies in the stratum D_mu.
Its tangent space there is made of the polynomials divisible by
prod (z - u_i)^(mu_i - 1). Counting such divisors of a given Q counts the
tangent spaces through Q.
"""

import numpy as np

from polystrata import RootConfig, from_roots
from polystrata.partitions import Partition, down1, gamma
from polystrata.strata import (
    tangency_velocity,
    tangent_count_through,
    tangent_line_point,
    tangent_space_Dmu,
)

P = RootConfig([1.0, 2.0, -1.0], [3, 2, 1])
flat, divisor = tangent_space_Dmu(P)
print("dim", flat.dim, "divisor", np.round(divisor.real, 6))

# tangent spaces of D_(2,1,1,1) through quintics of each shape
pts = [0.0, 1.0, -1.5, 2.0j, 0.5 - 1j]
for shape in [(1, 1, 1, 1, 1), (2, 1, 1, 1), (3, 1, 1), (4, 1), (5,)]:
    Q = from_roots(RootConfig(pts[: len(shape)], list(shape)))
    n = tangent_count_through(Q, (2, 1, 1, 1))
    print(shape, n, "=", gamma(down1(Partition((2, 1, 1, 1))), Partition(shape)))

# root velocities whose tangent line at P reaches Q
P = RootConfig([1.0, 3.0], [2, 1])
Q = np.poly([1, 1j, -1j])
vel, rc = tangency_velocity(Q, P, tau=1.0)
print("velocities", vel)
print("line point", np.round(tangent_line_point(from_roots(P), rc, vel).real, 12))
