"""
Translating roots and limits of tangent spaces
==============================================

Moving every root by t is an affine map of coefficient space with unit
determinant. It keeps the discriminant and the multiplicity pattern, and
it brings any polynomial to the slice a_1 = 0.

Tangent spaces of D_mu near a more degenerate point settle down to a
finite set of limit flats.
"""

import numpy as np

from polystrata import MonicPoly, RootConfig
from polystrata.flow import check_invariants, k_transform_d3, reduce
from polystrata.partitions import Partition, resolutions
from polystrata.strata import limit_tangent_flats, split_roots, tangent_space_Dmu

P = MonicPoly([1.2, -0.4, 0.3])
print(check_invariants(P, 0.8 - 0.1j))

red, t_star = reduce(P)
print("reduced", np.round(red.coeffs, 12), "t* =", t_star)
print("K-transform", np.round(k_transform_d3(P).coeffs, 12))

# (z-4)^3 (z-6)^3 (z-8) approached from D_(3,2,1,1)
P1 = RootConfig([4.0, 6.0, 8.0], [3, 3, 1])
mu = Partition((3, 2, 1, 1))
limits = limit_tangent_flats(P1, mu)
for _, div in limits:
    print("limit divisor", np.round(div.real, 9))

rng = np.random.default_rng(0)
for res in resolutions(Partition((3, 3, 1)), mu):
    dists = []
    for eps in (1e-2, 1e-3, 1e-4):
        flat, _ = tangent_space_Dmu(split_roots(P1, res, eps, rng))
        dists.append(min(flat.distance(L) for L, _ in limits))
    print(res, ["%.2e" % x for x in dists])
