import warnings
from fractions import Fraction

import numpy as np
import pytest

from conftest import cplx
from polystrata.checks import random_rc
from polystrata.partitions import Partition, resolutions
from polystrata.poly_core import MonicPoly, RootConfig, as_dense, from_roots, normal_vector
from polystrata.strata import (
    IllConditionedWarning,
    brute_force_divisor_count,
    distinct_root_stratum,
    horizon,
    intersect_osculating,
    kappa,
    kappa_derivative,
    limit_tangent_flats,
    mu_of,
    osculating_flat,
    osculating_span_flat,
    solve_by_tangency,
    split_roots,
    stratum_label,
    tangency_velocity,
    tangent_cone,
    tangent_count_through,
    tangent_flat,
    tangent_line_point,
    tangent_space_Dmu,
)


def P_of(pairs, field="complex"):
    return from_roots(RootConfig.from_pairs(pairs), field=field)


# classification ------------------------------------------------------------

@pytest.mark.parametrize(
    "pairs, mu",
    [
        ([(4, 3), (6, 3), (8, 1)], (3, 3, 1)),
        ([(1, 2), (2, 1)], (2, 1)),
        ([(0.5, 5)], (5,)),
        ([(1, 1), (2, 1), (3, 1)], (1, 1, 1)),
    ],
)
def test_mu_fixtures(pairs, mu):
    assert mu_of(P_of(pairs))[0] == Partition(mu)


def test_mu_real_mode_keeps_real_roots():
    P = MonicPoly([0.0, 1.0, 0.0], field="real")  # z^3 + z
    assert mu_of(P)[0] == Partition((1,))
    assert mu_of(MonicPoly([0.0, 1.0, 0.0]))[0] == Partition((1, 1, 1))


def test_stratum_label_memberships():
    lab = stratum_label(P_of([(4, 3), (6, 3), (8, 1)]))
    assert lab.max_part == 3
    assert [k for k, m in lab.dk_memberships if m] == [1, 2, 3]
    assert lab.in_open(3) and not lab.in_open(2) and not lab.in_D(4)


# flats ---------------------------------------------------------------------

def test_tangent_plane_of_cubic():
    w = -0.7
    plane = tangent_flat(w, 3, 1)
    assert plane.codim == 1
    n = plane.normals[0] / plane.normals[0][-1]
    assert np.allclose(n, [w * w, w, 1])
    assert plane.contains(P_of([(w, 1), (1.1, 1), (2.0, 1)]).coeffs)


def test_quadratic_tangent_line():
    u = 1.3
    line = tangent_flat(u, 2, 1)
    for b in np.linspace(-3, 3, 7):
        assert line.contains([b, -u * b - u * u])
    assert line.contains(kappa(u, 2))


def test_tangent_flat_membership(rng):
    for _ in range(100):
        d = int(rng.integers(1, 8))
        k = int(rng.integers(0, d + 1))
        u = complex(*rng.uniform(-1.5, 1.5, 2))
        flat = tangent_flat(u, d, k)
        assert flat.dim == d - k
        pairs = [(u, k)] if k else []
        rc = RootConfig.from_pairs(pairs + [(z, 1) for z in cplx(rng, d - k) * 3 + 5])
        assert flat.contains(from_roots(rc).coeffs)
        if k:
            bad = RootConfig.from_pairs([(u + 0.3, d)])
            assert not flat.contains(from_roots(bad).coeffs)
    with pytest.raises(ValueError):
        tangent_flat(0.0, 3, 4)


def test_kappa_and_derivatives(rng):
    u = complex(*rng.standard_normal(2))
    d = 5
    assert np.allclose(kappa(u, d), from_roots(RootConfig([u], [d])).coeffs)
    h = 1e-6
    fd = (kappa(u + h, d) - kappa(u - h, d)) / (2 * h)
    assert np.allclose(kappa_derivative(u, d, 1), fd, atol=1e-8)


def test_exact_orthogonality():
    u = Fraction(3, 7)
    for d in range(2, 9):
        for p in range(d):
            n = normal_vector(u, d, p, exact=True)
            for q in range(1, d - p):
                k = kappa_derivative(u, d, q, exact=True)
                assert sum(a * b for a, b in zip(n, k)) == 0


def test_osculating_equals_tangent_flat(rng):
    for d in range(2, 8):
        for m in range(1, d):
            u = complex(*rng.standard_normal(2))
            ref = tangent_flat(u, d, d - m)
            assert osculating_flat(u, d, m).equals(ref, rng, 1e-8)
            assert osculating_span_flat(u, d, m).equals(ref, rng, 1e-8)


# tangent spaces --------------------------------------------------------------

def test_tangent_space_fixtures():
    flat, div = tangent_space_Dmu(P_of([(1, 2), (2, 1)]))
    assert flat.dim == 2 and np.allclose(div, [1, -1])
    flat, div = tangent_space_Dmu(P_of([(1, 3), (2, 2), (5, 1)]))
    assert flat.dim == 3 and np.allclose(div, np.poly([1, 1, 2]))
    flat, div = tangent_space_Dmu(P_of([(1, 1), (2, 1), (3, 1)]))
    assert flat.is_whole and np.allclose(div, [1])


def test_tangent_space_contains_nearby_curves(rng):
    for _ in range(50):
        rc = random_rc(rng, int(rng.integers(2, 8)), sep=0.3)
        flat, _ = tangent_space_Dmu(rc)
        assert flat.dim == len(rc)
        v = cplx(rng, len(rc))
        h = 1e-6
        moved = lambda s: from_roots(RootConfig(rc.roots + s * v, rc.multiplicities)).coeffs
        tangent = (moved(h) - moved(-h)) / (2 * h)
        base = from_roots(rc).coeffs
        assert flat.contains(base)
        assert flat.residual(base + tangent) <= 1e-7


def test_tangent_space_warns_when_ill_conditioned():
    rc = RootConfig([0.0, 1e-8], [1, 1])
    with pytest.warns(IllConditionedWarning):
        tangent_space_Dmu(rc)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        tangent_space_Dmu(RootConfig([0.0, 1.0], [1, 1]))


def test_tangent_cone():
    P = P_of([(1, 2), (-1, 2), (3, 1)])
    cone = tangent_cone(P, 2)
    assert len(cone) == 2
    assert all(f.codim == 1 and f.contains(P.coeffs) for f in cone)
    with pytest.raises(ValueError):
        tangent_cone(P, 3)


def test_solve_by_tangency():
    out = solve_by_tangency(MonicPoly([-3.0, 2.0]))
    slopes = sorted(-u.real for u, _ in out)
    assert slopes == pytest.approx([-2, -1])
    out = solve_by_tangency(MonicPoly([0, 0, -1.0]))
    got = np.sort_complex(np.array([u for u, _ in out]))
    assert np.allclose(got, np.sort_complex(np.exp(2j * np.pi * np.arange(3) / 3)))
    rc = RootConfig([0, 1, 2, 3, 4], [1] * 5)
    P = from_roots(rc)
    planes = solve_by_tangency(P)
    assert len(planes) == 5
    for (u, plane), r in zip(planes, rc.roots):
        assert u == pytest.approx(r) and plane.contains(P.coeffs)
    assert not tangent_flat(0.5, 5, 1).contains(P.coeffs)


# counting ---------------------------------------------------------------

D5_TABLE = [
    ((1, 1, 1, 1, 1), 5),
    ((2, 1, 1, 1), 4),
    ((3, 1, 1), 3),
    ((2, 2, 1), 3),
    ((4, 1), 2),
    ((3, 2), 2),
    ((5,), 1),
]


@pytest.mark.parametrize("mu_q, count", D5_TABLE)
def test_line_counts_for_quintics(mu_q, count):
    pts = [0.0, 1.0, -1.5, 2.0j, 0.5 - 1j]
    Q = P_of(list(zip(pts, mu_q)))
    assert tangent_count_through(Q, (2, 1, 1, 1)) == count


def test_three_space_counts():
    assert tangent_count_through(P_of([(0, 2), (1, 1), (2, 1), (3, 1)]), (3, 1, 1)) == 1
    assert tangent_count_through(P_of([(0, 2), (1, 2), (3, 1)]), (3, 1, 1)) == 2
    assert tangent_count_through(P_of([(0, 3), (1, 1), (3, 1)]), (4, 1)) == 1
    assert tangent_count_through(P_of([(0, 4), (1, 1)]), (5,)) == 1
    assert tangent_count_through(P_of([(0, 1), (1, 1), (3, 1), (4, 1), (5, 1)]), (3, 1, 1)) == 0


def test_brute_force_counts_divisors():
    Q = P_of([(0, 2), (1, 2), (3, 1)])
    assert brute_force_divisor_count(Q, (1,)) == 3
    assert brute_force_divisor_count(Q, (1, 1)) == 3
    assert brute_force_divisor_count(Q, (2,)) == 2
    assert brute_force_divisor_count(Q, (2, 2)) == 1


# tangency ---------------------------------------------------------------------

def test_velocity_example():
    Q = np.poly([1, 1j, -1j])  # (z - 1)(z^2 + 1)
    P = RootConfig([1.0, 3.0], [2, 1])
    vel, rc = tangency_velocity(Q, P, tau=1.0)
    # Qhat = z^2 + 1, Delta = (-2, 2)
    assert np.allclose(vel, [2 / (2 * -2), 10 / 2])
    back = tangent_line_point(from_roots(P), rc, vel, tau=1.0)
    assert np.allclose(back, Q)


def test_velocity_is_a_root_motion(rng):
    for _ in range(50):
        rc = random_rc(rng, int(rng.integers(2, 7)), sep=0.3)
        qhat = np.concatenate(([1.0], cplx(rng, len(rc))))
        low = rc.down1()
        Q = np.polymul(as_dense(from_roots(low)), qhat) if len(low) else qhat
        tau = 0.7
        vel, used = tangency_velocity(Q, rc, tau=tau)
        back = tangent_line_point(from_roots(rc), used, vel, tau=tau)
        assert np.max(np.abs(back - Q)) <= 1e-9 * max(1, np.max(np.abs(Q)))
        # moving the roots at speed -vel traces the line to first order
        h = 1e-6
        moved = lambda s: as_dense(from_roots(RootConfig(rc.roots - s * vel, rc.multiplicities)))
        fd = (moved(h) - moved(-h)) / (2 * h)
        P = as_dense(from_roots(rc))
        assert np.allclose(P + tau * fd, Q, atol=1e-6 * max(1, np.max(np.abs(Q))))


def test_velocity_rejects_non_divisible():
    with pytest.raises(ValueError):
        tangency_velocity(np.poly([0, 2, 3]), RootConfig([1.0, 3.0], [2, 1]))
    with pytest.raises(ValueError):
        tangency_velocity(np.poly([1, 2, 3]), RootConfig([1.0, 3.0], [2, 1]), tau=0)


def test_tangent_line_lies_in_tangent_space(rng):
    rc = RootConfig([0.0, 1.0, -1.0 + 1j], [3, 2, 1])
    flat, _ = tangent_space_Dmu(rc)
    for _ in range(20):
        pt = tangent_line_point(from_roots(rc), rc, cplx(rng, 3), tau=float(rng.uniform(-2, 2)))
        assert flat.contains(pt[1:])


# reconstruction and limits ------------------------------------------------------

def test_intersect_osculating(rng):
    for _ in range(100):
        rc = random_rc(rng, int(rng.integers(1, 9)))
        got = intersect_osculating(rc)
        assert np.max(np.abs(got.coeffs - from_roots(rc).coeffs)) <= 1e-8


def test_horizon():
    assert len(horizon(MonicPoly([0.0, -1.0, 0.0], field="real"))) == 3
    assert len(horizon(MonicPoly([0.0, 1.0, 0.0], field="real"))) == 1
    assert len(horizon(MonicPoly([0.0, 1.0, 0.0]))) == 3
    assert all(f.dim == 1 for f in horizon(MonicPoly([0.0, -1.0, 0.0])))


def test_limit_flats_fixtures():
    P1 = RootConfig([0.0], [3])
    flats = limit_tangent_flats(P1, (2, 1))
    assert len(flats) == 1 and np.allclose(flats[0][1], [1, 0])
    flats = limit_tangent_flats(P1, (1, 1, 1))
    assert len(flats) == 1 and flats[0][0].is_whole
    P1 = RootConfig([0.0, 1.0], [2, 2])
    divisors = sorted(tuple(np.round(div.real, 9)) for _, div in limit_tangent_flats(P1, (2, 1, 1)))
    assert divisors == [(1.0, -1.0), (1.0, 0.0)]


def test_limit_flats_are_limits(rng):
    P1 = RootConfig([0.0, 1.0], [3, 2])
    mu = Partition((2, 2, 1))
    limits = limit_tangent_flats(P1, mu)
    for res in resolutions(Partition((3, 2)), mu):
        dists = []
        for eps in (1e-2, 1e-3, 1e-4):
            near = split_roots(P1, res, eps, rng)
            flat, _ = tangent_space_Dmu(near)
            dists.append(min(flat.distance(lim) for lim, _ in limits))
        assert dists[-1] < 1e-3 and dists[-1] < dists[0]


def test_split_roots():
    rng = np.random.default_rng(0)
    near = split_roots(RootConfig([0.0], [3]), [(2, 1)], 1e-3, rng)
    assert sorted(near.multiplicities) == [1, 2]
    assert np.all(np.abs(near.roots) == pytest.approx(1e-3))
    with pytest.raises(ValueError):
        split_roots(RootConfig([0.0], [3]), [(1, 1)], 1e-3, rng)


def test_distinct_root_stratum(rng):
    assert distinct_root_stratum(P_of([(4, 3), (6, 3), (8, 1)])) == 3
    for _ in range(50):
        rc = random_rc(rng, int(rng.integers(1, 7)), sep=0.3)
        assert distinct_root_stratum(rc) == len(rc)
