"""Multiplicity strata of monic polynomials and their linear geometry.

A polynomial with distinct roots ``u_i`` of multiplicities ``mu_i`` lies in
the stratum ``D_mu``. Its tangent space there is the flat of monic
polynomials divisible by ``P_down1 = prod (z - u_i)^(mu_i - 1)``. The flat
``T(u, d, k)`` of polynomials with ``u`` as a root of multiplicity at least
``k`` is cut out by ``Q^(j)(u) = 0`` for ``j < k``, which is linear in the
coefficients with normal ``n^(j)(u)``.

Most functions accept either a ``MonicPoly`` (roots are then found
numerically at tolerance ``tol``) or a ``RootConfig``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import scipy.linalg

from .flats import AffineFlat
from .partitions import Partition, down1, gamma, res_down1_classes
from .poly_core import (
    MonicPoly,
    RootConfig,
    as_dense,
    divrem,
    falling,
    from_roots,
    normal_vector,
    poly_eval,
    power_derivative,
    roots,
)

__all__ = [
    "IllConditionedWarning",
    "StratumLabel",
    "mu_of",
    "stratum_label",
    "tangent_flat",
    "divisible_flat",
    "kappa",
    "kappa_derivative",
    "osculating_flat",
    "osculating_span_flat",
    "tangent_space_Dmu",
    "tangent_cone",
    "solve_by_tangency",
    "root_from_normal",
    "tangent_count_through",
    "brute_force_divisor_count",
    "tangency_velocity",
    "tangent_line_point",
    "intersect_osculating",
    "horizon",
    "limit_tangent_flats",
    "split_roots",
    "distinct_root_stratum",
]


class IllConditionedWarning(UserWarning):
    """Distinct roots closer than the clustering tolerance allows to trust."""


def _resolve(P, tol: float) -> tuple[int, RootConfig, str]:
    """Degree, root configuration and field of a polynomial or divisor."""
    if isinstance(P, RootConfig):
        return P.degree, P, "complex"
    return P.degree, roots(P, tol), P.field


def _real_part_of(rc: RootConfig) -> RootConfig:
    keep = [(u, k) for u, k in rc if u.imag == 0]
    return RootConfig([u for u, _ in keep], [k for _, k in keep])


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def mu_of(P, tol: float = 1e-8) -> tuple[Partition, RootConfig]:
    """Multiplicity partition and clustered roots.

    In real-field mode only the real roots are kept (the part of the root
    configuration visible on the real line).
    """
    _, rc, field = _resolve(P, tol)
    if field == "real":
        rc = _real_part_of(rc)
    return Partition(rc.multiplicities), rc


@dataclass(frozen=True)
class StratumLabel:
    """Multiplicity partition plus membership in the coarse strata ``D_{d,k}``."""

    mu: Partition
    degree: int

    @property
    def max_part(self) -> int:
        return max(self.mu, default=0)

    def in_D(self, k: int) -> bool:
        return self.max_part >= k

    def in_open(self, k: int) -> bool:
        return self.max_part == k

    @property
    def dk_memberships(self) -> list[tuple[int, bool]]:
        return [(k, self.in_D(k)) for k in range(1, self.degree + 1)]


def stratum_label(P, tol: float = 1e-8) -> StratumLabel:
    mu, _ = mu_of(P, tol)
    return StratumLabel(mu, P.degree)


# ---------------------------------------------------------------------------
# flats
# ---------------------------------------------------------------------------

def tangent_flat(u, d: int, k: int) -> AffineFlat:
    """Monic degree-``d`` polynomials with root ``u`` of multiplicity ``>= k``.

    ``k = 0`` gives the whole coefficient space.
    """
    if not 0 <= k <= d:
        raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
    cons = [(normal_vector(u, d, j), -power_derivative(u, d, j)) for j in range(k)]
    return AffineFlat.from_constraints(d, cons)


def divisible_flat(rc: RootConfig, d: int) -> AffineFlat:
    """Monic degree-``d`` polynomials divisible by ``prod (z - u_i)^m_i``."""
    if rc.degree > d:
        raise ValueError("divisor degree exceeds d")
    cons = [
        (normal_vector(u, d, j), -power_derivative(u, d, j))
        for u, m in rc
        for j in range(m)
    ]
    return AffineFlat.from_constraints(d, cons)


def kappa(u, d: int) -> np.ndarray:
    """Coefficient point of ``(z - u)^d``."""
    return kappa_derivative(u, d, 0)


def kappa_derivative(u, d: int, q: int, exact: bool = False):
    """q-th u-derivative of ``kappa(u)``; exact mode uses Python arithmetic."""
    comps = []
    for k in range(1, d + 1):
        c = (-1) ** k * comb(d, k) * falling(k, q)
        if not c:
            comps.append(0)
        elif exact:
            comps.append(c * (Fraction(u) if isinstance(u, float) else u) ** (k - q))
        else:
            comps.append(c * complex(u) ** (k - q))
    return comps if exact else np.array(comps, dtype=complex)


def osculating_flat(u, d: int, m: int) -> AffineFlat:
    """m-th osculating flat of the curve ``kappa`` at ``kappa(u)``.

    Constraint form: normals ``n^(j)(u)`` for ``j < d - m``, with offsets
    chosen so the flat passes through ``kappa(u)``.
    """
    if not 1 <= m <= d - 1:
        raise ValueError("need 1 <= m <= d - 1")
    p = kappa(u, d)
    normals = [normal_vector(u, d, j) for j in range(d - m)]
    return AffineFlat.from_constraints(d, [(n, n @ p) for n in normals])


def osculating_span_flat(u, d: int, m: int) -> AffineFlat:
    """Same flat built from its span: ``kappa(u) + span(kappa', ..., kappa^(m))``.

    The constraint normals are an orthonormal basis of the annihilator of the
    derivative vectors, computed by SVD.
    """
    D = np.array([kappa_derivative(u, d, q) for q in range(1, m + 1)])
    _, s, vh = np.linalg.svd(D)
    normals = vh[m:].conj()
    p = kappa(u, d)
    return AffineFlat(d, normals, normals @ p)


# ---------------------------------------------------------------------------
# tangent spaces and tangency
# ---------------------------------------------------------------------------

def tangent_space_Dmu(P, tol: float = 1e-8) -> tuple[AffineFlat, np.ndarray]:
    """Tangent space of the stratum through ``P`` and the divisor ``P_down1``.

    The flat consists of the monic polynomials divisible by
    ``prod (z - u_i)^(mu_i - 1)`` and has dimension ``|mu|``. For simple
    roots only it is the whole space (``flat.is_whole``).

    Warns with ``IllConditionedWarning`` when two distinct roots are closer
    than ``10 * tol``.
    """
    d, rc, _ = _resolve(P, tol)
    if rc.min_separation() < 10 * tol:
        warnings.warn(
            f"roots separated by {rc.min_separation():.3g} < 10*tol", IllConditionedWarning
        )
    low = rc.down1()
    divisor = as_dense(from_roots(low)) if len(low) else np.ones(1, dtype=complex)
    return divisible_flat(low, d), divisor


def tangent_cone(P, k: int, tol: float = 1e-8) -> list[AffineFlat]:
    """One flat ``T(u, d, k-1)`` per root of multiplicity exactly ``k``."""
    d, rc, _ = _resolve(P, tol)
    if max(rc.multiplicities) < k:
        raise ValueError(f"polynomial has no root of multiplicity >= {k}")
    return [tangent_flat(u, d, k - 1) for u, m in rc if m == k]


def solve_by_tangency(P, tol: float = 1e-8) -> list[tuple[complex, AffineFlat]]:
    """Hyperplanes through ``P`` tangent to ``D_{d,2}``, one per distinct root.

    The hyperplane ``T(u, d, 1)`` contains ``P`` exactly when ``P(u) = 0``.
    The root is read back from its normal with ``root_from_normal``.
    """
    d, rc, _ = _resolve(P, tol)
    if d < 2:
        raise ValueError("need degree >= 2")
    out = []
    for u, _ in rc:
        plane = tangent_flat(u, d, 1)
        out.append((root_from_normal(plane.normals[0]), plane))
    return out


def root_from_normal(normal) -> complex:
    """Second-to-last component of a normal scaled to end in 1."""
    n = np.asarray(normal, dtype=complex)
    return complex(n[-2] / n[-1])


def brute_force_divisor_count(Q, kappa_shape: Partition, tol: float = 1e-8) -> int:
    """Count distinct monic divisors of ``Q`` of root shape ``kappa_shape``.

    Enumerates sub-multisets of the root list of ``Q``, keeps those whose
    multiplicity pattern is ``kappa_shape`` and deduplicates the resulting
    divisor polynomials by their coefficients.
    """
    _, rc, _ = _resolve(Q, tol)
    kappa_shape = Partition(kappa_shape)
    pool = rc.expanded()
    w = kappa_shape.weight
    if w > pool.size:
        return 0
    seen: list[np.ndarray] = []
    for idx in combinations(range(pool.size), w):
        chosen = RootConfig.from_multiset(pool[list(idx)])
        if Partition(chosen.multiplicities) != kappa_shape:
            continue
        coeffs = from_roots(chosen).coeffs if w else np.zeros(0)
        if not any(np.allclose(coeffs, s, atol=1e-9) for s in seen):
            seen.append(coeffs)
    return len(seen)


def tangent_count_through(Q, mu: Partition, tol: float = 1e-8, cross_check: bool = True) -> int:
    """Number of ``|mu|``-dimensional tangent spaces of ``D_mu`` through ``Q``.

    Equals ``gamma(mu_down1, mu_Q)``. For degree at most 7 the value is
    compared with ``brute_force_divisor_count`` and a mismatch raises.
    """
    mu = Partition(mu)
    d, rc, _ = _resolve(Q, tol)
    if mu.weight != d:
        raise ValueError(f"partition weight {mu.weight} differs from degree {d}")
    n = gamma(down1(mu), Partition(rc.multiplicities))
    if cross_check and d <= 7:
        brute = brute_force_divisor_count(rc, down1(mu), tol)
        if brute != n:
            raise RuntimeError(f"gamma gives {n} but enumeration finds {brute}")
    return n


def tangency_velocity(Q, P, tau=1.0, tol: float = 1e-8, div_tol: float = 1e-9):
    """Root velocities whose tangent line at ``P`` passes through ``Q``.

    With ``Q = P_down1 * Qhat`` the velocities are
    ``Qhat(u_i) / (tau * mu_i * Delta_i)``, ``Delta_i = prod_{j != i} (u_i - u_j)``.

    Returns
    -------
    velocities : ndarray
        One entry per distinct root of ``P``, in ``RootConfig`` order.
    rc : RootConfig
        The roots of ``P`` used.
    """
    if tau == 0:
        raise ValueError("tau must be nonzero")
    d, rc, _ = _resolve(P, tol)
    Qd = as_dense(Q)
    if Qd.size != d + 1:
        raise ValueError("Q and P differ in degree")
    low = rc.down1()
    divisor = as_dense(from_roots(low)) if len(low) else np.ones(1, dtype=complex)
    qhat, rem = divrem(Qd, divisor)
    if np.max(np.abs(rem), initial=0.0) > div_tol * max(1.0, np.max(np.abs(Qd))):
        raise ValueError("Q is not divisible by P_down1")
    u = rc.roots
    mult = np.array(rc.multiplicities)
    delta = np.array([np.prod(np.delete(u[i] - u, i)) for i in range(u.size)])
    if np.any(delta == 0):
        raise ValueError("repeated roots")
    vel = poly_eval(qhat, u) / (tau * mult * delta)
    return vel, rc


def tangent_line_point(P, rc: RootConfig, velocities, tau=1.0) -> np.ndarray:
    """Dense coefficients of ``P + tau * P * sum mu_i v_i / (z - u_i)``."""
    Pd = as_dense(P)
    out = Pd.astype(complex).copy()
    for (u, m), v in zip(rc, velocities):
        quot, _ = divrem(Pd, np.array([1.0, -u]))
        out[1:] += tau * m * v * quot
    return out


def intersect_osculating(rc: RootConfig, refine: int = 3) -> MonicPoly:
    """Unique common point of the flats ``T(u_i, d, mu_i)``.

    The stacked constraints form a confluent Vandermonde system of full rank.
    It is solved by LU followed by ``refine`` steps of iterative refinement.
    """
    d = rc.degree
    flats = [tangent_flat(u, d, m) for u, m in rc]
    N = np.vstack([f.normals for f in flats])
    o = np.concatenate([f.offsets for f in flats])
    cond = np.linalg.cond(N)
    if not np.isfinite(cond) or cond > 1e14:
        raise np.linalg.LinAlgError(f"stacked system is singular (cond {cond:.3g})")
    lu = scipy.linalg.lu_factor(N)
    x = scipy.linalg.lu_solve(lu, o)
    # the system is badly conditioned for clustered roots of high order, so
    # refine against residuals computed exactly from the float data
    for _ in range(refine):
        r = _exact_residual(rc, x)
        if not np.any(r):
            break
        x = x - scipy.linalg.lu_solve(lu, r)
    return MonicPoly(x)


def _exact_residual(rc: RootConfig, x) -> np.ndarray:
    """``Q^(j)(u_i)`` for ``j < mu_i``, rounded once; ``Q`` is monic with coefficients ``x``."""
    d = rc.degree
    coeffs = [(Fraction(1), Fraction(0))] + [
        (Fraction(c.real), Fraction(c.imag)) for c in np.asarray(x, dtype=complex)
    ]
    out = []
    for u, m in rc:
        ur, ui = Fraction(u.real), Fraction(u.imag)
        for j in range(m):
            vr = vi = Fraction(0)
            for k, (cr, ci) in enumerate(coeffs[: d + 1 - j]):
                f = falling(d - k, j)
                vr, vi = vr * ur - vi * ui + f * cr, vr * ui + vi * ur + f * ci
            out.append(complex(float(vr), float(vi)))
    return np.array(out)


def horizon(P, tol: float = 1e-8) -> list[AffineFlat]:
    """Tangency loci ``T(u, d, 2)`` of the hyperplanes through ``P``.

    In real-field mode only real roots contribute.
    """
    d, rc, field = _resolve(P, tol)
    if d < 2:
        raise ValueError("need degree >= 2")
    if field == "real":
        rc = _real_part_of(rc)
    return [tangent_flat(u, d, 2) for u, _ in rc]


def _parents(rc: RootConfig) -> list[tuple[complex, int]]:
    """Roots ordered to match the parts of their (non-increasing) partition."""
    return sorted(rc, key=lambda e: -e[1])


def limit_tangent_flats(P1, mu: Partition, tol: float = 1e-8):
    """Limits of the tangent spaces of ``D_mu`` at points approaching ``P1``.

    One entry per class of resolutions of the roots of ``P1`` into
    ``mu``-shaped clusters, after dropping simple children and lowering the
    rest by one. Each limit is the flat of polynomials divisible by
    ``prod (z - x_j)^(e_j)`` where ``e_j`` sums ``mu_child - 1`` over the
    children of the root ``x_j``.

    Returns
    -------
    list of (AffineFlat, ndarray)
        Flat and dense divisor polynomial for each class.
    """
    mu = Partition(mu)
    d, rc, _ = _resolve(P1, tol)
    parents = _parents(rc)
    nu = Partition(k for _, k in parents)
    out = []
    for cls in res_down1_classes(nu, mu):
        pairs = [(x, sum(kids)) for (x, _), kids in zip(parents, cls) if sum(kids)]
        div = RootConfig.from_pairs(pairs) if pairs else RootConfig([], [])
        dense = as_dense(from_roots(div)) if pairs else np.ones(1, dtype=complex)
        out.append((divisible_flat(div, d), dense))
    return out


def split_roots(P1: RootConfig, resolution, eps: float, rng: np.random.Generator) -> RootConfig:
    """Point of ``D_mu`` near ``P1``: each root splits into its children.

    ``resolution`` lists child multiplicities per root of ``P1`` in the order
    used by ``limit_tangent_flats``; children sit at distance ``eps`` times a
    random unit complex offset from their parent.
    """
    pairs = []
    for (x, m), kids in zip(_parents(P1), resolution):
        if sum(kids) != m:
            raise ValueError("children do not add up to the parent multiplicity")
        if len(kids) == 1:
            pairs.append((x, kids[0]))
            continue
        angles = rng.permutation(len(kids)) * 2 * np.pi / len(kids) + rng.uniform(0, 0.5)
        for c, a in zip(kids, angles):
            pairs.append((x + eps * np.exp(1j * a), c))
    return RootConfig.from_pairs(pairs)


def distinct_root_stratum(P, tol: float = 1e-8, rank_tol: float = 1e-10) -> int:
    """Number of distinct roots, cross-checked by a Vandermonde rank.

    The Vandermonde matrix on the full root multiset has rank equal to the
    number of distinct roots; a disagreement raises ``RuntimeError``.
    """
    d, rc, _ = _resolve(P, tol)
    V = np.vander(rc.expanded(), d, increasing=True)
    s = np.linalg.svd(V, compute_uv=False)
    rank = int(np.sum(s > rank_tol * s[0]))
    if rank != len(rc):
        raise RuntimeError(f"Vandermonde rank {rank} but {len(rc)} clusters")
    return len(rc)
