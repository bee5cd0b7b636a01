"""Seeded randomized invariant suites, one per module.

Each suite draws ``samples`` random cases from ``numpy.random.default_rng(seed)``
and reports how many checks broke their bound and the worst ratio of
residual to bound (below 1 means every check passed).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .flow import phi
from .partitions import Partition, gamma, merge_leq, ones, partitions_of
from .poly_core import MonicPoly, RootConfig, divrem, from_roots, roots
from .strata import intersect_osculating, tangency_velocity, tangent_line_point
from .viete import discriminant, vandermonde_product, viete_jacobian_det

__all__ = ["CheckResult", "SUITES", "run_suite", "random_rc"]


@dataclass
class CheckResult:
    suite: str
    samples: int
    failures: int
    worst: float

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {**asdict(self), "ok": self.ok}


def _cplx(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_rc(rng, d: int, sep: float = 0.1, radius: float = 1.5, mults=None) -> RootConfig:
    """Random root configuration of degree ``d`` with pairwise separation ``>= sep``."""
    if mults is None:
        mults = []
        left = d
        while left:
            m = int(rng.integers(1, left + 1)) if rng.random() < 0.3 else 1
            mults.append(m)
            left -= m
    pts: list[complex] = []
    while len(pts) < len(mults):
        z = complex(*rng.uniform(-radius, radius, 2))
        if all(abs(z - p) >= sep for p in pts):
            pts.append(z)
    return RootConfig(pts, mults)


class _Tally:
    """Counts checks; ``worst`` is the largest residual-to-bound ratio."""

    def __init__(self):
        self.failures, self.worst, self.n = 0, 0.0, 0

    def add(self, value, bound):
        self.n += 1
        ratio = float(value) / bound if bound else (0.0 if value == 0 else np.inf)
        self.worst = max(self.worst, ratio)
        if not value <= bound:
            self.failures += 1


def _poly_core(rng, samples):
    t = _Tally()
    for _ in range(samples):
        d = int(rng.integers(2, 9))
        rc = random_rc(rng, d)
        P = from_roots(rc)
        got = roots(P)
        if got.multiplicities != rc.multiplicities:
            t.add(np.inf, 1e-6)
            continue
        t.add(np.max(np.abs(got.roots - rc.roots)), 1e-6)
        s, u = _cplx(rng, 2)
        scale = max(1.0, np.max(np.abs(phi(P, s + u).coeffs)))
        t.add(np.max(np.abs(phi(phi(P, s), u).coeffs - phi(P, s + u).coeffs)) / scale, 1e-10)
        q, D = _cplx(rng, d + 3), _cplx(rng, d)
        quo, rem = divrem(q, D)
        recon = np.polyadd(np.polymul(D, quo), rem)
        t.add(np.max(np.abs(recon - q)) / max(1.0, np.max(np.abs(q))), 1e-10)
    return t


def _partitions(rng, samples):
    t = _Tally()
    for w in range(1, 7):
        parts = list(partitions_of(w))
        for a in parts:
            t.add(0 if merge_leq(a, a) else 1, 0)
            for b in parts:
                if a != b and merge_leq(a, b) and merge_leq(b, a):
                    t.add(1, 0)
                for c in parts:
                    if merge_leq(a, b) and merge_leq(b, c) and not merge_leq(a, c):
                        t.add(1, 0)
    for _ in range(samples):
        tau = Partition(rng.integers(1, 4, size=int(rng.integers(1, 6))))
        k = int(rng.integers(0, len(tau) + 1))
        t.add(abs(gamma(ones(k), tau) - comb(len(tau), k)), 0)
    return t


def _viete(rng, samples):
    t = _Tally()
    for _ in range(samples):
        d = int(rng.integers(2, 8))
        rc = random_rc(rng, d, mults=[1] * d)
        vp = vandermonde_product(rc.roots)
        t.add(abs(discriminant(from_roots(rc)) - vp**2) / abs(vp**2), 1e-7)
        lu = viete_jacobian_det(rc.roots)
        t.add(abs(lu - viete_jacobian_det(rc.roots, "product")) / abs(vp), 1e-10)
    return t


def _strata(rng, samples):
    t = _Tally()
    for _ in range(samples):
        d = int(rng.integers(2, 9))
        rc = random_rc(rng, d)
        t.add(np.max(np.abs(intersect_osculating(rc).coeffs - from_roots(rc).coeffs)), 1e-8)
        low = rc.down1()
        qhat = np.concatenate(([1.0], _cplx(rng, len(rc))))
        Q = np.polymul(from_roots(low).dense, qhat) if len(low) else qhat
        vel, used = tangency_velocity(Q, rc, tau=0.5)
        back = tangent_line_point(from_roots(rc), used, vel, tau=0.5)
        t.add(np.max(np.abs(back - Q)) / max(1.0, np.max(np.abs(Q))), 1e-9)
    return t


def _flow(rng, samples):
    t = _Tally()
    for _ in range(samples):
        d = int(rng.integers(2, 8))
        P = MonicPoly(_cplx(rng, d))
        s = complex(*rng.standard_normal(2))
        before = discriminant(P)
        t.add(abs(discriminant(phi(P, s)) - before) / max(1.0, abs(before)), 1e-9)
    return t


SUITES = {
    "poly_core": _poly_core,
    "partitions": _partitions,
    "viete": _viete,
    "strata": _strata,
    "flow": _flow,
}


def run_suite(name: str, seed: int = 0, samples: int = 200) -> CheckResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    tally = SUITES[name](np.random.default_rng(seed), samples)
    return CheckResult(name, tally.n, tally.failures, tally.worst)
