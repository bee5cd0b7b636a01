"""The translation flow on coefficient space and the reduction to ``a_1 = 0``.

``phi(P, t)`` is the polynomial ``P(z - t)``: every root moves by ``+t``.
On coefficients this is the affine map ``a -> L(t) a + kappa(t)`` with
``L(t)[k, j] = C(d - j, k - j) (-t)^(k - j)`` (unit lower triangular).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .partitions import Partition
from .poly_core import MonicPoly, shift
from .viete import discriminant

__all__ = [
    "phi",
    "linear_part",
    "rational_det",
    "linear_part_det_exact",
    "FlowReport",
    "check_invariants",
    "reduce",
    "k_transform_d3",
    "k_transform_d3_printed",
]


def phi(P: MonicPoly, t) -> MonicPoly:
    """Coefficients of ``P(z - t)``, by Taylor shift."""
    return shift(P, t)


def linear_part(d: int, t, exact: bool = False):
    """Matrix of the linear part of ``phi(., t)`` in the basis ``a_1..a_d``.

    With ``exact=True`` and rational ``t`` the entries are Fractions in a
    nested list.
    """
    if exact:
        t = Fraction(t)
        return [
            [comb(d - j, k - j) * (-t) ** (k - j) if j <= k else Fraction(0)
             for j in range(1, d + 1)]
            for k in range(1, d + 1)
        ]
    L = np.zeros((d, d), dtype=complex)
    for k in range(1, d + 1):
        for j in range(1, k + 1):
            L[k - 1, j - 1] = comb(d - j, k - j) * (-complex(t)) ** (k - j)
    return L


def rational_det(rows) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def linear_part_det_exact(d: int) -> Fraction:
    """Determinant of ``L(t)`` as a polynomial identity in ``t``.

    ``det L(t)`` is a polynomial of degree at most ``d(d-1)/2``; it is
    evaluated exactly at that many plus one integer points and the common
    value is returned. Distinct values raise ``ArithmeticError``.
    """
    values = {rational_det(linear_part(d, t, exact=True)) for t in range(d * (d - 1) // 2 + 1)}
    if len(values) != 1:
        raise ArithmeticError(f"det L(t) is not constant: {sorted(values)}")
    return values.pop()


@dataclass(frozen=True)
class FlowReport:
    """Invariants of ``phi(., t)`` checked at one polynomial."""

    disc_drift: float
    linear_det: Fraction
    mu_before: Partition
    mu_after: Partition

    @property
    def mu_preserved(self) -> bool:
        return self.mu_before == self.mu_after


def check_invariants(P: MonicPoly, t, tol: float = 1e-8) -> FlowReport:
    """Discriminant drift, linear-part determinant and multiplicity pattern.

    The drift is ``|D(phi P) - D(P)| / max(1, |D(P)|)``. The determinant is
    exact: at the given ``t`` when it is real, otherwise as a polynomial
    identity in ``t``.
    """
    from .strata import mu_of

    if P.degree < 2:
        raise ValueError("need degree >= 2")
    Q = phi(P, t)
    before, after = discriminant(P), discriminant(Q)
    drift = abs(after - before) / max(1.0, abs(before))
    tc = complex(t)
    if tc.imag == 0:
        det = rational_det(linear_part(P.degree, tc.real, exact=True))
    else:
        det = linear_part_det_exact(P.degree)
    return FlowReport(float(drift), det, mu_of(P, tol)[0], mu_of(Q, tol)[0])


def reduce(P: MonicPoly) -> tuple[MonicPoly, complex]:
    """Flow ``P`` to the slice ``a_1 = 0``.

    Returns ``(P_red, t_star)`` with ``t_star = a_1 / d`` and
    ``P_red = phi(P, t_star)``, so ``phi(P_red, -t_star) == P``.
    """
    t_star = P.coeffs[0] / P.degree
    if P.field == "real":
        t_star = t_star.real
    return phi(P, t_star), complex(t_star)


def k_transform_d3(P: MonicPoly) -> MonicPoly:
    """Flow a cubic to ``b = 0`` and then put ``b`` back.

    Gives ``(b, c - b^2/3, d - bc/3 + 2 b^3/27)``.
    """
    if P.degree != 3:
        raise ValueError("needs a cubic")
    Q, _ = reduce(P)
    out = np.array([P.coeffs[0], Q.coeffs[1], Q.coeffs[2]])
    return MonicPoly(out.real if P.field == "real" else out, field=P.field)


def k_transform_d3_printed(P: MonicPoly) -> MonicPoly:
    """The closed form ``(b, c - 5/9 b^2, d - bc/3 - 2/27 b^3)``.

    Kept to measure how far it sits from ``k_transform_d3``; it does not map
    cubics with a triple root onto the ``b``-axis.
    """
    if P.degree != 3:
        raise ValueError("needs a cubic")
    b, c, d = P.coeffs
    out = np.array([b, c - 5 / 9 * b**2, d - b * c / 3 - 2 / 27 * b**3])
    return MonicPoly(out.real if P.field == "real" else out, field=P.field)
