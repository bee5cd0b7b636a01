"""The Viete map from roots to coefficients, its Jacobian, and discriminants."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .poly_core import MonicPoly, as_dense, derivative

__all__ = [
    "viete_map",
    "viete_jacobian",
    "viete_jacobian_det",
    "vandermonde_product",
    "sylvester",
    "exact_det",
    "discriminant",
    "real_cubic_chamber",
    "viete_image_of_slab",
    "jacobian_sign",
]


def _canonical(roots) -> np.ndarray:
    r = np.asarray(roots, dtype=complex).reshape(-1)
    order = np.lexsort((r.imag, r.real))
    return r[order]


def viete_map(roots, field: str = "complex") -> MonicPoly:
    """Coefficients ``a_k = (-1)^k e_k(roots)``.

    Roots are sorted by ``(re, im)`` first and folded in one linear factor at
    a time, so any permutation of the input gives bit-identical output.
    """
    r = _canonical(roots)
    if r.size == 0:
        raise ValueError("need at least one root")
    p = np.zeros(r.size + 1, dtype=complex)
    p[0] = 1.0
    for n, u in enumerate(r, start=1):
        # multiply the current degree n-1 polynomial by (z - u), in place
        p[1:n + 1] = p[1:n + 1] - u * p[:n]
    if field == "real":
        p = p.real
    return MonicPoly(p[1:], field=field)


def viete_jacobian(roots) -> np.ndarray:
    """Matrix ``J[k-1, i] = d a_k / d u_i`` in the given root order.

    ``d a_k / d u_i`` is minus the coefficient of ``z^(d-k)`` in
    ``prod_{j != i} (z - u_j)``.
    """
    r = np.asarray(roots, dtype=complex).reshape(-1)
    d = r.size
    J = np.empty((d, d), dtype=complex)
    for i in range(d):
        others = np.delete(r, i)
        c = np.poly(others) if d > 1 else np.ones(1)
        J[:, i] = -np.asarray(c, dtype=complex)
    return J


def jacobian_sign(d: int) -> int:
    """Sign relating ``det J`` to ``prod_{i<j} (u_i - u_j)``."""
    return -1 if (d * (d + 1) // 2) % 2 else 1


def vandermonde_product(roots) -> complex:
    r = np.asarray(roots, dtype=complex).reshape(-1)
    out = 1.0 + 0j
    for i, j in combinations(range(r.size), 2):
        out *= r[i] - r[j]
    return out


def viete_jacobian_det(roots, method: str = "lu") -> complex:
    """Jacobian determinant of the Viete map at ``roots``.

    ``method='lu'`` factors the Jacobi matrix; ``method='product'`` uses
    ``(-1)^(d(d+1)/2) * prod_{i<j} (u_i - u_j)``. The two agree.
    """
    if method == "lu":
        return complex(np.linalg.det(viete_jacobian(roots)))
    if method == "product":
        r = np.asarray(roots).reshape(-1)
        return jacobian_sign(r.size) * vandermonde_product(r)
    raise ValueError(f"unknown method {method!r}")


def sylvester(p, q) -> np.ndarray:
    """Sylvester matrix of two dense polynomials (highest power first)."""
    p, q = as_dense(p), as_dense(q)
    m, n = p.size - 1, q.size - 1
    S = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        S[i, i:i + m + 1] = p
    for i in range(m):
        S[n + i, i:i + n + 1] = q
    return S


def _gauss_int_matrix(M: np.ndarray) -> tuple[list, int]:
    """Scale a float matrix to Gaussian integers ``(re, im)``; returns the scale."""
    fr = [[(Fraction(z.real), Fraction(z.imag)) for z in row] for row in M]
    den = 1
    for row in fr:
        for a, b in row:
            den = max(den, a.denominator, b.denominator)
    # float denominators are powers of two, so the largest one is a common multiple
    return [[(int(a * den), int(b * den)) for a, b in row] for row in fr], den


def exact_det(M: np.ndarray) -> complex:
    """Determinant of a float matrix, exact for its binary entries.

    Fraction-free Bareiss elimination over the Gaussian integers; only the
    final conversion to ``complex`` rounds.
    """
    A, den = _gauss_int_matrix(np.asarray(M, dtype=complex))
    n = len(A)
    sign, prev = 1, (1, 0)
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if A[r][k] != (0, 0)), None)
        if piv is None:
            return 0j
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        pr, pi = A[k][k]
        qr, qi = prev
        norm = qr * qr + qi * qi
        for i in range(k + 1, n):
            ar, ai = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                xr, xi = row_i[j]
                yr, yi = row_k[j]
                # (x * p - a * y) / prev, exact in Z[i]
                nr = xr * pr - xi * pi - (ar * yr - ai * yi)
                ni = xr * pi + xi * pr - (ar * yi + ai * yr)
                tr, ti = nr * qr + ni * qi, ni * qr - nr * qi
                row_i[j] = (tr // norm, ti // norm)
            row_i[k] = (0, 0)
        prev = (pr, pi)
    re, im = A[n - 1][n - 1]
    scale = Fraction(den) ** n
    return sign * complex(float(Fraction(re) / scale), float(Fraction(im) / scale))


def discriminant(P: MonicPoly, method: str = "exact"):
    """``(-1)^(d(d-1)/2) * Res(P, P')``, equal to ``prod_{i<j} (u_i - u_j)^2``.

    The resultant is the determinant of the Sylvester matrix of ``P`` and
    ``P'``. ``method='exact'`` (default) evaluates it exactly for the given
    floating-point coefficients and rounds once; ``method='lu'`` uses LU with
    partial pivoting, which is faster but loses several digits to
    cancellation from degree 6 on. Real-field input gives a float.
    """
    d = P.degree
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    dense = P.dense
    S = sylvester(dense, derivative(dense, 1))
    if method == "exact":
        res = exact_det(S)
    elif method == "lu":
        res = np.linalg.det(S)
    else:
        raise ValueError(f"unknown method {method!r}")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    value = complex(sign * res)
    value = value + 0.0  # no signed zeros
    return value.real if P.field == "real" else value


def real_cubic_chamber(P: MonicPoly, tol: float = 1e-8) -> str:
    """``'U3'`` (three real roots), ``'U1'`` (one) or ``'boundary'``."""
    if P.degree != 3 or P.field != "real":
        raise ValueError("chamber classification needs a real cubic")
    delta = discriminant(P)
    if abs(delta) <= tol:
        return "boundary"
    return "U3" if delta > 0 else "U1"


def viete_image_of_slab(u_star, d: int, k: int):
    """Flat of coefficient points whose roots include ``u_star`` k times."""
    from .strata import tangent_flat

    return tangent_flat(u_star, d, k)
