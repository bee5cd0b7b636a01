"""Dense univariate polynomial calculus over R and C.

Conventions
-----------
A monic polynomial of degree ``d``

    P(z) = z^d + a_1 z^(d-1) + ... + a_(d-1) z + a_d

is stored as the coefficient vector ``(a_1, ..., a_d)`` (the point of the
coefficient space). The leading 1 is implicit. General (possibly non-monic)
polynomials are plain 1-d numpy arrays, highest power first, the same order
``numpy.polyval`` uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.optimize import linear_sum_assignment
from scipy.sparse.csgraph import connected_components

__all__ = [
    "MonicPoly",
    "RootConfig",
    "RootFindingError",
    "as_dense",
    "poly_eval",
    "derivative",
    "polymul",
    "divrem",
    "shift",
    "shift_dense",
    "from_roots",
    "roots",
    "normal_vector",
    "power_derivative",
    "falling",
]

EPS = np.finfo(float).eps
MAX_ITER = 500
STRUCTURE_TOL = 1e-8


class RootFindingError(RuntimeError):
    """Raised when the simultaneous iteration does not converge."""


def _check_field(field: str) -> str:
    if field not in ("real", "complex"):
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    return field


@dataclass(frozen=True, eq=False)
class MonicPoly:
    """Monic polynomial given by its non-leading coefficients ``a_1..a_d``."""

    coeffs: np.ndarray
    field: str = "complex"

    def __post_init__(self):
        _check_field(self.field)
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a monic polynomial needs degree >= 1")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if self.field == "real":
            if np.any(c.imag != 0):
                raise ValueError("real-field polynomial with complex coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dense(cls, dense, field: str = "complex") -> "MonicPoly":
        """Normalize a dense coefficient array (highest first) to monic form."""
        p = np.trim_zeros(np.asarray(dense, dtype=complex), "f")
        if p.size < 2:
            raise ValueError("need a polynomial of degree >= 1")
        p = p / p[0]
        if field == "real":
            p = p.real
        return cls(p[1:], field=field)

    @property
    def degree(self) -> int:
        return self.coeffs.size

    @property
    def dense(self) -> np.ndarray:
        """Full coefficient array ``[1, a_1, ..., a_d]``."""
        return np.concatenate(([1.0 + 0j], self.coeffs))

    @property
    def norm(self) -> float:
        """Max-norm of the coefficient point ``(a_1, ..., a_d)``."""
        return float(np.max(np.abs(self.coeffs)))

    @property
    def scale(self) -> float:
        return max(1.0, self.norm)

    def __call__(self, z):
        return poly_eval(self.dense, z)

    def __eq__(self, other):
        if not isinstance(other, MonicPoly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs.tobytes()))

    def __repr__(self):
        shown = self.coeffs.real if self.field == "real" else self.coeffs
        return f"MonicPoly({np.array2string(shown, precision=6)}, field={self.field!r})"

    def allclose(self, other: "MonicPoly", atol: float = 1e-10) -> bool:
        return self.degree == other.degree and bool(
            np.all(np.abs(self.coeffs - other.coeffs) <= atol)
        )


def as_dense(p) -> np.ndarray:
    """Return the dense (highest first) complex coefficient array of ``p``."""
    if isinstance(p, MonicPoly):
        return p.dense
    return np.atleast_1d(np.asarray(p, dtype=complex))


# ---------------------------------------------------------------------------
# basic arithmetic
# ---------------------------------------------------------------------------

def poly_eval(p, z):
    """Horner evaluation of a dense polynomial; ``z`` may be an array."""
    p = as_dense(p)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in p:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def derivative(p, j: int = 1) -> np.ndarray:
    """j-th formal derivative. Orders beyond the degree give ``[0]``."""
    if j < 0:
        raise ValueError("derivative order must be non-negative")
    p = as_dense(p)
    n = p.size - 1
    if j > n:
        return np.zeros(1, dtype=complex)
    powers = np.arange(n, j - 1, -1)
    factor = np.array([falling(int(k), j) for k in powers], dtype=float)
    return p[: n - j + 1] * factor


def polymul(p, q) -> np.ndarray:
    return np.convolve(as_dense(p), as_dense(q))


def _trim(p: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(p)
    if nz.size == 0:
        return np.zeros(1, dtype=complex)
    return p[nz[0]:]


def divrem(q, d) -> tuple[np.ndarray, np.ndarray]:
    """Polynomial long division ``q = d * quotient + remainder``.

    The remainder always has length ``deg(d)`` (zero-padded at the front)
    so that ``deg(remainder) < deg(d)`` holds structurally.
    """
    q = as_dense(q).copy()
    d = _trim(as_dense(d))
    if d.size == 1 and d[0] == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = _trim(q)
    m = d.size - 1
    if q.size - 1 < m:
        rem = np.zeros(max(m, 1), dtype=complex)
        rem[rem.size - q.size:] = q
        return np.zeros(1, dtype=complex), rem
    out = np.zeros(q.size - m, dtype=complex)
    work = q.copy()
    for i in range(out.size):
        c = work[i] / d[0]
        out[i] = c
        work[i: i + m + 1] -= c * d
    rem = work[out.size:] if m > 0 else np.zeros(1, dtype=complex)
    return out, rem


def shift_dense(p, t) -> np.ndarray:
    """Coefficients of ``p(z - t)`` by repeated synthetic division (Taylor shift)."""
    c = as_dense(p).copy()
    s = -complex(t)
    n = c.size - 1
    for i in range(n):
        for j in range(1, n - i + 1):
            c[j] += s * c[j - 1]
    return c


def shift(P: MonicPoly, t) -> MonicPoly:
    """Monic polynomial ``P(z - t)``: every root moves by ``+t``."""
    c = shift_dense(P, t)
    if P.field == "real":
        if complex(t).imag != 0:
            raise ValueError("complex shift of a real-field polynomial")
        c = c.real
    return MonicPoly(c[1:], field=P.field)


def falling(n: int, j: int):
    """Falling factorial n (n-1) ... (n-j+1); zero when j > n >= 0."""
    out = 1
    for i in range(j):
        out *= n - i
    return out


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootConfig:
    """Distinct roots with positive multiplicities (an effective divisor)."""

    roots: np.ndarray
    multiplicities: tuple

    def __post_init__(self):
        r = np.array(self.roots, dtype=complex).reshape(-1)
        m = tuple(int(k) for k in self.multiplicities)
        if r.size != len(m):
            raise ValueError("roots and multiplicities differ in length")
        if any(k < 1 for k in m):
            raise ValueError("multiplicities must be positive")
        if not np.all(np.isfinite(r)):
            raise ValueError("roots must be finite")
        order = sorted(range(r.size), key=lambda i: (r[i].real, r[i].imag))
        r = r[order]
        r.setflags(write=False)
        object.__setattr__(self, "roots", r)
        object.__setattr__(self, "multiplicities", tuple(m[i] for i in order))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "RootConfig":
        pairs = list(pairs)
        return cls([complex(u) for u, _ in pairs], [k for _, k in pairs])

    @classmethod
    def from_multiset(cls, values: Sequence, atol: float = 0.0) -> "RootConfig":
        """Group a list of (possibly repeated) roots; exact equality by default."""
        roots_, mult = [], []
        for v in values:
            v = complex(v)
            for i, u in enumerate(roots_):
                if abs(u - v) <= atol:
                    mult[i] += 1
                    break
            else:
                roots_.append(v)
                mult.append(1)
        return cls(roots_, mult)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.multiplicities)

    def __iter__(self):
        return iter(zip(self.roots, self.multiplicities))

    def __repr__(self):
        body = ", ".join(f"{_fmt(u)}:{k}" for u, k in self)
        return f"RootConfig({{{body}}})"

    def expanded(self) -> np.ndarray:
        """The root multiset as a flat array of length ``degree``."""
        return np.repeat(self.roots, self.multiplicities)

    def down1(self) -> "RootConfig":
        keep = [(u, k - 1) for u, k in self if k > 1]
        return RootConfig([u for u, _ in keep], [k for _, k in keep])

    def min_separation(self) -> float:
        if len(self) < 2:
            return math.inf
        diff = np.abs(self.roots[:, None] - self.roots[None, :])
        diff[np.diag_indices_from(diff)] = np.inf
        return float(diff.min())


def _fmt(u: complex) -> str:
    if u.imag == 0:
        return f"{u.real:.6g}"
    return f"{u.real:.6g}{u.imag:+.6g}j"


def from_roots(rc: RootConfig, field: str = "complex") -> MonicPoly:
    """Expand ``prod (z - u_i)^mu_i`` into a monic polynomial."""
    p = _expand(rc.roots, rc.multiplicities)
    if field == "real":
        p = p.real
    return MonicPoly(p[1:], field=field)


def _aberth(dense: np.ndarray, max_iter: int):
    """Aberth-Ehrlich simultaneous iteration.

    Returns the approximations and the rounding-level bound on ``|P(z_i)|``
    used as the stopping test.
    """
    d = dense.size - 1
    dp = derivative(dense, 1)
    absc = np.abs(dense)
    radius = 1.0 + float(np.max(absc[1:]))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    for _ in range(max_iter):
        pz = poly_eval(dense, z)
        bound = 8 * d * EPS * poly_eval(absc, np.abs(z)).real
        if np.all(np.abs(pz) <= bound):
            return z, bound
        dpz = poly_eval(dp, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(w)
        w[bad] = 1e-3 * radius
        z = z - w
    raise RootFindingError(f"no convergence after {max_iter} iterations (degree {d})")


def _polish(dense: np.ndarray, c: complex, m: int, reach: float) -> complex:
    # an m-fold root is a simple root of the (m-1)-st derivative
    f = derivative(dense, m - 1)
    df = derivative(dense, m)
    x = c
    for _ in range(8):
        step = poly_eval(f, x) / poly_eval(df, x)
        if not np.isfinite(step):
            return c
        x = x - step
        if abs(step) <= 4 * EPS * max(1.0, abs(x)):
            break
    return x if abs(x - c) <= reach else c


def _symmetrize(z: np.ndarray) -> np.ndarray:
    """Pair each approximation with the closest conjugate and average."""
    cost = np.abs(z[:, None] - np.conj(z)[None, :])
    rows, cols = linear_sum_assignment(cost)
    out = np.empty_like(z)
    out[rows] = 0.5 * (z[rows] + np.conj(z[cols]))
    return out


def _cluster_center(dense, z, members, reach_extra) -> complex:
    c = z[members].mean()
    if len(members) > 1:
        reach = float(np.max(np.abs(z[members] - c))) + reach_extra
        c = _polish(dense, c, len(members), reach)
    return c


def _is_multiple_root(dense: np.ndarray, c: complex, m: int) -> bool:
    """``P^(j)(c)`` is negligible for every ``j < m`` at relative level ``STRUCTURE_TOL``."""
    for j in range(m):
        f = derivative(dense, j)
        size = poly_eval(np.abs(f), abs(c)).real
        if abs(poly_eval(f, c)) > STRUCTURE_TOL * max(size, EPS):
            return False
    return True


def _split_component(dense, z, comp, forced, incl):
    """Coarsest single-linkage cut of one linked component whose clusters are
    genuine multiple roots. Cuts that separate forced pairs are skipped.
    """
    if comp.size == 1:
        return [comp]
    pts = np.column_stack([z[comp].real, z[comp].imag])
    tree = linkage(pts, method="single")
    sub_forced = forced[np.ix_(comp, comp)]
    fallback = None
    for k in range(1, comp.size + 1):
        labels = fcluster(tree, k, criterion="maxclust")
        if np.any(sub_forced & (labels[:, None] != labels[None, :])):
            continue
        groups = [comp[labels == lab] for lab in np.unique(labels)]
        if fallback is None:
            fallback = groups
        centers = [_cluster_center(dense, z, g, incl[g].max()) for g in groups]
        if all(_is_multiple_root(dense, c, g.size) for c, g in zip(centers, groups)):
            return groups
    return fallback


def _structure_residual(dense, centers, mult):
    return np.max(np.abs(_expand(centers, mult) - dense))


def _expand(centers, mult) -> np.ndarray:
    p = np.ones(1, dtype=complex)
    for u, k in zip(centers, mult):
        for _ in range(k):
            p = np.convolve(p, [1.0, -u])
    return p


def _refine_structure(dense, centers, mult, iters: int = 10):
    """Gauss-Newton on ``prod (z - u_i)^m_i = P`` with the multiplicities fixed.

    Keeps the iterate with the smallest coefficient residual.
    """
    best, best_res = centers, _structure_residual(dense, centers, mult)
    u = centers.copy()
    for _ in range(iters):
        g = _expand(u, mult)
        J = np.empty((dense.size - 1, u.size), dtype=complex)
        for i, (ui, m) in enumerate(zip(u, mult)):
            quot, _ = divrem(g, np.array([1.0, -ui]))
            J[:, i] = -m * quot
        step = np.linalg.lstsq(J, (dense - g)[1:], rcond=None)[0]
        u = u + step
        res = _structure_residual(dense, u, mult)
        if not np.isfinite(res):
            break
        if res < best_res:
            best, best_res = u.copy(), res
        if np.max(np.abs(step)) <= 4 * EPS * max(1.0, np.max(np.abs(u))):
            break
    return best


def roots(P: MonicPoly, tol: float = 1e-8, max_iter: int = MAX_ITER) -> RootConfig:
    """Distinct roots of ``P`` with numerical multiplicities.

    Aberth iteration from a fixed circle of radius ``1 + ||P||_inf``, then
    single-linkage clustering. Approximations closer than
    ``tol * max(1, ||P||_inf)`` are always merged. Approximations whose
    Weierstrass inclusion disks overlap are merged as far as the merged
    cluster passes a multiple-root test (all derivatives below the
    multiplicity vanish at its center). Cluster centers start as member
    means and are refined with the multiplicity structure held fixed.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = P.degree
    dense = P.dense
    z, pbound = _aberth(dense, max_iter)
    if P.field == "real":
        z = _symmetrize(z)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    incl = d * pbound / np.abs(np.prod(diff, axis=1))
    dist = np.abs(z[:, None] - z[None, :])
    forced = dist <= tol * P.scale
    link = forced | (dist <= incl[:, None] + incl[None, :])
    _, labels = connected_components(link, directed=False)
    groups = []
    for lab in np.unique(labels):
        groups.extend(_split_component(dense, z, np.flatnonzero(labels == lab), forced, incl))
    centers = np.array([_cluster_center(dense, z, g, incl[g].max()) for g in groups])
    mult = [g.size for g in groups]
    if max(mult) > 1:
        centers = _refine_structure(dense, centers, mult)
    # imaginary parts within a few ulps of |u| are rounding noise
    noise = 4 * EPS * np.maximum(1.0, np.abs(centers))
    if P.field == "real":
        noise = np.maximum(noise, tol * P.scale)
    centers = np.where(np.abs(centers.imag) <= noise, centers.real + 0j, centers)
    return RootConfig(centers, mult)


# ---------------------------------------------------------------------------
# normal vectors
# ---------------------------------------------------------------------------

def normal_vector(u, d: int, j: int = 0, exact: bool = False):
    """j-th u-derivative of ``n(u) = (u^(d-1), ..., u, 1)``.

    With ``exact=True`` the components are computed in Python arithmetic
    (ints, Fractions) and returned as a list.
    """
    if j < 0 or j > d:
        raise ValueError("need 0 <= j <= d")
    comps = []
    for p in range(d - 1, -1, -1):
        c = falling(p, j)
        comps.append(c * _pow(u, p - j, exact) if c else 0)
    if exact:
        return comps
    return np.array(comps, dtype=complex)


def power_derivative(u, d: int, j: int = 0, exact: bool = False):
    """Value of the j-th derivative of ``z^d`` at ``u``."""
    c = falling(d, j)
    return c * _pow(u, d - j, exact) if c else 0


def _pow(u, k: int, exact: bool):
    if exact:
        if isinstance(u, float):
            u = Fraction(u)
        return u ** k
    return complex(u) ** k

