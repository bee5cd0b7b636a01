"""Sampled point sets for three pictures of discriminant geometry.

``parabola-tangents``
    Lines ``c = -u b - u^2`` in the ``(b, c)`` plane of quadratics; each is
    tangent to the parabola ``b^2 = 4c``.
``cubic-cusp-tangents``
    The cusp ``(c, d) = (-3u^2, 2u^3)`` of reduced cubics with a double root,
    and its tangent lines ``u c + d = -u^3``.
``swallowtail``
    Reduced quartics with a double root ``z``, parametrized by ``(z, a_2)``
    through ``P'(z) = 0`` then ``P(z) = 0``.

Every row is checked against its defining equation before it is written.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .poly_core import MonicPoly
from .viete import discriminant

__all__ = ["FIGURES", "GridError", "grid_rows", "emit_grid"]

FIGURES = ("parabola-tangents", "cubic-cusp-tangents", "swallowtail")
RESIDUAL_TOL = 1e-8


class GridError(RuntimeError):
    """A sampled row failed its residual check."""


def _parabola(samples: int) -> list[dict]:
    rows = []
    for u in np.linspace(-2.0, 2.0, samples):
        for b in np.linspace(-4.0, 4.0, samples):
            c = -u * b - u * u
            rows.append({
                "figure": "parabola-tangents", "u": u, "s": b, "x": b, "y": c,
                "residual": abs((u * u + u * b) + c),
            })
    return rows


def _cusp(samples: int) -> list[dict]:
    rows = []
    for u in np.linspace(-1.5, 1.5, samples):
        c0, d0 = -3 * u * u, 2 * u ** 3
        rows.append({
            "figure": "cubic-cusp-tangents", "u": u, "s": 0.0, "x": c0, "y": d0,
            "residual": abs(4 * c0 ** 3 + 27 * d0 ** 2) / max(1.0, abs(c0)) ** 3,
        })
        for s in np.linspace(-2.0, 2.0, samples):
            c = c0 + s
            d = -u ** 3 - u * c
            rows.append({
                "figure": "cubic-cusp-tangents", "u": u, "s": s, "x": c, "y": d,
                "residual": abs(u ** 3 + u * c + d) / max(1.0, abs(u) ** 3),
            })
    return rows


def _swallowtail(samples: int) -> list[dict]:
    rows = []
    for z in np.linspace(-1.5, 1.5, samples):
        for a2 in np.linspace(-2.0, 2.0, samples):
            a3 = -4 * z ** 3 - 2 * a2 * z
            a4 = -z ** 4 - a2 * z ** 2 - a3 * z
            P = MonicPoly([0.0, a2, a3, a4], field="real")
            scale = max(1.0, P.norm) ** 3
            rows.append({
                "figure": "swallowtail", "u": z, "s": a2, "x": a3, "y": a4,
                "residual": abs(discriminant(P)) / scale,
            })
    return rows


_BUILDERS = {
    "parabola-tangents": _parabola,
    "cubic-cusp-tangents": _cusp,
    "swallowtail": _swallowtail,
}


def grid_rows(figure: str, samples: int = 21, tol: float = RESIDUAL_TOL) -> list[dict]:
    """Validated rows ``figure, u, s, x, y, residual`` in sorted order.

    ``u`` is the curve parameter, ``s`` the position along the sampled
    family and ``(x, y)`` the plotted point (``(b, c)``, ``(c, d)`` or
    ``(a_3, a_4)``). A residual above ``tol`` raises ``GridError``.
    """
    if figure not in _BUILDERS:
        raise ValueError(f"unknown figure {figure!r}; choose from {FIGURES}")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    rows = _BUILDERS[figure](samples)
    bad = [r for r in rows if not r["residual"] <= tol]
    if bad:
        raise GridError(f"{len(bad)} rows of {figure} exceed residual {tol}: {bad[0]}")
    rows.sort(key=lambda r: (r["u"], r["s"]))
    return rows


FIELDS = ["figure", "u", "s", "x", "y", "residual"]


def emit_grid(figure: str, samples: int, out) -> int:
    """Write the validated rows of ``figure`` as CSV; returns the row count."""
    rows = grid_rows(figure, samples)
    out = Path(out)
    with out.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS)
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(float(v)) if k != "figure" else v) for k, v in r.items()})
    return len(rows)
