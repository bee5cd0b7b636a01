"""JSON forms for scalars, polynomials, root configurations and partitions.

Scalars are ``[re, im]`` pairs; bare numbers are accepted on input.
A polynomial is ``{"degree": d, "coeffs": [a_1, ..., a_d]}``.
"""

from __future__ import annotations

import json
import math

from .partitions import Partition
from .poly_core import MonicPoly, RootConfig

__all__ = [
    "InputError",
    "parse_scalar",
    "scalar_json",
    "poly_from_json",
    "poly_to_json",
    "roots_from_json",
    "roots_to_json",
    "partition_from_json",
]


class InputError(ValueError):
    """Malformed user input."""


def parse_scalar(v) -> complex:
    if isinstance(v, bool):
        raise InputError(f"not a number: {v!r}")
    if isinstance(v, (int, float)):
        z = complex(v)
    elif isinstance(v, str):
        try:
            z = complex(v.replace(" ", ""))
        except ValueError:
            raise InputError(f"not a number: {v!r}") from None
    elif isinstance(v, (list, tuple)) and len(v) == 2:
        re, im = (parse_scalar(x) for x in v)
        if re.imag or im.imag:
            raise InputError(f"pair components must be real: {v!r}")
        z = complex(re.real, im.real)
    else:
        raise InputError(f"not a scalar: {v!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"non-finite scalar: {v!r}")
    return z


def scalar_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _load(obj):
    if isinstance(obj, str):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    return obj


def poly_from_json(obj, field: str = "complex") -> MonicPoly:
    """Parse the polynomial JSON form (a dict, or a text holding one).

    A bare list is read as the coefficient list ``a_1..a_d``.
    """
    obj = _load(obj)
    if isinstance(obj, list):
        obj = {"degree": len(obj), "coeffs": obj}
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise InputError("polynomial must be an object with 'coeffs'")
    coeffs = [parse_scalar(c) for c in obj["coeffs"]]
    degree = obj.get("degree", len(coeffs))
    if not isinstance(degree, int) or degree != len(coeffs) or degree < 1:
        raise InputError(f"degree {degree!r} does not match {len(coeffs)} coefficients")
    if field == "real":
        if any(c.imag for c in coeffs):
            raise InputError("complex coefficient in real-field mode")
        coeffs = [c.real for c in coeffs]
    return MonicPoly(coeffs, field=field)


def poly_to_json(P: MonicPoly) -> dict:
    return {"degree": P.degree, "coeffs": [scalar_json(c) for c in P.coeffs]}


def roots_from_json(obj) -> RootConfig:
    """Parse ``[[root, mult], ...]`` or a plain list of roots (repeats allowed)."""
    obj = _load(obj)
    if not isinstance(obj, list) or not obj:
        raise InputError("roots must be a non-empty list")
    if all(isinstance(e, dict) for e in obj):
        return RootConfig.from_pairs((parse_scalar(e["root"]), int(e["mult"])) for e in obj)
    return RootConfig.from_multiset([parse_scalar(v) for v in obj])


def roots_to_json(rc: RootConfig) -> list[dict]:
    return [{"root": scalar_json(u), "mult": k} for u, k in rc]


def partition_from_json(obj) -> Partition:
    if isinstance(obj, str) and not obj.strip().startswith("["):
        try:
            return Partition.parse(obj)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    obj = _load(obj)
    if not isinstance(obj, list) or not all(isinstance(p, int) and p > 0 for p in obj):
        raise InputError(f"partition must be a list of positive integers: {obj!r}")
    return Partition(obj)
