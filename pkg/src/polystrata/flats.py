"""Affine subspaces of coefficient space in constraint form ``N @ a = o``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["AffineFlat", "EmptyIntersection", "RANK_TOL"]

RANK_TOL = 1e-10


class EmptyIntersection(ValueError):
    """Two flats with inconsistent constraints."""


def _rank(m: np.ndarray, rtol: float = RANK_TOL) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0


@dataclass(frozen=True, eq=False)
class AffineFlat:
    """Affine flat ``{a in K^d : normals @ a = offsets}``.

    A flat without constraints is the whole ambient space. Normals must be
    linearly independent (checked at relative tolerance ``RANK_TOL``).
    """

    ambient_dim: int
    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        d = int(self.ambient_dim)
        n = np.array(self.normals, dtype=complex).reshape(-1, d)
        o = np.array(self.offsets, dtype=complex).reshape(-1)
        if n.shape[0] != o.size:
            raise ValueError("one offset per normal")
        if _rank(n) != n.shape[0]:
            raise ValueError("constraint normals are linearly dependent")
        n.setflags(write=False)
        o.setflags(write=False)
        object.__setattr__(self, "ambient_dim", d)
        object.__setattr__(self, "normals", n)
        object.__setattr__(self, "offsets", o)

    @classmethod
    def whole(cls, d: int) -> "AffineFlat":
        return cls(d, np.zeros((0, d)), np.zeros(0))

    @classmethod
    def from_constraints(cls, d: int, constraints) -> "AffineFlat":
        constraints = list(constraints)
        if not constraints:
            return cls.whole(d)
        normals = np.array([c[0] for c in constraints], dtype=complex)
        offsets = np.array([c[1] for c in constraints], dtype=complex)
        return cls(d, normals, offsets)

    @property
    def codim(self) -> int:
        return self.normals.shape[0]

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim

    @property
    def is_whole(self) -> bool:
        """Marker for the unconstrained flat (the whole coefficient space)."""
        return self.codim == 0

    @property
    def constraints(self) -> list[tuple[np.ndarray, complex]]:
        return [(n, complex(o)) for n, o in zip(self.normals, self.offsets)]

    def residuals(self, point) -> np.ndarray:
        """Constraint residuals at ``point`` scaled by the size of each equation."""
        p = np.asarray(point, dtype=complex).reshape(-1)
        if self.is_whole:
            return np.zeros(0)
        raw = self.normals @ p - self.offsets
        size = np.maximum.reduce([
            np.ones(self.codim),
            np.abs(self.offsets),
            np.abs(self.normals) @ np.abs(p),
        ])
        return np.abs(raw) / size

    def residual(self, point) -> float:
        r = self.residuals(point)
        return float(r.max()) if r.size else 0.0

    def contains(self, point, tol: float = 1e-9) -> bool:
        return self.residual(point) <= tol

    def point(self) -> np.ndarray:
        """Point of the flat nearest the origin."""
        if self.is_whole:
            return np.zeros(self.ambient_dim, dtype=complex)
        return np.linalg.lstsq(self.normals, self.offsets, rcond=None)[0]

    def directions(self) -> np.ndarray:
        """Orthonormal basis (columns) of the direction space."""
        if self.is_whole:
            return np.eye(self.ambient_dim, dtype=complex)
        _, s, vh = np.linalg.svd(self.normals)
        return vh[self.codim:].conj().T

    def projector(self) -> np.ndarray:
        b = self.directions()
        return b @ b.conj().T

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """``n`` random points of the flat, one per row."""
        b = self.directions()
        c = rng.standard_normal((n, b.shape[1])) + 1j * rng.standard_normal((n, b.shape[1]))
        return self.point()[None, :] + c @ b.T

    def intersect(self, other: "AffineFlat", tol: float = 1e-8) -> "AffineFlat":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        normals = np.vstack([self.normals, other.normals])
        offsets = np.concatenate([self.offsets, other.offsets])
        keep: list[int] = []
        for i in range(normals.shape[0]):
            if _rank(normals[keep + [i]]) == len(keep) + 1:
                keep.append(i)
        out = AffineFlat(self.ambient_dim, normals[keep], offsets[keep])
        p = out.point()
        for flat in (self, other):
            if not flat.contains(p, tol):
                raise EmptyIntersection("flats do not meet")
        return out

    def contains_flat(self, other: "AffineFlat", rng=None, tol: float = 1e-9) -> bool:
        rng = np.random.default_rng(0) if rng is None else rng
        pts = other.sample(max(other.ambient_dim, 1), rng)
        return all(self.contains(p, tol) for p in np.vstack([other.point(), pts]))

    def equals(self, other: "AffineFlat", rng=None, tol: float = 1e-9) -> bool:
        """Equal dimension plus mutual containment of random sample points."""
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return self.contains_flat(other, rng, tol) and other.contains_flat(self, rng, tol)

    def distance(self, other: "AffineFlat") -> float:
        """Projector gap of the direction spaces plus gap of the nearest points."""
        gap = np.linalg.norm(self.projector() - other.projector(), 2)
        return float(gap + np.linalg.norm(self.point() - other.point()))

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "constraints": [
                {"normal": [[v.real, v.imag] for v in n], "offset": [o.real, o.imag]}
                for n, o in self.constraints
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AffineFlat":
        from .io import parse_scalar

        d = int(obj["ambient_dim"])
        cons = [
            ([parse_scalar(v) for v in c["normal"]], parse_scalar(c["offset"]))
            for c in obj["constraints"]
        ]
        return cls.from_constraints(d, cons)

    def __repr__(self):
        return f"AffineFlat(ambient_dim={self.ambient_dim}, dim={self.dim})"
