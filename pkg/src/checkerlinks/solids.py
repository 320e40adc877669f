"""The three right-angled solids: octahedron, cuboctahedron, icosidodecahedron."""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .diagram import RotationSystem

__all__ = ["Solid", "solid_edges", "solid_rotation_system", "solid_vertices"]

PHI = (1 + 5**0.5) / 2


class Solid(enum.Enum):
    OCTAHEDRON = ("Octahedron", 6, 3)
    CUBOCTAHEDRON = ("Cuboctahedron", 12, 4)
    ICOSIDODECAHEDRON = ("Icosidodecahedron", 30, 5)

    def __init__(self, label: str, vertex_count: int, ngon: int):
        self.label = label
        self.vertex_count = vertex_count
        self.ngon = ngon
        # V (2/n - 1/3) = 2 on the sphere when every vertex meets two
        # triangles and two n-gons
        assert Fraction(vertex_count) == 2 / (Fraction(2, ngon) - Fraction(1, 3))

    def __str__(self) -> str:
        return self.label

    @classmethod
    def parse(cls, name: str) -> "Solid":
        for s in cls:
            if s.label.lower() == name.strip().lower():
                return s
        raise ValueError(f"unknown solid {name!r}; expected one of {[s.label for s in cls]}")


@lru_cache(maxsize=None)
def solid_vertices(solid: Solid) -> np.ndarray:
    """Unit-sphere vertex coordinates, in a fixed order."""
    if solid is Solid.OCTAHEDRON:
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
        out = np.array(pts, dtype=float)
    elif solid is Solid.CUBOCTAHEDRON:
        pts = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for si, sj in itertools.product((1, -1), repeat=2):
                v = [0.0, 0.0, 0.0]
                v[i], v[j] = si, sj
                pts.append(v)
        out = np.array(pts) / np.sqrt(2.0)
    else:
        ico = []
        for a, b in itertools.product((1, -1), repeat=2):
            ico += [(0, a, b * PHI), (a, b * PHI, 0), (b * PHI, 0, a)]
        ico = np.array(ico, dtype=float)
        mids = [
            (ico[i] + ico[j]) / 2
            for i, j in itertools.combinations(range(12), 2)
            if abs(np.linalg.norm(ico[i] - ico[j]) - 2.0) < 1e-9
        ]
        out = np.array(mids)
        out /= np.linalg.norm(out, axis=1)[:, None]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def solid_edges(solid: Solid) -> tuple[tuple[int, int], ...]:
    pts = solid_vertices(solid)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    shortest = dist[dist > 1e-9].min()
    return tuple(
        (i, j)
        for i, j in itertools.combinations(range(len(pts)), 2)
        if abs(dist[i, j] - shortest) < 1e-9
    )


@lru_cache(maxsize=None)
def solid_rotation_system(solid: Solid) -> RotationSystem:
    """1-skeleton embedded in the sphere, counterclockwise seen from outside."""
    return RotationSystem.from_embedding(solid_vertices(solid), solid_edges(solid))
