"""Numeric hyperbolic geometry on the sphere at infinity.

Points of the extended complex plane are kept in homogeneous coordinates
``(a, b)`` with value ``a / b``; infinity is ``b == 0``.  Nothing here divides
by a possibly-zero float: cross ratios and Möbius maps work on the pairs, so
an infinite cross ratio is exact and decidable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import mpmath
import numpy as np

__all__ = [
    "INF",
    "DegenerateTetrahedronError",
    "ExtendedComplex",
    "IdealPolygon",
    "MobiusMap",
    "TetShape",
    "cross_ratio",
    "ideal_tet_volume",
    "is_regular_polygon",
    "klein_to_boundary",
    "lobachevsky",
    "mobius_from_triple",
    "regular_ngon_target",
    "regularity_residual",
]


@dataclass(frozen=True, eq=False)
class ExtendedComplex:
    """A point ``a / b`` of the Riemann sphere."""

    a: complex
    b: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if self.a == 0 and self.b == 0:
            raise ValueError("(0, 0) is not a point of the extended plane")

    @classmethod
    def of(cls, z: "PointLike") -> "ExtendedComplex":
        if isinstance(z, ExtendedComplex):
            return z
        if isinstance(z, (complex, float, int)) and cmath.isinf(complex(z)):
            return INF
        return cls(complex(z), 1.0)

    @property
    def is_infinite(self) -> bool:
        return self.b == 0

    @property
    def value(self) -> complex:
        """The finite value; ``complex('inf')`` at infinity."""
        if self.is_infinite:
            return complex(math.inf, 0.0)
        return self.a / self.b

    def __complex__(self) -> complex:
        return self.value

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtendedComplex):
            try:
                other = ExtendedComplex.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        # exact projective equality
        return self.a * other.b == other.a * self.b

    def distance(self, other: "PointLike") -> float:
        """Chordal distance on the Riemann sphere (at most 2)."""
        other = ExtendedComplex.of(other)
        num = abs(_det(self, other))
        den = math.hypot(abs(self.a), abs(self.b)) * math.hypot(abs(other.a), abs(other.b))
        return 2.0 * num / den

    def __repr__(self) -> str:
        return "ExtendedComplex(inf)" if self.is_infinite else f"ExtendedComplex({self.value})"


INF = ExtendedComplex(1.0, 0.0)

PointLike = Union[ExtendedComplex, complex, float, int]


def _det(p: ExtendedComplex, q: ExtendedComplex) -> complex:
    # homogeneous difference: (p - q) * p.b * q.b
    return p.a * q.b - q.a * p.b


def _coincide(p: ExtendedComplex, q: ExtendedComplex) -> bool:
    scale = math.hypot(abs(p.a), abs(p.b)) * math.hypot(abs(q.a), abs(q.b))
    return abs(_det(p, q)) <= 1e-15 * scale


def cross_ratio(p: PointLike, q: PointLike, r: PointLike, s: PointLike) -> ExtendedComplex:
    """``(p - r)(q - s) / ((p - s)(q - r))``, evaluated projectively."""
    pts = [ExtendedComplex.of(z) for z in (p, q, r, s)]
    distinct: list[ExtendedComplex] = []
    for z in pts:
        if not any(_coincide(z, w) for w in distinct):
            distinct.append(z)
    if len(distinct) < 3:
        raise ValueError("cross ratio needs at least 3 distinct points")
    p, q, r, s = pts
    return ExtendedComplex(_det(p, r) * _det(q, s), _det(p, s) * _det(q, r))


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)``, normalised to determinant 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = complex(self.a) * complex(self.d) - complex(self.b) * complex(self.c)
        if det == 0:
            raise ValueError("singular Möbius matrix")
        k = cmath.sqrt(det)
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)) / k)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m) -> "MobiusMap":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __call__(self, z: PointLike) -> ExtendedComplex:
        z = ExtendedComplex.of(z)
        return ExtendedComplex(self.a * z.a + self.b * z.b, self.c * z.a + self.d * z.b)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def is_close(self, other: "MobiusMap", tol: float = 1e-12) -> bool:
        # matrices agree up to sign
        m, o = self.matrix, other.matrix
        return bool(min(np.abs(m - o).max(), np.abs(m + o).max()) <= tol)


def mobius_from_triple(a: PointLike, b: PointLike, c: PointLike) -> MobiusMap:
    """The Möbius map sending ``a, b, c`` to ``0, 1, inf``."""
    a, b, c = (ExtendedComplex.of(z) for z in (a, b, c))
    if _coincide(a, b) or _coincide(b, c) or _coincide(a, c):
        raise ValueError("mobius_from_triple needs three distinct points")
    # z -> [z, a][b, c] / ([z, c][b, a]) with [x, y] the homogeneous determinant
    bc = _det(b, c)
    ba = _det(b, a)
    return MobiusMap(bc * a.b, -bc * a.a, ba * c.b, -ba * c.a)


@dataclass(frozen=True)
class IdealPolygon:
    vertices: tuple[ExtendedComplex, ...]

    def __post_init__(self):
        verts = tuple(ExtendedComplex.of(v) for v in self.vertices)
        if len(verts) < 3:
            raise ValueError("an ideal polygon needs at least 3 vertices")
        for i, v in enumerate(verts):
            if any(_coincide(v, w) for w in verts[:i]):
                raise ValueError("ideal polygon has a repeated vertex")
        object.__setattr__(self, "vertices", verts)

    @property
    def n(self) -> int:
        return len(self.vertices)


# exact cos(2 pi / n) where it is rational, so n = 3 gives an exact infinity
_EXACT_COS = {3: -0.5, 4: 0.0, 6: 0.5}


def regular_ngon_target(n: int) -> ExtendedComplex:
    """Cross ratio of four consecutive vertices of a regular ideal n-gon.

    ``1 + 1 / (2 cos(2 pi / n) + 1)``; infinite for the triangle.
    """
    if n < 3:
        raise ValueError("regular polygons have n >= 3")
    c = _EXACT_COS.get(n, math.cos(2 * math.pi / n))
    return ExtendedComplex(2 * c + 2, 2 * c + 1)


def regularity_residual(poly: IdealPolygon | Sequence[PointLike]) -> float:
    """Worst deviation of a consecutive-vertex cross ratio from the target.

    Finite targets use ``|R - target|``; the infinite target (triangles)
    uses ``|1 / R|``.  For a triangle ``v3`` wraps round to ``v0``.
    """
    if not isinstance(poly, IdealPolygon):
        poly = IdealPolygon(tuple(poly))
    n = poly.n
    v = poly.vertices
    target = regular_ngon_target(n)
    worst = 0.0
    for i in range(n):
        r = cross_ratio(v[i], v[(i + 1) % n], v[(i + 2) % n], v[(i + 3) % n])
        if target.is_infinite:
            err = 0.0 if r.is_infinite else abs(r.b / r.a) if r.a != 0 else math.inf
        elif r.is_infinite:
            err = math.inf
        else:
            err = abs(r.value - target.value)
        worst = max(worst, err)
    return worst


def is_regular_polygon(poly: IdealPolygon | Sequence[PointLike], tol: float = 1e-9) -> bool:
    return regularity_residual(poly) <= tol


def klein_to_boundary(v) -> ExtendedComplex:
    """Stereographic projection from the north pole ``(0, 0, 1)``."""
    x, y, z = (float(t) for t in v)
    if abs(math.sqrt(x * x + y * y + z * z) - 1.0) > 1e-12:
        raise ValueError("klein_to_boundary expects a unit vector")
    # (x + iy) / (1 - z) == (1 + z) / (x - iy) on the sphere; use the
    # better-conditioned form so the pole itself comes out as (2, 0)
    if z <= 0:
        return ExtendedComplex(complex(x, y), 1.0 - z)
    return ExtendedComplex(1.0 + z, complex(x, -y))


# ---------------------------------------------------------------------------
# volumes

_SERIES_TERMS = 40


@lru_cache(maxsize=1)
def _lobachevsky_coefficients() -> np.ndarray:
    # |B_2k| / (2k (2k+1)!) for k = 1.._SERIES_TERMS, rounded once from 30 digits
    with mpmath.workdps(30):
        coeffs = [
            abs(mpmath.bernoulli(2 * k)) / (2 * k * mpmath.factorial(2 * k + 1))
            for k in range(1, _SERIES_TERMS + 1)
        ]
        return np.array([float(c) for c in coeffs])


def lobachevsky(theta: float) -> float:
    """Lobachevsky function ``-int_0^theta log|2 sin t| dt``.

    Reduced to ``(-pi/2, pi/2]`` by periodicity and oddness, then summed as
    ``t (1 - log 2t + sum_k |B_2k| (2t)^2k / (2k (2k+1)!))``, which converges
    geometrically with ratio at most 1/4 on that interval.
    """
    t = math.remainder(float(theta), math.pi)
    if t == 0.0:
        return 0.0
    sign = 1.0 if t > 0 else -1.0
    t = abs(t)
    powers = (2.0 * t) ** (2 * np.arange(1, _SERIES_TERMS + 1))
    tail = float(np.dot(_lobachevsky_coefficients(), powers))
    return sign * t * (1.0 - math.log(2.0 * t) + tail)


class DegenerateTetrahedronError(ValueError):
    """Real shape parameter: the four ideal vertices are concyclic (zero volume)."""


@dataclass(frozen=True)
class TetShape:
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        if self.z.imag == 0:
            raise DegenerateTetrahedronError(f"shape {self.z} is real: zero-volume tetrahedron")

    def dihedral_angles(self) -> tuple[float, float, float]:
        z = self.z
        return cmath.phase(z), cmath.phase(1 / (1 - z)), cmath.phase((z - 1) / z)

    def cycled(self) -> "TetShape":
        return TetShape(1 / (1 - self.z))


def ideal_tet_volume(z: TetShape | complex) -> float:
    """Signed volume of the ideal tetrahedron of shape ``z``; positive iff Im z > 0."""
    shape = z if isinstance(z, TetShape) else TetShape(z)
    return sum(lobachevsky(angle) for angle in shape.dihedral_angles())
