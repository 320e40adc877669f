"""Checkerboard polyhedra and their right-angled realisations.

Cutting an alternating link complement along both checkerboard surfaces
gives two ideal polyhedra, mirror images of each other, whose 1-skeleton is
the projection graph: ideal vertices at crossings, one edge per diagram edge,
one face per region.  The faces of one polyhedron are glued to the same
faces of the other after a one-edge rotation, forwards on black faces and
backwards on white ones.

For the three solids the polyhedron is realised in the Klein model by
putting the ideal vertices at the vertices of the Euclidean solid inscribed
in the unit sphere, and every claim about the realisation (right angles,
regular faces, rectangular cusps, volume) is checked numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .classify import reference_diagram
from .diagram import BLACK, Diagram, analyze, checkerboard_color
from .hypgeom import (
    DegenerateTetrahedronError,
    TetShape,
    cross_ratio,
    ideal_tet_volume,
    klein_to_boundary,
    mobius_from_triple,
    regularity_residual,
)
from .solids import Solid, solid_vertices

__all__ = [
    "CombinatorialPolyhedron",
    "CuspSection",
    "Gluing",
    "IdealPolyhedron",
    "NonConvexError",
    "SolidReport",
    "checkerboard_polyhedra",
    "cusp_sections",
    "dihedral_angles",
    "edge_classes",
    "face_regularity_residuals",
    "inscribe_solid",
    "polyhedron_volume",
    "realize_solid",
    "right_angled_volume",
    "verify_face_regularity",
]

COPLANAR_TOL = 1e-10


class NonConvexError(ValueError):
    """Face vertices not coplanar, or a vertex beyond a face plane."""


@dataclass(frozen=True)
class CombinatorialPolyhedron:
    """A 4-valent sphere polyhedron with coloured faces.

    ``faces[i]`` lists vertices in boundary order and ``face_edges[i][j]`` is
    the edge from ``faces[i][j]`` to ``faces[i][j + 1]``.  ``rotations[v]``
    lists the edges at ``v`` counterclockwise; ``corner_faces[v][s]`` is the
    face between ``rotations[v][s]`` and ``rotations[v][s + 1]``.
    """

    n_vertices: int
    edges: dict[int, tuple[int, int]] = field(hash=False)
    faces: tuple[tuple[int, ...], ...]
    face_edges: tuple[tuple[int, ...], ...]
    colors: tuple[str, ...]
    rotations: tuple[tuple[int, int, int, int], ...]
    corner_faces: tuple[tuple[int, int, int, int], ...]
    mirrored: bool = False

    @classmethod
    def from_diagram(cls, d: Diagram) -> "CombinatorialPolyhedron":
        coloring = checkerboard_color(d)
        faces = tuple(f.crossings for f in coloring.faces)
        face_edges = tuple(tuple(d.quads[c][s] for c, s in f.boundary) for f in coloring.faces)
        edges = {label: (a[0], b[0]) for label, (a, b) in d.edge_darts().items()}
        corner_faces = tuple(
            tuple(coloring.face_of((c, (s + 1) % 4)) for s in range(4)) for c in range(d.n)
        )
        return cls(d.n, edges, faces, face_edges, coloring.colors, d.quads, corner_faces)

    def mirror(self) -> "CombinatorialPolyhedron":
        """Same cells with every cyclic order reversed."""
        faces = tuple((f[0],) + tuple(reversed(f[1:])) for f in self.faces)
        face_edges = tuple(tuple(reversed(e)) for e in self.face_edges)
        rotations = tuple(tuple(reversed(r)) for r in self.rotations)
        # corner between r[s] and r[s+1] becomes the corner between the
        # reversed entries 3-s-1 and 3-s
        corner_faces = tuple(
            tuple(cf[(2 - s) % 4] for s in range(4)) for cf in self.corner_faces
        )
        return CombinatorialPolyhedron(
            self.n_vertices, self.edges, faces, face_edges, self.colors,
            rotations, corner_faces, not self.mirrored,
        )

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)

    @property
    def is_four_valent(self) -> bool:
        degree = [0] * self.n_vertices
        for a, b in self.edges.values():
            degree[a] += 1
            degree[b] += 1
        return all(k == 4 for k in degree)

    @property
    def has_bigons(self) -> bool:
        return any(len(f) == 2 for f in self.faces)

    def edge_faces(self) -> dict[int, tuple[int, int]]:
        out: dict[int, list[int]] = {}
        for i, labels in enumerate(self.face_edges):
            for label in labels:
                out.setdefault(label, []).append(i)
        return {label: tuple(fs) for label, fs in out.items()}

    def coloring_is_proper(self) -> bool:
        return all(self.colors[a] != self.colors[b] for a, b in self.edge_faces().values())


@dataclass(frozen=True)
class Gluing:
    """Face pairing between the two checkerboard polyhedra.

    Face ``i`` of ``plus`` is glued to face ``pairing[i]`` of ``minus`` so
    that edge ``j`` of the face (in ``plus`` order) meets edge
    ``j + offsets[i]``.
    """

    plus: CombinatorialPolyhedron
    minus: CombinatorialPolyhedron
    pairing: tuple[int, ...]
    offsets: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pairing) != list(range(len(self.plus.faces))):
            raise ValueError("face pairing is not a bijection")
        if any(o not in (1, -1) for o in self.offsets):
            raise ValueError("gluing offsets must be one edge either way")


def checkerboard_polyhedra(d: Diagram) -> tuple[CombinatorialPolyhedron, CombinatorialPolyhedron, Gluing]:
    report = analyze(d)
    if not (report.alternating and report.reduced and not report.split):
        raise ValueError("checkerboard polyhedra need a reduced, alternating, connected diagram")
    plus = CombinatorialPolyhedron.from_diagram(d)
    minus = plus.mirror()
    offsets = tuple(1 if c == BLACK else -1 for c in plus.colors)
    return plus, minus, Gluing(plus, minus, tuple(range(len(plus.faces))), offsets)


def edge_classes(g: Gluing) -> list[tuple[tuple[str, int], ...]]:
    """Orbits of polyhedron edges ``("+", label)`` / ``("-", label)`` under the gluing."""
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, labels in enumerate(g.plus.face_edges):
        k = len(labels)
        target = g.minus.face_edges[g.pairing[i]]
        if sorted(target) != sorted(labels):
            raise ValueError(f"paired faces {i} and {g.pairing[i]} have different edges")
        for j, label in enumerate(labels):
            a, b = find(("+", label)), find(("-", labels[(j + g.offsets[i]) % k]))
            if a != b:
                parent[a] = b
    classes: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for x in list(parent):
        classes.setdefault(find(x), []).append(x)
    return sorted(tuple(sorted(c)) for c in classes.values())


# ---------------------------------------------------------------------------
# geometric realisation


@dataclass(frozen=True, eq=False)
class IdealPolyhedron:
    """Ideal vertices on the unit sphere (Klein model) with their combinatorics."""

    vertices: np.ndarray
    combinatorics: CombinatorialPolyhedron

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.shape != (self.combinatorics.n_vertices, 3):
            raise ValueError(f"expected {self.combinatorics.n_vertices} points in R^3")
        if np.abs(np.linalg.norm(v, axis=1) - 1.0).max() > 1e-12:
            raise ValueError("ideal vertices must lie on the unit sphere")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @cached_property
    def boundary_points(self):
        return [klein_to_boundary(x) for x in self.vertices]

    @cached_property
    def face_planes(self) -> list[tuple[np.ndarray, float]]:
        """Outward unit normal ``u`` and offset ``d`` of each face plane ``x . u = d``."""
        planes = []
        for i, face in enumerate(self.combinatorics.faces):
            pts = self.vertices[list(face)]
            centre = pts.mean(axis=0)
            u = np.linalg.svd(pts - centre)[2][-1]
            d = float(u @ centre)
            if (self.vertices @ u - d).sum() > 0:
                u, d = -u, -d
            if np.abs(pts @ u - d).max() > COPLANAR_TOL:
                raise NonConvexError(f"face {i} is not planar")
            if (self.vertices @ u - d).max() > COPLANAR_TOL:
                raise NonConvexError(f"polyhedron is not convex at face {i}")
            if abs(d) >= 1.0:
                raise NonConvexError(f"plane of face {i} misses the ball")
            planes.append((u, d))
        return planes

    def mirror(self) -> "IdealPolyhedron":
        """Reflection in the plane z = 0."""
        return IdealPolyhedron(self.vertices * np.array([1.0, 1.0, -1.0]), self.combinatorics.mirror())


def inscribe_solid(solid: Solid) -> IdealPolyhedron:
    combinatorics = CombinatorialPolyhedron.from_diagram(reference_diagram(solid))
    return IdealPolyhedron(solid_vertices(solid), combinatorics)


def _minkowski_normal(u: np.ndarray, d: float) -> np.ndarray:
    return np.append(u, d) / math.sqrt(1.0 - d * d)


def dihedral_angles(p: IdealPolyhedron) -> dict[int, float]:
    """Interior dihedral angle at each edge, keyed by edge label."""
    planes = p.face_planes
    out = {}
    for label, (f1, f2) in sorted(p.combinatorics.edge_faces().items()):
        e1 = _minkowski_normal(*planes[f1])
        e2 = _minkowski_normal(*planes[f2])
        inner = e1[:3] @ e2[:3] - e1[3] * e2[3]
        out[label] = math.acos(max(-1.0, min(1.0, -inner)))
    return out


def face_regularity_residuals(p: IdealPolyhedron) -> list[float]:
    """Cross-ratio regularity residual of each face.

    Each face's boundary points are normalised by the Möbius map taking its
    first three vertices to ``0, 1, inf``, which puts the face circle on the
    real line.
    """
    bp = p.boundary_points
    out = []
    for face in p.combinatorics.faces:
        pts = [bp[v] for v in face]
        m = mobius_from_triple(pts[0], pts[1], pts[2])
        out.append(regularity_residual([m(z) for z in pts]))
    return out


def verify_face_regularity(p: IdealPolyhedron, tol: float = 1e-9) -> bool:
    return all(r <= tol for r in face_regularity_residuals(p))


@dataclass(frozen=True)
class CuspSection:
    """Horosphere cross-section at one ideal vertex.

    ``sides[s]`` runs along the face at corner ``s`` of the vertex and
    ``angles[s]`` is the interior angle where sides ``s - 1`` and ``s`` meet.
    """

    vertex: int
    sides: tuple[float, float, float, float]
    angles: tuple[float, float, float, float]

    def is_rectangle(self, tol: float = 1e-9) -> bool:
        right = all(abs(a - math.pi / 2) <= tol for a in self.angles)
        s = self.sides
        return right and abs(s[0] - s[2]) <= tol and abs(s[1] - s[3]) <= tol


def _line(points: list[complex]) -> tuple[complex, complex]:
    pts = np.array(points)
    centre = pts.mean()
    xy = np.column_stack([(pts - centre).real, (pts - centre).imag])
    direction = np.linalg.svd(xy)[2][0]
    u = complex(direction[0], direction[1])
    residual = np.abs(((pts - centre) * u.conjugate()).imag).max()
    if residual > COPLANAR_TOL * max(1.0, np.abs(pts).max()):
        raise NonConvexError("face is not planar in the cusp view")
    return centre, u


def _intersect(l1: tuple[complex, complex], l2: tuple[complex, complex]) -> complex:
    (p, u), (q, w) = l1, l2
    # p + t u = q + s w
    a = np.array([[u.real, -w.real], [u.imag, -w.imag]])
    t, _ = np.linalg.solve(a, [(q - p).real, (q - p).imag])
    return p + t * u


def _interior_angle(prev: complex, here: complex, nxt: complex) -> float:
    a, b = prev - here, nxt - here
    return abs(math.atan2((a.conjugate() * b).imag, (a.conjugate() * b).real))


def cusp_sections(p: IdealPolyhedron) -> list[CuspSection]:
    """Cusp quadrilateral at every ideal vertex, seen from upper half-space.

    The vertex is sent to infinity and one neighbour to 0, so the four faces
    at the vertex become vertical half-planes over lines in C; the horizontal
    horosphere at height 1 meets them in a Euclidean quadrilateral.
    """
    comb = p.combinatorics
    bp = p.boundary_points
    out = []
    for v in range(comb.n_vertices):
        nbrs = []
        for label in comb.rotations[v]:
            a, b = comb.edges[label]
            nbrs.append(b if a == v else a)
        m = mobius_from_triple(bp[nbrs[0]], bp[nbrs[1]], bp[v])
        lines = []
        for s in range(4):
            face = comb.faces[comb.corner_faces[v][s]]
            lines.append(_line([m(bp[w]).value for w in face if w != v]))
        corners = [_intersect(lines[s - 1], lines[s]) for s in range(4)]
        sides = tuple(float(abs(corners[(s + 1) % 4] - corners[s])) for s in range(4))
        angles = tuple(
            _interior_angle(corners[s - 1], corners[s], corners[(s + 1) % 4]) for s in range(4)
        )
        out.append(CuspSection(v, sides, angles))
    return out


def _coning_tetrahedra(p: IdealPolyhedron, apex: int, fan_root: int):
    for face in p.combinatorics.faces:
        if apex in face:
            continue
        k = len(face)
        f = face[fan_root % k :] + face[: fan_root % k]
        for j in range(1, k - 1):
            yield apex, f[0], f[j], f[j + 1]


def polyhedron_volume(p: IdealPolyhedron, apex: int = 0, fan_root: int = 0) -> float:
    """Hyperbolic volume by coning every face not at ``apex`` from ``apex``.

    Faces are fanned from their vertex at position ``fan_root``.  Shape
    parameters are cross ratios of the boundary points; all tetrahedra of a
    convex polyhedron share one orientation, so the signed sum is flipped
    when that orientation is negative.
    """
    bp = p.boundary_points
    vols = []
    for tet in _coning_tetrahedra(p, apex, fan_root):
        z = cross_ratio(*(bp[i] for i in tet))
        try:
            vols.append(ideal_tet_volume(TetShape(z.value)))
        except DegenerateTetrahedronError:
            raise ValueError(f"degenerate tetrahedron {tet}: coplanar ideal vertices") from None
    if not vols:
        raise ValueError("nothing to cone: every face meets the apex")
    signs = {v > 0 for v in vols}
    if len(signs) != 1:
        raise NonConvexError("coning tetrahedra have mixed orientations")
    total = sum(vols)
    return -total if total < 0 else total


def right_angled_volume(solid: Solid) -> float:
    """Twice the checkerboard polyhedron's volume: the link's right-angled volume."""
    return 2.0 * polyhedron_volume(inscribe_solid(solid))


# ---------------------------------------------------------------------------
# report


@dataclass
class SolidReport:
    solid: str
    vertices: list[list[float]]
    dihedral_angles: dict[int, float]
    face_residuals: list[float]
    cusps: list[dict]
    edge_class_sizes: list[int]
    volume: float
    volume_alt: float
    vol_perp: float
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["dihedral_angles"] = {str(k): v for k, v in self.dihedral_angles.items()}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SolidReport":
        data = dict(data)
        data["dihedral_angles"] = {int(k): v for k, v in data["dihedral_angles"].items()}
        return cls(**data)


def realize_solid(solid: Solid, tol: float = 1e-9) -> SolidReport:
    """Realise one solid and run every check on it."""
    p = inscribe_solid(solid)
    angles = dihedral_angles(p)
    residuals = face_regularity_residuals(p)
    cusps = cusp_sections(p)
    _, _, gluing = checkerboard_polyhedra(reference_diagram(solid))
    sizes = sorted(len(c) for c in edge_classes(gluing))
    vol = polyhedron_volume(p)
    # second coning: opposite apex and shifted fan roots
    far = int(np.argmin(p.vertices @ p.vertices[0]))
    vol_alt = polyhedron_volume(p, apex=far, fan_root=1)
    checks = {
        "right_angles": all(abs(a - math.pi / 2) <= tol for a in angles.values()),
        "regular_faces": all(r <= tol for r in residuals),
        "cusp_rectangles": all(c.is_rectangle(tol) for c in cusps),
        "edge_classes": sizes == [4] * solid.vertex_count,
        "volume_consistent": abs(vol - vol_alt) <= 1e-8,
    }
    return SolidReport(
        solid=solid.label,
        vertices=p.vertices.tolist(),
        dihedral_angles=angles,
        face_residuals=residuals,
        cusps=[{"vertex": c.vertex, "sides": list(c.sides), "angles": list(c.angles)} for c in cusps],
        edge_class_sizes=sizes,
        volume=vol,
        volume_alt=vol_alt,
        vol_perp=2.0 * vol,
        checks=checks,
    )
