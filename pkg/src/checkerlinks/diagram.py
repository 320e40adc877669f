"""Link diagrams as 4-valent planar rotation systems with over/under data.

A diagram is stored as a planar diagram (PD) code: one quadruple of edge
labels per crossing, listed counterclockwise starting at the incoming
under-strand.  Slots 0 and 2 of every quad therefore carry the under-strand
and slots 1 and 3 the over-strand.

Combinatorics is done on *darts* ``(crossing, slot)``.  Two permutations act
on darts:

* the rotation ``sigma(c, s) = (c, s + 1 mod 4)`` (counterclockwise turn),
* the edge involution ``alpha`` pairing the two ends of an edge label.

Faces of the projection are the orbits of ``sigma . alpha``; the dart
``(c, s + 1)`` of an orbit marks the corner of crossing ``c`` between slots
``s`` and ``s + 1``.  The outermost region is a face like any other.
"""

from __future__ import annotations

import math
import random
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

__all__ = [
    "BLACK",
    "WHITE",
    "Coloring",
    "Crossing",
    "Diagram",
    "DiagramReport",
    "Face",
    "PDParseError",
    "RotationSystem",
    "alternating_from_graph",
    "analyze",
    "antiprism_rotation_system",
    "checkerboard_color",
    "emit_pd",
    "parse_pd",
    "parse_pd_lines",
    "random_alternating_diagram",
    "trace_faces",
]

Dart = tuple[int, int]
Quad = tuple[int, int, int, int]

BLACK = "black"
WHITE = "white"

MAX_ATTEMPTS = 10_000

_TOKEN = re.compile(r"X\((\d+),(\d+),(\d+),(\d+)\)")


class PDParseError(ValueError):
    """Raised for malformed or inconsistent PD input.

    ``position`` is the 1-based index of the offending token, or ``None`` when
    the problem is global (empty input, failed planarity check).
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"token {position}: {message}"
        super().__init__(message)


# ---------------------------------------------------------------------------
# dart-level machinery shared by Diagram and RotationSystem


def _edge_ends(quads: Sequence[Sequence[int]]) -> dict[int, list[Dart]]:
    ends: dict[int, list[Dart]] = {}
    for c, quad in enumerate(quads):
        for s, label in enumerate(quad):
            ends.setdefault(label, []).append((c, s))
    return ends


def _involution(quads: Sequence[Sequence[int]]) -> dict[Dart, Dart]:
    alpha: dict[Dart, Dart] = {}
    for label, ends in _edge_ends(quads).items():
        if len(ends) != 2:
            raise ValueError(f"edge label {label} appears {len(ends)} times")
        d1, d2 = ends
        alpha[d1] = d2
        alpha[d2] = d1
    return alpha


def _face_orbits(n: int, alpha: dict[Dart, Dart]) -> list[tuple[Dart, ...]]:
    # darts are scanned in lexicographic order, so each orbit starts at its
    # smallest dart and the list is sorted by that dart
    seen: set[Dart] = set()
    faces = []
    for c in range(n):
        for s in range(4):
            d = (c, s)
            if d in seen:
                continue
            orbit = []
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                c2, s2 = alpha[d]
                d = (c2, (s2 + 1) % 4)
            faces.append(tuple(orbit))
    return faces


def _crossing_components(n: int, alpha: dict[Dart, Dart]) -> list[int]:
    """Connected-component id of every crossing in the projection graph."""
    comp = [-1] * n
    k = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        comp[start] = k
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for s in range(4):
                w = alpha[(c, s)][0]
                if comp[w] < 0:
                    comp[w] = k
                    queue.append(w)
        k += 1
    return comp


def _check_planar(n: int, alpha: dict[Dart, Dart], faces) -> None:
    # Euler's formula on each connected piece: V - E + F = 2 with E = 2V
    comp = _crossing_components(n, alpha)
    verts = Counter(comp)
    nfaces = Counter(comp[f[0][0]] for f in faces)
    for k, v in verts.items():
        chi = v - 2 * v + nfaces[k]
        if chi != 2:
            raise ValueError(
                f"rotation system is not planar: V - E + F = {chi} on a connected piece"
            )


def _strands(n: int, alpha: dict[Dart, Dart]) -> list[list[Dart]]:
    """Link components, each as the list of darts it leaves crossings through.

    A strand enters a crossing at slot ``s`` and leaves through ``s + 2``.
    """
    used: set[Dart] = set()
    comps = []
    for c in range(n):
        for s in range(4):
            if (c, s) in used:
                continue
            path = []
            d = (c, s)
            while d not in used:
                e = alpha[d]
                used.add(d)
                used.add(e)
                path.append(d)
                d = (e[0], (e[1] + 2) % 4)
            comps.append(path)
    return comps


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class Crossing:
    """Four edge labels, counterclockwise from the incoming under-strand."""

    quad: Quad

    def __post_init__(self):
        if len(self.quad) != 4:
            raise ValueError(f"a crossing has exactly 4 labels, got {len(self.quad)}")
        object.__setattr__(self, "quad", tuple(int(x) for x in self.quad))


@dataclass(frozen=True)
class Face:
    """A region of the projection, as a cyclic sequence of darts."""

    boundary: tuple[Dart, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)

    @property
    def crossings(self) -> tuple[int, ...]:
        """Crossings met along the boundary, in traversal order."""
        return tuple(c for c, _ in self.boundary)

    def corners(self) -> tuple[Dart, ...]:
        """Corners ``(c, s)``: the face sits between slots ``s`` and ``s+1`` of ``c``."""
        return tuple((c, (s - 1) % 4) for c, s in self.boundary)


@dataclass(frozen=True)
class RotationSystem:
    """A 4-valent graph embedded in the sphere.

    ``rotations[v]`` lists the edge labels at vertex ``v`` in counterclockwise
    order; the starting position is arbitrary.  No over/under information.
    """

    rotations: tuple[Quad, ...]

    def __post_init__(self):
        rots = tuple(tuple(int(x) for x in r) for r in self.rotations)
        for v, r in enumerate(rots):
            if len(r) != 4:
                raise ValueError(f"vertex {v} has degree {len(r)}, expected 4")
        object.__setattr__(self, "rotations", rots)
        alpha = _involution(rots)
        _check_planar(len(rots), alpha, _face_orbits(len(rots), alpha))

    @classmethod
    def from_embedding(cls, points, edges: Iterable[tuple[int, int]]) -> "RotationSystem":
        """Rotation system of a graph drawn on a convex surface around the origin.

        Neighbours of each vertex are sorted counterclockwise as seen from
        outside, i.e. around the position vector taken as outward normal.
        """
        pts = np.asarray(points, dtype=float)
        pts = pts / np.linalg.norm(pts, axis=1)[:, None]
        incident: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(pts))}
        for label, (a, b) in enumerate(edges, start=1):
            incident[a].append((label, b))
            incident[b].append((label, a))
        rotations = []
        for v, nbrs in incident.items():
            normal = pts[v]
            first = pts[nbrs[0][1]] - pts[v]
            e1 = first - normal * (first @ normal)
            e1 /= np.linalg.norm(e1)
            e2 = np.cross(normal, e1)

            def angle(item):
                w = pts[item[1]] - pts[v]
                return math.atan2(w @ e2, w @ e1) % (2 * math.pi)

            rotations.append(tuple(label for label, _ in sorted(nbrs, key=angle)))
        return cls(tuple(rotations))

    @property
    def n(self) -> int:
        return len(self.rotations)

    @cached_property
    def alpha(self) -> dict[Dart, Dart]:
        return _involution(self.rotations)


@dataclass(frozen=True)
class Diagram:
    """An oriented-PD link diagram.  Validated on construction."""

    crossings: tuple[Crossing, ...]

    def __post_init__(self):
        crossings = tuple(
            c if isinstance(c, Crossing) else Crossing(tuple(c)) for c in self.crossings
        )
        object.__setattr__(self, "crossings", crossings)
        _validate_quads([c.quad for c in crossings])

    @classmethod
    def from_quads(cls, quads: Iterable[Sequence[int]]) -> "Diagram":
        return cls(tuple(Crossing(tuple(q)) for q in quads))

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def quads(self) -> tuple[Quad, ...]:
        return tuple(c.quad for c in self.crossings)

    @cached_property
    def alpha(self) -> dict[Dart, Dart]:
        return _involution(self.quads)

    def rotation_system(self) -> RotationSystem:
        """The underlying projection graph, forgetting crossing information."""
        return RotationSystem(self.quads)

    def edge_darts(self) -> dict[int, tuple[Dart, Dart]]:
        return {label: tuple(ends) for label, ends in sorted(_edge_ends(self.quads).items())}

    def __str__(self) -> str:
        return emit_pd(self)


def _validate_quads(quads: Sequence[Quad], *, positions: bool = False) -> None:
    n = len(quads)
    if n == 0:
        raise PDParseError("empty diagram")
    counts: Counter[int] = Counter()
    first_seen: dict[int, int] = {}
    for i, quad in enumerate(quads):
        for label in quad:
            counts[label] += 1
            first_seen.setdefault(label, i + 1)
            if counts[label] > 2:
                raise PDParseError(
                    f"label {label} appears more than twice", i + 1 if positions else None
                )
    # Counter keeps first-appearance order
    once = [label for label, k in counts.items() if k == 1]
    if once:
        pos = first_seen[once[0]] if positions else None
        raise PDParseError(f"labels {','.join(map(str, once))} appear once", pos)
    for label in counts:
        if not 1 <= label <= 2 * n:
            pos = first_seen[label] if positions else None
            raise PDParseError(f"label {label} out of range 1..{2 * n}", pos)
    alpha = _involution(quads)
    try:
        _check_planar(n, alpha, _face_orbits(n, alpha))
    except ValueError as err:
        raise PDParseError(str(err)) from None


# ---------------------------------------------------------------------------
# PD text


def parse_pd(text: str) -> Diagram:
    """Parse whitespace-separated ``X(a,b,c,d)`` tokens into a Diagram."""
    tokens = text.split()
    if not tokens:
        raise PDParseError("empty diagram")
    quads = []
    for i, tok in enumerate(tokens, start=1):
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise PDParseError(f"malformed token {tok!r}", i)
        quads.append(tuple(int(g) for g in m.groups()))
    _validate_quads(quads, positions=True)
    return Diagram.from_quads(quads)


def parse_pd_lines(text: str) -> list[Diagram]:
    """One diagram per non-blank line; lines starting with ``#`` are comments."""
    diagrams = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            diagrams.append(parse_pd(line))
    return diagrams


def emit_pd(d: Diagram) -> str:
    return " ".join("X({},{},{},{})".format(*q) for q in d.quads)


# ---------------------------------------------------------------------------
# faces and colouring


def trace_faces(d: Diagram | RotationSystem) -> tuple[Face, ...]:
    """Faces ordered by their smallest dart; each boundary starts there."""
    return tuple(Face(orbit) for orbit in _face_orbits(d.n, d.alpha))


@dataclass(frozen=True)
class Coloring:
    faces: tuple[Face, ...]
    colors: tuple[str, ...]

    def color(self, face: Face | int) -> str:
        if isinstance(face, int):
            return self.colors[face]
        return self.colors[self.faces.index(face)]

    def face_of(self, dart: Dart) -> int:
        return self._dart_face[dart]

    def of_color(self, color: str) -> tuple[Face, ...]:
        return tuple(f for f, c in zip(self.faces, self.colors) if c == color)

    @cached_property
    def _dart_face(self) -> dict[Dart, int]:
        return {dart: i for i, f in enumerate(self.faces) for dart in f.boundary}


def _face_adjacency(faces: Sequence[Face], alpha: dict[Dart, Dart]) -> list[set[int]]:
    dart_face = {dart: i for i, f in enumerate(faces) for dart in f.boundary}
    adj: list[set[int]] = [set() for _ in faces]
    for dart, other in alpha.items():
        a, b = dart_face[dart], dart_face[other]
        adj[a].add(b)
        adj[b].add(a)
    return adj


def checkerboard_color(d: Diagram | RotationSystem) -> Coloring:
    """Proper 2-colouring of the regions.

    On every connected piece the face holding the piece's smallest dart is
    black; for a connected diagram that is the face of dart ``(0, 0)``.
    """
    faces = trace_faces(d)
    adj = _face_adjacency(faces, d.alpha)
    colors: list[str | None] = [None] * len(faces)
    for start in range(len(faces)):
        if colors[start] is not None:
            continue
        colors[start] = BLACK
        queue = deque([start])
        while queue:
            i = queue.popleft()
            flip = WHITE if colors[i] == BLACK else BLACK
            for j in adj[i]:
                if colors[j] is None:
                    colors[j] = flip
                    queue.append(j)
                elif colors[j] == colors[i]:
                    raise AssertionError("projection faces are not 2-colourable")
    return Coloring(faces, tuple(colors))


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class DiagramReport:
    alternating: bool
    reduced: bool
    split: bool
    prime: bool
    torus2q: bool
    components: int
    face_vector: dict[int, int] = field(hash=False)
    has_bigon: bool
    has_triangle: bool

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["face_vector"] = {str(k): v for k, v in sorted(self.face_vector.items())}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DiagramReport":
        data = dict(data)
        data["face_vector"] = {int(k): v for k, v in data["face_vector"].items()}
        return cls(**data)


def _is_alternating(d: Diagram) -> bool:
    # following a strand across an edge must switch between an under slot
    # (even) and an over slot (odd)
    return all((a[1] - b[1]) % 2 == 1 for a, b in d.edge_darts().values())


def _nugatory_crossings(d: Diagram | RotationSystem) -> set[int]:
    """Cut vertices of the projection graph with every edge subdivided.

    Subdividing makes a kink (loop edge) register as a cut vertex too.
    """
    g = nx.Graph()
    for c, quad in enumerate(d.rotations if isinstance(d, RotationSystem) else d.quads):
        g.add_node(("c", c))
        for label in quad:
            g.add_edge(("c", c), ("e", label))
    return {v[1] for v in nx.articulation_points(g) if v[0] == "c"}


def _nugatory_by_corners(d: Diagram | RotationSystem) -> set[int]:
    """Crossings met twice by a single region."""
    bad = set()
    for f in trace_faces(d):
        counts = Counter(f.crossings)
        bad.update(c for c, k in counts.items() if k > 1)
    return bad


def _edge_face_pairs(d: Diagram | RotationSystem) -> dict[int, frozenset[int]]:
    faces = trace_faces(d)
    dart_face = {dart: i for i, f in enumerate(faces) for dart in f.boundary}
    quads = d.rotations if isinstance(d, RotationSystem) else d.quads
    pairs = {}
    for label, (a, b) in sorted(_edge_ends(quads).items()):
        pairs[label] = frozenset((dart_face[a], dart_face[b]))
    return pairs


def _is_prime(d: Diagram | RotationSystem) -> bool:
    # 4-valent graphs have no bridges, so every 2-edge cut is minimal and is
    # dual to a 2-cycle: two edges separating the same pair of faces
    seen: set[frozenset[int]] = set()
    for pair in _edge_face_pairs(d).values():
        if pair in seen:
            return False
        seen.add(pair)
    return True


def _is_prime_exhaustive(d: Diagram | RotationSystem) -> bool:
    """Brute-force 2-edge-cut scan; slow reference for ``_is_prime``."""
    quads = d.rotations if isinstance(d, RotationSystem) else d.quads
    ends = sorted(_edge_ends(quads).items())
    labels = [label for label, _ in ends]
    for i, e1 in enumerate(labels):
        for e2 in labels[i + 1 :]:
            g = nx.MultiGraph()
            g.add_nodes_from(range(len(quads)))
            for label, ((a, _), (b, _)) in ends:
                if label not in (e1, e2):
                    g.add_edge(a, b)
            if not nx.is_connected(g):
                return False
    return True


def _is_torus2q(d: Diagram, faces: Sequence[Face]) -> bool:
    if d.n < 2:
        return False
    for c, quad in enumerate(d.quads):
        nbrs = {d.alpha[(c, s)][0] for s in range(4)}
        if c in nbrs or len(nbrs) > 2:
            return False
    bigons = sum(1 for f in faces if f.size == 2)
    return bigons >= len(faces) - 2


def analyze(d: Diagram) -> DiagramReport:
    faces = trace_faces(d)
    fv = dict(sorted(Counter(f.size for f in faces).items()))
    comp = _crossing_components(d.n, d.alpha)
    split = len(set(comp)) > 1
    return DiagramReport(
        alternating=_is_alternating(d),
        reduced=not _nugatory_crossings(d),
        split=split,
        prime=_is_prime(d),
        torus2q=not split and _is_torus2q(d, faces),
        components=len(_strands(d.n, d.alpha)),
        face_vector=fv,
        has_bigon=fv.get(2, 0) > 0,
        has_triangle=fv.get(3, 0) > 0,
    )


# ---------------------------------------------------------------------------
# construction


def alternating_from_graph(g: RotationSystem | Sequence[Sequence[int]]) -> Diagram:
    """Make the alternating diagram over a connected 4-valent planar graph.

    The alternation is unique up to a global mirror; the one returned has the
    strand entering vertex 0 at its first listed position passing under.
    Crossing ``i`` of the result is vertex ``i`` of ``g``; edges are
    relabelled ``1..2n`` in order along each component.
    """
    rs = g if isinstance(g, RotationSystem) else RotationSystem(tuple(map(tuple, g)))
    n = rs.n
    alpha = rs.alpha
    if len(set(_crossing_components(n, alpha))) != 1:
        raise ValueError("graph is not connected")

    # phase[v]: parity of the slots at v carrying the under-strand
    phase: list[int | None] = [None] * n
    phase[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in range(4):
            w, j = alpha[(v, i)]
            want = (phase[v] + i + j + 1) % 2
            if phase[w] is None:
                phase[w] = want
                queue.append(w)
            elif phase[w] != want:
                raise ValueError("graph admits no alternating crossing assignment")

    incoming: set[Dart] = set()
    labels: dict[Dart, int] = {}
    next_label = 1
    for v in range(n):
        for i in range(4):
            if (v, i) in labels:
                continue
            # orient this component so that (v, i) is an incoming end
            d = (v, (i + 2) % 4)
            while d not in labels:
                e = alpha[d]
                labels[d] = labels[e] = next_label
                next_label += 1
                incoming.add(e)
                d = (e[0], (e[1] + 2) % 4)

    quads = []
    for v in range(n):
        start = next(u for u in (phase[v], phase[v] + 2) if (v, u) in incoming)
        quads.append(tuple(labels[(v, (start + k) % 4)] for k in range(4)))
    return Diagram.from_quads(quads)


def antiprism_rotation_system(m: int) -> RotationSystem:
    """The m-antiprism: 2m vertices, 2m triangles and two m-gons."""
    if m < 3:
        raise ValueError("antiprism needs m >= 3")
    pts = []
    for k in range(m):
        t = 2 * math.pi * k / m
        pts.append((math.cos(t), math.sin(t), 0.6))
    for k in range(m):
        t = 2 * math.pi * (k + 0.5) / m
        pts.append((math.cos(t), math.sin(t), -0.6))
    edges = []
    for k in range(m):
        edges.append((k, (k + 1) % m))
        edges.append((m + k, m + (k + 1) % m))
        edges.append((k, m + k))
        edges.append((k, m + (k - 1) % m))
    return RotationSystem.from_embedding(pts, edges)


_TREFOIL = ((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3))


def _insert_crossing(rots: list[list[int]], rng: random.Random, bigon_free: bool) -> bool:
    """Grow the graph by one vertex placed inside a face.

    Two edges ``a->b`` and ``c->d`` on the boundary of one face are cut and
    their four ends joined to a new vertex.  Returns False when the random
    choice would make the new crossing nugatory (the caller retries).
    """
    n = len(rots)
    alpha = _involution(rots)
    faces = _face_orbits(n, alpha)
    dart_face = {dart: i for i, f in enumerate(faces) for dart in f}
    if bigon_free:
        candidates = [f for f in faces if len(f) >= 4]
    else:
        candidates = [f for f in faces if len(f) >= 2]
    face = rng.choice(candidates)
    k = len(face)
    while True:
        i, j = sorted(rng.sample(range(k), 2))
        if not bigon_free or (j - i not in (1, k - 1)):
            break
    x_i, x_j = face[i], face[j]
    y_i, y_j = alpha[x_i], alpha[x_j]
    if dart_face[y_i] == dart_face[y_j]:
        return False
    old1 = rots[x_i[0]][x_i[1]]
    old2 = rots[x_j[0]][x_j[1]]
    new1, new2 = 2 * n + 1, 2 * n + 2
    rots[y_i[0]][y_i[1]] = new1
    rots[y_j[0]][y_j[1]] = new2
    # the face lies to the right of its traversal, so a, b, c, d sit
    # clockwise around the new vertex
    rots.append([old1, new2, old2, new1])
    return True


def random_alternating_diagram(n: int, seed: int, *, bigon_free: bool = False) -> Diagram:
    """A reduced, connected, alternating diagram with ``n`` crossings.

    Grown from a seed diagram by repeatedly inserting a crossing into a
    face; insertions that would create a nugatory crossing are rejected.
    The default seed is the trefoil projection.  With ``bigon_free`` the
    seed is an antiprism (octahedron for ``n == 6``) and insertions only
    join non-adjacent edges of faces with at least 4 sides, so no 2-gon can
    appear; there is no such diagram with 7 crossings.
    """
    if n < 3:
        raise ValueError("need at least 3 crossings")
    if bigon_free and (n < 6 or n == 7):
        raise ValueError(f"no bigon-free reduced diagram with {n} crossings")
    rng = random.Random(seed)
    attempts = 0
    while attempts < MAX_ATTEMPTS:
        if bigon_free:
            m = 3 if n == 6 else rng.randint(4, n // 2)
            rots = [list(r) for r in antiprism_rotation_system(m).rotations]
        else:
            rots = [list(r) for r in _TREFOIL]
        while len(rots) < n and attempts < MAX_ATTEMPTS:
            if not _insert_crossing(rots, rng, bigon_free):
                attempts += 1
        graph = RotationSystem(tuple(map(tuple, rots)))
        if len(rots) == n and not _nugatory_crossings(graph):
            return alternating_from_graph(graph)
        attempts += 1
    raise RuntimeError(f"no reduced diagram after {MAX_ATTEMPTS} attempts")
