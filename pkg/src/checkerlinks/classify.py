"""Which alternating diagrams have both checkerboard surfaces totally geodesic.

Answer: exactly the alternating diagrams over the 1-skeleta of the
octahedron, cuboctahedron and icosidodecahedron.  ``classify`` checks the
hyperbolicity prerequisites (prime, reduced, alternating, non-split, not a
(2,q)-torus link), then the absence of 2-gons, then compares the projection
graph with the three reference graphs up to sphere homeomorphism.
"""

from __future__ import annotations

import csv
import io
import json
import struct
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagram import (
    Diagram,
    RotationSystem,
    alternating_from_graph,
    analyze,
    checkerboard_color,
)
from .solids import Solid, solid_rotation_system

__all__ = [
    "BOTH",
    "NOT_BOTH",
    "PREREQUISITE_FAILED",
    "CanonicalCode",
    "CensusRow",
    "Solid",
    "Verdict",
    "canonical_code",
    "census_to_csv",
    "census_to_json",
    "classify",
    "face_equation_solutions",
    "opposite_pairs_check",
    "reference_diagram",
    "weaving_census",
    "weaving_diagram",
]

BOTH = "BothTotallyGeodesic"
NOT_BOTH = "NotBoth"
PREREQUISITE_FAILED = "PrerequisiteFailed"


def face_equation_solutions(n_max: int = 100) -> list[tuple[int, int]]:
    """Integer pairs ``(n, V)`` with ``2 = V (2/n - 1/3)``, ``3 <= n <= n_max``."""
    out = []
    for n in range(3, n_max + 1):
        coef = Fraction(2, n) - Fraction(1, 3)
        if coef <= 0:
            continue
        v = 2 / coef
        if v.denominator == 1:
            out.append((n, int(v)))
    return out


# ---------------------------------------------------------------------------
# canonical form of embedded graphs


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes

    def __str__(self) -> str:
        return self.code.hex()


def _bfs_code(rots, alpha, start, direction: int) -> list[int] | None:
    n = len(rots)
    number = {start[0]: 0}
    first = {start[0]: start[1]}
    order = [start[0]]
    code = []
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for k in range(4):
            s = (first[v] + direction * k) % 4
            w, j = alpha[(v, s)]
            if w not in number:
                number[w] = len(order)
                first[w] = j
                order.append(w)
            code.append(number[w])
            code.append((direction * (j - first[w])) % 4)
    if len(order) != n:
        return None
    return code


def canonical_code(g: Diagram | RotationSystem) -> CanonicalCode:
    """Canonical form of a connected 4-valent sphere graph, up to reflection.

    Every dart is tried as the root of a breadth-first numbering, with both
    rotation directions; the lexicographically smallest code wins.
    """
    if isinstance(g, Diagram):
        rots, alpha = g.quads, g.alpha
    else:
        rots, alpha = g.rotations, g.alpha
    best: list[int] | None = None
    for v in range(len(rots)):
        for s in range(4):
            for direction in (1, -1):
                code = _bfs_code(rots, alpha, (v, s), direction)
                if code is None:
                    raise ValueError("canonical_code needs a connected graph")
                if best is None or code < best:
                    best = code
    payload = [len(rots)] + best
    return CanonicalCode(struct.pack(f">{len(payload)}H", *payload))


@lru_cache(maxsize=None)
def reference_diagram(solid: Solid) -> Diagram:
    """Alternating diagram over the solid's 1-skeleton; crossing i is vertex i."""
    return alternating_from_graph(solid_rotation_system(solid))


@lru_cache(maxsize=None)
def _reference_code(solid: Solid) -> CanonicalCode:
    return canonical_code(reference_diagram(solid))


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    outcome: str
    reason: str
    solid: Solid | None = None

    def __str__(self) -> str:
        return f"{self.outcome}({self.reason})"

    @property
    def both(self) -> bool:
        return self.outcome == BOTH

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "reason": self.reason,
            "solid": self.solid.label if self.solid else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        solid = Solid.parse(data["solid"]) if data.get("solid") else None
        return cls(data["outcome"], data["reason"], solid)


def classify(d: Diagram) -> Verdict:
    """Verdict for one diagram; the first failed check, in a fixed order, is reported."""
    report = analyze(d)
    if not report.alternating:
        return Verdict(PREREQUISITE_FAILED, "not alternating")
    if not report.reduced:
        return Verdict(PREREQUISITE_FAILED, "not reduced")
    if report.split:
        return Verdict(PREREQUISITE_FAILED, "split diagram")
    if not report.prime:
        return Verdict(PREREQUISITE_FAILED, "not prime")
    if report.torus2q:
        return Verdict(PREREQUISITE_FAILED, "(2,q)-torus link")
    if report.has_bigon:
        return Verdict(NOT_BOTH, "bigon present")
    for solid in Solid:
        if d.n == solid.vertex_count and canonical_code(d) == _reference_code(solid):
            return Verdict(BOTH, solid.label, solid)
    return Verdict(NOT_BOTH, "graph not among the three")


def opposite_pairs_check(d: Diagram) -> bool:
    """True iff faces meeting at a crossing without sharing an edge have equal size.

    Such faces are the two regions at opposite corners of a crossing, which
    always share a colour.
    """
    coloring = checkerboard_color(d)
    faces = coloring.faces
    for c in range(d.n):
        for s in (0, 1):
            # the face at corner (c, s) holds dart (c, s + 1)
            f1 = coloring.face_of((c, (s + 1) % 4))
            f2 = coloring.face_of((c, (s + 3) % 4))
            if f1 != f2 and faces[f1].size != faces[f2].size:
                return False
    return True


# ---------------------------------------------------------------------------
# weaving knots


def _closed_braid_graph(strands: int, word: list[int]) -> RotationSystem:
    # crossing slots counterclockwise: SW, SE, NE, NW with the braid running
    # upwards; the strand entering at SW leaves at NE
    events: dict[int, list[tuple[int, int, int]]] = {j: [] for j in range(1, strands + 1)}
    for k, i in enumerate(word):
        events[i].append((k, 0, 3))
        events[i + 1].append((k, 1, 2))
    slots: list[list[int]] = [[0, 0, 0, 0] for _ in word]
    label = 0
    for j in range(1, strands + 1):
        seq = events[j]
        for t, (k, _, out_slot) in enumerate(seq):
            k2, in_slot, _ = seq[(t + 1) % len(seq)]
            label += 1
            slots[k][out_slot] = label
            slots[k2][in_slot] = label
    return RotationSystem(tuple(tuple(q) for q in slots))


def weaving_diagram(p: int, q: int) -> Diagram:
    """W(p, q): the alternating closure of the braid (s_1 ... s_{p-1})^q."""
    if p < 3 or q < 2:
        raise ValueError("weaving knots need p >= 3 and q >= 2")
    word = list(range(1, p)) * q
    return alternating_from_graph(_closed_braid_graph(p, word))


@dataclass(frozen=True)
class CensusRow:
    p: int
    q: int
    crossings: int
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "crossings": self.crossings,
            "verdict": self.verdict.outcome,
            "reason": self.verdict.reason,
            "solid": self.verdict.solid.label if self.verdict.solid else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CensusRow":
        return cls(data["p"], data["q"], data["crossings"], Verdict.from_dict(
            {"outcome": data["verdict"], "reason": data["reason"], "solid": data.get("solid")}
        ))


def weaving_census(p_max: int, q_max: int) -> list[CensusRow]:
    if p_max < 3 or q_max < 2:
        raise ValueError("census needs p_max >= 3 and q_max >= 2")
    rows = []
    for p in range(3, p_max + 1):
        for q in range(2, q_max + 1):
            d = weaving_diagram(p, q)
            rows.append(CensusRow(p, q, d.n, classify(d)))
    return rows


def census_to_csv(rows: list[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "q", "crossings", "verdict", "reason"])
    for r in rows:
        writer.writerow([r.p, r.q, r.crossings, r.verdict.outcome, r.verdict.reason])
    return buf.getvalue()


def census_to_json(rows: list[CensusRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2)
