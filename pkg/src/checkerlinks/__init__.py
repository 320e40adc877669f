"""Alternating links whose two checkerboard surfaces are totally geodesic.

Combinatorial analysis of alternating diagrams, classification against the
octahedral, cuboctahedral and icosidodecahedral links, and numerical
right-angled realisation of their checkerboard polyhedra.
"""

from .classify import Verdict, canonical_code, classify, reference_diagram, weaving_census, weaving_diagram
from .diagram import Diagram, analyze, emit_pd, parse_pd, trace_faces
from .realize import inscribe_solid, polyhedron_volume, realize_solid, right_angled_volume
from .solids import Solid

__all__ = [
    "Diagram",
    "Solid",
    "Verdict",
    "analyze",
    "canonical_code",
    "classify",
    "emit_pd",
    "inscribe_solid",
    "parse_pd",
    "polyhedron_volume",
    "realize_solid",
    "reference_diagram",
    "right_angled_volume",
    "trace_faces",
    "weaving_census",
    "weaving_diagram",
]
