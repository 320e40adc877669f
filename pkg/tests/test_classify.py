import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from checkerlinks.classify import (
    BOTH,
    NOT_BOTH,
    PREREQUISITE_FAILED,
    CensusRow,
    Verdict,
    canonical_code,
    census_to_csv,
    census_to_json,
    classify,
    face_equation_solutions,
    opposite_pairs_check,
    reference_diagram,
    weaving_census,
    weaving_diagram,
)
from checkerlinks.diagram import analyze, parse_pd, random_alternating_diagram
from checkerlinks.solids import Solid, solid_rotation_system
from oracles import TREFOIL_PD, mirrored_graph, relabeled, relabeled_graph


def test_face_equation():
    sols = face_equation_solutions()
    assert sols == [(3, 6), (4, 12), (5, 30)]
    assert all(n != 6 for n, _ in sols)


def test_face_equation_brute_force():
    # V (6 - n) = 6 n in integers, written without fractions
    brute = [(n, 6 * n // (6 - n)) for n in range(3, 101) if n < 6 and (6 * n) % (6 - n) == 0]
    assert brute == face_equation_solutions(100)


# -- canonical codes ------------------------------------------------------


@pytest.mark.parametrize("solid", list(Solid))
def test_canonical_code_relabeling(solid):
    g = solid_rotation_system(solid)
    code = canonical_code(g)
    rng = random.Random(solid.vertex_count)
    trials = 100 if solid.vertex_count < 30 else 20
    for _ in range(trials):
        assert canonical_code(relabeled_graph(g, rng)) == code


@pytest.mark.parametrize("solid", list(Solid))
def test_canonical_code_mirror(solid):
    g = solid_rotation_system(solid)
    assert canonical_code(mirrored_graph(g)) == canonical_code(g)


def test_canonical_code_distinguishes():
    assert canonical_code(solid_rotation_system(Solid.OCTAHEDRON)) != canonical_code(
        solid_rotation_system(Solid.CUBOCTAHEDRON)
    )


def test_canonical_code_of_diagram_matches_graph():
    d = reference_diagram(Solid.CUBOCTAHEDRON)
    assert canonical_code(d) == canonical_code(solid_rotation_system(Solid.CUBOCTAHEDRON))


@settings(max_examples=40)
@given(n=st.integers(3, 14), seed=st.integers(0, 2**31))
def test_canonical_code_random_relabeling(n, seed):
    d = random_alternating_diagram(n, seed)
    rng = random.Random(seed)
    assert canonical_code(relabeled(d, rng)) == canonical_code(d)
    assert canonical_code(relabeled_graph(d.rotation_system(), rng)) == canonical_code(d)


def test_canonical_code_rejects_disconnected():
    d = parse_pd(TREFOIL_PD + " X(7,10,8,11) X(9,12,10,7) X(11,8,12,9)")
    with pytest.raises(ValueError):
        canonical_code(d)


# -- verdicts -------------------------------------------------------------


@pytest.mark.parametrize("solid", list(Solid))
def test_reference_is_both(solid):
    v = classify(reference_diagram(solid))
    assert v == Verdict(BOTH, solid.label, solid)
    assert str(v) == f"BothTotallyGeodesic({solid.label})"


def test_relabeled_reference_is_both():
    rng = random.Random(3)
    d = relabeled(reference_diagram(Solid.ICOSIDODECAHEDRON), rng)
    assert classify(d).solid is Solid.ICOSIDODECAHEDRON


def test_trefoil_is_torus():
    v = classify(parse_pd(TREFOIL_PD))
    assert v.outcome == PREREQUISITE_FAILED
    assert v.reason == "(2,q)-torus link"


def test_prerequisite_order():
    assert classify(parse_pd("X(1,4,2,5) X(3,6,4,1) X(2,6,3,5)")).reason == "not alternating"
    assert classify(parse_pd("X(1,1,2,2)")).reason == "not reduced"
    split = parse_pd(TREFOIL_PD + " X(7,10,8,11) X(9,12,10,7) X(11,8,12,9)")
    assert classify(split).reason == "split diagram"
    cs = parse_pd("X(7,4,2,5) X(3,6,4,1) X(5,2,6,3) X(1,10,8,11) X(9,12,10,7) X(11,8,12,9)")
    assert classify(cs).reason == "not prime"


def test_verdict_roundtrip():
    for v in (classify(reference_diagram(Solid.OCTAHEDRON)), Verdict(NOT_BOTH, "bigon present")):
        assert Verdict.from_dict(json.loads(json.dumps(v.to_dict()))) == v


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 20), seed=st.integers(0, 2**31))
def test_bigon_never_both(n, seed):
    d = random_alternating_diagram(n, seed)
    if analyze(d).has_bigon:
        assert classify(d).outcome != BOTH


# -- weaving --------------------------------------------------------------


def test_weaving_crossing_counts():
    assert weaving_diagram(3, 2).n == 4
    assert weaving_diagram(3, 3).n == 6
    assert weaving_diagram(4, 4).n == 12
    assert weaving_diagram(5, 7).n == 28


def test_weaving_matches_solids():
    assert canonical_code(weaving_diagram(3, 3)) == canonical_code(reference_diagram(Solid.OCTAHEDRON))
    assert canonical_code(weaving_diagram(4, 4)) == canonical_code(
        reference_diagram(Solid.CUBOCTAHEDRON)
    )


def test_weaving_verdicts():
    assert str(classify(weaving_diagram(3, 3))) == "BothTotallyGeodesic(Octahedron)"
    assert classify(weaving_diagram(3, 4)) == Verdict(NOT_BOTH, "graph not among the three")
    assert classify(weaving_diagram(3, 2)).outcome != BOTH


def test_weaving_range():
    with pytest.raises(ValueError):
        weaving_diagram(2, 5)
    with pytest.raises(ValueError):
        weaving_diagram(4, 1)


def test_weaving_is_alternating_and_reduced():
    for p in range(3, 7):
        for q in range(2, 7):
            r = analyze(weaving_diagram(p, q))
            assert r.alternating and r.reduced and not r.split


def test_census():
    rows = weaving_census(8, 8)
    assert [(r.p, r.q) for r in rows] == [(p, q) for p in range(3, 9) for q in range(2, 9)]
    both = [(r.p, r.q) for r in rows if r.verdict.both]
    assert both == [(3, 3), (4, 4)]
    for r in rows:
        assert r.crossings == (r.p - 1) * r.q
        if r.crossings not in (6, 12, 30):
            assert r.verdict.outcome in (NOT_BOTH, PREREQUISITE_FAILED)


def test_census_single_row():
    rows = weaving_census(3, 2)
    assert len(rows) == 1 and not rows[0].verdict.both


def test_census_serialisation():
    rows = weaving_census(4, 4)
    csv_text = census_to_csv(rows)
    assert csv_text.splitlines()[0] == "p,q,crossings,verdict,reason"
    assert "3,3,6,BothTotallyGeodesic,Octahedron" in csv_text
    back = [CensusRow.from_dict(d) for d in json.loads(census_to_json(rows))]
    assert back == rows


# -- opposite faces -------------------------------------------------------


@pytest.mark.parametrize("solid", list(Solid))
def test_opposite_pairs_reference(solid):
    assert opposite_pairs_check(reference_diagram(solid))


def test_opposite_pairs_weaving_is_computable():
    assert isinstance(opposite_pairs_check(weaving_diagram(3, 5)), bool)
