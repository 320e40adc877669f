import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from checkerlinks.hypgeom import (
    INF,
    DegenerateTetrahedronError,
    ExtendedComplex,
    IdealPolygon,
    MobiusMap,
    TetShape,
    cross_ratio,
    ideal_tet_volume,
    is_regular_polygon,
    klein_to_boundary,
    lobachevsky,
    mobius_from_triple,
    regular_ngon_target,
    regularity_residual,
)
from oracles import lobachevsky_quad, random_mobius_matrix

PHI = (1 + 5**0.5) / 2

finite = st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False)
angles = st.floats(min_value=-20, max_value=20, allow_nan=False)


def roots_of_unity(n, rotate=0.0):
    return [cmath.exp(1j * (2 * math.pi * k / n + rotate)) for k in range(n)]


# -- extended plane -------------------------------------------------------


def test_infinity_is_projective():
    assert INF.is_infinite
    assert ExtendedComplex(3.0, 0.0) == INF
    assert ExtendedComplex.of(complex("inf")) == INF
    assert ExtendedComplex(2, 4) == 0.5


def test_zero_zero_rejected():
    with pytest.raises(ValueError):
        ExtendedComplex(0, 0)


def test_cross_ratio_square():
    assert cross_ratio(1, 1j, -1, -1j) == 2
    assert cross_ratio(1, 1j, -1, -1j) == regular_ngon_target(4)


def test_cross_ratio_repeated_vertex_is_infinite():
    assert cross_ratio(0, 1, 3j, 0).is_infinite


def test_cross_ratio_needs_three_points():
    with pytest.raises(ValueError):
        cross_ratio(1, 1, 2, 2)


def test_cross_ratio_with_infinity():
    # (p - r)(q - s) / ((p - s)(q - r)) with p -> inf gives (q - s) / (q - r)
    assert abs(cross_ratio(INF, 2, 5, 7).value - (2 - 7) / (2 - 5)) < 1e-15


@settings(max_examples=100)
@given(st.lists(finite, min_size=4, max_size=4, unique=True), st.integers(0, 2**31))
def test_cross_ratio_mobius_invariant(pts, seed):
    if min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1 :]) < 1e-3:
        return
    m = MobiusMap(*random_mobius_matrix(random.Random(seed)))
    before = cross_ratio(*pts)
    after = cross_ratio(*(m(z) for z in pts))
    assert before.distance(after) <= 1e-10


# -- Möbius maps ----------------------------------------------------------


def test_triple_map_identity():
    assert mobius_from_triple(0, 1, INF).is_close(MobiusMap.identity())


@given(st.lists(finite, min_size=3, max_size=3, unique=True))
def test_triple_map_sends_to_standard(pts):
    if min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1 :]) < 1e-3:
        return
    m = mobius_from_triple(*pts)
    assert m(pts[0]).distance(0) < 1e-12
    assert m(pts[1]).distance(1) < 1e-12
    assert m(pts[2]).distance(INF) < 1e-12


def test_triple_map_rejects_coincident():
    with pytest.raises(ValueError):
        mobius_from_triple(1, 1, 2)


def test_mobius_inverse_and_composition():
    m = MobiusMap(1 + 1j, 2, -1, 3j)
    assert (m @ m.inverse()).is_close(MobiusMap.identity())
    z = 0.3 - 0.7j
    assert (m @ m)(z).distance(m(m(z))) < 1e-12


def test_mobius_singular():
    with pytest.raises(ValueError):
        MobiusMap(1, 2, 2, 4)


# -- regular polygons -----------------------------------------------------


def test_targets():
    assert regular_ngon_target(3).is_infinite
    assert regular_ngon_target(4) == 2
    assert abs(regular_ngon_target(5).value - PHI) < 1e-15
    with pytest.raises(ValueError):
        regular_ngon_target(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_roots_of_unity_are_regular(n):
    assert is_regular_polygon(roots_of_unity(n, rotate=0.37))


@pytest.mark.parametrize("n", range(3, 13))
def test_mobius_image_of_regular_is_regular(n):
    m = MobiusMap(2 - 1j, 0.5, 1j, 1.5)
    assert is_regular_polygon([m(z) for z in roots_of_unity(n)])


def test_generic_quadrilateral_is_not_regular():
    assert not is_regular_polygon([0, 1, 2 + 1j, 4])


def test_every_triangle_is_regular():
    assert is_regular_polygon([0, 1, 5 + 2j])
    assert is_regular_polygon([INF, -3, 7j])


@pytest.mark.parametrize("n", [4, 5, 6, 8])
def test_perturbed_polygon_fails(n):
    pts = roots_of_unity(n)
    pts[1] *= cmath.exp(1e-3j)
    assert regularity_residual(pts) > 1e-9
    assert not is_regular_polygon(pts)


def test_polygon_rejects_repeats():
    with pytest.raises(ValueError):
        IdealPolygon((1, 1j, 1))


# -- Klein model ----------------------------------------------------------


def test_klein_to_boundary_fixed_points():
    assert klein_to_boundary((0, 0, 1)).is_infinite
    assert klein_to_boundary((0, 0, -1)) == 0
    assert klein_to_boundary((1, 0, 0)) == 1


def test_klein_to_boundary_rejects_interior():
    with pytest.raises(ValueError):
        klein_to_boundary((0.5, 0, 0))


@given(st.floats(0, math.pi), st.floats(0, 2 * math.pi))
def test_klein_to_boundary_both_branches_agree(theta, phi):
    v = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    x, y, z = v
    w = klein_to_boundary(v)
    if z < 0.999:
        assert w.distance(complex(x, y) / (1 - z)) < 1e-12


# -- Lobachevsky and volumes ---------------------------------------------


def test_lobachevsky_special_values():
    assert lobachevsky(0) == 0
    assert abs(lobachevsky(math.pi / 2)) < 1e-15
    assert abs(lobachevsky(math.pi / 6) - 0.5074708) < 1e-7
    assert abs(lobachevsky(math.pi / 6) - lobachevsky_quad(math.pi / 6)) < 1e-12


@given(angles)
def test_lobachevsky_periodic_and_odd(t):
    assert abs(lobachevsky(t + math.pi) - lobachevsky(t)) < 1e-12
    assert abs(lobachevsky(-t) + lobachevsky(t)) < 1e-15


def test_lobachevsky_matches_quadrature():
    rng = np.random.default_rng(0)
    for t in rng.uniform(-7, 7, size=30):
        assert abs(lobachevsky(t) - lobachevsky_quad(t)) < 1e-10


def test_lobachevsky_duplication():
    # Lambda(2t) = 2 (Lambda(t) + Lambda(t + pi/2))
    for t in np.linspace(0.05, 3.0, 25):
        lhs = lobachevsky(2 * t)
        rhs = 2 * (lobachevsky(t) + lobachevsky(t + math.pi / 2))
        assert abs(lhs - rhs) < 1e-13


def test_regular_tetrahedron_volume():
    v = ideal_tet_volume(cmath.exp(1j * math.pi / 3))
    assert abs(v - 1.0149416) < 1e-7
    assert abs(v - 3 * lobachevsky_quad(math.pi / 3)) < 1e-12


def test_conjugate_shape_negates_volume():
    z = 0.3 + 1.1j
    assert abs(ideal_tet_volume(z) + ideal_tet_volume(z.conjugate())) < 1e-15


@given(st.complex_numbers(max_magnitude=20, allow_nan=False, allow_infinity=False))
def test_shape_three_cycle(z):
    if abs(z.imag) < 1e-3 or abs(z) < 1e-3 or abs(1 - z) < 1e-3:
        return
    s = TetShape(z)
    vols = [ideal_tet_volume(s), ideal_tet_volume(s.cycled()), ideal_tet_volume(s.cycled().cycled())]
    assert max(vols) - min(vols) <= 1e-12
    assert (vols[0] > 0) == (z.imag > 0)


def test_tet_angles_sum_to_pi():
    assert abs(sum(TetShape(0.2 + 0.9j).dihedral_angles()) - math.pi) < 1e-14


def test_real_shape_is_degenerate():
    with pytest.raises(DegenerateTetrahedronError):
        TetShape(0.5)
