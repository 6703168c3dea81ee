import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull
from scipy.stats import ortho_group

from isodiam import bodies
from isodiam.errors import (DegenerateInput, OriginNotInterior,
                            ParamOutOfRange, RankDeficientBasis, ShapeMismatch)
from isodiam.polytope import (LinearMap, build_polytope, diameter,
                              diametrical_directions, difference_body, iq,
                              iwq, min_width, polar, subspace_angle, support,
                              volume, width)

from conftest import FIXTURES, SYMMETRIC

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 4)


def random_body(seed, n, symmetric=False):
    rng = np.random.default_rng(seed)
    make = bodies.random_symmetric_polytope if symmetric else bodies.random_polytope
    return make(n, rng)


def hausdorff(A, B):
    d = np.linalg.norm(A[:, None] - B[None], axis=2)
    return max(d.min(axis=1).max(), d.min(axis=0).max())


# --- construction -----------------------------------------------------------

def test_cube_basics():
    C = bodies.cube(3)
    assert volume(C) == pytest.approx(8.0, abs=1e-12)
    assert len(C.facets) == 6
    D, pairs = diameter(C)
    assert D == pytest.approx(2 * math.sqrt(3))
    assert len(pairs) == 4


def test_interior_points_are_dropped():
    pts = np.vstack([bodies.cube(3).vertices, [[0.1, 0.2, 0.3], [1.0, 0.0, 0.0]]])
    assert len(build_polytope(pts).vertices) == 8


def test_degenerate_input_reports_rank():
    pts = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
    with pytest.raises(DegenerateInput) as exc:
        build_polytope(pts)
    assert exc.value.rank == 2


def test_one_dimensional_input_is_rejected():
    with pytest.raises(ShapeMismatch):
        build_polytope([[0.0], [1.0]])


def test_vertices_are_read_only():
    C = bodies.cube(2)
    with pytest.raises(ValueError):
        C.vertices[0, 0] = 5.0


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_volume_matches_qhull(name):
    P = FIXTURES[name]
    assert volume(P) == pytest.approx(ConvexHull(P.vertices).volume, rel=1e-12)


def test_body_parameters():
    with pytest.raises(ParamOutOfRange):
        bodies.sailing_boat(0.8)
    with pytest.raises(ParamOutOfRange):
        bodies.septagon(0.2)
    with pytest.raises(ParamOutOfRange):
        bodies.triangle(1.0)
    with pytest.raises(ParamOutOfRange):
        bodies.make_body("dodecahedron")


def test_named_bodies():
    T = bodies.regular_simplex(2)
    d = np.linalg.norm(T.vertices[:, None] - T.vertices[None], axis=2)
    assert np.allclose(d[~np.eye(3, dtype=bool)], math.sqrt(3))
    assert np.allclose(np.linalg.norm(T.vertices, axis=1), 1.0)
    K = bodies.sailing_boat(0.95)
    assert len(K.vertices) == 5
    assert np.allclose(np.linalg.norm(K.vertices, axis=1), 1.0)
    S = bodies.septagon(0.05)
    assert len(S.vertices) == 7
    I = bodies.icosahedron()
    assert (len(I.vertices), len(I.facets)) == (12, 20)


def test_sailing_boat_diameter():
    D, pairs = diameter(bodies.sailing_boat(0.95))
    assert D == pytest.approx(math.sqrt(2 * 1.95))
    assert len(pairs) == 2


def test_septagon_diameter_regime():
    # Only for small eps do the square diagonals realise the diameter.
    assert diameter(bodies.septagon(0.01))[0] == pytest.approx(1.98)
    assert diameter(bodies.septagon(0.05))[0] > 1.9 + 1e-3


# --- metric quantities --------------------------------------------------------

def test_triangle_widths():
    T = bodies.regular_simplex(2)
    w, dirs = min_width(T)
    assert w == pytest.approx(1.5)
    assert len(dirs.lines()) == 3
    assert iq(T) == pytest.approx(math.sqrt(3) / 4)
    assert iwq(T) == pytest.approx(1 / math.sqrt(3))


def test_crosspolytope_quantities():
    X = bodies.crosspolytope(3)
    assert volume(X) == pytest.approx(4 / 3)
    assert iq(X) == pytest.approx(1 / 6)
    w, dirs = min_width(bodies.crosspolytope(2))
    assert w == pytest.approx(math.sqrt(2))
    assert np.allclose(np.abs(dirs.lines()), 1 / math.sqrt(2))


def test_support_and_width():
    C = bodies.cube(2)
    u = np.array([1.0, 1.0]) / math.sqrt(2)
    assert support(C, u) == pytest.approx(math.sqrt(2))
    assert width(C, u) == pytest.approx(2 * math.sqrt(2))


def test_diametrical_directions_rel_tol_range():
    with pytest.raises(ValueError):
        diametrical_directions(bodies.cube(2), 0.5)


@pytest.mark.parametrize("name", ["cube3", "regular_simplex3", "icosahedron",
                                  "sailing_boat", "septagon"])
def test_min_width_against_sampling(name):
    # Dense sampling of directions can only overestimate the minimum width.
    P = FIXTURES[name]
    rng = np.random.default_rng(1)
    U = rng.standard_normal((100_000, P.dim))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    proj = P.vertices @ U.T
    sampled = (proj.max(axis=0) - proj.min(axis=0)).min()
    w = min_width(P)[0]
    assert w <= sampled + 1e-12
    assert sampled - w < 5e-3 * w


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_min_width_below_random_widths(name):
    P = FIXTURES[name]
    rng = np.random.default_rng(2)
    U = rng.standard_normal((1000, P.dim))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    w = min_width(P)[0]
    assert all(w <= width(P, u) + 1e-12 for u in U)


def test_polar_of_cube_is_crosspolytope():
    Pc = polar(bodies.cube(3))
    assert hausdorff(Pc.vertices, bodies.crosspolytope(3).vertices) < 1e-12


def test_polar_requires_interior_origin():
    with pytest.raises(OriginNotInterior):
        polar(bodies.cube(2).translate([1.0, 0.0]))


def test_subspace_angle():
    assert subspace_angle([[1.0, 0.0, 0.0]], [1.0, 1.0, 0.0]) == pytest.approx(math.pi / 4)
    with pytest.raises(RankDeficientBasis):
        subspace_angle([[1.0, 0.0], [2.0, 0.0]], [0.0, 1.0])


def test_linear_map():
    with pytest.raises(ValueError):
        LinearMap([[1.0, 2.0], [2.0, 4.0]])
    A = LinearMap([[2.0, 1.0], [0.0, 1.0]])
    C = bodies.cube(2)
    assert volume(A(C)) == pytest.approx(2 * volume(C))
    assert np.allclose((A @ A.inverse()).matrix, np.eye(2))


# --- properties ---------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(seeds, dims, st.floats(0.1, 10.0))
def test_iq_invariance(seed, n, s):
    P = random_body(seed, n)
    rng = np.random.default_rng(seed + 1)
    Q = ortho_group.rvs(n, random_state=seed)
    t = rng.standard_normal(n)
    assert abs(iq(P.transform(s * Q).translate(t)) - iq(P)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_difference_body_diameter(seed, n):
    P = random_body(seed, n)
    assert diameter(difference_body(P))[0] == pytest.approx(2 * diameter(P)[0], rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_brunn_minkowski(seed, n):
    P = random_body(seed, n)
    assert volume(difference_body(P)) >= 2**n * volume(P) * (1 - 1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_polar_involution(seed, n):
    P = random_body(seed, n, symmetric=True)
    assert hausdorff(polar(polar(P)).vertices, P.vertices) < 1e-8


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(3, 5))
def test_angle_complement(seed, n):
    rng = np.random.default_rng(seed)
    i = int(rng.integers(1, n))
    Q = ortho_group.rvs(n, random_state=seed)
    v = rng.standard_normal(n)
    total = subspace_angle(Q[:i], v) + subspace_angle(Q[i:], v)
    assert abs(total - math.pi / 2) < 1e-10


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_min_width_random(seed, n):
    P = random_body(seed, n)
    rng = np.random.default_rng(seed)
    U = rng.standard_normal((200, n))
    w = min_width(P)[0]
    assert all(w <= width(P, u / np.linalg.norm(u)) + 1e-12 for u in U)


@pytest.mark.parametrize("name", sorted(SYMMETRIC))
def test_symmetric_fixtures(name):
    assert SYMMETRIC[name].is_symmetric()
