import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperforce import spheres as sph
from hyperforce.geometry import EdgeLengthFunction, Sphere, circumsphere, cm_volume, edge_lengths, is_isosceles, is_right, realize
from hyperforce.properties import FiniteSet, GeometricSequence

seeds = st.integers(0, 2 ** 32 - 1)


def random_sphere(rng, n):
    return Sphere(tuple(rng.uniform(-3, 3, n)), float(rng.uniform(0.2, 3)))


# --- intersections -----------------------------------------------------------

def test_unit_circles_meet_in_point_pair():
    res = sph.sphere_intersect(Sphere((0.0, 0.0), 1.0), Sphere((1.0, 0.0), 1.0))
    assert isinstance(res, sph.SubSphere) and res.k == 0
    pts = sorted(map(tuple, [res.center + res.radius * res.basis[0], res.center - res.radius * res.basis[0]]))
    assert np.allclose(pts, [(0.5, -math.sqrt(3) / 2), (0.5, math.sqrt(3) / 2)])
    for p in pts:
        assert math.isclose(p[0] ** 2 + p[1] ** 2, 1) and math.isclose((p[0] - 1) ** 2 + p[1] ** 2, 1)


def test_tangent_empty_concentric():
    tp = sph.sphere_intersect(Sphere((0.0, 0.0), 1.0), Sphere((3.0, 0.0), 2.0))
    assert isinstance(tp, sph.TangentPoint) and np.allclose(tp.point, (1, 0))
    assert isinstance(sph.sphere_intersect(Sphere((0.0, 0.0), 1.0), Sphere((4.0, 0.0), 2.0)), sph.Empty)
    with pytest.raises(sph.ConcentricSpheres):
        sph.sphere_intersect(Sphere((0.0, 0.0), 1.0), Sphere((0.0, 0.0), 2.0))


@given(seeds, st.sampled_from([2, 3, 4]))
def test_intersection_radius_identity(seed, n):
    rng = np.random.default_rng(seed)
    a = random_sphere(rng, n)
    R = float(a.radius)
    r = float(rng.uniform(0.2, 3))
    lo, hi = abs(R - r), R + r
    d = float(rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)))
    u = rng.standard_normal(n)
    u /= np.linalg.norm(u)
    b = Sphere(tuple(a.center_array + d * u), r)
    res = sph.sphere_intersect(a, b)
    x = (d * d + R * R - r * r) / (2 * d)
    assert math.isclose(res.radius, math.sqrt(R * R - x * x), rel_tol=1e-9, abs_tol=1e-12)
    for p in sph.sample_uniform(res, 5, rng):
        assert a.residual(p) <= 1e-9 * (1 + R) and b.residual(p) <= 1e-9 * (1 + r)


# --- sampling and rotations ----------------------------------------------------

def test_sample_uniform_deterministic_and_on_sphere():
    s = Sphere((1.0, -2.0, 0.5), 2.0)
    a, b = sph.sample_uniform(s, 3, 7), sph.sample_uniform(s, 3, 7)
    assert np.array_equal(a, b)
    assert all(s.residual(p) <= 1e-12 for p in a)
    zero = sph.SubSphere(np.array([1.0, 2.0]), 0.0, np.eye(2)[:1])
    assert np.array_equal(sph.sample_uniform(zero, 4, 0), np.tile([1.0, 2.0], (4, 1)))


def test_sample_uniform_is_centered():
    pts = sph.sample_uniform(Sphere((0.0, 0.0, 0.0), 1.0), 20000, 3)
    assert np.abs(pts.mean(axis=0)).max() < 0.03
    # each coordinate of a uniform point on S^2 is uniform on [-1, 1]
    assert abs(np.mean(pts[:, 2] ** 2) - 1 / 3) < 0.01


@given(seeds, st.sampled_from([2, 3, 5]))
def test_random_rotation_is_special_orthogonal(seed, dim):
    q = sph.random_rotation(dim, seed)
    assert np.allclose(q @ q.T, np.eye(dim), atol=1e-12)
    assert math.isclose(np.linalg.det(q), 1.0, rel_tol=1e-12)


# --- inscribed regular simplices ----------------------------------------------------

def test_inscribed_triangle_and_tetrahedron():
    tri = sph.inscribed_regular(Sphere((0.0, 0.0), 1.0), 1)
    assert all(math.isclose(float(e), math.sqrt(3)) for e in edge_lengths(tri))
    tet = sph.inscribed_regular(Sphere((0.0, 0.0, 0.0), 1.0), 1)
    assert all(math.isclose(float(e), math.sqrt(8 / 3)) for e in edge_lengths(tet))
    # oracle: edge over circumradius of the realized unit regular tetrahedron
    unit = realize(EdgeLengthFunction(3, [1.0] * 6))
    assert math.isclose(1 / circumsphere(unit).radius, sph.regular_edge_ratio(3), rel_tol=1e-12)
    with pytest.raises(sph.ZeroRadius):
        sph.inscribed_regular(sph.SubSphere(np.zeros(2), 0.0, np.eye(2)), 0)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_regular_edge_ratio(m):
    rng = np.random.default_rng(m)
    s = random_sphere(rng, m + 1)
    sub = sph.intersect_subsphere(s, sph.sample_uniform(s, 1, rng)[0], 0.7 * float(s.radius))
    simplex = sph.inscribed_regular(sub, rng)
    for e in edge_lengths(simplex):
        assert math.isclose(float(e) / sub.radius, math.sqrt(2 * (m + 1) / m), rel_tol=1e-9)
    assert all(s.residual(v) <= 1e-9 * (1 + float(s.radius)) for v in simplex.vertices)


# --- h_edge --------------------------------------------------------------------

def test_h_edge_examples():
    assert math.isclose(sph.h_edge(1, 1, 2), math.sqrt(3))
    assert math.isclose(sph.h_edge(1, 1, 3), 1.5)
    assert sph.h_edge(1, 1e-9, 3) < 1e-8
    with pytest.raises(sph.OutOfRange):
        sph.h_edge(1, 2, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_h_edge_matches_measured_edge(n):
    rng = np.random.default_rng(n)
    s = random_sphere(rng, n)
    R = float(s.radius)
    for t in (0.1 * R, 0.8 * R, 1.3 * R):
        p0 = sph.sample_uniform(s, 1, rng)[0]
        ring = sph.intersect_subsphere(s, p0, t)
        simplex = sph.inscribed_regular(ring, rng)
        assert math.isclose(float(edge_lengths(simplex)[0]), sph.h_edge(R, t, n), rel_tol=1e-9)


@given(seeds)
def test_h_edge_increasing(seed):
    rng = np.random.default_rng(seed)
    R, n = float(rng.uniform(0.1, 10)), int(rng.integers(2, 7))
    grid = np.unique(rng.uniform(0.01, 0.99, 30)) * R * math.sqrt(2)
    vals = [sph.h_edge(R, t, n) for t in grid]
    assert all(b > a for a, b in zip(vals, vals[1:]))


# --- right simplices in caps ----------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_right_simplex_on_sphere(n):
    s = Sphere(tuple([0.0] * n), 1.3)
    d = np.zeros(n)
    d[0] = 1
    simplex = sph.right_simplex_on_sphere(s, d, 0)
    assert is_right(simplex) == 0
    assert np.allclose(simplex.vertices[0], 1.3 * d)
    assert all(s.residual(v) <= 1e-12 for v in simplex.vertices)


def test_cap_contains_right_simplex():
    ok, simplex = sph.cap_contains_right_simplex(2.0, 0.9, 3, seed=4)
    assert ok and is_right(simplex) is not None
    assert math.isclose(circumsphere(simplex).radius, 2.0, rel_tol=1e-12)
    pole = np.array([2.0, 0.0, 0.0])
    assert all(np.linalg.norm(np.asarray(v) - pole) < 0.9 * 2.0 * math.sqrt(2) for v in simplex.vertices)
    assert sph.cap_contains_right_simplex(2.0, 0.5, 3) == (False, None)
    with pytest.raises(ValueError):
        sph.cap_contains_right_simplex(1.0, 0.9, 2)


# --- chain and volume witnesses ----------------------------------------------------------

def test_chain_examples():
    geo = GeometricSequence(F(1), F(1, 2))
    s2 = Sphere((0.0, 0.0), 1.0)
    pole = np.array([0.0, 1.0])
    tri = sph.chain_construction(s2, sph.Cap(s2, pole, 0.5), geo, 0)
    assert sum(geo.contains(float(e)) for e in edge_lengths(tri)) >= 2
    assert is_isosceles(tri) == 0
    s3 = Sphere((0.0, 0.0, 0.0), 1.0)
    tet = sph.chain_construction(s3, sph.Cap(s3, np.array([0.0, 0.0, 1.0]), 0.5), geo, 1)
    assert sum(geo.contains(float(e)) for e in edge_lengths(tet)) >= 5
    with pytest.raises(sph.NoSmallLength):
        sph.chain_construction(s2, sph.Cap(s2, pole, 0.1), FiniteSet((F(1),)), 0)


@given(seeds, st.sampled_from([2, 3, 4]))
def test_chain_stays_in_cap_and_is_isosceles(seed, n):
    rng = np.random.default_rng(seed)
    s = random_sphere(rng, n)
    pole = sph.sample_uniform(s, 1, rng)[0]
    cap = sph.Cap.from_delta(s, pole, float(rng.uniform(0.05, 1)))
    geo = GeometricSequence(F(1), F(1, 2))
    simplex = sph.chain_construction(s, cap, geo, rng)
    assert all(cap.contains(v) for v in simplex.vertices)
    assert is_isosceles(simplex) == 0


def test_volume_witness_examples():
    s = Sphere((0.0, 0.0), 1.0)
    cap = sph.Cap(s, np.array([1.0, 0.0]), math.sqrt(2))
    tri = sph.volume_witness(s, cap, 2, 1e-5, 0)
    assert math.isclose(float(cm_volume(tri)), 1e-5, rel_tol=1e-9)
    with pytest.raises(ValueError):
        sph.volume_witness(s, cap, 2, 0.0)
    with pytest.raises(sph.TargetTooLarge):
        sph.volume_witness(s, cap, 2, 10.0)
