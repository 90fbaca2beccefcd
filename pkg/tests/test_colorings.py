import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperforce import spheres as sph
from hyperforce.colorings import (
    SQRT2,
    CollinearPoints,
    Constant,
    Grid,
    MergedStrip,
    QuadSurd,
    Rational2D,
    Strip,
    TwoBall,
    coloring_from_spec,
    default_kappa,
    quad_point,
    rational_circle_center,
)
from hyperforce.geometry import Sphere, circumsphere


def test_strip_examples():
    f = Strip(2)
    assert f((0.2, 0.7)) == 0 and f((5, -0.1)) == -1
    assert Strip(3)((1, 3, 2.0)) == 2
    assert Strip(2)((F(1), F(-1, 3))) == -1
    with pytest.raises(ValueError):
        f((1.0, 2.0, 3.0))


def test_merged_strip_examples():
    f2 = MergedStrip(2, 2)
    assert f2((0, -5)) == 0 and f2((0, 5)) == 1
    f3 = MergedStrip(2, 3)
    assert f3((0, 0.5)) == 1 and f3((0, 1.5)) == 2 and f3((0, -0.5)) == 0
    with pytest.raises(ValueError):
        MergedStrip(2, 1)


def test_grid_examples():
    g = Grid(2, 1)
    assert g((0.1, 0.1)) == g((0.9, 0.9))
    assert g((0.5, 0.5)) != g((1.5, 0.5))
    assert Grid(2, F(1, 3))((F(1, 3), F(0))) == default_kappa((1, 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_default_kappa_injective(n):
    box = range(-20, 21) if n < 3 else range(-6, 7)
    values = [default_kappa(c) for c in itertools.product(box, repeat=n)]
    assert len(set(values)) == len(values)
    assert min(values) >= 0


def test_grid_monochromatic_pairs_are_short():
    rng = np.random.default_rng(0)
    g = Grid(2, 1.0)
    pts = rng.uniform(-5, 5, (4000, 2))
    colors = np.array([g(tuple(p)) for p in pts])
    for c in np.unique(colors):
        group = pts[colors == c]
        if len(group) > 1:
            d = np.linalg.norm(group[:, None] - group[None], axis=-1)
            assert d.max() < math.sqrt(2)


def test_two_ball_examples():
    f = TwoBall()
    assert f((-2, 0)) == 1 and f((2, 0)) == 2 and f((0, 10)) == 1
    assert f((0, 0)) == 1  # boundary of the open disk about (2, 0)


def test_rational2d_examples():
    f = Rational2D()
    assert f((F(1, 2), F(3, 4))) == 1
    assert f((SQRT2, 0)) == 0
    assert f(quad_point(1 + SQRT2, F(1, 3))) == 0
    with pytest.raises(TypeError):
        f((0.5, 0.5))
    assert (SQRT2 * SQRT2).is_rational and SQRT2 * SQRT2 == QuadSurd(2)


def test_rational_circle_center_examples():
    assert rational_circle_center((0, 0), (1, 0), (0, 1)) == (F(1, 2), F(1, 2))
    c = rational_circle_center((0, 0), (2, 0), (1, 7))
    d2 = [(c[0] - x) ** 2 + (c[1] - y) ** 2 for x, y in ((0, 0), (2, 0), (1, 7))]
    assert d2[0] == d2[1] == d2[2] and all(isinstance(v, F) for v in c)
    with pytest.raises(CollinearPoints):
        rational_circle_center((0, 0), (1, 1), (2, 2))


fracs = st.fractions(F(-50), F(50), max_denominator=40)


@given(st.tuples(fracs, fracs), st.tuples(fracs, fracs), st.tuples(fracs, fracs))
def test_rational_center_closure(p, q, r):
    try:
        c = rational_circle_center(p, q, r)
    except CollinearPoints:
        return
    d2 = {(c[0] - x) ** 2 + (c[1] - y) ** 2 for x, y in (p, q, r)}
    assert len(d2) == 1
    assert Rational2D()(c) == 1


@given(st.tuples(*[st.floats(-20, 20)] * 3), st.tuples(*[st.floats(-20, 20)] * 3), st.floats(0, 1))
def test_strip_classes_convex(x, y, t):
    f = Strip(3)
    if f(x) != f(y):
        return
    z = tuple((1 - t) * a + t * b for a, b in zip(x, y))
    # a convex combination of two points of [c, c+1) stays in it, up to rounding of z
    if min(abs(z[-1] - math.floor(z[-1])), abs(z[-1] - math.ceil(z[-1]))) < 1e-12:
        return
    assert f(z) == f(x)


@pytest.mark.parametrize("n", [2, 3])
def test_strip_regular_simplices_force_center(n):
    rng = np.random.default_rng(n)
    f = Strip(n)
    mono = 0
    for _ in range(500):
        s = Sphere(tuple(rng.uniform(-5, 5, n)), float(rng.uniform(0.05, 1)))
        simplex = sph.inscribed_regular(s, rng)
        colors = {f(v) for v in simplex.vertices}
        if len(colors) == 1:
            mono += 1
            assert f(circumsphere(simplex).center) == colors.pop()
    assert mono > 50


@pytest.mark.parametrize("spec,cls", [
    ("strip", Strip), ("constant:2", Constant), ("merged_strip:3", MergedStrip),
    ("grid:1/3", Grid), ("two_ball", TwoBall), ("rational2d", Rational2D),
])
def test_spec_round_trip(spec, cls):
    f = coloring_from_spec(spec, 2, "exact")
    assert isinstance(f, cls)
    assert coloring_from_spec(f.spec(), 2, "exact") == f


def test_bad_specs():
    for bad in ("nonsense", "strip:3", {"no": "kind"}):
        with pytest.raises(ValueError):
            coloring_from_spec(bad, 2)
