import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperforce import spheres as sph
from hyperforce.geometry import Simplex, Sphere, edge_lengths, is_right
from hyperforce.properties import (
    Cardinality,
    EdgeLengths,
    FiniteSet,
    GeometricSequence,
    Interval,
    IntervalMinusCountable,
    Isosceles,
    Regular,
    Right,
    TooManyPoints,
    UnionOfIntervals,
    Volume,
    cap_witness,
    holds,
    parse_admissible,
    property_from_spec,
    uniform_cap_delta,
    witness_template,
)

seeds = st.integers(0, 2 ** 32 - 1)

CATALOG = {
    2: [Cardinality(3), Regular(2), Isosceles(2), Right(2), Volume(2, Interval(0, 1)),
        EdgeLengths(1, Interval(0, 1)), EdgeLengths(2, GeometricSequence(F(1), F(1, 2))),
        EdgeLengths(3, IntervalMinusCountable(0, F(1, 10), (F(1, 20),)))],
    3: [Cardinality(4), Regular(2), Regular(3), Isosceles(3), Right(2), Right(3), Volume(3, Interval(0, 1)),
        Volume(2, Interval(0, 1)), EdgeLengths(5, GeometricSequence(F(1), F(1, 2))),
        EdgeLengths(3, Interval(0, 1)), EdgeLengths(6, IntervalMinusCountable(0, F(1, 10), (F(1, 20),)))],
}
CASES = [(n, p) for n, props in CATALOG.items() for p in props]


def case_id(case):
    n, p = case
    return f"n{n}-{p.kind}-{getattr(p, 'm', getattr(p, 'k', getattr(p, 'Y', '')))}"


# --- admissible sets --------------------------------------------------------------

def test_admissible_parsing_and_membership():
    iv = parse_admissible("(0,1)")
    assert iv.contains(F(1, 2)) and not iv.contains(F(1)) and not iv.contains(F(0))
    assert parse_admissible("[1,2)").contains(F(1))
    minus = parse_admissible("(0,1)\\{1/2}")
    assert isinstance(minus, IntervalMinusCountable) and not minus.contains(F(1, 2)) and minus.contains(F(1, 3))
    union = parse_admissible("(0,1)|(2,3)")
    assert isinstance(union, UnionOfIntervals) and union.contains(F(5, 2)) and not union.contains(F(3, 2))
    fin = parse_admissible("{3,4,5}")
    assert fin == parse_admissible("3,4,5") and fin.contains(F(4)) and not fin.contains(F(4) + F(1, 10 ** 20))
    geo = parse_admissible("geom:1,1/2")
    assert geo.contains(F(1, 8)) and not geo.contains(F(3, 8)) and geo.contains(0.125)
    for s in (iv, minus, union, fin, geo):
        assert parse_admissible(s.to_json()) == s


def test_admissible_small_members():
    assert Interval(0, 1).has_arbitrarily_small() and not Interval(F(1, 2), 1).has_arbitrarily_small()
    assert not FiniteSet((F(3), F(4))).has_arbitrarily_small()
    assert GeometricSequence(F(1), F(1, 2)).pick_below(F(1, 3)) == F(1, 4)
    assert FiniteSet((F(3), F(4))).pick_below(3) is None
    minus = IntervalMinusCountable(0, 1, (0.75,))
    assert minus.contains(minus.pick_below(1.0))
    rng = np.random.default_rng(0)
    assert all(minus.contains(minus.sample(rng)) for _ in range(200))


def test_property_specs():
    assert property_from_spec("regular:2") == Regular(2)
    assert property_from_spec("cardinality:3") == Cardinality(3)
    p = property_from_spec("edge_lengths:3:{3,4,5}")
    assert p == EdgeLengths(3, FiniteSet((F(3), F(4), F(5))))
    assert property_from_spec(p.to_json()) == p
    v = property_from_spec("volume:2:(0,1)")
    assert property_from_spec(v.to_json()) == v
    for bad in ("bogus:1", "regular", {"kind": "x"}):
        with pytest.raises(ValueError):
            property_from_spec(bad)


# --- holds --------------------------------------------------------------------------

def test_holds_examples():
    assert not holds(Cardinality(3), [(0, 0), (1, 0)])[0]
    assert holds(Cardinality(3), [(0, 0), (1, 0), (2, 0)])[0]
    pts = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2), (9.0, 9.0)]
    ok, witness = holds(Regular(2), pts)
    assert ok and witness == pts[:3]
    apex = [(0.0, 0.0), (1.0, 0.0), (math.cos(0.3), math.sin(0.3))]
    # oracle: two of the three edges measure exactly 1
    assert sum(math.isclose(float(e), 1.0) for e in edge_lengths(Simplex(tuple(apex)))) == 2
    assert holds(EdgeLengths(2, FiniteSet((F(1),))), apex)[0]
    assert not holds(EdgeLengths(3, FiniteSet((F(1),))), apex)[0]
    with pytest.raises(TooManyPoints):
        holds(Regular(2), [(float(i), 0.0) for i in range(13)])


@given(seeds, st.integers(0, 6))
def test_holds_monotone_under_supersets(seed, extra):
    rng = np.random.default_rng(seed)
    for n, prop in CASES:
        base = witness_template(prop, Sphere(tuple(rng.uniform(-2, 2, n)), float(rng.uniform(0.3, 2))), rng)
        if base is None:
            continue
        more = base + [tuple(rng.uniform(-3, 3, n)) for _ in range(min(extra, 12 - len(base)))]
        order = rng.permutation(len(more))
        assert holds(prop, [more[i] for i in order])[0]


# --- templates -------------------------------------------------------------------------

def test_template_examples():
    tri = witness_template(Regular(2), Sphere((1.0, 1.0), 2.0), 0)
    assert holds(Regular(2), tri)[0]
    p = EdgeLengths(3, FiniteSet((F(3), F(4), F(5))))
    pts = witness_template(p, Sphere((0.0, 0.0), 2.5), 0)
    assert sorted(round(float(e), 9) for e in edge_lengths(Simplex(tuple(pts)))) == [3, 4, 5]
    assert witness_template(p, Sphere((0.0, 0.0), 1.0), 0) is None


@pytest.mark.parametrize("case", CASES, ids=case_id)
def test_template_validity_and_rigid_invariance(case):
    n, prop = case
    rng = np.random.default_rng(17)
    for _ in range(25):
        s = Sphere(tuple(rng.uniform(-5, 5, n)), float(rng.uniform(0.2, 3)))
        pts = witness_template(prop, s, rng)
        assert pts is not None
        assert all(s.residual(p) <= 1e-9 * (1 + float(s.radius)) for p in pts)
        assert holds(prop, pts)[0]
        q = sph.random_rotation(n, rng)
        t = rng.uniform(-5, 5, n)
        moved = [tuple(q @ np.asarray(p) + t) for p in pts]
        s2 = Sphere(tuple(q @ s.center_array + t), s.radius)
        assert all(s2.residual(p) <= 1e-9 * (1 + float(s.radius)) for p in moved)
        assert holds(prop, moved)[0]


def test_template_deterministic():
    s = Sphere((0.0, 0.0, 0.0), 1.0)
    for prop in CATALOG[3]:
        assert witness_template(prop, s, 5) == witness_template(prop, s, 5)


# --- uniform caps --------------------------------------------------------------------

def test_uniform_cap_delta_examples():
    assert uniform_cap_delta(Right(3), 3) == 0.9 > math.sqrt(2 / 3)
    assert uniform_cap_delta(Regular(2), 2) is None
    assert uniform_cap_delta(Regular(3), 3) is None
    assert uniform_cap_delta(Right(2), 2) is None
    assert uniform_cap_delta(EdgeLengths(1, FiniteSet((F(1),))), 2) is None
    d = uniform_cap_delta(Isosceles(2), 2)
    assert d is not None and 0 < d < 1
    s = Sphere((0.0, 0.0), 1.0)
    pts = cap_witness(Isosceles(2), s, (1.0, 0.0), d, 0)
    assert holds(Isosceles(2), pts)[0]
    assert all(np.linalg.norm(np.asarray(p) - (1, 0)) < d * math.sqrt(2) for p in pts)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_right_cap_soundness(n):
    delta = uniform_cap_delta(Right(n), n)
    assert delta > math.sqrt(2 / n)
    rng = np.random.default_rng(n)
    for _ in range(1000 if n == 3 else 200):
        s = Sphere(tuple(rng.uniform(-5, 5, n)), float(rng.uniform(0.1, 5)))
        pole = sph.sample_uniform(s, 1, rng)[0]
        pts = cap_witness(Right(n), s, pole, delta, rng)
        cap = sph.Cap.from_delta(s, pole, delta)
        assert all(cap.contains(p) for p in pts)
        assert is_right(Simplex(tuple(pts))) is not None


@pytest.mark.parametrize("prop,n", [(Isosceles(2), 2), (Isosceles(3), 3), (Cardinality(4), 2), (Cardinality(5), 3)])
def test_cap_witness_in_cap(prop, n):
    delta = uniform_cap_delta(prop, n)
    rng = np.random.default_rng(1)
    for _ in range(100):
        s = Sphere(tuple(rng.uniform(-5, 5, n)), float(rng.uniform(0.1, 5)))
        pole = sph.sample_uniform(s, 1, rng)[0]
        pts = cap_witness(prop, s, pole, delta, rng)
        cap = sph.Cap.from_delta(s, pole, delta)
        assert all(cap.contains(p) for p in pts) and holds(prop, pts)[0]
