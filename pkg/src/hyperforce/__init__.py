"""Hypersphere forcing conditions for colorings of R^n."""

from .colorings import (
    Coloring,
    Constant,
    Grid,
    MergedStrip,
    QuadSurd,
    Rational2D,
    Strip,
    TwoBall,
    coloring_from_spec,
    rational_circle_center,
)
from .engine import (
    AllCenters,
    BallUnion,
    FiniteConfig,
    FinitePointSet,
    NotAdmissible,
    PrefixTooLarge,
    QCondition,
    Verdict,
    admissible,
    check_sphere,
    excluded_radii,
    falsify,
    propagate,
    validate_certificate,
)
from .geometry import EdgeLengthFunction, Simplex, Sphere, circumsphere, cm_volume, feasible, realize
from .properties import (
    Cardinality,
    EdgeLengths,
    FiniteSet,
    GeometricSequence,
    Interval,
    IntervalMinusCountable,
    Isosceles,
    Regular,
    Right,
    UnionOfIntervals,
    Volume,
    holds,
    parse_admissible,
    property_from_spec,
    uniform_cap_delta,
    witness_template,
)

__version__ = "0.1.0"

__all__ = [
    "AllCenters",
    "BallUnion",
    "Cardinality",
    "Coloring",
    "Constant",
    "EdgeLengthFunction",
    "EdgeLengths",
    "FiniteConfig",
    "FinitePointSet",
    "FiniteSet",
    "GeometricSequence",
    "Grid",
    "Interval",
    "IntervalMinusCountable",
    "Isosceles",
    "MergedStrip",
    "NotAdmissible",
    "PrefixTooLarge",
    "QCondition",
    "QuadSurd",
    "Rational2D",
    "Regular",
    "Right",
    "Simplex",
    "Sphere",
    "Strip",
    "TwoBall",
    "UnionOfIntervals",
    "Verdict",
    "Volume",
    "admissible",
    "check_sphere",
    "circumsphere",
    "cm_volume",
    "coloring_from_spec",
    "excluded_radii",
    "falsify",
    "feasible",
    "holds",
    "parse_admissible",
    "propagate",
    "property_from_spec",
    "rational_circle_center",
    "realize",
    "uniform_cap_delta",
    "validate_certificate",
    "witness_template",
]
