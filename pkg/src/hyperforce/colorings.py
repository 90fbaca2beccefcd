"""Explicit colorings of R^n as pure point -> color functions.

Every coloring is a small frozen value object with ``__call__`` and a JSON
``spec()``; :func:`coloring_from_spec` inverts ``spec()``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .scalar import FLOAT, format_scalar, is_exact_value, parse_scalar


class CollinearPoints(ValueError):
    pass


class Coloring:
    kind: str = "abstract"
    n: int | None = None

    def __call__(self, point) -> int:
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def _check_dim(self, point):
        if self.n is not None and len(point) != self.n:
            raise ValueError(f"{self.kind} coloring is defined on R^{self.n}, got a point of dimension {len(point)}")


def _floor(x) -> int:
    # math.floor is exact on Fractions and ints
    return math.floor(x)


@dataclass(frozen=True)
class Constant(Coloring):
    color: int = 0
    n: int | None = None
    kind = "constant"

    def __call__(self, point) -> int:
        return self.color

    def spec(self) -> dict:
        out = {"kind": self.kind, "color": self.color}
        if self.n is not None:
            out["n"] = self.n
        return out


@dataclass(frozen=True)
class Strip(Coloring):
    """f(x_1, ..., x_n) = floor(x_n); the class of c is R^{n-1} x [c, c+1)."""

    n: int = 2
    kind = "strip"

    def __call__(self, point) -> int:
        self._check_dim(point)
        return _floor(point[-1])

    def spec(self) -> dict:
        return {"kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class MergedStrip(Coloring):
    """Strip coloring relabeled onto {0, ..., k-1}: strips below 0 merge into
    color 0, strips at or above k-2 merge into color k-1, strip c in between
    gets c+1."""

    n: int = 2
    k: int = 2
    kind = "merged_strip"

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("merged strip coloring needs at least two colors")

    def __call__(self, point) -> int:
        self._check_dim(point)
        c = _floor(point[-1])
        if c < 0:
            return 0
        if c >= self.k - 2:
            return self.k - 1
        return c + 1

    def spec(self) -> dict:
        return {"kind": self.kind, "n": self.n, "k": self.k}


def fold_integer(z: int) -> int:
    """Bijection Z -> N: 0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ..."""
    return 2 * z if z >= 0 else -2 * z - 1


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def default_kappa(cell: Sequence[int]) -> int:
    """Bijection Z^n -> N: fold each coordinate into N, then Cantor-pair left to right."""
    acc = fold_integer(cell[0])
    for z in cell[1:]:
        acc = cantor_pair(acc, fold_integer(z))
    return acc


@dataclass(frozen=True)
class Grid(Coloring):
    """Half-open cubes of edge delta; the cube with integer index x gets kappa(x).

    Two points of one color lie in one cube, so their distance is < delta*sqrt(n).
    """

    n: int = 2
    delta: object = 1
    kappa: Callable[[Sequence[int]], int] = default_kappa
    kind = "grid"

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("grid cell size must be positive")

    def cell(self, point) -> tuple[int, ...]:
        self._check_dim(point)
        d = self.delta
        if not (is_exact_value(d) and all(is_exact_value(x) for x in point)):
            d = float(d)
        return tuple(_floor(x / d) for x in point)

    def __call__(self, point) -> int:
        return self.kappa(self.cell(point))

    def spec(self) -> dict:
        return {"kind": self.kind, "n": self.n, "delta": format_scalar(self.delta)}


@dataclass(frozen=True)
class TwoBall(Coloring):
    """Color 1 on the open disk of radius 2 about (-2, 0), color 2 on the open
    disk of radius 2 about (2, 0), and color 1 everywhere else."""

    n: int = 2
    kind = "two_ball"

    def __call__(self, point) -> int:
        self._check_dim(point)
        x, y = point
        if (x - 2) ** 2 + y ** 2 < 4:
            return 2
        return 1

    def spec(self) -> dict:
        return {"kind": self.kind}


# --- the quadratic extension Q(sqrt 2) --------------------------------------

@dataclass(frozen=True)
class QuadSurd:
    """The number a + b*sqrt(2) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @staticmethod
    def lift(x) -> "QuadSurd":
        return x if isinstance(x, QuadSurd) else QuadSurd(Fraction(x))

    def __add__(self, other):
        o = QuadSurd.lift(other)
        return QuadSurd(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadSurd.lift(other))

    def __rsub__(self, other):
        return QuadSurd.lift(other) - self

    def __mul__(self, other):
        o = QuadSurd.lift(other)
        return QuadSurd(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt(2)"


SQRT2 = QuadSurd(0, 1)


def quad_point(*coords) -> tuple[QuadSurd, ...]:
    return tuple(QuadSurd.lift(c) for c in coords)


@dataclass(frozen=True)
class Rational2D(Coloring):
    """1 on Q^2, 0 on the rest of the plane, over points of Q(sqrt 2)^2."""

    n: int = 2
    kind = "rational2d"

    def __call__(self, point) -> int:
        self._check_dim(point)
        pts = [QuadSurd.lift(c) if isinstance(c, (int, Fraction, QuadSurd)) else None for c in point]
        if any(c is None for c in pts):
            raise TypeError("rational2d colors only exact points of Q(sqrt 2)^2")
        return 1 if all(c.is_rational for c in pts) else 0

    def spec(self) -> dict:
        return {"kind": self.kind}


def rational_circle_center(p, q, r) -> tuple[Fraction, Fraction]:
    """Exact center of the circle through three rational points.

    Solves the two perpendicular-bisector equations by Cramer's rule.
    """
    pts = []
    for point in (p, q, r):
        coords = [QuadSurd.lift(c) for c in point]
        if len(coords) != 2 or not all(c.is_rational for c in coords):
            raise ValueError("rational_circle_center needs points with rational coordinates")
        pts.append((coords[0].a, coords[1].a))
    (x1, y1), (x2, y2), (x3, y3) = pts
    a11, a12 = 2 * (x2 - x1), 2 * (y2 - y1)
    a21, a22 = 2 * (x3 - x1), 2 * (y3 - y1)
    b1 = x2 * x2 - x1 * x1 + y2 * y2 - y1 * y1
    b2 = x3 * x3 - x1 * x1 + y3 * y3 - y1 * y1
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise CollinearPoints("the three points are collinear")
    return ((b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det)


# --- specs -----------------------------------------------------------------

def coloring_from_spec(spec, n: int | None = None, mode: str = FLOAT) -> Coloring:
    """Build a coloring from a JSON object or a shorthand such as ``"grid:1/3"``."""
    if isinstance(spec, str):
        name, _, arg = spec.partition(":")
        spec = {"kind": name.strip()}
        if arg:
            key = {"constant": "color", "merged_strip": "k", "grid": "delta"}.get(spec["kind"])
            if key is None:
                raise ValueError(f"coloring {name!r} takes no parameter")
            spec[key] = arg
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError(f"bad coloring spec {spec!r}")
    kind = spec["kind"]
    dim = int(spec.get("n", n if n is not None else 2))
    if kind == "constant":
        return Constant(int(spec.get("color", 0)), spec.get("n", n))
    if kind == "strip":
        return Strip(dim)
    if kind == "merged_strip":
        return MergedStrip(dim, int(spec.get("k", 2)))
    if kind == "grid":
        return Grid(dim, parse_scalar(spec.get("delta", 1), mode))
    if kind == "two_ball":
        if dim != 2:
            raise ValueError("two_ball lives in the plane")
        return TwoBall()
    if kind == "rational2d":
        return Rational2D()
    raise ValueError(f"unknown coloring kind {kind!r}")
