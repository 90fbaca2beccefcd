"""Property catalog: finite-set predicates and on-sphere witness templates.

Also houses the admissible value sets used for edge lengths, volumes and radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import spheres as sph
from .geometry import (
    DegenerateSimplex,
    EdgeLengthFunction,
    Simplex,
    Sphere,
    circumradius_squared_from_lengths,
    circumsphere,
    cm_volume,
    edge_lengths,
    feasible,
    is_isosceles,
    is_regular,
    is_right,
    realize,
)
from .scalar import (
    DEFAULT_TOL,
    EXACT,
    close,
    format_scalar,
    is_exact_value,
    parse_scalar,
)

MAX_EXHAUSTIVE = 12


class TooManyPoints(ValueError):
    pass


# --- admissible value sets ---------------------------------------------------

def _lt(a, b) -> bool:
    if is_exact_value(a) and is_exact_value(b):
        return a < b
    return float(a) < float(b)


class AdmissibleSet:
    """A subset of (0, inf) with membership, infimum and member selection."""

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        raise NotImplementedError

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def inf(self):
        raise NotImplementedError

    def has_arbitrarily_small(self) -> bool:
        raise NotImplementedError

    def pick_below(self, x):
        """A member strictly below x: the largest one when it exists, or None."""
        raise NotImplementedError

    def members_below(self, x, limit: int = 200) -> list:
        """Up to ``limit`` members below x, largest first."""
        raise NotImplementedError

    def sample(self, rng: np.random.Generator):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Interval(AdmissibleSet):
    lo: object
    hi: object
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if _lt(self.hi, self.lo) or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")
        if self.lo < 0:
            raise ValueError("admissible values are positive")

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        above = not _lt(x, self.lo) if self.lo_closed else _lt(self.lo, x)
        below = not _lt(self.hi, x) if self.hi_closed else _lt(x, self.hi)
        return above and below and x > 0

    def inf(self):
        return self.lo

    def has_arbitrarily_small(self) -> bool:
        return self.lo == 0

    def pick_below(self, x):
        if self.hi_closed and _lt(self.hi, x):
            return self.hi
        upper = self.hi if _lt(self.hi, x) else x
        if not _lt(self.lo, upper):
            if self.lo_closed and _lt(self.lo, x) and self.lo > 0:
                return self.lo
            return None
        if is_exact_value(self.lo) and is_exact_value(upper):
            return self.lo + (upper - self.lo) * Fraction(3, 4)
        return float(self.lo) + 0.75 * (float(upper) - float(self.lo))

    def members_below(self, x, limit: int = 200) -> list:
        first = self.pick_below(x)
        if first is None:
            return []
        out, v = [], float(first)
        lo = float(self.lo)
        for _ in range(limit):
            if not self.contains(v):
                break
            out.append(v)
            v = lo + (v - lo) * 0.8
        return out

    def sample(self, rng):
        lo, hi = float(self.lo), float(self.hi)
        if math.isinf(hi):
            return lo + rng.exponential(max(1.0, lo))
        while True:
            v = float(rng.uniform(lo, hi))
            if self.contains(v):
                return v

    def to_json(self) -> dict:
        return {"interval": [format_scalar(self.lo), format_scalar(self.hi)],
                "closed": [self.lo_closed, self.hi_closed]}

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{self.lo},{self.hi}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class FiniteSet(AdmissibleSet):
    values: tuple

    def __post_init__(self):
        vals = tuple(sorted(set(self.values), key=float))
        if not vals:
            raise ValueError("empty finite set")
        if any(not v > 0 for v in vals):
            raise ValueError("admissible values are positive")
        object.__setattr__(self, "values", vals)

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        if is_exact_value(x) and all(is_exact_value(v) for v in self.values):
            return x in self.values
        return any(close(x, v, tol) for v in self.values)

    def inf(self):
        return self.values[0]

    def has_arbitrarily_small(self) -> bool:
        return False

    def pick_below(self, x):
        below = [v for v in self.values if _lt(v, x)]
        return below[-1] if below else None

    def members_below(self, x, limit: int = 200) -> list:
        return [v for v in reversed(self.values) if _lt(v, x)][:limit]

    def sample(self, rng):
        return self.values[int(rng.integers(len(self.values)))]

    def to_json(self) -> dict:
        return {"finite": [format_scalar(v) for v in self.values]}


@dataclass(frozen=True)
class IntervalMinusCountable(AdmissibleSet):
    """The open interval (lo, hi) with an explicit countable list removed; the
    finite stand-in for a set that is comeager in (lo, hi)."""

    lo: object
    hi: object
    excluded: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "excluded", tuple(sorted(set(self.excluded), key=float)))
        Interval(self.lo, self.hi)

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def _excluded(self, x, tol) -> bool:
        return any(close(x, e, tol) for e in self.excluded)

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        return self.interval.contains(x) and not self._excluded(x, tol)

    def inf(self):
        return self.lo

    def has_arbitrarily_small(self) -> bool:
        return self.lo == 0

    def pick_below(self, x):
        v = self.interval.pick_below(x)
        if v is None:
            return None
        for _ in range(10_000):
            if self.contains(v):
                return v
            v = self.lo + (v - self.lo) * (Fraction(999, 1000) if is_exact_value(v) else 0.999)
        return None

    def members_below(self, x, limit: int = 200) -> list:
        return [v for v in self.interval.members_below(x, limit) if self.contains(v)]

    def sample(self, rng):
        while True:
            v = self.interval.sample(rng)
            if not self._excluded(v, DEFAULT_TOL):
                return v

    def to_json(self) -> dict:
        return {"interval_minus": [format_scalar(self.lo), format_scalar(self.hi)],
                "excluded": [format_scalar(e) for e in self.excluded]}


@dataclass(frozen=True)
class UnionOfIntervals(AdmissibleSet):
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty union")

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        return any(p.contains(x, tol) for p in self.parts)

    def inf(self):
        return min((p.inf() for p in self.parts), key=float)

    def has_arbitrarily_small(self) -> bool:
        return any(p.has_arbitrarily_small() for p in self.parts)

    def pick_below(self, x):
        picks = [v for v in (p.pick_below(x) for p in self.parts) if v is not None]
        return max(picks, key=float) if picks else None

    def members_below(self, x, limit: int = 200) -> list:
        vals = [v for p in self.parts for v in p.members_below(x, limit)]
        return sorted(vals, key=float, reverse=True)[:limit]

    def sample(self, rng):
        widths = np.array([min(float(p.hi), float(p.lo) + 1e6) - float(p.lo) for p in self.parts])
        idx = int(rng.choice(len(self.parts), p=widths / widths.sum()))
        return self.parts[idx].sample(rng)

    def to_json(self) -> dict:
        return {"union": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class GeometricSequence(AdmissibleSet):
    """{first * ratio^j : j >= 0} with 0 < ratio < 1, e.g. {2^-j}."""

    first: object = 1
    ratio: object = Fraction(1, 2)

    def __post_init__(self):
        if not (self.first > 0 and 0 < self.ratio < 1):
            raise ValueError("need first > 0 and 0 < ratio < 1")

    @property
    def exact(self) -> bool:
        return is_exact_value(self.first) and is_exact_value(self.ratio)

    def term(self, j: int):
        return self.first * self.ratio ** j

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        if not x > 0:
            return False
        if self.exact and is_exact_value(x):
            v = Fraction(self.first)
            while v > x:
                v *= self.ratio
            return v == x
        j = round(math.log(float(x) / float(self.first)) / math.log(float(self.ratio)))
        return j >= 0 and close(x, float(self.term(j)), tol)

    def inf(self):
        return 0

    def has_arbitrarily_small(self) -> bool:
        return True

    def _first_index_below(self, x) -> int:
        j = 0
        if self.exact and is_exact_value(x):
            while not self.term(j) < x:
                j += 1
            return j
        j = max(0, math.floor(math.log(float(x) / float(self.first)) / math.log(float(self.ratio))) - 1)
        while not float(self.term(j)) < float(x):
            j += 1
        return j

    def pick_below(self, x):
        if not x > 0:
            return None
        return self.term(self._first_index_below(x))

    def members_below(self, x, limit: int = 200) -> list:
        if not x > 0:
            return []
        j = self._first_index_below(x)
        return [self.term(j + i) for i in range(limit)]

    def sample(self, rng):
        return self.term(int(rng.geometric(0.5)) - 1)

    def to_json(self) -> dict:
        return {"geometric": [format_scalar(self.first), format_scalar(self.ratio)]}


def _parse_bracketed(text: str, mode: str) -> Interval:
    text = text.strip()
    if text[0] not in "([" or text[-1] not in ")]":
        raise ValueError(f"bad interval {text!r}")
    lo, hi = text[1:-1].split(",")
    return Interval(parse_scalar(lo, mode), parse_scalar(hi, mode), text[0] == "[", text[-1] == "]")


def parse_admissible(spec, mode: str = EXACT) -> AdmissibleSet:
    """Parse an admissible set from JSON or a shorthand.

    Shorthands: ``"(0,1)"``, ``"[1,2)"``, ``"(0,1)\\{1/2,1/3}"``, ``"(0,1)|(2,3)"``,
    ``"{3,4,5}"`` or ``"3,4,5"``, ``"geom:1,1/2"``.
    """
    if isinstance(spec, AdmissibleSet):
        return spec
    if isinstance(spec, dict):
        if "interval" in spec:
            lo, hi = spec["interval"]
            closed = spec.get("closed", [False, False])
            return Interval(parse_scalar(lo, mode), parse_scalar(hi, mode), bool(closed[0]), bool(closed[1]))
        if "finite" in spec:
            return FiniteSet(tuple(parse_scalar(v, mode) for v in spec["finite"]))
        if "interval_minus" in spec:
            lo, hi = spec["interval_minus"]
            return IntervalMinusCountable(parse_scalar(lo, mode), parse_scalar(hi, mode),
                                          tuple(parse_scalar(v, mode) for v in spec.get("excluded", [])))
        if "union" in spec:
            return UnionOfIntervals(tuple(parse_admissible(p, mode) for p in spec["union"]))
        if "geometric" in spec:
            first, ratio = spec["geometric"]
            return GeometricSequence(parse_scalar(first, mode), parse_scalar(ratio, mode))
        raise ValueError(f"unknown admissible set {spec!r}")
    if not isinstance(spec, str):
        raise ValueError(f"bad admissible set {spec!r}")
    text = spec.strip()
    if text.startswith("geom:"):
        first, ratio = text[5:].split(",")
        return GeometricSequence(parse_scalar(first, mode), parse_scalar(ratio, mode))
    if "|" in text:
        return UnionOfIntervals(tuple(_parse_bracketed(p, mode) for p in text.split("|")))
    if "\\" in text:
        head, tail = text.split("\\", 1)
        iv = _parse_bracketed(head, mode)
        tail = tail.strip().strip("{}")
        excl = tuple(parse_scalar(v, mode) for v in tail.split(",") if v.strip())
        return IntervalMinusCountable(iv.lo, iv.hi, excl)
    if text[0] in "([" and text[-1] in ")]":
        return _parse_bracketed(text, mode)
    text = text.strip("{}")
    return FiniteSet(tuple(parse_scalar(v, mode) for v in text.split(",") if v.strip()))


# --- properties --------------------------------------------------------------

class Property:
    kind: str = "abstract"
    exhaustive: bool = True

    def subset_size(self, n: int) -> int:
        raise NotImplementedError

    def check(self, s: Simplex, tol: float) -> bool:
        raise NotImplementedError

    def validate(self, n: int) -> None:
        pass

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Cardinality(Property):
    Y: int
    kind = "cardinality"
    exhaustive = False

    def __post_init__(self):
        if self.Y < 1:
            raise ValueError("cardinality threshold must be >= 1")

    def to_json(self) -> dict:
        return {"kind": self.kind, "Y": self.Y}


@dataclass(frozen=True)
class _SimplexShape(Property):
    m: int

    def subset_size(self, n: int) -> int:
        return self.m + 1

    def validate(self, n: int) -> None:
        if not 2 <= self.m <= n:
            raise ValueError(f"need 2 <= m <= n, got m={self.m}, n={n}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m}


@dataclass(frozen=True)
class Isosceles(_SimplexShape):
    kind = "isosceles"

    def check(self, s, tol):
        return is_isosceles(s, tol) is not None


@dataclass(frozen=True)
class Regular(_SimplexShape):
    kind = "regular"

    def check(self, s, tol):
        return is_regular(s, tol)


@dataclass(frozen=True)
class Right(_SimplexShape):
    kind = "right"

    def check(self, s, tol):
        return is_right(s, tol) is not None


@dataclass(frozen=True)
class Volume(_SimplexShape):
    values: AdmissibleSet = None
    kind = "volume"

    def check(self, s, tol):
        return self.values.contains(cm_volume(s), tol)

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m, "V": self.values.to_json()}


@dataclass(frozen=True)
class EdgeLengths(Property):
    """An n-simplex with at least k of its N = binom(n+1, 2) edges in S."""

    k: int
    values: AdmissibleSet
    kind = "edge_lengths"

    def subset_size(self, n: int) -> int:
        return n + 1

    def validate(self, n: int) -> None:
        if not 1 <= self.k <= math.comb(n + 1, 2):
            raise ValueError(f"need 1 <= k <= {math.comb(n + 1, 2)}, got k={self.k}")

    def count_in(self, s: Simplex, tol: float = DEFAULT_TOL) -> int:
        return sum(1 for e in edge_lengths(s) if self.values.contains(e, tol))

    def check(self, s, tol):
        return self.count_in(s, tol) >= self.k

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "S": self.values.to_json()}


_SHAPES = {"isosceles": Isosceles, "regular": Regular, "right": Right}


def property_from_spec(spec, mode: str = EXACT) -> Property:
    """Build a property from JSON or a shorthand: ``"regular:2"``, ``"cardinality:3"``,
    ``"edge_lengths:3:{3,4,5}"``, ``"volume:2:(0,1)"``."""
    if isinstance(spec, Property):
        return spec
    if isinstance(spec, str):
        parts = spec.split(":", 2)
        kind = parts[0].strip()
        try:
            if kind in _SHAPES:
                spec = {"kind": kind, "m": int(parts[1])}
            elif kind == "cardinality":
                spec = {"kind": kind, "Y": int(parts[1])}
            elif kind == "edge_lengths":
                spec = {"kind": kind, "k": int(parts[1]), "S": parts[2]}
            elif kind == "volume":
                spec = {"kind": kind, "m": int(parts[1]), "V": parts[2]}
            else:
                raise ValueError(f"unknown property {kind!r}")
        except IndexError:
            raise ValueError(f"property spec {spec!r} is missing parameters") from None
    if not isinstance(spec, dict):
        raise ValueError(f"bad property spec {spec!r}")
    kind = spec.get("kind")
    if kind in _SHAPES:
        return _SHAPES[kind](int(spec["m"]))
    if kind == "cardinality":
        return Cardinality(int(spec["Y"]))
    if kind == "edge_lengths":
        return EdgeLengths(int(spec["k"]), parse_admissible(spec["S"], mode))
    if kind == "volume":
        return Volume(int(spec["m"]), parse_admissible(spec["V"], mode))
    raise ValueError(f"unknown property kind {kind!r}")


def holds(prop: Property, pts: Sequence, tol: float = DEFAULT_TOL) -> tuple[bool, list | None]:
    """Whether some subset of the finite point set is a witness for ``prop``.

    Simplex kinds search all subsets of the needed size, so inputs are capped
    at 12 points.
    """
    pts = [tuple(p) for p in pts]
    if isinstance(prop, Cardinality):
        distinct = list(dict.fromkeys(pts))
        if len(distinct) >= prop.Y:
            return True, distinct[:prop.Y]
        return False, None
    if len(pts) > MAX_EXHAUSTIVE:
        raise TooManyPoints(f"exhaustive search is capped at {MAX_EXHAUSTIVE} points, got {len(pts)}")
    if not pts:
        return False, None
    n = len(pts[0])
    size = prop.subset_size(n)
    if size - 1 > n:
        return False, None
    for idx in combinations(range(len(pts)), size):
        try:
            s = Simplex(tuple(pts[i] for i in idx))
        except DegenerateSimplex:
            continue
        if prop.check(s, tol):
            return True, [pts[i] for i in idx]
    return False, None


# --- witness templates ------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_subsphere(s, k: int, rng) -> sph.SubSphere:
    """A random k-dimensional sub-sphere of a (sub-)sphere, offset from its
    center by up to 0.9 of the radius along a random normal inside the flat."""
    sub = sph.as_subsphere(s)
    if k == sub.k:
        return sub
    if not 0 <= k < sub.k:
        raise ValueError(f"cannot take a {k}-sub-sphere of a {sub.k}-sphere")
    frame = sph.random_rotation(sub.k + 1, rng) @ sub.basis
    h = float(rng.uniform(-0.9, 0.9)) * sub.radius
    return sph.SubSphere(sub.center + h * frame[k + 1], math.sqrt(sub.radius ** 2 - h * h), frame[:k + 1])


def _points(s) -> list[tuple]:
    if isinstance(s, Simplex):
        return [tuple(float(x) for x in v) for v in s.vertices]
    return [tuple(float(x) for x in p) for p in s]


def _isosceles_template(sphere, m, rng, t=None):
    R = float(sphere.radius)
    apex = sph.sample_uniform(sphere, 1, rng)[0]
    if t is None:
        t = R * float(rng.uniform(0.02, 1.98))
    ring = sph.intersect_subsphere(sphere, apex, t)
    base = random_subsphere(ring, m - 2, rng)
    return _points([apex]) + _points(sph.inscribed_regular(base, rng))


def _thales(sub, rng):
    u = sph.sample_uniform(sub, 2, rng)
    c = sub.center
    return _points([u[0], 2 * c - u[0], u[1]])


@lru_cache(maxsize=64)
def _feasible_functions(values: tuple, n: int) -> tuple:
    """All feasible edge-length functions over ``values`` with their squared circumradius."""
    out = []
    for combo in product(values, repeat=math.comb(n + 1, 2)):
        h = EdgeLengthFunction(n, combo)
        if feasible(h):
            out.append((combo, circumradius_squared_from_lengths(h)))
    return tuple(out)


def _place(s: Simplex, sphere: Sphere, rng) -> list[tuple]:
    """Move a full-dimensional simplex so its circumsphere becomes ``sphere``."""
    circ = circumsphere(s)
    rot = sph.random_rotation(sphere.n, rng)
    pts = (s.array - circ.center_array) @ rot.T + sphere.center_array
    return _points(pts)


def _edge_length_template(prop: EdgeLengths, sphere: Sphere, rng, tol) -> list | None:
    n = sphere.n
    N = math.comb(n + 1, 2)
    R = float(sphere.radius)
    S = prop.values
    if prop.k <= N - 1:
        pole = sph.sample_uniform(sphere, 1, rng)[0]
        cap = sph.Cap(sphere, pole, R * math.sqrt(2))
        try:
            return _points(sph.chain_construction(sphere, cap, S, rng))
        except sph.NoSmallLength:
            pass
    if prop.k <= n:
        legs = [float(v) for v in S.members_below(2 * R * (1 - 1e-9), 64)]
        if legs:
            s = legs[int(rng.integers(len(legs)))]
            apex = sph.sample_uniform(sphere, 1, rng)[0]
            ring = sph.intersect_subsphere(sphere, apex, s)
            return _points([apex]) + _points(sph.inscribed_regular(ring, rng))
    if isinstance(S, FiniteSet) and len(S.values) <= 8 and n <= 3:
        hits = [combo for combo, r2 in _feasible_functions(S.values, n) if close(math.sqrt(float(r2)), R, tol)]
        if not hits:
            return None
        combo = hits[int(rng.integers(len(hits)))]
        return _place(realize(EdgeLengthFunction(n, combo)), sphere, rng)
    upper = R * math.sqrt(2) * (1 - 1e-9)
    for r in S.members_below(upper, 400):
        r = float(r)
        if r <= 0 or r >= upper:
            continue
        if S.contains(sph.h_edge(R, r, n), tol):
            apex = sph.sample_uniform(sphere, 1, rng)[0]
            ring = sph.intersect_subsphere(sphere, apex, r)
            return _points([apex]) + _points(sph.inscribed_regular(ring, rng))
    return None


def witness_template(prop: Property, sphere: Sphere, seed=None, tol: float = DEFAULT_TOL) -> list | None:
    """A finite point set on ``sphere`` with property ``prop``, or None.

    Placement is random but deterministic per seed.  For edge-length
    properties over a small finite set, None means no realization over that set
    has this circumradius.
    """
    rng = _rng(seed)
    n = sphere.n
    if isinstance(prop, Cardinality):
        return _points(sph.sample_uniform(sphere, prop.Y, rng))
    if isinstance(prop, EdgeLengths):
        prop.validate(n)
        return _edge_length_template(prop, sphere, rng, tol)
    if prop.m > n:
        return None
    if isinstance(prop, Regular):
        return _points(sph.inscribed_regular(random_subsphere(sphere, prop.m - 1, rng), rng))
    if isinstance(prop, Isosceles):
        return _isosceles_template(sphere, prop.m, rng)
    if isinstance(prop, Right):
        sub = random_subsphere(sphere, prop.m - 1, rng)
        if prop.m == 2:
            return _thales(sub, rng)
        direction = (sph.sample_uniform(sub, 1, rng)[0] - sub.center) / sub.radius
        return _points(sph.right_simplex_on_sphere(sub, direction, rng))
    if isinstance(prop, Volume):
        R = float(sphere.radius)
        pole = sph.sample_uniform(sphere, 1, rng)[0]
        cap = sph.Cap(sphere, pole, R * math.sqrt(2))
        r1 = cap.euclid_radius * (1 - 1e-9)
        vmax = float(cm_volume(sph.delta_simplex(sphere, pole, r1, prop.m)))
        v = prop.values.pick_below(vmax * (1 - 1e-9))
        if v is None:
            return None
        return _points(sph.volume_witness(sphere, cap, prop.m, float(v), seed=rng))
    raise TypeError(f"no template for {prop!r}")


def uniform_cap_delta(prop: Property, n: int) -> float | None:
    """A delta for which every cap of radius delta*r*sqrt(2) holds a witness, or
    None when the property is not uniform-cap in this catalog.

    Right n-simplices need delta > sqrt(2/n); we return the next multiple of 0.1.
    Regular n-simplices and right triangles in the plane return None: the strip
    coloring satisfies their forcing condition without being constant.
    """
    if isinstance(prop, Cardinality):
        return 0.5
    if isinstance(prop, EdgeLengths):
        N = math.comb(n + 1, 2)
        S = prop.values
        if prop.k < N:
            return 0.5 if S.has_arbitrarily_small() else None
        if isinstance(S, (Interval, IntervalMinusCountable)) and S.lo == 0:
            return 0.5
        return None
    if isinstance(prop, Volume):
        return 0.5 if prop.values.has_arbitrarily_small() else None
    prop.validate(n)
    if isinstance(prop, Isosceles) or prop.m < n:
        return 0.5
    if isinstance(prop, Right) and n >= 3:
        delta = math.floor(math.sqrt(2 / n) * 10 + 1e-12) / 10 + 0.1
        return round(delta, 10) if delta < 1 else None
    return None


def cap_witness(prop: Property, sphere: Sphere, pole, delta: float, seed=None) -> list | None:
    """A witness for ``prop`` inside the cap of radius delta*r*sqrt(2) about ``pole``."""
    rng = _rng(seed)
    n = sphere.n
    R = float(sphere.radius)
    t = delta * R * math.sqrt(2)
    pole = np.asarray(pole, dtype=float)
    if isinstance(prop, Right) and prop.m == n and n >= 3:
        s = sph.cap_right_simplex(sphere, pole, delta, rng)
        return None if s is None else _points(s)
    if isinstance(prop, Isosceles):
        ring = sph.intersect_subsphere(sphere, pole, 0.5 * t)
        base = random_subsphere(ring, prop.m - 2, rng)
        return _points([pole]) + _points(sph.inscribed_regular(base, rng))
    if isinstance(prop, Cardinality):
        pts = _points([pole])
        for j in range(1, prop.Y):
            ring = sph.intersect_subsphere(sphere, pole, t * j / prop.Y)
            pts.extend(_points(sph.sample_uniform(ring, 1, rng)))
        return pts
    return None
