"""Forcing-condition checker, counterexample search, excluded-radii enumeration
and finite forcing propagation."""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .colorings import Coloring
from .geometry import Sphere, as_point, as_points, sqdist
from .properties import (
    AdmissibleSet,
    Interval,
    IntervalMinusCountable,
    Property,
    holds,
    parse_admissible,
    property_from_spec,
    witness_template,
)
from .scalar import DEFAULT_TOL, EXACT, FLOAT, close, format_scalar, is_exact, parse_scalar, sqrt


class NotAdmissible(ValueError):
    pass


class PrefixTooLarge(ValueError):
    pass


# --- admissible centers ----------------------------------------------------

@dataclass(frozen=True)
class AllCenters:
    """Every point is an admissible center; sampling draws from [-box, box]^n."""

    box: float = 10.0

    def contains(self, p, tol: float = DEFAULT_TOL) -> bool:
        return True

    def sample(self, rng, n: int) -> tuple:
        return tuple(float(x) for x in rng.uniform(-self.box, self.box, n))

    def to_json(self) -> dict:
        return {"all": self.box}


@dataclass(frozen=True)
class BallUnion:
    """Union of open balls, given as ``((center, radius), ...)``."""

    balls: tuple

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple((as_point(c), r) for c, r in self.balls))

    def contains(self, p, tol: float = DEFAULT_TOL) -> bool:
        p = as_point(p)
        for c, r in self.balls:
            d2 = sqdist(p, c)
            if is_exact(p) and is_exact(c) and is_exact([r]):
                if d2 < r * r:
                    return True
            elif float(d2) < float(r) ** 2:
                return True
        return False

    def sample(self, rng, n: int) -> tuple:
        c, r = self.balls[int(rng.integers(len(self.balls)))]
        g = rng.standard_normal(n)
        g /= np.linalg.norm(g)
        scale = float(r) * rng.uniform() ** (1.0 / n)
        return tuple(float(x) for x in np.array([float(v) for v in c]) + scale * g)

    def to_json(self) -> dict:
        return {"balls": [{"center": [format_scalar(x) for x in c], "radius": format_scalar(r)}
                          for c, r in self.balls]}


@dataclass(frozen=True)
class FinitePointSet:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", as_points(self.points))

    def contains(self, p, tol: float = DEFAULT_TOL) -> bool:
        p = as_point(p)
        if is_exact(p) and all(is_exact(q) for q in self.points):
            return p in self.points
        return any(all(close(a, b, tol, 1.0) for a, b in zip(p, q)) for q in self.points)

    def sample(self, rng, n: int) -> tuple:
        return self.points[int(rng.integers(len(self.points)))]

    def to_json(self) -> dict:
        return {"points": [[format_scalar(x) for x in p] for p in self.points]}


def centers_from_spec(spec, mode: str = FLOAT):
    if spec is None or spec == "all":
        return AllCenters()
    if isinstance(spec, (AllCenters, BallUnion, FinitePointSet)):
        return spec
    if "all" in spec:
        return AllCenters(float(spec["all"]))
    if "balls" in spec:
        return BallUnion(tuple((tuple(parse_scalar(x, mode) for x in b["center"]), parse_scalar(b["radius"], mode))
                               for b in spec["balls"]))
    if "points" in spec:
        return FinitePointSet(tuple(tuple(parse_scalar(x, mode) for x in p) for p in spec["points"]))
    raise ValueError(f"bad center set {spec!r}")


# --- conditions and verdicts --------------------------------------------------

@dataclass(frozen=True)
class QCondition:
    """Forcing rule: a monochromatic witness of ``property`` on an admissible
    sphere forces the center's color."""

    property: Property
    radii: AdmissibleSet
    n: int = 2
    centers: object = field(default_factory=AllCenters)
    colors: frozenset | None = None
    epsilon: object = None

    def __post_init__(self):
        if isinstance(self.radii, IntervalMinusCountable) and self.epsilon is None:
            object.__setattr__(self, "epsilon", self.radii.hi)
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        self.property.validate(self.n)

    def to_json(self) -> dict:
        out = {"n": self.n, "property": self.property.to_json(), "radii": self.radii.to_json(),
               "centers": self.centers.to_json()}
        if self.colors is not None:
            out["colors"] = sorted(self.colors)
        if self.epsilon is not None:
            out["epsilon"] = format_scalar(self.epsilon)
        return out

    @classmethod
    def from_json(cls, obj: dict, mode: str = FLOAT) -> "QCondition":
        return cls(property_from_spec(obj["property"], mode), parse_admissible(obj["radii"], mode), int(obj["n"]),
                   centers_from_spec(obj.get("centers"), mode),
                   frozenset(obj["colors"]) if obj.get("colors") is not None else None,
                   parse_scalar(obj["epsilon"], mode) if obj.get("epsilon") is not None else None)


HOLDS_VACUOUSLY = "holds_vacuously"
HOLDS_WITH_WITNESSES = "holds_with_witnesses"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    outcome: str
    count: int = 0
    sphere: Sphere | None = None
    witness: list | None = None
    witness_color: int | None = None
    center_color: int | None = None
    budget: int | None = None

    @property
    def violated(self) -> bool:
        return self.outcome == VIOLATED

    def to_json(self) -> dict:
        out = {"outcome": self.outcome}
        if self.outcome == HOLDS_WITH_WITNESSES:
            out["count"] = self.count
        if self.outcome == INCONCLUSIVE:
            out["budget"] = self.budget
        if self.sphere is not None:
            out["sphere"] = sphere_to_json(self.sphere)
        if self.outcome == VIOLATED:
            out["witness"] = [[format_scalar(x) for x in p] for p in self.witness]
            out["witness_color"] = self.witness_color
            out["center_color"] = self.center_color
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Verdict":
        sphere = sphere_from_json(obj["sphere"]) if "sphere" in obj else None
        witness = None
        if "witness" in obj:
            witness = [tuple(parse_scalar(x, FLOAT) for x in p) for p in obj["witness"]]
        return cls(obj["outcome"], obj.get("count", 0), sphere, witness,
                   obj.get("witness_color"), obj.get("center_color"), obj.get("budget"))


def sphere_to_json(s: Sphere) -> dict:
    return {"center": [format_scalar(x) for x in s.center], "radius": format_scalar(s.radius)}


def sphere_from_json(obj: dict) -> Sphere:
    mode = EXACT if all(isinstance(x, str) for x in obj["center"]) else FLOAT
    center = tuple(parse_scalar(x, mode) for x in obj["center"])
    return Sphere(center, parse_scalar(obj["radius"], EXACT if isinstance(obj["radius"], str) else FLOAT))


def admissible(q: QCondition, s: Sphere, tol: float = DEFAULT_TOL) -> bool:
    """Center in the admissible centers and radius in the admissible radii."""
    return q.centers.contains(s.center, tol) and q.radii.contains(s.radius, tol)


def check_sphere(f: Coloring, q: QCondition, s: Sphere, budget: int = 100, seed=0,
                 tol: float = DEFAULT_TOL) -> Verdict:
    """Draw up to ``budget`` witness templates on ``s`` and compare the color of
    every monochromatic one with the center's color."""
    if not admissible(q, s, tol):
        raise NotAdmissible(f"sphere {sphere_to_json(s)} is not admissible")
    if budget <= 0:
        return Verdict(INCONCLUSIVE, sphere=s, budget=budget)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    center_color = f(s.center)
    count = 0
    for _ in range(budget):
        pts = witness_template(q.property, s, rng, tol)
        if pts is None:
            break
        colors = {f(p) for p in pts}
        if len(colors) != 1:
            continue
        c = colors.pop()
        if c != center_color:
            return Verdict(VIOLATED, sphere=s, witness=pts, witness_color=c, center_color=center_color)
        count += 1
    if count:
        return Verdict(HOLDS_WITH_WITNESSES, count=count, sphere=s)
    return Verdict(HOLDS_VACUOUSLY, sphere=s)


def _check_index(args):
    f, q, seq, budget, tol = args
    rng = np.random.default_rng(seq)
    center = q.centers.sample(rng, q.n)
    s = Sphere(center, q.radii.sample(rng))
    return check_sphere(f, q, s, budget, rng, tol)


def scan(f: Coloring, q: QCondition, sphere_budget: int = 1000, per_sphere_budget: int = 100, seed=0,
         tol: float = DEFAULT_TOL, workers: int = 1) -> Iterator[Verdict]:
    """Verdicts for ``sphere_budget`` sampled admissible spheres, in index order.

    Sphere i draws its center, radius and templates from the i-th child of the
    seed sequence, so results do not depend on evaluation order.
    """
    children = np.random.SeedSequence(seed).spawn(sphere_budget)
    jobs = ((f, q, child, per_sphere_budget, tol) for child in children)
    if workers <= 1:
        yield from map(_check_index, jobs)
        return
    with ThreadPoolExecutor(workers) as pool:
        yield from pool.map(_check_index, jobs)


def falsify(f: Coloring, q: QCondition, sphere_budget: int = 1000, per_sphere_budget: int = 100, seed=0,
            tol: float = DEFAULT_TOL, workers: int = 1) -> Verdict | None:
    """First violation over sampled admissible spheres, or None."""
    for v in scan(f, q, sphere_budget, per_sphere_budget, seed, tol, workers):
        if v.violated:
            return v
    return None


def validate_certificate(f: Coloring, q: QCondition, v: Verdict, tol: float = DEFAULT_TOL) -> bool:
    """Re-check a violation from its raw data."""
    if not v.violated or v.sphere is None or not v.witness:
        return False
    s = v.sphere
    if not admissible(q, s, tol):
        return False
    if any(s.residual(p) > tol * (1 + float(s.radius)) for p in v.witness):
        return False
    ok, _ = holds(q.property, v.witness, tol)
    if not ok:
        return False
    if any(f(p) != v.witness_color for p in v.witness):
        return False
    return f(s.center) == v.center_color != v.witness_color


# --- excluded radii ----------------------------------------------------------

def _det(m):
    size = len(m)
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** c * m[0][c] * _det([row[:c] + row[c + 1:] for row in m[1:]]) for c in range(size))


def _adjugate(m):
    size = len(m)
    if size == 1:
        return [[1]]
    return [[(-1) ** (i + j) * _det([row[:i] + row[i + 1:] for k, row in enumerate(m) if k != j])
             for j in range(size)] for i in range(size)]


def _circumradii_squared(values: Sequence, n: int, tol: float) -> list:
    """Squared circumradii of every feasible edge-length function over ``values``.

    Works on M = 2 * Gram (vertex-0 anchored): feasible iff the leading minors
    of M are positive, and R^2 = d^T adj(M) d / (2 det M) with d_i = h(0, i)^2.
    Exact inputs are scaled to integers first.
    """
    exact = is_exact(values)
    if exact:
        denom = math.lcm(*(Fraction(v).denominator for v in values))
        sq = [int(Fraction(v) * denom) ** 2 for v in values]
        unit = Fraction(1, denom * denom)
    else:
        sq = [float(v) ** 2 for v in values]
        unit = 1.0
    pairs = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]
    index = {p: k for k, p in enumerate(pairs)}
    scale = max(sq)
    out = []
    for combo in product(range(len(values)), repeat=len(pairs)):
        d = [sq[c] for c in combo]

        def d2(i, j):
            return 0 if i == j else d[index[(min(i, j), max(i, j))]]

        m = [[d2(0, i) + d2(0, j) - d2(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
        minors = [_det([row[:k] for row in m[:k]]) for k in range(1, n + 1)]
        if exact:
            if any(x <= 0 for x in minors):
                continue
        elif any(x <= tol * (2 * scale) ** (k + 1) for k, x in enumerate(minors)):
            continue
        diag = [d2(0, i) for i in range(1, n + 1)]
        adj = _adjugate(m)
        num = sum(diag[i] * adj[i][j] * diag[j] for i in range(n) for j in range(n))
        det = minors[-1]
        r2 = Fraction(num, 2 * det) * unit if exact else num / (2 * det)
        out.append(r2)
    return out


def excluded_radii_squared(s_prefix: Sequence, n: int, tol: float = DEFAULT_TOL) -> list:
    if n not in (2, 3):
        raise ValueError("excluded radii are enumerated for n in {2, 3}")
    values = sorted(set(s_prefix), key=float)
    if len(values) > 8:
        raise PrefixTooLarge(f"at most 8 lengths can be enumerated, got {len(values)}")
    if not values or any(not v > 0 for v in values):
        raise ValueError("lengths must be positive")
    r2s = _circumradii_squared(values, n, tol)
    if is_exact(values):
        return sorted(set(r2s))
    out = []
    for r2 in sorted(r2s):
        if not out or not close(out[-1], r2, 1e-12):
            out.append(r2)
    return out


def excluded_radii(s_prefix: Sequence, n: int, tol: float = DEFAULT_TOL) -> list:
    """Sorted, deduplicated circumradii of all n-simplices with every edge in
    ``s_prefix``; exact where the radius is rational."""
    return [sqrt(r2) for r2 in excluded_radii_squared(s_prefix, n, tol)]


# --- finite forcing propagation -------------------------------------------

@dataclass(frozen=True)
class FiniteConfig:
    points: tuple
    colors: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = as_points(self.points) if self.points else ()
        if len(set(pts)) != len(pts):
            raise ValueError("configuration points must be distinct")
        for i in self.colors:
            if not 0 <= i < len(pts):
                raise ValueError(f"color assigned to missing point {i}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "colors", dict(sorted(self.colors.items())))

    @property
    def exact(self) -> bool:
        return all(is_exact(p) for p in self.points)

    def to_json(self) -> list:
        out = []
        for i, p in enumerate(self.points):
            item = {"coords": [format_scalar(x) for x in p]}
            if i in self.colors:
                item["color"] = self.colors[i]
            out.append(item)
        return out

    @classmethod
    def from_json(cls, items: list, mode: str = EXACT) -> "FiniteConfig":
        pts, colors = [], {}
        for i, item in enumerate(items):
            pts.append(tuple(parse_scalar(x, mode) for x in item["coords"]))
            if item.get("color") is not None:
                colors[i] = int(item["color"])
        return cls(tuple(pts), colors)


@dataclass(frozen=True)
class Certificate:
    """Points ``witnesses`` of color ``color`` all at squared distance ``radius_sq``
    from point ``center``."""

    center: int
    radius_sq: object
    color: int
    witnesses: tuple

    def to_json(self) -> dict:
        return {"center": self.center, "radius_sq": format_scalar(self.radius_sq), "color": self.color,
                "witnesses": list(self.witnesses)}


@dataclass(frozen=True)
class Contradiction:
    """Point ``point`` is forced to two colors (or away from its assigned color)."""

    point: int
    certificates: tuple
    assigned_color: int | None = None

    def to_json(self) -> dict:
        out = {"point": self.point, "certificates": [c.to_json() for c in self.certificates]}
        if self.assigned_color is not None:
            out["assigned_color"] = self.assigned_color
        return out


@dataclass
class PropagationResult:
    config: FiniteConfig
    rounds: int
    fixpoint_round: int
    contradiction: Contradiction | None = None
    history: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"config": self.config.to_json(), "rounds": self.rounds, "fixpoint_round": self.fixpoint_round,
               "history": [{str(k): v for k, v in h.items()} for h in self.history]}
        if self.contradiction is not None:
            out["contradiction"] = self.contradiction.to_json()
        return out


def radius_admissible(radii: AdmissibleSet, r2, tol: float = DEFAULT_TOL) -> bool:
    """Radius membership from a squared radius; exact for rational interval bounds."""
    if isinstance(radii, Interval) and is_exact([r2]) and all(
            is_exact([b]) or math.isinf(b) for b in (radii.lo, radii.hi)):
        lo2, hi2 = radii.lo ** 2, radii.hi if math.isinf(radii.hi) else radii.hi ** 2
        above = r2 >= lo2 if radii.lo_closed else r2 > lo2
        below = r2 <= hi2 if radii.hi_closed else r2 < hi2
        return above and below and r2 > 0
    return radii.contains(sqrt(r2), tol)


def _spheres_about(points, i: int, radii, tol: float) -> list[tuple[object, list[int]]]:
    """Group the other points by their squared distance from point i."""
    exact = all(is_exact(p) for p in points)
    dists = [(sqdist(points[i], points[j]), j) for j in range(len(points)) if j != i]
    groups: list[tuple[object, list[int]]] = []
    if exact:
        by = defaultdict(list)
        for d2, j in dists:
            by[d2].append(j)
        groups = sorted(by.items())
    else:
        for d2, j in sorted(dists):
            if groups and close(groups[-1][0], d2, tol):
                groups[-1][1].append(j)
            else:
                groups.append((d2, [j]))
    return [(d2, js) for d2, js in groups if radius_admissible(radii, d2, tol)]


def propagate(cfg: FiniteConfig, X: int | None, Y: int, radii: AdmissibleSet,
              tol: float = DEFAULT_TOL) -> PropagationResult:
    """Synchronous forcing rounds on a finite configuration.

    In each round, every point p with Y or more points of one color c on an
    admissible sphere about p is forced to c; all deductions of a round are
    computed from the coloring at its start.  Stops at a fixpoint or at the first
    contradiction.  ``rounds`` counts rounds that colored something;
    ``fixpoint_round`` is the round that found nothing new.
    """
    if Y < 1:
        raise ValueError("Y must be >= 1")
    if X is not None and any(not 1 <= c <= X for c in cfg.colors.values()):
        raise ValueError(f"colors must lie in 1..{X}")
    pts = cfg.points
    colors = dict(cfg.colors)
    spheres = [_spheres_about(pts, i, radii, tol) for i in range(len(pts))]
    history = [dict(colors)]
    rounds = 0
    for round_no in range(1, len(pts) + 2):
        forced: dict[int, dict[int, Certificate]] = {}
        for i in range(len(pts)):
            for d2, members in spheres[i]:
                by_color = defaultdict(list)
                for j in members:
                    if j in colors:
                        by_color[colors[j]].append(j)
                for c in sorted(by_color):
                    if len(by_color[c]) >= Y:
                        forced.setdefault(i, {}).setdefault(c, Certificate(i, d2, c, tuple(by_color[c][:Y])))
        for i in sorted(forced):
            certs = forced[i]
            assigned = colors.get(i)
            if len(certs) > 1 or (assigned is not None and set(certs) != {assigned}):
                bad = tuple(certs[c] for c in sorted(certs) if len(certs) > 1 or c != assigned)
                result_cfg = FiniteConfig(pts, colors)
                return PropagationResult(result_cfg, rounds, 0,
                                         Contradiction(i, bad, assigned if assigned not in certs or len(certs) == 1 else None),
                                         history)
        new = {i: next(iter(c)) for i, c in forced.items() if i not in colors}
        if not new:
            return PropagationResult(FiniteConfig(pts, colors), rounds, round_no if pts else 0, None, history)
        colors.update(new)
        rounds += 1
        history.append(dict(colors))
    raise RuntimeError("propagation failed to reach a fixpoint")


def validate_contradiction(result: PropagationResult, Y: int, radii: AdmissibleSet,
                           tol: float = DEFAULT_TOL) -> bool:
    """Re-check a contradiction's certificates against the configuration."""
    con = result.contradiction
    if con is None:
        return False
    pts, colors = result.config.points, result.config.colors
    forced = set()
    for cert in con.certificates:
        if cert.center != con.point or len(cert.witnesses) < Y:
            return False
        if not radius_admissible(radii, cert.radius_sq, tol):
            return False
        for j in cert.witnesses:
            if colors.get(j) != cert.color or not close(sqdist(pts[con.point], pts[j]), cert.radius_sq, tol):
                return False
        forced.add(cert.color)
    if con.assigned_color is not None:
        if colors.get(con.point) != con.assigned_color:
            return False
        forced.add(con.assigned_color)
    return len(forced) >= 2
