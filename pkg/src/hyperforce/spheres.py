"""Spheres, sub-spheres and caps, plus the on-sphere constructions that serve
as witnesses: inscribed regular simplices, right simplices inside caps, chains
of nested sub-spheres and volume-targeted simplices.

Everything here is float geometry on numpy arrays.  Randomness always comes
from an explicit seed or ``numpy.random.Generator``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass

import numpy as np

from .geometry import Simplex, Sphere, cm_volume
from .scalar import DEFAULT_TOL

__all__ = [
    "Sphere", "SubSphere", "Cap", "Empty", "TangentPoint",
    "ConcentricSpheres", "ZeroRadius", "OutOfRange", "NoSmallLength", "TargetTooLarge",
    "as_subsphere", "sphere_intersect", "intersect_subsphere", "sample_uniform",
    "random_rotation", "rotation_taking", "inscribed_regular", "regular_edge_ratio", "h_edge",
    "cap_contains_right_simplex", "cap_right_simplex", "right_simplex_on_sphere",
    "chain_construction", "volume_witness", "delta_simplex",
]


class ConcentricSpheres(ValueError):
    pass


class ZeroRadius(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class NoSmallLength(ValueError):
    """The admissible length set has no member below the required room bound."""


class TargetTooLarge(ValueError):
    pass


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, eq=False)
class SubSphere:
    """A k-sphere: points of the affine flat ``center + span(basis)`` at distance
    ``radius`` from ``center``.  ``basis`` holds k+1 orthonormal rows."""

    center: np.ndarray
    radius: float
    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "basis", np.atleast_2d(np.asarray(self.basis, dtype=float)))
        if self.radius < 0:
            raise ValueError("sub-sphere radius must be nonnegative")

    @property
    def k(self) -> int:
        return self.basis.shape[0] - 1

    @property
    def n(self) -> int:
        return self.center.shape[0]

    def residual(self, point) -> float:
        """Largest of the distance-to-radius error and the distance off the flat."""
        d = np.asarray(point, dtype=float) - self.center
        inflat = self.basis @ d
        off = np.linalg.norm(d - inflat @ self.basis)
        return max(abs(np.linalg.norm(d) - self.radius), float(off))


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True, eq=False)
class TangentPoint:
    point: np.ndarray


def as_subsphere(s) -> SubSphere:
    if isinstance(s, SubSphere):
        return s
    return SubSphere(s.center_array, float(s.radius), np.eye(s.n))


def _radius(s) -> float:
    return float(s.radius)


def _center(s) -> np.ndarray:
    return s.center if isinstance(s, SubSphere) else s.center_array


@dataclass(frozen=True, eq=False)
class Cap:
    """Open cap {x on sphere : |x - pole| < euclid_radius}."""

    sphere: object
    pole: np.ndarray
    euclid_radius: float

    def __post_init__(self):
        object.__setattr__(self, "pole", np.asarray(self.pole, dtype=float))
        r = _radius(self.sphere)
        if not 0 < self.euclid_radius <= 2 * r * (1 + 1e-12):
            raise ValueError("cap radius must lie in (0, 2 * sphere radius]")
        if as_subsphere(self.sphere).residual(self.pole) > 1e-9 * (1 + r):
            raise ValueError("pole is not on the sphere")

    @classmethod
    def from_delta(cls, sphere, pole, delta: float) -> "Cap":
        """The cap of Euclidean radius delta * r * sqrt(2)."""
        return cls(sphere, pole, delta * _radius(sphere) * math.sqrt(2))

    def contains(self, point, tol: float = DEFAULT_TOL) -> bool:
        r = _radius(self.sphere)
        on = as_subsphere(self.sphere).residual(point) <= tol * (1 + r)
        return on and float(np.linalg.norm(np.asarray(point, dtype=float) - self.pole)) < self.euclid_radius


def _complement(u: np.ndarray) -> np.ndarray:
    """Orthonormal rows spanning the complement of unit vector u."""
    _, _, vt = np.linalg.svd(u[None, :])
    return vt[1:]


def intersect_subsphere(s, q, r: float, tol: float = DEFAULT_TOL):
    """Intersect a (sub-)sphere with the sphere S_r(q) of the ambient space.

    Returns :class:`Empty`, :class:`TangentPoint` or a :class:`SubSphere` of one
    dimension less.
    """
    sub = as_subsphere(s)
    if sub.k < 1:
        raise ValueError("cannot intersect a point pair; k must be >= 1")
    q = np.asarray(q, dtype=float)
    y = q - sub.center
    yf = sub.basis @ y
    off2 = float(y @ y - yf @ yf)
    rho = sub.radius
    rf2 = r * r - max(off2, 0.0)
    scale = max(rho, r, 1e-300)
    if rf2 < -tol * scale * scale:
        return Empty()
    rf = math.sqrt(max(rf2, 0.0))
    d = float(np.linalg.norm(yf))
    if d <= tol * scale:
        raise ConcentricSpheres("spheres share a center")
    u_flat = yf / d
    u = u_flat @ sub.basis
    if d > rho + rf + tol * scale or d < abs(rho - rf) - tol * scale:
        return Empty()
    x = (d * d + rho * rho - rf * rf) / (2 * d)
    new_r2 = rho * rho - x * x
    if abs(d - (rho + rf)) <= tol * scale or abs(d - abs(rho - rf)) <= tol * scale or new_r2 <= 0:
        return TangentPoint(sub.center + x * u)
    basis = _complement(u_flat) @ sub.basis
    return SubSphere(sub.center + x * u, math.sqrt(new_r2), basis)


def sphere_intersect(a: Sphere, b: Sphere, tol: float = DEFAULT_TOL):
    """S_R(p) cap S_r(q): empty, a tangent point, or an (n-2)-sphere in the
    hyperplane orthogonal to the line of centers."""
    if a.n != b.n:
        raise ValueError("spheres live in different dimensions")
    return intersect_subsphere(a, b.center_array, float(b.radius), tol)


def sample_uniform(s, count: int, seed=None) -> np.ndarray:
    """``count`` points uniform on the (sub-)sphere: normalized Gaussian
    directions inside the flat.  Radius 0 yields the center repeated."""
    if count < 1:
        raise ValueError("count must be >= 1")
    sub = as_subsphere(s)
    if sub.radius == 0:
        return np.tile(sub.center, (count, 1))
    rng = _rng(seed)
    g = rng.standard_normal((count, sub.k + 1))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero draw has probability zero; redraw defensively
    while np.any(norms == 0):
        g[norms[:, 0] == 0] = rng.standard_normal((int(np.sum(norms == 0)), sub.k + 1))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
    return sub.center + sub.radius * (g / norms) @ sub.basis


def random_rotation(dim: int, seed=None) -> np.ndarray:
    """Haar-uniform element of SO(dim) from a sign-corrected QR of a Gaussian matrix."""
    if dim == 1:
        return np.ones((1, 1))
    rng = _rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def rotation_taking(u, w, seed=None) -> np.ndarray:
    """A rotation sending unit vector u to unit vector w, random about w."""
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    dim = u.shape[0]
    rng = _rng(seed)

    def frame(v, rand):
        m = np.column_stack([v, rand])
        q, r = np.linalg.qr(m)
        q = q * np.sign(np.diag(r))
        return q

    fu = frame(u, np.eye(dim)[:, :dim - 1] if dim > 1 else np.zeros((1, 0)))
    fw = frame(w, rng.standard_normal((dim, dim - 1)))
    rot = fw @ fu.T
    if np.linalg.det(rot) < 0 and dim > 1:
        fw[:, -1] = -fw[:, -1]
        rot = fw @ fu.T
    return rot


@lru_cache(maxsize=None)
def _regular_unit_simplex(m: int) -> np.ndarray:
    """m+1 vertices of a regular m-simplex in R^m, centered at 0, circumradius 1."""
    e = np.eye(m + 1) - 1.0 / (m + 1)
    # orthonormal basis of the hyperplane sum(x) = 0
    _, _, vt = np.linalg.svd(np.ones((1, m + 1)))
    pts = e @ vt[1:].T
    pts = pts / np.linalg.norm(pts[0])
    pts.flags.writeable = False
    return pts


def regular_edge_ratio(m: int) -> float:
    """Edge length over circumradius of a regular m-simplex."""
    return math.sqrt(2 * (m + 1) / m)


def inscribed_regular(s, seed=None) -> Simplex:
    """Regular (k+1)-simplex inscribed in a k-sphere, randomly oriented per seed."""
    sub = as_subsphere(s)
    if sub.radius <= 0:
        raise ZeroRadius("cannot inscribe a simplex in a sphere of radius 0")
    m = sub.k + 1
    pts = _regular_unit_simplex(m)
    rot = random_rotation(m, seed)
    local = sub.radius * pts @ rot.T
    return Simplex(tuple(map(tuple, sub.center + local @ sub.basis)))


def h_edge(R: float, t: float, n: int) -> float:
    """Edge of the regular (n-1)-simplex inscribed in S_R(O) cap S_t(p0), p0 on S_R(O).

    The intersection has radius t * sqrt(1 - t^2 / (4 R^2)).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 < t < 2 * R:
        raise OutOfRange(f"need 0 < t < 2R, got t={t}, R={R}")
    rho = t * math.sqrt(1 - t * t / (4 * R * R))
    return rho * math.sqrt(2 * n / (n - 1))


def right_simplex_on_sphere(sphere, apex_dir, seed=None) -> Simplex:
    """Right n-simplex with equal legs a = 2r/sqrt(n) inscribed in an n-dimensional
    sphere (or in the flat of a sub-sphere), apex at ``center + r * apex_dir``.

    With apex at the origin and legs a*e_i the circumcenter is (a/2)(1,...,1),
    so the apex sits in direction -(1,...,1) from the circumcenter.
    """
    sub = as_subsphere(sphere)
    m = sub.k + 1
    r = sub.radius
    a = 2 * r / math.sqrt(m)
    local = np.vstack([np.zeros(m), a * np.eye(m)]) - (a / 2) * np.ones(m)
    apex_dir = np.asarray(apex_dir, dtype=float)
    apex_flat = sub.basis @ apex_dir
    apex_flat = apex_flat / np.linalg.norm(apex_flat)
    rot = rotation_taking(-np.ones(m) / math.sqrt(m), apex_flat, seed)
    pts = sub.center + (local @ rot.T) @ sub.basis
    return Simplex(tuple(map(tuple, pts)))


def cap_right_simplex(sphere: Sphere, pole, delta: float, seed=None) -> Simplex | None:
    """Right n-simplex inside the cap of radius delta*r*sqrt(2) about ``pole``,
    or None when delta <= sqrt(2/n) (the legs 2r/sqrt(n) do not fit)."""
    n = sphere.n
    if n < 3:
        raise ValueError("the cap construction needs n >= 3")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if delta <= math.sqrt(2 / n):
        return None
    c = sphere.center_array
    r = float(sphere.radius)
    direction = (np.asarray(pole, dtype=float) - c) / r
    return right_simplex_on_sphere(sphere, direction, seed)


def cap_contains_right_simplex(r: float, delta: float, n: int, seed=None) -> tuple[bool, Simplex | None]:
    """Whether the cap of radius delta*r*sqrt(2) on S_r(O) in R^n holds a right
    n-simplex of circumradius r, with the witness."""
    sphere = Sphere(tuple([0.0] * n), r)
    pole = np.zeros(n)
    pole[0] = r
    s = cap_right_simplex(sphere, pole, delta, seed)
    return s is not None, s


def chain_construction(s0: Sphere, cap: Cap, lengths, seed=0) -> Simplex:
    """n-simplex inside ``cap`` built on a decreasing chain of sub-spheres.

    p0 is the pole; each step intersects the current sub-sphere with
    S_{r_i}(p_i), where r_i is the largest admissible length below half the room
    bound (the cap radius first, then the current sub-sphere radius).  Every edge
    d(p_i, p_j), i < j, equals r_i; only the last pair's edge is unconstrained.
    """
    rng = _rng(seed)
    n = s0.n
    pts = [cap.pole]
    current = as_subsphere(s0)
    bound = cap.euclid_radius
    for step in range(n - 1):
        r = lengths.pick_below(bound / 2)
        if r is None:
            raise NoSmallLength(f"no admissible length below {bound / 2!r}")
        nxt = intersect_subsphere(current, pts[-1], float(r))
        if not isinstance(nxt, SubSphere):
            raise RuntimeError("chain step produced no sub-sphere")
        if step < n - 2:
            pts.append(sample_uniform(nxt, 1, rng)[0])
            current = nxt
            bound = nxt.radius
        else:
            pts.append(nxt.center + nxt.radius * nxt.basis[0])
            pts.append(nxt.center - nxt.radius * nxt.basis[0])
    return Simplex(tuple(map(tuple, pts)))


def delta_simplex(s0: Sphere, pole, r: float, m: int, seed=0) -> Simplex:
    """p0 plus the first m vertices of a regular (n-1)-simplex inscribed in
    S0 cap S_r(p0)."""
    sub = intersect_subsphere(s0, pole, r)
    if not isinstance(sub, SubSphere):
        raise OutOfRange(f"S_{r}(p0) does not cut the sphere in a sub-sphere")
    ring = inscribed_regular(sub, seed)
    return Simplex((tuple(np.asarray(pole, dtype=float)),) + ring.vertices[:m])


def volume_witness(s0: Sphere, cap: Cap, m: int, v: float, seed=0, max_iter: int = 200) -> Simplex:
    """Simplex Delta(r) inside the cap with m-volume v, r found by bisection.

    Bisection stops once |vol - v| <= 1e-12 * v or the bracket stops shrinking.
    """
    n = s0.n
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}")
    if not v > 0:
        raise ValueError("target volume must be positive")
    R = float(s0.radius)
    r1 = min(cap.euclid_radius, 2 * R) * (1 - 1e-9)
    # the ring's orientation does not change the volume, so one seed serves all r
    vol = lambda r: float(cm_volume(delta_simplex(s0, cap.pole, r, m, seed)))
    vmax = vol(r1)
    if v >= vmax:
        raise TargetTooLarge(f"target {v!r} is not below the cap maximum {vmax!r}")
    lo, hi = 0.0, r1
    best = None
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        val = vol(mid)
        if best is None or abs(val - v) < abs(best[1] - v):
            best = (mid, val)
        if abs(val - v) <= 1e-12 * v:
            break
        if val < v:
            lo = mid
        else:
            hi = mid
    return delta_simplex(s0, cap.pole, best[0], m, seed)
