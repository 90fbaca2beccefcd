"""Simplex kernel: volumes, circumspheres, shape predicates and edge-length realizability.

Points are tuples of scalars.  A point set is exact when every coordinate is
an ``int``/``Fraction``; then volumes, circumcenters and realizability are
decided in rational arithmetic.  Otherwise everything is float, compared with
a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .scalar import DEFAULT_TOL, Scalar, close, exact_sqrt, is_exact, is_exact_value, sqrt

Point = tuple


class DegenerateSimplex(ValueError):
    """Vertices are not affinely independent."""


class NotFullDimensional(ValueError):
    """Operation needs an n-simplex in R^n."""


class InfeasibleLengths(ValueError):
    """No simplex realizes the prescribed edge lengths."""


def as_point(coords, exact: bool | None = None) -> Point:
    values = list(np.asarray(coords, dtype=object).ravel()) if isinstance(coords, np.ndarray) else list(coords)
    if exact is None:
        exact = is_exact(values)
    if exact:
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)


def as_points(points: Iterable) -> tuple[Point, ...]:
    """Normalize a point list to one shared scalar mode."""
    raw = [list(p) for p in points]
    exact = all(is_exact(p) for p in raw)
    return tuple(as_point(p, exact) for p in raw)


def sub(p, q) -> tuple:
    return tuple(a - b for a, b in zip(p, q))


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0 if is_exact(u) and is_exact(v) else 0.0)


def sqdist(p, q):
    d = sub(p, q)
    return dot(d, d)


def dist(p, q) -> Scalar:
    return sqrt(sqdist(p, q))


# --- small linear algebra, exact or float ---------------------------------

def _exact_det(rows) -> Fraction:
    a = [[Fraction(x) for x in row] for row in rows]
    size = len(a)
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pivot = a[col][col]
        det *= pivot
        for r in range(col + 1, size):
            f = a[r][col] / pivot
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, size):
                    row_r[c] -= f * row_c[c]
    return det


def _exact_solve(a_rows, b) -> list[Fraction]:
    size = len(a_rows)
    a = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a_rows, b)]
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col] != 0), None)
        if piv is None:
            raise DegenerateSimplex("singular system")
        a[col], a[piv] = a[piv], a[col]
        pivot = a[col][col]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col] / pivot
                for c in range(col, size + 1):
                    a[r][c] -= f * a[col][c]
    return [a[i][size] / a[i][i] for i in range(size)]


def rank(rows: Sequence[Sequence], tol: float = DEFAULT_TOL) -> int:
    """Rank by pivoted elimination; exact for rationals, relative threshold for floats."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    exact = all(is_exact(r) for r in rows)
    if exact:
        a = [[Fraction(x) for x in r] for r in rows]
        thresh = 0
    else:
        a = [[float(x) for x in r] for r in rows]
        scale = max((abs(x) for r in a for x in r), default=0.0)
        thresh = tol * scale
    n_rows, n_cols = len(a), len(a[0])
    rk = 0
    for col in range(n_cols):
        if rk == n_rows:
            break
        piv = max(range(rk, n_rows), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) <= thresh:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for r in range(rk + 1, n_rows):
            f = a[r][col] / a[rk][col]
            if f:
                for c in range(col, n_cols):
                    a[r][c] -= f * a[rk][c]
        rk += 1
    return rk


# --- spheres ---------------------------------------------------------------

@dataclass(frozen=True)
class Sphere:
    """The sphere S_r(p) in R^n."""

    center: Point
    radius: Scalar

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise ValueError(f"sphere radius must be positive, got {self.radius!r}")
        if len(self.center) < 1:
            raise ValueError("sphere needs a center")

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def center_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.center])

    def residual(self, point) -> float:
        """|dist(center, point) - radius| in floats."""
        d = np.linalg.norm(np.asarray(point, dtype=float) - self.center_array)
        return abs(float(d) - float(self.radius))

    def contains_point(self, point, tol: float = DEFAULT_TOL) -> bool:
        if is_exact(point) and is_exact(self.center) and is_exact_value(self.radius):
            return sqdist(point, self.center) == Fraction(self.radius) ** 2
        return self.residual(point) <= tol * (1.0 + float(self.radius))


# --- simplices -------------------------------------------------------------

@dataclass(frozen=True)
class Simplex:
    """m+1 affinely independent points of R^n, 1 <= m <= n."""

    vertices: tuple

    def __post_init__(self):
        verts = as_points(self.vertices)
        if len(verts) < 2:
            raise DegenerateSimplex("a simplex needs at least two vertices")
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise ValueError("vertices have mismatched dimensions")
        if len(verts) - 1 > n:
            raise DegenerateSimplex(f"{len(verts)} points cannot be affinely independent in R^{n}")
        diffs = [sub(v, verts[0]) for v in verts[1:]]
        if rank(diffs) != len(diffs):
            raise DegenerateSimplex("vertices are affinely dependent")
        object.__setattr__(self, "vertices", verts)

    @property
    def m(self) -> int:
        return len(self.vertices) - 1

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def exact(self) -> bool:
        return is_exact(self.vertices[0])

    @property
    def array(self) -> np.ndarray:
        return np.array([[float(x) for x in v] for v in self.vertices])

    def sqdists(self) -> dict[tuple[int, int], Scalar]:
        return {(i, j): sqdist(self.vertices[i], self.vertices[j])
                for i, j in combinations(range(self.m + 1), 2)}


def _cm_matrix(sq: dict, size: int):
    zero = Fraction(0)
    mat = [[zero] * (size + 1) for _ in range(size + 1)]
    for i in range(1, size + 1):
        mat[0][i] = mat[i][0] = Fraction(1)
    for (i, j), d2 in sq.items():
        mat[i + 1][j + 1] = mat[j + 1][i + 1] = d2
    return mat


def cm_volume_squared(s: Simplex) -> Fraction:
    """Squared m-volume from the Cayley-Menger determinant, in exact arithmetic.

    Float coordinates are converted to their exact binary rationals first, so
    the only rounding in :func:`cm_volume` is the final square root.
    """
    m = s.m
    verts = [tuple(Fraction(x) for x in v) for v in s.vertices]
    sq = {(i, j): sqdist(verts[i], verts[j]) for i, j in combinations(range(m + 1), 2)}
    det = _exact_det(_cm_matrix(sq, m + 1))
    sign = -1 if (m + 1) % 2 else 1
    return sign * det / (2 ** m * math.factorial(m) ** 2)


def cm_volume(s: Simplex) -> Scalar:
    """m-volume of the simplex (exact when it is a rational number)."""
    v2 = cm_volume_squared(s)
    if s.exact:
        return sqrt(v2)
    return math.sqrt(v2)


def circumcenter_squared(s: Simplex) -> tuple[Point, Scalar]:
    """Circumcenter and squared circumradius of a full-dimensional simplex."""
    if s.m != s.n:
        raise NotFullDimensional(f"circumsphere needs m = n, got m={s.m}, n={s.n}")
    v0 = s.vertices[0]
    edges = [sub(v, v0) for v in s.vertices[1:]]
    rhs = [dot(e, e) / 2 for e in edges]
    if s.exact:
        rel = _exact_solve(edges, rhs)
        center = tuple(a + b for a, b in zip(v0, rel))
        return center, dot(rel, rel)
    rel = np.linalg.solve(np.array(edges, dtype=float), np.array(rhs, dtype=float))
    center = tuple(float(a + b) for a, b in zip(v0, rel))
    # mean squared distance to all vertices damps the solve's rounding
    arr = s.array
    r2 = float(np.mean(np.sum((arr - np.array(center)) ** 2, axis=1)))
    return center, r2


def circumsphere(s: Simplex) -> Sphere:
    center, r2 = circumcenter_squared(s)
    return Sphere(center, sqrt(r2))


def edge_lengths(s: Simplex) -> list[Scalar]:
    """All binom(m+1, 2) edge lengths, in lexicographic vertex-pair order."""
    return [sqrt(d2) for d2 in s.sqdists().values()]


def _scale(values) -> float:
    return max((abs(float(v)) for v in values), default=0.0)


def is_regular(s: Simplex, tol: float = DEFAULT_TOL) -> bool:
    sq = list(s.sqdists().values())
    scale = _scale(sq)
    return all(close(d, sq[0], tol, scale) for d in sq)


def is_isosceles(s: Simplex, tol: float = DEFAULT_TOL) -> int | None:
    """Lowest apex index: a vertex equidistant from all the others."""
    sq = s.sqdists()
    scale = _scale(sq.values())
    for apex in range(s.m + 1):
        ds = [sq[tuple(sorted((apex, j)))] for j in range(s.m + 1) if j != apex]
        if all(close(d, ds[0], tol, scale) for d in ds):
            return apex
    return None


def is_right(s: Simplex, tol: float = DEFAULT_TOL) -> int | None:
    """Lowest apex whose edge vectors to the other vertices are pairwise orthogonal."""
    verts = s.vertices
    for apex in range(s.m + 1):
        edges = [sub(v, verts[apex]) for j, v in enumerate(verts) if j != apex]
        scale = _scale(dot(e, e) for e in edges)
        if all(close(dot(a, b), 0, tol, scale) for a, b in combinations(edges, 2)):
            return apex
    return None


# --- edge-length functions -------------------------------------------------

def vertex_pairs(n: int) -> list[tuple[int, int]]:
    """The pairs (i, j), 0 <= i < j <= n, in lexicographic order."""
    return list(combinations(range(n + 1), 2))


@dataclass(frozen=True)
class EdgeLengthFunction:
    """Prescribed lengths h(i, j) for all vertex pairs of an n-simplex."""

    n: int
    values: tuple

    def __post_init__(self):
        vals = self.values
        if isinstance(vals, dict):
            vals = [vals[p] for p in vertex_pairs(self.n)]
        vals = tuple(vals)
        if len(vals) != math.comb(self.n + 1, 2):
            raise ValueError(f"need {math.comb(self.n + 1, 2)} lengths for n={self.n}, got {len(vals)}")
        if any(not v > 0 for v in vals):
            raise ValueError("edge lengths must be positive")
        exact = is_exact(vals)
        object.__setattr__(self, "values", tuple(Fraction(v) if exact else float(v) for v in vals))

    @property
    def exact(self) -> bool:
        return is_exact(self.values)

    def as_dict(self) -> dict[tuple[int, int], Scalar]:
        return dict(zip(vertex_pairs(self.n), self.values))

    def __getitem__(self, pair) -> Scalar:
        i, j = sorted(pair)
        return self.as_dict()[(i, j)]

    def gram(self) -> list[list]:
        """Gram matrix of the edge vectors from vertex 0."""
        h = self.as_dict()
        sq = {k: v * v for k, v in h.items()}

        def d2(i, j):
            return 0 if i == j else sq[(min(i, j), max(i, j))]

        half = Fraction(1, 2) if self.exact else 0.5
        return [[(d2(0, i) + d2(0, j) - d2(i, j)) * half for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]


def _ldl_pivots(g, exact: bool) -> list:
    """Pivots of the LDL^T factorization (no pivoting); G is PD iff all are > 0."""
    size = len(g)
    a = [[Fraction(x) if exact else float(x) for x in row] for row in g]
    pivots = []
    for k in range(size):
        p = a[k][k]
        pivots.append(p)
        if p == 0:
            return pivots
        for i in range(k + 1, size):
            f = a[i][k] / p
            for j in range(k + 1, size):
                a[i][j] -= f * a[k][j]
    return pivots


def feasible(h: EdgeLengthFunction, tol: float = DEFAULT_TOL) -> bool:
    """True iff some n-simplex in R^n realizes every prescribed distance."""
    g = h.gram()
    pivots = _ldl_pivots(g, h.exact)
    if len(pivots) < h.n:
        return False
    if h.exact:
        return all(p > 0 for p in pivots)
    scale = max(float(v) ** 2 for v in h.values)
    return all(p > tol * scale for p in pivots)


def realize(h: EdgeLengthFunction, tol: float = DEFAULT_TOL) -> Simplex:
    """Canonical realization: vertex 0 at the origin, vertex i in the span of the
    first i axes with positive i-th coordinate.

    Coordinates stay exact when every Cholesky pivot is a rational square.
    """
    if not feasible(h, tol):
        raise InfeasibleLengths(f"edge lengths {h.values} are not realizable in R^{h.n}")
    n = h.n
    g = h.gram()
    coords = None
    if h.exact:
        coords = _exact_cholesky(g)
    if coords is None:
        lower = np.linalg.cholesky(np.array(g, dtype=float))
        coords = [[float(x) for x in row] for row in lower]
        zero = 0.0
    else:
        zero = Fraction(0)
    verts = [tuple([zero] * n)] + [tuple(row) for row in coords]
    s = Simplex(tuple(verts))
    for (i, j), target in h.as_dict().items():
        if not close(sqdist(s.vertices[i], s.vertices[j]), target * target, tol * 10):
            raise RuntimeError(f"realization misses edge ({i},{j})")
    return s


def _exact_cholesky(g) -> list[list[Fraction]] | None:
    size = len(g)
    low = [[Fraction(0)] * size for _ in range(size)]
    for j in range(size):
        diag = Fraction(g[j][j]) - sum((low[j][k] ** 2 for k in range(j)), Fraction(0))
        root = exact_sqrt(diag)
        if root is None or root == 0:
            return None
        low[j][j] = root
        for i in range(j + 1, size):
            low[i][j] = (Fraction(g[i][j]) - sum((low[i][k] * low[j][k] for k in range(j)), Fraction(0))) / root
    return low


def circumradius_squared_from_lengths(h: EdgeLengthFunction) -> Scalar:
    """R^2 of the simplex realizing h, without placing coordinates.

    The circumcenter c = sum(lam_i e_i) solves G lam = diag(G) / 2, and then
    R^2 = lam . diag(G) / 2.
    """
    g = h.gram()
    diag = [g[i][i] for i in range(h.n)]
    if h.exact:
        lam = _exact_solve(g, [d / 2 for d in diag])
        return sum((a * d for a, d in zip(lam, diag)), Fraction(0)) / 2
    lam = np.linalg.solve(np.array(g, dtype=float), np.array(diag, dtype=float) / 2)
    return float(lam @ np.array(diag, dtype=float)) / 2


def cube_volume_bound(m: int, n: int, delta) -> float:
    """Upper bound (delta*sqrt(n))^m / m! on the m-volume of any m-simplex whose
    vertices lie in a closed cube of edge delta in R^n.

    Every edge vector from a vertex has length at most the cube diagonal, and the
    volume is at most the product of m such lengths over m!.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return (float(delta) * math.sqrt(n)) ** m / math.factorial(m)
