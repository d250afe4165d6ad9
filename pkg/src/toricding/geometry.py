"""Exact rational polytope kernel.

Vertex enumeration, triangulation, volumes, barycenters and exact
integration of polynomials of total degree <= 2 over bounded rational
H-polytopes.  All arithmetic is over fractions.Fraction; floats never
enter this module.  Intended for desk-scale dimensions (n <= 5).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import DegreeTooHigh, DimensionMismatch, EmptyPolytope, UnboundedPolytope

Rat = Fraction
Point = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _as_point(coords: Iterable) -> Point:
    return tuple(_frac(c) for c in coords)


@dataclass(frozen=True)
class AffineFn:
    """x -> <gradient, x> + constant."""

    gradient: tuple[Fraction, ...]
    constant: Fraction

    @staticmethod
    def make(gradient: Iterable, constant=0) -> "AffineFn":
        return AffineFn(tuple(_frac(g) for g in gradient), _frac(constant))

    @staticmethod
    def const(value, dim: int) -> "AffineFn":
        return AffineFn((Fraction(0),) * dim, _frac(value))

    def __call__(self, x: Sequence) -> Fraction:
        if len(x) != len(self.gradient):
            raise DimensionMismatch(f"point has dim {len(x)}, affine has dim {len(self.gradient)}")
        return sum((g * _frac(c) for g, c in zip(self.gradient, x)), self.constant)

    def shift(self, rho: Sequence) -> "AffineFn":
        """Add the linear function <rho, x>."""
        if len(rho) != len(self.gradient):
            raise DimensionMismatch("tilt vector has wrong length")
        return AffineFn(tuple(g + _frac(r) for g, r in zip(self.gradient, rho)), self.constant)

    @property
    def is_constant(self) -> bool:
        return all(g == 0 for g in self.gradient)


def _primitive(normal: Sequence[Fraction], rhs: Fraction) -> tuple[tuple[int, ...], Fraction]:
    """Scale <normal, x> <= rhs so the normal is a primitive integer vector."""
    fracs = [_frac(a) for a in normal]
    if all(a == 0 for a in fracs):
        raise ValueError("zero facet normal")
    denom_lcm = 1
    for a in fracs:
        denom_lcm = denom_lcm * a.denominator // gcd(denom_lcm, a.denominator)
    ints = [int(a * denom_lcm) for a in fracs]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    scale = Fraction(denom_lcm, g)
    return tuple(a // g for a in ints), _frac(rhs) * scale


@dataclass(frozen=True)
class HPolytope:
    """Bounded rational polytope {x : <normal_i, x> <= rhs_i}.

    Facet normals are primitive integer vectors; facets are sorted and
    deduplicated, so equal polytope descriptions compare equal.
    """

    dim: int
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]

    @staticmethod
    def from_inequalities(dim: int, rows: Iterable[tuple[Sequence, object]]) -> "HPolytope":
        tight: dict[tuple[int, ...], Fraction] = {}
        for normal, rhs in rows:
            if len(normal) != dim:
                raise DimensionMismatch("facet normal has wrong length")
            n, r = _primitive(normal, _frac(rhs))
            if n in tight:
                tight[n] = min(tight[n], r)
            else:
                tight[n] = r
        return HPolytope(dim, tuple(sorted(tight.items())))

    def contains(self, x: Sequence) -> bool:
        x = _as_point(x)
        return all(_dot(n, x) <= r for n, r in self.facets)

    def strictly_contains(self, x: Sequence) -> bool:
        x = _as_point(x)
        return all(_dot(n, x) < r for n, r in self.facets)

    def clip(self, normal: Sequence, rhs) -> "HPolytope":
        """Intersect with the halfspace <normal, x> <= rhs."""
        return HPolytope.from_inequalities(self.dim, list(self.facets) + [(normal, rhs)])


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((_frac(x) * _frac(y) for x, y in zip(a, b)), Fraction(0))


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination; returns None when the matrix is singular."""
    n = len(rows)
    m = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [v / inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col]
        m[rank] = [v / inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


def _nullspace_direction(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero vector orthogonal to all rows, or None when rank is full."""
    n = len(rows[0])
    m = [row[:] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col]
        m[rank] = [v / inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    if rank == n:
        return None
    free = next(c for c in range(n) if c not in pivots)
    d = [Fraction(0)] * n
    d[free] = Fraction(1)
    for r, col in enumerate(pivots):
        d[col] = -m[r][free]
    return d


def _assert_bounded(P: HPolytope) -> None:
    """Raise UnboundedPolytope when the recession cone is nontrivial.

    The cone {d : Ld <= 0} is nontrivial iff L has rank < n (lineality)
    or some (n-1)-subset of normals carries an extreme ray.
    """
    normals = [[Fraction(a) for a in n] for n, _ in P.facets]
    if not normals or _matrix_rank(normals) < P.dim:
        raise UnboundedPolytope("facet normals do not span the ambient space")
    if P.dim == 1:
        # rank 1 in 1-d: need both a <= and a >= constraint
        if not any(n[0] > 0 for n, _ in P.facets) or not any(n[0] < 0 for n, _ in P.facets):
            raise UnboundedPolytope("interval missing a bound")
        return
    for subset in itertools.combinations(normals, P.dim - 1):
        d = _nullspace_direction([row[:] for row in subset])
        if d is None:
            continue
        for cand in (d, [-v for v in d]):
            if all(_dot(n, cand) <= 0 for n in normals):
                raise UnboundedPolytope(f"recession direction {tuple(cand)}")


@lru_cache(maxsize=None)
def vertices(P: HPolytope) -> tuple[Point, ...]:
    """All points where >= dim facets are tight and every facet holds.

    Exhaustive dim-subset intersection with a feasibility filter;
    deduplicated, sorted lexicographically.
    """
    if P.dim > 5:
        raise ValueError("vertex enumeration supports dim <= 5")
    _assert_bounded(P)
    found: set[Point] = set()
    rows = [([Fraction(a) for a in n], r) for n, r in P.facets]
    for subset in itertools.combinations(range(len(rows)), P.dim):
        mat = [rows[i][0] for i in subset]
        rhs = [rows[i][1] for i in subset]
        x = _solve_square(mat, rhs)
        if x is None:
            continue
        if all(_dot(n, x) <= r for n, r in rows):
            found.add(tuple(x))
    if not found:
        raise EmptyPolytope("no feasible vertex")
    return tuple(sorted(found))


def _facet_subpolytope(P: HPolytope, facet_index: int):
    """The facet as a full-rank polytope in dim-1 coordinates plus a lift map.

    Eliminates one coordinate using the facet equality <normal, x> = rhs.
    """
    normal, rhs = P.facets[facet_index]
    j = max(range(P.dim), key=lambda i: abs(normal[i]))
    nj = Fraction(normal[j])
    rows = []
    for i, (m, s) in enumerate(P.facets):
        if i == facet_index:
            continue
        # substitute x_j = (rhs - sum_{i != j} normal_i x_i) / normal_j
        coef = Fraction(m[j], nj)
        red = [Fraction(m[t]) - coef * normal[t] for t in range(P.dim) if t != j]
        red_rhs = Fraction(s) - coef * rhs
        if all(c == 0 for c in red):
            if red_rhs < 0:
                raise EmptyPolytope("facet hyperplane misses the polytope")
            continue
        rows.append((red, red_rhs))
    Q = HPolytope.from_inequalities(P.dim - 1, rows)

    def lift(y: Point) -> Point:
        full = list(y[:j]) + [Fraction(0)] + list(y[j:])
        xj = (rhs - sum(Fraction(normal[t]) * full[t] for t in range(P.dim) if t != j)) / nj
        full[j] = xj
        return tuple(full)

    return Q, lift


def _simplex_volume(simplex: Sequence[Point]) -> Fraction:
    n = len(simplex) - 1
    v0 = simplex[0]
    rows = [[simplex[i + 1][t] - v0[t] for t in range(n)] for i in range(n)]
    det = _det(rows)
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return abs(det) / fact


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / inv
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return det


@lru_cache(maxsize=None)
def triangulate(P: HPolytope) -> tuple[tuple[Point, ...], ...]:
    """Fan triangulation from the lexicographically-first vertex.

    Facets not containing the apex are triangulated recursively in
    facet coordinates and coned back.  Degenerate simplices are dropped,
    so a lower-dimensional input yields the empty triangulation.
    """
    verts = vertices(P)
    if len(verts) < P.dim + 1:
        return ()
    if P.dim == 1:
        return ((verts[0], verts[-1]),) if verts[0] != verts[-1] else ()
    apex = verts[0]
    simplices = []
    for i, (normal, rhs) in enumerate(P.facets):
        if _dot(normal, apex) == rhs:
            continue
        on_facet = [v for v in verts if _dot(normal, v) == rhs]
        if len(on_facet) < P.dim:
            continue  # not a genuine facet (redundant row)
        Q, lift = _facet_subpolytope(P, i)
        try:
            sub = triangulate(Q)
        except EmptyPolytope:
            continue
        for s in sub:
            simplex = (apex,) + tuple(lift(y) for y in s)
            if _simplex_volume(simplex) > 0:
                simplices.append(simplex)
    return tuple(simplices)


@lru_cache(maxsize=None)
def volume(P: HPolytope) -> Fraction:
    """Exact Lebesgue volume; 0 for lower-dimensional polytopes."""
    return sum((_simplex_volume(s) for s in triangulate(P)), Fraction(0))


@lru_cache(maxsize=None)
def barycenter(P: HPolytope) -> Point:
    """Exact centroid: volume-weighted average of simplex centroids."""
    tri = triangulate(P)
    total = sum((_simplex_volume(s) for s in tri), Fraction(0))
    if total == 0:
        raise EmptyPolytope("barycenter of a degenerate polytope")
    acc = [Fraction(0)] * P.dim
    for s in tri:
        vol = _simplex_volume(s)
        for t in range(P.dim):
            acc[t] += vol * sum(v[t] for v in s) / (P.dim + 1)
    return tuple(a / total for a in acc)


@dataclass(frozen=True)
class Quadratic:
    """Polynomial of total degree <= 2: constant + linear + quadratic part.

    quad maps index pairs (i, j) with i <= j to the coefficient of x_i x_j.
    """

    constant: Fraction
    linear: tuple[Fraction, ...]
    quad: tuple[tuple[tuple[int, int], Fraction], ...]

    @staticmethod
    def from_monomials(dim: int, coeffs: dict) -> "Quadratic":
        const = Fraction(0)
        lin = [Fraction(0)] * dim
        quad: dict[tuple[int, int], Fraction] = {}
        for mono, c in coeffs.items():
            mono = tuple(mono)
            if len(mono) > 2:
                raise DegreeTooHigh(f"monomial {mono} has degree {len(mono)} > 2")
            if any(i < 0 or i >= dim for i in mono):
                raise DimensionMismatch(f"monomial index out of range in {mono}")
            if len(mono) == 0:
                const += _frac(c)
            elif len(mono) == 1:
                lin[mono[0]] += _frac(c)
            else:
                key = (min(mono), max(mono))
                quad[key] = quad.get(key, Fraction(0)) + _frac(c)
        return Quadratic(const, tuple(lin), tuple(sorted(quad.items())))

    @staticmethod
    def product_of_affines(a: AffineFn, b: AffineFn) -> "Quadratic":
        dim = len(a.gradient)
        coeffs: dict[tuple, Fraction] = {(): a.constant * b.constant}
        for i in range(dim):
            coeffs[(i,)] = a.gradient[i] * b.constant + b.gradient[i] * a.constant
        for i in range(dim):
            for j in range(dim):
                key = (min(i, j), max(i, j))
                coeffs[key] = coeffs.get(key, Fraction(0)) + a.gradient[i] * b.gradient[j]
        return Quadratic.from_monomials(dim, coeffs)

    def __call__(self, x: Sequence) -> Fraction:
        x = _as_point(x)
        val = self.constant + sum(l * c for l, c in zip(self.linear, x))
        for (i, j), c in self.quad:
            val += c * x[i] * x[j]
        return val


def _simplex_integrals(simplex: Sequence[Point]):
    """(volume, first moments, second moments) over one simplex.

    Uses the closed-form Beta/multinomial integrals of barycentric
    coordinates: for vertices w_0..w_n,
      int x_i       = vol * (sum_a w_ai) / (n+1)
      int x_i x_j   = vol * (sum_a w_ai w_aj + (sum_a w_ai)(sum_a w_aj))
                      / ((n+1)(n+2))
    """
    n = len(simplex) - 1
    vol = _simplex_volume(simplex)
    sums = [sum(w[i] for w in simplex) for i in range(n)]
    first = [vol * s / (n + 1) for s in sums]
    second = {}
    for i in range(n):
        for j in range(i, n):
            cross = sum(w[i] * w[j] for w in simplex)
            second[(i, j)] = vol * (cross + sums[i] * sums[j]) / ((n + 1) * (n + 2))
    return vol, first, second


def integrate_quadratic(P: HPolytope, q: Quadratic) -> Fraction:
    """Exact integral of a degree <= 2 polynomial over P."""
    if len(q.linear) != P.dim:
        raise DimensionMismatch("polynomial dimension does not match polytope")
    total = Fraction(0)
    for s in triangulate(P):
        vol, first, second = _simplex_integrals(s)
        val = q.constant * vol
        val += sum(c * first[i] for i, c in enumerate(q.linear))
        for (i, j), c in q.quad:
            val += c * second[(i, j)]
        total += val
    return total


def integrate_affine(P: HPolytope, a: AffineFn) -> Fraction:
    """Exact integral of an affine function: volume times value at centroid."""
    vol = volume(P)
    if vol == 0:
        return Fraction(0)
    return vol * a(barycenter(P))


def region_subdivision(P: HPolytope, affines: Sequence[AffineFn]):
    """Linearity regions of min(affines) on P.

    Returns [(region, affine)] with empty and lower-dimensional regions
    pruned; region volumes sum to volume(P).
    """
    return list(_region_subdivision_cached(P, tuple(affines)))


@lru_cache(maxsize=None)
def _region_subdivision_cached(P: HPolytope, affines: tuple[AffineFn, ...]):
    if not affines:
        raise ValueError("need at least one affine piece")
    uniq: list[AffineFn] = []
    for a in affines:
        if len(a.gradient) != P.dim:
            raise DimensionMismatch("affine dimension does not match polytope")
        if a not in uniq:
            uniq.append(a)
    out = []
    for j, aj in enumerate(uniq):
        rows = list(P.facets)
        dominated = False
        for i, ai in enumerate(uniq):
            if i == j:
                continue
            # a_j <= a_i  <=>  <g_j - g_i, x> <= c_i - c_j
            diff = [gj - gi for gj, gi in zip(aj.gradient, ai.gradient)]
            if all(d == 0 for d in diff):
                if aj.constant > ai.constant:  # parallel and strictly above
                    dominated = True
                    break
                continue
            rows.append((diff, ai.constant - aj.constant))
        if dominated:
            continue
        R = HPolytope.from_inequalities(P.dim, rows)
        try:
            if volume(R) > 0:
                out.append((R, aj))
        except EmptyPolytope:
            continue
    return tuple(out)


def facets_from_vertices(points: Sequence[Sequence]) -> HPolytope:
    """H-representation of the convex hull of a full-dimensional point set."""
    pts = sorted(set(_as_point(p) for p in points))
    if not pts:
        raise EmptyPolytope("no points")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("points of mixed dimension")

    def is_facet(normal, rhs):
        tight = [p for p in pts if _dot(normal, p) == rhs]
        if len(tight) < dim:
            return False
        span = [[p[t] - tight[0][t] for t in range(dim)] for p in tight[1:]]
        return _matrix_rank(span) == dim - 1 if span else dim == 1

    rows = []
    for subset in itertools.combinations(pts, dim):
        if dim == 1:
            normal = [Fraction(1)]
        else:
            base = subset[0]
            span = [[p[t] - base[t] for t in range(dim)] for p in subset[1:]]
            normal = _nullspace_direction(span)
            if normal is None:
                continue
        rhs = _dot(normal, subset[0])
        values = [_dot(normal, p) - rhs for p in pts]
        if all(v <= 0 for v in values) and is_facet(normal, rhs):
            rows.append((normal, rhs))
        if all(v >= 0 for v in values) and is_facet(normal, rhs):
            rows.append(([-c for c in normal], -rhs))
    if not rows:
        raise EmptyPolytope("points do not span a full-dimensional hull")
    P = HPolytope.from_inequalities(dim, rows)
    try:
        degenerate = volume(P) == 0
    except UnboundedPolytope:
        degenerate = True
    if degenerate:
        raise EmptyPolytope("hull is lower-dimensional")
    return P
