"""Extremal data of a Fano polytope.

The canonical anticanonical presentation is {x : <l_i, x> <= 1} with
primitive integer normals and the origin interior.  The extremal affine
function theta is the unique zero-mean affine function whose pairing
kills the relative Ding invariant of every torus product configuration:
its gradient solves the Gram system  cov . g = vol(P) . b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, NotCanonicalFano, OriginNotInterior, SingularGram
from .geometry import (
    AffineFn,
    HPolytope,
    Point,
    Quadratic,
    _frac,
    _solve_square,
    barycenter,
    integrate_quadratic,
    vertices,
    volume,
)


@dataclass(frozen=True)
class FanoPolytope:
    base: HPolytope

    @property
    def dim(self) -> int:
        return self.base.dim

    def vertices(self) -> tuple[Point, ...]:
        return vertices(self.base)

    def volume(self) -> Fraction:
        return volume(self.base)

    def barycenter(self) -> Point:
        return barycenter(self.base)

    def anticanonical_degree(self) -> Fraction:
        """L^n = n! * vol(P) for the canonical presentation."""
        f = 1
        for i in range(2, self.dim + 1):
            f *= i
        return f * self.volume()


def validate_fano(P: HPolytope) -> FanoPolytope:
    """Accept iff every normalized facet has rhs exactly 1.

    rhs <= 0 means the origin is not interior; any other rhs != 1 means
    the polytope is not in anticanonical presentation.
    """
    for normal, rhs in P.facets:
        if rhs <= 0:
            raise OriginNotInterior(f"facet {normal} has rhs {rhs} <= 0")
    for normal, rhs in P.facets:
        if rhs != 1:
            raise NotCanonicalFano(f"facet {normal} has rhs {rhs} != 1")
    # reject unbounded/empty input up front
    vertices(P)
    if volume(P) == 0:
        raise NotCanonicalFano("polytope is not full-dimensional")
    return FanoPolytope(P)


@dataclass(frozen=True)
class ExtremalData:
    b: Point
    cov: tuple[tuple[Fraction, ...], ...]
    theta: AffineFn
    vartheta: Fraction


@lru_cache(maxsize=None)
def covariance(P: FanoPolytope) -> tuple[tuple[Fraction, ...], ...]:
    """cov_ij = int_P (x_i - b_i)(x_j - b_j) dx, exact."""
    n = P.dim
    b = P.barycenter()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            q = Quadratic.product_of_affines(
                _coordinate_affine(n, i, -b[i]), _coordinate_affine(n, j, -b[j])
            )
            row.append(integrate_quadratic(P.base, q))
        rows.append(tuple(row))
    return tuple(rows)


def _coordinate_affine(n: int, i: int, shift: Fraction) -> AffineFn:
    grad = [Fraction(0)] * n
    grad[i] = Fraction(1)
    return AffineFn(tuple(grad), shift)


@lru_cache(maxsize=None)
def extremal_affine(P: FanoPolytope) -> ExtremalData:
    """Solve cov . g = vol(P) . b; theta(x) = <g, x - b>; vartheta = max theta."""
    cov = covariance(P)
    b = P.barycenter()
    vol = P.volume()
    g = _solve_square([list(row) for row in cov], [vol * bi for bi in b])
    if g is None:
        raise SingularGram("covariance matrix is singular")
    theta = AffineFn(tuple(g), -sum(gi * bi for gi, bi in zip(g, b)))
    vartheta = max(theta(v) for v in P.vertices())
    return ExtremalData(b=b, cov=cov, theta=theta, vartheta=vartheta)


def futaki_pairing(P: FanoPolytope, a: Sequence) -> Fraction:
    """<a, b>: minus the Ding invariant of the product configuration <a, x>."""
    if len(a) != P.dim:
        raise DimensionMismatch("vector length does not match polytope dimension")
    b = P.barycenter()
    return sum((_frac(ai) * bi for ai, bi in zip(a, b)), Fraction(0))


def dh_of_vector_field(P: FanoPolytope, a: Sequence):
    """Pushforward of normalized Lebesgue measure under x -> <a, x - b>.

    A probability measure with exact mean 0 and second moment
    a^T cov a / vol(P).
    """
    from .functionals import PLConcave, dh_measure

    if len(a) != P.dim:
        raise DimensionMismatch("vector length does not match polytope dimension")
    b = P.barycenter()
    shift = -sum((_frac(ai) * bi for ai, bi in zip(a, b)), Fraction(0))
    affine = AffineFn(tuple(_frac(ai) for ai in a), shift)
    return dh_measure(PLConcave((affine,), P.base))
