from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricding import (
    EmptyPolytope,
    HPolytope,
    Quadratic,
    UnboundedPolytope,
    barycenter,
    facets_from_vertices,
    integrate_quadratic,
    region_subdivision,
    triangulate,
    vertices,
    volume,
)
from toricding.errors import DegreeTooHigh
from toricding.geometry import _simplex_volume

from conftest import pl

rational = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def hp(dim, *rows):
    return HPolytope.from_inequalities(dim, [(r[:-1], r[-1]) for r in rows])


class TestVertices:
    def test_interval(self):
        P = hp(1, (1, 1), (-1, 1))
        assert vertices(P) == ((Fraction(-1),), (Fraction(1),))

    def test_p2_triangle(self):
        P = hp(2, (-1, 0, 1), (0, -1, 1), (1, 1, 1))
        assert vertices(P) == ((-1, -1), (-1, 2), (2, -1))

    def test_bl1p2_quadrilateral(self):
        P = hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1))
        assert vertices(P) == ((-2, 1), (0, 1), (1, -2), (1, 0))

    def test_every_vertex_feasible_and_facets_covered(self):
        P = hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1))
        verts = vertices(P)
        for v in verts:
            assert P.contains(v)
        for normal, rhs in P.facets:
            on_facet = [v for v in verts if sum(a * c for a, c in zip(normal, v)) == rhs]
            assert len(on_facet) >= P.dim

    def test_unbounded(self):
        with pytest.raises(UnboundedPolytope):
            vertices(hp(2, (1, 0, 1), (0, 1, 1)))

    def test_unbounded_halfline(self):
        with pytest.raises(UnboundedPolytope):
            vertices(hp(1, (1, 1)))

    def test_empty(self):
        with pytest.raises(EmptyPolytope):
            vertices(hp(1, (1, -1), (-1, -1)))

    def test_cube_3d(self):
        rows = []
        for i in range(3):
            e = [0, 0, 0]
            e[i] = 1
            rows.append(tuple(e) + (1,))
            e[i] = -1
            rows.append(tuple(e) + (1,))
        P = hp(3, *rows)
        assert len(vertices(P)) == 8
        assert volume(P) == 8


class TestVolume:
    def test_interval(self):
        assert volume(hp(1, (1, 1), (-1, 1))) == 2

    def test_p2(self):
        assert volume(hp(2, (-1, 0, 1), (0, -1, 1), (1, 1, 1))) == Fraction(9, 2)

    def test_bl1p2(self):
        assert volume(hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1))) == 4

    def test_simplex_volumes_sum(self):
        for P in [
            hp(2, (-1, 0, 1), (0, -1, 1), (1, 1, 1)),
            hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)),
            hp(2, (1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)),
        ]:
            tri = triangulate(P)
            assert sum(_simplex_volume(s) for s in tri) == volume(P)
            assert all(_simplex_volume(s) > 0 for s in tri)

    def test_triangulation_simplices_disjoint_interiors(self):
        # barycenter of each simplex lies in no other simplex
        P = hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1))
        tri = triangulate(P)

        def inside(simplex, x):
            # x strictly inside iff barycentric coordinates all positive
            v0 = simplex[0]
            rows = [[simplex[i + 1][t] - v0[t] for i in range(2)] for t in range(2)]
            det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
            rhs = [x[t] - v0[t] for t in range(2)]
            l1 = (rhs[0] * rows[1][1] - rhs[1] * rows[0][1]) / det
            l2 = (rows[0][0] * rhs[1] - rows[1][0] * rhs[0]) / det
            return l1 > 0 and l2 > 0 and l1 + l2 < 1

        for i, s in enumerate(tri):
            c = tuple(sum(v[t] for v in s) / Fraction(3) for t in range(2))
            for j, other in enumerate(tri):
                assert inside(other, c) == (i == j)


class TestBarycenter:
    def test_interval(self):
        assert barycenter(hp(1, (1, 1), (-1, 1))) == (0,)

    def test_p2_symmetric(self):
        assert barycenter(hp(2, (-1, 0, 1), (0, -1, 1), (1, 1, 1))) == (0, 0)

    def test_bl1p2(self):
        b = barycenter(hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)))
        assert b == (Fraction(-1, 12), Fraction(-1, 12))


class TestIntegrateQuadratic:
    def test_square_of_x(self):
        P = hp(1, (1, 1), (-1, 1))
        q = Quadratic.from_monomials(1, {(0, 0): 1})
        assert integrate_quadratic(P, q) == Fraction(2, 3)

    def test_odd_vanishes(self):
        P = hp(1, (1, 1), (-1, 1))
        q = Quadratic.from_monomials(1, {(0,): 1})
        assert integrate_quadratic(P, q) == 0

    def test_degree_too_high(self):
        with pytest.raises(DegreeTooHigh):
            Quadratic.from_monomials(1, {(0, 0, 0): 1})

    def test_p2_xy_monte_carlo(self):
        # independent oracle: uniform sampling of the triangle, 10^6 points
        numpy = pytest.importorskip("numpy")
        P = hp(2, (-1, 0, 1), (0, -1, 1), (1, 1, 1))
        q = Quadratic.from_monomials(2, {(0, 1): 1})
        exact_mean = integrate_quadratic(P, q) / volume(P)
        rng = numpy.random.default_rng(20240817)
        N = 10**6
        A, B, C = numpy.array([-1.0, -1.0]), numpy.array([2.0, -1.0]), numpy.array([-1.0, 2.0])
        r1 = numpy.sqrt(rng.random(N))
        r2 = rng.random(N)
        pts = (1 - r1)[:, None] * A + (r1 * (1 - r2))[:, None] * B + (r1 * r2)[:, None] * C
        samples = pts[:, 0] * pts[:, 1]
        mc_mean = samples.mean()
        sigma = samples.std(ddof=1) / N**0.5
        assert abs(float(exact_mean) - mc_mean) < 3 * sigma

    @given(
        a=st.tuples(rational, rational, rational),
        b=st.tuples(rational, rational, rational),
        s=rational,
        t=rational,
    )
    @settings(max_examples=40, deadline=None)
    def test_linearity(self, a, b, s, t):
        P = hp(2, (-1, 0, 1), (0, -1, 1), (1, 1, 1))
        qa = Quadratic.from_monomials(2, {(): a[0], (0,): a[1], (0, 1): a[2]})
        qb = Quadratic.from_monomials(2, {(): b[0], (1,): b[1], (1, 1): b[2]})
        combo = Quadratic.from_monomials(
            2,
            {
                (): s * a[0] + t * b[0],
                (0,): s * a[1],
                (1,): t * b[1],
                (0, 1): s * a[2],
                (1, 1): t * b[2],
            },
        )
        lhs = integrate_quadratic(P, combo)
        rhs = s * integrate_quadratic(P, qa) + t * integrate_quadratic(P, qb)
        assert lhs == rhs


class TestRegionSubdivision:
    def test_step_on_interval(self, p1, step_p1):
        regions = region_subdivision(p1, step_p1)
        assert len(regions) == 2
        zero_region, zero_fn = regions[0]
        assert zero_fn.is_constant and zero_fn.constant == 0
        assert zero_region == hp(1, (1, 0), (-1, 1))
        neg_region, neg_fn = regions[1]
        assert neg_fn.gradient == (Fraction(-1),)
        assert neg_region == hp(1, (1, 1), (-1, 0))

    def test_single_affine_is_identity(self, p2):
        f = pl(p2, (1, 2, Fraction(1, 3)))
        regions = region_subdivision(p2, f)
        assert regions == [(p2.base, f.affines[0])]

    def test_corner_cut_volumes(self, p2):
        # min{x1 + x2 + 2 - c, 0}: corner simplex c^2/2 at the vertex chart
        for c in (Fraction(1, 2), Fraction(1), Fraction(5, 2)):
            f = pl(p2, (1, 1, 2 - c), (0, 0, 0))
            vols = {volume(R) for R, _ in region_subdivision(p2, f)}
            assert vols == {c**2 / 2, Fraction(9, 2) - c**2 / 2}

    def test_volumes_sum_and_values_match(self, bl1p2):
        f = pl(bl1p2, (1, 0, 1), (0, 1, 1), (0, 0, Fraction(3, 2)))
        regions = region_subdivision(bl1p2, f)
        assert sum(volume(R) for R, _ in regions) == volume(bl1p2.base)
        for R, a in regions:
            assert f(barycenter(R)) == a(barycenter(R))

    def test_duplicate_affines_pruned(self, p1):
        f = pl(p1, (0, 0), (0, 0), (-1, 0))
        assert len(region_subdivision(p1, f)) == 2

    def test_parallel_dominated_affine_pruned(self, p2):
        # equal gradients, larger constant: never the minimum
        f = pl(p2, (1, 1, 0), (1, 1, 1))
        regions = region_subdivision(p2, f)
        assert len(regions) == 1
        assert regions[0][1].constant == 0
        assert volume(regions[0][0]) == volume(p2.base)


class TestFacetsFromVertices:
    def test_roundtrip(self):
        P = hp(2, (1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1))
        Q = facets_from_vertices(vertices(P))
        assert Q == P

    def test_interval_roundtrip(self):
        P = hp(1, (1, 1), (-1, Fraction(1, 3)))
        assert facets_from_vertices(vertices(P)) == P

    def test_degenerate(self):
        with pytest.raises(EmptyPolytope):
            facets_from_vertices([(0, 0), (1, 1), (2, 2)])
