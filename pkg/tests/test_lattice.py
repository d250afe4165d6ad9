from fractions import Fraction

import pytest

from toricding import (
    dh_measure,
    e_na,
    gabor_inner,
    inner_product,
    jump_weights,
    lattice_points,
    vol_distribution,
    weight_measure,
)
from toricding.errors import DimensionMismatch

from conftest import pl


class TestLatticePoints:
    def test_interval_k2(self, p1):
        assert lattice_points(p1, 2) == [(-2,), (-1,), (0,), (1,), (2,)]

    def test_p2_k1_count(self, p2):
        assert len(lattice_points(p2, 1)) == 10

    def test_bl1p2_k1_pick(self, bl1p2):
        # Pick's theorem: area 4, boundary 8 -> 4 + 8/2 + 1 = 9
        assert len(lattice_points(bl1p2, 1)) == 9

    def test_growth_matches_volume(self, p2):
        # N_k = (L^n/n!) k^n + O(k^{n-1})
        for k in (8, 16):
            n_k = len(lattice_points(p2, k))
            assert abs(n_k - Fraction(9, 2) * k**2) <= 10 * k

    def test_k_positive(self, p1):
        with pytest.raises(ValueError):
            lattice_points(p1, 0)


class TestJumpWeights:
    def test_zero_function(self, p2):
        f = pl(p2, (0, 0, 0))
        assert set(jump_weights(f, 2).values()) == {0}

    def test_step_k2(self, p1, step_p1):
        w = jump_weights(step_p1, 2)
        assert w == {(-2,): 0, (-1,): 0, (0,): 0, (1,): -1, (2,): -2}

    def test_integer_affine_no_rounding(self, p2):
        f = pl(p2, (2, -1, 0))
        for u, mu in jump_weights(f, 3).items():
            assert mu == 2 * u[0] - u[1]


class TestWeightMeasure:
    def test_zero_function_unit_atom(self, p2):
        f = pl(p2, (0, 0, 0))
        wm = weight_measure(f, 4)
        assert wm.entries == ((0, wm.N_k),)
        assert wm.mass() == 1

    def test_step_k2(self, step_p1):
        wm = weight_measure(step_p1, 2)
        assert wm.N_k == 5
        assert wm.entries == ((Fraction(-1), 1), (Fraction(-1, 2), 1), (0, 3))
        assert wm.mean() == Fraction(-3, 10)

    def test_mass_always_one(self, step_p2):
        for k in (1, 3, 8):
            assert weight_measure(step_p2, k).mass() == 1

    def test_support_below_max(self, step_p2):
        target = step_p2.max_value()
        for k in (2, 4, 8, 16):
            wm = weight_measure(step_p2, k)
            assert wm.max_support() <= target
            assert target - wm.max_support() <= Fraction(1, k)

    def test_support_above_min(self, step_p2):
        # floor convention: locations stay within 1/k of the true minimum
        lower = step_p2.min_value()
        for k in (2, 4, 8):
            wm = weight_measure(step_p2, k)
            assert min(loc for loc, _ in wm.entries) >= lower - Fraction(1, k)

    def test_mean_error_doubling_ladder(self, step_p1, step_p2):
        for f in (step_p1, step_p2):
            exact = e_na(f)
            for k in (4, 8, 16, 32):
                err_k = abs(weight_measure(f, k).mean() - exact)
                err_2k = abs(weight_measure(f, 2 * k).mean() - exact)
                assert err_2k <= 2 * (err_k + Fraction(1, k))


class TestGaborInner:
    def test_zero_rho(self, step_p2):
        assert gabor_inner(step_p2, [0, 0], 4) == 0

    def test_constant_k_compatible(self, p1):
        # kappa k integral: exact zero at every level
        f = pl(p1, (0, Fraction(3, 2)))
        assert gabor_inner(f, [1], 2) == 0
        assert gabor_inner(f, [1], 4) == 0

    def test_requires_integer_rho(self, step_p2):
        with pytest.raises(ValueError):
            gabor_inner(step_p2, [Fraction(1, 2), 0], 4)

    def test_dimension_mismatch(self, step_p2):
        with pytest.raises(DimensionMismatch):
            gabor_inner(step_p2, [1], 4)

    def test_converges_to_inner_product(self, step_p1):
        target = inner_product(step_p1, [1])
        errs = [abs(gabor_inner(step_p1, [1], k) - target) for k in (8, 16, 32, 64)]
        assert all(b < a for a, b in zip(errs, errs[1:]))


class TestVolDistribution:
    def test_below_support(self, step_p1):
        assert vol_distribution(step_p1, 4, Fraction(-3)) == 1

    def test_above_support(self, step_p1):
        assert vol_distribution(step_p1, 4, Fraction(1, 2)) == 0

    def test_limit_value(self, step_p1):
        # vol{x <= 1/2}/2 = 3/4
        vals = [vol_distribution(step_p1, k, Fraction(-1, 2)) for k in (16, 64, 256)]
        errs = [abs(v - Fraction(3, 4)) for v in vals]
        assert all(b <= a for a, b in zip(errs, errs[1:]))
        assert errs[-1] <= Fraction(1, 64)

    def test_matches_upper_mass(self, step_p2):
        m = dh_measure(step_p2)
        lam = Fraction(-1, 2)
        discrete = vol_distribution(step_p2, 64, lam)
        assert abs(discrete - m.upper_mass(lam)) <= Fraction(1, 16)
