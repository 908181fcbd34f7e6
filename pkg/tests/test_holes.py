"""
Test suite for hole detection, block validity and the block-size bound.
"""

import numpy as np
import pytest

from src.errors import GeometryError, ValidationError
from src.holes import (HoleFinder, bound_per_block, classify, find_holes, invalid_rate, is_hole,
                       literal_l_beta, log_bound_per_block, plant_holes, solve_l_beta)
from src.thermal import Config, EnsembleParams


class TestHoleDetection:

    @pytest.mark.dependency()
    def test_default_radius(self, toric_2d_large):
        finder = HoleFinder(toric_2d_large)
        assert finder.r == toric_2d_large.r_int + 1 == 3
        with pytest.raises(ValidationError):
            HoleFinder(toric_2d_large, r=2)
        print("✅ Default hole radius is R_int + 1")

    @pytest.mark.dependency(depends=["TestHoleDetection::test_default_radius"])
    def test_centers_match_direct_check(self, toric_2d_large):
        rng = np.random.default_rng(17)
        finder = HoleFinder(toric_2d_large)
        m = len(toric_2d_large)
        for _ in range(5):
            c = Config(rng.random(m) < 0.04)
            direct = [v for v in toric_2d_large.lattice.vertices()
                      if is_hole(toric_2d_large, c, v, finder.r)]
            assert list(finder.centers(c)) == direct
        print("✅ Incidence-table hole centers agree with the direct definition")

    def test_all_inactive_has_holes_everywhere(self, toric_2d_large):
        m = len(toric_2d_large)
        holes = find_holes(toric_2d_large, Config.zeros(m))
        assert len(holes) == toric_2d_large.lattice.n_vertices
        assert find_holes(toric_2d_large, Config.ones(m)) == []

    def test_config_length_checked(self, toric_2d_large):
        with pytest.raises(ValidationError):
            HoleFinder(toric_2d_large).centers(Config.zeros(3))


class TestBlockValidity:

    @pytest.mark.dependency()
    def test_all_inactive_is_valid(self, toric_2d_large):
        lat = toric_2d_large.lattice
        report = classify(toric_2d_large, Config.zeros(len(toric_2d_large)), 4)
        assert report.valid and report.n_blocks == 4 and report.n_empty == 0
        corners = {lat.vertex_coords(h.center) for h in report.chosen_holes()}
        assert corners == {(0, 0), (0, 4), (4, 0), (4, 4)}
        print("✅ All-inactive configuration: every block picks its corner")

    @pytest.mark.dependency(depends=["TestBlockValidity::test_all_inactive_is_valid"])
    def test_planting_repairs_invalid_configs(self, toric_2d_large):
        ones = Config.ones(len(toric_2d_large))
        report = classify(toric_2d_large, ones, 4)
        assert not report.valid and report.n_empty == 4
        assert report.chosen_holes() == []
        repaired, planted = plant_holes(toric_2d_large, ones, 4)
        assert planted == 4
        assert classify(toric_2d_large, repaired, 4).valid
        assert repaired.n_active < ones.n_active
        print("✅ Planting one hole per block makes the all-active configuration valid")

    def test_planting_leaves_valid_configs_alone(self, toric_2d_large):
        zeros = Config.zeros(len(toric_2d_large))
        repaired, planted = plant_holes(toric_2d_large, zeros, 4)
        assert planted == 0
        assert repaired.n_active == 0

    def test_block_size_checked(self, toric_2d_large):
        with pytest.raises(GeometryError):
            classify(toric_2d_large, Config.zeros(len(toric_2d_large)), 3)


class TestBlockBound:

    @pytest.mark.dependency()
    def test_solve_l_beta(self):
        assert solve_l_beta(0.5, 0.5, 0.01, 1) == 2
        l = solve_l_beta(1.0, 2.0, 0.01, 64)
        assert log_bound_per_block(l, 1.0, 2.0) <= np.log(0.01 / 64)
        assert log_bound_per_block(l - 1, 1.0, 2.0) > np.log(0.01 / 64)
        print("✅ l_beta is the smallest block meeting epsilon / V")

    def test_solve_l_beta_domain(self):
        for args in [(0, 1, 0.1, 4), (1, 0, 0.1, 4), (1, 1, 1.0, 4), (1, 1, 0.1, 0.5)]:
            with pytest.raises(ValidationError):
                solve_l_beta(*args)
        with pytest.raises(ValidationError):
            solve_l_beta(1, 1, 0.1, 4, variant='nope')
        with pytest.raises(ValidationError):
            solve_l_beta(50.0, 2.0, 0.1, 4)

    def test_variant_ordering(self):
        lb = bound_per_block(6, 0.3, 1.0, 'lbeta')
        assert bound_per_block(6, 0.3, 1.0, 'inline') <= lb
        assert bound_per_block(6, 0.3, 1.0, 'small_squares') >= lb
        assert 0 < lb < 1

    def test_literal_formula_is_negative(self):
        assert literal_l_beta(1.0, 1.0, 0.5, 10) < 0


class TestInvalidRate:

    def test_infinite_temperature(self, toric_2d):
        result = invalid_rate(toric_2d, EnsembleParams(beta=0.0, n_samples=20), 4)
        assert result.empirical_rate == 0.0
        assert result.analytic_bound == 0.0
        assert result.within_bound()
        assert set(result.to_dict()) >= {'beta', 'block_size', 'empirical_rate', 'analytic_bound'}

    @pytest.mark.slow
    def test_low_temperature_is_mostly_invalid(self, toric_2d):
        params = EnsembleParams(beta=5.0, n_samples=40, burn_in=10, seed=2)
        result = invalid_rate(toric_2d, params, 4)
        assert result.empirical_rate > 0.9
        assert result.analytic_bound == 1.0
        print("✅ At beta=5 a single 4x4 block almost never holds a hole")

    @pytest.mark.slow
    @pytest.mark.parametrize("beta", [0.25, 0.5, 1.0])
    @pytest.mark.parametrize("block_size", [2, 4])
    def test_rate_within_bound_on_grid(self, toric_2d_large, beta, block_size):
        params = EnsembleParams(beta=beta, n_samples=60, burn_in=10, seed=19)
        result = invalid_rate(toric_2d_large, params, block_size)
        assert result.analytic_bound == min(1.0, result.raw_bound)
        assert 0.0 <= result.empirical_rate <= 1.0
        assert result.empirical_rate <= result.analytic_bound + 3 * result.stderr
        assert result.within_bound()
        print(f"✅ beta={beta}, l={block_size}: rate {result.empirical_rate:.3f} "
              f"<= bound {result.analytic_bound:.3f}")
