import numpy as np
import pytest

from emodisc.core import weakly_dominates
from emodisc.discretization import (
    SIGMA_MAX,
    DiscretizationConfig,
    ResolutionProfile,
    compute_resolution,
    discretize_decision,
    discretize_objectives,
    normalize_objectives,
    round_half_away,
)

UNIT_BOUNDS = (np.zeros(4), np.ones(4))


def population_with_sigmas(sigmas, size=50):
    """Columns engineered to have the requested population standard
    deviations on [0, 1]: half the members at 0.5 - s, half at 0.5 + s."""
    X = np.empty((size, len(sigmas)))
    for j, s in enumerate(sigmas):
        X[: size // 2, j] = 0.5 - s
        X[size // 2 :, j] = 0.5 + s
    return X


class TestConfig:
    def test_strategy_validation(self):
        with pytest.raises(ValueError):
            DiscretizationConfig(strategy="abc")

    def test_decimal_ordering_validation(self):
        with pytest.raises(ValueError):
            DiscretizationConfig(d_min=5, d_max=3)
        with pytest.raises(ValueError):
            DiscretizationConfig(d_max=16)
        with pytest.raises(ValueError):
            DiscretizationConfig(objective_decimals=0)

    def test_strategy_flags(self):
        assert DiscretizationConfig(strategy="dd").discretizes_decisions
        assert not DiscretizationConfig(strategy="dd").discretizes_objectives
        assert DiscretizationConfig(strategy="od").discretizes_objectives
        assert DiscretizationConfig(strategy="bd").discretizes_decisions
        assert DiscretizationConfig(strategy="bd").discretizes_objectives
        assert not DiscretizationConfig(strategy="none").discretizes_decisions


class TestComputeResolution:
    def test_uniform_spread_gives_minimum_decimals(self):
        X = population_with_sigmas([SIGMA_MAX, SIGMA_MAX])
        profile = compute_resolution(X, (np.zeros(2), np.ones(2)), DiscretizationConfig())
        assert np.allclose(profile.sigmas, SIGMA_MAX)
        assert np.array_equal(profile.decimals, [2, 2])

    def test_collapsed_variable_gives_maximum_decimals(self):
        X = np.full((30, 2), 0.4)
        profile = compute_resolution(X, (np.zeros(2), np.ones(2)), DiscretizationConfig())
        assert np.array_equal(profile.decimals, [8, 8])
        assert np.allclose(profile.sigmas, 0.0)

    def test_half_sigma_max_rounds_to_five(self):
        X = population_with_sigmas([0.5 * SIGMA_MAX])
        profile = compute_resolution(X, (np.zeros(1), np.ones(1)), DiscretizationConfig())
        assert profile.decimals[0] == 5  # round(0.5 * 6 + 2)

    def test_oversized_sigma_clamps_to_minimum(self):
        # all mass at the bounds: sigma = 0.5 > sigma_max
        X = population_with_sigmas([0.5])
        profile = compute_resolution(X, (np.zeros(1), np.ones(1)), DiscretizationConfig())
        assert profile.sigmas[0] > SIGMA_MAX
        assert profile.decimals[0] == 2

    def test_population_formula_not_sample(self):
        X = np.array([[0.0], [1.0]])
        profile = compute_resolution(X, (np.zeros(1), np.ones(1)), DiscretizationConfig())
        assert np.isclose(profile.sigmas[0], 0.5)  # ddof=0, not 1/sqrt(2)

    def test_permutation_invariance_is_exact(self):
        gen = np.random.Generator(np.random.PCG64(42))
        X = gen.random((37, 5))
        bounds = (np.zeros(5), np.ones(5))
        cfg = DiscretizationConfig()
        base = compute_resolution(X, bounds, cfg)
        for _ in range(5):
            shuffled = X[gen.permutation(len(X))]
            again = compute_resolution(shuffled, bounds, cfg)
            assert np.array_equal(base.sigmas, again.sigmas)
            assert np.array_equal(base.decimals, again.decimals)

    def test_normalization_uses_bounds(self):
        # same relative spread on a wider domain must give the same decimals
        X = population_with_sigmas([0.25])
        wide = compute_resolution(
            X * 20.0, (np.zeros(1), np.full(1, 20.0)), DiscretizationConfig()
        )
        narrow = compute_resolution(X, (np.zeros(1), np.ones(1)), DiscretizationConfig())
        assert np.array_equal(wide.decimals, narrow.decimals)

    def test_empty_population_rejected(self):
        with pytest.raises(ValueError):
            compute_resolution(np.empty((0, 2)), (np.zeros(2), np.ones(2)), DiscretizationConfig())


class TestDiscretizeDecision:
    def profile(self, decimals):
        return ResolutionProfile(decimals=np.asarray(decimals), sigmas=np.zeros(len(decimals)))

    def test_rounds_to_profile_decimals(self):
        out = discretize_decision(
            np.array([0.123456, 0.123456]), self.profile([2, 4]), (np.zeros(2), np.ones(2))
        )
        assert np.array_equal(out, [0.12, 0.1235])

    def test_half_away_from_zero_tie(self):
        out = discretize_decision(np.array([0.125]), self.profile([2]), (np.zeros(1), np.ones(1)))
        assert out[0] == 0.13

    def test_grid_values_unchanged(self):
        x = np.array([0.25, 0.87])
        out = discretize_decision(x, self.profile([2, 2]), (np.zeros(2), np.ones(2)))
        assert np.array_equal(out, x)

    def test_idempotent_for_fixed_profile(self):
        gen = np.random.Generator(np.random.PCG64(9))
        X = gen.random((200, 6))
        lower = np.array([0.0, -3.0, 2.0, 0.0, 0.0, -1.0])
        upper = np.array([1.0, 5.0, 4.0, 10.0, 0.5, 1.0])
        X = lower + (upper - lower) * X
        profile = ResolutionProfile(
            decimals=np.array([2, 3, 2, 8, 4, 2]), sigmas=np.zeros(6)
        )
        once = discretize_decision(X, profile, (lower, upper))
        twice = discretize_decision(once, profile, (lower, upper))
        assert np.array_equal(once, twice)

    def test_result_in_bounds(self):
        gen = np.random.Generator(np.random.PCG64(10))
        lower = np.array([-2.0, 0.0])
        upper = np.array([2.0, 6.0])
        X = lower + (upper - lower) * gen.random((500, 2))
        out = discretize_decision(X, self.profile([2, 2]), (lower, upper))
        assert np.all(out >= lower) and np.all(out <= upper)

    def test_denormalizes_through_bounds(self):
        # normalized rounding acts on (x - lower) / span, not on raw values
        out = discretize_decision(
            np.array([4.0 + 8.0 * 0.123]), self.profile([2]), (np.full(1, 4.0), np.full(1, 12.0))
        )
        assert np.isclose(out[0], 4.0 + 8.0 * 0.12, atol=1e-12)


class TestNormalizeObjectives:
    def test_two_point_min_max(self):
        out = normalize_objectives(np.array([[450.0, 869.0], [453.0, 870.0]]))
        assert np.array_equal(out, [[0.0, 0.0], [1.0, 1.0]])

    def test_singleton_maps_to_zero(self):
        assert np.array_equal(normalize_objectives(np.array([[5.0, -2.0, 7.0]])), [[0.0, 0.0, 0.0]])

    def test_constant_column_maps_to_zero(self):
        out = normalize_objectives(np.array([[1.0, 4.0], [3.0, 4.0], [2.0, 4.0]]))
        assert np.array_equal(out[:, 1], [0.0, 0.0, 0.0])
        assert np.array_equal(out[:, 0], [0.0, 1.0, 0.5])

    def test_range_is_unit_interval(self):
        gen = np.random.Generator(np.random.PCG64(3))
        F = gen.normal(size=(40, 5)) * 100.0
        out = normalize_objectives(F)
        assert out.min() >= 0.0 and out.max() <= 1.0
        assert np.allclose(out.min(axis=0), 0.0) and np.allclose(out.max(axis=0), 1.0)


class TestDiscretizeObjectives:
    def test_worked_example_fixed_divisor(self):
        # raw (450, 523, 651, 733, 869) normalized by a fixed divisor of 1000
        raw = np.array([450.0, 523.0, 651.0, 733.0, 869.0])
        got = discretize_objectives(raw / 1000.0, 2)
        assert np.array_equal(got, [0.45, 0.52, 0.65, 0.73, 0.87])

    def test_paper_pair_collapses_to_dominated(self):
        a = discretize_objectives(np.array([450.0, 523.0, 651.0, 733.0, 869.0]) / 1000.0, 2)
        b = discretize_objectives(np.array([453.0, 510.0, 621.0, 703.0, 870.0]) / 1000.0, 2)
        assert np.array_equal(a, [0.45, 0.52, 0.65, 0.73, 0.87])
        assert np.array_equal(b, [0.45, 0.51, 0.62, 0.70, 0.87])
        assert weakly_dominates(b, a) and not weakly_dominates(a, b)

    def test_grid_values_unchanged(self):
        grid = np.array([0.0, 0.01, 0.45, 0.99, 1.0])
        assert np.array_equal(discretize_objectives(grid, 2), grid)

    def test_half_away_from_zero(self):
        assert discretize_objectives(np.array([0.455]), 2)[0] == 0.46
        assert discretize_objectives(np.array([0.005]), 2)[0] == 0.01

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            discretize_objectives(np.array([1.1]), 2)
        with pytest.raises(ValueError):
            discretize_objectives(np.array([-0.1]), 2)

    def test_tolerated_epsilon_is_clamped(self):
        out = discretize_objectives(np.array([1.0 + 5e-13, -5e-13]), 2)
        assert np.array_equal(out, [1.0, 0.0])

    def test_idempotent(self):
        gen = np.random.Generator(np.random.PCG64(4))
        F = gen.random((300, 4))
        once = discretize_objectives(F, 2)
        assert np.array_equal(discretize_objectives(once, 2), once)

    def test_grid_membership(self):
        gen = np.random.Generator(np.random.PCG64(5))
        for decimals in (1, 2, 3):
            F = gen.random((200, 3))
            out = discretize_objectives(F, decimals)
            scaled = out * 10.0**decimals
            assert np.abs(scaled - np.rint(scaled)).max() < 1e-12

    def test_dominance_preservation_100k_pairs(self):
        # rounding is componentwise monotone: weak dominance survives it
        gen = np.random.Generator(np.random.PCG64(6))
        A = gen.random((100_000, 4))
        B = gen.random((100_000, 4))
        # force a healthy share of weakly-dominating pairs
        half = 50_000
        B[:half] = np.minimum(A[:half], B[:half])
        A2 = discretize_objectives(A, 2)
        B2 = discretize_objectives(B, 2)
        weak_before = np.all(B <= A, axis=1)
        weak_after = np.all(B2 <= A2, axis=1)
        assert weak_before.sum() >= half
        assert not np.any(weak_before & ~weak_after)

    def test_nondominated_count_never_increases(self):
        from emodisc.metrics import nondominated_mask

        gen = np.random.Generator(np.random.PCG64(7))
        for _ in range(20):
            F = gen.random((60, int(gen.integers(2, 6))))
            disc = discretize_objectives(F, 2)
            raw_count = len(np.unique(F[nondominated_mask(F)], axis=0))
            disc_count = len(np.unique(disc[nondominated_mask(disc)], axis=0))
            assert disc_count <= raw_count


class TestRoundHalfAway:
    def test_negative_ties_go_away_from_zero(self):
        assert round_half_away(np.array([-0.125]), 2)[0] == -0.13
        assert round_half_away(np.array([-2.5]), 0)[0] == -3.0

    def test_scalar_decimals_broadcast(self):
        out = round_half_away(np.array([[0.123, 0.567]]), np.array([1, 2]))
        assert np.array_equal(out, [[0.1, 0.57]])
