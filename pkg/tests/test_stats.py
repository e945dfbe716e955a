import numpy as np
import pytest

from emodisc.stats import SampleSummary, SignificanceMark, mark, wilcoxon_rank_sum

from oracles import exact_rank_sum_p


class TestWilcoxonRankSum:
    def test_disjoint_triples_exact_p(self):
        # rank sum 6 is the single lowest of C(6,3) subsets: 2/20 doubled
        assert wilcoxon_rank_sum([1, 2, 3], [4, 5, 6]) == pytest.approx(0.1, abs=1e-15)

    def test_identical_multisets_give_one(self):
        assert wilcoxon_rank_sum([1.0, 2.0, 2.0], [2.0, 1.0, 2.0]) == 1.0

    def test_degenerate_constant_samples(self):
        assert wilcoxon_rank_sum([5.0] * 4, [5.0] * 5) == 1.0
        assert wilcoxon_rank_sum([5.0] * 30, [5.0] * 30) == 1.0  # approximation path

    def test_maximal_separation_30v30(self):
        a = list(range(30))
        b = [v + 100.0 for v in range(30)]
        assert wilcoxon_rank_sum(a, b) < 1e-9

    def test_symmetry(self):
        gen = np.random.Generator(np.random.PCG64(51))
        for n in (4, 9, 25):
            a, b = gen.random(n), gen.random(n + 2)
            assert wilcoxon_rank_sum(a, b) == wilcoxon_rank_sum(b, a)

    def test_positive_scaling_invariance(self):
        gen = np.random.Generator(np.random.PCG64(52))
        a, b = gen.random(8), gen.random(10)
        assert wilcoxon_rank_sum(a, b) == wilcoxon_rank_sum(a * 37.5, b * 37.5)
        a, b = gen.random(25), gen.random(25)
        assert wilcoxon_rank_sum(a, b) == wilcoxon_rank_sum(a * 1e-6, b * 1e-6)

    def test_small_samples_match_exact_oracle(self):
        gen = np.random.Generator(np.random.PCG64(53))
        for n1, n2 in [(2, 2), (3, 5), (4, 4), (5, 6), (2, 9)]:
            a = gen.random(n1)
            b = gen.random(n2)
            assert wilcoxon_rank_sum(a, b) == pytest.approx(
                float(exact_rank_sum_p(a, b)), abs=1e-12
            )

    def test_tied_samples_match_exact_oracle(self):
        gen = np.random.Generator(np.random.PCG64(54))
        for n1, n2 in [(3, 3), (4, 5), (5, 5)]:
            a = gen.integers(0, 4, size=n1).astype(float)
            b = gen.integers(0, 4, size=n2).astype(float)
            assert wilcoxon_rank_sum(a, b) == pytest.approx(
                float(exact_rank_sum_p(a, b)), abs=1e-12
            )

    def test_p_in_unit_interval(self):
        gen = np.random.Generator(np.random.PCG64(55))
        for _ in range(50):
            n1 = int(gen.integers(2, 40))
            n2 = int(gen.integers(2, 40))
            p = wilcoxon_rank_sum(gen.random(n1), gen.random(n2))
            assert 0.0 <= p <= 1.0

    def test_sample_size_validation(self):
        with pytest.raises(ValueError):
            wilcoxon_rank_sum([1.0], [2.0, 3.0])

    def test_approximation_close_to_scipy(self):
        from scipy.stats import mannwhitneyu

        gen = np.random.Generator(np.random.PCG64(56))
        a = gen.normal(size=30)
        b = gen.normal(loc=0.4, size=30)
        ours = wilcoxon_rank_sum(a, b)
        theirs = mannwhitneyu(a, b, alternative="two-sided", method="asymptotic").pvalue
        assert ours == pytest.approx(theirs, abs=1e-9)


class TestSampleSummary:
    def test_from_values_moments(self):
        s = SampleSummary.from_values([1.0, 2.0, 3.0, 4.0])
        assert s.mean == 2.5
        assert s.std == pytest.approx(np.std([1, 2, 3, 4], ddof=1))

    def test_single_value_std_zero(self):
        assert SampleSummary.from_values([7.0]).std == 0.0

    def test_inconsistent_moments_rejected(self):
        with pytest.raises(ValueError):
            SampleSummary(values=(1.0, 2.0), mean=9.0, std=0.5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            SampleSummary.from_values([])


class TestMark:
    def test_identical_samples_equal(self):
        s = SampleSummary.from_values([1.0, 2.0, 3.0])
        result = mark(s, s)
        assert result.mark == "=" and result.p_value == 1.0

    def test_clearly_lower_variant_is_better(self):
        baseline = SampleSummary.from_values(np.linspace(10, 11, 30))
        variant = SampleSummary.from_values(np.linspace(1, 2, 30))
        assert mark(baseline, variant).mark == "+"

    def test_clearly_higher_variant_is_worse(self):
        baseline = SampleSummary.from_values(np.linspace(1, 2, 30))
        variant = SampleSummary.from_values(np.linspace(10, 11, 30))
        assert mark(baseline, variant).mark == "-"

    def test_threshold_bracketing_via_exact_enumeration(self):
        # n1 = n2 = 4: achievable two-sided p-values step in 2/70 increments,
        # so 2/70 < alpha < 4/70 brackets the 0.05 threshold
        baseline = [5.0, 6.0, 7.0, 8.0]
        fully_below = [1.0, 2.0, 3.0, 4.0]
        p_low = wilcoxon_rank_sum(baseline, fully_below)
        assert p_low == pytest.approx(2.0 / 70.0, abs=1e-15)
        assert mark(SampleSummary.from_values(baseline), SampleSummary.from_values(fully_below)).mark == "+"

        baseline2 = [4.0, 6.0, 7.0, 8.0]
        nearly_below = [1.0, 2.0, 3.0, 5.0]
        p_high = wilcoxon_rank_sum(baseline2, nearly_below)
        assert p_high == pytest.approx(4.0 / 70.0, abs=1e-15)
        assert (
            mark(SampleSummary.from_values(baseline2), SampleSummary.from_values(nearly_below)).mark
            == "="
        )

    def test_direction_from_rank_sums_not_means(self):
        # one huge outlier drags the variant mean above the baseline mean,
        # but rank-wise the variant still sits lower
        baseline = SampleSummary.from_values([10.0, 11.0, 12.0, 13.0, 14.0, 15.0, 16.0, 17.0])
        variant = SampleSummary.from_values([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 500.0])
        assert variant.mean > baseline.mean
        result = mark(baseline, variant, alpha=0.06)
        assert result.p_value < 0.06
        assert result.mark == "+"

    def test_mark_validation(self):
        with pytest.raises(ValueError):
            SignificanceMark(mark="?", p_value=0.5)
        with pytest.raises(ValueError):
            SignificanceMark(mark="+", p_value=1.5)
