import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcafe import fahp
from pcafe.errors import (
    DimensionMismatch,
    DuplicatePair,
    EmptyPanel,
    MissingPair,
    NoRIAvailable,
    OutOfScale,
    ThetaTooSmall,
)

WORKED = fahp.FuzzyJudgmentMatrix(
    np.array([[0.5, 0.6, 0.7], [0.4, 0.5, 0.6], [0.3, 0.4, 0.5]])
)
CYCLIC = fahp.FuzzyJudgmentMatrix(
    np.array([[0.5, 0.9, 0.1], [0.1, 0.5, 0.9], [0.9, 0.1, 0.5]])
)


def all_half(n):
    return fahp.FuzzyJudgmentMatrix(np.full((n, n), 0.5))


def random_fuzzy(rng, n):
    entries = [
        (i, j, float(rng.uniform(0.1, 0.9)))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]
    return fahp.build_fuzzy_matrix(n, entries)


def brute_force_residual(values):
    n = len(values)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                worst = max(
                    worst,
                    abs(values[i][j] - (0.5 + values[i][k] - values[j][k])),
                )
    return worst


class TestBuild:
    def test_complement_completion(self):
        a = fahp.build_fuzzy_matrix(2, [(1, 2, 0.7)])
        assert np.allclose(a.values, [[0.5, 0.7], [0.3, 0.5]])

    def test_out_of_scale(self):
        with pytest.raises(OutOfScale):
            fahp.build_fuzzy_matrix(2, [(1, 2, 0.95)])

    def test_all_half(self):
        a = fahp.build_fuzzy_matrix(
            3, [(1, 2, 0.5), (1, 3, 0.5), (2, 3, 0.5)]
        )
        assert np.allclose(a.values, 0.5)

    def test_missing_and_duplicate(self):
        with pytest.raises(MissingPair):
            fahp.build_fuzzy_matrix(3, [(1, 2, 0.5)])
        with pytest.raises(DuplicatePair):
            fahp.build_fuzzy_matrix(2, [(1, 2, 0.5), (1, 2, 0.6)])


class TestConsistencyTransform:
    def test_all_half_fixed_point(self):
        r = fahp.to_consistency_matrix(all_half(3))
        assert np.allclose(r.values, 0.5)

    def test_worked_example(self):
        r = fahp.to_consistency_matrix(WORKED)
        assert np.allclose(r.row_sums, [1.8, 1.5, 1.2])
        expected = [
            [0.5, 0.575, 0.65],
            [0.425, 0.5, 0.575],
            [0.35, 0.425, 0.5],
        ]
        assert np.allclose(r.values, expected)

    @given(st.integers(3, 9), st.integers(0, 10_000))
    @settings(max_examples=80, deadline=None)
    def test_transform_lands_in_consistency_class(self, n, seed):
        rng = np.random.default_rng(seed)
        r = fahp.to_consistency_matrix(random_fuzzy(rng, n))
        assert np.all(r.values >= 0) and np.all(r.values <= 1)
        # FuzzyConsistencyMatrix construction asserts residual <= 1e-12;
        # cross-check against the brute-force oracle
        assert brute_force_residual(r.values.tolist()) <= 1e-12


class TestAdditiveResidual:
    def test_worked_example_is_consistent(self):
        assert fahp.additive_consistency_residual(WORKED) == pytest.approx(
            0, abs=1e-15
        )
        assert brute_force_residual(WORKED.values.tolist()) == pytest.approx(
            0, abs=1e-15
        )

    def test_all_half_zero(self):
        assert fahp.additive_consistency_residual(all_half(4)) == 0

    def test_cyclic_positive(self):
        res = fahp.additive_consistency_residual(CYCLIC)
        assert res > 0
        assert res == pytest.approx(brute_force_residual(CYCLIC.values.tolist()))


class TestWeights:
    def test_geometric_uniform_on_all_half(self):
        r = fahp.to_consistency_matrix(all_half(4))
        assert np.allclose(fahp.weights_geometric_mean_fuzzy(r), 0.25)

    def test_geometric_ordering_follows_row_sums(self):
        r = fahp.to_consistency_matrix(WORKED)
        w = fahp.weights_geometric_mean_fuzzy(r)
        assert w[0] > w[1] > w[2]

    def test_linear_worked_example(self):
        r = fahp.to_consistency_matrix(WORKED)
        w = fahp.weights_linear(r, 1.0)
        assert np.allclose(w, [49 / 120, 40 / 120, 31 / 120])

    def test_linear_uniform_on_all_half(self):
        r = fahp.to_consistency_matrix(all_half(5))
        assert np.allclose(fahp.weights_linear(r, 3.0), 0.2)

    def test_theta_zero_rejected(self):
        r = fahp.to_consistency_matrix(WORKED)
        with pytest.raises(ThetaTooSmall):
            fahp.weights_linear(r, 0.0)

    def test_theta_below_minimum_rejected(self):
        r = fahp.to_consistency_matrix(WORKED)
        with pytest.raises(ThetaTooSmall):
            fahp.weights_linear(r, 0.5)

    @given(st.integers(2, 9), st.integers(0, 10_000), st.floats(1.0, 10.0))
    @settings(max_examples=80, deadline=None)
    def test_both_methods_sum_one_and_agree_on_ranking(self, n, seed, theta_mult):
        rng = np.random.default_rng(seed)
        r = fahp.to_consistency_matrix(random_fuzzy(rng, n))
        theta = fahp.min_theta(n) * theta_mult if n > 1 else 1.0
        theta = max(theta, 0.5)
        wg = fahp.weights_geometric_mean_fuzzy(r)
        wl = fahp.weights_linear(r, max(theta, fahp.min_theta(n)))
        for w in (wg, wl):
            assert abs(w.sum() - 1) < 1e-12
            assert np.all(w >= 0)
        order = np.argsort(r.row_sums, kind="stable")
        assert np.array_equal(np.argsort(wg, kind="stable"), order)
        assert np.array_equal(np.argsort(wl, kind="stable"), order)

    @given(st.integers(3, 7), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_permutation_equivariance(self, n, seed):
        rng = np.random.default_rng(seed)
        a = random_fuzzy(rng, n)
        perm = rng.permutation(n)
        permuted = fahp.FuzzyJudgmentMatrix(a.values[np.ix_(perm, perm)])
        w = fahp.weights_geometric_mean_fuzzy(fahp.to_consistency_matrix(a))
        wp = fahp.weights_geometric_mean_fuzzy(
            fahp.to_consistency_matrix(permuted)
        )
        assert np.allclose(wp, w[perm], atol=1e-12)


class TestFuzzyConsistencyCheck:
    def test_all_half_lambda_is_half_n(self):
        n = 4
        diag = fahp.fuzzy_consistency_check(all_half(n), np.full(n, 1 / n))
        assert diag.report.lambda_max == pytest.approx(n / 2)
        assert diag.report.ci < 0
        assert diag.additive_residual == 0

    def test_consistent_matrix_residual_zero(self):
        w = fahp.weights_geometric_mean_fuzzy(fahp.to_consistency_matrix(WORKED))
        diag = fahp.fuzzy_consistency_check(WORKED, w)
        assert diag.additive_residual == pytest.approx(0, abs=1e-15)

    def test_no_ri_for_n_twelve(self):
        a = all_half(12)
        with pytest.raises(NoRIAvailable):
            fahp.fuzzy_consistency_check(a, np.full(12, 1 / 12))


class TestAggregation:
    def test_single_unchanged(self):
        a = fahp.build_fuzzy_matrix(2, [(1, 2, 0.7)])
        assert np.allclose(fahp.aggregate_expert_fuzzy([a]).values, a.values)

    def test_arithmetic_mean(self):
        a = fahp.build_fuzzy_matrix(2, [(1, 2, 0.6)])
        b = fahp.build_fuzzy_matrix(2, [(1, 2, 0.8)])
        agg = fahp.aggregate_expert_fuzzy([a, b])
        assert agg.values[0, 1] == pytest.approx(0.7)

    def test_empty_and_mismatch(self):
        with pytest.raises(EmptyPanel):
            fahp.aggregate_expert_fuzzy([])
        a = fahp.build_fuzzy_matrix(2, [(1, 2, 0.7)])
        with pytest.raises(DimensionMismatch):
            fahp.aggregate_expert_fuzzy([a, all_half(3)])

    @given(st.integers(2, 6), st.integers(1, 6), st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_output_valid(self, n, panel, seed):
        rng = np.random.default_rng(seed)
        matrices = [random_fuzzy(rng, n) for _ in range(panel)]
        fahp.aggregate_expert_fuzzy(matrices)  # constructor checks invariants


class TestWorstTriadFuzzy:
    def test_cyclic(self):
        i, j, k, dev = fahp.most_inconsistent_triad_fuzzy(CYCLIC)
        assert dev > 0

    def test_consistent_zero(self):
        _, _, _, dev = fahp.most_inconsistent_triad_fuzzy(WORKED)
        assert dev == pytest.approx(0, abs=1e-15)
