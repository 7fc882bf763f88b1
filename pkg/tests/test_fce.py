import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcafe import fce
from pcafe.errors import CountMismatch, DimensionMismatch, MissingLeaf, MissingWeights
from pcafe.hierarchy import (
    EvaluationSet,
    Hierarchy,
    IndicatorNode,
    build_pcafe_default,
    default_evaluation_set,
)

V3 = EvaluationSet((("A", 90.0), ("B", 75.0), ("C", 60.0)))


def random_distribution(rng, m):
    x = rng.uniform(0, 1, m)
    x /= x.sum()
    return x


class TestMembership:
    def test_ratio(self):
        z = fce.membership_from_tallies([6, 3, 1, 0, 0], 10)
        assert np.allclose(z, [0.6, 0.3, 0.1, 0, 0])

    def test_unanimous(self):
        z = fce.membership_from_tallies([10, 0, 0, 0, 0], 10)
        assert np.allclose(z, [1, 0, 0, 0, 0])

    def test_count_mismatch(self):
        with pytest.raises(CountMismatch):
            fce.membership_from_tallies([5, 3, 1, 0, 0], 10)

    def test_negative_count(self):
        with pytest.raises(CountMismatch):
            fce.membership_from_tallies([-1, 11], 10)


class TestSingleFactor:
    def test_worked_example(self):
        res = fce.single_factor_evaluate(
            np.array([0.5, 0.5]),
            np.array([[0.6, 0.4, 0.0], [0.2, 0.5, 0.3]]),
            V3,
        )
        assert np.allclose(res.distribution, [0.4, 0.45, 0.15])
        assert res.score == pytest.approx(78.75)
        assert res.verdict == 2

    def test_identity_weighting(self):
        row = np.array([0.2, 0.5, 0.3])
        res = fce.single_factor_evaluate(np.array([1.0]), row[None, :], V3)
        assert np.allclose(res.distribution, row)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            fce.single_factor_evaluate(
                np.array([0.5, 0.5]), np.array([[0.5, 0.5, 0.0]]), V3
            )

    @given(st.integers(1, 6), st.integers(2, 6), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_distribution_sums_to_one(self, n, m, seed):
        rng = np.random.default_rng(seed)
        v = EvaluationSet(
            tuple((f"g{k}", float(100 - 10 * k)) for k in range(m))
        )
        w = random_distribution(rng, n)
        z = np.vstack([random_distribution(rng, m) for _ in range(n)])
        res = fce.single_factor_evaluate(w, z, v)
        assert abs(res.distribution.sum() - 1) < 1e-12
        assert min(v.scores) - 1e-9 <= res.score <= max(v.scores) + 1e-9


class TestOverall:
    def test_identical_rows(self):
        row = np.array([0.3, 0.4, 0.3])
        res = fce.overall_evaluate(
            np.array([0.5, 0.5]), [row, row], V3
        )
        assert np.allclose(res.distribution, row)

    def test_degenerate_weighting(self):
        a = np.array([0.4, 0.45, 0.15])
        b = np.array([0.2, 0.5, 0.3])
        res = fce.overall_evaluate(np.array([1.0, 0.0]), [a, b], V3)
        assert np.allclose(res.distribution, a)


class TestVerdict:
    def test_tie_break_prefers_better_grade(self):
        res = fce.single_factor_evaluate(
            np.array([1.0]), np.array([[0.5, 0.5, 0.0]]), V3
        )
        assert res.verdict == 1
        assert res.verdict_ties == (1, 2)

    def test_affine_rescale_keeps_verdict(self):
        rng = np.random.default_rng(7)
        b = random_distribution(rng, 3)
        res = fce.single_factor_evaluate(np.array([1.0]), b[None, :], V3)
        v2 = EvaluationSet(
            tuple((label, 2.0 * score + 5.0) for label, score in V3.grades)
        )
        res2 = fce.single_factor_evaluate(np.array([1.0]), b[None, :], v2)
        assert res2.verdict == res.verdict
        assert res2.score == pytest.approx(2.0 * res.score + 5.0)


class TestHierarchyRollUp:
    def test_single_leaf_pass_through(self):
        # degenerate tree used to pin the roll-up contract
        root = IndicatorNode("goal", "Goal", "", (IndicatorNode("only", "Only"),))
        h = Hierarchy(root)
        leaf = np.array([0.2, 0.5, 0.3])
        results = fce.evaluate_hierarchy(
            h, {"goal": np.array([1.0])}, {"only": leaf}, V3
        )
        assert np.allclose(results["goal"].distribution, leaf)
        assert results["goal"].score == pytest.approx(leaf @ np.array(V3.scores))

    def test_unanimity_propagates(self):
        h = build_pcafe_default()
        v = default_evaluation_set()
        weights = {
            n.id: np.full(len(n.children), 1 / len(n.children))
            for n in h.non_leaves()
        }
        leaves = {n.id: np.array([1.0, 0, 0, 0, 0]) for n in h.leaves()}
        results = fce.evaluate_hierarchy(h, weights, leaves, v)
        root = results[h.root.id]
        assert np.allclose(root.distribution, [1, 0, 0, 0, 0])
        assert root.score == pytest.approx(90.0)
        assert root.verdict == 1

    def test_missing_weights_and_leaf(self):
        h = build_pcafe_default()
        v = default_evaluation_set()
        with pytest.raises(MissingWeights):
            fce.evaluate_hierarchy(h, {}, {}, v)
        weights = {
            n.id: np.full(len(n.children), 1 / len(n.children))
            for n in h.non_leaves()
        }
        with pytest.raises(MissingLeaf):
            fce.evaluate_hierarchy(h, weights, {}, v)


def random_tree(rng, depth, fanout, counter):
    node_id = f"n{next(counter)}"
    if depth == 1:
        return IndicatorNode(node_id, node_id, "", (), "subjective")
    k = int(rng.integers(2, fanout + 1))
    children = tuple(
        random_tree(rng, depth - 1, fanout, counter) for _ in range(k)
    )
    return IndicatorNode(node_id, node_id, "", children)


class TestRandomizedClosure:
    @given(st.integers(2, 4), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_closure_and_bounds(self, depth, seed):
        import itertools

        rng = np.random.default_rng(seed)
        h = Hierarchy(random_tree(rng, depth, 6, itertools.count()))
        v = default_evaluation_set()
        weights = {
            n.id: random_distribution(rng, len(n.children))
            for n in h.non_leaves()
        }
        leaves = {n.id: random_distribution(rng, v.m) for n in h.leaves()}
        results = fce.evaluate_hierarchy(h, weights, leaves, v)
        for res in results.values():
            assert abs(res.distribution.sum() - 1) < 1e-12
            assert min(v.scores) - 1e-9 <= res.score <= max(v.scores) + 1e-9
            assert res.verdict in res.verdict_ties

    @given(st.integers(2, 4), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_monotone_shift_toward_best_grade(self, depth, seed):
        import itertools

        rng = np.random.default_rng(seed)
        h = Hierarchy(random_tree(rng, depth, 5, itertools.count()))
        v = default_evaluation_set()
        weights = {
            n.id: random_distribution(rng, len(n.children))
            for n in h.non_leaves()
        }
        leaves = {n.id: random_distribution(rng, v.m) for n in h.leaves()}
        before = fce.evaluate_hierarchy(h, weights, leaves, v)

        target = list(leaves)[int(rng.integers(len(leaves)))]
        shifted = leaves[target].copy()
        donor = int(rng.integers(1, v.m))
        amount = shifted[donor] * rng.uniform(0, 1)
        shifted[donor] -= amount
        shifted[0] += amount
        leaves[target] = shifted
        after = fce.evaluate_hierarchy(h, weights, leaves, v)
        for node_id in before:
            assert after[node_id].score >= before[node_id].score - 1e-12
