"""Membership-matrix evaluation: grade distributions, weighted roll-up,
scores against an evaluation set, and the maximum-membership verdict."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityMismatch,
    CountMismatch,
    DimensionMismatch,
    MissingLeaf,
    MissingWeights,
)
from .hierarchy import EvaluationSet, Hierarchy

TIE_TOL = 1e-12


@dataclass(frozen=True)
class EvaluationResult:
    """Aggregated membership vector, its score, and the verdict grade.

    verdict and verdict_ties use 1-based grade indices (grade 1 = best).
    """

    distribution: np.ndarray
    score: float
    verdict: int
    verdict_ties: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "distribution": [float(x) for x in self.distribution],
            "score": self.score,
            "verdict": self.verdict,
            "verdict_ties": list(self.verdict_ties),
        }


def membership_from_tallies(counts, expert_count: int) -> np.ndarray:
    """z_j = count_j / expert_count."""
    counts = np.asarray(counts, dtype=float)
    if np.any(counts < 0):
        raise CountMismatch(float(counts.min()), expert_count)
    total = counts.sum()
    if expert_count <= 0 or abs(total - expert_count) > 1e-9:
        raise CountMismatch(total, expert_count)
    return counts / expert_count


def _result(b: np.ndarray, v: EvaluationSet) -> EvaluationResult:
    scores = np.asarray(v.scores)
    if b.shape[0] != v.m:
        raise DimensionMismatch(
            f"distribution has {b.shape[0]} grades, evaluation set has {v.m}"
        )
    score = float(b @ scores)
    top = b.max()
    ties = tuple(int(j + 1) for j in range(v.m) if b[j] >= top - TIE_TOL)
    # ties are ordered best-first, so ties[0] is the better grade
    return EvaluationResult(b, score, ties[0], ties)


def single_factor_evaluate(
    w: np.ndarray, z: np.ndarray, v: EvaluationSet
) -> EvaluationResult:
    """b = w . Z (row-vector by matrix), scored against the evaluation set."""
    w = np.asarray(w, dtype=float)
    z = np.atleast_2d(np.asarray(z, dtype=float))
    if w.shape[0] != z.shape[0]:
        raise DimensionMismatch(
            f"{w.shape[0]} weights vs {z.shape[0]} membership rows"
        )
    return _result(w @ z, v)


def overall_evaluate(
    w_top: np.ndarray, b_rows: list[np.ndarray], v: EvaluationSet
) -> EvaluationResult:
    """Stack per-factor vectors as rows and combine with the top weights."""
    return single_factor_evaluate(w_top, np.vstack(b_rows), v)


def evaluate_hierarchy(
    h: Hierarchy,
    node_weights: dict[str, np.ndarray],
    leaf_distributions: dict[str, np.ndarray],
    v: EvaluationSet,
) -> dict[str, EvaluationResult]:
    """Bottom-up roll-up over the whole tree.

    Each non-leaf combines its children's distributions with its weight
    vector; leaves carry their given distributions. Returns a result for
    every node id, the root included.
    """
    results: dict[str, EvaluationResult] = {}

    def _eval(node) -> EvaluationResult:
        if node.is_leaf:
            if node.id not in leaf_distributions:
                raise MissingLeaf(node.id)
            b = np.asarray(leaf_distributions[node.id], dtype=float)
            res = _result(b, v)
        else:
            if node.id not in node_weights:
                raise MissingWeights(node.id)
            w = np.asarray(node_weights[node.id], dtype=float)
            if w.shape[0] != len(node.children):
                raise ArityMismatch(node.id, len(node.children), w.shape[0])
            rows = [_eval(c).distribution for c in node.children]
            res = overall_evaluate(w, rows, v)
        results[node.id] = res
        return res

    _eval(h.root)
    return results
