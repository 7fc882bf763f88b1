"""Hierarchical fuzzy multi-criteria evaluation engine."""

from .ahp import (
    ConsistencyReport,
    JudgmentMatrix,
    aggregate_expert_matrices,
    build_judgment_matrix,
    consistency,
    lambda_max,
    most_inconsistent_triad,
    ri_lookup,
    weights_geometric_mean,
)
from .fahp import (
    FuzzyConsistencyMatrix,
    FuzzyJudgmentMatrix,
    additive_consistency_residual,
    aggregate_expert_fuzzy,
    build_fuzzy_matrix,
    fuzzy_consistency_check,
    to_consistency_matrix,
    weights_geometric_mean_fuzzy,
    weights_linear,
)
from .fce import (
    EvaluationResult,
    evaluate_hierarchy,
    membership_from_tallies,
    overall_evaluate,
    single_factor_evaluate,
)
from .hierarchy import (
    EvaluationSet,
    Hierarchy,
    IndicatorNode,
    build_pcafe_default,
    default_evaluation_set,
    validate_hierarchy,
)
from .pipeline import ENGINE_VERSION, compute_all_weights, evaluate_session

__version__ = ENGINE_VERSION
