"""End-to-end wiring: sessions in, weight bundles and report documents out.

Shared by the CLI and the HTTP service so both surfaces produce identical
reports for identical sessions.
"""

from __future__ import annotations

import json

import numpy as np

from . import ahp, elicitation, fahp, fce
from .errors import ConsistencyFailure, ParameterError
from .elicitation import Session, validate_environment

ENGINE_VERSION = "0.1.0"

WEIGHT_METHODS = ("geometric", "linear")


def _crisp_diag(matrix: ahp.JudgmentMatrix, ri_table) -> dict:
    diag = ahp.consistency(matrix, ri_table).to_dict()
    if matrix.n >= 3:
        i, j, k, dev = ahp.most_inconsistent_triad(matrix)
        diag["worst_triad"] = {"i": i, "j": j, "k": k, "deviation": dev}
    return diag


def _fuzzy_diag(matrix: fahp.FuzzyJudgmentMatrix, ri_table) -> dict:
    w = fahp.weights_geometric_mean_fuzzy(fahp.to_consistency_matrix(matrix))
    diag = fahp.fuzzy_consistency_check(matrix, w, ri_table).to_dict()
    if matrix.n >= 3:
        i, j, k, dev = fahp.most_inconsistent_triad_fuzzy(matrix)
        diag["worst_triad"] = {"i": i, "j": j, "k": k, "deviation": dev}
    return diag


def node_weights(
    s: Session,
    node_id: str,
    method: str = "geometric",
    theta: float | None = None,
    ri_table: dict[int, float] | None = None,
) -> dict:
    """Aggregated weight vector plus consistency diagnostics for one node."""
    if method not in WEIGHT_METHODS:
        raise ParameterError(f"unknown weight method {method!r}")
    node = s.hierarchy.node(node_id)
    matrices = elicitation.assemble_matrices(s, node_id)
    n = len(node.children)

    if s.scale == "crisp_1_9":
        if method == "linear":
            raise ParameterError(
                "the linear weight method applies to fuzzy sessions only"
            )
        aggregated = ahp.aggregate_expert_matrices(matrices)
        weights = ahp.weights_geometric_mean(aggregated)
        per_expert = {
            e.expert_id: _crisp_diag(m, ri_table)
            for e, m in zip(s.experts, matrices)
        }
        agg_diag = _crisp_diag(aggregated, ri_table)
        theta_used = None
    else:
        aggregated = fahp.aggregate_expert_fuzzy(matrices)
        consistency_matrix = fahp.to_consistency_matrix(aggregated)
        if method == "geometric":
            weights = fahp.weights_geometric_mean_fuzzy(consistency_matrix)
            theta_used = None
        else:
            theta_used = fahp.min_theta(n) if theta is None else float(theta)
            weights = fahp.weights_linear(consistency_matrix, theta_used)
        per_expert = {
            e.expert_id: _fuzzy_diag(m, ri_table)
            for e, m in zip(s.experts, matrices)
        }
        agg_diag = _fuzzy_diag(aggregated, ri_table)

    bundle = {
        "node_id": node_id,
        "label": node.label,
        "children": [c.id for c in node.children],
        "method": method,
        "weights": [float(w) for w in weights],
        "per_expert": per_expert,
        "aggregated": agg_diag,
    }
    if theta_used is not None:
        bundle["theta"] = theta_used
        bundle["theta_minimum"] = fahp.min_theta(n)
    return bundle


def compute_all_weights(
    s: Session,
    method: str = "geometric",
    theta: float | None = None,
    ri_table: dict[int, float] | None = None,
) -> dict[str, dict]:
    return {
        node.id: node_weights(s, node.id, method, theta, ri_table)
        for node in s.hierarchy.non_leaves()
    }


def leaf_distributions(s: Session) -> dict[str, np.ndarray]:
    return {
        leaf.id: fce.membership_from_tallies(
            elicitation.tally_ratings(s, leaf.id), s.expert_count
        )
        for leaf in s.hierarchy.leaves()
    }


def evaluate_session(
    s: Session,
    method: str = "geometric",
    theta: float | None = None,
    ri_table: dict[int, float] | None = None,
) -> dict:
    """Full report: weights, per-node evaluation results, and warnings.

    The report is a deterministic function of the session and flags; no
    timestamps, so re-runs are byte-identical after canonical dumping.
    """
    bundles = compute_all_weights(s, method, theta, ri_table)
    weight_map = {nid: np.asarray(b["weights"]) for nid, b in bundles.items()}
    leaves = leaf_distributions(s)
    results = fce.evaluate_hierarchy(
        s.hierarchy, weight_map, leaves, s.evaluation_set
    )
    labels = {n.id: n.label for n in s.hierarchy.nodes()}
    report = {
        "engine_version": ENGINE_VERSION,
        "input_digests": {"session": elicitation.session_digest(s)},
        "session_id": s.session_id,
        "scale": s.scale,
        "method": method,
        "theta": theta,
        "evaluation_set": [
            {"label": label, "score": score}
            for label, score in s.evaluation_set.grades
        ],
        "environment_warnings": (
            validate_environment(s.environment) if s.environment else []
        ),
        "weights": bundles,
        "results": {
            nid: {"label": labels[nid], **res.to_dict()}
            for nid, res in results.items()
        },
        "root": s.hierarchy.root.id,
    }
    return report


def canonical_report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def validate_session(
    s: Session, ri_table: dict[int, float] | None = None
) -> dict:
    """Completeness plus CR-gate diagnostics for every node and expert.

    Raises IncompleteDataError variants when matrices are missing; returns
    a diagnostics document with ok=False when any CR >= 0.1.
    """
    nodes: dict[str, dict] = {}
    failures: list[dict] = []
    for node in s.hierarchy.non_leaves():
        bundle = node_weights(s, node.id, "geometric", None, ri_table)
        nodes[node.id] = {
            "per_expert": bundle["per_expert"],
            "aggregated": bundle["aggregated"],
        }
        for expert_id, diag in bundle["per_expert"].items():
            if not diag["consistent"]:
                failures.append(
                    {
                        "node": node.id,
                        "expert": expert_id,
                        "cr": diag["cr"],
                        "worst_triad": diag.get("worst_triad"),
                    }
                )
        if not bundle["aggregated"]["consistent"]:
            failures.append(
                {
                    "node": node.id,
                    "expert": None,
                    "cr": bundle["aggregated"]["cr"],
                    "worst_triad": bundle["aggregated"].get("worst_triad"),
                }
            )
    return {"ok": not failures, "failures": failures, "nodes": nodes}


def require_consistent(s: Session, ri_table: dict[int, float] | None = None) -> dict:
    diagnostics = validate_session(s, ri_table)
    if not diagnostics["ok"]:
        raise ConsistencyFailure(diagnostics["failures"])
    return diagnostics
