"""Empirical robustness analysis: Monte Carlo judgment perturbation and
sweeps over the linear weight method's theta parameter."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ahp, fahp, fce, pipeline
from .elicitation import ExpertRecord, Session
from .errors import ParameterError, ThetaTooSmall


@dataclass(frozen=True)
class PerturbationSpec:
    epsilon: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.epsilon < 0:
            raise ParameterError("epsilon must be >= 0")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")


@dataclass(frozen=True)
class StabilityReport:
    trials: int
    epsilon: float
    seed: int
    baseline_verdict: int
    top_rank_stability: float
    # child node id -> {"min", "mean", "max"} of its aggregated weight
    weight_spread: dict[str, dict[str, float]]
    cr_rejection_rate: float

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "epsilon": self.epsilon,
            "seed": self.seed,
            "baseline_verdict": self.baseline_verdict,
            "top_rank_stability": self.top_rank_stability,
            "weight_spread": self.weight_spread,
            "cr_rejection_rate": self.cr_rejection_rate,
        }


def _perturb_crisp(value: float, u: float, epsilon: float) -> float:
    out = value * float(np.exp(u * epsilon))
    return min(max(out, ahp.SCALE_MIN), ahp.SCALE_MAX)


def _perturb_fuzzy(value: float, u: float, epsilon: float) -> float:
    out = value + u * epsilon
    return min(max(out, fahp.FUZZY_SCALE_MIN), fahp.FUZZY_SCALE_MAX)


def _perturbed_session(s: Session, epsilon: float, rng: np.random.Generator) -> Session:
    perturb = _perturb_crisp if s.scale == "crisp_1_9" else _perturb_fuzzy
    experts = []
    for expert in s.experts:
        judgments = {}
        for node_id in sorted(expert.judgments):
            entries = expert.judgments[node_id]
            u = rng.uniform(-1.0, 1.0, size=len(entries))
            judgments[node_id] = [
                (i, j, value if epsilon == 0 else perturb(value, float(uk), epsilon))
                for (i, j, value), uk in zip(entries, u)
            ]
        experts.append(ExpertRecord(expert.expert_id, judgments, expert.ratings))
    return Session(
        s.session_id, s.hierarchy, s.scale, s.evaluation_set,
        tuple(experts), s.environment,
    )


def _evaluate(s: Session, method, theta, ri_table):
    bundles = pipeline.compute_all_weights(s, method, theta, ri_table)
    weight_map = {nid: np.asarray(b["weights"]) for nid, b in bundles.items()}
    leaves = pipeline.leaf_distributions(s)
    results = fce.evaluate_hierarchy(
        s.hierarchy, weight_map, leaves, s.evaluation_set
    )
    return bundles, results


def perturb_and_evaluate(
    s: Session,
    spec: PerturbationSpec,
    method: str = "geometric",
    theta: float | None = None,
    ri_table: dict[int, float] | None = None,
) -> StabilityReport:
    """Re-run the whole pipeline under seeded random judgment noise.

    Crisp judgments are scaled by exp(u * epsilon), fuzzy ones shifted by
    u * epsilon, u ~ U[-1, 1]; both are clamped back into their scale.
    Trial t draws from a sub-seed derived from (seed, t), so reports are
    bit-identical for identical inputs.
    """
    _, baseline_results = _evaluate(s, method, theta, ri_table)
    root_id = s.hierarchy.root.id
    baseline_verdict = baseline_results[root_id].verdict

    child_ids = [
        c.id for node in s.hierarchy.non_leaves() for c in node.children
    ]
    samples: dict[str, list[float]] = {cid: [] for cid in child_ids}
    mins = {cid: float("inf") for cid in child_ids}
    maxs = {cid: float("-inf") for cid in child_ids}
    verdict_hits = 0
    cr_rejections = 0

    for trial in range(spec.trials):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=spec.seed, spawn_key=(trial,))
        )
        trial_session = _perturbed_session(s, spec.epsilon, rng)
        bundles, results = _evaluate(trial_session, method, theta, ri_table)
        if results[root_id].verdict == baseline_verdict:
            verdict_hits += 1
        rejected = False
        for bundle in bundles.values():
            diags = [bundle["aggregated"], *bundle["per_expert"].values()]
            if any(not d["consistent"] for d in diags):
                rejected = True
            for cid, w in zip(bundle["children"], bundle["weights"]):
                samples[cid].append(w)
                mins[cid] = min(mins[cid], w)
                maxs[cid] = max(maxs[cid], w)
        if rejected:
            cr_rejections += 1

    spread = {
        # fsum + clamp keeps the mean exact when every trial agrees
        cid: {
            "min": mins[cid],
            "mean": min(max(math.fsum(samples[cid]) / spec.trials, mins[cid]), maxs[cid]),
            "max": maxs[cid],
        }
        for cid in child_ids
    }
    return StabilityReport(
        trials=spec.trials,
        epsilon=spec.epsilon,
        seed=spec.seed,
        baseline_verdict=baseline_verdict,
        top_rank_stability=verdict_hits / spec.trials,
        weight_spread=spread,
        cr_rejection_rate=cr_rejections / spec.trials,
    )


def theta_sweep(
    r: fahp.FuzzyConsistencyMatrix, theta_values: list[float]
) -> list[tuple[float, np.ndarray]]:
    """Linear weights at each theta; the ranking never changes across theta."""
    lo = fahp.min_theta(r.n)
    for theta in theta_values:
        if theta < lo - 1e-12:
            raise ThetaTooSmall(theta, lo)
    return [(theta, fahp.weights_linear(r, theta)) for theta in theta_values]
