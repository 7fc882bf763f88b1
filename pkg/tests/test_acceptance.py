"""Acceptance gate: one test per headline engine guarantee.

Each test prints a single PASS line when its criterion holds; a failed
assertion marks the criterion as failed.
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from pcafe import ahp, fahp, fce, pipeline
from pcafe.cli import main
from pcafe.elicitation import EnvironmentMetadata, parse_session, validate_environment
from pcafe.hierarchy import (
    Hierarchy,
    IndicatorNode,
    build_pcafe_default,
    default_evaluation_set,
    validate_hierarchy,
)
from pcafe.service import SessionStore, create_app

from .conftest import FIXTURES, load_fixture
from .oracle_reference import evaluate_session_reference, power_iteration_lambda_max


def _announce(criterion: str):
    print(f"PASS  {criterion}")


def test_ri_table_matches_published_constants():
    expected = [0, 0, 0.58, 0.9, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51]
    for n, value in zip(range(1, 12), expected):
        assert ahp.ri_lookup(n) == value
    _announce("RI table: exact published values for n = 1..11")


def test_pcafe_preset_structure():
    h = build_pcafe_default()
    assert validate_hierarchy(h.root) == []
    primaries = [c.label for c in h.root.children]
    assert primaries == ["Perception", "Cognition", "Action", "Feedback", "Evolution"]
    expected_leaves = {
        "perception": [
            "auditory_perception", "visual_perception",
            "ecological_connectivity", "multimodal_input",
        ],
        "cognition": [
            "natural_language_processing", "knowledge_reasoning",
            "intent_recognition",
        ],
        "action": ["decision_making_planning", "execution"],
        "feedback": ["usability", "trust", "load", "emotion"],
        "evolution": ["memory", "learning", "personality"],
    }
    for primary in h.root.children:
        assert [c.id for c in primary.children] == expected_leaves[primary.id]
        assert all(c.is_leaf for c in primary.children)
    assert len(h.leaves()) == 16
    _announce("P-CAFE preset: 5 primary dimensions in order, 16 leaves with stated parents")


def test_consistent_matrix_recovery():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(3, 10))
        v = np.exp(rng.uniform(0, np.log(3), size=n))
        a = ahp.JudgmentMatrix(v[:, None] / v[None, :])
        w = ahp.weights_geometric_mean(a)
        assert np.allclose(w, v / v.sum(), atol=1e-9)
        report = ahp.consistency(a)
        assert abs(report.lambda_max - n) < 1e-9
        assert abs(report.cr) < 1e-9
    _announce("Consistent-matrix recovery: 1000 ratio matrices, n = 3..9, 1e-9")


def test_fuzzy_transform_theorem():
    rng = np.random.default_rng(77)
    for _ in range(1000):
        n = int(rng.integers(3, 10))
        m = np.full((n, n), 0.5)
        for i in range(n):
            for j in range(i + 1, n):
                m[i, j] = rng.uniform(0.1, 0.9)
                m[j, i] = 1 - m[i, j]
        r = fahp.to_consistency_matrix(fahp.FuzzyJudgmentMatrix(m))
        assert fahp.additive_consistency_residual(r) <= 1e-12
        assert np.max(np.abs(r.values + r.values.T - 1)) <= 1e-12
    _announce("Fuzzy-transform theorem: 1000 random matrices, residual <= 1e-12")


def test_weight_normalization_and_theta_invariance():
    rng = np.random.default_rng(4099)
    for _ in range(300):
        n = int(rng.integers(3, 10))

        crisp = np.eye(n)
        for i in range(n):
            for j in range(i + 1, n):
                crisp[i, j] = np.exp(rng.uniform(np.log(1 / 9), np.log(9)))
                crisp[j, i] = 1 / crisp[i, j]
        w = ahp.weights_geometric_mean(ahp.JudgmentMatrix(crisp))
        assert abs(w.sum() - 1) < 1e-12 and (w >= 0).all()

        m = np.full((n, n), 0.5)
        iu = np.triu_indices(n, 1)
        m[iu] = rng.uniform(0.1, 0.9, size=len(iu[0]))
        m.T[iu] = 1 - m[iu]
        r = fahp.to_consistency_matrix(fahp.FuzzyJudgmentMatrix(m))
        wg = fahp.weights_geometric_mean_fuzzy(r)
        assert abs(wg.sum() - 1) < 1e-12 and (wg >= 0).all()

        thetas = [(n - 1) / 2, float(n), 10.0 * n]
        rankings = []
        for theta in thetas:
            wl = fahp.weights_linear(r, theta)
            assert abs(wl.sum() - 1) < 1e-12 and (wl >= 0).all()
            rankings.append(tuple(np.argsort(wl, kind="stable")))
        assert rankings[0] == rankings[1] == rankings[2]
    _announce(
        "Weight normalization: sums 1 within 1e-12, nonnegative;"
        " linear ranking theta-invariant"
    )


def test_cr_gate():
    cyclic = ahp.JudgmentMatrix(
        np.array([[1, 3, 1 / 5], [1 / 3, 1, 3], [5, 1 / 3, 1]])
    )
    report = ahp.consistency(cyclic)
    assert not report.consistent
    assert report.cr > 0.1
    lam_pi = power_iteration_lambda_max(cyclic.values.tolist())
    assert report.lambda_max == pytest.approx(lam_pi, abs=1e-6)

    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 10))
        v = np.exp(rng.uniform(0, 1, size=n))
        consistent = ahp.consistency(ahp.JudgmentMatrix(v[:, None] / v[None, :]))
        assert consistent.consistent
        assert consistent.cr == pytest.approx(0, abs=1e-9)
    _announce("CR gate: cyclic 3x3 rejected (CR > 0.1), consistent matrices pass with CR = 0")


def _random_tree(rng, depth, prefix="n"):
    fanout = int(rng.integers(2, 7))
    children = []
    for k in range(fanout):
        cid = f"{prefix}{k}"
        if depth > 2 and rng.random() < 0.5:
            children.append(_random_tree(rng, depth - 1, cid))
        else:
            children.append(IndicatorNode(cid, cid, "", (), "subjective"))
    return IndicatorNode(prefix, prefix, "", tuple(children))


def test_fce_closure_and_monotonicity():
    v = default_evaluation_set()
    m = v.m
    scores = [s for _, s in v.grades]
    rng = np.random.default_rng(99)
    for _ in range(500):
        h = Hierarchy(_random_tree(rng, int(rng.integers(2, 5))))
        weights = {}
        for node in h.non_leaves():
            raw = rng.uniform(0.05, 1, size=len(node.children))
            weights[node.id] = raw / raw.sum()
        dists = {}
        for leaf in h.leaves():
            raw = rng.uniform(0, 1, size=m)
            dists[leaf.id] = raw / raw.sum()
        results = fce.evaluate_hierarchy(h, weights, dists, v)
        for res in results.values():
            assert abs(sum(res.distribution) - 1) <= 1e-12
            assert min(scores) <= res.score <= max(scores)

        # move some mass from a worse grade to a better one at a random leaf
        leaf = h.leaves()[int(rng.integers(0, len(h.leaves())))]
        d = dists[leaf.id].copy()
        worse = int(rng.integers(1, m))
        better = int(rng.integers(0, worse))
        shift = d[worse] * rng.uniform(0, 1)
        d[worse] -= shift
        d[better] += shift
        dists[leaf.id] = d
        shifted = fce.evaluate_hierarchy(h, weights, dists, v)
        for nid, res in results.items():
            assert shifted[nid].score >= res.score - 1e-12
    _announce(
        "FCE closure: distributions sum to 1, scores bounded by the grade"
        " scores, 500 monotone shift tests"
    )


def test_end_to_end_oracle():
    doc = load_fixture("session_fuzzy_10experts.json")
    session = parse_session(json.dumps(doc))
    report = pipeline.evaluate_session(session)
    expected = evaluate_session_reference(doc)
    _, root_score = expected["iclm_capability"]
    assert report["results"]["iclm_capability"]["score"] == pytest.approx(
        root_score, abs=1e-9
    )
    again = pipeline.evaluate_session(session)
    assert pipeline.canonical_report_json(report) == pipeline.canonical_report_json(
        again
    )
    _announce(
        "End-to-end oracle: committed 10-expert session root score matches"
        " independent recomputation to 1e-9; byte-identical re-run"
    )


def test_cli_service_equivalence(tmp_path):
    doc = load_fixture("session_crisp_10experts.json")
    client = TestClient(create_app(SessionStore()))
    sid = client.post(
        "/sessions",
        json={
            "hierarchy": doc["hierarchy"],
            "scale": doc["scale"],
            "evaluation_set": doc["evaluation_set"],
            "experts": [e["expert_id"] for e in doc["experts"]],
            "environment": doc.get("environment"),
        },
    ).json()["session_id"]
    for expert in doc["experts"]:
        eid = expert["expert_id"]
        for node, entries in expert["judgments"].items():
            for i, j, value in entries:
                resp = client.put(
                    f"/sessions/{sid}/experts/{eid}/judgments/{node}",
                    json={"i": i, "j": j, "value": value},
                )
                assert resp.status_code == 200
        for leaf, grade in expert["ratings"].items():
            resp = client.put(
                f"/sessions/{sid}/experts/{eid}/ratings/{leaf}",
                json={"grade": grade},
            )
            assert resp.status_code == 200

    service_report = client.get(f"/sessions/{sid}/results").json()
    exported = tmp_path / "exported.json"
    exported.write_text(json.dumps(client.get(f"/sessions/{sid}/export").json()))
    result = CliRunner().invoke(main, ["evaluate", str(exported), "--json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output) == service_report
    _announce("CLI/service equivalence: exported live session evaluates identically")


def test_environment_validator_examples():
    compliant = EnvironmentMetadata(
        ambient_noise_dba=50,
        snr_db=20,
        mic_distance_overhead_cm=45,
        mic_distance_dashboard_cm=70,
        video_positions=2,
        audio_points=1,
        capture_fps=60,
    )
    assert validate_environment(compliant) == []

    low_snr = validate_environment(EnvironmentMetadata(snr_db=12))
    assert len(low_snr) == 1 and "15 dB" in low_snr[0]

    far_mic = validate_environment(EnvironmentMetadata(mic_distance_overhead_cm=70))
    assert len(far_mic) == 1 and "35-55 cm" in far_mic[0]
    _announce("Environment validator: compliant set clean; SNR 12 and overhead 70 cm flagged")
