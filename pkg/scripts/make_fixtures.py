"""Regenerate the committed test fixtures (deterministic, seed 42).

Run from the repo root:  python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from pcafe import build_pcafe_default, validate_hierarchy
from pcafe.hierarchy import hierarchy_to_dict
from pcafe.elicitation import CRISP_POINTS
from pcafe.pipeline import validate_session
from pcafe.elicitation import parse_session

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

DEFAULT_V = [
    {"label": "Excellent", "score": 90},
    {"label": "Good", "score": 75},
    {"label": "Fair", "score": 60},
    {"label": "Poor", "score": 45},
    {"label": "Very Poor", "score": 30},
]

ENVIRONMENT = {
    "ambient_noise_dba": 55,
    "snr_db": 20,
    "mic_distance_overhead_cm": 45,
    "mic_distance_dashboard_cm": 70,
    "video_positions": 2,
    "audio_points": 1,
    "capture_fps": 60,
}


def snap_crisp(x: float) -> float:
    return min(CRISP_POINTS, key=lambda p: abs(p - x))


def snap_fuzzy(x: float) -> float:
    return round(min(max(round(x * 10) / 10, 0.1), 0.9), 1)


def crisp_judgments(rng, hierarchy):
    """Near-consistent 1-9 judgments per non-leaf node for one expert."""
    out = {}
    for node in hierarchy.non_leaves():
        n = len(node.children)
        # descending priorities, mild expert-specific noise
        v = np.linspace(2.2, 1.0, n) * np.exp(rng.normal(0, 0.08, n))
        entries = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                entries.append([i, j, snap_crisp(v[i - 1] / v[j - 1])])
        out[node.id] = entries
    return out


def fuzzy_judgments(rng, hierarchy):
    out = {}
    for node in hierarchy.non_leaves():
        n = len(node.children)
        p = np.linspace(0.15, -0.15, n)
        entries = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                noise = rng.integers(-1, 2) * 0.1
                entries.append([i, j, snap_fuzzy(0.5 + p[i - 1] - p[j - 1] + noise)])
        out[node.id] = entries
    return out


def ratings(rng, hierarchy, expert_index):
    offsets = [0, 0, 0, 1, 0, -1, 0, 0, 1, 0]
    out = {}
    for k, leaf in enumerate(hierarchy.leaves()):
        true_grade = 1 + (k % 3)
        offset = offsets[(expert_index + k) % len(offsets)]
        out[leaf.id] = int(min(max(true_grade + offset, 1), 5))
    return out


def build_session(session_id, scale, n_experts, seed):
    rng = np.random.default_rng(seed)
    hierarchy = build_pcafe_default()
    make = crisp_judgments if scale == "crisp_1_9" else fuzzy_judgments
    experts = [
        {
            "expert_id": f"expert_{k + 1:02d}",
            "judgments": make(rng, hierarchy),
            "ratings": ratings(rng, hierarchy, k),
        }
        for k in range(n_experts)
    ]
    return {
        "session_id": session_id,
        "scale": scale,
        "hierarchy": hierarchy_to_dict(hierarchy),
        "evaluation_set": DEFAULT_V,
        "environment": ENVIRONMENT,
        "experts": experts,
    }


def build_neartie(seed):
    hierarchy = {
        "id": "goal",
        "label": "Goal",
        "description": "",
        "metric_kind": "none",
        "children": [
            {"id": "left", "label": "Left", "description": "",
             "metric_kind": "subjective", "children": []},
            {"id": "right", "label": "Right", "description": "",
             "metric_kind": "subjective", "children": []},
        ],
    }
    experts = [
        {
            "expert_id": f"expert_{k + 1:02d}",
            "judgments": {"goal": [[1, 2, 1]]},
            "ratings": {"left": 1, "right": 5},
        }
        for k in range(4)
    ]
    return {
        "session_id": "neartie",
        "scale": "crisp_1_9",
        "hierarchy": hierarchy,
        "evaluation_set": DEFAULT_V,
        "experts": experts,
    }


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)

    fuzzy = build_session("pcafe-fuzzy-panel10", "fuzzy_01_09", 10, 42)
    crisp = build_session("pcafe-crisp-panel10", "crisp_1_9", 10, 43)

    # same panel with one expert's cognition matrix replaced by a cyclic one
    inconsistent = json.loads(json.dumps(crisp))
    inconsistent["session_id"] = "pcafe-crisp-cyclic"
    inconsistent["experts"][2]["judgments"]["cognition"] = [
        [1, 2, 3], [1, 3, 0.2], [2, 3, 3],
    ]

    neartie = build_neartie(0)

    for name, doc in [
        ("session_fuzzy_10experts.json", fuzzy),
        ("session_crisp_10experts.json", crisp),
        ("session_crisp_inconsistent.json", inconsistent),
        ("session_neartie.json", neartie),
    ]:
        path = FIXTURES / name
        path.write_text(json.dumps(doc, indent=2) + "\n")
        session = parse_session(path.read_bytes())
        diag = validate_session(session)
        expect_ok = name != "session_crisp_inconsistent.json"
        status = "ok" if diag["ok"] else "CR failures"
        assert diag["ok"] == expect_ok, (name, diag["failures"])
        print(f"{name}: parsed, {status}")


if __name__ == "__main__":
    main()
