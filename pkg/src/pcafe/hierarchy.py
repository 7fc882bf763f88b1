"""Indicator trees, evaluation grade sets, and the built-in P-CAFE preset."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidEvaluationSet, InvalidHierarchy, Malformed, SchemaViolation

METRIC_KINDS = ("accuracy", "efficiency", "subjective", "objective", "none")


@dataclass(frozen=True)
class IndicatorNode:
    """One node of the indicator tree; empty children means leaf."""

    id: str
    label: str
    description: str = ""
    children: tuple["IndicatorNode", ...] = ()
    metric_kind: str = "none"

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Hierarchy:
    """An indicator tree rooted at the overall objective."""

    root: IndicatorNode

    @property
    def depth(self) -> int:
        def _d(node):
            if node.is_leaf:
                return 1
            return 1 + max(_d(c) for c in node.children)

        return _d(self.root)

    def nodes(self):
        """Preorder traversal of every node."""
        stack = [self.root]
        while stack:
            node = stack.pop(0)
            yield node
            stack[0:0] = list(node.children)

    def node(self, node_id: str) -> IndicatorNode | None:
        for n in self.nodes():
            if n.id == node_id:
                return n
        return None

    def non_leaves(self):
        return [n for n in self.nodes() if not n.is_leaf]

    def leaves(self):
        return [n for n in self.nodes() if n.is_leaf]


@dataclass(frozen=True)
class EvaluationSet:
    """Ordered grade labels with numeric scores, best grade first."""

    grades: tuple[tuple[str, float], ...]

    def __post_init__(self):
        if len(self.grades) < 2:
            raise InvalidEvaluationSet("need at least 2 grades")
        scores = [s for _, s in self.grades]
        if any(b >= a for a, b in zip(scores, scores[1:])):
            raise InvalidEvaluationSet(
                f"grade scores must be strictly decreasing, got {scores}"
            )

    @property
    def m(self) -> int:
        return len(self.grades)

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.grades]

    @property
    def scores(self) -> list[float]:
        return [score for _, score in self.grades]


def validate_hierarchy(h: Hierarchy | IndicatorNode) -> list[str]:
    """Collect invariant violations; empty list means the tree is valid."""
    root = h.root if isinstance(h, Hierarchy) else h
    violations: list[str] = []
    seen: set[str] = set()

    def _walk(node: IndicatorNode):
        if node.id in seen:
            violations.append(f"duplicate node id {node.id!r}")
        seen.add(node.id)
        if not node.id:
            violations.append("empty node id")
        if node.metric_kind not in METRIC_KINDS:
            violations.append(
                f"node {node.id!r}: unknown metric_kind {node.metric_kind!r}"
            )
        if node.children:
            if len(node.children) == 1:
                violations.append(
                    f"node {node.id!r}: non-leaf must have >= 2 children"
                )
            if node.metric_kind != "none":
                violations.append(
                    f"node {node.id!r}: metric_kind must be 'none' on non-leaf nodes"
                )
            for child in node.children:
                _walk(child)

    _walk(root)
    if root.is_leaf:
        violations.append("root must have children (depth >= 2)")
    return violations


def checked_hierarchy(root: IndicatorNode) -> Hierarchy:
    """Wrap a root node, raising InvalidHierarchy on any violation."""
    violations = validate_hierarchy(root)
    if violations:
        raise InvalidHierarchy(violations)
    return Hierarchy(root)


def default_evaluation_set() -> EvaluationSet:
    return EvaluationSet(
        (
            ("Excellent", 90.0),
            ("Good", 75.0),
            ("Fair", 60.0),
            ("Poor", 45.0),
            ("Very Poor", 30.0),
        )
    )


def _leaf(id_, label, description, kind):
    return IndicatorNode(id_, label, description, (), kind)


def build_pcafe_default() -> Hierarchy:
    """The built-in P-CAFE indicator tree: 5 primary dimensions, 16 leaves.

    Whether the Action dimension carries exactly the two secondary
    indicators below is uncertain in the source material; no third one is
    invented here.
    """
    perception = IndicatorNode(
        "perception",
        "Perception",
        "Ability to take in auditory, visual, and networked information",
        (
            _leaf("auditory_perception", "Auditory Perception",
                  "Ability to perceive sound", "accuracy"),
            _leaf("visual_perception", "Visual Perception",
                  "Ability to perceive visual stimuli", "accuracy"),
            _leaf("ecological_connectivity", "Ecological Connectivity",
                  "Ability to connect with transportation, daily life, mobile "
                  "devices, smart home systems, and real-time internet searches",
                  "objective"),
            _leaf("multimodal_input", "Multimodal Input",
                  "Capability to handle multiple modes of input", "accuracy"),
        ),
    )
    cognition = IndicatorNode(
        "cognition",
        "Cognition",
        "Language understanding, reasoning, and intent recognition",
        (
            _leaf("natural_language_processing", "Natural Language Processing",
                  "Accuracy in recognizing natural language and performing "
                  "logical reasoning and semantic inference", "accuracy"),
            _leaf("knowledge_reasoning", "Knowledge Reasoning",
                  "Ability to respond to queries about in-car manuals, driving "
                  "knowledge, and cultural and ethical matters", "accuracy"),
            _leaf("intent_recognition", "Intent Recognition",
                  "Accuracy in recognizing user commands, including contextual "
                  "understanding and filtering of unreasonable input",
                  "accuracy"),
        ),
    )
    action = IndicatorNode(
        "action",
        "Action",
        "Planning decisions and executing them",
        (
            _leaf("decision_making_planning", "Decision-Making Planning",
                  "Comprehensive planning ability for decision-making, "
                  "including match between plans and goals, plan count, and "
                  "average planning time", "efficiency"),
            _leaf("execution", "Execution",
                  "Ability to execute planning tasks: success rate across "
                  "seating areas, execution speed, and modes used",
                  "efficiency"),
        ),
    )
    feedback = IndicatorNode(
        "feedback",
        "Feedback",
        "User-experience feedback during interaction",
        (
            _leaf("usability", "Usability",
                  "Effectiveness, efficiency, and satisfaction in supporting "
                  "users to complete specific tasks", "subjective"),
            _leaf("trust", "Trust",
                  "Users' confidence and expectations regarding reliability, "
                  "safety, predictability, and transparency", "subjective"),
            _leaf("load", "Load",
                  "Total cognitive and physical demands and stress experienced "
                  "when interacting with the model", "subjective"),
            _leaf("emotion", "Emotion",
                  "Ability to convey and manage emotional information through "
                  "human-like expressions, role-playing, and emotional "
                  "responses", "subjective"),
        ),
    )
    evolution = IndicatorNode(
        "evolution",
        "Evolution",
        "Capacity to retain, learn, and develop consistent behavior",
        (
            _leaf("memory", "Memory",
                  "Ability to retain and utilize contextual information over "
                  "one or multiple conversation rounds", "objective"),
            _leaf("learning", "Learning",
                  "Ability to dynamically adjust functions and services by "
                  "monitoring and analyzing user behavior and preferences",
                  "objective"),
            _leaf("personality", "Personality",
                  "Display of consistent behavior patterns, attitudes, "
                  "preferences, and emotional characteristics", "subjective"),
        ),
    )
    root = IndicatorNode(
        "iclm_capability",
        "ICLM capability",
        "Overall capability of the intelligent cockpit large model",
        (perception, cognition, action, feedback, evolution),
    )
    return checked_hierarchy(root)


# -- JSON serialization -----------------------------------------------------

_NODE_FIELDS = {"id", "label", "description", "metric_kind", "children"}


def node_to_dict(node: IndicatorNode) -> dict:
    return {
        "id": node.id,
        "label": node.label,
        "description": node.description,
        "metric_kind": node.metric_kind,
        "children": [node_to_dict(c) for c in node.children],
    }


def hierarchy_to_dict(h: Hierarchy) -> dict:
    return node_to_dict(h.root)


def node_from_dict(doc: dict, path: str = "root") -> IndicatorNode:
    if not isinstance(doc, dict):
        raise SchemaViolation(f"{path}: expected object")
    unknown = set(doc) - _NODE_FIELDS
    if unknown:
        raise SchemaViolation(f"{path}: unknown fields {sorted(unknown)}")
    for key in ("id", "label"):
        if not isinstance(doc.get(key), str):
            raise SchemaViolation(f"{path}: field {key!r} must be a string")
    description = doc.get("description", "")
    if not isinstance(description, str):
        raise SchemaViolation(f"{path}: 'description' must be a string")
    metric_kind = doc.get("metric_kind", "none")
    if metric_kind not in METRIC_KINDS:
        raise SchemaViolation(f"{path}: bad metric_kind {metric_kind!r}")
    children_doc = doc.get("children", [])
    if not isinstance(children_doc, list):
        raise SchemaViolation(f"{path}: 'children' must be a list")
    children = tuple(
        node_from_dict(c, f"{path}.children[{i}]")
        for i, c in enumerate(children_doc)
    )
    return IndicatorNode(doc["id"], doc["label"], description, children, metric_kind)


def hierarchy_from_dict(doc: dict) -> Hierarchy:
    return checked_hierarchy(node_from_dict(doc))


def parse_hierarchy(text: str | bytes) -> Hierarchy:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise Malformed(f"hierarchy file is not valid JSON: {exc}") from exc
    return hierarchy_from_dict(doc)


def evaluation_set_to_list(v: EvaluationSet) -> list[dict]:
    return [{"label": label, "score": score} for label, score in v.grades]


def evaluation_set_from_list(doc, path: str = "evaluation_set") -> EvaluationSet:
    if not isinstance(doc, list):
        raise SchemaViolation(f"{path}: expected a list")
    grades = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict) or set(entry) != {"label", "score"}:
            raise SchemaViolation(
                f"{path}[{i}]: expected object with exactly 'label' and 'score'"
            )
        if not isinstance(entry["label"], str):
            raise SchemaViolation(f"{path}[{i}]: 'label' must be a string")
        if not isinstance(entry["score"], (int, float)) or isinstance(
            entry["score"], bool
        ):
            raise SchemaViolation(f"{path}[{i}]: 'score' must be a number")
        grades.append((entry["label"], float(entry["score"])))
    return EvaluationSet(tuple(grades))
