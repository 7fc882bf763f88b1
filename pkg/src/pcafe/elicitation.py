"""Expert survey session ingestion: parsing, matrix assembly, rating
tallies, measurement-environment checks, and metric banding."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field

from . import ahp, fahp
from .errors import (
    BadGrade,
    IncompleteJudgments,
    InvalidHierarchy,
    Malformed,
    MissingRating,
    NoBanding,
    ScaleMismatch,
    SchemaViolation,
    UnknownNode,
)
from .hierarchy import (
    EvaluationSet,
    Hierarchy,
    evaluation_set_from_list,
    evaluation_set_to_list,
    hierarchy_from_dict,
    hierarchy_to_dict,
    validate_hierarchy,
)

SCALES = ("crisp_1_9", "fuzzy_01_09")

# nominal 1-9 points incl. reciprocals; survey files may carry decimal
# approximations of 1/3, 1/7, ...
CRISP_POINTS = sorted({float(k) for k in range(1, 10)} | {1.0 / k for k in range(1, 10)})
CRISP_POINT_TOL = 1e-6


@dataclass(frozen=True)
class EnvironmentMetadata:
    ambient_noise_dba: float | None = None
    snr_db: float | None = None
    mic_distance_overhead_cm: float | None = None
    mic_distance_dashboard_cm: float | None = None
    video_positions: int | None = None
    audio_points: int | None = None
    capture_fps: float | None = None

    def to_dict(self) -> dict:
        out = {}
        for name in _ENV_FIELDS:
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


_ENV_FIELDS = (
    "ambient_noise_dba",
    "snr_db",
    "mic_distance_overhead_cm",
    "mic_distance_dashboard_cm",
    "video_positions",
    "audio_points",
    "capture_fps",
)


@dataclass(frozen=True)
class ExpertRecord:
    expert_id: str
    # non-leaf node id -> list of (i, j, value) with 1-based i < j
    judgments: dict[str, list[tuple[int, int, float]]] = field(default_factory=dict)
    # leaf id -> 1-based grade index
    ratings: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Session:
    session_id: str
    hierarchy: Hierarchy
    scale: str
    evaluation_set: EvaluationSet
    experts: tuple[ExpertRecord, ...]
    environment: EnvironmentMetadata | None = None

    @property
    def expert_count(self) -> int:
        return len(self.experts)


@dataclass(frozen=True)
class BandingRule:
    direction: str  # "higher_is_better" | "lower_is_better"
    thresholds: tuple[float, ...]  # boundary of each grade, best first

    def __post_init__(self):
        if self.direction not in ("higher_is_better", "lower_is_better"):
            raise SchemaViolation(f"bad banding direction {self.direction!r}")
        ts = list(self.thresholds)
        ordered = ts == sorted(ts, reverse=True) if self.direction == "higher_is_better" else ts == sorted(ts)
        if not ordered or len(set(ts)) != len(ts):
            raise SchemaViolation(
                "banding thresholds must be strictly ordered best-grade first"
            )


@dataclass(frozen=True)
class MetricBanding:
    rules: dict[str, BandingRule]


def band_metric(value: float, kind: str, banding: MetricBanding) -> int:
    """1-based grade for a raw metric; boundary values go to the better grade."""
    rule = banding.rules.get(kind)
    if rule is None:
        raise NoBanding(kind)
    for grade, threshold in enumerate(rule.thresholds, start=1):
        if rule.direction == "higher_is_better":
            if value >= threshold:
                return grade
        else:
            if value <= threshold:
                return grade
    return len(rule.thresholds) + 1


# -- environment validation -------------------------------------------------

def validate_environment(env: EnvironmentMetadata) -> list[str]:
    """One warning per violated measurement-protocol bound; never blocking."""
    warnings = []

    def _has(name):
        return getattr(env, name) is not None

    if _has("ambient_noise_dba") and not (45.0 <= env.ambient_noise_dba <= 65.0):
        warnings.append(
            f"ambient noise {env.ambient_noise_dba} dB(A) outside the "
            "recommended 45-65 dB(A) range"
        )
    if _has("snr_db") and not (env.snr_db > 15.0):
        warnings.append(
            f"signal-to-noise ratio {env.snr_db} dB is not greater than "
            "the required 15 dB"
        )
    if _has("mic_distance_overhead_cm") and not (
        35.0 <= env.mic_distance_overhead_cm <= 55.0
    ):
        warnings.append(
            f"overhead microphone distance {env.mic_distance_overhead_cm} cm "
            "outside the recommended 35-55 cm range"
        )
    if _has("mic_distance_dashboard_cm") and not (
        65.0 <= env.mic_distance_dashboard_cm <= 75.0
    ):
        warnings.append(
            f"dashboard microphone distance {env.mic_distance_dashboard_cm} cm "
            "outside the recommended 65-75 cm range"
        )
    if _has("video_positions") and env.video_positions < 2:
        warnings.append(
            f"{env.video_positions} video recording position(s); at least 2 "
            "are recommended"
        )
    if _has("audio_points") and env.audio_points < 1:
        warnings.append(
            f"{env.audio_points} audio collection point(s); at least 1 is "
            "recommended"
        )
    if _has("capture_fps") and env.capture_fps < 60.0:
        warnings.append(
            f"capture rate {env.capture_fps} fps below the recommended "
            "60 fps minimum"
        )
    return warnings


# -- session parsing --------------------------------------------------------

def _check_crisp_value(value: float, where: str):
    if not any(abs(value - p) <= CRISP_POINT_TOL for p in CRISP_POINTS):
        raise ScaleMismatch(
            f"{where}: value {value} is not a 1-9 scale point or reciprocal"
        )


def _check_fuzzy_value(value: float, where: str):
    if not (fahp.FUZZY_SCALE_MIN - 1e-12 <= value <= fahp.FUZZY_SCALE_MAX + 1e-12):
        raise ScaleMismatch(f"{where}: value {value} outside the 0.1-0.9 scale")


_SESSION_FIELDS = {
    "session_id",
    "scale",
    "hierarchy",
    "evaluation_set",
    "environment",
    "experts",
}
_EXPERT_FIELDS = {"expert_id", "judgments", "ratings"}


def _parse_environment(doc, path="environment") -> EnvironmentMetadata:
    if not isinstance(doc, dict):
        raise SchemaViolation(f"{path}: expected object")
    unknown = set(doc) - set(_ENV_FIELDS)
    if unknown:
        raise SchemaViolation(f"{path}: unknown fields {sorted(unknown)}")
    kwargs = {}
    for name in _ENV_FIELDS:
        if name not in doc:
            continue
        value = doc[name]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaViolation(f"{path}.{name}: must be a number")
        if value < 0:
            raise SchemaViolation(f"{path}.{name}: must be nonnegative")
        if name in ("video_positions", "audio_points"):
            value = int(value)
        kwargs[name] = value
    return EnvironmentMetadata(**kwargs)


def session_from_dict(doc: dict) -> Session:
    if not isinstance(doc, dict):
        raise SchemaViolation("session document must be a JSON object")
    unknown = set(doc) - _SESSION_FIELDS
    if unknown:
        raise SchemaViolation(f"unknown session fields {sorted(unknown)}")
    for key in ("session_id", "scale", "hierarchy", "evaluation_set", "experts"):
        if key not in doc:
            raise SchemaViolation(f"missing session field {key!r}")
    if not isinstance(doc["session_id"], str) or not doc["session_id"]:
        raise SchemaViolation("'session_id' must be a nonempty string")
    scale = doc["scale"]
    if scale not in SCALES:
        raise SchemaViolation(f"'scale' must be one of {SCALES}, got {scale!r}")

    hierarchy = hierarchy_from_dict(doc["hierarchy"])
    violations = validate_hierarchy(hierarchy)
    if violations:
        raise InvalidHierarchy(violations)
    evaluation_set = evaluation_set_from_list(doc["evaluation_set"])

    environment = None
    if doc.get("environment") is not None:
        environment = _parse_environment(doc["environment"])

    non_leaf_ids = {n.id: len(n.children) for n in hierarchy.non_leaves()}
    leaf_ids = {n.id for n in hierarchy.leaves()}

    if not isinstance(doc["experts"], list):
        raise SchemaViolation("'experts' must be a list")
    experts = []
    seen_ids = set()
    for idx, edoc in enumerate(doc["experts"]):
        path = f"experts[{idx}]"
        if not isinstance(edoc, dict):
            raise SchemaViolation(f"{path}: expected object")
        unknown = set(edoc) - _EXPERT_FIELDS
        if unknown:
            raise SchemaViolation(f"{path}: unknown fields {sorted(unknown)}")
        eid = edoc.get("expert_id")
        if not isinstance(eid, str) or not eid:
            raise SchemaViolation(f"{path}: 'expert_id' must be a nonempty string")
        if eid in seen_ids:
            raise SchemaViolation(f"duplicate expert_id {eid!r}")
        seen_ids.add(eid)

        judgments: dict[str, list[tuple[int, int, float]]] = {}
        jdoc = edoc.get("judgments", {})
        if not isinstance(jdoc, dict):
            raise SchemaViolation(f"{path}.judgments: expected object")
        for node_id, entries in jdoc.items():
            if node_id not in non_leaf_ids:
                raise SchemaViolation(
                    f"{path}.judgments: {node_id!r} is not a non-leaf node"
                )
            n = non_leaf_ids[node_id]
            if not isinstance(entries, list):
                raise SchemaViolation(
                    f"{path}.judgments.{node_id}: expected a list of [i, j, value]"
                )
            parsed = []
            seen_pairs = set()
            for e in entries:
                if (
                    not isinstance(e, list)
                    or len(e) != 3
                    or not all(isinstance(x, (int, float)) for x in e)
                ):
                    raise SchemaViolation(
                        f"{path}.judgments.{node_id}: entries must be [i, j, value]"
                    )
                i, j, value = int(e[0]), int(e[1]), float(e[2])
                where = f"{path}.judgments.{node_id}[{i},{j}]"
                if not (1 <= i < j <= n):
                    raise SchemaViolation(
                        f"{where}: need 1 <= i < j <= {n} (1-based child indices)"
                    )
                if (i, j) in seen_pairs:
                    raise SchemaViolation(f"{where}: duplicate pair")
                seen_pairs.add((i, j))
                if scale == "crisp_1_9":
                    _check_crisp_value(value, where)
                else:
                    _check_fuzzy_value(value, where)
                parsed.append((i, j, value))
            judgments[node_id] = parsed

        ratings: dict[str, int] = {}
        rdoc = edoc.get("ratings", {})
        if not isinstance(rdoc, dict):
            raise SchemaViolation(f"{path}.ratings: expected object")
        for leaf_id, grade in rdoc.items():
            if leaf_id not in leaf_ids:
                raise SchemaViolation(f"{path}.ratings: {leaf_id!r} is not a leaf")
            if not isinstance(grade, int) or isinstance(grade, bool):
                raise SchemaViolation(
                    f"{path}.ratings.{leaf_id}: grade must be an integer"
                )
            if not (1 <= grade <= evaluation_set.m):
                raise BadGrade(grade, evaluation_set.m)
            ratings[leaf_id] = grade

        experts.append(ExpertRecord(eid, judgments, ratings))

    return Session(
        session_id=doc["session_id"],
        hierarchy=hierarchy,
        scale=scale,
        evaluation_set=evaluation_set,
        experts=tuple(experts),
        environment=environment,
    )


def parse_session(document: bytes | str) -> Session:
    try:
        doc = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise Malformed(f"session document is not valid JSON: {exc}") from exc
    return session_from_dict(doc)


def session_to_dict(s: Session) -> dict:
    doc = {
        "session_id": s.session_id,
        "scale": s.scale,
        "hierarchy": hierarchy_to_dict(s.hierarchy),
        "evaluation_set": evaluation_set_to_list(s.evaluation_set),
        "experts": [
            {
                "expert_id": e.expert_id,
                "judgments": {
                    node_id: [[i, j, value] for i, j, value in entries]
                    for node_id, entries in sorted(e.judgments.items())
                },
                "ratings": dict(sorted(e.ratings.items())),
            }
            for e in s.experts
        ],
    }
    if s.environment is not None:
        doc["environment"] = s.environment.to_dict()
    return doc


def canonical_session_json(s: Session) -> str:
    return json.dumps(session_to_dict(s), sort_keys=True, separators=(",", ":"))


def session_digest(s: Session) -> str:
    digest = hashlib.sha256(canonical_session_json(s).encode()).hexdigest()
    return f"sha256:{digest}"


# -- matrix assembly and tallies -------------------------------------------

def assemble_matrices(s: Session, node_id: str):
    """One valid matrix per expert for the node's child comparisons."""
    node = s.hierarchy.node(node_id)
    if node is None:
        raise UnknownNode(node_id)
    if node.is_leaf:
        raise UnknownNode(node_id, "leaves have no pairwise comparisons")
    n = len(node.children)
    build = (
        ahp.build_judgment_matrix
        if s.scale == "crisp_1_9"
        else fahp.build_fuzzy_matrix
    )
    matrices = []
    for expert in s.experts:
        entries = expert.judgments.get(node_id)
        if entries is None:
            raise IncompleteJudgments(expert.expert_id, node_id, "no judgments")
        try:
            matrices.append(build(n, entries))
        except Exception as exc:
            raise IncompleteJudgments(expert.expert_id, node_id, str(exc)) from exc
    return matrices


def tally_ratings(s: Session, leaf_id: str) -> list[int]:
    """Per-grade vote counts across the panel for one leaf."""
    node = s.hierarchy.node(leaf_id)
    if node is None or not node.is_leaf:
        raise UnknownNode(leaf_id, "ratings apply to leaves only")
    counts = [0] * s.evaluation_set.m
    for expert in s.experts:
        grade = expert.ratings.get(leaf_id)
        if grade is None:
            raise MissingRating(expert.expert_id, leaf_id)
        counts[grade - 1] += 1
    return counts


def parse_ratings_csv(text: str, s: Session) -> Session:
    """Overlay ratings from a CSV with columns expert_id,leaf_id,grade_index."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise Malformed("empty ratings CSV")
    header = [c.strip() for c in rows[0]]
    if header != ["expert_id", "leaf_id", "grade_index"]:
        raise SchemaViolation(
            "ratings CSV header must be expert_id,leaf_id,grade_index"
        )
    by_expert: dict[str, dict[str, int]] = {e.expert_id: dict(e.ratings) for e in s.experts}
    leaf_ids = {n.id for n in s.hierarchy.leaves()}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise SchemaViolation(f"ratings CSV line {lineno}: expected 3 columns")
        eid, leaf_id, grade_text = (c.strip() for c in row)
        if eid not in by_expert:
            raise SchemaViolation(f"ratings CSV line {lineno}: unknown expert {eid!r}")
        if leaf_id not in leaf_ids:
            raise SchemaViolation(f"ratings CSV line {lineno}: unknown leaf {leaf_id!r}")
        try:
            grade = int(grade_text)
        except ValueError as exc:
            raise SchemaViolation(
                f"ratings CSV line {lineno}: bad grade {grade_text!r}"
            ) from exc
        if not (1 <= grade <= s.evaluation_set.m):
            raise BadGrade(grade, s.evaluation_set.m)
        by_expert[eid][leaf_id] = grade
    experts = tuple(
        ExpertRecord(e.expert_id, e.judgments, by_expert[e.expert_id])
        for e in s.experts
    )
    return Session(
        s.session_id, s.hierarchy, s.scale, s.evaluation_set, experts, s.environment
    )
