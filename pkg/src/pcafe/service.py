"""HTTP session service: incremental elicitation with live consistency
feedback, backed by per-session append-only event logs."""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import ahp, elicitation, fahp, pipeline
from .elicitation import ExpertRecord, Session
from .errors import PcafeError
from .hierarchy import (
    EvaluationSet,
    Hierarchy,
    evaluation_set_from_list,
    evaluation_set_to_list,
    hierarchy_from_dict,
    hierarchy_to_dict,
)


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail):
        self.status, self.error, self.detail = status, error, detail
        super().__init__(f"{error}: {detail}")


@dataclass
class LiveSession:
    session_id: str
    hierarchy: Hierarchy
    scale: str
    evaluation_set: EvaluationSet
    roster: list[str]
    environment: dict | None = None
    revision: int = 0
    # expert -> node -> (i, j) -> value
    judgments: dict[str, dict[str, dict[tuple[int, int], float]]] = field(
        default_factory=dict
    )
    # expert -> leaf -> grade
    ratings: dict[str, dict[str, int]] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def pair_count(self, node) -> int:
        n = len(node.children)
        return n * (n - 1) // 2

    def missing_items(self) -> list[dict]:
        missing = []
        for expert_id in self.roster:
            for node in self.hierarchy.non_leaves():
                have = self.judgments.get(expert_id, {}).get(node.id, {})
                n = len(node.children)
                pairs = [
                    [i, j]
                    for i in range(1, n + 1)
                    for j in range(i + 1, n + 1)
                    if (i, j) not in have
                ]
                if pairs:
                    missing.append(
                        {"expert": expert_id, "node": node.id, "pairs": pairs}
                    )
            for leaf in self.hierarchy.leaves():
                if leaf.id not in self.ratings.get(expert_id, {}):
                    missing.append({"expert": expert_id, "leaf": leaf.id})
        return missing

    def to_session(self) -> Session:
        experts = []
        for expert_id in self.roster:
            judgments = {
                node_id: [(i, j, value) for (i, j), value in sorted(cells.items())]
                for node_id, cells in self.judgments.get(expert_id, {}).items()
            }
            experts.append(
                ExpertRecord(
                    expert_id, judgments, dict(self.ratings.get(expert_id, {}))
                )
            )
        env = (
            elicitation._parse_environment(self.environment)
            if self.environment
            else None
        )
        return Session(
            self.session_id,
            self.hierarchy,
            self.scale,
            self.evaluation_set,
            tuple(experts),
            env,
        )


class SessionStore:
    """In-memory sessions, optionally mirrored to JSONL event logs."""

    def __init__(self, data_dir: Path | None = None):
        self.data_dir = data_dir
        self.sessions: dict[str, LiveSession] = {}
        if data_dir is not None:
            data_dir.mkdir(parents=True, exist_ok=True)
            for log in sorted(data_dir.glob("*.jsonl")):
                self._replay(log)

    def _log(self, session_id: str, event: dict):
        if self.data_dir is None:
            return
        path = self.data_dir / f"{session_id}.jsonl"
        with path.open("a") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def _replay(self, log: Path):
        for line in log.read_text().splitlines():
            event = json.loads(line)
            kind = event.pop("event")
            if kind == "create":
                self._create(**event, log=False)
            elif kind == "judgment":
                self._record_judgment(**event, log=False)
            elif kind == "rating":
                self._record_rating(**event, log=False)

    # -- mutations ----------------------------------------------------------

    def _create(
        self,
        session_id,
        hierarchy,
        scale,
        evaluation_set,
        experts,
        environment=None,
        log=True,
    ) -> LiveSession:
        h = hierarchy_from_dict(hierarchy)
        v = evaluation_set_from_list(evaluation_set)
        if scale not in elicitation.SCALES:
            raise ApiError(400, "validation", f"bad scale {scale!r}")
        if not experts:
            raise ApiError(400, "validation", "expert roster is empty")
        if len(set(experts)) != len(experts):
            raise ApiError(400, "validation", "duplicate expert ids in roster")
        if environment is not None:
            elicitation._parse_environment(environment)
        live = LiveSession(session_id, h, scale, v, list(experts), environment)
        self.sessions[session_id] = live
        if log:
            self._log(
                session_id,
                {
                    "event": "create",
                    "session_id": session_id,
                    "hierarchy": hierarchy,
                    "scale": scale,
                    "evaluation_set": evaluation_set,
                    "experts": list(experts),
                    "environment": environment,
                },
            )
        return live

    def create(self, hierarchy, scale, evaluation_set, experts, environment=None):
        session_id = uuid.uuid4().hex
        return self._create(
            session_id, hierarchy, scale, evaluation_set, experts, environment
        )

    def get(self, session_id: str) -> LiveSession:
        live = self.sessions.get(session_id)
        if live is None:
            raise ApiError(404, "unknown_session", session_id)
        return live

    def _record_judgment(
        self, session_id, expert_id, node_id, i, j, value, log=True
    ) -> LiveSession:
        live = self.get(session_id)
        if expert_id not in live.roster:
            raise ApiError(404, "unknown_expert", expert_id)
        node = live.hierarchy.node(node_id)
        if node is None or node.is_leaf:
            raise ApiError(404, "unknown_node", node_id)
        n = len(node.children)
        if not (1 <= i < j <= n):
            raise ApiError(
                400, "validation", f"need 1 <= i < j <= {n}, got i={i}, j={j}"
            )
        try:
            if live.scale == "crisp_1_9":
                elicitation._check_crisp_value(value, f"{node_id}[{i},{j}]")
            else:
                elicitation._check_fuzzy_value(value, f"{node_id}[{i},{j}]")
        except PcafeError as exc:
            raise ApiError(400, "out_of_scale", str(exc)) from exc
        with live.lock:
            live.judgments.setdefault(expert_id, {}).setdefault(node_id, {})[
                (i, j)
            ] = float(value)
            live.revision += 1
        if log:
            self._log(
                session_id,
                {
                    "event": "judgment",
                    "session_id": session_id,
                    "expert_id": expert_id,
                    "node_id": node_id,
                    "i": i,
                    "j": j,
                    "value": value,
                },
            )
        return live

    def _record_rating(self, session_id, expert_id, leaf_id, grade, log=True):
        live = self.get(session_id)
        if expert_id not in live.roster:
            raise ApiError(404, "unknown_expert", expert_id)
        node = live.hierarchy.node(leaf_id)
        if node is None or not node.is_leaf:
            raise ApiError(404, "unknown_node", leaf_id)
        if not isinstance(grade, int) or not (1 <= grade <= live.evaluation_set.m):
            raise ApiError(
                400, "bad_grade", f"grade {grade} outside 1..{live.evaluation_set.m}"
            )
        with live.lock:
            live.ratings.setdefault(expert_id, {})[leaf_id] = grade
            live.revision += 1
        if log:
            self._log(
                session_id,
                {
                    "event": "rating",
                    "session_id": session_id,
                    "expert_id": expert_id,
                    "leaf_id": leaf_id,
                    "grade": grade,
                },
            )
        return live


def consistency_snapshot(live: LiveSession, expert_id: str, node_id: str) -> dict:
    """Live diagnostics for one expert's matrix at one node."""
    if expert_id not in live.roster:
        raise ApiError(404, "unknown_expert", expert_id)
    node = live.hierarchy.node(node_id)
    if node is None or node.is_leaf:
        raise ApiError(404, "unknown_node", node_id)
    n = len(node.children)
    have = live.judgments.get(expert_id, {}).get(node_id, {})
    missing = [
        [i, j]
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (i, j) not in have
    ]
    snapshot = {
        "expert": expert_id,
        "node": node_id,
        "revision": live.revision,
        "complete": not missing,
    }
    if missing:
        snapshot["missing_pairs"] = missing
        return snapshot
    entries = [(i, j, v) for (i, j), v in sorted(have.items())]
    if live.scale == "crisp_1_9":
        matrix = ahp.build_judgment_matrix(n, entries)
        diag = pipeline._crisp_diag(matrix, None)
    else:
        matrix = fahp.build_fuzzy_matrix(n, entries)
        diag = pipeline._fuzzy_diag(matrix, None)
    if "worst_triad" in diag:
        t = diag["worst_triad"]
        t["labels"] = [
            node.children[t["i"] - 1].label,
            node.children[t["j"] - 1].label,
            node.children[t["k"] - 1].label,
        ]
    snapshot.update(diag)
    return snapshot


class CreateSessionBody(BaseModel):
    hierarchy: dict
    scale: str
    evaluation_set: list[dict]
    experts: list[str]
    environment: dict | None = None


class JudgmentBody(BaseModel):
    i: int
    j: int
    value: float


class RatingBody(BaseModel):
    grade: int


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="pcafe session service")
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": exc.error, "detail": exc.detail},
        )

    @app.exception_handler(PcafeError)
    async def _engine_error(request: Request, exc: PcafeError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        live = store.create(
            body.hierarchy,
            body.scale,
            body.evaluation_set,
            body.experts,
            body.environment,
        )
        return {"session_id": live.session_id, "revision": live.revision}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        live = store.get(session_id)
        missing = live.missing_items()
        per_expert = {
            expert_id: {
                "missing": [m for m in missing if m["expert"] == expert_id],
                "complete": not any(m["expert"] == expert_id for m in missing),
            }
            for expert_id in live.roster
        }
        return {
            "session_id": live.session_id,
            "scale": live.scale,
            "revision": live.revision,
            "hierarchy": hierarchy_to_dict(live.hierarchy),
            "evaluation_set": evaluation_set_to_list(live.evaluation_set),
            "experts": per_expert,
            "complete": not missing,
        }

    @app.put("/sessions/{session_id}/experts/{expert_id}/judgments/{node_id}")
    def put_judgment(
        session_id: str, expert_id: str, node_id: str, body: JudgmentBody
    ):
        live = store._record_judgment(
            session_id, expert_id, node_id, body.i, body.j, body.value
        )
        return {
            "revision": live.revision,
            "snapshot": consistency_snapshot(live, expert_id, node_id),
        }

    @app.put("/sessions/{session_id}/experts/{expert_id}/ratings/{leaf_id}")
    def put_rating(session_id: str, expert_id: str, leaf_id: str, body: RatingBody):
        live = store._record_rating(session_id, expert_id, leaf_id, body.grade)
        return {"revision": live.revision}

    @app.get("/sessions/{session_id}/consistency")
    def get_consistency(
        session_id: str, expert: str = Query(...), node: str = Query(...)
    ):
        return consistency_snapshot(store.get(session_id), expert, node)

    @app.get("/sessions/{session_id}/results")
    def get_results(
        session_id: str,
        method: str = Query("geometric"),
        theta: float | None = Query(None),
    ):
        live = store.get(session_id)
        missing = live.missing_items()
        if missing:
            raise ApiError(409, "incomplete", missing)
        session = live.to_session()
        return pipeline.evaluate_session(session, method, theta)

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str):
        live = store.get(session_id)
        return elicitation.session_to_dict(live.to_session())

    return app
