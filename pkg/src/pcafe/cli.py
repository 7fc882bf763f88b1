"""Command-line front door; a thin client over the core package."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import elicitation, pipeline, sensitivity
from .errors import (
    ConsistencyFailure,
    IncompleteDataError,
    InputError,
    ParameterError,
    PcafeError,
)
from .hierarchy import build_pcafe_default, hierarchy_to_dict

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_MALFORMED = 2
EXIT_INCONSISTENT = 3
EXIT_INCOMPLETE = 4
EXIT_PARAMETER = 5

RI_ENV_VAR = "PCAFE_RI_TABLE"


def _load_ri_table() -> dict[int, float] | None:
    path = os.environ.get(RI_ENV_VAR)
    if not path:
        return None
    try:
        doc = json.loads(Path(path).read_text())
        return {int(k): float(v) for k, v in doc.items()}
    except (OSError, ValueError) as exc:
        raise ParameterError(f"cannot load RI table from {path}: {exc}") from exc


def _load_session(session_path: str, ratings_csv: str | None) -> elicitation.Session:
    try:
        raw = Path(session_path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {session_path}: {exc}") from exc
    session = elicitation.parse_session(raw)
    if ratings_csv:
        session = elicitation.parse_ratings_csv(
            Path(ratings_csv).read_text(), session
        )
    return session


def _emit(doc: dict, as_json: bool, out: str | None, human: str):
    text = pipeline.canonical_report_json(doc) if as_json or out else human
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text if as_json else human, nl=not as_json)


def _exit_code(exc: PcafeError) -> int:
    if isinstance(exc, ConsistencyFailure):
        return EXIT_INCONSISTENT
    if isinstance(exc, IncompleteDataError):
        return EXIT_INCOMPLETE
    if isinstance(exc, ParameterError):
        return EXIT_PARAMETER
    if isinstance(exc, InputError):
        return EXIT_MALFORMED
    return EXIT_INTERNAL


def _run(fn):
    try:
        fn()
    except PcafeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_exit_code(exc))


@click.group()
def main():
    """Hierarchical fuzzy multi-criteria evaluation engine."""


@main.command()
@click.argument("session_path", type=click.Path())
@click.option("--ratings-csv", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--out", type=click.Path(), default=None)
def validate(session_path, ratings_csv, as_json, out):
    """Check a session file: parseable, complete matrices, every CR < 0.1."""

    def _go():
        session = _load_session(session_path, ratings_csv)
        diagnostics = pipeline.validate_session(session, _load_ri_table())
        lines = []
        if diagnostics["ok"]:
            lines.append(f"session {session.session_id}: OK")
        else:
            lines.append(f"session {session.session_id}: CONSISTENCY FAILURES")
            for f in diagnostics["failures"]:
                who = f["expert"] or "aggregated"
                line = f"  node {f['node']}, {who}: CR = {f['cr']:.4f}"
                if f.get("worst_triad"):
                    t = f["worst_triad"]
                    line += (
                        f" (worst triad i={t['i']}, j={t['j']}, k={t['k']},"
                        f" deviation {t['deviation']:.4f})"
                    )
                lines.append(line)
        _emit(diagnostics, as_json, out, "\n".join(lines))
        if not diagnostics["ok"]:
            sys.exit(EXIT_INCONSISTENT)

    _run(_go)


_method_option = click.option(
    "--method",
    type=click.Choice(pipeline.WEIGHT_METHODS),
    default="geometric",
    show_default=True,
)
_theta_option = click.option("--theta", type=float, default=None)


@main.command()
@click.argument("session_path", type=click.Path())
@_method_option
@_theta_option
@click.option("--ratings-csv", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(), default=None)
def weights(session_path, method, theta, ratings_csv, as_json, out):
    """Aggregated priority weights and consistency diagnostics per node."""

    def _go():
        session = _load_session(session_path, ratings_csv)
        bundles = pipeline.compute_all_weights(
            session, method, theta, _load_ri_table()
        )
        doc = {
            "session_id": session.session_id,
            "method": method,
            "theta": theta,
            "weights": bundles,
        }
        lines = [f"session {session.session_id} ({method})"]
        for nid, b in bundles.items():
            lines.append(f"node {nid} [{b['label']}]")
            for cid, w in zip(b["children"], b["weights"]):
                lines.append(f"  {cid:<30s} {w:.6f}")
            agg = b["aggregated"]
            lines.append(
                f"  aggregated CR = {agg['cr']:.4f}"
                f" ({'consistent' if agg['consistent'] else 'INCONSISTENT'})"
            )
        _emit(doc, as_json, out, "\n".join(lines))

    _run(_go)


@main.command()
@click.argument("session_path", type=click.Path())
@_method_option
@_theta_option
@click.option("--ratings-csv", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(), default=None)
def evaluate(session_path, method, theta, ratings_csv, as_json, out):
    """Full hierarchy evaluation: weights, distributions, scores, verdicts."""

    def _go():
        session = _load_session(session_path, ratings_csv)
        report = pipeline.evaluate_session(session, method, theta, _load_ri_table())
        root = report["root"]
        res = report["results"][root]
        grade = report["evaluation_set"][res["verdict"] - 1]["label"]
        lines = [f"session {session.session_id}"]
        for warning in report["environment_warnings"]:
            lines.append(f"warning: {warning}")
        for nid, r in report["results"].items():
            lines.append(
                f"  {nid:<30s} score {r['score']:9.4f}  verdict grade {r['verdict']}"
            )
        lines.append(f"root score S = {res['score']:.4f}, verdict: {grade}")
        _emit(report, as_json, out, "\n".join(lines))

    _run(_go)


@main.command(name="sensitivity")
@click.argument("session_path", type=click.Path())
@click.option("--epsilon", type=float, required=True)
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_method_option
@_theta_option
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(), default=None)
def sensitivity_cmd(session_path, epsilon, trials, seed, method, theta, as_json, out):
    """Monte Carlo perturbation of every judgment; stability statistics."""

    def _go():
        session = _load_session(session_path, None)
        spec = sensitivity.PerturbationSpec(epsilon, trials, seed)
        report = sensitivity.perturb_and_evaluate(
            session, spec, method, theta, _load_ri_table()
        )
        doc = report.to_dict()
        lines = [
            f"session {session.session_id}: {trials} trials, epsilon {epsilon}",
            f"top-rank stability:  {report.top_rank_stability:.3f}",
            f"CR rejection rate:   {report.cr_rejection_rate:.3f}",
        ]
        for cid, s in report.weight_spread.items():
            lines.append(
                f"  {cid:<30s} min {s['min']:.4f}  mean {s['mean']:.4f}"
                f"  max {s['max']:.4f}"
            )
        _emit(doc, as_json, out, "\n".join(lines))

    _run(_go)


@main.command()
@click.option("--port", type=int, default=8341, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--data-dir",
    type=click.Path(),
    default=None,
    help="directory for per-session event logs (in-memory if omitted)",
)
def serve(port, host, data_dir):
    """Run the HTTP session service."""
    import uvicorn

    from .service import SessionStore, create_app

    store = SessionStore(Path(data_dir) if data_dir else None)
    uvicorn.run(create_app(store), host=host, port=port)


@main.group()
def preset():
    """Built-in artifacts."""


@preset.command()
@click.option("--out", type=click.Path(), default=None)
def pcafe(out):
    """Emit the built-in P-CAFE hierarchy definition as JSON."""
    doc = hierarchy_to_dict(build_pcafe_default())
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
