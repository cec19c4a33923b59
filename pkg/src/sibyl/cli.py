"""Command-line front door.

Subcommands mirror the HTTP API: everything `--format json` prints is
field-identical to the corresponding endpoint payload, built by the same
functions. Table output is for terminals and truncates long names; JSON
never truncates.

Exit codes: 0 success, 1 data or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import uvicorn

from .dataio import (
    generate_demo_corpus,
    load_factor_metas,
    load_model_file,
    validate_corpus,
)
from .errors import CorpusValidationError, InvalidInputError, SibylError
from .model import SCORE_MAX, SCORE_MIN
from .neighbors import DEFAULT_K, MAX_K
from .service import (
    DEFAULT_PORT,
    AppState,
    DataPaths,
    build_state,
    contributions_payload,
    create_app,
    distributions_payload,
    importance_payload,
    similar_payload,
)

_DATA_FLAGS = (
    ("model", "SIBYL_MODEL"),
    ("factors", "SIBYL_FACTORS"),
    ("cases", "SIBYL_CASES"),
    ("outcomes", "SIBYL_OUTCOMES"),
    ("events", "SIBYL_EVENTS"),
)

_TRUNCATE_AT = 60


def _truncate(text: str) -> str:
    if len(text) <= _TRUNCATE_AT:
        return text
    return text[: _TRUNCATE_AT - 3] + "..."


def _add_data_arguments(parser: argparse.ArgumentParser) -> None:
    for name, env in _DATA_FLAGS:
        parser.add_argument(
            f"--{name}",
            default=os.environ.get(env),
            help=f"path to the {name} file (or set {env})",
        )


def _add_format_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("table", "json"),
        default="table",
        help="output format (default table)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sibyl",
        description="Risk-score explanation engine: serve, explain, and audit "
        "an additive risk model over a reference corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP API")
    _add_data_arguments(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--port", type=int, default=None, help=f"port (or SIBYL_PORT; default {DEFAULT_PORT})"
    )
    serve.add_argument("--review-mode", action="store_true")
    serve.add_argument("--static-dir", default=None, help="built UI assets to serve at /")
    serve.add_argument("--importance-repeats", type=int, default=10)
    serve.add_argument("--importance-seed", type=int, default=42)

    explain = sub.add_parser("explain", help="factor contributions for one case")
    _add_data_arguments(explain)
    _add_format_argument(explain)
    explain.add_argument("--case-id", required=True)
    view = explain.add_mutually_exclusive_group()
    view.add_argument("--split", action="store_true", help="risk and protective columns")
    view.add_argument("--all", action="store_true", help="every factor, filterable")
    explain.add_argument("--top", type=int, default=10, help="rows in top view")
    explain.add_argument("--query", default="", help="name filter for --all")
    explain.add_argument("--categories", default="", help="category codes for --all")

    importance = sub.add_parser("importance", help="global factor importance")
    _add_data_arguments(importance)
    _add_format_argument(importance)
    importance.add_argument("--repeats", type=int, default=10)
    importance.add_argument("--seed", type=int, default=42)

    distributions = sub.add_parser(
        "distributions", help="per-score factor distributions"
    )
    _add_data_arguments(distributions)
    _add_format_argument(distributions)
    distributions.add_argument(
        "--score",
        type=int,
        required=True,
        choices=range(SCORE_MIN, SCORE_MAX + 1),
        metavar=f"{{{SCORE_MIN}..{SCORE_MAX}}}",
    )
    distributions.add_argument(
        "--only", default="", help="comma-separated factor names to include"
    )

    similar = sub.add_parser("similar", help="nearest reference cases")
    _add_data_arguments(similar)
    _add_format_argument(similar)
    similar.add_argument("--case-id", required=True)
    similar.add_argument(
        "--k",
        type=int,
        default=DEFAULT_K,
        choices=range(1, MAX_K + 1),
        metavar=f"{{1..{MAX_K}}}",
    )
    similar.add_argument("--review-mode", action="store_true")

    validate = sub.add_parser("validate", help="check the corpus files")
    _add_data_arguments(validate)
    _add_format_argument(validate)

    demo = sub.add_parser("demo", help="write a synthetic corpus")
    demo.add_argument("--n-cases", type=int, default=200)
    demo.add_argument("--n-factors", type=int, default=12)
    demo.add_argument("--seed", type=int, default=42)
    demo.add_argument("--out", required=True)

    return parser


def _paths_from(args) -> DataPaths:
    missing = [
        f"--{name} (or {env})"
        for name, env in _DATA_FLAGS
        if getattr(args, name) is None
    ]
    if missing:
        raise _UsageError(f"missing data file paths: {', '.join(missing)}")
    return DataPaths(
        model=Path(args.model),
        factors=Path(args.factors),
        cases=Path(args.cases),
        outcomes=Path(args.outcomes),
        events=Path(args.events),
    )


class _UsageError(Exception):
    pass


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _print_contribution_rows(rows) -> None:
    for row in rows:
        print(
            f"  {row['contribution']:+10.4f}  {row['label']:<11}"
            f"  {_truncate(row['display_name']):<60}  {_truncate(row['displayed_value'])}"
        )


def _cmd_explain(args, state: AppState) -> int:
    if args.split:
        view = "split"
    elif args.all:
        view = "all"
    else:
        view = "top"
    payload = contributions_payload(
        state,
        args.case_id,
        view=view,
        query=args.query,
        categories=args.categories,
        top=args.top,
    )
    if args.format == "json":
        _print_json(payload)
        return 0
    print(
        f"case {payload['case_id']}  score {payload['score']}"
        f"  (base {payload['base_value']:.4f}, raw {payload['raw_output']:.4f})"
    )
    if view == "split":
        print("risk factors:")
        _print_contribution_rows(payload["risk"])
        print("protective factors:")
        _print_contribution_rows(payload["protective"])
    else:
        _print_contribution_rows(payload["rows"])
    return 0


def _cmd_importance(args, state: AppState) -> int:
    payload = importance_payload(state)
    if args.format == "json":
        _print_json(payload)
        return 0
    print(
        f"global factor importance ({payload['metric_name']} increase, "
        f"{payload['repeats']} repeats, seed {payload['seed']})"
    )
    for entry in payload["entries"]:
        print(
            f"  {entry['relative_importance']:8.4f}  {entry['raw_importance']:+.6f}"
            f"  {_truncate(entry['description'])}"
        )
    return 0


def _cmd_distributions(args, state: AppState) -> int:
    payload = distributions_payload(state, args.score, args.only)
    if args.format == "json":
        _print_json(payload)
        return 0
    if payload["case_count"] == 0:
        print(f"score {payload['score']}: no reference cases")
        return 0
    print(
        f"score {payload['score']}: {payload['case_count']} cases, "
        f"removal rate {payload['removal_rate_pct']:.1f}%"
    )
    for widget in payload["factors"]:
        name = _truncate(widget["display_name"])
        if widget["kind"] == "binary":
            print(f"  {name}  [binary]  {widget['pct_true']:.1f}% true")
        elif widget["kind"] == "numeric":
            box = widget["box"]
            print(
                f"  {name}  [numeric]  min {box['slice_min']:g}  q1 {box['q1']:g}"
                f"  median {box['median']:g}  q3 {box['q3']:g}  max {box['slice_max']:g}"
                f"  (global {box['global_min']:g}..{box['global_max']:g})"
            )
        else:
            parts = " | ".join(
                f"{s['label']} {s['pct']:.1f}%" for s in widget["segments"]
            )
            print(f"  {name}  [categorical]  {parts}")
    return 0


def _cmd_similar(args, state: AppState) -> int:
    payload = similar_payload(state, args.case_id, args.k)
    if args.format == "json":
        _print_json(payload)
        return 0
    print(f"cases similar to {payload['case_id']} (score {payload['score']})")
    for neighbor in payload["neighbors"]:
        print(
            f"  {neighbor['id']}  distance {neighbor['distance']:.4f}"
            f"  score {neighbor['score']}"
        )
    if payload["truncated"]:
        print("  (fewer candidates than requested)")
    if payload["empty"]:
        print("no recorded events for these cases")
    else:
        print(f"events from {payload['axis_start']} to {payload['axis_end']}:")
        for row in payload["rows"]:
            marker = "*" if row["is_current"] else " "
            events = "; ".join(
                f"{e['date']} {e['kind']}" for e in row["events"]
            )
            print(f"  {marker} {row['case_id']}  {events or '(no events)'}")
    return 0


def _cmd_validate(args) -> int:
    paths = _paths_from(args)
    model, _ = load_model_file(paths.model)
    metas = load_factor_metas(paths.factors)
    report = validate_corpus(paths.cases, paths.outcomes, paths.events, model, metas)
    if args.format == "json":
        _print_json(
            {
                "ok": report.ok,
                "error_count": report.error_count,
                "warning_count": report.warning_count,
                "findings": [
                    {
                        "severity": f.severity,
                        "location": f.location,
                        "message": f.message,
                    }
                    for f in report.findings
                ],
            }
        )
    else:
        for finding in report.findings:
            print(f"  {finding.severity:<8} {finding.location:<24} {finding.message}")
        if report.ok:
            print(f"ok ({report.warning_count} warnings)")
        else:
            print(
                f"FAILED: {report.error_count} errors, "
                f"{report.warning_count} warnings"
            )
    return 0 if report.ok else 1


def _cmd_demo(args) -> int:
    try:
        paths = generate_demo_corpus(args.n_cases, args.n_factors, args.seed, args.out)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for name in ("model", "factors", "cases", "outcomes", "events"):
        print(paths[name])
    return 0


def _cmd_serve(args, state: AppState) -> int:
    port = args.port
    if port is None:
        raw = os.environ.get("SIBYL_PORT", "")
        try:
            port = int(raw) if raw else DEFAULT_PORT
        except ValueError:
            raise _UsageError(f"SIBYL_PORT must be an integer, got {raw!r}")
    app = create_app(state, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return 0


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "demo":
        return _cmd_demo(args)

    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "similar" and not args.review_mode:
            raise _UsageError("similar requires --review-mode")

        paths = _paths_from(args)
        if args.command == "serve":
            state = build_state(
                paths,
                review_mode=args.review_mode,
                importance_repeats=args.importance_repeats,
                importance_seed=args.importance_seed,
            )
            return _cmd_serve(args, state)
        if args.command == "importance":
            state = build_state(
                paths, importance_repeats=args.repeats, importance_seed=args.seed
            )
            return _cmd_importance(args, state)

        state = build_state(paths, review_mode=(args.command == "similar"))
        if args.command == "explain":
            return _cmd_explain(args, state)
        if args.command == "distributions":
            return _cmd_distributions(args, state)
        return _cmd_similar(args, state)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CorpusValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            for finding in exc.report.findings:
                print(
                    f"  {finding.severity:<8} {finding.location:<24} {finding.message}",
                    file=sys.stderr,
                )
        return 1
    except SibylError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
