"""HTTP API over a loaded corpus.

Every endpoint is a thin serializer around one core operation, working from
an immutable AppState assembled at startup. The payload builders are plain
functions so the CLI's JSON output and the HTTP bodies come from the same
code and cannot drift apart.

Error responses always carry the shape {"status", "code", "message"}; codes
come from the package's exception classes. Non-package HTTP errors (unknown
path, malformed query string) are folded into the same shape with code
BAD_QUERY, or INTERNAL for server faults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .dataio import (
    OutcomeTable,
    ReferenceDataset,
    load_corpus,
    load_factor_metas,
    load_model_file,
)
from .distributions import (
    ScoreSliceIndex,
    binary_distribution,
    categorical_distribution,
    numeric_distribution,
    summarize_slice,
)
from .errors import (
    BadQueryError,
    CaseNotFoundError,
    FeatureDisabledError,
    InvalidChangeError,
    SibylError,
)
from .explain import (
    ImportanceReport,
    ReferenceStats,
    compute_reference_stats,
    global_importance,
    local_contributions,
)
from .model import (
    SCORE_MAX,
    SCORE_MIN,
    CaseRecord,
    Model,
    ScoreBins,
    fit_score_bins,
    predict_raw,
    predict_score,
)
from .neighbors import (
    DEFAULT_K,
    MAX_K,
    Timeline,
    assemble_timelines,
    build_standardizer,
    find_similar,
)
from .present import (
    DEFAULT_TOP_K,
    KIND_BINARY,
    KIND_CATEGORICAL,
    KIND_NUMERIC,
    PresentationSchema,
    PresentedContribution,
    build_schema,
    check_schema_covers_model,
    merge_contributions,
    render_value,
    search_filter,
    split_view,
    top_k,
)
from .whatif import FactorChange, flip_all_booleans, whatif_score

DEFAULT_PORT = 8090
DEFAULT_PAGE_SIZE = 20
MAX_PAGE_SIZE = 100


@dataclass(frozen=True)
class DataPaths:
    """Locations of the five input files."""

    model: Path
    factors: Path
    cases: Path
    outcomes: Path
    events: Path

    @classmethod
    def in_dir(cls, directory) -> "DataPaths":
        """The conventional five file names inside one directory."""
        root = Path(directory)
        return cls(
            model=root / "model.json",
            factors=root / "factors.json",
            cases=root / "cases.csv",
            outcomes=root / "outcomes.csv",
            events=root / "events.csv",
        )


@dataclass(frozen=True)
class AppState:
    """Everything the endpoints read; fully built before serving."""

    model: Model
    bins: ScoreBins
    schema: PresentationSchema
    stats: ReferenceStats
    standardizer: ReferenceStats
    corpus: ReferenceDataset
    outcomes: OutcomeTable
    timelines: dict[str, Timeline]
    slice_index: ScoreSliceIndex
    importance: ImportanceReport
    review_mode: bool


def build_state(
    paths: DataPaths,
    review_mode: bool = False,
    importance_repeats: int = 10,
    importance_seed: int = 42,
) -> AppState:
    """Load, validate, and precompute everything the service needs."""
    model, bins = load_model_file(paths.model)
    metas = load_factor_metas(paths.factors)
    schema = build_schema(metas)
    check_schema_covers_model(schema, model)
    corpus, outcomes, timelines = load_corpus(
        paths.cases, paths.outcomes, paths.events, model, metas
    )
    if bins is None:
        bins = fit_score_bins(model, corpus)
    return AppState(
        model=model,
        bins=bins,
        schema=schema,
        stats=compute_reference_stats(model, corpus),
        standardizer=build_standardizer(corpus),
        corpus=corpus,
        outcomes=outcomes,
        timelines=timelines,
        slice_index=ScoreSliceIndex(model, bins, corpus),
        importance=global_importance(
            model, corpus, outcomes, repeats=importance_repeats, seed=importance_seed
        ),
        review_mode=review_mode,
    )


def _get_case(state: AppState, case_id: str) -> CaseRecord:
    case = state.corpus.get(case_id)
    if case is None:
        raise CaseNotFoundError(f"no case with id {case_id!r}")
    return case


def _contribution_row(row: PresentedContribution) -> dict:
    return {
        "display_name": row.display_name,
        "displayed_value": row.displayed_value,
        "contribution": row.contribution,
        "label": row.label,
        "category_code": row.category_code,
        "category_name": row.category_name,
    }


def case_list_payload(
    state: AppState, offset: int = 0, limit: int = DEFAULT_PAGE_SIZE
) -> dict:
    if offset < 0:
        raise BadQueryError(f"offset must be non-negative, got {offset}")
    if not 1 <= limit <= MAX_PAGE_SIZE:
        raise BadQueryError(f"limit must be between 1 and {MAX_PAGE_SIZE}, got {limit}")
    window = state.corpus.cases[offset : offset + limit]
    return {
        "total": len(state.corpus.cases),
        "offset": offset,
        "limit": limit,
        "cases": [
            {"id": case.id, "score": state.slice_index.score_of(case.id)}
            for case in window
        ],
    }


def case_payload(state: AppState, case_id: str) -> dict:
    case = _get_case(state, case_id)
    factors = []
    for factor in state.schema.presented:
        if factor.kind == KIND_CATEGORICAL:
            active = [
                label
                for name, label in zip(factor.source_factors, factor.member_labels)
                if case.values[name] == 1
            ]
            value: float | str = active[0]
            displayed = active[0]
        else:
            name = factor.source_factors[0]
            value = case.values[name]
            displayed = render_value(state.schema.metas[name], value)
        factors.append(
            {
                "display_name": factor.display_name,
                "kind": factor.kind,
                "value": value,
                "displayed_value": displayed,
                "category_code": factor.category_code,
                "category_name": factor.category_name,
            }
        )
    return {
        "id": case.id,
        "score": predict_score(state.model, state.bins, case),
        "raw_output": predict_raw(state.model, case),
        "narrative": case.narrative,
        "factors": factors,
    }


def contributions_payload(
    state: AppState,
    case_id: str,
    view: str = "top",
    query: str = "",
    categories: str = "",
    top: int = DEFAULT_TOP_K,
) -> dict:
    case = _get_case(state, case_id)
    contribs = local_contributions(state.model, state.stats, case)
    rows = merge_contributions(state.schema, contribs, case)
    payload = {
        "case_id": case.id,
        "score": predict_score(state.model, state.bins, case),
        "base_value": contribs.base_value,
        "raw_output": contribs.raw_output,
        "view": view,
    }
    if view == "top":
        if top < 1:
            raise BadQueryError(f"top must be at least 1, got {top}")
        payload["rows"] = [_contribution_row(r) for r in top_k(rows, top)]
    elif view == "all":
        wanted = {c for c in categories.split(",") if c} or None
        filtered = search_filter(rows, query=query, categories=wanted)
        payload["rows"] = [_contribution_row(r) for r in filtered]
    elif view == "split":
        risk, protective = split_view(rows)
        payload["risk"] = [_contribution_row(r) for r in risk]
        payload["protective"] = [_contribution_row(r) for r in protective]
    else:
        raise BadQueryError(f"unknown view {view!r}; use top, all, or split")
    return payload


def parse_changes(raw) -> list[FactorChange]:
    """Convert a request's changes list into FactorChange records."""
    if not isinstance(raw, list):
        raise InvalidChangeError("request body needs a 'changes' list")
    changes = []
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"factor", "value"}:
            raise InvalidChangeError(
                "each change needs exactly the fields 'factor' and 'value'"
            )
        factor = entry["factor"]
        value = entry["value"]
        if not isinstance(factor, str):
            raise InvalidChangeError(f"factor name must be text, got {factor!r}")
        if not isinstance(value, (str, int, float)):
            raise InvalidChangeError(f"unsupported value {value!r}")
        changes.append(FactorChange(factor=factor, new_value=value))
    return changes


def whatif_payload(state: AppState, case_id: str, body) -> dict:
    case = _get_case(state, case_id)
    if not isinstance(body, dict) or "changes" not in body:
        raise InvalidChangeError("request body needs a 'changes' list")
    changes = parse_changes(body["changes"])
    result = whatif_score(state.model, state.bins, state.schema, case, changes)
    return {
        "case_id": case.id,
        "old_score": result.old_score,
        "new_score": result.new_score,
        "old_raw": result.old_raw,
        "new_raw": result.new_raw,
        "direction": result.direction,
        "changes": [
            {"factor": change.factor, "value": change.new_value}
            for change in changes
        ],
    }


def flips_payload(state: AppState, case_id: str) -> dict:
    case = _get_case(state, case_id)
    table = flip_all_booleans(state.model, state.bins, state.schema, case)
    return {
        "case_id": case.id,
        "old_score": table.old_score,
        "rows": [
            {
                "display_name": row.display_name,
                "statement": row.statement,
                "new_score": row.new_score,
                "direction": row.direction,
            }
            for row in table.rows
        ],
    }


def model_payload(state: AppState) -> dict:
    factors = []
    for factor in state.schema.presented:
        entry = {
            "display_name": factor.display_name,
            "kind": factor.kind,
            "category_code": factor.category_code,
            "category_name": factor.category_name,
        }
        if factor.kind == KIND_CATEGORICAL:
            entry["member_labels"] = list(factor.member_labels)
        elif factor.kind == KIND_NUMERIC:
            meta = state.schema.metas[factor.source_factors[0]]
            entry["min_value"] = meta.min_value
            entry["max_value"] = meta.max_value
        factors.append(entry)
    return {
        "outcome_name": state.model.outcome_name,
        "reference_size": len(state.corpus.cases),
        "score_min": SCORE_MIN,
        "score_max": SCORE_MAX,
        "review_mode": state.review_mode,
        "factors": factors,
    }


def importance_payload(state: AppState) -> dict:
    report = state.importance
    return {
        "metric_name": report.metric_name,
        "repeats": report.repeats,
        "seed": report.seed,
        "entries": [
            {
                "factor": entry.factor,
                "description": state.schema.metas[entry.factor].description,
                "raw_importance": entry.raw_importance,
                "relative_importance": entry.relative_importance,
            }
            for entry in report.entries
        ],
    }


def distributions_payload(
    state: AppState, score: int, factors: str = ""
) -> dict:
    slice_cases = state.slice_index.cases_for(score)
    summary = summarize_slice(slice_cases, state.outcomes, score)

    selected = state.schema.presented
    if factors:
        wanted = [name for name in factors.split(",") if name]
        by_name = {f.display_name: f for f in state.schema.presented}
        missing = [name for name in wanted if name not in by_name]
        if missing:
            raise BadQueryError(f"unknown factor {missing[0]!r}")
        selected = tuple(by_name[name] for name in wanted)

    widgets = []
    if slice_cases:
        for factor in selected:
            entry = {
                "display_name": factor.display_name,
                "kind": factor.kind,
                "category_code": factor.category_code,
                "category_name": factor.category_name,
            }
            if factor.kind == KIND_BINARY:
                entry["pct_true"] = binary_distribution(
                    slice_cases, factor.source_factors[0]
                )
            elif factor.kind == KIND_NUMERIC:
                box = numeric_distribution(
                    state.corpus, slice_cases, factor.source_factors[0]
                )
                entry["box"] = {
                    "global_min": box.global_min,
                    "global_max": box.global_max,
                    "slice_min": box.slice_min,
                    "q1": box.q1,
                    "median": box.median,
                    "q3": box.q3,
                    "slice_max": box.slice_max,
                }
            else:
                segments = categorical_distribution(slice_cases, factor)
                entry["segments"] = [
                    {"label": s.label, "pct": s.pct} for s in segments.segments
                ]
            widgets.append(entry)

    return {
        "score": summary.score,
        "case_count": summary.case_count,
        "removal_rate_pct": summary.removal_rate_pct,
        "factors": widgets,
    }


def similar_payload(state: AppState, case_id: str, k: int = DEFAULT_K) -> dict:
    if not state.review_mode:
        raise FeatureDisabledError(
            "similar-case retrieval is available only in review mode"
        )
    case = _get_case(state, case_id)
    if not 1 <= k <= MAX_K:
        raise BadQueryError(f"k must be between 1 and {MAX_K}, got {k}")
    result = find_similar(case, state.corpus, state.standardizer, k=k)
    neighbor_ids = [case_id for case_id, _ in result.neighbors]
    bundle = assemble_timelines(
        state.timelines[case.id],
        [state.timelines[nid] for nid in neighbor_ids],
    )
    scores = {case.id: predict_score(state.model, state.bins, case)}
    for nid in neighbor_ids:
        scores[nid] = state.slice_index.score_of(nid)
    return {
        "case_id": case.id,
        "score": scores[case.id],
        "k": k,
        "truncated": result.truncated,
        "neighbors": [
            {"id": nid, "distance": dist, "score": scores[nid]}
            for nid, dist in result.neighbors
        ],
        "axis_start": bundle.axis_start.isoformat() if bundle.axis_start else None,
        "axis_end": bundle.axis_end.isoformat() if bundle.axis_end else None,
        "empty": bundle.empty,
        "rows": [
            {
                "case_id": row.case_id,
                "is_current": row.is_current,
                "score": scores[row.case_id],
                "events": [
                    {"date": e.date.isoformat(), "kind": e.kind, "note": e.note}
                    for e in row.events
                ],
            }
            for row in bundle.rows
        ],
    }


def create_app(state: AppState, static_dir=None) -> FastAPI:
    """Assemble the FastAPI application around one immutable state."""
    app = FastAPI(title="sibyl", docs_url=None, redoc_url=None)
    origin = os.environ.get("SIBYL_CORS_ORIGIN", "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(SibylError)
    async def _package_error(request: Request, exc: SibylError):
        return JSONResponse(
            status_code=exc.status,
            content={"status": exc.status, "code": exc.code, "message": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "status": 400,
                "code": "BAD_QUERY",
                "message": "malformed request parameters or body",
            },
        )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = "INTERNAL" if exc.status_code >= 500 else "BAD_QUERY"
        return JSONResponse(
            status_code=exc.status_code,
            content={
                "status": exc.status_code,
                "code": code,
                "message": str(exc.detail),
            },
        )

    @app.get("/api/v1/cases")
    def list_cases(offset: int = 0, limit: int = DEFAULT_PAGE_SIZE):
        return case_list_payload(state, offset, limit)

    @app.get("/api/v1/cases/{case_id}")
    def get_case(case_id: str):
        return case_payload(state, case_id)

    @app.get("/api/v1/cases/{case_id}/contributions")
    def get_contributions(
        case_id: str,
        view: str = "top",
        query: str = "",
        categories: str = "",
        top: int = DEFAULT_TOP_K,
    ):
        return contributions_payload(state, case_id, view, query, categories, top)

    @app.post("/api/v1/cases/{case_id}/whatif")
    def post_whatif(case_id: str, body: dict = Body(...)):
        return whatif_payload(state, case_id, body)

    @app.get("/api/v1/cases/{case_id}/flips")
    def get_flips(case_id: str):
        return flips_payload(state, case_id)

    @app.get("/api/v1/cases/{case_id}/similar")
    def get_similar(case_id: str, k: int = DEFAULT_K):
        return similar_payload(state, case_id, k)

    @app.get("/api/v1/model")
    def get_model():
        return model_payload(state)

    @app.get("/api/v1/importance")
    def get_importance():
        return importance_payload(state)

    @app.get("/api/v1/distributions/{score}")
    def get_distributions(score: int, factors: str = ""):
        return distributions_payload(state, score, factors)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
