"""Explanation engine for additive risk models.

Wraps a linear risk model and a reference corpus of past cases, and produces
the five interfaces a screener works with: per-case factor contributions, a
what-if sandbox, similar-case timelines, global factor importance, and
per-score factor distributions. The service and CLI modules expose the same
payloads over HTTP and the terminal.
"""

from .dataio import (
    Finding,
    OutcomeTable,
    ReferenceDataset,
    ValidationReport,
    generate_demo_corpus,
    load_corpus,
    load_factor_metas,
    load_model_file,
    serialize_model,
    validate_corpus,
)
from .distributions import (
    BoxStats,
    ScoreSlice,
    ScoreSliceIndex,
    Segment,
    SegmentStats,
    binary_distribution,
    categorical_distribution,
    numeric_distribution,
    score_slice,
)
from .errors import SibylError
from .explain import (
    ContributionSet,
    ImportanceEntry,
    ImportanceReport,
    ReferenceStats,
    compute_reference_stats,
    global_importance,
    local_contributions,
    shapley_bruteforce,
)
from .model import (
    SCORE_MAX,
    SCORE_MIN,
    CaseRecord,
    Model,
    ScoreBins,
    fit_score_bins,
    interpolated_quantile,
    predict_raw,
    predict_score,
    to_risk_score,
)
from .neighbors import (
    CaseEvent,
    NeighborResult,
    Timeline,
    TimelineBundle,
    assemble_timelines,
    build_standardizer,
    distance,
    find_similar,
)
from .present import (
    FactorMeta,
    PresentationSchema,
    PresentedContribution,
    PresentedFactor,
    build_schema,
    merge_contributions,
    render_value,
    search_filter,
    split_view,
    top_k,
)
from .service import AppState, DataPaths, build_state, create_app
from .whatif import (
    FactorChange,
    FlipRow,
    FlipTable,
    WhatIfResult,
    apply_changes,
    flip_all_booleans,
    whatif_score,
)

__version__ = "0.1.0"

__all__ = [
    "AppState",
    "BoxStats",
    "CaseEvent",
    "CaseRecord",
    "ContributionSet",
    "DataPaths",
    "FactorChange",
    "FactorMeta",
    "Finding",
    "FlipRow",
    "FlipTable",
    "ImportanceEntry",
    "ImportanceReport",
    "Model",
    "NeighborResult",
    "OutcomeTable",
    "PresentationSchema",
    "PresentedContribution",
    "PresentedFactor",
    "ReferenceDataset",
    "ReferenceStats",
    "SCORE_MAX",
    "SCORE_MIN",
    "ScoreBins",
    "ScoreSlice",
    "ScoreSliceIndex",
    "Segment",
    "SegmentStats",
    "SibylError",
    "Timeline",
    "TimelineBundle",
    "ValidationReport",
    "WhatIfResult",
    "apply_changes",
    "assemble_timelines",
    "binary_distribution",
    "build_schema",
    "build_standardizer",
    "build_state",
    "categorical_distribution",
    "compute_reference_stats",
    "create_app",
    "distance",
    "find_similar",
    "fit_score_bins",
    "flip_all_booleans",
    "generate_demo_corpus",
    "global_importance",
    "interpolated_quantile",
    "load_corpus",
    "load_factor_metas",
    "load_model_file",
    "local_contributions",
    "merge_contributions",
    "numeric_distribution",
    "predict_raw",
    "predict_score",
    "render_value",
    "score_slice",
    "search_filter",
    "serialize_model",
    "shapley_bruteforce",
    "split_view",
    "to_risk_score",
    "top_k",
    "validate_corpus",
    "whatif_score",
]
