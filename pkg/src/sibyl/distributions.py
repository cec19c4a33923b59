"""Corpus-level views: how factors distribute within each risk score.

Each risk score from 1 to 20 selects a slice of the reference corpus.
Boolean factors summarize to a prevalence percentage, numeric factors to
box statistics, and categorical factors to segment percentages. An empty
slice yields None rather than fabricated zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import InvalidInputError
from .model import (
    SCORE_MAX,
    SCORE_MIN,
    CaseRecord,
    Model,
    ScoreBins,
    interpolated_quantile,
    predict_score,
)
from .present import PresentedFactor

if TYPE_CHECKING:
    from .dataio import OutcomeTable, ReferenceDataset


@dataclass(frozen=True)
class ScoreSlice:
    """Head-count and outcome rate for one risk score."""

    score: int
    case_count: int
    removal_rate_pct: float | None


@dataclass(frozen=True)
class BoxStats:
    """Five-number summary of a numeric factor within a score slice.

    Global bounds cover the whole reference corpus so a widget can keep
    one fixed axis across scores.
    """

    global_min: float
    global_max: float
    slice_min: float
    q1: float
    median: float
    q3: float
    slice_max: float


@dataclass(frozen=True)
class Segment:
    label: str
    pct: float


@dataclass(frozen=True)
class SegmentStats:
    """Categorical composition of a score slice; percentages sum to 100."""

    segments: tuple[Segment, ...]


class ScoreSliceIndex:
    """Precomputed mapping from risk score to the cases holding it."""

    def __init__(self, model: Model, bins: ScoreBins, reference: "ReferenceDataset"):
        self._by_score: dict[int, list[CaseRecord]] = {
            s: [] for s in range(SCORE_MIN, SCORE_MAX + 1)
        }
        self._score_by_id: dict[str, int] = {}
        for case in reference.cases:
            score = predict_score(model, bins, case)
            self._by_score[score].append(case)
            self._score_by_id[case.id] = score

    def cases_for(self, score: int) -> list[CaseRecord]:
        _check_score(score)
        return list(self._by_score[score])

    def score_of(self, case_id: str) -> int | None:
        return self._score_by_id.get(case_id)

    def slice(self, score: int, outcomes: OutcomeTable) -> ScoreSlice:
        return summarize_slice(self.cases_for(score), outcomes, score)


def _check_score(score: int):
    if not isinstance(score, int) or isinstance(score, bool):
        raise InvalidInputError(f"risk score must be an integer, got {score!r}")
    if not SCORE_MIN <= score <= SCORE_MAX:
        raise InvalidInputError(
            f"risk score must be between {SCORE_MIN} and {SCORE_MAX}, got {score}"
        )


def summarize_slice(
    slice_cases: list[CaseRecord], outcomes: OutcomeTable, score: int
) -> ScoreSlice:
    """Summarize one score slice: how many cases, what share were removed."""
    _check_score(score)
    if not slice_cases:
        return ScoreSlice(score=score, case_count=0, removal_rate_pct=None)
    removed = sum(outcomes.removed[case.id] for case in slice_cases)
    return ScoreSlice(
        score=score,
        case_count=len(slice_cases),
        removal_rate_pct=100.0 * removed / len(slice_cases),
    )


def score_slice(
    reference: "ReferenceDataset",
    outcomes: OutcomeTable,
    bins: ScoreBins,
    model: Model,
    score: int,
) -> ScoreSlice:
    """Select the reference cases holding a score and summarize them."""
    _check_score(score)
    members = [c for c in reference.cases if predict_score(model, bins, c) == score]
    return summarize_slice(members, outcomes, score)


def binary_distribution(slice_cases: list[CaseRecord], factor: str) -> float | None:
    """Share of the slice, in percent, where a Boolean factor holds."""
    if not slice_cases:
        return None
    positive = sum(case.values[factor] for case in slice_cases)
    return 100.0 * positive / len(slice_cases)


def numeric_distribution(
    reference: "ReferenceDataset", slice_cases: list[CaseRecord], factor: str
) -> BoxStats | None:
    """Box statistics of a numeric factor inside one score slice."""
    if not slice_cases:
        return None
    all_values = sorted(case.values[factor] for case in reference.cases)
    values = sorted(case.values[factor] for case in slice_cases)
    return BoxStats(
        global_min=float(all_values[0]),
        global_max=float(all_values[-1]),
        slice_min=float(values[0]),
        q1=interpolated_quantile(values, 0.25),
        median=interpolated_quantile(values, 0.5),
        q3=interpolated_quantile(values, 0.75),
        slice_max=float(values[-1]),
    )


def categorical_distribution(
    slice_cases: list[CaseRecord], factor: PresentedFactor
) -> SegmentStats | None:
    """Percentage of the slice in each category, in metadata order."""
    if not slice_cases:
        return None
    n = len(slice_cases)
    segments = []
    for name, label in zip(factor.source_factors, factor.member_labels):
        count = sum(case.values[name] for case in slice_cases)
        segments.append(Segment(label=label, pct=100.0 * count / n))
    return SegmentStats(segments=tuple(segments))
