"""Similar-case retrieval and event timeline assembly.

Distance treats every factor equally: each column is standardized by the
reference mean and standard deviation before the Euclidean metric is
applied, so no factor dominates through its unit of measure. Columns with
zero spread never separate two cases.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    InsufficientReferenceError,
    InvalidInputError,
    InvalidValueError,
    SchemaMismatchError,
)
from .explain import ReferenceStats
from .model import CaseRecord

if TYPE_CHECKING:
    from .dataio import ReferenceDataset

EVENT_KINDS = ("referral", "investigation", "removal", "services")

DEFAULT_K = 3
MAX_K = 10


@dataclass(frozen=True)
class CaseEvent:
    case_id: str
    date: datetime.date
    kind: str
    note: str = ""

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise InvalidValueError(f"unknown event kind {self.kind!r}")


@dataclass(frozen=True)
class Timeline:
    """All events for one case, in chronological order."""

    case_id: str
    events: tuple[CaseEvent, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.events, key=lambda e: (e.date, e.kind, e.note)))
        object.__setattr__(self, "events", ordered)


@dataclass(frozen=True)
class NeighborResult:
    """Nearest cases by standardized distance, closest first.

    Axis bounds for the timeline view live on the TimelineBundle built by
    assemble_timelines, since they depend on event data the scan never
    touches.
    """

    neighbors: tuple[tuple[str, float], ...]
    truncated: bool


@dataclass(frozen=True)
class TimelineRow:
    case_id: str
    is_current: bool
    events: tuple[CaseEvent, ...]


@dataclass(frozen=True)
class TimelineBundle:
    """Timelines for the current case and its neighbors on one axis.

    The axis bounds span every event shown; they are None when no case
    has any events, in which case ``empty`` is set.
    """

    axis_start: datetime.date | None
    axis_end: datetime.date | None
    rows: tuple[TimelineRow, ...]
    empty: bool


def _standardized(case: CaseRecord, stats: ReferenceStats) -> np.ndarray:
    """Z-scored factor vector in the stats' factor order."""
    names = stats.means.keys()
    try:
        raw = np.array([case.values[name] for name in names])
    except KeyError as exc:
        raise SchemaMismatchError(
            f"case {case.id!r} is missing factor {exc.args[0]!r}"
        ) from exc
    if len(case.values) != len(stats.means):
        extra = set(case.values) - set(stats.means)
        raise SchemaMismatchError(
            f"case {case.id!r} has unexpected factors: {sorted(extra)}"
        )
    means = np.array(list(stats.means.values()))
    stds = np.array(list(stats.stds.values()))
    out = (raw - means) / np.where(stds > 0.0, stds, 1.0)
    return np.where(stds > 0.0, out, 0.0)


def build_standardizer(reference: "ReferenceDataset") -> ReferenceStats:
    """Per-factor mean and population std, keyed in case factor order.

    Same statistics as the contribution baseline, derived without a model
    so the metric exists even where no model is loaded.
    """
    cases = reference.cases
    if not cases:
        raise InsufficientReferenceError("reference corpus is empty")
    names = tuple(cases[0].values.keys())
    matrix = np.empty((len(cases), len(names)))
    for i, case in enumerate(cases):
        try:
            matrix[i] = [case.values[name] for name in names]
        except KeyError as exc:
            raise SchemaMismatchError(
                f"case {case.id!r} is missing factor {exc.args[0]!r}"
            ) from exc
        if len(case.values) != len(names):
            extra = set(case.values) - set(names)
            raise SchemaMismatchError(
                f"case {case.id!r} has unexpected factors: {sorted(extra)}"
            )
    means = matrix.mean(axis=0)
    stds = matrix.std(axis=0)
    return ReferenceStats(
        means={name: float(m) for name, m in zip(names, means)},
        stds={name: float(s) for name, s in zip(names, stds)},
        count=len(cases),
    )


def distance(a: CaseRecord, b: CaseRecord, stats: ReferenceStats) -> float:
    """Euclidean distance between two cases in standardized factor space."""
    diff = _standardized(a, stats) - _standardized(b, stats)
    return float(np.sqrt(diff @ diff))


def find_similar(
    case: CaseRecord,
    reference: "ReferenceDataset",
    stats: ReferenceStats,
    k: int = DEFAULT_K,
) -> NeighborResult:
    """Scan the whole reference corpus for the k nearest cases.

    The query case never matches itself. Distance ties break on case id
    so results are stable. ``truncated`` reports that fewer than k
    candidates existed.
    """
    if k < 1:
        raise InvalidInputError(f"k must be at least 1, got {k}")
    if not reference.cases:
        raise InsufficientReferenceError("reference corpus is empty")
    candidates = [c for c in reference.cases if c.id != case.id]
    if not candidates:
        return NeighborResult(neighbors=(), truncated=True)
    matrix = np.stack([_standardized(c, stats) for c in candidates])
    diff = matrix - _standardized(case, stats)
    dists = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    order = sorted(range(len(candidates)), key=lambda i: (dists[i], candidates[i].id))
    top = order[:k]
    return NeighborResult(
        neighbors=tuple((candidates[i].id, float(dists[i])) for i in top),
        truncated=len(candidates) < k,
    )


def assemble_timelines(
    current: Timeline, neighbor_timelines: list[Timeline]
) -> TimelineBundle:
    """Lay the current case and its neighbors out on one calendar axis.

    The current case is always the first row; neighbor rows keep their
    incoming order. Axis bounds are the earliest and latest event dates
    across all rows.
    """
    rows = [TimelineRow(current.case_id, True, current.events)]
    rows.extend(
        TimelineRow(t.case_id, False, t.events) for t in neighbor_timelines
    )
    dates = [e.date for row in rows for e in row.events]
    if not dates:
        return TimelineBundle(
            axis_start=None, axis_end=None, rows=tuple(rows), empty=True
        )
    return TimelineBundle(
        axis_start=min(dates),
        axis_end=max(dates),
        rows=tuple(rows),
        empty=False,
    )
