"""Sandbox engine: score a case under hypothetical factor changes.

Changes address presented factors, never raw one-hot columns, so a
categorical edit always moves the whole group atomically. At most four
factors can change at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InvalidChangeError, InvalidValueError, LimitExceededError
from .model import CaseRecord, Model, ScoreBins, predict_raw, to_risk_score
from .present import (
    KIND_BINARY,
    KIND_CATEGORICAL,
    KIND_NUMERIC,
    PresentationSchema,
    render_value,
)

MAX_CHANGES = 4

DIRECTION_UP = "up"
DIRECTION_DOWN = "down"
DIRECTION_UNCHANGED = "unchanged"


@dataclass(frozen=True)
class FactorChange:
    """One hypothetical edit: a presented factor and its new value.

    ``new_value`` is 0/1 for Boolean factors, a finite real for numerics,
    or a member label for categorical factors.
    """

    factor: str
    new_value: float | str


@dataclass(frozen=True)
class WhatIfResult:
    old_score: int
    new_score: int
    old_raw: float
    new_raw: float
    direction: str


@dataclass(frozen=True)
class FlipRow:
    display_name: str
    statement: str
    new_score: int
    direction: str


@dataclass(frozen=True)
class FlipTable:
    """Resulting score if each standalone Boolean factor were reversed."""

    old_score: int
    rows: tuple[FlipRow, ...]


def _direction(old_score: int, new_score: int) -> str:
    if new_score > old_score:
        return DIRECTION_UP
    if new_score < old_score:
        return DIRECTION_DOWN
    return DIRECTION_UNCHANGED


def _as_binary(value) -> float:
    if isinstance(value, bool):
        return float(value)
    if isinstance(value, (int, float)) and value in (0, 1):
        return float(value)
    raise InvalidChangeError(f"Boolean factors take 0 or 1, got {value!r}")


def apply_changes(
    schema: PresentationSchema, case: CaseRecord, changes: list[FactorChange]
) -> CaseRecord:
    """Produce a new case record with the requested edits applied.

    The input case is never modified. Categorical edits set the chosen
    member column to 1 and every sibling to 0, keeping the one-hot group
    consistent.
    """
    if not changes:
        raise InvalidChangeError("at least one change is required")
    if len(changes) > MAX_CHANGES:
        raise LimitExceededError(
            f"at most {MAX_CHANGES} factors can change at a time, got {len(changes)}"
        )
    names = [change.factor for change in changes]
    if len(set(names)) != len(names):
        raise InvalidChangeError("the same factor appears in two changes")

    new_values = dict(case.values)
    for change in changes:
        factor = schema.by_display_name(change.factor)
        if factor is None:
            raise InvalidChangeError(f"unknown factor {change.factor!r}")
        if factor.kind == KIND_BINARY:
            new_values[factor.source_factors[0]] = _as_binary(change.new_value)
        elif factor.kind == KIND_NUMERIC:
            value = change.new_value
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidChangeError(
                    f"numeric factor {change.factor!r} needs a number, got {value!r}"
                )
            value = float(value)
            if not math.isfinite(value):
                raise InvalidChangeError(f"value for {change.factor!r} is not finite")
            meta = schema.metas[factor.source_factors[0]]
            if meta.min_value is not None and value < meta.min_value:
                raise InvalidChangeError(
                    f"{change.factor!r} must be at least {meta.min_value}"
                )
            if meta.max_value is not None and value > meta.max_value:
                raise InvalidChangeError(
                    f"{change.factor!r} must be at most {meta.max_value}"
                )
            new_values[factor.source_factors[0]] = value
        elif factor.kind == KIND_CATEGORICAL:
            label = change.new_value
            if label not in factor.member_labels:
                raise InvalidChangeError(
                    f"{label!r} is not a category of {change.factor!r}"
                )
            for name, member_label in zip(factor.source_factors, factor.member_labels):
                new_values[name] = 1.0 if member_label == label else 0.0
        else:
            raise InvalidChangeError(
                f"factor {change.factor!r} cannot be changed directly"
            )
    return replace(case, values=new_values)


def whatif_score(
    model: Model,
    bins: ScoreBins,
    schema: PresentationSchema,
    case: CaseRecord,
    changes: list[FactorChange],
) -> WhatIfResult:
    """Score the case before and after the requested edits."""
    old_raw = predict_raw(model, case)
    modified = apply_changes(schema, case, changes)
    new_raw = predict_raw(model, modified)
    old_score = to_risk_score(old_raw, bins)
    new_score = to_risk_score(new_raw, bins)
    return WhatIfResult(
        old_score=old_score,
        new_score=new_score,
        old_raw=old_raw,
        new_raw=new_raw,
        direction=_direction(old_score, new_score),
    )


def flip_all_booleans(
    model: Model, bins: ScoreBins, schema: PresentationSchema, case: CaseRecord
) -> FlipTable:
    """Reverse each standalone Boolean factor independently and rescore.

    One-hot members are excluded: they only move through categorical
    changes, never one column at a time. Every row starts from the
    unmodified case. Rows are ordered by absolute score change, largest
    first.
    """
    old_raw = predict_raw(model, case)
    old_score = to_risk_score(old_raw, bins)
    rows = []
    for factor in schema.presented:
        if factor.kind != KIND_BINARY:
            continue
        name = factor.source_factors[0]
        current = case.values[name]
        if current not in (0, 1):
            raise InvalidValueError(
                f"Boolean factor {name!r} holds {current!r}, cannot flip"
            )
        flipped = 1.0 - current
        new_values = dict(case.values)
        new_values[name] = flipped
        new_raw = predict_raw(model, replace(case, values=new_values))
        new_score = to_risk_score(new_raw, bins)
        rows.append(
            FlipRow(
                display_name=factor.display_name,
                statement=render_value(schema.metas[name], flipped),
                new_score=new_score,
                direction=_direction(old_score, new_score),
            )
        )
    rows.sort(key=lambda r: (-abs(r.new_score - old_score), r.display_name))
    return FlipTable(old_score=old_score, rows=tuple(rows))
