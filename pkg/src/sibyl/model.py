"""Additive risk model: raw predictions and the 1-20 score translation.

The model is a plain weighted sum. Raw outputs are mapped onto the integer
score range by counting how many empirical ventile cutpoints the output
exceeds, so the score is calibrated against the reference population rather
than against any fixed threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import InsufficientReferenceError, InvalidInputError, SchemaMismatchError

if TYPE_CHECKING:
    from .dataio import ReferenceDataset

SCORE_MIN = 1
SCORE_MAX = 20
N_CUTPOINTS = SCORE_MAX - SCORE_MIN


@dataclass(frozen=True)
class Model:
    """Additive model: raw output is ``intercept + sum(weight * value)``.

    ``weights`` maps factor name to coefficient; its insertion order is the
    canonical factor order used everywhere else.
    """

    intercept: float
    weights: dict[str, float]
    outcome_name: str

    def __post_init__(self):
        if not self.weights:
            raise InvalidInputError("model must have at least one factor")
        if not math.isfinite(self.intercept):
            raise InvalidInputError("model intercept is not finite")
        for name, weight in self.weights.items():
            if not isinstance(name, str) or not name:
                raise InvalidInputError("factor names must be non-empty strings")
            if not math.isfinite(weight):
                raise InvalidInputError(f"weight for factor {name!r} is not finite")

    @property
    def factor_names(self) -> tuple[str, ...]:
        return tuple(self.weights)


@dataclass(frozen=True)
class CaseRecord:
    """One referral: factor values keyed by model factor name.

    Treated as immutable; sandbox edits always produce a new record.
    """

    id: str
    values: dict[str, float]
    narrative: str = ""


@dataclass(frozen=True)
class ScoreBins:
    """The 19 cutpoints separating raw outputs into the 20 score bands."""

    cutpoints: tuple[float, ...]

    def __post_init__(self):
        if len(self.cutpoints) != N_CUTPOINTS:
            raise InvalidInputError(
                f"expected {N_CUTPOINTS} cutpoints, got {len(self.cutpoints)}"
            )
        previous = None
        for t in self.cutpoints:
            if not math.isfinite(t):
                raise InvalidInputError("cutpoints must be finite")
            if previous is not None and t < previous:
                raise InvalidInputError("cutpoints must be non-decreasing")
            previous = t


def check_schema(model: Model, case: CaseRecord) -> None:
    """Raise unless the case covers exactly the model's factor names."""
    missing = [name for name in model.weights if name not in case.values]
    if missing:
        raise SchemaMismatchError(
            f"case {case.id!r} is missing factor {missing[0]!r}"
            + (f" and {len(missing) - 1} more" if len(missing) > 1 else "")
        )
    if len(case.values) != len(model.weights):
        extra = [name for name in case.values if name not in model.weights]
        raise SchemaMismatchError(
            f"case {case.id!r} has unknown factor {extra[0]!r}"
            + (f" and {len(extra) - 1} more" if len(extra) > 1 else "")
        )


def predict_raw(model: Model, case: CaseRecord) -> float:
    """Evaluate the additive model on one case.

    Summation follows the model's factor order, so repeated calls are
    bit-identical.
    """
    check_schema(model, case)
    raw = model.intercept
    for name, weight in model.weights.items():
        raw += weight * case.values[name]
    return raw


def interpolated_quantile(sorted_values: Sequence[float], q: float) -> float:
    """Quantile of pre-sorted values by linear interpolation.

    Uses the rank position h = (n - 1) * q and interpolates between the two
    surrounding order statistics. Kept local so the score translation does
    not depend on any statistics library's quantile convention.
    """
    n = len(sorted_values)
    if n == 0:
        raise InvalidInputError("quantile of empty sequence")
    h = (n - 1) * q
    lo = math.floor(h)
    frac = h - lo
    if lo >= n - 1:
        return float(sorted_values[n - 1])
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo])


def fit_score_bins(model: Model, reference: "ReferenceDataset") -> ScoreBins:
    """Place the 19 cutpoints at the empirical ventiles of raw outputs.

    Requires at least 20 reference cases so every ventile is supported by
    the data.
    """
    cases = reference.cases
    if len(cases) < 20:
        raise InsufficientReferenceError(
            f"score bins need at least 20 reference cases, got {len(cases)}"
        )
    raws = sorted(predict_raw(model, case) for case in cases)
    cutpoints = tuple(interpolated_quantile(raws, j / 20) for j in range(1, 20))
    return ScoreBins(cutpoints)


def to_risk_score(raw: float, bins: ScoreBins) -> int:
    """Translate a raw output to the 1-20 score.

    The score is one plus the number of cutpoints strictly below the raw
    output; ties at a cutpoint fall into the lower score.
    """
    if not math.isfinite(raw):
        raise InvalidInputError("raw output must be finite")
    return 1 + sum(1 for t in bins.cutpoints if raw > t)


def predict_score(model: Model, bins: ScoreBins, case: CaseRecord) -> int:
    """Raw prediction followed by score translation."""
    return to_risk_score(predict_raw(model, case), bins)
