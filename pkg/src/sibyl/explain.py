"""Local factor contributions and global permutation importance.

For an additive model the Shapley attribution of each factor has a closed
form, ``weight * (value - reference_mean)``, which is what the fast path
computes. An exhaustive coalition-enumeration oracle is kept alongside it so
the closed form can be verified rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    AlignmentError,
    InsufficientReferenceError,
    InvalidInputError,
    OracleSizeError,
    SchemaMismatchError,
)
from .model import CaseRecord, Model, check_schema, predict_raw

if TYPE_CHECKING:
    from .dataio import OutcomeTable, ReferenceDataset

ORACLE_MAX_FACTORS = 20
ADDITIVITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ReferenceStats:
    """Per-factor mean and population standard deviation of the reference."""

    means: dict[str, float]
    stds: dict[str, float]
    count: int


@dataclass(frozen=True)
class ContributionSet:
    """Signed per-factor attributions for one case.

    ``base_value`` is the model output at the reference means; contributions
    plus base value reproduce the raw output.
    """

    base_value: float
    contributions: dict[str, float]
    raw_output: float


@dataclass(frozen=True)
class ImportanceEntry:
    factor: str
    raw_importance: float
    relative_importance: float


@dataclass(frozen=True)
class ImportanceReport:
    """Global factor ranking, sorted by raw importance descending."""

    entries: tuple[ImportanceEntry, ...]
    metric_name: str
    repeats: int
    seed: int


def compute_reference_stats(
    model: Model, reference: "ReferenceDataset"
) -> ReferenceStats:
    """Arithmetic mean and population std per factor over the reference."""
    cases = reference.cases
    if not cases:
        raise InsufficientReferenceError("reference dataset is empty")
    names = model.factor_names
    try:
        matrix = np.array(
            [[case.values[name] for name in names] for case in cases], dtype=float
        )
    except KeyError as exc:
        raise SchemaMismatchError(f"reference case is missing factor {exc.args[0]!r}")
    means = matrix.mean(axis=0)
    stds = matrix.std(axis=0)
    return ReferenceStats(
        means={name: float(m) for name, m in zip(names, means)},
        stds={name: float(s) for name, s in zip(names, stds)},
        count=len(cases),
    )


def _check_stats(model: Model, stats: ReferenceStats) -> None:
    for name in model.weights:
        if name not in stats.means:
            raise SchemaMismatchError(f"reference stats are missing factor {name!r}")


def local_contributions(
    model: Model, stats: ReferenceStats, case: CaseRecord
) -> ContributionSet:
    """Exact per-factor attributions for an additive model.

    Each factor contributes ``weight * (value - mean)`` relative to the
    reference population; the base value is the model output at the means.
    Matches the exhaustive coalition oracle to within float tolerance.
    """
    _check_stats(model, stats)
    raw = predict_raw(model, case)
    base = model.intercept
    contributions = {}
    for name, weight in model.weights.items():
        mean = stats.means[name]
        base += weight * mean
        contributions[name] = weight * (case.values[name] - mean)
    return ContributionSet(base_value=base, contributions=contributions, raw_output=raw)


def shapley_bruteforce(
    model: Model, stats: ReferenceStats, case: CaseRecord
) -> ContributionSet:
    """Classic coalition-enumeration attribution, used as a slow oracle.

    A coalition's value is the model evaluated with in-coalition factors at
    their case values and everything else at the reference mean. Each
    factor's attribution is the factorially-weighted average of its marginal
    contribution over all coalitions. Exponential in the factor count, so
    capped at 20 factors.
    """
    _check_stats(model, stats)
    check_schema(model, case)
    names = list(model.weights)
    n = len(names)
    if n > ORACLE_MAX_FACTORS:
        raise OracleSizeError(
            f"coalition enumeration handles at most {ORACLE_MAX_FACTORS} factors, got {n}"
        )
    weights = [model.weights[name] for name in names]
    case_values = [case.values[name] for name in names]
    mean_values = [stats.means[name] for name in names]

    n_masks = 1 << n
    coalition_value = [0.0] * n_masks
    for mask in range(n_masks):
        total = model.intercept
        for i in range(n):
            value = case_values[i] if mask >> i & 1 else mean_values[i]
            total += weights[i] * value
        coalition_value[mask] = total

    popcount = [0] * n_masks
    for mask in range(1, n_masks):
        popcount[mask] = popcount[mask >> 1] + (mask & 1)

    factorial = [math.factorial(i) for i in range(n + 1)]
    # weight of a coalition S not containing the player: |S|! (n-|S|-1)! / n!
    size_weight = [factorial[s] * factorial[n - s - 1] / factorial[n] for s in range(n)]

    contributions = {}
    for i, name in enumerate(names):
        bit = 1 << i
        phi = 0.0
        for mask in range(n_masks):
            if mask & bit:
                continue
            phi += size_weight[popcount[mask]] * (
                coalition_value[mask | bit] - coalition_value[mask]
            )
        contributions[name] = phi
    return ContributionSet(
        base_value=coalition_value[0],
        contributions=contributions,
        raw_output=coalition_value[n_masks - 1],
    )


def global_importance(
    model: Model,
    reference: "ReferenceDataset",
    outcomes: "OutcomeTable",
    repeats: int = 10,
    seed: int = 42,
) -> ImportanceReport:
    """Permutation importance of every factor against the outcome labels.

    Model performance is the mean squared error between the raw output and
    the 0/1 outcome label. Each factor's raw importance is the average loss
    increase over ``repeats`` independent permutations of its column. The
    permutation RNG is derived from (seed, factor index, repeat), so results
    are reproducible and independent of evaluation order.
    """
    if repeats < 1:
        raise InvalidInputError("repeats must be at least 1")
    cases = reference.cases
    if not cases:
        raise InsufficientReferenceError("reference dataset is empty")
    names = list(model.weights)
    matrix = np.array(
        [[case.values[name] for name in names] for case in cases], dtype=float
    )
    labels = []
    for case in cases:
        if case.id not in outcomes.removed:
            raise AlignmentError(f"no outcome label for case {case.id!r}")
        labels.append(outcomes.removed[case.id])
    extra = set(outcomes.removed) - {case.id for case in cases}
    if extra:
        raise AlignmentError(f"outcome label for unknown case {sorted(extra)[0]!r}")
    y = np.array(labels, dtype=float)
    beta = np.array([model.weights[name] for name in names], dtype=float)

    def loss(predictions: np.ndarray) -> float:
        diff = predictions - y
        return float(diff @ diff) / len(diff)

    baseline = loss(matrix @ beta + model.intercept)
    raw_importances = []
    for index, name in enumerate(names):
        increase = 0.0
        for repeat in range(repeats):
            rng = np.random.default_rng([seed, index, repeat])
            permuted = matrix.copy()
            permuted[:, index] = rng.permutation(permuted[:, index])
            increase += loss(permuted @ beta + model.intercept) - baseline
        raw_importances.append(increase / repeats)

    max_raw = max(raw_importances)
    entries = [
        ImportanceEntry(
            factor=name,
            raw_importance=raw,
            relative_importance=max(raw, 0.0) / max_raw if max_raw > 0 else 0.0,
        )
        for name, raw in zip(names, raw_importances)
    ]
    entries.sort(key=lambda e: (-e.raw_importance, e.factor))
    return ImportanceReport(
        entries=tuple(entries), metric_name="mse", repeats=repeats, seed=seed
    )
