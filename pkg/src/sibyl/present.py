"""Screener-facing presentation of factors and contributions.

Model-space columns are not what screeners should read: one-hot members are
merged into single categorical factors, Boolean values become true statements
about the child (negated when false), and contributions carry risk/protective
labels instead of signs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import InvalidInputError, InvalidValueError, PresentationSchemaError
from .explain import ContributionSet
from .model import CaseRecord, Model

DEFAULT_TOP_K = 10

KIND_BINARY = "binary"
KIND_NUMERIC = "numeric"
KIND_ONEHOT_MEMBER = "onehot_member"
KIND_CATEGORICAL = "categorical"

META_KINDS = (KIND_BINARY, KIND_NUMERIC, KIND_ONEHOT_MEMBER)

LABEL_RISK = "risk"
LABEL_PROTECTIVE = "protective"
LABEL_NEUTRAL = "neutral"

_NEGATION_PATTERN = re.compile(r"\b(HAS|IS)\b")


@dataclass(frozen=True)
class FactorMeta:
    """Presentation metadata for one model-space factor.

    ``group`` and ``member_label`` are set only for one-hot members; optional
    ``min_value``/``max_value`` bound numeric sandbox edits.
    """

    name: str
    description: str
    kind: str
    category_code: str = ""
    category_name: str = ""
    negated_description: str | None = None
    group: str | None = None
    member_label: str | None = None
    min_value: float | None = None
    max_value: float | None = None

    def __post_init__(self):
        if self.kind not in META_KINDS:
            raise PresentationSchemaError(
                f"factor {self.name!r} has unknown kind {self.kind!r}"
            )
        if self.kind == KIND_ONEHOT_MEMBER:
            if not self.group:
                raise PresentationSchemaError(
                    f"one-hot member {self.name!r} has no group"
                )
            if not self.member_label:
                raise PresentationSchemaError(
                    f"one-hot member {self.name!r} has no member label"
                )
        elif self.group is not None:
            raise PresentationSchemaError(
                f"factor {self.name!r} is not a one-hot member but names a group"
            )


@dataclass(frozen=True)
class PresentedFactor:
    """One row in the screener's factor table.

    A standalone model factor passes through; a one-hot group collapses to a
    single categorical factor whose source factors are the group members.
    """

    display_name: str
    kind: str
    source_factors: tuple[str, ...]
    category_code: str
    category_name: str
    member_labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class PresentationSchema:
    presented: tuple[PresentedFactor, ...]
    metas: dict[str, FactorMeta] = field(repr=False)

    def by_display_name(self, display_name: str) -> PresentedFactor | None:
        for factor in self.presented:
            if factor.display_name == display_name:
                return factor
        return None

    def model_factor_names(self) -> tuple[str, ...]:
        names = []
        for factor in self.presented:
            names.extend(factor.source_factors)
        return tuple(names)


@dataclass(frozen=True)
class PresentedContribution:
    display_name: str
    displayed_value: str
    contribution: float
    label: str
    category_code: str
    category_name: str


def build_schema(metas: list[FactorMeta]) -> PresentationSchema:
    """Collapse factor metadata into the presented-factor list.

    Standalone factors keep their description as display name; each one-hot
    group becomes one categorical factor named after the group. Groups need
    at least two members and distinct member labels.
    """
    by_name: dict[str, FactorMeta] = {}
    for meta in metas:
        if meta.name in by_name:
            raise PresentationSchemaError(f"duplicate factor metadata for {meta.name!r}")
        by_name[meta.name] = meta

    presented: list[PresentedFactor] = []
    groups_done: set[str] = set()
    for meta in metas:
        if meta.kind != KIND_ONEHOT_MEMBER:
            presented.append(
                PresentedFactor(
                    display_name=meta.description,
                    kind=meta.kind,
                    source_factors=(meta.name,),
                    category_code=meta.category_code,
                    category_name=meta.category_name,
                )
            )
            continue
        if meta.group in groups_done:
            continue
        members = [m for m in metas if m.kind == KIND_ONEHOT_MEMBER and m.group == meta.group]
        if len(members) < 2:
            raise PresentationSchemaError(
                f"one-hot group {meta.group!r} has only {len(members)} member"
            )
        labels = [m.member_label for m in members]
        if len(set(labels)) != len(labels):
            raise PresentationSchemaError(
                f"one-hot group {meta.group!r} has duplicate member labels"
            )
        presented.append(
            PresentedFactor(
                display_name=meta.group,
                kind=KIND_CATEGORICAL,
                source_factors=tuple(m.name for m in members),
                category_code=meta.category_code,
                category_name=meta.category_name,
                member_labels=tuple(labels),
            )
        )
        groups_done.add(meta.group)

    display_names = [factor.display_name for factor in presented]
    if len(set(display_names)) != len(display_names):
        seen = set()
        duplicate = next(n for n in display_names if n in seen or seen.add(n))
        raise PresentationSchemaError(f"duplicate display name {duplicate!r}")
    return PresentationSchema(presented=tuple(presented), metas=by_name)


def check_schema_covers_model(schema: PresentationSchema, model: Model) -> None:
    """Every model factor must map to exactly one presented factor."""
    mapped = schema.model_factor_names()
    if len(mapped) != len(set(mapped)):
        raise PresentationSchemaError("a model factor appears in two presented factors")
    missing = set(model.weights) - set(mapped)
    if missing:
        raise PresentationSchemaError(
            f"no presentation metadata for factor {sorted(missing)[0]!r}"
        )
    extra = set(mapped) - set(model.weights)
    if extra:
        raise PresentationSchemaError(
            f"presentation metadata for unknown factor {sorted(extra)[0]!r}"
        )


def _auto_negate(description: str) -> str:
    match = _NEGATION_PATTERN.search(description)
    if match is None:
        return "NOT: " + description
    if match.group(1) == "HAS":
        replacement = "DOES NOT HAVE"
    else:
        replacement = "IS NOT"
    return description[: match.start()] + replacement + description[match.end() :]


def render_value(meta: FactorMeta, value: float) -> str:
    """Render one factor value as screener-facing text.

    Boolean factors become statements that are true of the case: the plain
    description when set, the negated description (explicit, pattern-based,
    or a "NOT:" fallback) when unset. Numerics are formatted as numbers.
    """
    if meta.kind == KIND_NUMERIC:
        if not math.isfinite(value):
            raise InvalidValueError(f"value for {meta.name!r} is not finite")
        if value == int(value):
            return str(int(value))
        return f"{value:.2f}"
    if value == 1:
        return meta.description
    if value == 0:
        if meta.negated_description:
            return meta.negated_description
        return _auto_negate(meta.description)
    raise InvalidValueError(
        f"value {value!r} is not valid for Boolean factor {meta.name!r}"
    )


def _label_for(contribution: float) -> str:
    if contribution > 0:
        return LABEL_RISK
    if contribution < 0:
        return LABEL_PROTECTIVE
    return LABEL_NEUTRAL


def merge_contributions(
    schema: PresentationSchema, contribs: ContributionSet, case: CaseRecord
) -> list[PresentedContribution]:
    """Fold model-space contributions into presented rows.

    One-hot groups sum their members' contributions and display the active
    member's label, so the presented total equals the model-space total.
    """
    rows = []
    for factor in schema.presented:
        if factor.kind == KIND_CATEGORICAL:
            contribution = 0.0
            active_label = None
            for name, label in zip(factor.source_factors, factor.member_labels):
                contribution += contribs.contributions[name]
                if case.values[name] == 1:
                    if active_label is not None:
                        raise InvalidValueError(
                            f"group {factor.display_name!r} has two active members"
                        )
                    active_label = label
            if active_label is None:
                raise InvalidValueError(
                    f"group {factor.display_name!r} has no active member"
                )
            displayed = active_label
        else:
            name = factor.source_factors[0]
            contribution = contribs.contributions[name]
            displayed = render_value(schema.metas[name], case.values[name])
        rows.append(
            PresentedContribution(
                display_name=factor.display_name,
                displayed_value=displayed,
                contribution=contribution,
                label=_label_for(contribution),
                category_code=factor.category_code,
                category_name=factor.category_name,
            )
        )
    return rows


def top_k(
    presented: list[PresentedContribution], k: int = DEFAULT_TOP_K
) -> list[PresentedContribution]:
    """The k largest rows by absolute contribution, ties by name."""
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    ordered = sorted(presented, key=lambda r: (-abs(r.contribution), r.display_name))
    return ordered[:k]


def split_view(
    presented: list[PresentedContribution],
) -> tuple[list[PresentedContribution], list[PresentedContribution]]:
    """Partition into risk and protective columns, zeros in neither.

    Risk rows are sorted largest first, protective rows most negative first,
    mirroring the side-by-side layout screeners use.
    """
    risk = sorted(
        (r for r in presented if r.contribution > 0),
        key=lambda r: (-r.contribution, r.display_name),
    )
    protective = sorted(
        (r for r in presented if r.contribution < 0),
        key=lambda r: (r.contribution, r.display_name),
    )
    return risk, protective


def search_filter(
    presented: list[PresentedContribution],
    query: str = "",
    categories: set[str] | None = None,
) -> list[PresentedContribution]:
    """Case-insensitive name search plus category filter, order preserved."""
    needle = query.lower()
    return [
        row
        for row in presented
        if (not needle or needle in row.display_name.lower())
        and (not categories or row.category_code in categories)
    ]
