"""Input files: loading, total validation, and demo corpus generation.

Five files feed the engine: `model.json`, `factors.json`, `cases.csv`,
`outcomes.csv`, and `events.csv`. Validation is total: every problem in the
corpus files becomes a report entry instead of an exception, and the load
succeeds only when no error-severity entry exists.

The demo generator replaces the original synthetic-data pipeline with
something deliberately naive: independent marginals per factor, a random
sparse-weight model, outcomes sampled from a logistic transform of the raw
output, and a handful of timeline events per case. It is reproducible, not
realistic: the same (n_cases, n_factors, seed) always yields byte-identical
files.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CorpusValidationError,
    FileFormatError,
    InvalidInputError,
    SibylError,
)
from .model import N_CUTPOINTS, CaseRecord, Model, ScoreBins, predict_raw
from .neighbors import EVENT_KINDS, CaseEvent, Timeline
from .present import (
    KIND_BINARY,
    KIND_NUMERIC,
    KIND_ONEHOT_MEMBER,
    FactorMeta,
    PresentationSchema,
    build_schema,
    check_schema_covers_model,
)

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

_MODEL_FIELDS = {"intercept", "weights", "outcome_name", "score_cutpoints"}
_META_REQUIRED = {"name", "description", "kind"}
_META_OPTIONAL = {
    "category_code",
    "category_name",
    "negated_description",
    "group",
    "member_label",
    "min_value",
    "max_value",
}


@dataclass(frozen=True)
class Finding:
    """One validation observation, tied to a file location."""

    severity: str
    location: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return all(f.severity != SEVERITY_ERROR for f in self.findings)

    @property
    def error_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == SEVERITY_ERROR)

    @property
    def warning_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == SEVERITY_WARNING)


@dataclass(frozen=True)
class ReferenceDataset:
    """The background population of past cases."""

    cases: tuple[CaseRecord, ...]
    by_id: dict[str, int]

    def get(self, case_id: str) -> CaseRecord | None:
        index = self.by_id.get(case_id)
        return None if index is None else self.cases[index]


@dataclass(frozen=True)
class OutcomeTable:
    """Outcome label per case, with the removal date when one exists."""

    removed: dict[str, int]
    removal_date: dict[str, datetime.date]


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FileFormatError(f"{where}: expected a number, got {value!r}")
    number = float(value)
    if not math.isfinite(number):
        raise FileFormatError(f"{where}: number is not finite")
    return number


def _require_text(value, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise FileFormatError(f"{where}: expected non-empty text, got {value!r}")
    return value


def _read_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{path.name}: invalid JSON at line {exc.lineno}: {exc.msg}"
        ) from exc


def load_model_file(path) -> tuple[Model, ScoreBins | None]:
    """Parse a model file into a Model and, when present, its cutpoints."""
    path = Path(path)
    payload = _read_json(path)
    if not isinstance(payload, dict):
        raise FileFormatError(f"{path.name}: expected a JSON object at top level")
    unknown = set(payload) - _MODEL_FIELDS
    if unknown:
        raise FileFormatError(f"{path.name}: unknown field {sorted(unknown)[0]!r}")
    for name in ("intercept", "weights", "outcome_name"):
        if name not in payload:
            raise FileFormatError(f"{path.name}: missing field {name!r}")

    intercept = _require_number(payload["intercept"], f"{path.name}: intercept")
    raw_weights = payload["weights"]
    if not isinstance(raw_weights, dict) or not raw_weights:
        raise FileFormatError(f"{path.name}: weights must be a non-empty object")
    weights = {}
    for name, value in raw_weights.items():
        _require_text(name, f"{path.name}: weights key")
        weights[name] = _require_number(value, f"{path.name}: weight {name!r}")
    outcome_name = _require_text(payload["outcome_name"], f"{path.name}: outcome_name")

    bins = None
    if "score_cutpoints" in payload:
        cuts = payload["score_cutpoints"]
        if not isinstance(cuts, list):
            raise FileFormatError(f"{path.name}: score_cutpoints must be a list")
        if len(cuts) != N_CUTPOINTS:
            raise FileFormatError(
                f"{path.name}: score_cutpoints needs {N_CUTPOINTS} values, "
                f"got {len(cuts)}"
            )
        values = tuple(
            _require_number(v, f"{path.name}: score_cutpoints[{i}]")
            for i, v in enumerate(cuts)
        )
        try:
            bins = ScoreBins(values)
        except SibylError as exc:
            raise FileFormatError(f"{path.name}: {exc}") from exc
    try:
        model = Model(intercept=intercept, weights=weights, outcome_name=outcome_name)
    except SibylError as exc:
        raise FileFormatError(f"{path.name}: {exc}") from exc
    return model, bins


def serialize_model(model: Model, bins: ScoreBins | None = None) -> str:
    """Canonical model-file text; load_model_file inverts it exactly."""
    payload = {
        "intercept": model.intercept,
        "weights": dict(model.weights),
        "outcome_name": model.outcome_name,
    }
    if bins is not None:
        payload["score_cutpoints"] = list(bins.cutpoints)
    return json.dumps(payload, indent=2) + "\n"


def load_factor_metas(path) -> list[FactorMeta]:
    """Parse the factor metadata file into FactorMeta records."""
    path = Path(path)
    payload = _read_json(path)
    if not isinstance(payload, list) or not payload:
        raise FileFormatError(f"{path.name}: expected a non-empty JSON list")
    metas = []
    for i, entry in enumerate(payload):
        where = f"{path.name}: entry {i}"
        if not isinstance(entry, dict):
            raise FileFormatError(f"{where}: expected an object")
        unknown = set(entry) - _META_REQUIRED - _META_OPTIONAL
        if unknown:
            raise FileFormatError(f"{where}: unknown field {sorted(unknown)[0]!r}")
        missing = _META_REQUIRED - set(entry)
        if missing:
            raise FileFormatError(f"{where}: missing field {sorted(missing)[0]!r}")
        kwargs = {
            "name": _require_text(entry["name"], f"{where}: name"),
            "description": _require_text(entry["description"], f"{where}: description"),
            "kind": _require_text(entry["kind"], f"{where}: kind"),
        }
        for key in ("category_code", "category_name"):
            if key in entry:
                kwargs[key] = _require_text(entry[key], f"{where}: {key}")
        for key in ("negated_description", "group", "member_label"):
            if key in entry:
                kwargs[key] = _require_text(entry[key], f"{where}: {key}")
        for key in ("min_value", "max_value"):
            if key in entry:
                kwargs[key] = _require_number(entry[key], f"{where}: {key}")
        try:
            metas.append(FactorMeta(**kwargs))
        except SibylError as exc:
            raise FileFormatError(f"{where}: {exc}") from exc
    return metas


def _read_csv_rows(
    path: Path, findings: list[Finding]
) -> tuple[list[str], list[tuple[int, list[str]]]] | None:
    """Header plus (line number, cells) rows; None when unreadable."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        findings.append(
            Finding(SEVERITY_ERROR, path.name, f"cannot read file: {exc.strerror}")
        )
        return None
    except UnicodeDecodeError:
        findings.append(Finding(SEVERITY_ERROR, path.name, "file is not UTF-8"))
        return None
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        findings.append(Finding(SEVERITY_ERROR, path.name, "file is empty"))
        return None
    header = rows[0]
    data = [(i + 2, row) for i, row in enumerate(rows[1:]) if row]
    return header, data


def _parse_cases(
    path: Path,
    model: Model,
    schema: PresentationSchema,
    findings: list[Finding],
) -> list[CaseRecord]:
    parsed = _read_csv_rows(path, findings)
    if parsed is None:
        return []
    header, rows = parsed

    factor_names = model.factor_names
    if not header or header[0] != "id":
        findings.append(
            Finding(SEVERITY_ERROR, f"{path.name}:1", "first column must be 'id'")
        )
        return []
    seen_columns = set()
    column_of = {}
    ok_header = True
    for i, column in enumerate(header[1:], start=1):
        if column in seen_columns:
            findings.append(
                Finding(SEVERITY_ERROR, f"{path.name}:1", f"duplicate column {column!r}")
            )
            ok_header = False
            continue
        seen_columns.add(column)
        if column == "narrative" or column in model.weights:
            column_of[column] = i
        else:
            findings.append(
                Finding(
                    SEVERITY_ERROR,
                    f"{path.name}:1",
                    f"column {column!r} is not a model factor",
                )
            )
            ok_header = False
    for name in factor_names:
        if name not in column_of:
            findings.append(
                Finding(
                    SEVERITY_ERROR,
                    f"{path.name}:1",
                    f"missing column for factor {name!r}",
                )
            )
            ok_header = False
    if not ok_header:
        return []
    narrative_col = column_of.get("narrative")

    groups = [f for f in schema.presented if f.kind == "categorical"]
    cases = []
    seen_ids = set()
    for line, row in rows:
        where = f"{path.name}:{line}"
        if len(row) != len(header):
            findings.append(
                Finding(
                    SEVERITY_ERROR,
                    where,
                    f"expected {len(header)} cells, got {len(row)}",
                )
            )
            continue
        case_id = row[0].strip()
        if not case_id:
            findings.append(Finding(SEVERITY_ERROR, where, "empty case id"))
            continue
        if case_id in seen_ids:
            findings.append(
                Finding(SEVERITY_ERROR, where, f"duplicate case id {case_id!r}")
            )
            continue
        seen_ids.add(case_id)

        values = {}
        row_ok = True
        for name in factor_names:
            cell = row[column_of[name]].strip()
            try:
                value = float(cell)
            except ValueError:
                findings.append(
                    Finding(
                        SEVERITY_ERROR,
                        where,
                        f"factor {name!r} has non-numeric value {cell!r}",
                    )
                )
                row_ok = False
                continue
            if not math.isfinite(value):
                findings.append(
                    Finding(
                        SEVERITY_ERROR, where, f"factor {name!r} is not finite"
                    )
                )
                row_ok = False
                continue
            meta = schema.metas[name]
            if meta.kind in (KIND_BINARY, KIND_ONEHOT_MEMBER) and value not in (0, 1):
                findings.append(
                    Finding(
                        SEVERITY_ERROR,
                        where,
                        f"factor {name!r} must be 0 or 1, got {cell}",
                    )
                )
                row_ok = False
                continue
            if meta.kind == KIND_NUMERIC:
                if meta.min_value is not None and value < meta.min_value:
                    findings.append(
                        Finding(
                            SEVERITY_WARNING,
                            where,
                            f"factor {name!r} value {cell} below stated "
                            f"minimum {meta.min_value}",
                        )
                    )
                if meta.max_value is not None and value > meta.max_value:
                    findings.append(
                        Finding(
                            SEVERITY_WARNING,
                            where,
                            f"factor {name!r} value {cell} above stated "
                            f"maximum {meta.max_value}",
                        )
                    )
            values[name] = value
        if not row_ok:
            continue

        for group in groups:
            active = sum(values[name] for name in group.source_factors)
            if active != 1:
                findings.append(
                    Finding(
                        SEVERITY_ERROR,
                        where,
                        f"group {group.display_name!r} has {int(active)} active "
                        "members, expected exactly 1",
                    )
                )
                row_ok = False
        if not row_ok:
            continue

        narrative = row[narrative_col] if narrative_col is not None else ""
        cases.append(CaseRecord(id=case_id, values=values, narrative=narrative))
    return cases


def _parse_outcomes(
    path: Path, case_ids: set[str], findings: list[Finding]
) -> OutcomeTable:
    parsed = _read_csv_rows(path, findings)
    if parsed is None:
        return OutcomeTable(removed={}, removal_date={})
    header, rows = parsed
    if header not in (["case_id", "removed"], ["case_id", "removed", "removal_date"]):
        findings.append(
            Finding(
                SEVERITY_ERROR,
                f"{path.name}:1",
                "header must be case_id,removed[,removal_date]",
            )
        )
        return OutcomeTable(removed={}, removal_date={})
    has_date = len(header) == 3

    removed = {}
    removal_date = {}
    for line, row in rows:
        where = f"{path.name}:{line}"
        if len(row) != len(header):
            findings.append(
                Finding(
                    SEVERITY_ERROR,
                    where,
                    f"expected {len(header)} cells, got {len(row)}",
                )
            )
            continue
        case_id = row[0].strip()
        if case_id not in case_ids:
            findings.append(
                Finding(SEVERITY_ERROR, where, f"unknown case id {case_id!r}")
            )
            continue
        if case_id in removed:
            findings.append(
                Finding(SEVERITY_ERROR, where, f"duplicate outcome for {case_id!r}")
            )
            continue
        label = row[1].strip()
        if label not in ("0", "1"):
            findings.append(
                Finding(
                    SEVERITY_ERROR, where, f"removed must be 0 or 1, got {label!r}"
                )
            )
            continue
        removed[case_id] = int(label)
        if has_date and row[2].strip():
            try:
                date = datetime.date.fromisoformat(row[2].strip())
            except ValueError:
                findings.append(
                    Finding(
                        SEVERITY_ERROR,
                        where,
                        f"removal_date {row[2].strip()!r} is not an ISO date",
                    )
                )
                continue
            if removed[case_id] == 0:
                findings.append(
                    Finding(
                        SEVERITY_WARNING,
                        where,
                        "removal_date given for a case that was not removed",
                    )
                )
            removal_date[case_id] = date

    for case_id in sorted(case_ids - set(removed)):
        findings.append(
            Finding(
                SEVERITY_ERROR,
                path.name,
                f"case {case_id!r} has no outcome row",
            )
        )
    return OutcomeTable(removed=removed, removal_date=removal_date)


def _parse_events(
    path: Path, case_ids: set[str], findings: list[Finding]
) -> dict[str, Timeline]:
    parsed = _read_csv_rows(path, findings)
    events_by_case: dict[str, list[CaseEvent]] = {cid: [] for cid in case_ids}
    if parsed is None:
        return {cid: Timeline(cid, ()) for cid in case_ids}
    header, rows = parsed
    if header != ["case_id", "date", "kind", "note"]:
        findings.append(
            Finding(
                SEVERITY_ERROR,
                f"{path.name}:1",
                "header must be case_id,date,kind,note",
            )
        )
        return {cid: Timeline(cid, ()) for cid in case_ids}

    for line, row in rows:
        where = f"{path.name}:{line}"
        if len(row) != 4:
            findings.append(
                Finding(SEVERITY_ERROR, where, f"expected 4 cells, got {len(row)}")
            )
            continue
        case_id = row[0].strip()
        if case_id not in case_ids:
            findings.append(
                Finding(SEVERITY_ERROR, where, f"unknown case id {case_id!r}")
            )
            continue
        try:
            date = datetime.date.fromisoformat(row[1].strip())
        except ValueError:
            findings.append(
                Finding(
                    SEVERITY_ERROR,
                    where,
                    f"date {row[1].strip()!r} is not an ISO date",
                )
            )
            continue
        kind = row[2].strip()
        if kind not in EVENT_KINDS:
            findings.append(
                Finding(SEVERITY_ERROR, where, f"unknown event kind {kind!r}")
            )
            continue
        events_by_case[case_id].append(
            CaseEvent(case_id=case_id, date=date, kind=kind, note=row[3])
        )
    return {
        cid: Timeline(cid, tuple(events)) for cid, events in events_by_case.items()
    }


def validate_corpus(
    cases_path, outcomes_path, events_path, model: Model, metas: list[FactorMeta]
) -> ValidationReport:
    """Run every corpus check and report findings without raising."""
    findings, _, _, _ = _collect_corpus(
        Path(cases_path), Path(outcomes_path), Path(events_path), model, metas
    )
    return ValidationReport(findings=tuple(findings))


def load_corpus(
    cases_path, outcomes_path, events_path, model: Model, metas: list[FactorMeta]
) -> tuple[ReferenceDataset, OutcomeTable, dict[str, Timeline]]:
    """Load and validate the corpus files; all-or-nothing.

    Any error-severity finding aborts the load: a decision-support engine
    must not serve partially valid data.
    """
    findings, cases, outcomes, timelines = _collect_corpus(
        Path(cases_path), Path(outcomes_path), Path(events_path), model, metas
    )
    report = ValidationReport(findings=tuple(findings))
    if not report.ok:
        raise CorpusValidationError(
            f"corpus validation failed with {report.error_count} errors",
            report=report,
        )
    dataset = ReferenceDataset(
        cases=tuple(cases),
        by_id={case.id: i for i, case in enumerate(cases)},
    )
    return dataset, outcomes, timelines


def _collect_corpus(
    cases_path: Path,
    outcomes_path: Path,
    events_path: Path,
    model: Model,
    metas: list[FactorMeta],
):
    findings: list[Finding] = []
    try:
        schema = build_schema(metas)
        check_schema_covers_model(schema, model)
    except SibylError as exc:
        findings.append(Finding(SEVERITY_ERROR, "factors.json", str(exc)))
        return findings, [], OutcomeTable(removed={}, removal_date={}), {}

    cases = _parse_cases(cases_path, model, schema, findings)
    case_ids = {case.id for case in cases}
    outcomes = _parse_outcomes(outcomes_path, case_ids, findings)
    timelines = _parse_events(events_path, case_ids, findings)
    return findings, cases, outcomes, timelines


_DEMO_AGE_GROUP = "AGE OF CHILD GROUP"
_DEMO_AGE_MEMBERS = (
    ("AGE_GROUP_LT_1", "CHILD IS LESS THAN 1 YEAR OLD", "UNDER 1", 0.15),
    ("AGE_GROUP_1_3", "CHILD IS BETWEEN THE AGES OF 1 AND 3", "1 TO 3", 0.20),
    ("AGE_GROUP_4_12", "CHILD IS BETWEEN THE AGES OF 4 AND 12", "4 TO 12", 0.40),
    ("AGE_GROUP_13_17", "CHILD IS BETWEEN THE AGES OF 13 AND 17", "13 TO 17", 0.25),
)
_DEMO_BINARY_POOL = (
    ("CHILD_HAS_SIBLINGS", "CHILD HAS SIBLINGS", None, "DG"),
    ("PERPETRATOR_NAMED", "A PERPETRATOR IS NAMED IN THE REFERRAL", None, "RH"),
    (
        "SUBSTANCE_CONCERN",
        "REFERRAL MENTIONS SUBSTANCE USE",
        "REFERRAL DOES NOT MENTION SUBSTANCE USE",
        "RH",
    ),
    ("DV_REPORTED", "CALLER REPORTED DOMESTIC VIOLENCE", None, "HH"),
    ("PUBLIC_BENEFITS", "FAMILY IS RECEIVING PUBLIC BENEFITS", None, "HH"),
    ("PRIOR_PLACEMENT", "CHILD HAS A PRIOR FOSTER PLACEMENT", None, "CW"),
    ("OPEN_SERVICES", "HOUSEHOLD HAS AN OPEN SERVICES CASE", None, "CW"),
    (
        "HOUSING_INSTABILITY",
        "REFERRAL MENTIONS HOUSING INSTABILITY",
        "REFERRAL DOES NOT MENTION HOUSING INSTABILITY",
        "HH",
    ),
)
_DEMO_CATEGORY_NAMES = {
    "DG": "DEMOGRAPHICS",
    "RH": "REFERRAL HISTORY",
    "CW": "CHILD WELFARE HISTORY",
    "HH": "HOUSEHOLD",
}
_DEMO_EVENT_NOTES = {
    "referral": (
        "Hotline call screened in",
        "Report from school staff",
        "Report from medical provider",
    ),
    "investigation": (
        "Home visit completed",
        "Family interview held",
        "Safety assessment completed",
    ),
    "removal": ("Court-ordered removal", "Emergency removal"),
    "services": (
        "Family preservation services opened",
        "Parenting program referral",
        "Housing assistance referral",
    ),
}


def _demo_metas(n_factors: int) -> list[FactorMeta]:
    metas = [
        FactorMeta(
            name="AGE_OF_CHILD",
            description="AGE OF CHILD IN YEARS",
            kind=KIND_NUMERIC,
            category_code="DG",
            category_name=_DEMO_CATEGORY_NAMES["DG"],
            min_value=0,
            max_value=21,
        ),
        FactorMeta(
            name="PAST_REFERRAL_COUNT",
            description="NUMBER OF PAST REFERRALS",
            kind=KIND_NUMERIC,
            category_code="RH",
            category_name=_DEMO_CATEGORY_NAMES["RH"],
            min_value=0,
            max_value=20,
        ),
    ]
    for name, description, label, _ in _DEMO_AGE_MEMBERS:
        metas.append(
            FactorMeta(
                name=name,
                description=description,
                kind=KIND_ONEHOT_MEMBER,
                category_code="DG",
                category_name=_DEMO_CATEGORY_NAMES["DG"],
                group=_DEMO_AGE_GROUP,
                member_label=label,
            )
        )
    n_binaries = n_factors - len(metas)
    for i in range(n_binaries):
        if i < len(_DEMO_BINARY_POOL):
            name, description, negated, code = _DEMO_BINARY_POOL[i]
        else:
            name = f"RISK_MARKER_{i - len(_DEMO_BINARY_POOL) + 1:02d}"
            description = f"CASE HAS RISK MARKER {i - len(_DEMO_BINARY_POOL) + 1:02d}"
            negated = None
            code = "CW"
        metas.append(
            FactorMeta(
                name=name,
                description=description,
                kind=KIND_BINARY,
                category_code=code,
                category_name=_DEMO_CATEGORY_NAMES[code],
                negated_description=negated,
            )
        )
    return metas


def _meta_payload(meta: FactorMeta) -> dict:
    entry = {
        "name": meta.name,
        "description": meta.description,
        "kind": meta.kind,
        "category_code": meta.category_code,
        "category_name": meta.category_name,
    }
    if meta.negated_description is not None:
        entry["negated_description"] = meta.negated_description
    if meta.group is not None:
        entry["group"] = meta.group
        entry["member_label"] = meta.member_label
    if meta.min_value is not None:
        entry["min_value"] = meta.min_value
    if meta.max_value is not None:
        entry["max_value"] = meta.max_value
    return entry


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buffer.getvalue(), encoding="utf-8")


def generate_demo_corpus(
    n_cases: int, n_factors: int, seed: int, out_dir
) -> dict[str, Path]:
    """Write a synthetic five-file corpus; byte-identical per argument set.

    Factors are two count-style numerics, one four-member age group, and
    Boolean risk markers for the rest, all drawn independently. Roughly a
    third of the model weights are exactly zero. Outcome labels follow a
    logistic transform of the raw output so higher scores see higher
    removal rates.
    """
    if n_cases < 20:
        raise InvalidInputError(
            f"demo corpus needs at least 20 cases for score bins, got {n_cases}"
        )
    if n_factors < 8:
        raise InvalidInputError(
            "demo corpus needs at least 8 factors (two numerics, a four-member "
            f"age group, and two Booleans), got {n_factors}"
        )
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    metas = _demo_metas(n_factors)
    names = [meta.name for meta in metas]
    n_binaries = n_factors - 6

    rng = np.random.default_rng(seed)
    drawn = rng.normal(0.0, 0.6, n_factors)
    zero_mask = rng.random(n_factors) < 0.3
    if not zero_mask.any():
        zero_mask[n_factors - 1] = True
    if zero_mask.all():
        zero_mask[0] = False
    weights = {
        name: 0.0 if masked else float(value)
        for name, value, masked in zip(names, drawn, zero_mask)
    }
    intercept = float(rng.normal(-0.5, 0.3))
    model = Model(intercept=intercept, weights=weights, outcome_name="removal_2y")

    member_probs = [p for _, _, _, p in _DEMO_AGE_MEMBERS]
    p_binary = rng.uniform(0.1, 0.6, n_binaries)
    cases = []
    for i in range(n_cases):
        age = int(rng.integers(0, 18))
        referrals = int(rng.integers(0, 9))
        member = int(rng.choice(len(_DEMO_AGE_MEMBERS), p=member_probs))
        flags = rng.random(n_binaries) < p_binary
        values = {"AGE_OF_CHILD": float(age), "PAST_REFERRAL_COUNT": float(referrals)}
        for j, (name, _, _, _) in enumerate(_DEMO_AGE_MEMBERS):
            values[name] = 1.0 if j == member else 0.0
        for j, meta in enumerate(metas[6:]):
            values[meta.name] = 1.0 if flags[j] else 0.0
        narrative = (
            f"Referral concerns a {age}-year-old child; "
            f"{referrals} prior referral(s) on record."
        )
        cases.append(
            CaseRecord(id=f"C{i + 1:05d}", values=values, narrative=narrative)
        )

    raws = np.array([predict_raw(model, case) for case in cases])
    center = float(np.median(raws))
    p_removed = 1.0 / (1.0 + np.exp(-1.5 * (raws - center)))
    removed = rng.random(n_cases) < p_removed

    base_removal = datetime.date(2024, 1, 1)
    removal_dates = {}
    for case, was_removed in zip(cases, removed):
        if was_removed:
            offset = int(rng.integers(0, 540))
            removal_dates[case.id] = base_removal + datetime.timedelta(days=offset)

    base_event = datetime.date(2023, 1, 1)
    kind_probs = [0.45, 0.25, 0.10, 0.20]
    event_rows = []
    for case, was_removed in zip(cases, removed):
        for _ in range(int(rng.integers(0, 7))):
            kind = EVENT_KINDS[int(rng.choice(len(EVENT_KINDS), p=kind_probs))]
            if kind == "removal" and not was_removed:
                kind = "investigation"
            date = base_event + datetime.timedelta(days=int(rng.integers(0, 900)))
            notes = _DEMO_EVENT_NOTES[kind]
            note = notes[int(rng.integers(0, len(notes)))]
            event_rows.append([case.id, date.isoformat(), kind, note])

    paths = {
        "model": out_dir / "model.json",
        "factors": out_dir / "factors.json",
        "cases": out_dir / "cases.csv",
        "outcomes": out_dir / "outcomes.csv",
        "events": out_dir / "events.csv",
    }
    paths["model"].write_text(serialize_model(model), encoding="utf-8")
    paths["factors"].write_text(
        json.dumps([_meta_payload(m) for m in metas], indent=2) + "\n",
        encoding="utf-8",
    )
    _write_csv(
        paths["cases"],
        ["id", *names, "narrative"],
        [
            [case.id]
            + [str(int(case.values[name])) for name in names]
            + [case.narrative]
            for case in cases
        ],
    )
    _write_csv(
        paths["outcomes"],
        ["case_id", "removed", "removal_date"],
        [
            [
                case.id,
                str(int(was_removed)),
                removal_dates[case.id].isoformat() if case.id in removal_dates else "",
            ]
            for case, was_removed in zip(cases, removed)
        ],
    )
    _write_csv(paths["events"], ["case_id", "date", "kind", "note"], event_rows)
    return paths
