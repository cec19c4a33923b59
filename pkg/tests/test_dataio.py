"""File loading, total validation, and the deterministic demo generator."""

from __future__ import annotations

import filecmp
import json

import pytest

from sibyl.dataio import (
    SEVERITY_ERROR,
    SEVERITY_WARNING,
    Finding,
    ValidationReport,
    generate_demo_corpus,
    load_corpus,
    load_factor_metas,
    load_model_file,
    serialize_model,
    validate_corpus,
)
from sibyl.errors import (
    CorpusValidationError,
    FileFormatError,
    InvalidInputError,
)
from sibyl.model import Model, ScoreBins, fit_score_bins, predict_score
from sibyl.present import FactorMeta


class TestModelFile:
    def write(self, tmp_path, payload):
        path = tmp_path / "model.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    def test_minimal_file(self, tmp_path):
        path = self.write(
            tmp_path,
            {"intercept": 0.5, "weights": {"A": 1.0}, "outcome_name": "removal"},
        )
        model, bins = load_model_file(path)
        assert model.intercept == 0.5
        assert model.weights == {"A": 1.0}
        assert model.outcome_name == "removal"
        assert bins is None

    def test_cutpoints_honored(self, tmp_path):
        cuts = [float(j) for j in range(1, 20)]
        path = self.write(
            tmp_path,
            {
                "intercept": 0.0,
                "weights": {"A": 1.0},
                "outcome_name": "y",
                "score_cutpoints": cuts,
            },
        )
        _, bins = load_model_file(path)
        assert bins == ScoreBins(tuple(cuts))

    def test_eighteen_cutpoints_rejected(self, tmp_path):
        path = self.write(
            tmp_path,
            {
                "intercept": 0.0,
                "weights": {"A": 1.0},
                "outcome_name": "y",
                "score_cutpoints": [float(j) for j in range(18)],
            },
        )
        with pytest.raises(FileFormatError, match="18"):
            load_model_file(path)

    def test_unknown_field_rejected(self, tmp_path):
        path = self.write(
            tmp_path,
            {
                "intercept": 0.0,
                "weights": {"A": 1.0},
                "outcome_name": "y",
                "bias": 1.0,
            },
        )
        with pytest.raises(FileFormatError, match="bias"):
            load_model_file(path)

    def test_missing_field_rejected(self, tmp_path):
        path = self.write(tmp_path, {"intercept": 0.0, "weights": {"A": 1.0}})
        with pytest.raises(FileFormatError, match="outcome_name"):
            load_model_file(path)

    def test_non_finite_weight_rejected(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text(
            '{"intercept": 0.0, "weights": {"A": NaN}, "outcome_name": "y"}',
            encoding="utf-8",
        )
        with pytest.raises(FileFormatError):
            load_model_file(path)

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(FileFormatError):
            load_model_file(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(FileFormatError):
            load_model_file(tmp_path / "absent.json")

    def test_round_trip_is_canonical(self, tmp_path):
        model = Model(
            intercept=-0.25,
            weights={"B": 0.5, "A": -1.5},
            outcome_name="removal",
        )
        bins = ScoreBins(tuple(float(j) * 0.5 for j in range(1, 20)))
        path = tmp_path / "model.json"
        path.write_text(serialize_model(model, bins), encoding="utf-8")
        loaded_model, loaded_bins = load_model_file(path)
        assert loaded_model == model
        assert loaded_bins == bins
        assert serialize_model(loaded_model, loaded_bins) == path.read_text(
            encoding="utf-8"
        )

    def test_generated_file_round_trips_byte_for_byte(self, demo_dir):
        path = demo_dir / "model.json"
        model, bins = load_model_file(path)
        assert serialize_model(model, bins) == path.read_text(encoding="utf-8")


class TestFactorMetaFile:
    def write(self, tmp_path, payload):
        path = tmp_path / "factors.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    def test_valid_file(self, tmp_path):
        path = self.write(
            tmp_path,
            [
                {
                    "name": "FLAG",
                    "description": "CASE HAS FLAG",
                    "kind": "binary",
                    "category_code": "RH",
                    "category_name": "REFERRAL HISTORY",
                },
                {
                    "name": "COUNT",
                    "description": "PAST REFERRAL COUNT",
                    "kind": "numeric",
                    "min_value": 0,
                    "max_value": 20,
                },
            ],
        )
        metas = load_factor_metas(path)
        assert [m.name for m in metas] == ["FLAG", "COUNT"]
        assert metas[0].category_code == "RH"
        assert metas[1].min_value == 0.0

    def test_unknown_field_rejected(self, tmp_path):
        path = self.write(
            tmp_path,
            [{"name": "F", "description": "D", "kind": "binary", "weight": 1}],
        )
        with pytest.raises(FileFormatError, match="weight"):
            load_factor_metas(path)

    def test_missing_field_rejected(self, tmp_path):
        path = self.write(tmp_path, [{"name": "F", "kind": "binary"}])
        with pytest.raises(FileFormatError, match="description"):
            load_factor_metas(path)

    def test_bad_kind_names_entry(self, tmp_path):
        path = self.write(
            tmp_path,
            [
                {"name": "F", "description": "D", "kind": "binary"},
                {"name": "G", "description": "E", "kind": "ordinal"},
            ],
        )
        with pytest.raises(FileFormatError, match="entry 1"):
            load_factor_metas(path)

    def test_empty_list_rejected(self, tmp_path):
        path = self.write(tmp_path, [])
        with pytest.raises(FileFormatError):
            load_factor_metas(path)


CORPUS_MODEL = Model(
    intercept=0.0,
    weights={"AGE_LT_1": 0.4, "AGE_1_3": 0.1, "FLAG": 0.3, "COUNT": 0.05},
    outcome_name="removal",
)
CORPUS_METAS = [
    FactorMeta(
        name="AGE_LT_1",
        description="CHILD IS LESS THAN 1 YEAR OLD",
        kind="onehot_member",
        group="AGE OF CHILD GROUP",
        member_label="UNDER 1",
    ),
    FactorMeta(
        name="AGE_1_3",
        description="CHILD IS 1 TO 3",
        kind="onehot_member",
        group="AGE OF CHILD GROUP",
        member_label="1 TO 3",
    ),
    FactorMeta(name="FLAG", description="CASE HAS FLAG", kind="binary"),
    FactorMeta(
        name="COUNT",
        description="PAST REFERRAL COUNT",
        kind="numeric",
        min_value=0.0,
        max_value=10.0,
    ),
]

CASES_OK = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,0,1,3\nc2,0,1,0,5\n"
OUTCOMES_OK = "case_id,removed\nc1,1\nc2,0\n"
EVENTS_OK = "case_id,date,kind,note\nc1,2020-01-01,referral,first contact\n"


def write_corpus(tmp_path, cases=CASES_OK, outcomes=OUTCOMES_OK, events=EVENTS_OK):
    paths = {}
    for name, text in (
        ("cases.csv", cases),
        ("outcomes.csv", outcomes),
        ("events.csv", events),
    ):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        paths[name.split(".")[0]] = path
    return paths


def report_for(tmp_path, **overrides):
    paths = write_corpus(tmp_path, **overrides)
    return validate_corpus(
        paths["cases"], paths["outcomes"], paths["events"], CORPUS_MODEL, CORPUS_METAS
    )


class TestValidationReport:
    def test_ok_iff_no_errors(self):
        warning = Finding(SEVERITY_WARNING, "x", "m")
        error = Finding(SEVERITY_ERROR, "x", "m")
        assert ValidationReport(findings=()).ok
        assert ValidationReport(findings=(warning,)).ok
        assert not ValidationReport(findings=(warning, error)).ok

    def test_counts(self):
        report = ValidationReport(
            findings=(
                Finding(SEVERITY_ERROR, "a", "m"),
                Finding(SEVERITY_WARNING, "b", "m"),
                Finding(SEVERITY_ERROR, "c", "m"),
            )
        )
        assert report.error_count == 2
        assert report.warning_count == 1


class TestCorpusValidation:
    def test_clean_corpus(self, tmp_path):
        report = report_for(tmp_path)
        assert report.ok
        assert report.findings == ()

    def test_column_order_free(self, tmp_path):
        shuffled = "id,COUNT,FLAG,AGE_1_3,AGE_LT_1\nc1,3,1,0,1\nc2,5,0,1,0\n"
        report = report_for(tmp_path, cases=shuffled)
        assert report.ok

    def test_narrative_column_allowed(self, tmp_path):
        cases = (
            "id,AGE_LT_1,AGE_1_3,FLAG,COUNT,narrative\n"
            "c1,1,0,1,3,Initial referral.\nc2,0,1,0,5,\n"
        )
        paths = write_corpus(tmp_path, cases=cases)
        dataset, _, _ = load_corpus(
            paths["cases"],
            paths["outcomes"],
            paths["events"],
            CORPUS_MODEL,
            CORPUS_METAS,
        )
        assert dataset.cases[0].narrative == "Initial referral."
        assert dataset.cases[1].narrative == ""

    def test_two_active_members_rejected(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,1,0,3\nc2,0,1,0,5\n"
        report = report_for(tmp_path, cases=cases)
        assert not report.ok
        assert any(
            "AGE OF CHILD GROUP" in f.message and "2 active" in f.message
            for f in report.findings
        )

    def test_unknown_column_rejected(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT,EXTRA\nc1,1,0,1,3,9\n"
        report = report_for(tmp_path, cases=cases)
        assert any("EXTRA" in f.message for f in report.findings)

    def test_missing_column_rejected(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG\nc1,1,0,1\n"
        report = report_for(tmp_path, cases=cases)
        assert any("COUNT" in f.message for f in report.findings)

    def test_duplicate_case_id_located(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,0,1,3\nc1,0,1,0,5\n"
        report = report_for(
            tmp_path, cases=cases, outcomes="case_id,removed\nc1,1\n"
        )
        finding = next(f for f in report.findings if "duplicate case id" in f.message)
        assert finding.location == "cases.csv:3"

    def test_non_numeric_cell_rejected(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,0,yes,3\nc2,0,1,0,5\n"
        report = report_for(tmp_path, cases=cases)
        assert any("non-numeric" in f.message for f in report.findings)

    def test_binary_two_rejected(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,0,2,3\nc2,0,1,0,5\n"
        report = report_for(tmp_path, cases=cases)
        assert any("must be 0 or 1" in f.message for f in report.findings)

    def test_numeric_bounds_are_warnings(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,0,1,11\nc2,0,1,0,5\n"
        report = report_for(tmp_path, cases=cases)
        assert report.ok
        assert report.warning_count == 1
        assert "above stated maximum" in report.findings[0].message

    def test_outcome_for_unknown_case_rejected(self, tmp_path):
        outcomes = "case_id,removed\nc1,1\nc2,0\nghost,1\n"
        report = report_for(tmp_path, outcomes=outcomes)
        assert any("ghost" in f.message for f in report.findings)

    def test_missing_outcome_coverage_rejected(self, tmp_path):
        outcomes = "case_id,removed\nc1,1\n"
        report = report_for(tmp_path, outcomes=outcomes)
        assert any(
            "c2" in f.message and "no outcome row" in f.message
            for f in report.findings
        )

    def test_bad_removed_value_rejected(self, tmp_path):
        outcomes = "case_id,removed\nc1,2\nc2,0\n"
        report = report_for(tmp_path, outcomes=outcomes)
        assert any("removed must be 0 or 1" in f.message for f in report.findings)

    def test_bad_outcome_header_rejected(self, tmp_path):
        outcomes = "case_id,label\nc1,1\nc2,0\n"
        report = report_for(tmp_path, outcomes=outcomes)
        assert any("case_id,removed" in f.message for f in report.findings)

    def test_removal_date_parsed(self, tmp_path):
        outcomes = (
            "case_id,removed,removal_date\nc1,1,2021-06-01\nc2,0,\n"
        )
        paths = write_corpus(tmp_path, outcomes=outcomes)
        _, table, _ = load_corpus(
            paths["cases"],
            paths["outcomes"],
            paths["events"],
            CORPUS_MODEL,
            CORPUS_METAS,
        )
        assert table.removal_date["c1"].isoformat() == "2021-06-01"
        assert "c2" not in table.removal_date

    def test_bad_date_rejected(self, tmp_path):
        outcomes = "case_id,removed,removal_date\nc1,1,06/01/2021\nc2,0,\n"
        report = report_for(tmp_path, outcomes=outcomes)
        assert any("ISO date" in f.message for f in report.findings)

    def test_date_without_removal_is_warning(self, tmp_path):
        outcomes = "case_id,removed,removal_date\nc1,1,2021-06-01\nc2,0,2021-07-01\n"
        report = report_for(tmp_path, outcomes=outcomes)
        assert report.ok
        assert report.warning_count == 1

    def test_event_for_unknown_case_rejected(self, tmp_path):
        events = "case_id,date,kind,note\nghost,2020-01-01,referral,\n"
        report = report_for(tmp_path, events=events)
        assert any("ghost" in f.message for f in report.findings)

    def test_unknown_event_kind_rejected(self, tmp_path):
        events = "case_id,date,kind,note\nc1,2020-01-01,arrest,\n"
        report = report_for(tmp_path, events=events)
        assert any("arrest" in f.message for f in report.findings)

    def test_every_case_gets_a_timeline(self, tmp_path):
        paths = write_corpus(tmp_path)
        _, _, timelines = load_corpus(
            paths["cases"],
            paths["outcomes"],
            paths["events"],
            CORPUS_MODEL,
            CORPUS_METAS,
        )
        assert set(timelines) == {"c1", "c2"}
        assert timelines["c2"].events == ()
        assert len(timelines["c1"].events) == 1

    def test_multiple_errors_collected_not_raised(self, tmp_path):
        cases = (
            "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\n"
            "c1,1,1,0,3\n"
            "c2,0,1,abc,5\n"
            "c3,0,1,0,oops\n"
        )
        outcomes = "case_id,removed\nc1,1\nghost,5\n"
        report = report_for(tmp_path, cases=cases, outcomes=outcomes)
        assert not report.ok
        assert report.error_count >= 4

    def test_load_corpus_raises_with_report(self, tmp_path):
        cases = "id,AGE_LT_1,AGE_1_3,FLAG,COUNT\nc1,1,1,0,3\nc2,0,1,0,5\n"
        paths = write_corpus(tmp_path, cases=cases)
        with pytest.raises(CorpusValidationError) as excinfo:
            load_corpus(
                paths["cases"],
                paths["outcomes"],
                paths["events"],
                CORPUS_MODEL,
                CORPUS_METAS,
            )
        assert excinfo.value.report is not None
        assert not excinfo.value.report.ok

    def test_schema_gap_reported_against_metadata_file(self, tmp_path):
        paths = write_corpus(tmp_path)
        report = validate_corpus(
            paths["cases"],
            paths["outcomes"],
            paths["events"],
            CORPUS_MODEL,
            CORPUS_METAS[:-1],
        )
        assert not report.ok
        assert report.findings[0].location == "factors.json"


class TestDemoGenerator:
    def test_byte_identical_regeneration(self, tmp_path):
        first = generate_demo_corpus(40, 10, seed=3, out_dir=tmp_path / "a")
        second = generate_demo_corpus(40, 10, seed=3, out_dir=tmp_path / "b")
        for key in first:
            assert filecmp.cmp(first[key], second[key], shallow=False), key

    def test_seed_changes_output(self, tmp_path):
        first = generate_demo_corpus(40, 10, seed=3, out_dir=tmp_path / "a")
        second = generate_demo_corpus(40, 10, seed=4, out_dir=tmp_path / "b")
        assert first["cases"].read_text() != second["cases"].read_text()

    def test_too_few_cases_rejected(self, tmp_path):
        with pytest.raises(InvalidInputError):
            generate_demo_corpus(19, 10, seed=0, out_dir=tmp_path)

    def test_too_few_factors_rejected(self, tmp_path):
        with pytest.raises(InvalidInputError):
            generate_demo_corpus(40, 7, seed=0, out_dir=tmp_path)

    def test_generated_corpus_validates_cleanly(self, tmp_path):
        for seed in (0, 1, 2):
            out = tmp_path / f"s{seed}"
            paths = generate_demo_corpus(30, 9, seed=seed, out_dir=out)
            model, _ = load_model_file(paths["model"])
            metas = load_factor_metas(paths["factors"])
            report = validate_corpus(
                paths["cases"], paths["outcomes"], paths["events"], model, metas
            )
            assert report.ok, [f.message for f in report.findings]

    def test_generated_corpus_scores_end_to_end(self, demo_dir):
        model, bins = load_model_file(demo_dir / "model.json")
        metas = load_factor_metas(demo_dir / "factors.json")
        dataset, outcomes, timelines = load_corpus(
            demo_dir / "cases.csv",
            demo_dir / "outcomes.csv",
            demo_dir / "events.csv",
            model,
            metas,
        )
        assert bins is None
        bins = fit_score_bins(model, dataset)
        scores = [predict_score(model, bins, case) for case in dataset.cases]
        assert all(1 <= s <= 20 for s in scores)
        assert set(outcomes.removed) == {c.id for c in dataset.cases}
        assert set(timelines) == {c.id for c in dataset.cases}
