"""Similar-case retrieval: standardized metric, exhaustive oracle, timelines."""

from __future__ import annotations

import datetime
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sibyl.dataio import ReferenceDataset
from sibyl.errors import (
    InsufficientReferenceError,
    InvalidInputError,
    InvalidValueError,
    SchemaMismatchError,
)
from sibyl.explain import ReferenceStats, compute_reference_stats
from sibyl.model import CaseRecord, Model
from sibyl.neighbors import (
    DEFAULT_K,
    EVENT_KINDS,
    MAX_K,
    CaseEvent,
    Timeline,
    assemble_timelines,
    build_standardizer,
    distance,
    find_similar,
)


def make_dataset(rows, ids=None):
    cases = tuple(
        CaseRecord(id=ids[i] if ids else f"r{i:04d}", values=dict(row))
        for i, row in enumerate(rows)
    )
    return ReferenceDataset(cases=cases, by_id={c.id: i for i, c in enumerate(cases)})


TOY_STATS = ReferenceStats(
    means={"X": 0.0, "Y": 10.0}, stds={"X": 2.0, "Y": 0.5}, count=50
)


def toy_case(case_id, x, y):
    return CaseRecord(id=case_id, values={"X": x, "Y": y})


def day(text):
    return datetime.date.fromisoformat(text)


class TestCaseEvent:
    def test_all_kinds_accepted(self):
        for kind in EVENT_KINDS:
            CaseEvent(case_id="c1", date=day("2020-01-01"), kind=kind)
        assert set(EVENT_KINDS) == {
            "referral",
            "investigation",
            "removal",
            "services",
        }

    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidValueError):
            CaseEvent(case_id="c1", date=day("2020-01-01"), kind="arrest")


class TestTimeline:
    def test_events_sorted_by_date(self):
        events = (
            CaseEvent("c1", day("2021-05-01"), "removal"),
            CaseEvent("c1", day("2019-02-01"), "referral"),
            CaseEvent("c1", day("2020-03-15"), "investigation"),
        )
        timeline = Timeline(case_id="c1", events=events)
        assert [e.date.isoformat() for e in timeline.events] == [
            "2019-02-01",
            "2020-03-15",
            "2021-05-01",
        ]


class TestBuildStandardizer:
    def test_binary_column(self):
        dataset = make_dataset([{"F": 0.0}, {"F": 1.0}])
        stats = build_standardizer(dataset)
        assert stats.means["F"] == pytest.approx(0.5)
        assert stats.stds["F"] == pytest.approx(0.5)
        assert stats.count == 2

    def test_constant_column(self):
        stats = build_standardizer(make_dataset([{"F": 4.0}] * 6))
        assert stats.stds["F"] == 0.0

    def test_empty_reference_rejected(self):
        with pytest.raises(InsufficientReferenceError):
            build_standardizer(make_dataset([]))

    def test_matches_contribution_baseline_stats(self):
        rng = np.random.default_rng(6)
        rows = [
            {"A": float(rng.normal()), "B": float(rng.normal())} for _ in range(40)
        ]
        dataset = make_dataset(rows)
        model = Model(intercept=0.0, weights={"A": 1.0, "B": 1.0}, outcome_name="y")
        ours = build_standardizer(dataset)
        theirs = compute_reference_stats(model, dataset)
        assert isinstance(ours, ReferenceStats)
        for name in ("A", "B"):
            assert ours.means[name] == pytest.approx(theirs.means[name], abs=1e-12)
            assert ours.stds[name] == pytest.approx(theirs.stds[name], abs=1e-12)


class TestDistance:
    def test_identity(self):
        a = toy_case("a", 1.5, 11.0)
        assert distance(a, a, TOY_STATS) == 0.0

    def test_symmetry(self):
        a = toy_case("a", 1.5, 11.0)
        b = toy_case("b", -0.5, 9.5)
        assert distance(a, b, TOY_STATS) == distance(b, a, TOY_STATS)

    def test_one_sigma_gap_is_unit_distance(self):
        a = toy_case("a", 0.0, 10.0)
        b = toy_case("b", 2.0, 10.0)
        assert distance(a, b, TOY_STATS) == pytest.approx(1.0, abs=1e-12)
        c = toy_case("c", 0.0, 10.5)
        assert distance(a, c, TOY_STATS) == pytest.approx(1.0, abs=1e-12)

    def test_two_unit_gaps_give_root_two(self):
        a = toy_case("a", 0.0, 10.0)
        b = toy_case("b", 2.0, 10.5)
        assert distance(a, b, TOY_STATS) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_zero_spread_column_contributes_nothing(self):
        stats = ReferenceStats(
            means={"X": 0.0, "K": 5.0}, stds={"X": 1.0, "K": 0.0}, count=10
        )
        a = CaseRecord(id="a", values={"X": 1.0, "K": 5.0})
        b = CaseRecord(id="b", values={"X": 1.0, "K": 99.0})
        assert distance(a, b, stats) == 0.0

    def test_schema_mismatch_rejected(self):
        a = toy_case("a", 0.0, 10.0)
        missing = CaseRecord(id="b", values={"X": 1.0})
        extra = CaseRecord(id="c", values={"X": 1.0, "Y": 9.0, "Z": 1.0})
        with pytest.raises(SchemaMismatchError):
            distance(a, missing, TOY_STATS)
        with pytest.raises(SchemaMismatchError):
            distance(a, extra, TOY_STATS)

    coords = st.tuples(
        st.floats(min_value=-50, max_value=50),
        st.floats(min_value=-50, max_value=50),
    )

    @given(coords, coords, coords)
    @settings(max_examples=80, deadline=None)
    def test_metric_properties(self, pa, pb, pc):
        a = toy_case("a", *pa)
        b = toy_case("b", *pb)
        c = toy_case("c", *pc)
        ab = distance(a, b, TOY_STATS)
        ba = distance(b, a, TOY_STATS)
        ac = distance(a, c, TOY_STATS)
        cb = distance(c, b, TOY_STATS)
        assert ab >= 0.0
        assert ab == ba
        assert ab <= ac + cb + 1e-9

    # Tenth-sized grid steps: a tiny coordinate gap can square to below the
    # smallest positive float and hit zero, which says nothing about the
    # metric itself.
    grid = st.tuples(
        st.integers(min_value=-500, max_value=500).map(lambda v: v / 10),
        st.integers(min_value=-500, max_value=500).map(lambda v: v / 10),
    )

    @given(grid, grid)
    @settings(max_examples=60, deadline=None)
    def test_indiscernibles(self, pa, pb):
        a = toy_case("a", *pa)
        b = toy_case("b", *pb)
        if pa == pb:
            assert distance(a, b, TOY_STATS) == 0.0
        else:
            assert distance(a, b, TOY_STATS) > 0.0


class TestFindSimilar:
    def grid_corpus(self, n=100, seed=4):
        rng = np.random.default_rng(seed)
        rows = [
            {"X": float(rng.normal(0, 2)), "Y": float(rng.normal(10, 0.5))}
            for _ in range(n)
        ]
        return make_dataset(rows)

    def test_cardinality(self):
        dataset = self.grid_corpus(100)
        stats = build_standardizer(dataset)
        result = find_similar(toy_case("q", 0.0, 10.0), dataset, stats, k=3)
        assert len(result.neighbors) == 3
        assert result.truncated is False

    def test_default_k(self):
        dataset = self.grid_corpus(50)
        stats = build_standardizer(dataset)
        result = find_similar(toy_case("q", 0.0, 10.0), dataset, stats)
        assert len(result.neighbors) == DEFAULT_K == 3
        assert MAX_K == 10

    def test_duplicate_case_ranks_first_at_zero(self):
        dataset = self.grid_corpus(40)
        stats = build_standardizer(dataset)
        target = dataset.cases[7]
        query = CaseRecord(id="query", values=dict(target.values))
        result = find_similar(query, dataset, stats, k=3)
        first_id, first_dist = result.neighbors[0]
        assert first_id == target.id
        assert first_dist == 0.0

    def test_query_id_excluded(self):
        dataset = self.grid_corpus(40)
        stats = build_standardizer(dataset)
        member = dataset.cases[3]
        result = find_similar(member, dataset, stats, k=10)
        assert member.id not in [cid for cid, _ in result.neighbors]

    def test_distance_ties_break_on_id(self):
        rows = [{"X": 1.0, "Y": 10.0}, {"X": -1.0, "Y": 10.0}, {"X": 0.0, "Y": 10.0}]
        dataset = make_dataset(rows, ids=["zz", "aa", "mm"])
        stats = TOY_STATS
        result = find_similar(toy_case("q", 0.0, 10.0), dataset, stats, k=3)
        assert result.neighbors[0][0] == "mm"
        assert [cid for cid, _ in result.neighbors[1:]] == ["aa", "zz"]

    def test_distances_non_decreasing(self):
        dataset = self.grid_corpus(80)
        stats = build_standardizer(dataset)
        result = find_similar(toy_case("q", 1.0, 9.8), dataset, stats, k=10)
        dists = [d for _, d in result.neighbors]
        assert dists == sorted(dists)

    def test_truncation_flag(self):
        dataset = self.grid_corpus(5)
        stats = build_standardizer(dataset)
        result = find_similar(toy_case("q", 0.0, 10.0), dataset, stats, k=50)
        assert len(result.neighbors) == 5
        assert result.truncated is True

    def test_truncation_when_only_self_present(self):
        dataset = make_dataset([{"X": 0.0, "Y": 10.0}], ids=["solo"])
        stats = TOY_STATS
        query = CaseRecord(id="solo", values={"X": 0.0, "Y": 10.0})
        result = find_similar(query, dataset, stats, k=3)
        assert result.neighbors == ()
        assert result.truncated is True

    def test_k_below_one_rejected(self):
        dataset = self.grid_corpus(10)
        with pytest.raises(InvalidInputError):
            find_similar(
                toy_case("q", 0.0, 10.0), dataset, build_standardizer(dataset), k=0
            )

    def test_empty_reference_rejected(self):
        with pytest.raises(InsufficientReferenceError):
            find_similar(toy_case("q", 0.0, 10.0), make_dataset([]), TOY_STATS, k=3)

    def test_matches_exhaustive_scan_oracle(self):
        dataset = self.grid_corpus(200, seed=12)
        stats = build_standardizer(dataset)
        rng = np.random.default_rng(77)
        for _ in range(20):
            query = toy_case(
                "query", float(rng.normal(0, 2)), float(rng.normal(10, 0.5))
            )
            ranked = sorted(
                (
                    (distance(query, c, stats), c.id)
                    for c in dataset.cases
                    if c.id != query.id
                ),
            )
            expected = tuple((cid, d) for d, cid in ranked[:5])
            result = find_similar(query, dataset, stats, k=5)
            assert [cid for cid, _ in result.neighbors] == [
                cid for cid, _ in expected
            ]
            for (_, got), (_, want) in zip(result.neighbors, expected):
                assert got == pytest.approx(want, abs=1e-9)


class TestAssembleTimelines:
    def timeline(self, case_id, *dates, kind="referral"):
        return Timeline(
            case_id=case_id,
            events=tuple(CaseEvent(case_id, day(d), kind) for d in dates),
        )

    def test_single_case_axis_is_event_span(self):
        current = self.timeline("c1", "2015-01-01", "2016-09-01", "2018-06-01")
        bundle = assemble_timelines(current, [])
        assert bundle.axis_start == day("2015-01-01")
        assert bundle.axis_end == day("2018-06-01")
        assert bundle.empty is False

    def test_neighbor_extends_axis(self):
        current = self.timeline("c1", "2016-01-01", "2017-01-01")
        earlier = self.timeline("n1", "2014-05-01")
        later = self.timeline("n2", "2019-12-31")
        bundle = assemble_timelines(current, [earlier, later])
        assert bundle.axis_start == day("2014-05-01")
        assert bundle.axis_end == day("2019-12-31")

    def test_current_row_first_then_rank_order(self):
        current = self.timeline("c1", "2016-01-01")
        n1 = self.timeline("n1", "2016-02-01")
        n2 = self.timeline("n2", "2016-03-01")
        bundle = assemble_timelines(current, [n2, n1])
        assert [r.case_id for r in bundle.rows] == ["c1", "n2", "n1"]
        assert [r.is_current for r in bundle.rows] == [True, False, False]

    def test_eventless_row_kept_axis_unaffected(self):
        current = self.timeline("c1", "2016-01-01", "2017-06-01")
        bare = Timeline(case_id="n1", events=())
        bundle = assemble_timelines(current, [bare])
        assert bundle.axis_start == day("2016-01-01")
        assert bundle.axis_end == day("2017-06-01")
        row = bundle.rows[1]
        assert row.case_id == "n1"
        assert row.events == ()

    def test_all_eventless_flagged_empty(self):
        bundle = assemble_timelines(
            Timeline(case_id="c1", events=()),
            [Timeline(case_id="n1", events=())],
        )
        assert bundle.axis_start is None
        assert bundle.axis_end is None
        assert bundle.empty is True
        assert len(bundle.rows) == 2
