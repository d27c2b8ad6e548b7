"""Canonical CSV serialization and row assembly."""

import io
from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from methodminer.attribution import HistoryMetrics, MethodKey
from methodminer.cparse import CodeMetrics, MethodSpan
from methodminer.dataset import (
    CSV_HEADER,
    FeatureRow,
    MethodSnapshot,
    assemble,
    format_metric,
    read_csv,
    summarize,
    summary_csv,
    summary_text,
    write_csv,
)
from methodminer.errors import KeyMismatch
from methodminer.human_error import HEMetrics


def snapshot(path="a.c", name="f", start=1, end=4, c=(4, 3, 1, 0)):
    return MethodSnapshot(
        span=MethodSpan(file_path=path, name=name, start_line=start, end_line=end),
        metrics=CodeMetrics(*c),
    )


def simple_row(**overrides):
    base = dict(
        project="proj",
        file_path="a.c",
        method_name="f",
        start_line=1,
        end_line=4,
        history=HistoryMetrics(
            h1_authors=1, h2_added_loc=4, h3_changed_loc=0, h4_num_changes=1,
            h5_added_per_loc=4 / 3, h6_changed_per_change=0.0,
            h7_added_per_deleted=4.0, h8_deleted_loc=0, h9_deleted_per_loc=0.0,
        ),
        code=CodeMetrics(4, 3, 1, 0),
        he=HEMetrics(e1_memory_decay=0.0, e2_alertness=86.5),
        label=0,
    )
    base.update(overrides)
    return FeatureRow(**base)


class TestFormatMetric:
    def test_integers_bare(self):
        assert format_metric(7) == "7"
        assert format_metric(0) == "0"

    def test_six_fractional_digits_trimmed(self):
        assert format_metric(1 / 3) == "0.333333"
        assert format_metric(2 / 3) == "0.666667"
        assert format_metric(1.25) == "1.25"
        assert format_metric(5.0) == "5.0"
        assert format_metric(0.0) == "0.0"

    def test_no_exponent_notation(self):
        assert "e" not in format_metric(1234567.125)
        assert format_metric(0.0000004) == "0.0"


class TestWriteCsv:
    def test_empty_dataset_is_header_plus_lf(self):
        buf = io.StringIO()
        n = write_csv([], buf)
        assert buf.getvalue() == CSV_HEADER + "\n"
        assert n == len((CSV_HEADER + "\n").encode())

    def test_single_row_golden(self):
        buf = io.StringIO()
        write_csv([simple_row()], buf)
        expected = (
            CSV_HEADER + "\n"
            "proj,a.c,f,1,4,1,4,0,1,1.333333,0.0,4.0,0,0.0,4,3,1,0,0.0,86.5,0\n"
        )
        assert buf.getvalue() == expected

    def test_byte_count_matches(self):
        buf = io.StringIO()
        n = write_csv([simple_row()], buf)
        assert n == len(buf.getvalue().encode("utf-8"))

    def test_minimal_quoting(self):
        row = simple_row(file_path='dir/with,comma.c', method_name='quo"te')
        buf = io.StringIO()
        write_csv([row], buf)
        line = buf.getvalue().splitlines()[1]
        assert '"dir/with,comma.c"' in line
        assert '"quo""te"' in line

    def test_round_trip(self):
        rows = [
            simple_row(),
            simple_row(method_name="g", start_line=6, end_line=9, label=1,
                       he=HEMetrics(23.83562, 149.5)),
        ]
        buf = io.StringIO()
        write_csv(rows, buf)
        buf.seek(0)
        back = read_csv(buf)
        assert len(back) == 2
        for orig, rt in zip(rows, back):
            assert rt.method_name == orig.method_name
            assert rt.label == orig.label
            for a, b in zip(orig.feature_values(), rt.feature_values()):
                assert b == pytest.approx(a, abs=5e-7)  # serialized precision

    @given(
        st.floats(min_value=0, max_value=1e6),
        st.floats(min_value=0, max_value=1e4),
    )
    def test_round_trip_of_float_fields(self, e1, e2):
        row = simple_row(he=HEMetrics(e1, e2))
        buf = io.StringIO()
        write_csv([row], buf)
        buf.seek(0)
        back = read_csv(buf)[0]
        assert back.he.e1_memory_decay == pytest.approx(e1, abs=5e-7)
        assert back.he.e2_alertness == pytest.approx(e2, abs=5e-7)


K1 = MethodKey("b.c", "g")
K2 = MethodKey("a.c", "f")
K3 = MethodKey("a.c", "a")


class TestAssemble:
    def test_empty_inputs(self):
        assert assemble({}, {}, {}, {}, "p") == []

    def test_zero_fill_for_untouched_methods(self):
        snaps = {K2: snapshot()}
        rows = assemble({}, snaps, {}, {K2: 0}, "p")
        assert len(rows) == 1
        assert rows[0].history == HistoryMetrics()
        assert rows[0].he == HEMetrics()
        assert rows[0].label == 0

    def test_sorted_by_path_then_line_then_name(self):
        snaps = {
            K1: snapshot(path="b.c", name="g"),
            K2: snapshot(path="a.c", name="f", start=10, end=12),
            K3: snapshot(path="a.c", name="a", start=1, end=2),
        }
        rows = assemble({}, snaps, {}, {k: 0 for k in snaps}, "p")
        assert [(r.file_path, r.start_line) for r in rows] == [
            ("a.c", 1), ("a.c", 10), ("b.c", 1),
        ]

    def test_label_for_unknown_method_raises(self):
        with pytest.raises(KeyMismatch):
            assemble({}, {K2: snapshot()}, {}, {K1: 1}, "p")

    def test_history_for_unknown_method_raises(self):
        with pytest.raises(KeyMismatch):
            assemble({K1: HistoryMetrics()}, {K2: snapshot()}, {}, {}, "p")

    def test_all_features_finite_and_nonnegative(self):
        snaps = {K2: snapshot()}
        rows = assemble({}, snaps, {K2: HEMetrics(12.5, 86.5)}, {K2: 1}, "p")
        values = rows[0].feature_values()
        assert len(values) == 15
        assert all(v >= 0 for v in values)


class TestSummary:
    def test_empty_window(self):
        s = summarize([], commits=0, project="p", start_date=date(2020, 1, 1))
        assert (s.commits, s.files, s.methods, s.defective_methods, s.loc) == (0, 0, 0, 0, 0)
        assert s.defective_pct == 0.0

    def test_counts(self):
        rows = [
            simple_row(),
            simple_row(method_name="g", label=1),
            simple_row(file_path="b.c", method_name="h", label=1),
        ]
        s = summarize(rows, commits=9, project="p", start_date=date(2021, 1, 6))
        assert s.files == 2
        assert s.methods == 3
        assert s.defective_methods == 2
        assert s.loc == 9
        assert s.defective_pct == pytest.approx(200 / 3)

    def test_renderings(self):
        s = summarize([simple_row(label=1)], commits=4, project="p", start_date=date(2021, 1, 6))
        text = summary_text(s)
        assert "defective methods  1 (100.0%)" in text
        csv_text = summary_csv(s)
        assert csv_text.splitlines()[1] == "p,2021-01-06,4,1,1,1,3"
