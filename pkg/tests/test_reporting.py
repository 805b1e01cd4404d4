import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from uvlfix.reporting import (
    Summary,
    UsageError,
    analyze_file,
    analyze_path,
    build_analysis_report,
    build_structured_report,
    compare_summaries,
    format_percent,
    render_comparison,
    render_summary,
    summarize,
)
from uvlfix.scanner import ScanRecord
from uvlfix.source import BOM

HEADER = "dataset,file,status,severity,category,line,column,message\n"


def record(rel="ds1/a.uvl"):
    return ScanRecord(rel.split("/")[0], rel, Path("/nonexistent") / rel)


def test_clean_file_is_ok():
    a = analyze_file(record(), b"features\n\tA\n")
    assert (a.status, a.diagnostics) == ("ok", ())


def test_phone_model_analysis(phone_model_bytes):
    a = analyze_file(record(), phone_model_bytes)
    assert a.status == "exception"
    assert [(d.category, d.line) for d in a.diagnostics] == [
        ("mismatched_input", 6),
        ("extraneous_input", 8),
        ("token_recognition", 9),
        ("extraneous_input", 10),
    ]


def test_bom_only_file_is_warning():
    assert analyze_file(record(), BOM + b"features\n\tA\n").status == "warning"


def test_unreadable_file():
    a = analyze_path(record())
    assert a.status == "exception"
    assert [d.category for d in a.diagnostics] == ["io"]


def test_empty_report():
    assert build_analysis_report([]) == HEADER


def test_ok_file_row():
    report = build_analysis_report([analyze_file(record(), b"features\n\tA\n")])
    assert report == HEADER + "ds1,a.uvl,ok,,,,,\n"


def test_phone_model_report_rows(phone_model_bytes):
    a = analyze_file(record(), phone_model_bytes)
    rows = list(csv.reader(io.StringIO(build_analysis_report([a]))))
    assert len(rows) - 1 == len(a.diagnostics) == 4
    assert [r[4] for r in rows[1:]] == ["mismatched_input", "extraneous_input", "token_recognition", "extraneous_input"]


def test_fields_with_commas_and_quotes_are_quoted():
    a = analyze_file(record("ds/x.uvl"), b'features\n\tA,"B\n')
    text = build_analysis_report([a])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[1][-1] == "extraneous input ',' in feature name 'A,\"B'"
    assert "\r" not in text


def _oracle_pct(count, total):
    return str((Decimal(100) * count / total).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@pytest.mark.parametrize(
    "count, total, expected",
    [(185, 1479, "12.51"), (0, 1479, "0.00"), (25, 1479, "1.69"), (160, 185, "86.49"), (1, 8, "12.50"), (1, 3, "33.33"), (2, 3, "66.67")],
)
def test_percentages(count, total, expected):
    assert format_percent(count, total) == expected == _oracle_pct(count, total)


@given(st.integers(1, 10**6).flatmap(lambda t: st.tuples(st.integers(0, t), st.just(t))))
def test_percentage_matches_decimal_oracle(pair):
    count, total = pair
    assert format_percent(count, total) == _oracle_pct(count, total)


def test_summaries_from_reference_counts():
    s = Summary(1479, 1294, 0, 185)
    assert (s.pct_exceptions, s.pct_warnings) == ("12.51", "0.00")
    assert "exceptions: 185 (12.51%)" in render_summary(s).splitlines()
    assert "exceptions: 25 (1.69%)" in render_summary(Summary(1479, 1454, 0, 25)).splitlines()


def test_empty_summary():
    s = summarize([])
    assert (s.total, s.ok, s.warnings, s.exceptions) == (0, 0, 0, 0)
    assert render_summary(s) == (
        "total files: 0\nparsed ok: 0 (0.00%)\nwarnings: 0 (0.00%)\nexceptions: 0 (0.00%)\n"
    )


def test_summary_counts_must_add_up():
    with pytest.raises(ValueError):
        Summary(3, 1, 1, 0)


def test_summarize_conserves_counts(phone_model_bytes):
    analyses = [
        analyze_file(record("d/a.uvl"), b"features\n\tA\n"),
        analyze_file(record("d/b.uvl"), phone_model_bytes),
        analyze_file(record("d/c.uvl"), BOM + b"features\n\tA\n"),
    ]
    s = summarize(analyses)
    assert (s.total, s.ok, s.warnings, s.exceptions) == (3, 1, 1, 1)
    rows = list(csv.DictReader(io.StringIO(build_analysis_report(analyses))))
    assert len({r["file"] for r in rows if r["status"] == "exception"}) == s.exceptions
    assert build_analysis_report(analyses) == build_analysis_report(list(analyses))


def test_structured_report(phone_model_bytes):
    doc = json.loads(build_structured_report([analyze_file(record(), phone_model_bytes)]))
    assert doc["summary"]["exceptions"] == 1
    assert doc["files"][0]["file"] == "a.uvl"
    assert len(doc["files"][0]["diagnostics"]) == 4


@pytest.mark.parametrize(
    "before, after, fixed, rate",
    [(185, 25, 160, "86.49"), (10, 10, 0, "0.00"), (0, 0, 0, None)],
)
def test_compare(before, after, fixed, rate):
    c = compare_summaries(Summary(1479, 1479 - before, 0, before), Summary(1479, 1479 - after, 0, after))
    assert (c.fixed_count, c.fix_rate) == (fixed, rate)


def test_compare_rendering():
    c = compare_summaries(Summary(10, 10, 0, 0), Summary(10, 10, 0, 0))
    assert render_comparison(c).endswith("fixed: 0\nfix rate: n/a\n")


def test_compare_needs_equal_totals():
    with pytest.raises(UsageError):
        compare_summaries(Summary(2, 2, 0, 0), Summary(3, 3, 0, 0))
