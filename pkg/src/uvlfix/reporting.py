"""Per-file analysis, the CSV report, and corpus summaries."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .diagnostics import EXCEPTION, IO, WARNING, Diagnostic, sort_diagnostics
from .model import FeatureModel
from .parser import classify_parse_failure, parse_model
from .scanner import ScanRecord
from .source import decode_bytes

OK = "ok"
STATUSES = (OK, WARNING, EXCEPTION)
REPORT_HEADER = ("dataset", "file", "status", "severity", "category", "line", "column", "message")


class UsageError(ValueError):
    """Caller passed inconsistent arguments (maps to CLI exit code 2)."""


@dataclass(frozen=True)
class FileAnalysis:
    record: ScanRecord
    status: str
    diagnostics: tuple[Diagnostic, ...]
    model: FeatureModel | None = None

    def to_dict(self) -> dict:
        return {
            "dataset": self.record.dataset,
            "file": self.record.file,
            "path": self.record.relative_path,
            "status": self.status,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


def status_of(diagnostics) -> str:
    severities = {d.severity for d in diagnostics}
    if EXCEPTION in severities:
        return EXCEPTION
    # any remaining finding, error or warning, leaves the model buildable
    return WARNING if severities else OK


def analyze_file(record: ScanRecord, raw: bytes, tab_width: int = 4) -> FileAnalysis:
    model, diags = parse_model(decode_bytes(raw), tab_width)
    diags = tuple(sort_diagnostics(classify_parse_failure(d) for d in diags))
    return FileAnalysis(record, status_of(diags), diags, model)


def analyze_path(record: ScanRecord, tab_width: int = 4) -> FileAnalysis:
    try:
        raw = record.absolute_path.read_bytes()
    except OSError as exc:
        diag = Diagnostic(EXCEPTION, IO, None, None, f"cannot read file: {exc.strerror or exc}", record.relative_path)
        return FileAnalysis(record, EXCEPTION, (diag,))
    return analyze_file(record, raw, tab_width)


def build_analysis_report(analyses) -> str:
    """CSV report, one row per diagnostic and one bare row per clean file."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for a in analyses:
        head = (a.record.dataset, a.record.file, a.status)
        if not a.diagnostics:
            writer.writerow(head + ("",) * 5)
        for d in a.diagnostics:
            writer.writerow(head + (
                d.severity,
                d.category,
                "" if d.line is None else d.line,
                "" if d.column is None else d.column,
                d.message,
            ))
    return buf.getvalue()


def format_percent(count: int, total: int) -> str:
    """``100 * count / total`` rounded half-up to two decimals, exactly."""
    if total == 0:
        return "0.00"
    hundredths = (2 * 10000 * count + total) // (2 * total)
    return f"{hundredths // 100}.{hundredths % 100:02d}"


@dataclass(frozen=True)
class Summary:
    total: int
    ok: int
    warnings: int
    exceptions: int

    def __post_init__(self) -> None:
        if self.ok + self.warnings + self.exceptions != self.total:
            raise ValueError("status counts do not add up to total")

    @property
    def pct_ok(self) -> str:
        return format_percent(self.ok, self.total)

    @property
    def pct_warnings(self) -> str:
        return format_percent(self.warnings, self.total)

    @property
    def pct_exceptions(self) -> str:
        return format_percent(self.exceptions, self.total)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "ok": self.ok,
            "warnings": self.warnings,
            "exceptions": self.exceptions,
            "pct_ok": self.pct_ok,
            "pct_warnings": self.pct_warnings,
            "pct_exceptions": self.pct_exceptions,
        }


def summarize(analyses) -> Summary:
    counts = {s: 0 for s in STATUSES}
    for a in analyses:
        counts[a.status] += 1
    return Summary(sum(counts.values()), counts[OK], counts[WARNING], counts[EXCEPTION])


def render_summary(s: Summary) -> str:
    return (
        f"total files: {s.total}\n"
        f"parsed ok: {s.ok} ({s.pct_ok}%)\n"
        f"warnings: {s.warnings} ({s.pct_warnings}%)\n"
        f"exceptions: {s.exceptions} ({s.pct_exceptions}%)\n"
    )


@dataclass(frozen=True)
class Comparison:
    before: Summary
    after: Summary
    fixed_count: int
    fix_rate: str | None

    def to_dict(self) -> dict:
        return {
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
            "fixed_count": self.fixed_count,
            "fix_rate": self.fix_rate,
        }


def compare_summaries(before: Summary, after: Summary) -> Comparison:
    if before.total != after.total:
        raise UsageError(f"cannot compare corpora of {before.total} and {after.total} files")
    fixed = before.exceptions - after.exceptions
    rate = format_percent(fixed, before.exceptions) if before.exceptions else None
    return Comparison(before, after, fixed, rate)


def render_comparison(c: Comparison) -> str:
    rate = "n/a" if c.fix_rate is None else f"{c.fix_rate}%"
    return (
        "before:\n" + _indent(render_summary(c.before))
        + "after:\n" + _indent(render_summary(c.after))
        + f"fixed: {c.fixed_count}\n"
        + f"fix rate: {rate}\n"
    )


def _indent(text: str) -> str:
    return "".join("  " + line + "\n" for line in text.splitlines())


def build_structured_report(analyses, summary: Summary | None = None) -> str:
    """JSON document: one object per file plus one for the summary."""
    doc = {"files": [a.to_dict() for a in analyses]}
    doc["summary"] = (summary or summarize(analyses)).to_dict()
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
