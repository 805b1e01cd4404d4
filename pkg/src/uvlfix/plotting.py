"""Bar charts of corpus status counts, written next to the text reports."""

from __future__ import annotations

from matplotlib.figure import Figure

from .reporting import Comparison, Summary

_LABELS = ("parsed ok", "warnings", "exceptions")
_COLORS = ("#4c9a5e", "#e0a526", "#c44e52")


def _counts(s: Summary) -> tuple[int, int, int]:
    return s.ok, s.warnings, s.exceptions


def _pcts(s: Summary) -> tuple[str, str, str]:
    return s.pct_ok, s.pct_warnings, s.pct_exceptions


def plot_summary(summary: Summary, path, title: str = "UVL parse status") -> None:
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    bars = ax.bar(_LABELS, _counts(summary), color=_COLORS)
    for bar, pct in zip(bars, _pcts(summary)):
        ax.annotate(f"{pct}%", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=9)
    ax.set_ylabel("files")
    ax.set_title(f"{title} ({summary.total} files)")
    fig.tight_layout()
    fig.savefig(path)


def plot_comparison(comparison: Comparison, path) -> None:
    fig = Figure(figsize=(7, 4))
    ax = fig.add_subplot()
    width = 0.38
    xs = range(len(_LABELS))
    ax.bar([x - width / 2 for x in xs], _counts(comparison.before), width, label="before", color="#8c8c8c")
    ax.bar([x + width / 2 for x in xs], _counts(comparison.after), width, label="after", color="#4c72b0")
    ax.set_xticks(list(xs), _LABELS)
    ax.set_ylabel("files")
    rate = "n/a" if comparison.fix_rate is None else f"{comparison.fix_rate}%"
    ax.set_title(f"before vs after fixing (fix rate {rate})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
