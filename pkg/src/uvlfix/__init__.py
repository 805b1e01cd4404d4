"""Corpus linter and pattern-based fixer for UVL feature-model datasets."""

from .diagnostics import Diagnostic
from .fixes import ChangeRecord, FixOptions, FixRule, apply_rules, builtin_rules, fix_file, sanitize_identifier
from .model import FeatureModel, serialize_model
from .parser import classify_parse_failure, parse_model, parse_text
from .reporting import FileAnalysis, Summary, analyze_file, analyze_path, build_analysis_report, compare_summaries, render_summary, summarize
from .scanner import ScanRecord, discover
from .source import SourceText, decode_bytes

__version__ = "0.1.0"

__all__ = [
    "ChangeRecord",
    "Diagnostic",
    "FeatureModel",
    "FileAnalysis",
    "FixOptions",
    "FixRule",
    "ScanRecord",
    "SourceText",
    "Summary",
    "analyze_file",
    "analyze_path",
    "apply_rules",
    "build_analysis_report",
    "builtin_rules",
    "classify_parse_failure",
    "compare_summaries",
    "decode_bytes",
    "discover",
    "fix_file",
    "parse_model",
    "parse_text",
    "render_summary",
    "sanitize_identifier",
    "serialize_model",
    "summarize",
]
