"""Command-line front end: ``scan``, ``fix`` and ``compare``.

Exit codes: 0 when no file ends with exception status, 1 when some do,
2 on usage or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .emitter import analyze_tree, check_destination, fix_tree, mirror_dataset
from .fixes import FixOptions, format_change, rule_ids
from .reporting import (
    UsageError,
    build_analysis_report,
    build_structured_report,
    compare_summaries,
    render_comparison,
    render_summary,
    summarize,
)

EXIT_OK, EXIT_EXCEPTIONS, EXIT_USAGE = 0, 1, 2


def _fail(message: str) -> int:
    print(f"uvlfix: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _report_io(errors) -> None:
    for d in errors:
        print(f"uvlfix: io: {d.offending}: {d.message}", file=sys.stderr)


def cmd_scan(args) -> int:
    errors: list = []
    try:
        analyses = analyze_tree(args.root, args.tab_width, errors)
    except OSError as exc:
        return _fail(str(exc))
    summary = summarize(analyses)
    structured = args.format == "structured"
    if structured:
        report = build_structured_report(analyses, summary)
        summary_text = json.dumps(summary.to_dict(), indent=2) + "\n"
    else:
        report = build_analysis_report(analyses)
        summary_text = render_summary(summary)

    default_name = "analysis.json" if structured else "analysis.csv"
    if args.report:
        report_path = Path(args.report)
    elif args.summary:
        report_path = Path(args.summary).parent / default_name
    else:
        report_path = Path(default_name)
    try:
        report_path.write_text(report, encoding="utf-8", newline="\n")
        if args.summary:
            Path(args.summary).write_text(summary_text, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(summary_text)
        if args.plot:
            from .plotting import plot_summary

            plot_summary(summary, args.plot)
    except OSError as exc:
        return _fail(str(exc))
    _report_io(errors)
    if errors:
        return EXIT_USAGE
    return EXIT_EXCEPTIONS if summary.exceptions else EXIT_OK


def _parse_rules(text: str | None):
    if text is None:
        return None
    chosen = [r.strip() for r in text.split(",") if r.strip()]
    unknown = [r for r in chosen if r not in rule_ids()]
    if unknown:
        raise UsageError(f"unknown rule id(s): {', '.join(unknown)}; known: {', '.join(rule_ids())}")
    return frozenset(chosen)


def cmd_fix(args) -> int:
    try:
        options = FixOptions(_parse_rules(args.rules), args.tab_width)
        if not args.dry_run:
            check_destination(args.root, args.out, args.force)
        errors: list = []
        outcomes = fix_tree(args.root, options, errors)
    except (UsageError, OSError) as exc:
        return _fail(str(exc))

    log_lines = [format_change(r.relative_path, c) for r, o in outcomes for c in o.changes]
    before = summarize(o.before for _, o in outcomes)
    after = summarize(o.after for _, o in outcomes)
    if args.dry_run:
        sys.stdout.write("".join(line + "\n" for line in log_lines))
    else:
        fixes = {r.relative_path: o.fixed for r, o in outcomes if o.changed}
        try:
            emission = mirror_dataset(args.root, args.out, fixes, force=args.force)
            out = Path(args.out)
            if args.format == "structured":
                doc = [
                    {"path": r.relative_path, **c.to_dict()}
                    for r, o in outcomes for c in o.changes
                ]
                (out / "changes.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
            else:
                (out / "changes.log").write_text("".join(line + "\n" for line in log_lines), encoding="utf-8", newline="\n")
        except (UsageError, OSError) as exc:
            return _fail(str(exc))
        sys.stdout.write(emission.render())
        errors.extend(emission.errors)
    sys.stdout.write(render_comparison(compare_summaries(before, after)))
    _report_io(errors)
    if errors:
        return EXIT_USAGE
    return EXIT_EXCEPTIONS if after.exceptions else EXIT_OK


def cmd_compare(args) -> int:
    errors: list = []
    try:
        before = summarize(analyze_tree(args.before_root, args.tab_width, errors))
        after = summarize(analyze_tree(args.after_root, args.tab_width, errors))
        comparison = compare_summaries(before, after)
    except (UsageError, OSError) as exc:
        return _fail(str(exc))
    if args.format == "structured":
        sys.stdout.write(json.dumps(comparison.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(render_comparison(comparison))
    if args.plot:
        from .plotting import plot_comparison

        try:
            plot_comparison(comparison, args.plot)
        except OSError as exc:
            return _fail(str(exc))
    _report_io(errors)
    return EXIT_USAGE if errors else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uvlfix", description="Lint and fix datasets of UVL feature models.")
    parser.add_argument("--tab-width", type=int, default=4, help="spaces per indentation level when reading or fixing space indentation")
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="analyze every .uvl file under ROOT")
    scan.add_argument("root")
    scan.add_argument("--report", help="analysis report path (default: analysis.csv beside the summary)")
    scan.add_argument("--summary", help="summary path (default: standard output)")
    scan.add_argument("--format", choices=("csv", "structured"), default="csv")
    scan.add_argument("--plot", help="also render a status bar chart to this image file")
    scan.set_defaults(func=cmd_scan)

    fix = sub.add_parser("fix", help="fix ROOT into a mirrored dataset")
    fix.add_argument("root")
    fix.add_argument("--out", help="destination root for the fixed dataset")
    fix.add_argument("--rules", help=f"comma-separated rule ids to enable (default: all of {','.join(rule_ids())})")
    fix.add_argument("--dry-run", action="store_true", help="print the change log, write nothing")
    fix.add_argument("--force", action="store_true", help="write into a non-empty destination")
    fix.add_argument("--format", choices=("text", "structured"), default="text", help="change log format")
    fix.set_defaults(func=cmd_fix)

    compare = sub.add_parser("compare", help="compare summaries of two dataset roots")
    compare.add_argument("before_root")
    compare.add_argument("after_root")
    compare.add_argument("--format", choices=("text", "structured"), default="text")
    compare.add_argument("--plot", help="also render a before/after bar chart to this image file")
    compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "fix" and not args.dry_run and not args.out:
        return _fail("fix needs --out DST unless --dry-run is given")
    for attr in ("root", "before_root", "after_root"):
        path = getattr(args, attr, None)
        if path is not None and not Path(path).is_dir():
            return _fail(f"not a directory: {path}")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
