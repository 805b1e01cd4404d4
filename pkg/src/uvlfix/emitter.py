"""Whole-tree pipelines: analyze, fix, mirror, and before/after comparison."""

from __future__ import annotations

import os
import shutil
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import EXCEPTION, IO, Diagnostic
from .fixes import FixOptions, FixOutcome, fix_file
from .reporting import Comparison, FileAnalysis, Summary, UsageError, analyze_path, compare_summaries, summarize
from .scanner import ScanRecord, discover


def analyze_tree(root, tab_width: int = 4, errors: list | None = None) -> list[FileAnalysis]:
    return [analyze_path(r, tab_width) for r in discover(root, errors)]


def fix_tree(root, options: FixOptions | None = None, errors: list | None = None) -> list[tuple[ScanRecord, FixOutcome]]:
    outcomes = []
    for record in discover(root, errors):
        try:
            raw = record.absolute_path.read_bytes()
        except OSError as exc:
            if errors is not None:
                errors.append(Diagnostic(EXCEPTION, IO, None, None, f"cannot read file: {exc}", record.relative_path))
            continue
        outcomes.append((record, fix_file(record, raw, options)))
    return outcomes


@dataclass
class EmissionReport:
    copied: list = field(default_factory=list)
    replaced: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def render(self) -> str:
        lines = [f"copied: {len(self.copied)}", f"replaced: {len(self.replaced)}"]
        lines += [f"replaced {p}" for p in self.replaced]
        lines += [f"error {d.offending}: {d.message}" for d in self.errors]
        return "\n".join(lines) + "\n"


def _is_within(path: Path, parent: Path) -> bool:
    try:
        path.relative_to(parent)
    except ValueError:
        return False
    return True


def check_destination(src_root, dst_root, force: bool = False) -> None:
    src = Path(src_root).resolve()
    dst = Path(dst_root).resolve()
    if _is_within(dst, src):
        raise UsageError(f"destination {dst} lies inside the source tree {src}")
    if dst.exists() and (not dst.is_dir() or any(dst.iterdir())) and not force:
        raise UsageError(f"destination {dst} is not empty (use force to overwrite)")


def mirror_dataset(src_root, dst_root, fixes: dict, force: bool = False) -> EmissionReport:
    """Copy ``src_root`` to ``dst_root`` byte for byte, substituting ``fixes``.

    ``fixes`` maps POSIX relative paths to replacement bytes. Per-file copy
    failures are collected in the report and the copy continues.
    """
    check_destination(src_root, dst_root, force)
    src = Path(src_root)
    dst = Path(dst_root)
    dst.mkdir(parents=True, exist_ok=True)
    report = EmissionReport()
    for dirpath, dirnames, filenames in os.walk(src, followlinks=False):
        dirnames.sort()
        rel_dir = Path(dirpath).relative_to(src)
        (dst / rel_dir).mkdir(parents=True, exist_ok=True)
        names = sorted(filenames) + [d for d in dirnames if os.path.islink(os.path.join(dirpath, d))]
        for name in sorted(names):
            rel = (rel_dir / name).as_posix()
            source = Path(dirpath) / name
            target = dst / rel_dir / name
            try:
                if rel in fixes and not source.is_symlink():
                    target.write_bytes(fixes[rel])
                    report.replaced.append(rel)
                elif source.is_symlink():
                    if target.is_symlink() or target.exists():
                        target.unlink()
                    os.symlink(os.readlink(source), target)
                    report.copied.append(rel)
                else:
                    shutil.copy2(source, target)
                    report.copied.append(rel)
            except OSError as exc:
                report.errors.append(Diagnostic(EXCEPTION, IO, None, None, str(exc), rel))
    return report


def before_after(src_root, dst_root, tab_width: int = 4) -> tuple[Summary, Summary, Comparison]:
    before = summarize(analyze_tree(src_root, tab_width))
    after = summarize(analyze_tree(dst_root, tab_width))
    return before, after, compare_summaries(before, after)
