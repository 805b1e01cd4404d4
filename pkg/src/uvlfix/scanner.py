"""Depth-first discovery of ``.uvl`` files under a dataset root."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

from .diagnostics import EXCEPTION, IO, Diagnostic


@dataclass(frozen=True)
class ScanRecord:
    dataset: str
    relative_path: str  # POSIX separators
    absolute_path: Path

    @property
    def file(self) -> str:
        """Path inside the dataset directory."""
        parts = PurePosixPath(self.relative_path).parts
        return "/".join(parts[1:]) if len(parts) > 1 else self.relative_path


def _walk(directory: str, found: list[str], errors: list[Diagnostic]) -> None:
    try:
        with os.scandir(directory) as it:
            entries = list(it)
    except OSError as exc:
        errors.append(Diagnostic(EXCEPTION, IO, None, None, f"cannot read directory: {exc}", directory))
        return
    for entry in entries:
        # symlinks are never followed, so cyclic trees terminate
        if entry.is_symlink():
            continue
        if entry.is_dir(follow_symlinks=False):
            _walk(entry.path, found, errors)
        elif entry.is_file(follow_symlinks=False) and entry.name.lower().endswith(".uvl"):
            found.append(entry.path)


def discover(root, errors: list[Diagnostic] | None = None) -> list[ScanRecord]:
    """Return every ``.uvl`` file under ``root`` sorted by relative path bytes.

    Unreadable directories are appended to ``errors`` as io diagnostics and
    skipped. Raises FileNotFoundError / NotADirectoryError for a bad root.
    """
    root = Path(root)
    if not root.exists():
        raise FileNotFoundError(f"dataset root does not exist: {root}")
    if not root.is_dir():
        raise NotADirectoryError(f"dataset root is not a directory: {root}")
    if errors is None:
        errors = []
    found: list[str] = []
    _walk(str(root), found, errors)

    base = root.resolve().name or str(root)
    records = []
    for path in found:
        rel = PurePosixPath(*Path(os.path.relpath(path, root)).parts)
        dataset = rel.parts[0] if len(rel.parts) >= 2 else base
        records.append(ScanRecord(dataset, str(rel), Path(path).resolve()))
    records.sort(key=lambda r: os.fsencode(r.relative_path))
    return records
