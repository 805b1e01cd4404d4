"""Pattern-based correction of the common UVL defect classes.

Each rule targets a set of diagnostic categories and only runs on a file whose
analysis contains one of them. Encoding normalization is file-scoped and runs
on every file that is not already clean.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .diagnostics import (
    ENCODING,
    EXTRANEOUS_INPUT,
    INDENTATION,
    MISMATCHED_INPUT,
    TAB_ON_BLANK_LINE,
    TOKEN_RECOGNITION,
)
from .lexer import IDENTIFIER, flagged_blank_lines, indent_level, is_blank, leading_whitespace, split_feature_line
from .model import GROUP_KINDS
from .reporting import OK, FileAnalysis, analyze_file
from .scanner import ScanRecord
from .source import BOM, SourceText, decode_bytes

RULE_ENC = "RULE-ENC"
RULE_TABBLANK = "RULE-TABBLANK"
RULE_BLANK = "RULE-BLANK"
RULE_INDENT = "RULE-INDENT"
RULE_IDENT = "RULE-IDENT"
RULE_PROPAGATE = "RULE-PROPAGATE"


class UnfixableName(ValueError):
    pass


@dataclass(frozen=True)
class FixRule:
    id: str
    categories: frozenset
    scope: str  # file | line | name
    description: str


@dataclass(frozen=True)
class ChangeRecord:
    """One edit against the decoded source.

    ``line`` is the original 1-based line, or None for file-level encoding
    changes. A deletion has ``after == ""`` and ``before`` ending in a newline.
    """

    rule_id: str
    line: int | None
    before: str
    after: str

    def __post_init__(self) -> None:
        if self.before == self.after:
            raise ValueError("change record without a change")

    @property
    def is_deletion(self) -> bool:
        return self.after == "" and self.before.endswith("\n")

    def to_dict(self) -> dict:
        return {"rule_id": self.rule_id, "line": self.line, "before": self.before, "after": self.after}


def builtin_rules() -> tuple[FixRule, ...]:
    """The rule registry, in application order."""
    return (
        FixRule(RULE_ENC, frozenset({ENCODING}), "file",
                "strip byte-order mark, transcode to UTF-8, LF line ends, single final newline"),
        FixRule(RULE_TABBLANK, frozenset({TAB_ON_BLANK_LINE}), "line",
                "delete lines holding only tabs or spaces"),
        FixRule(RULE_BLANK, frozenset({MISMATCHED_INPUT}), "line",
                "delete blank lines inside a block"),
        FixRule(RULE_INDENT, frozenset({INDENTATION}), "line",
                "convert leading space runs to tabs"),
        FixRule(RULE_IDENT, frozenset({EXTRANEOUS_INPUT, TOKEN_RECOGNITION}), "name",
                "replace illegal characters in feature names with underscores"),
        FixRule(RULE_PROPAGATE, frozenset({EXTRANEOUS_INPUT, TOKEN_RECOGNITION}), "line",
                "apply feature renames to constraint references"),
    )


def rule_ids(registry=None) -> list[str]:
    return [r.id for r in (registry or builtin_rules())]


def sanitize_identifier(name: str) -> str:
    name = name.strip()
    if not name:
        raise UnfixableName("empty feature name")
    name = re.sub(r"[^A-Za-z0-9_]", "_", name)
    if name[0].isdigit():
        name = "_" + name
    return name


def resolve_collisions(mapping: dict[str, str], reserved=()) -> dict[str, str]:
    """Make sanitized names unique, suffixing later entries ``_2``, ``_3``...

    ``reserved`` holds names already taken by untouched features.
    """
    used = set(reserved)
    result = {}
    for original, value in mapping.items():
        candidate, n = value, 2
        while candidate in used:
            candidate = f"{value}_{n}"
            n += 1
        used.add(candidate)
        result[original] = candidate
    return result


def extract_feature_name(line: str) -> tuple[str, str] | None:
    """(name, attribute text) of a feature line, or None for keyword lines."""
    content = line.strip(" \t")
    if not content or content in GROUP_KINDS:
        return None
    return split_feature_line(content)


def _token_pattern(names) -> re.Pattern | None:
    if not names:
        return None
    alternation = "|".join(re.escape(n) for n in sorted(names, key=lambda n: (-len(n), n)))
    edge = r"[^\s()!&|=<>]"
    return re.compile(rf"(?<!{edge})(?:{alternation})(?!{edge})")


@dataclass
class _Line:
    number: int | None
    text: str


@dataclass
class _Work:
    lines: list
    changes: list = field(default_factory=list)

    def delete(self, rule_id: str, index: int) -> None:
        entry = self.lines.pop(index)
        self.changes.append(ChangeRecord(rule_id, entry.number, entry.text + "\n", ""))

    def replace(self, rule_id: str, index: int, text: str) -> None:
        entry = self.lines[index]
        if text != entry.text:
            self.changes.append(ChangeRecord(rule_id, entry.number, entry.text, text))
            entry.text = text

    def sections(self):
        """Yield (index, section) for non-blank lines; section is features or constraints."""
        section = "features"
        for i, entry in enumerate(self.lines):
            if is_blank(entry.text):
                continue
            stripped = entry.text.rstrip(" \t")
            if stripped == "constraints":
                section = "constraints"
            elif stripped == "features":
                section = "features"
            else:
                yield i, section


def _rule_enc(work: _Work, src: SourceText) -> None:
    if src.had_bom:
        work.changes.append(ChangeRecord(RULE_ENC, None, "\ufeff", ""))
    if src.fallback:
        work.changes.append(ChangeRecord(RULE_ENC, None, "latin-1", "utf-8"))
    if src.had_crlf:
        work.changes.append(ChangeRecord(RULE_ENC, None, "\r\n", "\n"))
    while work.lines and is_blank(work.lines[-1].text):
        work.delete(RULE_ENC, len(work.lines) - 1)
    if src.decoded and not src.decoded.endswith("\n"):
        work.changes.append(ChangeRecord(RULE_ENC, None, "", "\n"))


def _rule_tabblank(work: _Work, tab_width: int) -> None:
    for i in range(len(work.lines) - 1, -1, -1):
        text = work.lines[i].text
        if text and is_blank(text):
            work.delete(RULE_TABBLANK, i)


def _rule_blank(work: _Work, tab_width: int) -> None:
    flagged = flagged_blank_lines([e.text for e in work.lines])
    for i in reversed(flagged):
        if work.lines[i].text == "":
            work.delete(RULE_BLANK, i)


def _rule_indent(work: _Work, tab_width: int) -> None:
    for i, entry in enumerate(work.lines):
        leading = leading_whitespace(entry.text)
        if " " in leading and not is_blank(entry.text):
            work.replace(RULE_INDENT, i, "\t" * indent_level(leading, tab_width) + entry.text[len(leading):])


def _rule_ident(work: _Work) -> dict[str, str]:
    found: list[tuple[int, str]] = []
    valid: set[str] = set()
    for i, section in work.sections():
        text = work.lines[i].text
        if section != "features" or not text.startswith(("\t", " ")):
            continue
        parsed = extract_feature_name(text)
        if parsed is None or not parsed[0]:
            continue
        name = parsed[0]
        if IDENTIFIER.fullmatch(name):
            valid.add(name)
        else:
            found.append((i, name))

    wanted: dict[str, str] = {}
    for _, name in found:
        if name not in wanted:
            try:
                wanted[name] = sanitize_identifier(name)
            except UnfixableName:
                continue
    renames = resolve_collisions(wanted, reserved=valid)
    for i, name in found:
        if name in renames:
            text = work.lines[i].text
            leading = leading_whitespace(text)
            work.replace(RULE_IDENT, i, leading + renames[name] + text[len(leading) + len(name):])
    return renames


def _rule_propagate(work: _Work, renames: dict[str, str]) -> None:
    pattern = _token_pattern(renames)
    if pattern is None:
        return
    for i, section in list(work.sections()):
        if section == "constraints":
            text = work.lines[i].text
            work.replace(RULE_PROPAGATE, i, pattern.sub(lambda m: renames[m.group()], text))


def apply_rules(src: SourceText, analysis: FileAnalysis, registry=None, enabled=None, tab_width: int = 4):
    """Apply the enabled, matching rules to ``src``.

    Returns ``(fixed_text, changes, rename_map)``. Clean files come back
    unchanged with an empty change log.
    """
    registry = registry or builtin_rules()
    enabled = set(rule_ids(registry) if enabled is None else enabled)
    unknown = enabled - set(rule_ids(registry))
    if unknown:
        raise ValueError(f"unknown rule ids: {', '.join(sorted(unknown))}")
    if analysis.status == OK:
        return src.decoded, [], {}

    present = {d.category for d in analysis.diagnostics}
    work = _Work([_Line(n, t) for n, t in enumerate(src.lines, 1)])
    renames: dict[str, str] = {}
    for rule in registry:
        if rule.id not in enabled:
            continue
        if rule.scope != "file" and not (rule.categories & present):
            continue
        if rule.id == RULE_ENC:
            _rule_enc(work, src)
        elif rule.id == RULE_TABBLANK:
            _rule_tabblank(work, tab_width)
        elif rule.id == RULE_BLANK:
            _rule_blank(work, tab_width)
        elif rule.id == RULE_INDENT:
            _rule_indent(work, tab_width)
        elif rule.id == RULE_IDENT:
            renames = _rule_ident(work)
        elif rule.id == RULE_PROPAGATE:
            _rule_propagate(work, renames)
    return join_lines(e.text for e in work.lines), work.changes, renames


def join_lines(lines) -> str:
    lines = list(lines)
    return "\n".join(lines) + "\n" if lines else ""


def replay_changes(original_lines, changes) -> str:
    """Rebuild fixed text from the original lines and a change log."""
    current: dict[int, str | None] = {i: text for i, text in enumerate(original_lines, 1)}
    for change in changes:
        if change.line is None:
            continue
        have = current[change.line]
        if change.is_deletion:
            if have != change.before[:-1]:
                raise ValueError(f"line {change.line}: log expects {change.before!r}, found {have!r}")
            current[change.line] = None
        else:
            if have != change.before:
                raise ValueError(f"line {change.line}: log expects {change.before!r}, found {have!r}")
            current[change.line] = change.after
    return join_lines(t for _, t in sorted(current.items()) if t is not None)


@dataclass(frozen=True)
class FixOptions:
    enabled: frozenset | None = None
    tab_width: int = 4


@dataclass(frozen=True)
class FixOutcome:
    original: bytes
    fixed: bytes
    before: FileAnalysis
    after: FileAnalysis
    changes: tuple[ChangeRecord, ...] = ()
    renames: dict = field(default_factory=dict)

    @property
    def changed(self) -> bool:
        return self.fixed != self.original


def _encode(text: str, src: SourceText, normalized: bool) -> bytes:
    if normalized:
        return text.encode("utf-8")
    # encoding rule disabled: keep the file's original byte conventions
    if src.had_crlf:
        text = text.replace("\n", "\r\n")
    data = text.encode("latin-1" if src.fallback else "utf-8")
    return BOM + data if src.had_bom else data


def fix_file(record: ScanRecord, raw: bytes, options: FixOptions | None = None) -> FixOutcome:
    """Analyze, fix and re-analyze one file."""
    options = options or FixOptions()
    src = decode_bytes(raw)
    before = analyze_file(record, raw, options.tab_width)
    if before.status == OK:
        return FixOutcome(raw, raw, before, before)
    text, changes, renames = apply_rules(src, before, enabled=options.enabled, tab_width=options.tab_width)
    enc_on = options.enabled is None or RULE_ENC in options.enabled
    fixed = _encode(text, src, enc_on)
    after = analyze_file(record, fixed, options.tab_width)
    return FixOutcome(raw, fixed, before, after, tuple(changes), renames)


def format_change(relative_path: str, change: ChangeRecord) -> str:
    """``path:line:rule: before -> after`` with Python-escaped text."""
    line = "-" if change.line is None else change.line
    return f"{relative_path}:{line}:{change.rule_id}: {change.before!r} -> {change.after!r}"
