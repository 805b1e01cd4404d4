"""Line-oriented, indentation-aware tokenizer for the supported UVL subset.

Indentation becomes synthetic ``indent``/``dedent`` tokens, one per level,
computed from the leading tab count. Leading spaces are reported and then
counted ``tab_width`` to a level so the rest of the file still tokenizes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import (
    BLANK_LINE,
    EXCEPTION,
    EXTRANEOUS_INPUT,
    INDENTATION,
    MISMATCHED_INPUT,
    TAB_ON_BLANK_LINE,
    TOKEN_RECOGNITION,
    Diagnostic,
)
from .model import GROUP_KINDS
from .source import SourceText

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NAME_ALPHABET = re.compile(r"[A-Za-z0-9_ ]")
_ATTRIBUTES = re.compile(r"\{\s*(?:[A-Za-z_]\w*\s*(?:,\s*[A-Za-z_]\w*\s*)*)?\}")
_CONSTRAINT_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<iff><=>)
  | (?P<implies>=>)
  | (?P<not>!)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def is_blank(line: str) -> bool:
    return line.strip(" \t") == ""


def leading_whitespace(line: str) -> str:
    return line[: len(line) - len(line.lstrip(" \t"))]


def indent_level(leading: str, tab_width: int = 4) -> int:
    return leading.count("\t") + leading.count(" ") // tab_width


def flagged_blank_lines(lines) -> list[int]:
    """0-based indices of blank or whitespace-only lines inside a block.

    A blank line counts as inside a block when the next non-blank line is
    indented. Blank lines before a top-level keyword or at the end of the
    file are tolerated.
    """
    flagged = []
    next_indented = False
    for i in range(len(lines) - 1, -1, -1):
        line = lines[i]
        if is_blank(line):
            if next_indented:
                flagged.append(i)
        else:
            next_indented = line[:1] in (" ", "\t")
    return flagged[::-1]


def split_feature_line(content: str) -> tuple[str, str]:
    """Split stripped feature-line content into (name, attribute text)."""
    brace = content.find("{")
    if brace < 0:
        return content.rstrip(" \t"), ""
    return content[:brace].rstrip(" \t"), content[brace:]


def check_name(name: str, line: int, column: int) -> Diagnostic | None:
    """Diagnose an illegal feature name starting at ``column``.

    Characters outside letters, digits, underscore and space are extraneous
    input; failing that, a leading digit is a token recognition error; an
    interior space alone is extraneous input again.
    """
    if IDENTIFIER.fullmatch(name):
        return None
    for offset, char in enumerate(name):
        if not _NAME_ALPHABET.match(char):
            return Diagnostic(
                EXCEPTION, EXTRANEOUS_INPUT, line, column + offset,
                f"extraneous input {char!r} in feature name {name!r}", name,
            )
    if name[0].isdigit():
        return Diagnostic(
            EXCEPTION, TOKEN_RECOGNITION, line, column,
            f"token recognition error at: {name[0]!r} in feature name {name!r}", name,
        )
    offset = name.index(" ")
    return Diagnostic(
        EXCEPTION, EXTRANEOUS_INPUT, line, column + offset,
        f"extraneous input {name[offset + 1:].split(' ')[0]!r} after {name[:offset]!r}", name,
    )


def _lex_constraint(content: str, line: int, column: int, tokens: list, diags: list) -> None:
    pos = 0
    while pos < len(content):
        m = _CONSTRAINT_TOKEN.match(content, pos)
        col = column + pos
        if m is None:
            char = content[pos]
            diags.append(Diagnostic(
                EXCEPTION, EXTRANEOUS_INPUT, line, col,
                f"extraneous input {char!r} in constraint", content,
            ))
            tokens.append(Token("bad", char, line, col))
            return
        kind = m.lastgroup
        if kind == "number":
            diags.append(Diagnostic(
                EXCEPTION, TOKEN_RECOGNITION, line, col,
                f"token recognition error at: {m.group()!r}", content,
            ))
            tokens.append(Token("bad", m.group(), line, col))
            return
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()


def _lex_attributes(text: str, line: int, column: int, tokens: list, diags: list) -> None:
    if not _ATTRIBUTES.fullmatch(text):
        diags.append(Diagnostic(
            EXCEPTION, MISMATCHED_INPUT, line, column,
            f"mismatched input {text!r}, expecting attribute list", text,
        ))
        tokens.append(Token("bad", text, line, column))
        return
    for m in re.finditer(r"[{},]|[A-Za-z_]\w*", text):
        kind = {"{": "lbrace", "}": "rbrace", ",": "comma"}.get(m.group(), "attr")
        tokens.append(Token(kind, m.group(), line, column + m.start()))


def tokenize(src: SourceText, tab_width: int = 4) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    lines = src.lines
    flagged = set(flagged_blank_lines(lines))
    level = 0
    in_constraints = False

    for i, line in enumerate(lines):
        number = i + 1
        if is_blank(line):
            if i in flagged:
                if line:
                    diags.append(Diagnostic(
                        EXCEPTION, TAB_ON_BLANK_LINE, number, 1,
                        "whitespace-only line inside a block", line,
                    ))
                else:
                    diags.append(Diagnostic(
                        EXCEPTION, BLANK_LINE, number, 1,
                        "mismatched input '\\n': blank line inside a block", "",
                    ))
            continue

        leading = leading_whitespace(line)
        if " " in leading:
            diags.append(Diagnostic(
                EXCEPTION, INDENTATION, number, leading.index(" ") + 1,
                "indentation must use one tab per level", leading,
            ))
        new_level = indent_level(leading, tab_width)
        kind = "indent" if new_level > level else "dedent"
        for _ in range(abs(new_level - level)):
            tokens.append(Token(kind, "", number, 1))
        level = new_level

        column = len(leading) + 1
        content = line[len(leading):].rstrip(" \t")
        if level == 0 and content == "features":
            tokens.append(Token("kw_features", content, number, column))
            in_constraints = False
        elif level == 0 and content == "constraints":
            tokens.append(Token("kw_constraints", content, number, column))
            in_constraints = True
        elif in_constraints:
            _lex_constraint(content, number, column, tokens, diags)
        elif content in GROUP_KINDS:
            tokens.append(Token("group", content, number, column))
        else:
            name, attributes = split_feature_line(content)
            if not name:
                diags.append(Diagnostic(
                    EXCEPTION, MISMATCHED_INPUT, number, column,
                    f"mismatched input {content!r}, expecting feature name", content,
                ))
                tokens.append(Token("bad", content, number, column))
                continue
            problem = check_name(name, number, column)
            if problem is not None:
                diags.append(problem)
            tokens.append(Token("bad_name" if problem else "ident", name, number, column))
            if attributes:
                _lex_attributes(attributes, number, column + content.index("{"), tokens, diags)

    # closing dedents sit on a virtual line past the end of the file
    for _ in range(level):
        tokens.append(Token("dedent", "", len(lines) + 1, 1))
    return tokens, diags
