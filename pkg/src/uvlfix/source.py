"""Byte decoding and line bookkeeping for UVL sources."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import ENCODING, EXCEPTION, WARNING, Diagnostic

BOM = b"\xef\xbb\xbf"


@dataclass(frozen=True)
class SourceText:
    raw_bytes: bytes
    decoded: str
    encoding_findings: tuple[Diagnostic, ...] = ()
    had_bom: bool = False
    had_crlf: bool = False
    fallback: bool = False
    lines: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lines", split_lines(self.decoded))

    @property
    def line_index(self) -> dict[int, tuple[int, int]]:
        """1-based line number -> (start, end) offsets into ``decoded``."""
        index = {}
        start = 0
        for number, line in enumerate(self.lines, 1):
            index[number] = (start, start + len(line))
            start += len(line) + 1
        return index

    def line(self, number: int) -> str:
        return self.lines[number - 1]


def split_lines(text: str) -> tuple[str, ...]:
    """Split LF text into lines; a final newline does not open a new line."""
    if not text:
        return ()
    parts = text.split("\n")
    if parts[-1] == "":
        parts.pop()
    return tuple(parts)


def _fold_newlines(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


def _end_position(prefix: str) -> tuple[int, int]:
    """1-based (line, column) of the character right after ``prefix``."""
    prefix = _fold_newlines(prefix)
    line = prefix.count("\n") + 1
    return line, len(prefix) - (prefix.rfind("\n") + 1) + 1


def decode_bytes(raw: bytes) -> SourceText:
    """Decode raw file bytes, never failing.

    A UTF-8 byte-order mark is stripped and CRLF/CR line ends are folded to LF;
    both only warn. Bytes that are not valid UTF-8 are read as Latin-1 instead,
    which is recorded as an exception since the file is not in the language's
    encoding.
    """
    findings = []
    body = raw
    had_bom = body.startswith(BOM)
    if had_bom:
        body = body[len(BOM):]
        findings.append(Diagnostic(WARNING, ENCODING, 1, 1, "byte-order mark removed", "\ufeff"))

    fallback = False
    try:
        text = body.decode("utf-8")
    except UnicodeDecodeError as exc:
        fallback = True
        text = body.decode("latin-1")
        bad = body[exc.start:exc.end]
        line, column = _end_position(body[: exc.start].decode("latin-1"))
        findings.append(
            Diagnostic(
                EXCEPTION,
                ENCODING,
                line,
                column,
                f"invalid UTF-8 byte(s) {bad.hex(' ')}, decoded as latin-1",
                bad.decode("latin-1"),
            )
        )

    had_crlf = "\r" in text
    if had_crlf:
        line, _ = _end_position(text[: text.index("\r")])
        findings.append(Diagnostic(WARNING, ENCODING, line, None, "CRLF line endings normalized to LF", "\r\n"))
        text = _fold_newlines(text)

    return SourceText(
        raw_bytes=raw,
        decoded=text,
        encoding_findings=tuple(findings),
        had_bom=had_bom,
        had_crlf=had_crlf,
        fallback=fallback,
    )
