"""Strict parser for the supported UVL subset.

Grammar (one item per line, one tab per nesting level)::

    model       := "features" NL root [ "constraints" NL constraint* ]
    root        := TAB feature
    feature     := NAME [ "{" NAME ("," NAME)* "}" ] NL group*      (depth d)
    group       := ("or" | "alternative" | "mandatory" | "optional") NL feature+
                                                                   (depth d+1, children d+2)
    constraint  := TAB expr NL
    expr        := iff
    iff         := implies ("<=>" implies)*
    implies     := or_ ("=>" implies)?
    or_         := and_ ("|" and_)*
    and_        := unary ("&" unary)*
    unary       := "!" unary | NAME | "(" expr ")"

Parsing never raises. Every finding becomes a Diagnostic; a model is returned
only when none of them has exception severity.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import groupby

from .diagnostics import (
    BLANK_LINE,
    DUPLICATE_FEATURE,
    ENCODING,
    ERROR,
    EXCEPTION,
    EXTRANEOUS_INPUT,
    INDENTATION,
    MISMATCHED_INPUT,
    UNKNOWN_REFERENCE,
    WARNING,
    Diagnostic,
    sort_diagnostics,
)
from .lexer import Token, tokenize
from .model import ATTRIBUTES, And, Constraint, Feature, FeatureModel, Group, Iff, Implies, Not, Or, Ref, references
from .source import SourceText, decode_bytes

# warning categories a fix rule can repair; reported as errors in files that fail
_FIXABLE_WARNINGS = {ENCODING}

_PUBLIC_CATEGORY = {BLANK_LINE: MISMATCHED_INPUT}


class _ExprError(Exception):
    def __init__(self, token: Token | None, extraneous: bool):
        self.token = token
        self.extraneous = extraneous


class _ExprParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.refs: list[Token] = []

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str) -> Token | None:
        tok = self.peek()
        if tok is not None and tok.kind == kind:
            self.pos += 1
            return tok
        return None

    def parse(self):
        expr = self.iff()
        leftover = self.peek()
        if leftover is not None:
            raise _ExprError(leftover, extraneous=True)
        return expr

    def iff(self):
        expr = self.implies()
        while self.take("iff"):
            expr = Iff(expr, self.implies())
        return expr

    def implies(self):
        left = self.or_()
        if self.take("implies"):
            return Implies(left, self.implies())
        return left

    def or_(self):
        expr = self.and_()
        while self.take("or"):
            expr = Or(expr, self.and_())
        return expr

    def and_(self):
        expr = self.unary()
        while self.take("and"):
            expr = And(expr, self.unary())
        return expr

    def unary(self):
        if self.take("not"):
            return Not(self.unary())
        tok = self.take("ident")
        if tok is not None:
            self.refs.append(tok)
            return Ref(tok.value)
        if self.take("lparen"):
            expr = self.iff()
            if not self.take("rparen"):
                raise _ExprError(self.peek(), extraneous=False)
            return expr
        raise _ExprError(self.peek(), extraneous=False)


@dataclass
class _FeatureNode:
    name: str
    line: int
    column: int
    attributes: set = field(default_factory=set)
    groups: list = field(default_factory=list)

    def freeze(self) -> Feature:
        return Feature(
            self.name,
            frozenset(self.attributes),
            tuple(Group(g.kind, tuple(c.freeze() for c in g.children)) for g in self.groups),
            self.line,
        )


@dataclass
class _GroupNode:
    kind: str
    line: int
    column: int
    children: list = field(default_factory=list)


def _exception(category: str, line: int | None, column: int | None, message: str, offending: str = "") -> Diagnostic:
    return Diagnostic(EXCEPTION, category, line, column, message, offending)


def _expr_failure(err: _ExprError, line: int, content_end: int, text: str) -> Diagnostic:
    tok = err.token
    if tok is None:
        return _exception(MISMATCHED_INPUT, line, content_end, "mismatched input '<EOL>' in constraint", text)
    category = EXTRANEOUS_INPUT if err.extraneous else MISMATCHED_INPUT
    word = "extraneous" if err.extraneous else "mismatched"
    return _exception(category, line, tok.column, f"{word} input {tok.value!r} in constraint", text)


def parse_model(src: SourceText, tab_width: int = 4) -> tuple[FeatureModel | None, list[Diagnostic]]:
    tokens, lex_diags = tokenize(src, tab_width)
    diags = list(src.encoding_findings) + lex_diags
    failed_lines = {d.line for d in lex_diags if d.severity == EXCEPTION}

    root: _FeatureNode | None = None
    open_at: dict[int, object] = {}
    constraints: list[tuple[object, int, list[Token]]] = []
    all_groups: list[_GroupNode] = []
    feature_nodes: list[_FeatureNode] = []
    level = 0
    section = None
    header_line = None

    for number, line_tokens in groupby(tokens, key=lambda t: t.line):
        line_tokens = list(line_tokens)
        for tok in line_tokens:
            if tok.kind == "indent":
                level += 1
            elif tok.kind == "dedent":
                level -= 1
        body = [t for t in line_tokens if t.kind not in ("indent", "dedent")]
        if not body:
            continue
        first = body[0]
        text = src.line(number)

        if section is None and first.kind != "kw_features":
            diags.append(_exception(
                MISMATCHED_INPUT, number, first.column,
                f"mismatched input {first.value!r}, expecting 'features'", text,
            ))
            section = "features"
            header_line = number

        if first.kind == "kw_features":
            if section is not None:
                diags.append(_exception(MISMATCHED_INPUT, number, first.column, "duplicate 'features' block", text))
            section = "features"
            header_line = number
            open_at = {0: None}
            continue
        if first.kind == "kw_constraints":
            if section == "constraints":
                diags.append(_exception(MISMATCHED_INPUT, number, first.column, "duplicate 'constraints' block", text))
            section = "constraints"
            continue

        if section == "constraints":
            if level != 1:
                diags.append(_exception(
                    INDENTATION if level > 1 else MISMATCHED_INPUT, number, 1,
                    f"constraint at nesting level {level}, expected 1", text,
                ))
                continue
            if number in failed_lines:
                continue
            parser = _ExprParser(body)
            try:
                expr = parser.parse()
            except _ExprError as err:
                diags.append(_expr_failure(err, number, len(text.rstrip(" \t")) + 1, text))
                continue
            constraints.append((expr, number, parser.refs))
            continue

        # features section
        if level == 0:
            diags.append(_exception(
                MISMATCHED_INPUT, number, first.column,
                f"mismatched input {first.value!r} at top level", text,
            ))
            continue
        deepest = max(k for k in open_at) if open_at else 0
        if level > deepest + 1:
            diags.append(_exception(
                INDENTATION, number, 1,
                f"indentation jumps {level - deepest} levels", text,
            ))
            level_used = deepest + 1
        else:
            level_used = level
        open_at = {k: v for k, v in open_at.items() if k < level_used}
        parent = open_at.get(level_used - 1)

        if first.kind == "group":
            node = _GroupNode(first.value, number, first.column)
            if not isinstance(parent, _FeatureNode):
                diags.append(_exception(
                    MISMATCHED_INPUT, number, first.column,
                    f"mismatched input {first.value!r}, group must follow a feature", text,
                ))
            else:
                parent.groups.append(node)
            all_groups.append(node)
            open_at[level_used] = node
            continue

        if first.kind not in ("ident", "bad_name"):
            # lexer already reported the line
            continue
        node = _FeatureNode(first.value, number, first.column)
        feature_nodes.append(node)
        for tok in body[1:]:
            if tok.kind == "attr":
                if tok.value not in ATTRIBUTES:
                    diags.append(_exception(
                        MISMATCHED_INPUT, number, tok.column,
                        f"unsupported attribute {tok.value!r}", text,
                    ))
                node.attributes.add(tok.value)
        if level_used == 1:
            if root is not None:
                diags.append(_exception(
                    MISMATCHED_INPUT, number, first.column,
                    f"mismatched input {first.value!r}, model has a single root feature", text,
                ))
            else:
                root = node
        elif isinstance(parent, _GroupNode):
            parent.children.append(node)
        else:
            diags.append(_exception(
                MISMATCHED_INPUT, number, first.column,
                f"mismatched input {first.value!r}, expecting a group keyword", text,
            ))
        open_at[level_used] = node

    if section is None:
        diags.append(_exception(MISMATCHED_INPUT, None, None, "missing 'features' header"))
    elif root is None:
        diags.append(_exception(MISMATCHED_INPUT, header_line, 1, "features block has no root feature", src.line(header_line)))
    for group in all_groups:
        if not group.children:
            diags.append(_exception(
                MISMATCHED_INPUT, group.line, group.column,
                f"group {group.kind!r} has no child features", src.line(group.line),
            ))

    if any(d.severity == EXCEPTION for d in diags):
        diags = [
            replace(d, severity=ERROR) if d.severity == WARNING and d.category in _FIXABLE_WARNINGS else d
            for d in diags
        ]
        return None, sort_diagnostics(diags)

    model = FeatureModel(root.freeze(), tuple(Constraint(e, n) for e, n, _ in constraints))
    seen = set()
    for node in feature_nodes:
        if node.name in seen:
            diags.append(Diagnostic(
                WARNING, DUPLICATE_FEATURE, node.line, node.column,
                f"duplicate feature name {node.name!r}", node.name,
            ))
        seen.add(node.name)
    for _, number, refs in constraints:
        for tok in refs:
            if tok.value not in seen:
                diags.append(Diagnostic(
                    WARNING, UNKNOWN_REFERENCE, number, tok.column,
                    f"constraint references unknown feature {tok.value!r}", tok.value,
                ))
    return model, sort_diagnostics(diags)


def classify_parse_failure(d: Diagnostic) -> Diagnostic:
    """Map an internal category to the one shown in reports."""
    public = _PUBLIC_CATEGORY.get(d.category)
    return d if public is None else replace(d, category=public)


def parse_text(text: str, tab_width: int = 4) -> tuple[FeatureModel | None, list[Diagnostic]]:
    return parse_model(decode_bytes(text.encode("utf-8")), tab_width)


def referenced_names(model: FeatureModel) -> set[str]:
    return {name for c in model.constraints for name in references(c.expr)}
