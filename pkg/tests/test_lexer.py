import pytest

from uvlfix.diagnostics import (
    BLANK_LINE,
    EXTRANEOUS_INPUT,
    INDENTATION,
    TAB_ON_BLANK_LINE,
    TOKEN_RECOGNITION,
)
from uvlfix.lexer import check_name, flagged_blank_lines, tokenize
from uvlfix.source import decode_bytes


def lex(text):
    return tokenize(decode_bytes(text.encode()))


def test_clean_input_tokens():
    tokens, diags = lex("features\n\tCamera\n")
    assert [(t.kind, t.value) for t in tokens] == [
        ("kw_features", "features"),
        ("indent", ""),
        ("ident", "Camera"),
        ("dedent", ""),
    ]
    assert diags == []


def test_phone_model_lexical_findings(phone_model_text):
    _, diags = tokenize(decode_bytes(phone_model_text.encode()))
    assert [(d.line, d.category) for d in diags] == [
        (6, BLANK_LINE),
        (8, EXTRANEOUS_INPUT),
        (9, TOKEN_RECOGNITION),
        (10, EXTRANEOUS_INPUT),
    ]


@pytest.mark.parametrize(
    "name, category, offset",
    [
        ("2.1MP", EXTRANEOUS_INPUT, 1),
        ("5 MP", TOKEN_RECOGNITION, 0),
        ("Camera-X", EXTRANEOUS_INPUT, 6),
        ("My Feature", EXTRANEOUS_INPUT, 2),
        ("9lives", TOKEN_RECOGNITION, 0),
        ("Caméra", EXTRANEOUS_INPUT, 3),
    ],
)
def test_name_classification(name, category, offset):
    d = check_name(name, 3, 10)
    assert d.category == category
    assert d.column == 10 + offset
    assert d.offending == name


def test_valid_name_has_no_finding():
    assert check_name("Audio_Formats", 1, 1) is None


def test_whitespace_only_line_inside_block():
    _, diags = lex("features\n\tA\n\t\tor\n\t\t\n\t\t\tB\n")
    assert [(d.line, d.category) for d in diags] == [(4, TAB_ON_BLANK_LINE)]


def test_space_indentation_is_flagged_and_recovered():
    tokens, diags = lex("features\n    A\n        or\n            B\n")
    assert [d.category for d in diags] == [INDENTATION] * 3
    assert [t.kind for t in tokens].count("indent") == 3


def test_blank_lines_before_top_level_and_at_eof_are_tolerated():
    assert flagged_blank_lines(["features", "\tA", "", "constraints", "\tA", "", ""]) == []
    assert flagged_blank_lines(["features", "", "\tA"]) == [1]


def test_jump_emits_one_indent_per_level():
    tokens, _ = lex("features\n\tA\n\t\t\tB\n")
    assert [t.kind for t in tokens] == ["kw_features", "indent", "ident", "indent", "indent", "ident", "dedent", "dedent", "dedent"]


def test_constraint_operators():
    tokens, diags = lex("features\n\tA\nconstraints\n\t!A & (A | A) => A <=> A\n")
    kinds = [t.kind for t in tokens if t.line == 4]
    assert kinds == ["indent", "not", "ident", "and", "lparen", "ident", "or", "ident", "rparen", "implies", "ident", "iff", "ident"]
    assert diags == []
