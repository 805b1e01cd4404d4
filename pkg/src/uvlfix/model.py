"""Feature-model AST and the canonical UVL printer.

Parentheses are not kept as nodes: they only group, and the printer inserts
the minimum needed for the tree to re-parse to itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

GROUP_KINDS = ("or", "alternative", "mandatory", "optional")
ATTRIBUTES = ("abstract",)


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Implies:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Iff:
    left: "Expr"
    right: "Expr"


Expr = Union[Ref, Not, And, Or, Implies, Iff]

# binding strength, tightest highest
PRECEDENCE = {Ref: 6, Not: 5, And: 4, Or: 3, Implies: 2, Iff: 1}
SYMBOLS = {And: "&", Or: "|", Implies: "=>", Iff: "<=>"}


@dataclass(frozen=True)
class Feature:
    name: str
    attributes: frozenset = frozenset()
    groups: tuple["Group", ...] = ()
    source_line: int | None = field(default=None, compare=False)

    def walk(self) -> Iterator["Feature"]:
        yield self
        for group in self.groups:
            for child in group.children:
                yield from child.walk()


@dataclass(frozen=True)
class Group:
    kind: str
    children: tuple[Feature, ...]

    def __post_init__(self) -> None:
        if self.kind not in GROUP_KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if not self.children:
            raise ValueError("group without children")


@dataclass(frozen=True)
class Constraint:
    expr: Expr
    source_line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FeatureModel:
    root: Feature
    constraints: tuple[Constraint, ...] = ()

    def features(self) -> list[Feature]:
        return list(self.root.walk())

    def feature_names(self) -> list[str]:
        return [f.name for f in self.root.walk()]


def references(expr: Expr) -> Iterator[str]:
    if isinstance(expr, Ref):
        yield expr.name
    elif isinstance(expr, Not):
        yield from references(expr.operand)
    else:
        yield from references(expr.left)
        yield from references(expr.right)


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Ref):
        return expr.name
    if isinstance(expr, Not):
        inner = format_expr(expr.operand)
        if PRECEDENCE[type(expr.operand)] < PRECEDENCE[Not]:
            inner = f"({inner})"
        return f"!{inner}"
    own = PRECEDENCE[type(expr)]
    left = format_expr(expr.left)
    right = format_expr(expr.right)
    # implication groups to the right, the others to the left
    if isinstance(expr, Implies):
        left_needs = PRECEDENCE[type(expr.left)] <= own
        right_needs = PRECEDENCE[type(expr.right)] < own
    else:
        left_needs = PRECEDENCE[type(expr.left)] < own
        right_needs = PRECEDENCE[type(expr.right)] <= own
    if left_needs:
        left = f"({left})"
    if right_needs:
        right = f"({right})"
    return f"{left} {SYMBOLS[type(expr)]} {right}"


def _feature_lines(feature: Feature, depth: int, out: list[str]) -> None:
    line = "\t" * depth + feature.name
    if feature.attributes:
        line += " {" + ", ".join(sorted(feature.attributes)) + "}"
    out.append(line)
    for group in feature.groups:
        out.append("\t" * (depth + 1) + group.kind)
        for child in group.children:
            _feature_lines(child, depth + 2, out)


def serialize_model(model: FeatureModel) -> str:
    """Render ``model`` as canonical UVL: tabs, one item per line, final newline."""
    lines = ["features"]
    _feature_lines(model.root, 1, lines)
    if model.constraints:
        lines.append("constraints")
        lines.extend("\t" + format_expr(c.expr) for c in model.constraints)
    return "\n".join(lines) + "\n"


def rename_model(model: FeatureModel, mapping: dict[str, str]) -> FeatureModel:
    """Return ``model`` with feature names and constraint references renamed."""

    def feature(f: Feature) -> Feature:
        return Feature(
            mapping.get(f.name, f.name),
            f.attributes,
            tuple(Group(g.kind, tuple(feature(c) for c in g.children)) for g in f.groups),
            f.source_line,
        )

    def expr(e: Expr) -> Expr:
        if isinstance(e, Ref):
            return Ref(mapping.get(e.name, e.name))
        if isinstance(e, Not):
            return Not(expr(e.operand))
        return type(e)(expr(e.left), expr(e.right))

    return FeatureModel(
        feature(model.root),
        tuple(Constraint(expr(c.expr), c.source_line) for c in model.constraints),
    )
