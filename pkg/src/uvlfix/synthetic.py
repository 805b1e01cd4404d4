"""Random clean models and seeded corruptions, for corpus-scale validation.

``corrupt_model`` is the inverse of the fix rules: every fixable operator
introduces exactly one defect class that exactly one builtin rule repairs.
``drop_header`` and ``indent_jump`` introduce defects no rule repairs.
"""

from __future__ import annotations

import random
import re
import string
from dataclasses import dataclass, field

from .lexer import is_blank, leading_whitespace
from .model import GROUP_KINDS, And, Constraint, Feature, FeatureModel, Group, Iff, Implies, Not, Or, Ref, serialize_model

FIXABLE_OPERATORS = ("blank_line", "tab_line", "rename", "latin1", "spaces")
UNFIXABLE_OPERATORS = ("drop_header", "indent_jump")
RENAME_VARIANTS = ("dot", "space", "hyphen", "digit")


def _name(rng: random.Random, index: int) -> str:
    letters = "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(3, 7)))
    return f"F{index}_{letters.capitalize()}"


def random_model(
    rng: random.Random, max_features: int = 18, max_constraints: int = 3, min_features: int = 1
) -> FeatureModel:
    """A random valid model: unique names, nonempty groups, known references."""
    target = rng.randint(min_features, max(min_features, max_features))
    counter = iter(range(10**9))
    names: list[str] = []

    def feature(depth: int, budget: list[int]) -> Feature:
        name = _name(rng, next(counter))
        names.append(name)
        budget[0] -= 1
        groups = []
        while budget[0] > 0 and depth < 5 and (depth == 0 and not groups or rng.random() < 0.55):
            kids = []
            for _ in range(rng.randint(1, 3)):
                if budget[0] <= 0:
                    break
                kids.append(feature(depth + 1, budget))
            if kids:
                groups.append(Group(rng.choice(GROUP_KINDS), tuple(kids)))
        attrs = frozenset({"abstract"}) if rng.random() < 0.2 else frozenset()
        return Feature(name, attrs, tuple(groups))

    root = feature(0, [target])

    def expr(depth: int):
        if depth <= 0 or rng.random() < 0.35:
            return Ref(rng.choice(names))
        op = rng.choice((Not, And, Or, Implies, Iff))
        if op is Not:
            return Not(expr(depth - 1))
        return op(expr(depth - 1), expr(depth - 1))

    constraints = tuple(Constraint(expr(3)) for _ in range(rng.randint(0, max_constraints)))
    return FeatureModel(root, constraints)


def random_model_text(rng: random.Random, **kwargs) -> str:
    return serialize_model(random_model(rng, **kwargs))


@dataclass(frozen=True)
class CorruptionOp:
    kind: str
    variant: str | None = None
    target: str | None = None  # feature name for rename
    new_name: str | None = None


@dataclass
class Corruption:
    text: str
    encoding: str = "utf-8"
    renamed: dict = field(default_factory=dict)  # clean name -> corrupted name
    applied: list = field(default_factory=list)
    skipped: list = field(default_factory=list)  # (op, reason)

    @property
    def data(self) -> bytes:
        return self.text.encode(self.encoding)


def _lines(text: str) -> list[str]:
    return text.split("\n")[:-1] if text.endswith("\n") else text.split("\n")


def _interior_positions(lines: list[str]) -> list[int]:
    # insertion index i puts the new line right before lines[i]
    return [i for i in range(1, len(lines)) if lines[i][:1] in ("\t", " ") and not is_blank(lines[i])]


def _feature_lines(lines: list[str]) -> list[int]:
    found = []
    for i, line in enumerate(lines):
        if line.rstrip() == "constraints":
            break
        content = line.strip()
        if line[:1] in ("\t", " ") and content and content not in GROUP_KINDS:
            found.append(i)
    return found


def _corrupt_name(name: str, variant: str) -> str:
    if variant == "digit":
        return "7" + name
    mid = max(1, len(name) // 2)
    sep = {"dot": ".", "space": " ", "hyphen": "-"}[variant]
    return name[:mid] + sep + name[mid:]


def corrupt_model(text: str, plan, seed: int = 0) -> Corruption:
    """Apply the operators in ``plan`` to clean model ``text``.

    Operators that cannot apply (no interior position, no non-ASCII text to
    re-encode) are recorded in ``skipped`` and the plan continues.
    """
    rng = random.Random(seed)
    lines = _lines(text)
    result = Corruption(text)
    for op in plan:
        if isinstance(op, str):
            op = CorruptionOp(op)
        reason = None
        if op.kind in ("blank_line", "tab_line"):
            spots = _interior_positions(lines)
            if not spots:
                reason = "no interior position"
            else:
                filler = "" if op.kind == "blank_line" else "\t" * rng.randint(1, 3)
                lines.insert(rng.choice(spots), filler)
        elif op.kind == "rename":
            candidates = [i for i in _feature_lines(lines) if lines[i].strip().split(" {")[0] not in result.renamed.values()]
            if op.target is not None:
                candidates = [i for i in candidates if lines[i].strip().split(" {")[0] == op.target]
            if not candidates:
                reason = "no feature to rename"
            else:
                i = rng.choice(candidates)
                leading = leading_whitespace(lines[i])
                old, _, rest = lines[i][len(leading):].partition(" {")
                new = op.new_name or _corrupt_name(old, op.variant or rng.choice(RENAME_VARIANTS))
                lines[i] = leading + new + (" {" + rest if rest else "")
                pattern = re.compile(rf"(?<![A-Za-z0-9_]){re.escape(old)}(?![A-Za-z0-9_])")
                start = next((k for k, line in enumerate(lines) if line.rstrip() == "constraints"), len(lines))
                for k in range(start + 1, len(lines)):
                    lines[k] = pattern.sub(lambda m: new, lines[k])
                result.renamed[old] = new
        elif op.kind == "latin1":
            joined = "\n".join(lines)
            if joined.isascii():
                reason = "text has no non-ASCII characters"
            else:
                result.encoding = "latin-1"
        elif op.kind == "spaces":
            spots = [i for i, line in enumerate(lines) if line.startswith("\t") and not is_blank(line)]
            if not spots:
                reason = "no indented line"
            else:
                i = rng.choice(spots)
                leading = leading_whitespace(lines[i])
                lines[i] = leading.replace("\t", "    ") + lines[i][len(leading):]
        elif op.kind == "drop_header":
            if lines and lines[0] == "features":
                lines.pop(0)
            else:
                reason = "no features header"
        elif op.kind == "indent_jump":
            spots = [i + 1 for i in range(len(lines) - 1) if lines[i].strip() in GROUP_KINDS]
            if not spots:
                reason = "no group to deepen"
            else:
                i = rng.choice(spots)
                lines[i] = "\t\t" + lines[i]
        else:
            raise ValueError(f"unknown corruption operator {op.kind!r}")

        if reason:
            result.skipped.append((op, reason))
        else:
            result.applied.append(op)
    result.text = "\n".join(lines) + "\n" if lines else ""
    return result


@dataclass
class CorpusEntry:
    name: str
    clean: str
    kind: str  # clean | fixable | unfixable
    corruption: Corruption | None = None

    @property
    def data(self) -> bytes:
        return self.corruption.data if self.corruption else self.clean.encode("utf-8")


def build_corpus(seed: int, n_models: int, n_fixable: int, n_unfixable: int) -> list[CorpusEntry]:
    """Printer-generated models, the first ones corrupted.

    Fixable entries get one to three fixable operators, unfixable entries get a
    missing header or an indentation jump. Plans are redrawn until every
    operator applies, so each corrupted entry is guaranteed to differ.
    """
    if n_fixable + n_unfixable > n_models:
        raise ValueError("more corrupted entries than models")
    rng = random.Random(seed)
    entries = []
    for i in range(n_models):
        corrupted = i < n_fixable + n_unfixable
        clean = random_model_text(rng, min_features=4 if corrupted else 1)
        name = f"model_{i:04d}.uvl"
        if i < n_fixable:
            kinds = [k for k in FIXABLE_OPERATORS if k != "latin1"]
            while True:
                plan = [CorruptionOp(rng.choice(kinds)) for _ in range(rng.randint(1, 3))]
                c = corrupt_model(clean, plan, seed=rng.randrange(2**32))
                if not c.skipped:
                    break
            entries.append(CorpusEntry(name, clean, "fixable", c))
        elif corrupted:
            op = UNFIXABLE_OPERATORS[i % 2]
            c = corrupt_model(clean, [op], seed=rng.randrange(2**32))
            if c.skipped:
                c = corrupt_model(clean, ["drop_header"])
            entries.append(CorpusEntry(name, clean, "unfixable", c))
        else:
            entries.append(CorpusEntry(name, clean, "clean"))
    return entries
