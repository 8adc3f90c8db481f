"""Log parsers: Drain (fixed-depth prefix tree) and Spell (streaming LCS).

Both parsers consume raw message content split on whitespace and produce
templates whose tokens are either keywords or the wildcard "<*>". A literal
token "<*>" in a message is indistinguishable from a wildcard once rendered;
this mirrors the rendered CSV interchange and every common implementation.

Drain routes a message by token count, then by its first depth-2 tokens
(digit-bearing tokens route through a wildcard branch so the tree does not
fan out over parameters), and finally merges into the most similar template
in the leaf. Spell matches each message against the stored template whose
longest common subsequence is largest, rewriting the template to the LCS
with a single wildcard at every gap.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

from .core import DataError, RawLogRecord

WILDCARD = "<*>"

DEFAULT_DEPTH = 4
DEFAULT_SIM_THRESHOLD = 0.4
DEFAULT_MAX_CHILDREN = 100
DEFAULT_TAU = 0.5


@dataclass(frozen=True)
class Template:
    id: int
    tokens: tuple[str, ...]
    support: int

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("template must have at least one token")
        if self.support < 1:
            raise ValueError("template support must be >= 1")

    def rendered(self) -> str:
        return " ".join(self.tokens)

    def keyword_count(self) -> int:
        return sum(1 for t in self.tokens if t != WILDCARD)


@dataclass(frozen=True)
class DrainConfig:
    depth: int = DEFAULT_DEPTH
    similarity_threshold: float = DEFAULT_SIM_THRESHOLD
    max_children: int = DEFAULT_MAX_CHILDREN

    def __post_init__(self):
        if self.depth < 3:
            raise ValueError(f"depth must be >= 3, got {self.depth}")
        if not 0.0 < self.similarity_threshold < 1.0:
            raise ValueError("similarity_threshold must be in (0, 1)")
        if self.max_children < 1:
            raise ValueError("max_children must be positive")


@dataclass(frozen=True)
class ParseResult:
    templates: tuple[Template, ...]
    assignment: dict[int, int]

    def template_by_id(self, template_id: int) -> Template:
        return self.templates[template_id]


class _Group:
    """Mutable template under construction; frozen into Template at the end."""

    __slots__ = ("id", "tokens", "support")

    def __init__(self, group_id: int, tokens: list[str]):
        self.id = group_id
        self.tokens = tokens
        self.support = 1


def _freeze(groups: list[_Group], assignment: dict[int, int]) -> ParseResult:
    templates = tuple(Template(g.id, tuple(g.tokens), g.support) for g in groups)
    return ParseResult(templates=templates, assignment=assignment)


def _has_digit(token: str) -> bool:
    return any(ch.isdigit() for ch in token)


class _Node:
    __slots__ = ("children", "groups")

    def __init__(self):
        self.children: dict = {}
        self.groups: list[_Group] = []


def _seq_similarity(template_tokens: list[str], message_tokens: list[str]) -> float:
    # wildcard positions count toward length but never toward matches
    matches = sum(1 for t, m in zip(template_tokens, message_tokens)
                  if t == m and t != WILDCARD)
    return matches / len(message_tokens)


def drain_parse(records, config: DrainConfig = DrainConfig()) -> ParseResult:
    root = _Node()
    groups: list[_Group] = []
    assignment: dict[int, int] = {}

    for record in records:
        tokens = record.content.split()
        if not tokens:
            raise DataError(f"empty content at line {record.line_no}")

        node = root
        if len(tokens) not in node.children:
            node.children[len(tokens)] = _Node()
        node = node.children[len(tokens)]

        for level in range(min(config.depth - 2, len(tokens))):
            key = WILDCARD if _has_digit(tokens[level]) else tokens[level]
            if key not in node.children:
                if key != WILDCARD and len(node.children) >= config.max_children:
                    key = WILDCARD
                if key not in node.children:
                    node.children[key] = _Node()
            node = node.children[key]

        best = None
        best_sim = -1.0
        for group in node.groups:
            sim = _seq_similarity(group.tokens, tokens)
            if sim > best_sim:
                best, best_sim = group, sim

        if best is not None and best_sim >= config.similarity_threshold:
            best.tokens = [t if t == m else WILDCARD
                           for t, m in zip(best.tokens, tokens)]
            best.support += 1
            assignment[record.line_no] = best.id
        else:
            group = _Group(len(groups), list(tokens))
            groups.append(group)
            node.groups.append(group)
            assignment[record.line_no] = group.id

    return _freeze(groups, assignment)


def _lcs_pairs(template_tokens: list[str], message_tokens: list[str]):
    """Matched (template_idx, message_idx) pairs of one longest common
    subsequence. Wildcard template positions never match and so behave as
    pre-existing gaps. Backtracking prefers the template side on ties, which
    keeps the result deterministic; the LCS length itself is unique.
    """
    n, m = len(template_tokens), len(message_tokens)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        t = template_tokens[i - 1]
        row, prev = dp[i], dp[i - 1]
        for j in range(1, m + 1):
            if t != WILDCARD and t == message_tokens[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                row[j] = prev[j] if prev[j] >= row[j - 1] else row[j - 1]
    pairs = []
    i, j = n, m
    while i > 0 and j > 0:
        t = template_tokens[i - 1]
        if t != WILDCARD and t == message_tokens[j - 1] and dp[i][j] == dp[i - 1][j - 1] + 1:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif dp[i - 1][j] >= dp[i][j - 1]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def _rewrite_to_lcs(template_tokens: list[str], message_tokens: list[str],
                    pairs) -> list[str]:
    """LCS keywords in order, one wildcard wherever either side had a gap."""
    out: list[str] = []
    prev_t, prev_m = -1, -1
    for ti, mi in pairs:
        if ti > prev_t + 1 or mi > prev_m + 1:
            out.append(WILDCARD)
        out.append(template_tokens[ti])
        prev_t, prev_m = ti, mi
    if prev_t < len(template_tokens) - 1 or prev_m < len(message_tokens) - 1:
        out.append(WILDCARD)
    return out


def spell_parse(records, tau: float = DEFAULT_TAU) -> ParseResult:
    if not 0.0 < tau < 1.0:
        raise ValueError("tau must be in (0, 1)")
    groups: list[_Group] = []
    assignment: dict[int, int] = {}

    for record in records:
        tokens = record.content.split()
        if not tokens:
            raise DataError(f"empty content at line {record.line_no}")

        best = None
        best_pairs = None
        for group in groups:
            pairs = _lcs_pairs(group.tokens, tokens)
            if best_pairs is None or len(pairs) > len(best_pairs):
                best, best_pairs = group, pairs

        if best is not None and len(best_pairs) >= tau * len(tokens):
            merged = _rewrite_to_lcs(best.tokens, tokens, best_pairs)
            best.tokens = merged
            best.support += 1
            assignment[record.line_no] = best.id
        else:
            group = _Group(len(groups), list(tokens))
            groups.append(group)
            assignment[record.line_no] = group.id

    return _freeze(groups, assignment)


def match_to_ground_truth(content: str, gt_templates) -> int:
    """Id of the most similar ground-truth template.

    Similarity = matched positions / max(template length, message length),
    where a wildcard matches any token. Ties go to the lowest template id.
    """
    gt_templates = list(gt_templates)
    if not gt_templates:
        raise ValueError("gt_templates must be non-empty")
    tokens = content.split()
    best_id = None
    best_sim = -1.0
    for template in sorted(gt_templates, key=lambda t: t.id):
        matched = sum(1 for t, m in zip(template.tokens, tokens)
                      if t == WILDCARD or t == m)
        sim = matched / max(len(template.tokens), len(tokens))
        if sim > best_sim:
            best_id, best_sim = template.id, sim
    return best_id


def seq_to_count_vector(sequence, assignment: dict[int, int], n_templates: int):
    counts = [0] * n_templates
    for record in sequence.records:
        if record.line_no not in assignment:
            raise DataError(f"line {record.line_no}: no template assignment")
        counts[assignment[record.line_no]] += 1
    return counts


def save_templates(templates, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "rendered_template", "support"])
        for template in templates:
            writer.writerow([template.id, template.rendered(), template.support])


def load_templates(path) -> tuple[Template, ...]:
    templates = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["id", "rendered_template", "support"]:
            raise DataError(f"bad templates header in {path}")
        for row in reader:
            if len(row) != 3:
                raise DataError(f"bad templates row: {row!r}")
            templates.append(Template(int(row[0]), tuple(row[1].split()), int(row[2])))
    return tuple(templates)


def save_assignment(assignment: dict[int, int], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["line_no", "template_id"])
        for line_no in sorted(assignment):
            writer.writerow([line_no, assignment[line_no]])


def load_assignment(path) -> dict[int, int]:
    assignment: dict[int, int] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["line_no", "template_id"]:
            raise DataError(f"bad assignment header in {path}")
        for row in reader:
            if len(row) != 2:
                raise DataError(f"bad assignment row: {row!r}")
            assignment[int(row[0])] = int(row[1])
    return assignment
