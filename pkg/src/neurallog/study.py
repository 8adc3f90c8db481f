"""Vocabulary-drift and parsing-error analysis over a train/test split.

The out-of-vocabulary statistics here deliberately use raw whitespace tokens
of the message content, case-sensitive and unfiltered. That tokenization is
distinct from the preprocess module's cleaned tokens: the point is to measure
what a template-keyed detector would face, not what the pipeline feeds the
model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DataError, Label, LabelSet
from .parsers import WILDCARD, ParseResult, Template, match_to_ground_truth


@dataclass(frozen=True)
class OovReport:
    """OOV counts with their ratios derivable exactly (numerator/denominator)."""
    oov_unique_words: int
    unique_words: int
    oov_messages: int
    messages: int
    oov_templates: int | None = None
    templates: int | None = None

    @property
    def unique_word_oov_ratio(self) -> float:
        return self.oov_unique_words / self.unique_words

    @property
    def message_oov_ratio(self) -> float:
        return self.oov_messages / self.messages

    @property
    def template_oov_ratio(self) -> float | None:
        if self.templates is None:
            return None
        return self.oov_templates / self.templates


def whitespace_vocab(train_records) -> set[str]:
    """All whitespace-separated tokens of train contents, case-sensitive."""
    vocab: set[str] = set()
    for record in train_records:
        vocab.update(record.content.split())
    return vocab


def oov_stats(train_records, test_records, test_parse: ParseResult | None = None) -> OovReport:
    test_records = list(test_records)
    if not test_records:
        raise DataError("empty test set")
    vocab = whitespace_vocab(train_records)

    test_words: set[str] = set()
    oov_messages = 0
    for record in test_records:
        words = record.content.split()
        test_words.update(words)
        if any(w not in vocab for w in words):
            oov_messages += 1
    if not test_words:
        raise DataError("test set has no words")
    oov_unique = sum(1 for w in test_words if w not in vocab)

    oov_templates = None
    n_templates = None
    if test_parse is not None:
        n_templates = len(test_parse.templates)
        if n_templates == 0:
            raise DataError("test parse has no templates")
        oov_templates = sum(
            1 for t in test_parse.templates
            if any(k not in vocab for k in t.tokens if k != WILDCARD)
        )

    return OovReport(
        oov_unique_words=oov_unique,
        unique_words=len(test_words),
        oov_messages=oov_messages,
        messages=len(test_records),
        oov_templates=oov_templates,
        templates=n_templates,
    )


def extra_event_rate(parsed: ParseResult, gt_templates) -> tuple[float, list[Template]]:
    """Fraction of parsed templates holding more keywords than the ground-truth
    template they best match, plus those offending templates.
    """
    gt_templates = list(gt_templates)
    if not gt_templates:
        raise ValueError("gt_templates must be non-empty")
    gt_by_id = {t.id: t for t in gt_templates}
    offenders = []
    for template in parsed.templates:
        gt_id = match_to_ground_truth(template.rendered(), gt_templates)
        if template.keyword_count() > gt_by_id[gt_id].keyword_count():
            offenders.append(template)
    if not parsed.templates:
        return 0.0, []
    return len(offenders) / len(parsed.templates), offenders


def ambiguous_templates(parsed: ParseResult, labels: LabelSet) -> list[tuple[Template, int, int]]:
    """Templates assigned to lines of both labels, with (normal, anomalous)
    counts, sorted by total occurrences descending (id ascending on ties).
    """
    normal_counts = {t.id: 0 for t in parsed.templates}
    anomalous_counts = {t.id: 0 for t in parsed.templates}
    for line_no, template_id in parsed.assignment.items():
        if line_no not in labels:
            raise DataError(f"line {line_no}: no label for assigned line")
        if labels.label_of(line_no) is Label.ANOMALOUS:
            anomalous_counts[template_id] += 1
        else:
            normal_counts[template_id] += 1

    rows = [
        (t, normal_counts[t.id], anomalous_counts[t.id])
        for t in parsed.templates
        if normal_counts[t.id] > 0 and anomalous_counts[t.id] > 0
    ]
    rows.sort(key=lambda row: (-(row[1] + row[2]), row[0].id))
    return rows


OOV_TSV_HEADER = ("train_frac", "unique_word_oov_ratio", "message_oov_ratio",
                  "template_oov_ratio", "oov_unique_words", "unique_words",
                  "oov_messages", "messages", "oov_templates", "templates")


def oov_tsv_row(train_frac: float, report: OovReport) -> tuple[str, ...]:
    def opt(v):
        return "" if v is None else str(v)

    template_ratio = report.template_oov_ratio
    return (
        f"{train_frac:g}",
        f"{report.unique_word_oov_ratio:.6f}",
        f"{report.message_oov_ratio:.6f}",
        "" if template_ratio is None else f"{template_ratio:.6f}",
        str(report.oov_unique_words),
        str(report.unique_words),
        str(report.oov_messages),
        str(report.messages),
        opt(report.oov_templates),
        opt(report.templates),
    )


def format_oov_table(rows: list[tuple[float, OovReport]]) -> str:
    """Plain-text table for terminal output; one line per split fraction."""
    lines = [f"{'train%':>7}  {'uniq-word OOV':>14}  {'msg OOV':>10}  {'tmpl OOV':>10}"]
    for frac, report in rows:
        template_ratio = report.template_oov_ratio
        tmpl = "-" if template_ratio is None else f"{template_ratio:9.2%}"
        lines.append(
            f"{frac:>6.0%}  {report.unique_word_oov_ratio:>13.2%} "
            f" {report.message_oov_ratio:>9.2%}  {tmpl:>10}"
        )
    return "\n".join(lines)
