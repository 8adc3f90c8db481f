"""Shared domain types: log records, sequences, labels, and the normalized record format.

The normalized record format is one record per line, tab-separated, UTF-8:

    label(0|1) <TAB> timestamp <TAB> verbosity <TAB> component <TAB> content

Every dataset adapter emits this format and every downstream stage consumes it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable


class DataError(Exception):
    """Malformed input data. Carries an optional line locus for diagnostics."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ConfigError(Exception):
    """Inconsistent or invalid run configuration."""


class Label(enum.IntEnum):
    NORMAL = 0
    ANOMALOUS = 1


@dataclass(frozen=True)
class RawLogRecord:
    """One log line: header fields (timestamp, verbosity, component) plus content."""

    line_no: int
    timestamp: int
    verbosity: str
    component: str
    content: str
    label: Label

    def header_and_content(self) -> str:
        """All textual information of the record: verbosity, component, and content."""
        return f"{self.verbosity} {self.component} {self.content}"


@dataclass(frozen=True)
class LogSequence:
    """An ordered window or session of records with a derived sequence label.

    origin is ("session", session_id) or ("window", start_index).
    """

    records: tuple[RawLogRecord, ...]
    label: Label
    origin: tuple[str, str | int]


class LabelSet:
    """Per-record (or per-session) labels keyed by line_no (or session_id)."""

    def __init__(self, labels: dict = None):
        self._labels: dict = dict(labels or {})

    @classmethod
    def from_records(cls, records: Iterable[RawLogRecord]) -> "LabelSet":
        return cls({r.line_no: r.label for r in records})

    def label_of(self, key) -> Label:
        return self._labels[key]

    def __contains__(self, key) -> bool:
        return key in self._labels

    def __len__(self) -> int:
        return len(self._labels)


def label_window(records: list[RawLogRecord] | tuple[RawLogRecord, ...]) -> Label:
    """A window is anomalous iff any member record is anomalous."""
    if not records:
        raise DataError("empty window")
    return Label.ANOMALOUS if any(r.label == Label.ANOMALOUS for r in records) else Label.NORMAL


def format_normalized(record: RawLogRecord) -> str:
    return "\t".join(
        (
            str(int(record.label)),
            str(record.timestamp),
            record.verbosity,
            record.component,
            record.content,
        )
    )


def parse_normalized_line(line: str, line_no: int) -> RawLogRecord:
    fields = line.rstrip("\n").split("\t", 4)
    if len(fields) != 5:
        raise DataError(f"expected 5 tab-separated fields, got {len(fields)}", line_no)
    raw_label, raw_ts, verbosity, component, content = fields
    if raw_label == "0":
        label = Label.NORMAL
    elif raw_label == "1":
        label = Label.ANOMALOUS
    else:
        raise DataError(f"unknown label value {raw_label!r}", line_no)
    try:
        timestamp = int(raw_ts)
    except ValueError:
        raise DataError(f"bad timestamp {raw_ts!r}", line_no) from None
    if not content.strip():
        raise DataError("empty content", line_no)
    return RawLogRecord(
        line_no=line_no,
        timestamp=timestamp,
        verbosity=verbosity,
        component=component,
        content=content,
        label=label,
    )
