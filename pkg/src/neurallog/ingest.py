"""Dataset adapters, session grouping, sliding windows, and train/test splitting.

Splits follow the standard experimental protocol for labeled log corpora:
chronological front-fraction for message-labeled streams, seeded random
session selection for session-labeled data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import DataError, Label, LogSequence, RawLogRecord, format_normalized, label_window, parse_normalized_line

# BGL-native layout: ALERT_TAG TIMESTAMP DATE NODE FULLTIME NODE TYPE COMPONENT LEVEL CONTENT...
# The first token is "-" for non-alert lines; anything else is an alert category.
_BGL_MIN_TOKENS = 10
_BGL_COMPONENT_IDX = 7
_BGL_VERBOSITY_IDX = 8
_BGL_CONTENT_IDX = 9

DEFAULT_SESSION_PATTERN = r"(blk_-?[0-9]+)"


@dataclass(frozen=True)
class SplitSpec:
    """train_fraction in (0,1); mode is "chronological" or "random_by_session"."""

    train_fraction: float
    mode: str = "chronological"
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0,1), got {self.train_fraction}")
        if self.mode not in ("chronological", "random_by_session"):
            raise ValueError(f"unknown split mode {self.mode!r}")


@dataclass(frozen=True)
class WindowSpec:
    length: int = 20
    step: int = 1

    def __post_init__(self):
        if self.length < 1 or self.step < 1:
            raise ValueError("window length and step must be >= 1")


def read_normalized(path) -> list[RawLogRecord]:
    """Read records from a normalized TSV file, in file order."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            records.append(parse_normalized_line(line, line_no))
    return records


def write_normalized(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(format_normalized(record) + "\n")


def adapt_bgl(path, reject_path=None) -> tuple[list[RawLogRecord], int]:
    """Convert a BGL-native file to normalized records.

    Label is NORMAL iff the first whitespace token is "-". Unparseable lines
    go to the reject file (reason appended as an extra column) and processing
    continues. Returns (records, rejected_count).
    """
    records = []
    rejected = 0
    reject_fh = open(reject_path, "w", encoding="utf-8") if reject_path else None
    try:
        with open(path, encoding="utf-8", errors="replace") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip():
                    rejected += 1
                    continue
                tokens = line.split()
                reason = None
                if len(tokens) < _BGL_MIN_TOKENS:
                    reason = "too few fields"
                else:
                    try:
                        timestamp = int(tokens[1])
                    except ValueError:
                        reason = "bad timestamp"
                if reason is not None:
                    rejected += 1
                    if reject_fh:
                        reject_fh.write(line + "\t" + reason + "\n")
                    continue
                label = Label.NORMAL if tokens[0] == "-" else Label.ANOMALOUS
                records.append(
                    RawLogRecord(
                        line_no=line_no,
                        timestamp=timestamp,
                        verbosity=tokens[_BGL_VERBOSITY_IDX],
                        component=tokens[_BGL_COMPONENT_IDX],
                        content=" ".join(tokens[_BGL_CONTENT_IDX:]),
                        label=label,
                    )
                )
    finally:
        if reject_fh:
            reject_fh.close()
    return records, rejected


def adapt_generic(path, reject_path=None) -> tuple[list[RawLogRecord], int]:
    """Adapter for data already in the normalized TSV format."""
    return read_normalized(path), 0


ADAPTERS = {
    "bgl": adapt_bgl,
    "generic": adapt_generic,
}


def group_by_session(records, id_pattern: str = DEFAULT_SESSION_PATTERN) -> tuple[list[LogSequence], int]:
    """Group records into one sequence per distinct captured session id.

    Records whose content has no match are dropped and counted. Sequences are
    ordered by first appearance of their id; records keep source order.
    Returns (sequences, dropped_count).
    """
    pattern = re.compile(id_pattern)
    if pattern.groups < 1:
        raise ValueError("session id pattern must have a capture group")
    sessions: dict[str, list[RawLogRecord]] = {}
    dropped = 0
    for record in records:
        match = pattern.search(record.content)
        if match is None:
            dropped += 1
            continue
        sessions.setdefault(match.group(1), []).append(record)
    sequences = [
        LogSequence(records=tuple(members), label=label_window(members), origin=("session", sid))
        for sid, members in sessions.items()
    ]
    return sequences, dropped


def sliding_windows(records, spec: WindowSpec) -> list[LogSequence]:
    """Count-based windows [i, i+length) for i = 0, step, 2*step, ...

    A trailing partial window is emitted only when it is the sole window.
    Records must already be sorted by (timestamp, line_no).
    """
    n = len(records)
    if n == 0:
        return []
    if n < spec.length:
        members = tuple(records)
        return [LogSequence(records=members, label=label_window(members), origin=("window", 0))]
    windows = []
    for start in range(0, n - spec.length + 1, spec.step):
        members = tuple(records[start : start + spec.length])
        windows.append(LogSequence(records=members, label=label_window(members), origin=("window", start)))
    return windows


def sort_records(records) -> list[RawLogRecord]:
    """Chronological order with line_no as the deterministic tie-break."""
    return sorted(records, key=lambda r: (r.timestamp, r.line_no))


def chronological_split(items, spec: SplitSpec) -> tuple[list, list]:
    """Split items into (train, test) by the configured mode.

    Chronological: first floor(frac*n) items (input must be time-sorted).
    random_by_session: seeded shuffle, then the same cut.
    """
    n = len(items)
    if n < 2:
        raise DataError("split impossible: need at least 2 items")
    items = list(items)
    if spec.mode == "random_by_session":
        order = np.random.default_rng(spec.seed).permutation(n)
        items = [items[i] for i in order]
    # floor(frac*n), with an epsilon so binary representation noise (0.29*100
    # = 28.999999999999996) cannot shift the cut off the exact-arithmetic value
    cut = int(spec.train_fraction * n + 1e-9)
    return items[:cut], items[cut:]
