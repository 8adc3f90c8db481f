"""Deterministic synthetic log corpus with known ground-truth templates.

Messages are instantiated from a fixed template library: keyword positions
stay constant, parameter slots are filled with digit-bearing values (ids,
hex, sizes) that the preprocess stage strips and the parsers abstract.
Anomalous messages come from separate failure templates with distinctive
keywords and arrive in contiguous failure episodes, the way real faults
cascade; episodes are spaced far apart so the anomalous-window share stays
small and every normal window is keyword-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Label, RawLogRecord
from .parsers import WILDCARD, Template

_PRIMARY = (
    "worker queue flush complete segment replica heartbeat client served block "
    "request response cache commit rotate index snapshot lease balance thread "
    "pool timer sync register update report status start stop open close read "
    "write send receive verify schedule allocate release mount scan merge "
    "compact upload download connect disconnect retry resume pause probe"
).split()

_SECONDARY = (
    "node path file stream buffer channel socket table shard row page entry "
    "token key value offset limit frame packet region volume queue slot"
).split()

_PARAM = "\x00param\x00"

_FAILURE_TEMPLATES = (
    "fatal kernel panic on cpu {} halting",
    "segmentation fault at address {} process {} killed",
    "disk corruption detected volume {} marked offline",
    "unrecoverable ecc error memory bank {}",
    "watchdog timeout forcing emergency shutdown code {}",
)

_COMPONENTS = ("dfs", "kernel", "net", "sched", "io", "mem", "raid", "rpc")


@dataclass(frozen=True)
class SynthCorpus:
    records: tuple[RawLogRecord, ...]
    gt_templates: tuple[Template, ...]
    gt_assignment: dict[int, int]


def _normal_template_tokens(index: int) -> list[str]:
    """Keyword skeleton for normal template `index`; unique leading keyword."""
    tokens = [_PRIMARY[index], _SECONDARY[index % len(_SECONDARY)]]
    extra = 2 + index % 3
    for j in range(extra):
        if j == extra - 1 or (index + j) % 3 == 1:
            tokens.append(_PARAM)
        else:
            tokens.append(_SECONDARY[(index * 3 + j + 5) % len(_SECONDARY)])
    return tokens


def _failure_template_tokens(index: int) -> list[str]:
    parts = _FAILURE_TEMPLATES[index % len(_FAILURE_TEMPLATES)].split()
    return [_PARAM if p == "{}" else p for p in parts]


def _fill(tokens: list[str], rng: np.random.Generator) -> str:
    out = []
    for tok in tokens:
        if tok != _PARAM:
            out.append(tok)
            continue
        kind = rng.integers(0, 4)
        if kind == 0:
            out.append(str(rng.integers(0, 100000)))
        elif kind == 1:
            out.append(f"0x{rng.integers(0, 1 << 16):04x}")
        elif kind == 2:
            out.append(f"blk_{rng.integers(1, 1 << 40)}")
        else:
            out.append(f"{rng.integers(1, 4096)}kb")
    return " ".join(out)


def _episode_starts(n_messages: int, n_episodes: int, episode_len: int,
                    rng: np.random.Generator) -> list[int]:
    """Episode k starts near corpus fraction (k + 0.5) / n_episodes, with
    jitter bounded to an eighth of the stride: successive episodes keep a gap
    far wider than any reasonable window, so a window never spans two.
    """
    if n_episodes == 0:
        return []
    stride = n_messages / n_episodes
    jitter = int(stride / 8)
    starts = []
    for k in range(n_episodes):
        base = int((k + 0.5) * stride) - episode_len // 2
        offset = int(rng.integers(-jitter, jitter + 1)) if jitter else 0
        starts.append(min(n_messages - episode_len, max(0, base + offset)))
    return starts


def synth_corpus(n_messages: int = 10000, n_normal_templates: int = 50,
                 n_episodes: int = 10, episode_len: int = 32, seed: int = 7,
                 start_ts: int = 1_000_000) -> SynthCorpus:
    if n_normal_templates > len(_PRIMARY):
        raise ValueError(f"at most {len(_PRIMARY)} normal templates supported")
    if n_messages < n_normal_templates:
        raise ValueError("need at least one message per template")
    if n_episodes and episode_len < 1:
        raise ValueError("episode_len must be positive")
    if n_episodes * episode_len * 2 > n_messages:
        raise ValueError("failure episodes would overlap")
    rng = np.random.default_rng(seed)

    normal_tokens = [_normal_template_tokens(i) for i in range(n_normal_templates)]
    n_failures = len(_FAILURE_TEMPLATES) if n_episodes else 0
    failure_tokens = [_failure_template_tokens(i) for i in range(n_failures)]

    anomaly_at: set[int] = set()
    for start in _episode_starts(n_messages, n_episodes, episode_len, rng):
        anomaly_at.update(range(start, start + episode_len))

    records = []
    assignment: dict[int, int] = {}
    supports = [0] * (n_normal_templates + n_failures)
    next_anomaly = 0
    for i in range(n_messages):
        line_no = i + 1
        if i in anomaly_at:
            tid = n_normal_templates + next_anomaly % max(n_failures, 1)
            next_anomaly += 1
            tokens = failure_tokens[tid - n_normal_templates]
            label = Label.ANOMALOUS
            verbosity = "ERROR"
        else:
            # first pass covers every template once, then uniform choice
            tid = i if i < n_normal_templates else int(rng.integers(0, n_normal_templates))
            tokens = normal_tokens[tid]
            label = Label.NORMAL
            verbosity = "INFO"
        supports[tid] += 1
        records.append(RawLogRecord(
            line_no=line_no,
            timestamp=start_ts + i,
            verbosity=verbosity,
            component=_COMPONENTS[tid % len(_COMPONENTS)],
            content=_fill(tokens, rng),
            label=label,
        ))
        assignment[line_no] = tid

    gt = []
    for tid, tokens in enumerate(normal_tokens + failure_tokens):
        if supports[tid] == 0:
            continue
        rendered = tuple(WILDCARD if t == _PARAM else t for t in tokens)
        gt.append(Template(id=tid, tokens=rendered, support=supports[tid]))

    return SynthCorpus(records=tuple(records), gt_templates=tuple(gt),
                       gt_assignment=assignment)
