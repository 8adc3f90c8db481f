"""Detection metrics and the log-count-vector logistic regression baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Label

EVAL_TSV_HEADER = ("dataset", "mode", "precision", "recall", "f1",
                   "tp", "fp", "fn", "tn")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(predictions, truths) -> ConfusionCounts:
    predictions = list(predictions)
    truths = list(truths)
    if len(predictions) != len(truths):
        raise ValueError(f"length mismatch: {len(predictions)} predictions, "
                         f"{len(truths)} truths")
    tp = fp = fn = tn = 0
    for pred, truth in zip(predictions, truths):
        if pred is Label.ANOMALOUS:
            if truth is Label.ANOMALOUS:
                tp += 1
            else:
                fp += 1
        else:
            if truth is Label.ANOMALOUS:
                fn += 1
            else:
                tn += 1
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def precision_recall_f1(c: ConfusionCounts) -> tuple[float, float, float]:
    """0/0 is defined as 0 so degenerate sets yield metrics, not NaN."""
    precision = c.tp / (c.tp + c.fp) if (c.tp + c.fp) else 0.0
    recall = c.tp / (c.tp + c.fn) if (c.tp + c.fn) else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return precision, recall, f1


@dataclass(frozen=True)
class LrConfig:
    lr: float = 0.1
    epochs: int = 500
    l2: float = 1e-4

    def __post_init__(self):
        if self.lr <= 0 or self.epochs < 1 or self.l2 < 0:
            raise ValueError("lr must be positive, epochs >= 1, l2 >= 0")


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def lr_train(count_vectors, labels, config: LrConfig = LrConfig()) -> np.ndarray:
    """Full-batch gradient descent; returns weights with the bias last.
    L2 regularization applies to the weights only.
    """
    x = np.asarray(count_vectors, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("count_vectors must be a 2-D array-like")
    y = np.array([int(lab) for lab in labels], dtype=np.float64)
    if x.shape[0] != y.shape[0]:
        raise ValueError("count_vectors and labels disagree in length")
    n, d = x.shape
    w = np.zeros(d)
    b = 0.0
    for _ in range(config.epochs):
        p = _sigmoid(x @ w + b)
        err = p - y
        w -= config.lr * (x.T @ err / n + config.l2 * w)
        b -= config.lr * float(err.mean())
    return np.concatenate([w, [b]])


def lr_predict(weights: np.ndarray, vector) -> Label:
    v = np.asarray(vector, dtype=np.float64)
    if v.shape[0] != weights.shape[0] - 1:
        raise ValueError(f"vector has dimension {v.shape[0]}, "
                         f"weights expect {weights.shape[0] - 1}")
    z = float(v @ weights[:-1] + weights[-1])
    return Label.ANOMALOUS if _sigmoid(z) >= 0.5 else Label.NORMAL


def write_eval_report(rows, path) -> None:
    """rows: iterables matching EVAL_TSV_HEADER order."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(EVAL_TSV_HEADER) + "\n")
        for row in rows:
            fh.write("\t".join(str(v) for v in row) + "\n")


def eval_row(dataset: str, mode: str, c: ConfusionCounts) -> tuple:
    precision, recall, f1 = precision_recall_f1(c)
    return (dataset, mode, f"{precision:.6f}", f"{recall:.6f}", f"{f1:.6f}",
            c.tp, c.fp, c.fn, c.tn)
