"""Figure rendering for study sweeps, training history, and evaluation
reports. All figures save through the Agg backend with PNG metadata
stripped, so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_SAVE_KWARGS = {"dpi": 120, "metadata": {"Date": None}}


def oov_sweep_figure(rows, path) -> None:
    """rows: list of (train_fraction, OovReport) in sweep order."""
    fracs = [frac for frac, _ in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(fracs, [r.unique_word_oov_ratio for _, r in rows],
            marker="o", label="unique words")
    ax.plot(fracs, [r.message_oov_ratio for _, r in rows],
            marker="s", label="messages")
    template_points = [(f, r.template_oov_ratio) for f, r in rows
                       if r.template_oov_ratio is not None]
    if template_points:
        ax.plot([f for f, _ in template_points], [v for _, v in template_points],
                marker="^", label="templates")
    ax.set_xlabel("train fraction")
    ax.set_ylabel("OOV ratio")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def training_history_figure(history, path) -> None:
    """history: list of per-epoch dicts with train_loss, val_loss, val_f1."""
    epochs = [row["epoch"] for row in history]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(epochs, [row["train_loss"] for row in history], marker="o",
            label="train loss")
    ax.plot(epochs, [row["val_loss"] for row in history], marker="s",
            label="val loss")
    ax.set_xlabel("epoch")
    ax.set_ylabel("cross-entropy")
    ax.grid(True, alpha=0.3)
    ax2 = ax.twinx()
    ax2.plot(epochs, [row["val_f1"] for row in history], marker="^",
             color="tab:green", label="val F1")
    ax2.set_ylabel("F1")
    ax2.set_ylim(-0.02, 1.02)
    lines1, labels1 = ax.get_legend_handles_labels()
    lines2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(lines1 + lines2, labels1 + labels2, loc="center right")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def evaluation_figure(rows, path) -> None:
    """rows: evaluation report tuples (dataset, mode, precision, recall, f1, ...)."""
    names = [f"{row[0]}/{row[1]}" for row in rows]
    precision = [float(row[2]) for row in rows]
    recall = [float(row[3]) for row in rows]
    f1 = [float(row[4]) for row in rows]
    x = range(len(rows))
    width = 0.27
    fig, ax = plt.subplots(figsize=(max(6.0, 1.8 * len(rows)), 4.0))
    ax.bar([i - width for i in x], precision, width, label="precision")
    ax.bar(list(x), recall, width, label="recall")
    ax.bar([i + width for i in x], f1, width, label="F1")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylim(0, 1.05)
    ax.grid(True, axis="y", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
