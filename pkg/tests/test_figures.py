"""Figure rendering: files exist, are valid PNGs, and reruns are byte-identical."""

from neurallog.evaluation import ConfusionCounts, eval_row
from neurallog.figures import (
    evaluation_figure,
    oov_sweep_figure,
    training_history_figure,
)
from neurallog.study import OovReport

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def sweep_rows():
    return [
        (0.2, OovReport(80, 100, 30, 60, oov_templates=5, templates=20)),
        (0.5, OovReport(40, 100, 12, 60, oov_templates=2, templates=20)),
        (0.8, OovReport(10, 100, 3, 60, oov_templates=0, templates=20)),
    ]


def history_rows():
    return [
        {"epoch": 1, "train_loss": 0.7, "val_loss": 0.65, "val_f1": 0.1,
         "best_epoch": 2},
        {"epoch": 2, "train_loss": 0.4, "val_loss": 0.5, "val_f1": 0.6,
         "best_epoch": 2},
        {"epoch": 3, "train_loss": 0.3, "val_loss": 0.55, "val_f1": 0.55,
         "best_epoch": 2},
    ]


def eval_rows():
    return [
        eval_row("synthetic", "window", ConfusionCounts(4, 2, 0, 3)),
        eval_row("synthetic", "session", ConfusionCounts(3, 0, 1, 5)),
    ]


def check_png(path):
    data = path.read_bytes()
    assert data[:8] == PNG_MAGIC
    assert len(data) > 1000


class TestOovSweepFigure:
    def test_renders_png(self, tmp_path):
        path = tmp_path / "sweep.png"
        oov_sweep_figure(sweep_rows(), path)
        check_png(path)

    def test_handles_missing_template_series(self, tmp_path):
        rows = [(f, OovReport(r.oov_unique_words, r.unique_words,
                              r.oov_messages, r.messages))
                for f, r in sweep_rows()]
        path = tmp_path / "sweep.png"
        oov_sweep_figure(rows, path)
        check_png(path)

    def test_rerun_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        oov_sweep_figure(sweep_rows(), a)
        oov_sweep_figure(sweep_rows(), b)
        assert a.read_bytes() == b.read_bytes()


class TestTrainingHistoryFigure:
    def test_renders_png(self, tmp_path):
        path = tmp_path / "history.png"
        training_history_figure(history_rows(), path)
        check_png(path)

    def test_single_epoch(self, tmp_path):
        path = tmp_path / "history.png"
        training_history_figure(history_rows()[:1], path)
        check_png(path)

    def test_rerun_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        training_history_figure(history_rows(), a)
        training_history_figure(history_rows(), b)
        assert a.read_bytes() == b.read_bytes()


class TestEvaluationFigure:
    def test_renders_png(self, tmp_path):
        path = tmp_path / "eval.png"
        evaluation_figure(eval_rows(), path)
        check_png(path)

    def test_rerun_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        evaluation_figure(eval_rows(), a)
        evaluation_figure(eval_rows(), b)
        assert a.read_bytes() == b.read_bytes()
