"""End-to-end command-line flows on a small synthetic corpus."""

import json

import pytest

from neurallog.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from neurallog.ingest import write_normalized
from neurallog.parsers import load_assignment, save_templates
from neurallog.synth import synth_corpus

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture(scope="module")
def corpus_path(tmp_path_factory):
    corpus = synth_corpus(n_messages=300, n_normal_templates=8,
                          n_episodes=2, episode_len=10, seed=5)
    path = tmp_path_factory.mktemp("data") / "normalized.tsv"
    write_normalized(corpus.records, path)
    return path


@pytest.fixture(scope="module")
def gt_templates_path(tmp_path_factory):
    corpus = synth_corpus(n_messages=300, n_normal_templates=8,
                          n_episodes=2, episode_len=10, seed=5)
    path = tmp_path_factory.mktemp("data") / "gt_templates.csv"
    save_templates(corpus.gt_templates, path)
    return path


TRAIN_FLAGS = ["--window-len", "10", "--dim", "8", "--heads", "2",
               "--ffn-size", "16", "--max-epochs", "2", "--patience", "2",
               "--vocab-size", "120", "--seed", "0"]


@pytest.fixture(scope="module")
def trained_dir(tmp_path_factory, corpus_path):
    out = tmp_path_factory.mktemp("trained")
    code = main(["train", "--dataset", str(corpus_path), "--out", str(out),
                 *TRAIN_FLAGS])
    assert code == EXIT_OK
    return out


class TestUsageErrors:
    def test_no_command(self):
        assert main([]) == EXIT_USAGE

    def test_train_requires_dataset(self):
        assert main(["train"]) == EXIT_USAGE

    def test_index_mode_conflicts_with_embeddings(self, corpus_path):
        code = main(["train", "--dataset", str(corpus_path), "--mode", "index",
                     "--embeddings", "whatever.tsv"])
        assert code == EXIT_USAGE

    def test_bad_train_frac(self, corpus_path):
        code = main(["train", "--dataset", str(corpus_path),
                     "--train-frac", "1.5"])
        assert code == EXIT_USAGE

    def test_unknown_adapter(self, corpus_path, tmp_path):
        code = main(["adapt", "--dataset", str(corpus_path),
                     "--adapter", "nosuch", "--out", str(tmp_path / "o")])
        assert code == EXIT_USAGE

    def test_missing_dataset_file_is_data_error(self, tmp_path):
        code = main(["parse", "--dataset", str(tmp_path / "absent.tsv"),
                     "--out", str(tmp_path / "o")])
        assert code == EXIT_DATA


class TestConfigFile:
    def test_flags_override_config_file(self, corpus_path, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"window_len": 5, "seed": 3}),
                          encoding="utf-8")
        out = tmp_path / "out"
        code = main(["parse", "--dataset", str(corpus_path), "--out", str(out),
                     "--config", str(config), "--window-len", "10"])
        assert code == EXIT_OK
        manifest = json.loads((out / "parse.manifest.json").read_text())
        assert manifest["config"]["window_len"] == 10
        assert manifest["config"]["seed"] == 3

    def test_unknown_config_key(self, corpus_path, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"windw_len": 5}), encoding="utf-8")
        code = main(["parse", "--dataset", str(corpus_path),
                     "--out", str(tmp_path / "o"), "--config", str(config)])
        assert code == EXIT_USAGE

    def test_invalid_json(self, corpus_path, tmp_path):
        config = tmp_path / "run.json"
        config.write_text("{not json", encoding="utf-8")
        code = main(["parse", "--dataset", str(corpus_path),
                     "--out", str(tmp_path / "o"), "--config", str(config)])
        assert code == EXIT_USAGE


class TestAdapt:
    def test_bgl_style_input(self, tmp_path):
        raw = tmp_path / "raw.log"
        raw.write_text(
            "- 1117838570 2005.06.03 R02-M1-N0-C:J12-U11 2005-06-03-15.42.50.363779 "
            "R02-M1-N0-C:J12-U11 RAS KERNEL INFO instruction cache parity error corrected\n"
            "KERNDTLB 1117838571 2005.06.03 R02-M1-N0-C:J12-U11 "
            "2005-06-03-15.42.51.000000 R02-M1-N0-C:J12-U11 RAS KERNEL FATAL "
            "data TLB error interrupt\n"
            "short line\n",
            encoding="utf-8")
        out = tmp_path / "out"
        code = main(["adapt", "--dataset", str(raw), "--adapter", "bgl",
                     "--out", str(out)])
        assert code == EXIT_OK
        lines = (out / "normalized.tsv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        assert lines[0].split("\t")[0] == "0"
        assert lines[1].split("\t")[0] == "1"
        rejects = (out / "normalized.rejects.tsv").read_text(encoding="utf-8")
        assert "too few fields" in rejects
        manifest = json.loads((out / "adapt.manifest.json").read_text())
        (digest,) = manifest["inputs"].values()
        assert len(digest) == 64


class TestParse:
    def test_writes_templates_and_assignment(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        code = main(["parse", "--dataset", str(corpus_path), "--out", str(out)])
        assert code == EXIT_OK
        assignment = load_assignment(out / "assignment.csv")
        assert len(assignment) == 300
        assert (out / "templates.csv").exists()

    def test_spell_parser_selectable(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        code = main(["parse", "--dataset", str(corpus_path), "--out", str(out),
                     "--parser", "spell", "--tau", "0.6"])
        assert code == EXIT_OK
        assert load_assignment(out / "assignment.csv")


class TestStudy:
    def test_sweep_outputs(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        code = main(["study", "--dataset", str(corpus_path), "--out", str(out),
                     "--split-fracs", "0.25,0.5"])
        assert code == EXIT_OK
        lines = (out / "study.tsv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("train_frac\t")
        assert (out / "study.png").read_bytes()[:8] == PNG_MAGIC

    def test_default_fractions_give_four_rows(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        assert main(["study", "--dataset", str(corpus_path),
                     "--out", str(out)]) == EXIT_OK
        lines = (out / "study.tsv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 5

    def test_ground_truth_reports(self, corpus_path, gt_templates_path, tmp_path):
        out = tmp_path / "out"
        code = main(["study", "--dataset", str(corpus_path), "--out", str(out),
                     "--split-fracs", "0.5",
                     "--gt-templates", str(gt_templates_path)])
        assert code == EXIT_OK
        extra = (out / "extra_events.tsv").read_text(encoding="utf-8")
        assert extra.startswith("extra_event_rate\t")
        assert (out / "ambiguous.tsv").read_text(encoding="utf-8").splitlines()

    def test_bad_split_fracs(self, corpus_path, tmp_path):
        code = main(["study", "--dataset", str(corpus_path),
                     "--out", str(tmp_path / "o"), "--split-fracs", "abc"])
        assert code == EXIT_USAGE


class TestTrain:
    def test_artifacts(self, trained_dir):
        assert (trained_dir / "checkpoint.npz").exists()
        assert (trained_dir / "vocab.txt").exists()
        assert (trained_dir / "history.png").read_bytes()[:8] == PNG_MAGIC
        manifest = json.loads((trained_dir / "train.manifest.json").read_text())
        assert manifest["command"] == "train"
        assert manifest["config"]["model"]["dim"] == 8

    def test_checkpoint_loads(self, trained_dir):
        from neurallog.transformer import load_checkpoint

        params, config, meta = load_checkpoint(trained_dir / "checkpoint.npz")
        assert config.dim == 8
        assert "embed_rows" in params
        assert meta["vocab_hash"]

    def test_index_mode(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        code = main(["train", "--dataset", str(corpus_path), "--out", str(out),
                     "--mode", "index", "--window-len", "10", "--dim", "8",
                     "--heads", "2", "--ffn-size", "16", "--max-epochs", "1",
                     "--patience", "1", "--seed", "0"])
        assert code == EXIT_OK
        assert (out / "templates.csv").exists()


class TestDetect:
    def test_joint_checkpoint_requires_vocab(self, corpus_path, trained_dir,
                                             tmp_path):
        code = main(["detect", "--dataset", str(corpus_path),
                     "--checkpoint", str(trained_dir / "checkpoint.npz"),
                     "--out", str(tmp_path / "o"), "--window-len", "10"])
        assert code == EXIT_USAGE

    def test_predictions_cover_test_split(self, corpus_path, trained_dir,
                                          tmp_path):
        out = tmp_path / "out"
        code = main(["detect", "--dataset", str(corpus_path),
                     "--checkpoint", str(trained_dir / "checkpoint.npz"),
                     "--vocab", str(trained_dir / "vocab.txt"),
                     "--out", str(out), "--window-len", "10", "--seed", "0"])
        assert code == EXIT_OK
        lines = (out / "predictions.tsv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "origin\ttruth\tp_anomalous\tprediction"
        # 291 windows, chronological 80/20: 59 test sequences
        assert len(lines) == 60
        for line in lines[1:]:
            origin, truth, p, pred = line.split("\t")
            assert origin.startswith("window:")
            assert truth in "01" and pred in "01"
            assert 0.0 <= float(p) <= 1.0

    def test_same_seed_byte_identical_predictions(self, corpus_path,
                                                  tmp_path_factory):
        outputs = []
        for name in ("run_a", "run_b"):
            base = tmp_path_factory.mktemp(name)
            train_out, detect_out = base / "train", base / "detect"
            assert main(["train", "--dataset", str(corpus_path),
                         "--out", str(train_out), *TRAIN_FLAGS]) == EXIT_OK
            assert main(["detect", "--dataset", str(corpus_path),
                         "--checkpoint", str(train_out / "checkpoint.npz"),
                         "--vocab", str(train_out / "vocab.txt"),
                         "--out", str(detect_out), "--window-len", "10",
                         "--seed", "0"]) == EXIT_OK
            outputs.append((detect_out / "predictions.tsv").read_bytes())
        assert outputs[0] == outputs[1]


class TestEvaluate:
    def test_perfect_predictions(self, tmp_path):
        preds = tmp_path / "predictions.tsv"
        preds.write_text("origin\ttruth\tp_anomalous\tprediction\n"
                         "window:0\t0\t0.1\t0\n"
                         "window:1\t1\t0.9\t1\n"
                         "window:2\t0\t0.2\t0\n",
                         encoding="utf-8")
        out = tmp_path / "out"
        code = main(["evaluate", "--predictions", str(preds),
                     "--out", str(out), "--dataset-name", "toy"])
        assert code == EXIT_OK
        lines = (out / "evaluation.tsv").read_text(encoding="utf-8").splitlines()
        row = lines[1].split("\t")
        assert row[0] == "toy"
        assert row[4] == "1.000000"
        assert (out / "evaluation.png").read_bytes()[:8] == PNG_MAGIC

    def test_detect_output_feeds_evaluate(self, corpus_path, trained_dir,
                                          tmp_path):
        detect_out = tmp_path / "detect"
        assert main(["detect", "--dataset", str(corpus_path),
                     "--checkpoint", str(trained_dir / "checkpoint.npz"),
                     "--vocab", str(trained_dir / "vocab.txt"),
                     "--out", str(detect_out), "--window-len", "10",
                     "--seed", "0"]) == EXIT_OK
        out = tmp_path / "eval"
        assert main(["evaluate",
                     "--predictions", str(detect_out / "predictions.tsv"),
                     "--out", str(out)]) == EXIT_OK
        assert (out / "evaluation.tsv").exists()

    def test_missing_columns_is_data_error(self, tmp_path):
        preds = tmp_path / "predictions.tsv"
        preds.write_text("a\tb\n1\t2\n", encoding="utf-8")
        code = main(["evaluate", "--predictions", str(preds),
                     "--out", str(tmp_path / "o")])
        assert code == EXIT_DATA
