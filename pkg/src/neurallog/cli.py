"""Command-line surface: adapt, study, parse, train, detect, evaluate.

Configuration comes from defaults, then an optional JSON config file, then
command-line flags, in increasing precedence. Every command writes a run
manifest (config, seed, sha256 of each input) next to its artifacts so a run
can be reproduced exactly; manifests carry no timestamps.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass, field, fields

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

MODES = ("raw", "template", "index")
SPLIT_MODES = ("chronological", "random-by-session")
PARSERS = ("drain", "spell")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    dataset: str | None = None
    adapter: str = "generic"
    train_frac: float = 0.8
    split_mode: str = "chronological"
    session_pattern: str | None = None
    window_len: int = 20
    window_step: int = 1
    mode: str = "raw"
    embeddings: str | None = None
    miss_policy: str = "error"
    vocab: str | None = None
    vocab_size: int = 500
    stopwords: str | None = None
    use_stopwords: bool = True
    parser: str = "drain"
    depth: int = 4
    sim_threshold: float = 0.4
    max_children: int = 100
    tau: float = 0.5
    threshold: float = 0.5
    val_frac: float = 0.1
    seed: int = 0
    out: str = "out"
    model: dict = field(default_factory=dict)
    train: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.split_mode not in SPLIT_MODES:
            raise UsageError(f"unknown split mode {self.split_mode!r}")
        if self.parser not in PARSERS:
            raise UsageError(f"unknown parser {self.parser!r}")
        if self.mode == "index" and self.embeddings:
            raise UsageError("index mode derives vectors from template ids and "
                             "cannot use an embedding table")
        if not 0.0 < self.train_frac < 1.0:
            raise UsageError("--train-frac must be strictly between 0 and 1")
        if not 0.0 < self.val_frac < 1.0:
            raise UsageError("val_frac must be strictly between 0 and 1")
        if self.window_len < 1 or self.window_step < 1:
            raise UsageError("--window-len and --window-step must be positive")
        if self.miss_policy not in ("error", "zero", "trainable-fallback"):
            raise UsageError(f"unknown miss policy {self.miss_policy!r}")


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}
_MODEL_FLAGS = ("dim", "heads", "ffn_size", "layers", "dropout", "seq_len")
_TRAIN_FLAGS = ("lr", "batch_size", "max_epochs", "patience", "weight_decay")


def load_run_config(config_path: str | None, flag_values: dict) -> RunConfig:
    merged: dict = {}
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{config_path}: invalid JSON config: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError(f"{config_path}: config must be a JSON object")
        for key, value in file_cfg.items():
            if key not in _CONFIG_KEYS:
                raise UsageError(f"{config_path}: unknown config key {key!r}")
            merged[key] = value

    model = dict(merged.get("model", {}))
    train = dict(merged.get("train", {}))
    for key, value in flag_values.items():
        if value is None:
            continue
        if key in _MODEL_FLAGS:
            model[key] = value
        elif key in _TRAIN_FLAGS:
            train[key] = value
        elif key in _CONFIG_KEYS:
            merged[key] = value
    merged["model"] = model
    merged["train"] = train

    cfg = RunConfig(**merged)
    cfg.validate()
    return cfg


def _apply_thread_cap() -> None:
    cap = os.environ.get("NEURALLOG_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                    "NUMEXPR_NUM_THREADS"):
            os.environ.setdefault(var, cap)


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_manifest(out_dir: str, command: str, cfg: RunConfig, inputs) -> None:
    manifest = {
        "command": command,
        "config": asdict(cfg),
        "seed": cfg.seed,
        "inputs": {str(p): _sha256(p) for p in inputs if p and os.path.exists(str(p))},
    }
    path = os.path.join(out_dir, f"{command}.manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _require(cfg_value, flag: str):
    if not cfg_value:
        raise UsageError(f"missing required {flag}")
    return cfg_value


def _stopword_set(cfg: RunConfig):
    from .preprocess import DEFAULT_STOPWORDS, load_stopwords

    if not cfg.use_stopwords:
        return frozenset()
    if cfg.stopwords:
        return load_stopwords(cfg.stopwords)
    return DEFAULT_STOPWORDS


def _message_tokens(record, stopwords):
    from .preprocess import preprocess_message

    return preprocess_message(record.header_and_content(), stopwords=stopwords,
                              source_line_no=record.line_no)


def _parse_records(records, cfg: RunConfig):
    from .parsers import DrainConfig, drain_parse, spell_parse

    if cfg.parser == "drain":
        config = DrainConfig(depth=cfg.depth, similarity_threshold=cfg.sim_threshold,
                             max_children=cfg.max_children)
        return drain_parse(records, config)
    return spell_parse(records, cfg.tau)


def cmd_adapt(cfg: RunConfig) -> int:
    from .ingest import ADAPTERS, write_normalized

    dataset = _require(cfg.dataset, "--dataset")
    if cfg.adapter not in ADAPTERS:
        raise UsageError(f"unknown adapter {cfg.adapter!r}; "
                         f"expected one of {sorted(ADAPTERS)}")
    os.makedirs(cfg.out, exist_ok=True)
    reject_path = os.path.join(cfg.out, "normalized.rejects.tsv")
    records, rejected = ADAPTERS[cfg.adapter](dataset, reject_path=reject_path)
    out_path = os.path.join(cfg.out, "normalized.tsv")
    write_normalized(records, out_path)
    _write_manifest(cfg.out, "adapt", cfg, [dataset])
    print(f"adapted {len(records)} records ({rejected} rejected) -> {out_path}")
    return EXIT_OK


def cmd_study(cfg: RunConfig, split_fracs: str, gt_templates_path: str | None) -> int:
    from .core import LabelSet
    from .figures import oov_sweep_figure
    from .ingest import SplitSpec, chronological_split, read_normalized, sort_records
    from .parsers import load_templates
    from .study import (OOV_TSV_HEADER, ambiguous_templates, extra_event_rate,
                        format_oov_table, oov_stats, oov_tsv_row)

    dataset = _require(cfg.dataset, "--dataset")
    try:
        fracs = [float(v) for v in split_fracs.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --split-fracs value {split_fracs!r}") from None
    if not fracs:
        raise UsageError("--split-fracs must name at least one fraction")

    records = sort_records(read_normalized(dataset))
    os.makedirs(cfg.out, exist_ok=True)

    rows = []
    for frac in fracs:
        train, test = chronological_split(records, SplitSpec(train_fraction=frac))
        test_parse = _parse_records(test, cfg)
        rows.append((frac, oov_stats(train, test, test_parse)))

    tsv_path = os.path.join(cfg.out, "study.tsv")
    with open(tsv_path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(OOV_TSV_HEADER) + "\n")
        for frac, report in rows:
            fh.write("\t".join(oov_tsv_row(frac, report)) + "\n")
    fig_path = os.path.join(cfg.out, "study.png")
    oov_sweep_figure(rows, fig_path)
    print(format_oov_table(rows))

    inputs = [dataset]
    if gt_templates_path:
        inputs.append(gt_templates_path)
        gt = load_templates(gt_templates_path)
        parsed = _parse_records(records, cfg)
        rate, offenders = extra_event_rate(parsed, gt)
        with open(os.path.join(cfg.out, "extra_events.tsv"), "w", encoding="utf-8") as fh:
            fh.write("extra_event_rate\t{:.6f}\n".format(rate))
            fh.write("template_id\trendered\tsupport\n")
            for template in offenders:
                fh.write(f"{template.id}\t{template.rendered()}\t{template.support}\n")
        labels = LabelSet.from_records(records)
        ambiguous = ambiguous_templates(parsed, labels)
        with open(os.path.join(cfg.out, "ambiguous.tsv"), "w", encoding="utf-8") as fh:
            fh.write("template_id\trendered\tnormal_count\tanomalous_count\n")
            for template, n_normal, n_anomalous in ambiguous:
                fh.write(f"{template.id}\t{template.rendered()}\t"
                         f"{n_normal}\t{n_anomalous}\n")
        print(f"extra event rate {rate:.4f}; {len(ambiguous)} ambiguous templates")

    _write_manifest(cfg.out, "study", cfg, inputs)
    print(f"wrote {tsv_path} and {fig_path}")
    return EXIT_OK


def cmd_parse(cfg: RunConfig) -> int:
    from .ingest import read_normalized, sort_records
    from .parsers import save_assignment, save_templates

    dataset = _require(cfg.dataset, "--dataset")
    records = sort_records(read_normalized(dataset))
    result = _parse_records(records, cfg)
    os.makedirs(cfg.out, exist_ok=True)
    templates_path = os.path.join(cfg.out, "templates.csv")
    assignment_path = os.path.join(cfg.out, "assignment.csv")
    save_templates(result.templates, templates_path)
    save_assignment(result.assignment, assignment_path)
    _write_manifest(cfg.out, "parse", cfg, [dataset])
    print(f"parsed {len(records)} records into {len(result.templates)} templates")
    return EXIT_OK


def _build_sequences(records, cfg: RunConfig):
    from .ingest import (DEFAULT_SESSION_PATTERN, WindowSpec, group_by_session,
                         sliding_windows, sort_records)

    records = sort_records(records)
    if cfg.session_pattern:
        pattern = cfg.session_pattern
        if pattern == "hdfs":
            pattern = DEFAULT_SESSION_PATTERN
        sequences, dropped = group_by_session(records, pattern)
        if dropped:
            print(f"note: {dropped} records had no session id", file=sys.stderr)
        return records, sequences
    spec = WindowSpec(length=cfg.window_len, step=cfg.window_step)
    return records, sliding_windows(records, spec)


def _split_sequences(sequences, cfg: RunConfig):
    from .ingest import SplitSpec, chronological_split

    mode = "random_by_session" if cfg.split_mode == "random-by-session" else "chronological"
    spec = SplitSpec(train_fraction=cfg.train_frac, mode=mode, seed=cfg.seed)
    return chronological_split(sequences, spec)


def _model_config(cfg: RunConfig):
    from .transformer import ModelConfig

    settings = dict(cfg.model)
    settings.setdefault("seq_len", cfg.window_len)
    try:
        return ModelConfig(**settings)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad model config: {exc}") from None


def _train_config(cfg: RunConfig):
    from .transformer import TrainConfig

    try:
        return TrainConfig(seed=cfg.seed, **cfg.train)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad train config: {exc}") from None


class _Embedding:
    """Per-mode window vectorization shared by train and detect."""

    def __init__(self, cfg: RunConfig, model_config, train_seqs,
                 parsed, embed_rows=None):
        import numpy as np

        from .embed import (MISS_FALLBACK, SubwordEmbeddingMatrix, TableEmbedder,
                            TrainableEmbedder, load_embedding_table)
        from .wordpiece import load_vocab, train_vocab

        self.cfg = cfg
        self.model_config = model_config
        self.parsed = parsed
        self.stopwords = _stopword_set(cfg)
        self.trainable = None
        self.table = None
        self.vocab = None
        self._tokens_cache: dict[int, tuple] = {}

        if cfg.mode == "index":
            return
        needs_trainable = not cfg.embeddings or cfg.miss_policy == MISS_FALLBACK
        if needs_trainable:
            if cfg.vocab:
                self.vocab = load_vocab(cfg.vocab)
            else:
                seen: dict[int, object] = {}
                for seq in train_seqs:
                    for record in seq.records:
                        if record.line_no not in seen:
                            seen[record.line_no] = self._tokens(record)
                self.vocab = train_vocab(list(seen.values()), cfg.vocab_size)
            if embed_rows is not None:
                matrix = SubwordEmbeddingMatrix(self.vocab,
                                                np.asarray(embed_rows,
                                                           dtype=model_config.np_dtype))
                self.trainable = TrainableEmbedder(matrix)
            else:
                self.trainable = TrainableEmbedder.init_seeded(
                    self.vocab, model_config.dim, cfg.seed)
        if cfg.embeddings:
            table = load_embedding_table(cfg.embeddings)
            if table.dim != model_config.dim:
                raise UsageError(f"embedding table dim {table.dim} does not match "
                                 f"model dim {model_config.dim}")
            self.table = TableEmbedder(table, miss_policy=cfg.miss_policy,
                                       fallback=self.trainable)

    def _tokens(self, record):
        from .preprocess import preprocess_message

        cached = self._tokens_cache.get(record.line_no)
        if cached is not None:
            return cached
        if self.cfg.mode == "template":
            rendered = self.parsed.template_by_id(
                self.parsed.assignment[record.line_no]).rendered()
            tokens = preprocess_message(rendered, stopwords=self.stopwords,
                                        source_line_no=record.line_no)
        else:
            tokens = _message_tokens(record, self.stopwords)
        self._tokens_cache[record.line_no] = tokens
        return tokens

    @property
    def joint_training(self) -> bool:
        return self.table is None and self.trainable is not None

    def train_windows(self, sequences):
        """Windows in the representation train() expects for this provider."""
        if self.joint_training:
            return [([self.trainable.piece_indices(self._tokens(r))
                      for r in seq.records[:self.model_config.seq_len]], seq.label)
                    for seq in sequences]
        return [(self.window_array(seq), seq.label) for seq in sequences]

    def window_array(self, seq):
        import numpy as np

        from .embed import embed_message_avg, template_index_embedding
        from .wordpiece import encode_message

        vectors = []
        for record in seq.records[:self.model_config.seq_len]:
            if self.cfg.mode == "index":
                tid = self.parsed.assignment[record.line_no]
                vectors.append(template_index_embedding(
                    tid, len(self.parsed.templates), self.model_config.dim))
            elif self.table is not None:
                vectors.append(self.table.embed_tokens(self._tokens(record)))
            else:
                pieces = encode_message(self._tokens(record), self.vocab)
                vectors.append(embed_message_avg(pieces, self.trainable.matrix))
        return np.stack(vectors) if vectors else np.zeros(
            (0, self.model_config.dim))


def _vocab_sha256(vocab) -> str | None:
    if vocab is None:
        return None
    digest = hashlib.sha256()
    for piece in vocab.pieces:
        digest.update(piece.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


def cmd_train(cfg: RunConfig) -> int:
    from .figures import training_history_figure
    from .ingest import read_normalized
    from .parsers import save_templates
    from .transformer import save_checkpoint, train
    from .wordpiece import save_vocab

    dataset = _require(cfg.dataset, "--dataset")
    records, sequences = _build_sequences(read_normalized(dataset), cfg)
    train_seqs, _ = _split_sequences(sequences, cfg)
    if len(train_seqs) < 2:
        raise UsageError("training split has fewer than 2 sequences; "
                         "lower --train-frac granularity or supply more data")
    n_val = max(1, int(len(train_seqs) * cfg.val_frac))
    fit_seqs, val_seqs = train_seqs[:-n_val], train_seqs[-n_val:]
    if not fit_seqs:
        raise UsageError("validation split consumed the whole training set")

    parsed = _parse_records(records, cfg) if cfg.mode != "raw" else None
    model_config = _model_config(cfg)
    train_config = _train_config(cfg)
    embedding = _Embedding(cfg, model_config, fit_seqs, parsed)

    fit_data = embedding.train_windows(fit_seqs)
    val_data = embedding.train_windows(val_seqs)
    embedder = embedding.trainable if embedding.joint_training else None
    params, history = train(fit_data, val_data, model_config, train_config,
                            embedder=embedder)
    for row in history:
        print(f"epoch {row['epoch']}: train_loss={row['train_loss']:.4f} "
              f"val_loss={row['val_loss']:.4f} val_f1={row['val_f1']:.4f}")

    os.makedirs(cfg.out, exist_ok=True)
    inputs = [dataset, cfg.stopwords, cfg.embeddings, cfg.vocab]
    if embedding.vocab is not None and not cfg.vocab:
        vocab_path = os.path.join(cfg.out, "vocab.txt")
        save_vocab(embedding.vocab, vocab_path)
        print(f"wrote {vocab_path}")
    if parsed is not None:
        templates_path = os.path.join(cfg.out, "templates.csv")
        save_templates(parsed.templates, templates_path)
    checkpoint_path = os.path.join(cfg.out, "checkpoint.npz")
    save_checkpoint(checkpoint_path, params, model_config, history=history,
                    vocab_hash=_vocab_sha256(embedding.vocab),
                    train_config=train_config)
    history_fig = os.path.join(cfg.out, "history.png")
    training_history_figure(history, history_fig)
    _write_manifest(cfg.out, "train", cfg, inputs)
    print(f"wrote {checkpoint_path} and {history_fig}")
    return EXIT_OK


def cmd_detect(cfg: RunConfig, checkpoint_path: str, on: str) -> int:
    from .ingest import read_normalized
    from .transformer import detect_probs, load_checkpoint

    dataset = _require(cfg.dataset, "--dataset")
    params, model_config, _meta = load_checkpoint(checkpoint_path)
    embed_rows = params.pop("embed_rows", None)

    records, sequences = _build_sequences(read_normalized(dataset), cfg)
    train_seqs, test_seqs = _split_sequences(sequences, cfg)
    chosen = {"train": train_seqs, "test": test_seqs,
              "all": list(sequences)}.get(on)
    if chosen is None:
        raise UsageError(f"unknown --on value {on!r}")

    parsed = _parse_records(records, cfg) if cfg.mode != "raw" else None
    if embed_rows is not None and not cfg.vocab:
        raise UsageError("checkpoint carries a trained embedding matrix; "
                         "pass --vocab with the vocabulary saved at training time")
    embedding = _Embedding(cfg, model_config, train_seqs, parsed,
                           embed_rows=embed_rows)

    windows = [embedding.window_array(seq) for seq in chosen]
    probs = detect_probs(windows, params, model_config)

    os.makedirs(cfg.out, exist_ok=True)
    predictions_path = os.path.join(cfg.out, "predictions.tsv")
    with open(predictions_path, "w", encoding="utf-8") as fh:
        fh.write("origin\ttruth\tp_anomalous\tprediction\n")
        for seq, p in zip(chosen, probs[:, 1]):
            pred = 1 if p >= cfg.threshold else 0
            origin = f"{seq.origin[0]}:{seq.origin[1]}"
            fh.write(f"{origin}\t{int(seq.label)}\t{p:.9f}\t{pred}\n")
    anomalies = int(sum(1 for p in probs[:, 1] if p >= cfg.threshold))
    _write_manifest(cfg.out, "detect", cfg,
                    [dataset, checkpoint_path, cfg.vocab, cfg.embeddings])
    print(f"{anomalies}/{len(chosen)} sequences flagged anomalous "
          f"(threshold {cfg.threshold})")
    print(f"wrote {predictions_path}")
    return EXIT_OK


def cmd_evaluate(cfg: RunConfig, predictions_path: str, dataset_name: str | None) -> int:
    from .core import DataError, Label
    from .evaluation import confusion, eval_row, precision_recall_f1, write_eval_report
    from .figures import evaluation_figure

    preds = []
    truths = []
    with open(predictions_path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        try:
            truth_col = header.index("truth")
            pred_col = header.index("prediction")
        except ValueError:
            raise DataError(f"{predictions_path}: missing truth/prediction columns") from None
        for line_no, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != len(header):
                raise DataError(f"{predictions_path} line {line_no}: "
                                f"expected {len(header)} fields")
            truths.append(Label(int(parts[truth_col])))
            preds.append(Label(int(parts[pred_col])))

    counts = confusion(preds, truths)
    precision, recall, f1 = precision_recall_f1(counts)
    name = dataset_name or os.path.basename(cfg.dataset or predictions_path)
    row = eval_row(name, cfg.mode, counts)
    os.makedirs(cfg.out, exist_ok=True)
    report_path = os.path.join(cfg.out, "evaluation.tsv")
    write_eval_report([row], report_path)
    fig_path = os.path.join(cfg.out, "evaluation.png")
    evaluation_figure([row], fig_path)
    _write_manifest(cfg.out, "evaluate", cfg, [predictions_path])
    print(f"precision={precision:.4f} recall={recall:.4f} f1={f1:.4f} "
          f"(tp={counts.tp} fp={counts.fp} fn={counts.fn} tn={counts.tn})")
    print(f"wrote {report_path} and {fig_path}")
    return EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--dataset")
    sub.add_argument("--adapter")
    sub.add_argument("--train-frac", type=float, dest="train_frac")
    sub.add_argument("--window-len", type=int, dest="window_len")
    sub.add_argument("--window-step", type=int, dest="window_step")
    sub.add_argument("--mode", choices=MODES)
    sub.add_argument("--embeddings")
    sub.add_argument("--vocab")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--out")
    sub.add_argument("--config")
    sub.add_argument("--split-mode", choices=SPLIT_MODES, dest="split_mode")
    sub.add_argument("--session-pattern", dest="session_pattern")
    sub.add_argument("--parser", choices=PARSERS)
    sub.add_argument("--depth", type=int)
    sub.add_argument("--sim-threshold", type=float, dest="sim_threshold")
    sub.add_argument("--max-children", type=int, dest="max_children")
    sub.add_argument("--tau", type=float)
    sub.add_argument("--threshold", type=float)
    sub.add_argument("--val-frac", type=float, dest="val_frac")
    sub.add_argument("--vocab-size", type=int, dest="vocab_size")
    sub.add_argument("--stopwords")
    sub.add_argument("--no-stopwords", action="store_false", dest="use_stopwords",
                     default=None)
    sub.add_argument("--miss-policy", dest="miss_policy",
                     choices=("error", "zero", "trainable-fallback"))
    sub.add_argument("--dim", type=int)
    sub.add_argument("--heads", type=int)
    sub.add_argument("--ffn-size", type=int, dest="ffn_size")
    sub.add_argument("--layers", type=int)
    sub.add_argument("--dropout", type=float)
    sub.add_argument("--seq-len", type=int, dest="seq_len")
    sub.add_argument("--lr", type=float)
    sub.add_argument("--batch-size", type=int, dest="batch_size")
    sub.add_argument("--max-epochs", type=int, dest="max_epochs")
    sub.add_argument("--patience", type=int)
    sub.add_argument("--weight-decay", type=float, dest="weight_decay")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="neurallog",
                             description="Log anomaly detection toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    for name in ("adapt", "study", "parse", "train", "detect", "evaluate"):
        sub = subs.add_parser(name)
        _add_common_flags(sub)
        if name == "study":
            sub.add_argument("--split-fracs", dest="split_fracs",
                             default="0.2,0.4,0.6,0.8")
            sub.add_argument("--gt-templates", dest="gt_templates")
        if name == "detect":
            sub.add_argument("--checkpoint", required=True)
            sub.add_argument("--on", choices=("train", "test", "all"), default="test")
        if name == "evaluate":
            sub.add_argument("--predictions", required=True)
            sub.add_argument("--dataset-name", dest="dataset_name")
    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        flag_values = {k: v for k, v in vars(args).items()
                       if k not in ("command", "config", "split_fracs",
                                    "gt_templates", "checkpoint", "on",
                                    "predictions", "dataset_name")}
        cfg = load_run_config(args.config, flag_values)
        if args.command == "adapt":
            return cmd_adapt(cfg)
        if args.command == "study":
            return cmd_study(cfg, args.split_fracs, args.gt_templates)
        if args.command == "parse":
            return cmd_parse(cfg)
        if args.command == "train":
            return cmd_train(cfg)
        if args.command == "detect":
            return cmd_detect(cfg, args.checkpoint, args.on)
        if args.command == "evaluate":
            return cmd_evaluate(cfg, args.predictions, args.dataset_name)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        from .core import ConfigError, DataError

        if isinstance(exc, (ConfigError, ValueError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if isinstance(exc, (DataError, OSError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DATA
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
