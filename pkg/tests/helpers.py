"""Independent reference implementations used as oracles by several modules.

Nothing here imports private helpers from the package; each function is a
from-scratch restatement of the contract it checks.
"""

import numpy as np

from neurallog.core import Label
from neurallog.embed import TrainableEmbedder
from neurallog.evaluation import confusion, precision_recall_f1
from neurallog.ingest import SplitSpec, WindowSpec, chronological_split, sliding_windows
from neurallog.preprocess import preprocess_message
from neurallog.synth import synth_corpus
from neurallog.transformer import ModelConfig, TrainConfig, detect, loss_and_gradients, train
from neurallog.wordpiece import train_vocab


def reference_attention(q, k, v, wo, heads, mask=None):
    """Scalar-loop multi-head attention with per-head softmax, no batching."""
    seq, dim = q.shape
    hd = dim // heads
    out_heads = np.zeros((seq, dim))
    for h in range(heads):
        sl = slice(h * hd, (h + 1) * hd)
        qh, kh, vh = q[:, sl], k[:, sl], v[:, sl]
        for i in range(seq):
            scores = np.array([qh[i] @ kh[j] / np.sqrt(hd) for j in range(seq)])
            if mask is not None:
                scores = np.where(mask, scores, -1e30)
            e = np.exp(scores - scores.max())
            w = e / e.sum()
            out_heads[i, sl] = sum(w[j] * vh[j] for j in range(seq))
    return out_heads @ wo


def fd_gradient_errors(params, batch, config, eps=1e-3):
    """Worst relative error per parameter tensor, analytic vs central FD.

    relative error = |analytic - fd| / max(1e-8, |analytic| + |fd|), checked
    at every entry of every tensor.
    """
    _, grads = loss_and_gradients(batch, params, config)

    def loss_at(p):
        value, _ = loss_and_gradients(batch, p, config)
        return value

    worst = {}
    for name, tensor in params.items():
        analytic = grads[name]
        err = 0.0
        flat = tensor.reshape(-1)
        for idx in range(flat.size):
            orig = flat[idx]
            flat[idx] = orig + eps
            up = loss_at(params)
            flat[idx] = orig - eps
            down = loss_at(params)
            flat[idx] = orig
            fd = (up - down) / (2 * eps)
            a = analytic.reshape(-1)[idx]
            err = max(err, abs(a - fd) / max(1e-8, abs(a) + abs(fd)))
        worst[name] = err
    return worst


def tiny_batch(config, seed=0, sizes=(5, 3, 5)):
    rng = np.random.default_rng(seed)
    batch = []
    for i, n in enumerate(sizes):
        window = rng.normal(scale=0.5, size=(n, config.dim))
        batch.append((window, Label.ANOMALOUS if i % 2 else Label.NORMAL))
    return batch


def run_desk_scale_pipeline(seed, n_messages=10000, n_templates=50,
                            dim=64, heads=4, ffn_size=512,
                            window_len=20, vocab_size=500):
    """Train-and-evaluate one seed of the end-to-end synthetic run: raw text,
    subword vocabulary from the train split, jointly trained embeddings,
    chronological 80/20 windows, F1 on the held-out tail.
    """
    corpus = synth_corpus(n_messages=n_messages, n_normal_templates=n_templates, seed=seed)
    tokens = {r.line_no: preprocess_message(r.header_and_content(), source_line_no=r.line_no)
              for r in corpus.records}
    windows = sliding_windows(list(corpus.records), WindowSpec(length=window_len, step=1))
    train_seqs, test_seqs = chronological_split(windows, SplitSpec(train_fraction=0.8))
    n_val = max(1, int(0.1 * len(train_seqs)))
    fit_seqs, val_seqs = train_seqs[:-n_val], train_seqs[-n_val:]

    seen = {}
    for seq in train_seqs:
        for record in seq.records:
            seen.setdefault(record.line_no, tokens[record.line_no])
    vocab = train_vocab(list(seen.values()), vocab_size)
    embedder = TrainableEmbedder.init_seeded(vocab, dim, seed)

    def as_piece_windows(seqs):
        return [([embedder.piece_indices(tokens[r.line_no])
                  for r in seq.records[:window_len]], seq.label)
                for seq in seqs]

    model_config = ModelConfig(dim=dim, heads=heads, ffn_size=ffn_size, seq_len=window_len)
    params, history = train(as_piece_windows(fit_seqs), as_piece_windows(val_seqs),
                            model_config, TrainConfig(seed=seed), embedder=embedder)

    test_windows = [np.stack([embedder.embed_tokens(tokens[r.line_no])
                              for r in seq.records[:window_len]])
                    for seq in test_seqs]
    predictions = detect(test_windows, params, model_config)
    truths = [seq.label for seq in test_seqs]
    _, _, f1 = precision_recall_f1(confusion(predictions, truths))
    return f1, history
