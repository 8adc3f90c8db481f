"""Sequence classifier: positional encoding, transformer encoder, pooling
head, softmax, cross-entropy, exact reverse-mode gradients, AdamW training
with early stopping, and checkpoint I/O.

All math is plain numpy. Gradients are derived by hand for every operation in
the forward graph and validated against central finite differences in the
test suite, so any change to the forward pass must update the corresponding
backward section here.

Architectural choices the contract leaves open: GELU activation in the
feed-forward block, post-norm residuals, masked mean pooling, dropout applied
to the pooled vector only, zero-vector padding excluded from attention and
pooling via the mask.
"""

from __future__ import annotations

import copy
import json
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import erf

from .core import Label
from .evaluation import confusion, precision_recall_f1

_LN_EPS = 1e-5
_MASK_FILL = -1e30


@dataclass(frozen=True)
class ModelConfig:
    dim: int = 768
    heads: int = 12
    ffn_size: int = 2048
    layers: int = 1
    dropout: float = 0.1
    seq_len: int = 20
    classes: int = 2
    positional: bool = True
    precision: str = "float64"

    def __post_init__(self):
        if self.dim < 1 or self.heads < 1 or self.ffn_size < 1 or self.layers < 1:
            raise ValueError("all model sizes must be positive")
        if self.seq_len < 1 or self.classes < 2:
            raise ValueError("seq_len must be >= 1 and classes >= 2")
        if self.dim % self.heads != 0:
            raise ValueError(f"dim {self.dim} not divisible by heads {self.heads}")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must be in [0, 1)")
        if self.precision not in ("float64", "float32"):
            raise ValueError(f"unknown precision {self.precision!r}")

    @property
    def np_dtype(self):
        return np.float64 if self.precision == "float64" else np.float32


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 3e-4
    batch_size: int = 64
    max_epochs: int = 20
    patience: int = 5
    weight_decay: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.lr <= 0:
            raise ValueError("lr must be positive")
        if self.batch_size < 1 or self.max_epochs < 1 or self.patience < 1:
            raise ValueError("batch_size, max_epochs, patience must be positive")
        if self.patience > self.max_epochs:
            raise ValueError("patience must not exceed max_epochs")
        if self.weight_decay < 0:
            raise ValueError("weight_decay must be non-negative")


def positional_encoding(seq_len: int, dim: int) -> np.ndarray:
    if dim % 2 != 0:
        raise ValueError(f"positional encoding needs an even dim, got {dim}")
    pos = np.arange(seq_len, dtype=np.float64)[:, None]
    i = np.arange(dim // 2, dtype=np.float64)[None, :]
    angles = pos / np.power(10000.0, 2.0 * i / dim)
    pe = np.zeros((seq_len, dim), dtype=np.float64)
    pe[:, 0::2] = np.sin(angles)
    pe[:, 1::2] = np.cos(angles)
    return pe


def init_params(config: ModelConfig, seed: int) -> dict[str, np.ndarray]:
    """Xavier-uniform weights, zero biases, unit layer-norm gains."""
    rng = np.random.default_rng(seed)
    dt = config.np_dtype

    def xavier(fan_in, fan_out):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-limit, limit, size=(fan_in, fan_out)).astype(dt)

    params: dict[str, np.ndarray] = {}
    d, f = config.dim, config.ffn_size
    for layer in range(config.layers):
        p = f"l{layer}."
        params[p + "wq"] = xavier(d, d)
        params[p + "wk"] = xavier(d, d)
        params[p + "wv"] = xavier(d, d)
        params[p + "wo"] = xavier(d, d)
        params[p + "ln1_g"] = np.ones(d, dtype=dt)
        params[p + "ln1_b"] = np.zeros(d, dtype=dt)
        params[p + "ffn_w1"] = xavier(d, f)
        params[p + "ffn_b1"] = np.zeros(f, dtype=dt)
        params[p + "ffn_w2"] = xavier(f, d)
        params[p + "ffn_b2"] = np.zeros(d, dtype=dt)
        params[p + "ln2_g"] = np.ones(d, dtype=dt)
        params[p + "ln2_b"] = np.zeros(d, dtype=dt)
    params["cls_w"] = xavier(d, config.classes)
    params["cls_b"] = np.zeros(config.classes, dtype=dt)
    return params


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def _gelu(u: np.ndarray) -> np.ndarray:
    return 0.5 * u * (1.0 + erf(u / np.sqrt(2.0)))


def _gelu_grad(u: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + erf(u / np.sqrt(2.0))) + u * np.exp(-0.5 * u * u) / np.sqrt(2.0 * np.pi)


def _layer_norm(x, g, b):
    mu = x.mean(axis=-1, keepdims=True)
    var = x.var(axis=-1, keepdims=True)
    inv = 1.0 / np.sqrt(var + _LN_EPS)
    xhat = (x - mu) * inv
    return xhat * g + b, (xhat, inv)

def _layer_norm_backward(dy, cache, g):
    xhat, inv = cache
    dg = (dy * xhat).sum(axis=tuple(range(dy.ndim - 1)))
    db = dy.sum(axis=tuple(range(dy.ndim - 1)))
    dxhat = dy * g
    m = dxhat.mean(axis=-1, keepdims=True)
    mx = (dxhat * xhat).mean(axis=-1, keepdims=True)
    dx = inv * (dxhat - m - xhat * mx)
    return dx, dg, db


def attention(q: np.ndarray, k: np.ndarray, v: np.ndarray, wo: np.ndarray,
              heads: int, mask: np.ndarray | None = None) -> np.ndarray:
    """Multi-head scaled dot-product attention over projected inputs.

    q, k, v: (..., seq, dim) already projected; wo: (dim, dim) output
    projection; mask: boolean (..., seq) marking valid key positions.
    """
    single = q.ndim == 2
    if single:
        q, k, v = q[None], k[None], v[None]
        if mask is not None:
            mask = mask[None]
    out, _ = _attention_forward(q, k, v, wo, heads, mask)
    return out[0] if single else out


def _split_heads(x, heads):
    b, s, d = x.shape
    return x.reshape(b, s, heads, d // heads).transpose(0, 2, 1, 3)


def _merge_heads(x):
    b, h, s, hd = x.shape
    return x.transpose(0, 2, 1, 3).reshape(b, s, h * hd)


def _attention_forward(q, k, v, wo, heads, mask):
    d = q.shape[-1]
    if k.shape != q.shape or v.shape != q.shape:
        raise ValueError("q, k, v shapes must match")
    if wo.shape != (d, d):
        raise ValueError(f"output projection must be ({d}, {d})")
    hd = d // heads
    qh, kh, vh = _split_heads(q, heads), _split_heads(k, heads), _split_heads(v, heads)
    scale = 1.0 / np.sqrt(hd)
    scores = (qh @ kh.transpose(0, 1, 3, 2)) * scale
    if mask is not None:
        scores = scores + np.where(mask[:, None, None, :], 0.0, _MASK_FILL)
    probs = _softmax(scores)
    ctx = probs @ vh
    merged = _merge_heads(ctx)
    out = merged @ wo
    cache = (qh, kh, vh, probs, merged, scale, heads)
    return out, cache


def _attention_backward(dout, cache, wo):
    qh, kh, vh, probs, merged, scale, heads = cache
    b, s, d = dout.shape
    dwo = merged.reshape(-1, d).T @ dout.reshape(-1, d)
    dmerged = dout @ wo.T
    dctx = _split_heads(dmerged, heads)
    dprobs = dctx @ vh.transpose(0, 1, 3, 2)
    dvh = probs.transpose(0, 1, 3, 2) @ dctx
    dscores = probs * (dprobs - (dprobs * probs).sum(axis=-1, keepdims=True))
    dqh = (dscores @ kh) * scale
    dkh = (dscores.transpose(0, 1, 3, 2) @ qh) * scale
    return _merge_heads(dqh), _merge_heads(dkh), _merge_heads(dvh), dwo


def _forward_cache(x, mask, params, config: ModelConfig, drop_mult=None):
    """Full forward pass keeping every intermediate needed for backward.

    x: (B, seq_len, dim); mask: (B, seq_len) bool; drop_mult: optional
    (B, dim) dropout multiplier applied to the pooled vector.
    """
    cache = {"x0": x, "mask": mask, "layers": []}
    if config.positional:
        x = x + positional_encoding(config.seq_len, config.dim).astype(x.dtype)

    for layer in range(config.layers):
        p = f"l{layer}."
        lc = {"xin": x}
        q = x @ params[p + "wq"]
        k = x @ params[p + "wk"]
        v = x @ params[p + "wv"]
        attn, attn_cache = _attention_forward(q, k, v, params[p + "wo"], config.heads, mask)
        h, ln1_cache = _layer_norm(x + attn, params[p + "ln1_g"], params[p + "ln1_b"])
        u = h @ params[p + "ffn_w1"] + params[p + "ffn_b1"]
        a = _gelu(u)
        f = a @ params[p + "ffn_w2"] + params[p + "ffn_b2"]
        x, ln2_cache = _layer_norm(h + f, params[p + "ln2_g"], params[p + "ln2_b"])
        lc.update(attn_cache=attn_cache, ln1_cache=ln1_cache, h=h, u=u, a=a,
                  ln2_cache=ln2_cache)
        cache["layers"].append(lc)

    if not np.all(np.isfinite(x)):
        raise OverflowError("numerical overflow")

    maskf = mask.astype(x.dtype)
    counts = maskf.sum(axis=1, keepdims=True)
    pooled = (x * maskf[:, :, None]).sum(axis=1) / counts
    cache.update(encoded=x, counts=counts, pooled=pooled)

    dropped = pooled if drop_mult is None else pooled * drop_mult
    cache["drop_mult"] = drop_mult

    logits = dropped @ params["cls_w"] + params["cls_b"]
    probs = _softmax(logits)
    if not np.all(np.isfinite(probs)):
        raise OverflowError("numerical overflow")
    cache.update(dropped=dropped, logits=logits, probs=probs)
    return probs, cache


def _backward(dlogits, cache, params, config: ModelConfig):
    """Gradients for every parameter plus the input embeddings."""
    grads: dict[str, np.ndarray] = {}
    grads["cls_w"] = cache["dropped"].T @ dlogits
    grads["cls_b"] = dlogits.sum(axis=0)
    ddropped = dlogits @ params["cls_w"].T
    dpooled = ddropped if cache["drop_mult"] is None else ddropped * cache["drop_mult"]

    mask = cache["mask"]
    maskf = mask.astype(dpooled.dtype)
    dx = (dpooled[:, None, :] / cache["counts"][:, :, None]) * maskf[:, :, None]

    for layer in reversed(range(config.layers)):
        p = f"l{layer}."
        lc = cache["layers"][layer]
        dhf, dg2, db2 = _layer_norm_backward(dx, lc["ln2_cache"], params[p + "ln2_g"])
        grads[p + "ln2_g"], grads[p + "ln2_b"] = dg2, db2
        dh = dhf
        df = dhf
        d = df.shape[-1]
        grads[p + "ffn_w2"] = lc["a"].reshape(-1, lc["a"].shape[-1]).T @ df.reshape(-1, d)
        grads[p + "ffn_b2"] = df.sum(axis=(0, 1))
        da = df @ params[p + "ffn_w2"].T
        du = da * _gelu_grad(lc["u"])
        grads[p + "ffn_w1"] = lc["h"].reshape(-1, d).T @ du.reshape(-1, du.shape[-1])
        grads[p + "ffn_b1"] = du.sum(axis=(0, 1))
        dh = dh + du @ params[p + "ffn_w1"].T

        dxa, dg1, db1 = _layer_norm_backward(dh, lc["ln1_cache"], params[p + "ln1_g"])
        grads[p + "ln1_g"], grads[p + "ln1_b"] = dg1, db1
        dq, dk, dv, dwo = _attention_backward(dxa, lc["attn_cache"], params[p + "wo"])
        grads[p + "wo"] = dwo
        xin = lc["xin"]
        flat = xin.reshape(-1, d)
        grads[p + "wq"] = flat.T @ dq.reshape(-1, d)
        grads[p + "wk"] = flat.T @ dk.reshape(-1, d)
        grads[p + "wv"] = flat.T @ dv.reshape(-1, d)
        dx = (dxa + dq @ params[p + "wq"].T + dk @ params[p + "wk"].T
              + dv @ params[p + "wv"].T)

    # positional encoding is an additive constant; gradient passes through
    return grads, dx


def pad_windows(windows, config: ModelConfig):
    """Stack variable-length windows into (B, seq_len, dim) plus a validity
    mask. Windows longer than seq_len are a contract violation.
    """
    dt = config.np_dtype
    x = np.zeros((len(windows), config.seq_len, config.dim), dtype=dt)
    mask = np.zeros((len(windows), config.seq_len), dtype=bool)
    for i, window in enumerate(windows):
        w = np.asarray(window, dtype=dt)
        if w.ndim != 2 or w.shape[1] != config.dim:
            raise ValueError(f"window {i}: expected (n, {config.dim}) embeddings")
        n = w.shape[0]
        if n > config.seq_len:
            raise ValueError(f"window {i}: length {n} exceeds seq_len {config.seq_len}")
        if n == 0:
            raise ValueError(f"window {i}: empty window")
        x[i, :n] = w
        mask[i, :n] = True
    return x, mask


def forward(window, params, config: ModelConfig, train_mode: bool = False,
            rng: np.random.Generator | None = None) -> tuple[float, float]:
    """Class probabilities (p_normal, p_anomalous) for one window."""
    x, mask = pad_windows([window], config)
    drop_mult = None
    if train_mode and config.dropout > 0.0:
        if rng is None:
            rng = np.random.default_rng(0)
        keep = (rng.random((1, config.dim)) >= config.dropout).astype(x.dtype)
        drop_mult = keep / (1.0 - config.dropout)
    probs, _ = _forward_cache(x, mask, params, config, drop_mult)
    return float(probs[0, 0]), float(probs[0, 1])


def _labels_to_array(labels) -> np.ndarray:
    return np.array([int(lab) for lab in labels], dtype=np.int64)


def _loss_grads_arrays(x, mask, y, params, config, drop_mult=None):
    probs, cache = _forward_cache(x, mask, params, config, drop_mult)
    n = x.shape[0]
    logp = cache["logits"] - _logsumexp(cache["logits"])
    loss = float(-logp[np.arange(n), y].mean())
    dlogits = probs.copy()
    dlogits[np.arange(n), y] -= 1.0
    dlogits /= n
    grads, dx = _backward(dlogits, cache, params, config)
    return loss, grads, dx, probs


def _logsumexp(z):
    m = z.max(axis=-1, keepdims=True)
    return m + np.log(np.exp(z - m).sum(axis=-1, keepdims=True))


def loss_and_gradients(batch, params, config: ModelConfig, drop_mult=None):
    """Mean cross-entropy over (window, label) pairs and exact gradients."""
    if not batch:
        raise ValueError("empty batch")
    windows = [w for w, _ in batch]
    y = _labels_to_array([lab for _, lab in batch])
    x, mask = pad_windows(windows, config)
    loss, grads, _, _ = _loss_grads_arrays(x, mask, y, params, config, drop_mult)
    return loss, grads


def adamw_init(params) -> dict:
    return {name: (np.zeros_like(p), np.zeros_like(p)) for name, p in params.items()}


def adamw_step(params, grads, state, train_config: TrainConfig, step_index: int,
               beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
    """One decoupled-weight-decay Adam update in place. step_index is 1-based."""
    if step_index < 1:
        raise ValueError("step_index is 1-based")
    lr, wd = train_config.lr, train_config.weight_decay
    bc1 = 1.0 - beta1 ** step_index
    bc2 = 1.0 - beta2 ** step_index
    for name, g in grads.items():
        m, v = state[name]
        m = beta1 * m + (1.0 - beta1) * g
        v = beta2 * v + (1.0 - beta2) * (g * g)
        state[name] = (m, v)
        mhat = m / bc1
        vhat = v / bc2
        params[name] = params[name] - lr * (mhat / (np.sqrt(vhat) + eps)) - lr * wd * params[name]
    return params, state


class _MessageTable:
    """Piece indices of every distinct message slot, flattened for fast
    batched averaging during joint embedding training.
    """

    def __init__(self, windows, dim, dtype):
        self.dim = dim
        self.dtype = dtype
        self.pieces: list[np.ndarray] = []
        self.window_ids: list[np.ndarray] = []
        for window in windows:
            ids = []
            for piece_indices in window:
                ids.append(len(self.pieces))
                self.pieces.append(np.asarray(piece_indices, dtype=np.int64))
            self.window_ids.append(np.array(ids, dtype=np.int64))

    def embed_batch(self, indices, rows, seq_len):
        """Returns x (B, seq_len, dim), mask, and scatter metadata."""
        b = len(indices)
        x = np.zeros((b, seq_len, self.dim), dtype=self.dtype)
        mask = np.zeros((b, seq_len), dtype=bool)
        slots = []
        for bi, wi in enumerate(indices):
            ids = self.window_ids[wi]
            mask[bi, :len(ids)] = True
            for si, mid in enumerate(ids):
                pieces = self.pieces[mid]
                if len(pieces):
                    x[bi, si] = rows[pieces].mean(axis=0)
                slots.append((bi, si, mid))
        return x, mask, slots

    def scatter_grad(self, dx, slots, rows_shape):
        grad = np.zeros(rows_shape, dtype=self.dtype)
        for bi, si, mid in slots:
            pieces = self.pieces[mid]
            if len(pieces):
                np.add.at(grad, pieces, dx[bi, si] / len(pieces))
        return grad


def _predict_probs(x, mask, params, config, batch_size=256):
    out = []
    for start in range(0, x.shape[0], batch_size):
        probs, _ = _forward_cache(x[start:start + batch_size],
                                  mask[start:start + batch_size], params, config)
        out.append(probs)
    return np.concatenate(out, axis=0)


def _val_metrics(probs, y):
    preds = [Label.ANOMALOUS if p >= 0.5 else Label.NORMAL for p in probs[:, 1]]
    truths = [Label(int(v)) for v in y]
    _, _, f1 = precision_recall_f1(confusion(preds, truths))
    logp = np.log(np.clip(probs[np.arange(len(y)), y], 1e-300, None))
    return f1, float(-logp.mean())


def train(train_data, val_data, model_config: ModelConfig, train_config: TrainConfig,
          embedder=None):
    """Mini-batch AdamW with early stopping on validation F1.

    train_data/val_data: list of (window, label). Without an embedder each
    window is an (n, dim) embedding array; with one it is a list of
    per-message subword index lists and the embedding matrix trains jointly.
    Returns (best params, per-epoch history). With an embedder, its matrix is
    updated to the best-epoch rows as a side effect.
    """
    if not train_data or not val_data:
        raise ValueError("train and validation sets must be non-empty")

    params = init_params(model_config, train_config.seed)
    dt = model_config.np_dtype

    table = None
    if embedder is not None:
        params["embed_rows"] = embedder.matrix.rows.astype(dt)
        table = _MessageTable([w for w, _ in train_data], model_config.dim, dt)
        val_table = _MessageTable([w for w, _ in val_data], model_config.dim, dt)
    else:
        x_train, m_train = pad_windows([w for w, _ in train_data], model_config)
    y_train = _labels_to_array([lab for _, lab in train_data])
    y_val = _labels_to_array([lab for _, lab in val_data])

    if embedder is None:
        x_val, m_val = pad_windows([w for w, _ in val_data], model_config)

    ss = np.random.SeedSequence(train_config.seed)
    shuffle_rng, drop_rng = [np.random.default_rng(s) for s in ss.spawn(2)]

    state = adamw_init(params)
    step = 0
    n = len(train_data)
    history: list[dict] = []
    best_params = None
    best_metric = -np.inf
    best_epoch = 0
    stall = 0
    degenerate_val = not np.any(y_val == 1)
    if degenerate_val:
        warnings.warn("validation set has no anomalies; early stopping falls back "
                      "to validation loss", stacklevel=2)

    for epoch in range(1, train_config.max_epochs + 1):
        perm = shuffle_rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, train_config.batch_size):
            idx = perm[start:start + train_config.batch_size]
            if embedder is not None:
                xb, mb, slots = table.embed_batch(idx, params["embed_rows"],
                                                  model_config.seq_len)
            else:
                xb, mb = x_train[idx], m_train[idx]
            yb = y_train[idx]
            drop_mult = None
            if model_config.dropout > 0.0:
                keep = (drop_rng.random((len(idx), model_config.dim))
                        >= model_config.dropout).astype(dt)
                drop_mult = keep / (1.0 - model_config.dropout)
            loss, grads, dx, _ = _loss_grads_arrays(xb, mb, yb, params,
                                                    model_config, drop_mult)
            if embedder is not None:
                grads["embed_rows"] = table.scatter_grad(dx, slots,
                                                         params["embed_rows"].shape)
            step += 1
            params, state = adamw_step(params, grads, state, train_config, step)
            epoch_loss += loss * len(idx)
        epoch_loss /= n

        if embedder is not None:
            x_val, m_val, _ = val_table.embed_batch(range(len(val_data)),
                                                    params["embed_rows"],
                                                    model_config.seq_len)
        val_probs = _predict_probs(x_val, m_val, params, model_config)
        val_f1, val_loss = _val_metrics(val_probs, y_val)
        metric = -val_loss if degenerate_val else val_f1
        history.append({"epoch": epoch, "train_loss": epoch_loss,
                        "val_loss": val_loss, "val_f1": val_f1})

        if metric > best_metric:
            best_metric = metric
            best_params = copy.deepcopy(params)
            best_epoch = epoch
            stall = 0
        else:
            stall += 1
            if stall >= train_config.patience:
                break

    if best_params is None:
        best_params = copy.deepcopy(params)
        best_epoch = len(history)
    if embedder is not None and "embed_rows" in best_params:
        embedder.matrix.rows = best_params["embed_rows"]
    for row in history:
        row["best_epoch"] = best_epoch
    return best_params, history


def detect(windows, params, config: ModelConfig, threshold: float = 0.5) -> list[Label]:
    """Anomalous iff p_anomalous >= threshold."""
    if not windows:
        return []
    x, mask = pad_windows(windows, config)
    probs = _predict_probs(x, mask, params, config)
    return [Label.ANOMALOUS if p >= threshold else Label.NORMAL for p in probs[:, 1]]


def detect_probs(windows, params, config: ModelConfig) -> np.ndarray:
    if not windows:
        return np.zeros((0, config.classes))
    x, mask = pad_windows(windows, config)
    return _predict_probs(x, mask, params, config)


CHECKPOINT_VERSION = 1


def save_checkpoint(path, params, model_config: ModelConfig, history=None,
                    vocab_hash: str | None = None, train_config: TrainConfig | None = None):
    """Parameters as named float32 arrays plus a JSON manifest sidecar."""
    meta = {
        "format": "neurallog-checkpoint",
        "version": CHECKPOINT_VERSION,
        "model_config": asdict(model_config),
        "vocab_hash": vocab_hash,
    }
    arrays = {name: np.asarray(p, dtype=np.float32) for name, p in params.items()}
    with open(path, "wb") as fh:
        np.savez(fh, __meta__=np.array(json.dumps(meta)), **arrays)
    manifest = dict(meta)
    manifest["history"] = history or []
    if train_config is not None:
        manifest["train_config"] = asdict(train_config)
    with open(str(path) + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_checkpoint(path):
    """Returns (params, ModelConfig, meta). Parameters come back in the
    config's compute precision.
    """
    with np.load(path, allow_pickle=False) as data:
        if "__meta__" not in data:
            raise ValueError(f"{path}: not a model checkpoint")
        meta = json.loads(str(data["__meta__"]))
        if meta.get("format") != "neurallog-checkpoint":
            raise ValueError(f"{path}: not a model checkpoint")
        if meta.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"{path}: unsupported checkpoint version {meta.get('version')}")
        config = ModelConfig(**meta["model_config"])
        params = {name: data[name].astype(config.np_dtype)
                  for name in data.files if name != "__meta__"}
    return params, config, meta
