"""Message embedding providers and the embedding interchange format.

Two providers cover the pipeline:

* file-backed: vectors precomputed elsewhere, loaded from an NLEMB1 file and
  looked up by the canonical message key (space-joined preprocessed tokens,
  keyed by FNV-1a 64-bit hash in the binary format);
* trainable: a subword embedding matrix learned jointly with the classifier,
  where a message embeds to the mean of its subword rows.

Binary layout (little-endian throughout): magic "NLEM", u16 version = 1,
u32 dim, u64 record count, then per record a u64 key hash followed by dim
float32 values. A debug TSV alternative starts with a `dim=<d>` line and
stores readable keys.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .core import DataError
from .wordpiece import SubwordVocab

DEFAULT_DIM = 768

_MAGIC = b"NLEM"
_VERSION = 1

MISS_ERROR = "error"
MISS_ZERO = "zero"
MISS_FALLBACK = "trainable-fallback"
MISS_POLICIES = (MISS_ERROR, MISS_ZERO, MISS_FALLBACK)


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash."""
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def canonical_key(tokens) -> str:
    token_list = getattr(tokens, "tokens", tokens)
    return " ".join(token_list)


@dataclass(frozen=True)
class MessageEmbedding:
    values: np.ndarray
    key: str

    def __post_init__(self):
        if self.values.ndim != 1:
            raise ValueError("embedding must be a vector")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("embedding contains non-finite values")


class EmbeddingTable:
    """Immutable key-hash → vector map with a fixed dimension."""

    def __init__(self, dim: int, by_hash: dict[int, np.ndarray]):
        self.dim = dim
        self._by_hash = by_hash

    def __len__(self) -> int:
        return len(self._by_hash)

    def lookup(self, key: str) -> np.ndarray | None:
        return self._by_hash.get(fnv1a64(key.encode("utf-8")))

    def __contains__(self, key: str) -> bool:
        return fnv1a64(key.encode("utf-8")) in self._by_hash


def save_embedding_table(entries: dict[str, np.ndarray], dim: int, path) -> None:
    """Write entries keyed by canonical key, sorted by key hash."""
    hashed = {}
    for key, vec in entries.items():
        vec = np.asarray(vec, dtype=np.float32)
        if vec.shape != (dim,):
            raise ValueError(f"vector for key '{key}' has shape {vec.shape}, want ({dim},)")
        h = fnv1a64(key.encode("utf-8"))
        if h in hashed:
            raise DataError(f"duplicate key hash for key '{key}'")
        hashed[h] = vec
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<HIQ", _VERSION, dim, len(hashed)))
        for h in sorted(hashed):
            fh.write(struct.pack("<Q", h))
            fh.write(hashed[h].tobytes())


def _load_binary(path) -> EmbeddingTable:
    with open(path, "rb") as fh:
        data = fh.read()
    header = struct.calcsize("<HIQ")
    if len(data) < 4 + header:
        raise DataError(f"{path}: truncated embedding file header")
    version, dim, count = struct.unpack_from("<HIQ", data, 4)
    if version != _VERSION:
        raise DataError(f"{path}: unsupported embedding file version {version}")
    if dim < 1:
        raise DataError(f"{path}: bad dimension {dim}")
    record = 8 + 4 * dim
    offset = 4 + header
    if len(data) != offset + count * record:
        raise DataError(f"{path}: truncated embedding file "
                        f"(expected {count} records of {record} bytes)")
    by_hash: dict[int, np.ndarray] = {}
    for _ in range(count):
        (h,) = struct.unpack_from("<Q", data, offset)
        if h in by_hash:
            raise DataError(f"{path}: duplicate key hash {h:#018x}")
        vec = np.frombuffer(data, dtype="<f4", count=dim, offset=offset + 8)
        by_hash[h] = vec.copy()
        offset += record
    return EmbeddingTable(dim, by_hash)


def _load_tsv(path) -> EmbeddingTable:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("dim="):
            raise DataError(f"{path}: not an embedding file")
        try:
            dim = int(first[4:])
        except ValueError:
            raise DataError(f"{path}: bad dimension line {first!r}") from None
        if dim < 1:
            raise DataError(f"{path}: bad dimension {dim}")
        by_hash: dict[int, np.ndarray] = {}
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            key, sep, values = line.partition("\t")
            if not sep:
                raise DataError(f"{path} line {line_no}: missing tab separator")
            vec = np.array([float(v) for v in values.split(",")], dtype=np.float32)
            if vec.shape != (dim,):
                raise DataError(f"{path} line {line_no}: expected {dim} values, "
                                f"got {vec.shape[0]}")
            h = fnv1a64(key.encode("utf-8"))
            if h in by_hash:
                raise DataError(f"{path} line {line_no}: duplicate key '{key}'")
            by_hash[h] = vec
    return EmbeddingTable(dim, by_hash)


def load_embedding_table(path) -> EmbeddingTable:
    with open(path, "rb") as fh:
        head = fh.read(4)
    if head == _MAGIC:
        return _load_binary(path)
    if head.startswith(b"dim="):
        return _load_tsv(path)
    raise DataError(f"{path}: not an embedding file")


@dataclass
class SubwordEmbeddingMatrix:
    vocab: SubwordVocab
    rows: np.ndarray

    @classmethod
    def init_seeded(cls, vocab: SubwordVocab, dim: int, seed: int,
                    dtype=np.float64) -> "SubwordEmbeddingMatrix":
        rng = np.random.default_rng(seed)
        rows = rng.uniform(-0.05, 0.05, size=(len(vocab), dim)).astype(dtype)
        return cls(vocab=vocab, rows=rows)

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


def embed_message_avg(subwords, matrix: SubwordEmbeddingMatrix) -> np.ndarray:
    """Mean of the subword rows; an empty piece list embeds to the zero vector
    so a content-free message still occupies its sequence slot.
    """
    if not subwords:
        return np.zeros(matrix.dim, dtype=matrix.rows.dtype)
    idx = [matrix.vocab.index_of(p) for p in subwords]
    return matrix.rows[idx].mean(axis=0)


def template_index_embedding(template_id: int, n_templates: int, dim: int) -> np.ndarray:
    """One-hot of the template id, padded or truncated to dim."""
    if not 0 <= template_id < n_templates:
        raise ValueError(f"template id {template_id} out of range [0, {n_templates})")
    vec = np.zeros(dim, dtype=np.float64)
    if template_id < dim:
        vec[template_id] = 1.0
    return vec


class TableEmbedder:
    """Looks message tokens up in an EmbeddingTable by canonical key.

    miss_policy: "error" aborts on a missing key, "zero" substitutes the zero
    vector, "trainable-fallback" delegates to a trainable embedder.
    """

    def __init__(self, table: EmbeddingTable, miss_policy: str = MISS_ERROR,
                 fallback: "TrainableEmbedder | None" = None):
        if miss_policy not in MISS_POLICIES:
            raise ValueError(f"unknown miss policy {miss_policy!r}")
        if miss_policy == MISS_FALLBACK and fallback is None:
            raise ValueError("trainable-fallback policy requires a fallback embedder")
        if fallback is not None and fallback.dim != table.dim:
            raise ValueError("fallback dimension does not match table")
        self.table = table
        self.miss_policy = miss_policy
        self.fallback = fallback

    @property
    def dim(self) -> int:
        return self.table.dim

    def embed_tokens(self, tokens) -> np.ndarray:
        key = canonical_key(tokens)
        vec = self.table.lookup(key)
        if vec is not None:
            return np.asarray(vec, dtype=np.float64)
        if self.miss_policy == MISS_ZERO:
            return np.zeros(self.dim, dtype=np.float64)
        if self.miss_policy == MISS_FALLBACK:
            return self.fallback.embed_tokens(tokens)
        raise DataError(f"no embedding for key '{key}'")


class TrainableEmbedder:
    """Subword-average embedder whose matrix is trained with the classifier."""

    def __init__(self, matrix: SubwordEmbeddingMatrix):
        self.matrix = matrix

    @classmethod
    def init_seeded(cls, vocab: SubwordVocab, dim: int, seed: int) -> "TrainableEmbedder":
        return cls(SubwordEmbeddingMatrix.init_seeded(vocab, dim, seed))

    @property
    def dim(self) -> int:
        return self.matrix.dim

    def piece_indices(self, tokens) -> list[int]:
        from .wordpiece import encode_message

        pieces = encode_message(tokens, self.matrix.vocab)
        return [self.matrix.vocab.index_of(p) for p in pieces]

    def embed_tokens(self, tokens) -> np.ndarray:
        from .wordpiece import encode_message

        pieces = encode_message(tokens, self.matrix.vocab)
        return embed_message_avg(pieces, self.matrix)
