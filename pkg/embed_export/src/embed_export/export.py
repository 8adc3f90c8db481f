"""Message embedding export from a pre-trained language model.

Reads a normalized log TSV, derives each message's canonical key with the
same preprocessing rules the detection pipeline applies, embeds every
distinct key once (mean of the encoder's last hidden layer over non-special
token positions), and writes the binary embedding table the detection
pipeline loads, plus a sidecar manifest recording exactly how the vectors
were produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from neurallog.embed import canonical_key, save_embedding_table
from neurallog.ingest import read_normalized
from neurallog.preprocess import preprocess_message


@dataclass(frozen=True)
class ModelSpec:
    hf_id: str
    revision: str
    hidden: int


MODEL_REGISTRY = {
    "bert-base": ModelSpec(hf_id="bert-base-uncased", revision="main", hidden=768),
    "gpt2-base": ModelSpec(hf_id="gpt2", revision="main", hidden=768),
    "roberta-base": ModelSpec(hf_id="roberta-base", revision="main", hidden=768),
}


@dataclass(frozen=True)
class ExportJob:
    input_path: str
    model: str
    out_path: str
    dim: int = 768
    batch_size: int = 16
    revision: str | None = None

    def __post_init__(self):
        if self.model not in MODEL_REGISTRY:
            raise ValueError(f"unknown model {self.model!r}; "
                             f"expected one of {sorted(MODEL_REGISTRY)}")
        hidden = MODEL_REGISTRY[self.model].hidden
        if self.dim != hidden:
            raise ValueError(f"dim {self.dim} does not match the {self.model} "
                             f"hidden width {hidden}")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


class EncoderBackend:
    """A tokenizer/encoder pair producing one vector per text.

    The vector is the mean of the last hidden layer over positions that are
    neither padding nor special begin/end tokens; a text with no regular
    positions yields the zero vector.
    """

    def __init__(self, tokenizer, model, model_name: str, revision: str):
        self.tokenizer = tokenizer
        self.model = model.eval()
        self.model_name = model_name
        self.revision = revision

    @classmethod
    def from_registry(cls, name: str, revision: str | None = None) -> "EncoderBackend":
        from transformers import AutoModel, AutoTokenizer

        spec = MODEL_REGISTRY[name]
        rev = revision or spec.revision
        tokenizer = AutoTokenizer.from_pretrained(spec.hf_id, revision=rev)
        if tokenizer.pad_token is None:
            tokenizer.pad_token = tokenizer.eos_token
        model = AutoModel.from_pretrained(spec.hf_id, revision=rev)
        return cls(tokenizer, model, model_name=spec.hf_id, revision=rev)

    @property
    def dim(self) -> int:
        return int(self.model.config.hidden_size)

    def encode(self, texts) -> np.ndarray:
        import torch

        enc = self.tokenizer(list(texts), padding=True, truncation=True,
                             return_tensors="pt", return_special_tokens_mask=True)
        special = enc.pop("special_tokens_mask")
        with torch.no_grad():
            hidden = self.model(**enc).last_hidden_state
        keep = (enc["attention_mask"] * (1 - special)).unsqueeze(-1).to(hidden.dtype)
        totals = (hidden * keep).sum(dim=1)
        counts = keep.sum(dim=1).clamp(min=1.0)
        return (totals / counts).cpu().numpy().astype(np.float32)


def distinct_keys(records) -> list[str]:
    """Canonical keys in first-seen order, duplicates collapsed."""
    keys: list[str] = []
    seen: set[str] = set()
    for record in records:
        tokens = preprocess_message(record.header_and_content(),
                                    source_line_no=record.line_no)
        key = canonical_key(tokens)
        if key not in seen:
            seen.add(key)
            keys.append(key)
    return keys


def export_embeddings(job: ExportJob, backend: EncoderBackend | None = None) -> dict:
    """Write the embedding table for job.input_path and return the manifest."""
    if backend is None:
        backend = EncoderBackend.from_registry(job.model, job.revision)
    if backend.dim != job.dim:
        raise ValueError(f"encoder hidden width {backend.dim} does not match "
                         f"requested dim {job.dim}")

    keys = distinct_keys(read_normalized(job.input_path))
    entries: dict[str, np.ndarray] = {}
    for start in range(0, len(keys), job.batch_size):
        batch = keys[start:start + job.batch_size]
        for key, vector in zip(batch, backend.encode(batch)):
            entries[key] = vector
    save_embedding_table(entries, job.dim, job.out_path)

    manifest = {
        "model": job.model,
        "encoder": backend.model_name,
        "revision": backend.revision,
        "layer": "last_hidden",
        "special_tokens_in_average": False,
        "dim": job.dim,
        "count": len(entries),
        "input": str(job.input_path),
    }
    with open(str(job.out_path) + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
