"""Sentence encoders behind the service.

The default wraps a pretrained transformer (a legal-domain BERT such as
law-ai/InLegalBERT is the intended checkpoint) with mean pooling over
non-padding tokens.  A deterministic hashing encoder is available for
offline smoke runs and tests: select it with ``MODEL_NAME=hashing:<dim>``.
"""

from __future__ import annotations

import hashlib

import numpy as np

DEFAULT_MODEL_NAME = "law-ai/InLegalBERT"


class HashingEncoder:
    """Deterministic text -> vector mapping; no model weights involved."""

    def __init__(self, dim: int = 256) -> None:
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self._dim = dim

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def model_name(self) -> str:
        return f"hashing:{self._dim}"

    def encode(self, texts: list[str]) -> list[list[float]]:
        out = []
        for text in texts:
            seed = int.from_bytes(
                hashlib.sha256(text.strip().encode("utf-8")).digest()[:8], "big"
            )
            rng = np.random.default_rng(seed)
            out.append(rng.normal(size=self._dim).astype(np.float32).tolist())
        return out


class MeanPoolingTransformerEncoder:
    """Transformer encoder with attention-mask mean pooling.

    Texts are tokenized with the model's own tokenizer, truncated to the
    model max length, encoded in inference mode (no dropout) and pooled
    by averaging the last hidden state over non-padding positions.
    """

    def __init__(self, model_name: str | None = None, model=None, tokenizer=None) -> None:
        import torch  # heavyweight; keep import local to construction
        from transformers import AutoModel, AutoTokenizer

        self._torch = torch
        if model is None or tokenizer is None:
            name = model_name or DEFAULT_MODEL_NAME
            tokenizer = AutoTokenizer.from_pretrained(name)
            model = AutoModel.from_pretrained(name)
            self._name = name
        else:
            self._name = model_name or model.__class__.__name__
        model.eval()
        self._model = model
        self._tokenizer = tokenizer
        self._dim = int(model.config.hidden_size)
        # tokenizers without a configured limit carry a huge sentinel value
        limits = []
        tok_max = getattr(tokenizer, "model_max_length", None)
        if tok_max and tok_max < 1_000_000:
            limits.append(int(tok_max))
        pos_max = getattr(model.config, "max_position_embeddings", None)
        if pos_max:
            limits.append(int(pos_max))
        self._max_length = min(limits) if limits else 512

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def model_name(self) -> str:
        return self._name

    def encode(self, texts: list[str]) -> list[list[float]]:
        torch = self._torch
        encoded = self._tokenizer(
            texts,
            padding=True,
            truncation=True,
            max_length=self._max_length,
            return_tensors="pt",
        )
        with torch.inference_mode():
            hidden = self._model(**encoded).last_hidden_state
        mask = encoded["attention_mask"].unsqueeze(-1).to(hidden.dtype)
        summed = (hidden * mask).sum(dim=1)
        counts = mask.sum(dim=1).clamp(min=1)
        pooled = summed / counts
        return pooled.to(torch.float32).cpu().numpy().tolist()


def create_encoder(model_name: str):
    """Build an encoder from a MODEL_NAME value."""
    if model_name.startswith("hashing:"):
        return HashingEncoder(dim=int(model_name.split(":", 1)[1]))
    return MeanPoolingTransformerEncoder(model_name=model_name)
