"""Sentence-embedding providers: file-backed store and remote HTTP client.

Vectors are keyed by the SHA-256 of the trimmed sentence text, so the
judgment and citance pipelines share one cache.  Stored values are 32-bit
floats and are not pre-normalized; normalization happens inside cosine
similarity.

Remote protocol: ``POST /embed`` with body ``{"texts": [str]}`` returns
``{"dim": int, "vectors": [[number]]}``; errors come back as non-200 with
``{"error": str}``.
"""

from __future__ import annotations

import abc
import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import requests

from .errors import BackendUnavailable, DimensionMismatch, MissingEmbedding, ParseError

DEFAULT_BATCH_SIZE = 32
DEFAULT_MAX_INFLIGHT = 4
DEFAULT_MAX_ATTEMPTS = 3


def text_key(text: str) -> str:
    """SHA-256 hex digest of the trimmed UTF-8 sentence text."""
    return hashlib.sha256(text.strip().encode("utf-8")).hexdigest()


class EmbeddingVector:
    """A fixed-dimension sentence embedding (float32, all entries finite)."""

    __slots__ = ("values",)

    def __init__(self, values) -> None:
        arr = np.asarray(values, dtype=np.float32)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("embedding must be a non-empty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("embedding contains NaN or Inf")
        arr.setflags(write=False)
        self.values = arr

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EmbeddingVector) and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"EmbeddingVector(dim={self.dim})"


class EmbeddingProvider(abc.ABC):
    """Deterministic text -> vector mapping with a fixed dimension."""

    @property
    @abc.abstractmethod
    def dim(self) -> int | None:
        """Vector dimension, or None if not yet known (remote, pre-first-call)."""

    @property
    @abc.abstractmethod
    def backend(self) -> str:
        """Human-readable backend descriptor (file path or service URL)."""

    @abc.abstractmethod
    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        """Return one vector per text, in input order."""


def embed_sentences(provider: EmbeddingProvider, texts: Sequence[str]) -> list[EmbeddingVector]:
    """Embed texts through a provider, validating the structural contract."""
    if not texts:
        raise ValueError("texts must be non-empty")
    for i, text in enumerate(texts):
        if not text.strip():
            raise ValueError(f"texts[{i}] is empty after trimming")
    vectors = provider.embed(texts)
    if len(vectors) != len(texts):
        raise BackendUnavailable(
            f"{provider.backend}: returned {len(vectors)} vectors for {len(texts)} texts"
        )
    dims = {v.dim for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatch(f"{provider.backend}: mixed dimensions {sorted(dims)}")
    return vectors


class FileEmbeddingProvider(EmbeddingProvider):
    """Read-only store of precomputed vectors, fully shareable after load."""

    def __init__(self, vectors: dict[str, EmbeddingVector], dim: int, path: str) -> None:
        self._vectors = vectors
        self._dim = dim
        self._path = path

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def backend(self) -> str:
        return self._path

    def __len__(self) -> int:
        return len(self._vectors)

    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        out = []
        for text in texts:
            key = text_key(text)
            try:
                out.append(self._vectors[key])
            except KeyError:
                raise MissingEmbedding(
                    f"{self._path}: no vector for text with sha256 {key}"
                ) from None
        return out


def load_embedding_file(path: Path | str) -> FileEmbeddingProvider:
    """Load a JSONL embedding file: one ``{"text_sha256", "vector"}`` per line.

    The dimension is inferred from the first record; every later record
    must agree or DimensionMismatch names the offending line.
    """
    path = Path(path)
    vectors: dict[str, EmbeddingVector] = {}
    dim: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                key = record["text_sha256"]
                values = record["vector"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ParseError(f"{path}:{lineno}: bad embedding record: {exc}") from exc
            if not isinstance(key, str):
                raise ParseError(f"{path}:{lineno}: text_sha256 must be a string")
            try:
                vector = EmbeddingVector(values)
            except (ValueError, TypeError) as exc:
                raise ParseError(f"{path}:{lineno}: bad vector: {exc}") from exc
            if dim is None:
                dim = vector.dim
            elif vector.dim != dim:
                raise DimensionMismatch(
                    f"{path}:{lineno}: vector has dim {vector.dim}, expected {dim}"
                )
            vectors[key] = vector
    if dim is None:
        raise ParseError(f"{path}: no records")
    return FileEmbeddingProvider(vectors, dim, str(path))


def write_embedding_file(path: Path | str, items: Iterable[tuple[str, Sequence[float]]]) -> int:
    """Write (text, vector) pairs as a JSONL embedding file; returns count."""
    path = Path(path)
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for text, values in items:
            vector = EmbeddingVector(values)
            fh.write(
                json.dumps(
                    {"text_sha256": text_key(text), "vector": [float(x) for x in vector.values]},
                    sort_keys=True,
                )
                + "\n"
            )
            count += 1
    return count


class RemoteEmbeddingProvider(EmbeddingProvider):
    """Client for an HTTP embedding service.

    Texts are chunked into batches; at most max_inflight requests run
    concurrently and results are reassembled in input order regardless of
    completion order.  Transient failures (connection errors, timeouts,
    5xx) are retried with exponential backoff, max_attempts in total.
    """

    def __init__(
        self,
        url: str,
        batch_size: int = DEFAULT_BATCH_SIZE,
        max_inflight: int = DEFAULT_MAX_INFLIGHT,
        max_attempts: int = DEFAULT_MAX_ATTEMPTS,
        backoff: float = 0.5,
        timeout: float = 60.0,
    ) -> None:
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if max_inflight < 1:
            raise ValueError("max_inflight must be >= 1")
        self._url = url.rstrip("/")
        self._batch_size = batch_size
        self._max_inflight = max_inflight
        self._max_attempts = max_attempts
        self._backoff = backoff
        self._timeout = timeout
        self._dim: int | None = None

    @property
    def dim(self) -> int | None:
        return self._dim

    @property
    def backend(self) -> str:
        return self._url

    def _post_batch(self, batch: list[str]) -> tuple[int, list[list[float]]]:
        last_error = "no attempts made"
        for attempt in range(self._max_attempts):
            if attempt:
                time.sleep(self._backoff * 2 ** (attempt - 1))
            try:
                response = requests.post(
                    f"{self._url}/embed", json={"texts": batch}, timeout=self._timeout
                )
            except requests.RequestException as exc:
                last_error = str(exc)
                continue
            if response.status_code >= 500:
                last_error = f"HTTP {response.status_code}: {_error_text(response)}"
                continue
            if response.status_code != 200:
                raise BackendUnavailable(
                    f"{self._url}: HTTP {response.status_code}: {_error_text(response)}"
                )
            try:
                payload = response.json()
                return int(payload["dim"]), payload["vectors"]
            except (ValueError, KeyError, TypeError) as exc:
                raise BackendUnavailable(f"{self._url}: malformed response: {exc}") from exc
        raise BackendUnavailable(
            f"{self._url}: giving up after {self._max_attempts} attempts ({last_error})"
        )

    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        batches = [
            list(texts[i : i + self._batch_size])
            for i in range(0, len(texts), self._batch_size)
        ]
        workers = min(self._max_inflight, len(batches))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(self._post_batch, batches))

        vectors: list[EmbeddingVector] = []
        for batch, (dim, batch_vectors) in zip(batches, results):
            if self._dim is None:
                self._dim = dim
            elif dim != self._dim:
                raise DimensionMismatch(
                    f"{self._url}: service dim changed from {self._dim} to {dim}"
                )
            if len(batch_vectors) != len(batch):
                raise BackendUnavailable(
                    f"{self._url}: {len(batch_vectors)} vectors for {len(batch)} texts"
                )
            for values in batch_vectors:
                vector = EmbeddingVector(values)
                if vector.dim != dim:
                    raise DimensionMismatch(
                        f"{self._url}: vector dim {vector.dim} != advertised {dim}"
                    )
                vectors.append(vector)
        return vectors


def _error_text(response: requests.Response) -> str:
    try:
        return str(response.json().get("error", response.text))
    except ValueError:
        return response.text[:200]


def fetch_remote_embeddings(
    url: str,
    texts: Sequence[str],
    batch_size: int = DEFAULT_BATCH_SIZE,
    **kwargs,
) -> list[EmbeddingVector]:
    """One-shot remote embedding fetch; see RemoteEmbeddingProvider."""
    provider = RemoteEmbeddingProvider(url, batch_size=batch_size, **kwargs)
    return embed_sentences(provider, texts)
