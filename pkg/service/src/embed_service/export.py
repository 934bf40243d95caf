"""Export mode: embed a file of sentences into the JSONL store format
consumed by the summarizer's file-backed embedding provider.

Each output line is ``{"text_sha256": <hex>, "vector": [number]}`` where
the key is the SHA-256 of the trimmed UTF-8 sentence text.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def text_key(text: str) -> str:
    return hashlib.sha256(text.strip().encode("utf-8")).hexdigest()


def read_sentences(path: Path | str) -> list[str]:
    """One sentence per line; blank lines skipped."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip()]


def export_embeddings(encoder, sentences: list[str], output: Path | str, batch_size: int = 64) -> int:
    """Encode sentences in batches and write the JSONL store; returns count."""
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    output = Path(output)
    written = 0
    with open(output, "w", encoding="utf-8") as fh:
        for start in range(0, len(sentences), batch_size):
            batch = sentences[start : start + batch_size]
            for text, vector in zip(batch, encoder.encode(batch)):
                record = {"text_sha256": text_key(text), "vector": [float(x) for x in vector]}
                fh.write(json.dumps(record, sort_keys=True) + "\n")
                written += 1
    return written
