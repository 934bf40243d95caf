"""Cosine-similarity matrix between citance and judgment-sentence embeddings.

Entry (p, q) is the cosine of citance p against judgment sentence q.
Dot products accumulate in 64-bit precision over the 32-bit stored
vectors.  Each row is computed by the same primitive whether the build is
sequential or threaded, so both modes produce bitwise-identical matrices.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .embedding import EmbeddingVector
from .errors import DimensionMismatch, ZeroVector

_NORM_EPSILON = 1e-12


@dataclass(frozen=True)
class SimilarityMatrix:
    """Dense m x n cosine matrix plus per-column sentence word counts."""

    data: np.ndarray  # float64, shape (m, n), read-only
    col_word_counts: tuple[int, ...]

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine of two embedding vectors, accumulated in float64."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"cosine of dim {a.dim} vs dim {b.dim}")
    x = a.values.astype(np.float64)
    y = b.values.astype(np.float64)
    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if nx < _NORM_EPSILON or ny < _NORM_EPSILON:
        raise ZeroVector(f"degenerate embedding (norms {nx:.3e}, {ny:.3e})")
    return float(np.dot(x, y) / (nx * ny))


def _stack(vectors: Sequence[EmbeddingVector], label: str) -> np.ndarray:
    dims = {v.dim for v in vectors}
    if len(dims) != 1:
        raise DimensionMismatch(f"{label} vectors mix dimensions {sorted(dims)}")
    return np.stack([v.values for v in vectors]).astype(np.float64)


def _check_norms(norms: np.ndarray, label: str) -> None:
    bad = np.flatnonzero(norms < _NORM_EPSILON)
    if bad.size:
        raise ZeroVector(f"{label} {int(bad[0])} has near-zero norm")


def _cosine_row(c_row: np.ndarray, c_norm: float, judgments: np.ndarray, j_norms: np.ndarray) -> np.ndarray:
    return (judgments @ c_row) / (j_norms * c_norm)


def build_similarity_matrix(
    citance_embs: Sequence[EmbeddingVector],
    judgment_embs: Sequence[EmbeddingVector],
    judgment_word_counts: Sequence[int],
    workers: int = 1,
) -> SimilarityMatrix:
    """Build the full m x n cosine matrix.

    workers > 1 computes rows in a thread pool; the result is bitwise
    identical to the sequential build because every row goes through the
    same per-row kernel.
    """
    if not citance_embs or not judgment_embs:
        raise ValueError("need at least one citance and one judgment embedding")
    if len(judgment_word_counts) != len(judgment_embs):
        raise ValueError(
            f"{len(judgment_word_counts)} word counts for {len(judgment_embs)} judgment sentences"
        )

    citances = _stack(citance_embs, "citance")
    judgments = _stack(judgment_embs, "judgment")
    if citances.shape[1] != judgments.shape[1]:
        raise DimensionMismatch(
            f"citance dim {citances.shape[1]} vs judgment dim {judgments.shape[1]}"
        )

    c_norms = np.linalg.norm(citances, axis=1)
    j_norms = np.linalg.norm(judgments, axis=1)
    _check_norms(c_norms, "citance")
    _check_norms(j_norms, "judgment sentence")

    m = citances.shape[0]
    rows: list[np.ndarray]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(lambda p: _cosine_row(citances[p], c_norms[p], judgments, j_norms), range(m))
            )
    else:
        rows = [_cosine_row(citances[p], c_norms[p], judgments, j_norms) for p in range(m)]

    data = np.vstack(rows)
    data.setflags(write=False)
    return SimilarityMatrix(data=data, col_word_counts=tuple(int(w) for w in judgment_word_counts))


def dump_matrix_csv(matrix: SimilarityMatrix, path: Path | str) -> None:
    """Debug dump: CSV with citance indices down and sentence indices across."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["citance"] + [f"j{q}" for q in range(matrix.cols)])
        for p in range(matrix.rows):
            writer.writerow([f"s{p}"] + [repr(float(v)) for v in matrix.data[p]])
