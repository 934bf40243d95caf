"""Sentence-scoring heuristics over the citance/judgment similarity matrix.

Three families, five selector strings:

* ``cisumm`` / ``cisumm-ln``: a judgment sentence scores the sum of its
  similarities with every citance (its matrix column).  The LN variant
  divides each entry by the sentence word count before summing, removing
  the advantage long sentences get from richer context.
* ``additive`` / ``additive-ln``: each citance nominates its top-k
  sentences; scores of repeated nominees add up, so sentences that many
  citances point at rise.  Only nominated sentences are ranked.  The LN
  variant normalizes before the top-k selection, mirroring cisumm-ln.
* ``cd`` (citation diversity): each citance keeps a top-k list by raw
  score, the retained scores are length-normalized afterwards (so very
  short sentences are not over-promoted at selection time), and citances
  take turns contributing their strongest not-yet-chosen sentence,
  strongest citance first.

Ties break everywhere toward the lower sentence index (earlier in the
judgment), which makes every method fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .simmatrix import SimilarityMatrix


class RankedSentence(NamedTuple):
    index: int
    score: float
    rank: int


@dataclass(frozen=True)
class ScoredSelection:
    """Candidate sentences ranked by score (non-increasing, ranks from 1)."""

    ranked: tuple[RankedSentence, ...]
    method: str
    k: int | None = None

    def indices(self) -> list[int]:
        return [r.index for r in self.ranked]


@dataclass(frozen=True)
class CitanceLists:
    """Per-citance top-k lists of (sentence_index, normalized_score)."""

    lists: tuple[tuple[tuple[int, float], ...], ...]
    k: int


def _rank(candidates: dict[int, float], method: str, k: int | None) -> ScoredSelection:
    ordered = sorted(candidates.items(), key=lambda item: (-item[1], item[0]))
    ranked = tuple(
        RankedSentence(index=q, score=score, rank=rank)
        for rank, (q, score) in enumerate(ordered, start=1)
    )
    return ScoredSelection(ranked=ranked, method=method, k=k)


def _word_counts(matrix: SimilarityMatrix) -> np.ndarray:
    return np.asarray(matrix.col_word_counts, dtype=np.float64)


def _row_top_k(row: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest entries, ties to the lower index."""
    return np.argsort(-row, kind="stable")[:k]


def score_cisumm(matrix: SimilarityMatrix, normalize: bool = False) -> ScoredSelection:
    """Column-sum scoring over all citances; ranks every judgment sentence."""
    values = matrix.data / _word_counts(matrix)[None, :] if normalize else matrix.data
    scores = values.sum(axis=0)
    candidates = {q: float(scores[q]) for q in range(matrix.cols)}
    return _rank(candidates, "cisumm_ln" if normalize else "cisumm", None)


def score_additive(matrix: SimilarityMatrix, k: int, normalize: bool = False) -> ScoredSelection:
    """Sum each sentence's scores over the citance top-k lists nominating it.

    With normalize, length-normalized scores drive both the top-k
    selection and the accumulation.  k larger than the sentence count is
    clamped, which makes the method degenerate to cisumm.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    k = min(k, matrix.cols)
    values = matrix.data / _word_counts(matrix)[None, :] if normalize else matrix.data
    candidates: dict[int, float] = {}
    for p in range(matrix.rows):
        row = values[p]
        for q in _row_top_k(row, k):
            q = int(q)
            candidates[q] = candidates.get(q, 0.0) + float(row[q])
    return _rank(candidates, "additive_ln" if normalize else "additive", k)


def build_citance_lists(matrix: SimilarityMatrix, k: int) -> CitanceLists:
    """Top-k sentences per citance by raw score, then length-normalized.

    Selection happens on raw scores (post-selection normalization), the
    retained scores are divided by sentence word count, and each list is
    re-sorted by normalized score, ties to the lower sentence index.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    k = min(k, matrix.cols)
    wc = _word_counts(matrix)
    lists = []
    for p in range(matrix.rows):
        row = matrix.data[p]
        retained = [(int(q), float(row[q] / wc[q])) for q in _row_top_k(row, k)]
        retained.sort(key=lambda item: (-item[1], item[0]))
        lists.append(tuple(retained))
    return CitanceLists(lists=tuple(lists), k=k)


def score_citation_diversity(matrix: SimilarityMatrix, k: int) -> ScoredSelection:
    """Round-robin selection honouring the diversity of citation contexts.

    Round r considers the r-th entry of every citance list; citances are
    processed in descending order of that entry's normalized score
    (strongest citance first) and each adds its sentence to the candidate
    set unless already present.  Rounds continue until the lists are
    exhausted; the full candidate set is then ranked by normalized score.
    """
    citance_lists = build_citance_lists(matrix, k)
    candidates: dict[int, float] = {}
    rounds = max((len(entries) for entries in citance_lists.lists), default=0)
    for r in range(rounds):
        offers = [
            (p, entries[r])
            for p, entries in enumerate(citance_lists.lists)
            if r < len(entries)
        ]
        offers.sort(key=lambda offer: (-offer[1][1], offer[0]))
        for _, (q, score) in offers:
            if q not in candidates:
                candidates[q] = score
    return _rank(candidates, "cd", citance_lists.k)


METHODS: dict[str, Callable[..., ScoredSelection]] = {
    "cisumm": lambda matrix, k: score_cisumm(matrix, normalize=False),
    "cisumm-ln": lambda matrix, k: score_cisumm(matrix, normalize=True),
    "additive": lambda matrix, k: score_additive(matrix, k, normalize=False),
    "additive-ln": lambda matrix, k: score_additive(matrix, k, normalize=True),
    "cd": lambda matrix, k: score_citation_diversity(matrix, k),
}

DEFAULT_K = 5


def score(matrix: SimilarityMatrix, method: str, k: int = DEFAULT_K) -> ScoredSelection:
    """Dispatch on a method selector string (see METHODS for valid names)."""
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown scoring method {method!r}; expected one of {sorted(METHODS)}")
    return fn(matrix, k)
