"""Turn a ranked selection into the final extract under a word budget.

Selection walks the ranking greedily: a sentence enters the summary when
its word count fits the remaining budget, otherwise it is skipped and the
walk continues with lower-ranked sentences (skip-and-continue maximizes
budget utilization).  If nothing fits at all, the rank-1 sentence is kept
alone.  The chosen sentences are then re-ordered to the judgment's
original order for coherence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import JudgmentDoc
from .errors import EmptyRanking, InvalidRatio
from .scoring import ScoredSelection


@dataclass(frozen=True)
class SummaryResult:
    """Extractive summary with budget accounting."""

    case_id: str
    method: str
    selected: tuple[int, ...]  # ascending original order
    text: str
    word_count: int
    budget_words: int


def assemble_summary(
    judgment: JudgmentDoc, ranking: ScoredSelection, budget_words: int
) -> SummaryResult:
    """Select ranked sentences into the budget and restore document order."""
    if budget_words < 1:
        raise ValueError("budget_words must be >= 1")
    if not ranking.ranked:
        raise EmptyRanking(f"{judgment.case_id}: ranking has no candidates")
    n = len(judgment.sentences)
    for item in ranking.ranked:
        if not 0 <= item.index < n:
            raise ValueError(
                f"{judgment.case_id}: ranked index {item.index} outside 0..{n - 1}"
            )

    chosen: list[int] = []
    remaining = budget_words
    for item in ranking.ranked:
        wc = judgment.sentences[item.index].word_count
        if wc <= remaining:
            chosen.append(item.index)
            remaining -= wc
    if not chosen:
        chosen = [ranking.ranked[0].index]

    selected = tuple(sorted(chosen))
    text = " ".join(judgment.sentences[i].text for i in selected)
    word_count = sum(judgment.sentences[i].word_count for i in selected)
    return SummaryResult(
        case_id=judgment.case_id,
        method=ranking.method,
        selected=selected,
        text=text,
        word_count=word_count,
        budget_words=budget_words,
    )


def budget_from_ratio(judgment: JudgmentDoc, ratio: float) -> int:
    """Word budget as a fraction of the judgment length (at least 1 word)."""
    if not 0.0 < ratio <= 1.0:
        raise InvalidRatio(f"ratio must be in (0, 1], got {ratio}")
    return max(1, round(ratio * judgment.word_count))
