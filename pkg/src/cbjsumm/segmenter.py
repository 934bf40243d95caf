"""Rule-based sentence and paragraph segmentation for legal text.

Sentence boundaries sit at runs of ``. ? !`` followed by whitespace and an
upper-case letter or digit.  A period does not end a sentence when the
word before it is a known abbreviation ("Sec.", "No.", "v.", ...) or a
single-letter initial ("K. A. Rao").  Very short fragments are merged
into a neighbour so enumeration markers do not surface as sentences.

Also extracts citing-text-spans: the paragraphs of a citing judgment that
mention the target case, whose sentences ("citances") feed the scorer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import (
    CitanceCorpus,
    CitanceProvenance,
    CitingJudgment,
    CitingTextSpan,
    Sentence,
)
from .errors import NoCitations, NoMatch

_WHITESPACE_RE = re.compile(r"\s+")
# A candidate boundary: terminal punctuation, whitespace, then an optional
# opening quote/bracket and an upper-case letter or digit.
_BOUNDARY_RE = re.compile(r"([.?!]+)\s(?=\s*[\"'“‘(\[]*[A-Z0-9])")
_PARAGRAPH_BREAK_RE = re.compile(r"(?:[ \t\r]*\n){2,}")
_LEADING_PUNCT = "\"'“‘(["


def normalize_whitespace(text: str) -> str:
    """Collapse all whitespace runs to single spaces and trim."""
    return _WHITESPACE_RE.sub(" ", text).strip()


@dataclass(frozen=True)
class SegmenterConfig:
    """Tokenizer settings.

    abbreviations holds lower-cased entries with trailing periods removed;
    use load_abbreviations / default_config rather than building the set
    by hand.
    """

    abbreviations: frozenset[str]
    min_sentence_words: int = 3

    def __post_init__(self) -> None:
        if self.min_sentence_words < 1:
            raise ValueError("min_sentence_words must be >= 1")


def _normalize_abbreviation(entry: str) -> str:
    return entry.strip().rstrip(".").lower()


def load_abbreviations(path: Path | str) -> frozenset[str]:
    """Load a plain-text abbreviation list, one entry per line."""
    entries = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(_normalize_abbreviation(line))
    return frozenset(entries)


def default_abbreviations() -> frozenset[str]:
    """The abbreviation list shipped with the package."""
    text = resources.files("cbjsumm.data").joinpath("legal_abbreviations.txt").read_text("utf-8")
    return frozenset(
        _normalize_abbreviation(line)
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


def default_config() -> SegmenterConfig:
    return SegmenterConfig(abbreviations=default_abbreviations())


def _is_suppressed(norm: str, punct_start: int, punct: str, cfg: SegmenterConfig) -> bool:
    """True when the candidate boundary must not split (abbreviation rule)."""
    if set(punct) != {"."}:
        return False
    word_start = norm.rfind(" ", 0, punct_start) + 1
    word = norm[word_start:punct_start].lstrip(_LEADING_PUNCT)
    base = word.rstrip(".").lower()
    if not base:
        return False
    if base in cfg.abbreviations:
        return True
    # single-letter initials: "K. A. Rao", "J. Doe"
    return len(base) == 1 and base.isalpha()


def _merge_short_fragments(segments: list[str], min_words: int) -> list[str]:
    """Merge fragments below the word threshold into the previous sentence
    (the first short fragment merges forward instead)."""
    merged: list[str] = []
    pending = ""
    for seg in segments:
        if pending:
            seg = pending + " " + seg
            pending = ""
        if len(seg.split()) < min_words:
            if merged:
                merged[-1] = merged[-1] + " " + seg
            else:
                pending = seg
            continue
        merged.append(seg)
    if pending:
        if merged:
            merged[-1] = merged[-1] + " " + pending
        else:
            merged.append(pending)
    return merged


def split_sentences(text: str, cfg: SegmenterConfig | None = None) -> list[Sentence]:
    """Tokenize text into sentences.

    Joining the returned sentence texts with single spaces reproduces the
    whitespace-normalized input exactly, so re-splitting the join yields
    the same sentences (idempotence).  Empty or whitespace-only input
    yields an empty list.
    """
    cfg = cfg or default_config()
    norm = normalize_whitespace(text)
    if not norm:
        return []

    cut_points = [0]
    for match in _BOUNDARY_RE.finditer(norm):
        if _is_suppressed(norm, match.start(1), match.group(1), cfg):
            continue
        cut_points.append(match.end(1))
    cut_points.append(len(norm))

    segments = []
    for start, end in zip(cut_points, cut_points[1:]):
        seg = norm[start:end].strip()
        if seg:
            segments.append(seg)

    segments = _merge_short_fragments(segments, cfg.min_sentence_words)
    return [Sentence.from_text(i, seg) for i, seg in enumerate(segments)]


def split_paragraphs(text: str) -> list[str]:
    """Split text on runs of one or more blank lines, dropping empties."""
    parts = _PARAGRAPH_BREAK_RE.split(text)
    return [p.strip() for p in parts if p.strip()]


def extract_citing_text_spans(
    citing: CitingJudgment,
    target_patterns: Sequence[str],
    cfg: SegmenterConfig | None = None,
) -> list[CitingTextSpan]:
    """Find the paragraphs of a citing judgment that mention the target.

    Matching is case-insensitive substring search after whitespace
    normalization.  Paragraphs with identical normalized text count once.
    Raises NoMatch when no paragraph matches any pattern, which simply
    means this citing judgment contributes nothing.
    """
    if not target_patterns:
        raise ValueError("target_patterns must be non-empty")
    cfg = cfg or default_config()
    needles = [normalize_whitespace(p).lower() for p in target_patterns if p.strip()]
    if not needles:
        raise ValueError("target_patterns contains only blank patterns")

    spans: list[CitingTextSpan] = []
    seen: set[str] = set()
    for paragraph in split_paragraphs(citing.raw_text):
        haystack = normalize_whitespace(paragraph).lower()
        if haystack in seen:
            continue
        if not any(needle in haystack for needle in needles):
            continue
        seen.add(haystack)
        spans.append(
            CitingTextSpan(
                source_doc=citing.doc_id,
                paragraph_text=paragraph,
                citances=tuple(split_sentences(paragraph, cfg)),
            )
        )
    if not spans:
        raise NoMatch(f"{citing.doc_id}: no paragraph matches any target pattern")
    return spans


def collect_citances(spans: Iterable[CitingTextSpan]) -> CitanceCorpus:
    """Pool citances from all spans into one globally indexed corpus.

    Ordering is (citing-judgment order, span order, sentence order) as the
    spans are supplied.  Duplicates are retained.  Raises NoCitations when
    the pool is empty.
    """
    citances: list[Sentence] = []
    provenance: list[CitanceProvenance] = []
    span_ordinal: dict[str, int] = {}
    for span in spans:
        ordinal = span_ordinal.get(span.source_doc, 0)
        span_ordinal[span.source_doc] = ordinal + 1
        for sent in span.citances:
            citances.append(Sentence.from_text(len(citances), sent.text))
            provenance.append(CitanceProvenance(span.source_doc, ordinal))
    if not citances:
        raise NoCitations("no citances collected; target cannot be summarized")
    return CitanceCorpus(citances=tuple(citances), provenance=tuple(provenance))
