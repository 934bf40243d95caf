"""Document and dataset model: target judgments, citing judgments, citances.

On-disk dataset layout, one directory per case::

    root/
      <case_id>/
        judgment.txt            target judgment, plain UTF-8
        references/ref_1.txt    one or two reference summaries
        references/ref_2.txt    (optional)
        citing/<doc_id>.txt     citing judgments, any number
        citances.jsonl          optional extraction cache

All types are immutable after construction and safe to share between
threads; loading different case directories may proceed in parallel.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import (
    DecodeError,
    EmptyDataset,
    MissingJudgment,
    MissingReference,
    ParseError,
)

JUDGMENT_FILENAME = "judgment.txt"
REFERENCES_DIRNAME = "references"
CITING_DIRNAME = "citing"
CITANCE_CACHE_FILENAME = "citances.jsonl"


@dataclass(frozen=True)
class Sentence:
    """One sentence of a document, at its 0-based position."""

    index: int
    text: str
    word_count: int

    @classmethod
    def from_text(cls, index: int, text: str) -> "Sentence":
        """Build a sentence from raw text, trimming and counting tokens."""
        stripped = text.strip()
        return cls(index=index, text=stripped, word_count=len(stripped.split()))


@dataclass(frozen=True)
class JudgmentDoc:
    """A target judgment tokenized into ordered sentences."""

    case_id: str
    sentences: tuple[Sentence, ...]
    raw_text: str

    @property
    def word_count(self) -> int:
        return sum(s.word_count for s in self.sentences)


@dataclass(frozen=True)
class CitingTextSpan:
    """A paragraph of a citing judgment that references the target."""

    source_doc: str
    paragraph_text: str
    citances: tuple[Sentence, ...]


@dataclass(frozen=True)
class CitingJudgment:
    """A later judgment citing the target, with its extracted spans."""

    doc_id: str
    raw_text: str
    spans: tuple[CitingTextSpan, ...] = ()


class CitanceProvenance(NamedTuple):
    doc_id: str
    span: int


@dataclass(frozen=True)
class CitanceCorpus:
    """All citances pooled across citing judgments, globally indexed.

    Exact duplicate citance texts are retained on purpose: each repetition
    is independent evidence of attention from the citing judgments.
    """

    citances: tuple[Sentence, ...]
    provenance: tuple[CitanceProvenance, ...]

    @property
    def size(self) -> int:
        return len(self.citances)

    def texts(self) -> list[str]:
        return [c.text for c in self.citances]


@dataclass(frozen=True)
class DatasetEntry:
    """One case: target judgment, reference summaries, citing judgments."""

    case_id: str
    judgment: JudgmentDoc
    references: tuple[str, ...]
    citing: tuple[CitingJudgment, ...]


@dataclass(frozen=True)
class DatasetStats:
    """Corpus-level statistics; medians use the lower-median convention."""

    judgment_count: int
    mean_citing: float
    median_judgment_sentences: int
    median_judgment_words: int
    median_reference_sentences: int
    median_reference_words: int

    @property
    def mean_citing_display(self) -> int:
        """Mean citing-judgment count rounded for display."""
        return round(self.mean_citing)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(f"{path} is not valid UTF-8: {exc}") from exc


def load_case(case_dir: Path, cfg=None) -> DatasetEntry:
    """Load a single case directory into a DatasetEntry.

    Raises MissingJudgment / MissingReference when the mandatory files are
    absent, DecodeError on malformed UTF-8.  A case without citing
    documents loads fine; it only fails later, at summarization time, with
    NoCitations.
    """
    from . import segmenter

    case_dir = Path(case_dir)
    cfg = cfg or segmenter.default_config()
    case_id = case_dir.name

    judgment_path = case_dir / JUDGMENT_FILENAME
    if not judgment_path.is_file():
        raise MissingJudgment(f"{case_dir}: no {JUDGMENT_FILENAME}")
    raw = _read_text(judgment_path)
    judgment = JudgmentDoc(
        case_id=case_id,
        sentences=tuple(segmenter.split_sentences(raw, cfg)),
        raw_text=raw,
    )

    ref_dir = case_dir / REFERENCES_DIRNAME
    ref_paths = sorted(ref_dir.glob("ref_*.txt")) if ref_dir.is_dir() else []
    if not ref_paths:
        raise MissingReference(f"{case_dir}: no reference summaries in {REFERENCES_DIRNAME}/")
    references = tuple(_read_text(p) for p in ref_paths)

    citing_dir = case_dir / CITING_DIRNAME
    citing_paths = sorted(citing_dir.glob("*.txt")) if citing_dir.is_dir() else []
    citing = tuple(
        CitingJudgment(doc_id=p.stem, raw_text=_read_text(p)) for p in citing_paths
    )

    return DatasetEntry(case_id=case_id, judgment=judgment, references=references, citing=citing)


def load_dataset(root: Path | str, cfg=None) -> list[DatasetEntry]:
    """Load every case subdirectory under root, sorted by case_id."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root {root} does not exist")
    case_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    return [load_case(p, cfg) for p in case_dirs]


def _lower_median(values: list[int]) -> int:
    """Median with the lower of the two middle values for even counts."""
    if not values:
        raise EmptyDataset("median of empty sample")
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def compute_stats(entries: Iterable[DatasetEntry], cfg=None) -> DatasetStats:
    """Compute dataset statistics over loaded entries.

    Reference summaries are pooled across cases (each reference is one
    sample for the reference medians).  The citing-judgment mean is kept
    exact; rounding happens only at display time.
    """
    from . import segmenter

    entries = list(entries)
    if not entries:
        raise EmptyDataset("no dataset entries")
    cfg = cfg or segmenter.default_config()

    ref_sentence_counts: list[int] = []
    ref_word_counts: list[int] = []
    for entry in entries:
        for ref in entry.references:
            ref_sentence_counts.append(len(segmenter.split_sentences(ref, cfg)))
            ref_word_counts.append(len(ref.split()))

    return DatasetStats(
        judgment_count=len(entries),
        mean_citing=sum(len(e.citing) for e in entries) / len(entries),
        median_judgment_sentences=_lower_median([len(e.judgment.sentences) for e in entries]),
        median_judgment_words=_lower_median([e.judgment.word_count for e in entries]),
        median_reference_sentences=_lower_median(ref_sentence_counts),
        median_reference_words=_lower_median(ref_word_counts),
    )


def write_citances_cache(path: Path | str, corpus: CitanceCorpus) -> None:
    """Write a citance corpus as JSONL, one object per citance."""
    path = Path(path)
    lines = []
    for sent, prov in zip(corpus.citances, corpus.provenance):
        lines.append(
            json.dumps(
                {"doc_id": prov.doc_id, "span": prov.span, "index": sent.index, "text": sent.text},
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    os.replace(tmp, path)


def read_citances_cache(path: Path | str) -> CitanceCorpus:
    """Read a citances.jsonl cache back into a CitanceCorpus."""
    path = Path(path)
    citances: list[Sentence] = []
    provenance: list[CitanceProvenance] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                doc_id = record["doc_id"]
                span = int(record["span"])
                index = int(record["index"])
                text = record["text"]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"{path}:{lineno}: bad citance record: {exc}") from exc
            citances.append(Sentence.from_text(index, text))
            provenance.append(CitanceProvenance(doc_id, span))
    for expected, sent in enumerate(citances):
        if sent.index != expected:
            raise ParseError(
                f"{path}: citance indices not contiguous (got {sent.index}, expected {expected})"
            )
    return CitanceCorpus(citances=tuple(citances), provenance=tuple(provenance))
