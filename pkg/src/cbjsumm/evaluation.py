"""ROUGE-1/2/L F-scores, embedding-cosine semantic similarity, and
macro-averaged reporting.

ROUGE tokenization is fixed here because published numbers are sensitive
to it: lowercase, remove Unicode punctuation, split on whitespace; no
stemming, no stopword removal.  The semantic metric embeds each text's
sentences, mean-pools them, and takes the cosine of the two means.

Aggregation averages over a case's references first, then reports the
mean and sample standard deviation (divisor N-1) across cases.
"""

from __future__ import annotations

import json
import math
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .embedding import EmbeddingProvider, embed_sentences
from .errors import EmptyInput, EmptyText, ZeroVector
from .segmenter import SegmenterConfig, split_sentences

ROUGE_METRICS = ("rouge1", "rouge2", "rougeL")


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def tokenize(text: str) -> list[str]:
    """Lowercase, strip Unicode punctuation, split on whitespace."""
    lowered = text.lower()
    cleaned = "".join(c for c in lowered if not unicodedata.category(c).startswith("P"))
    return cleaned.split()


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(system: str, reference: str, n: int) -> RougeScore:
    """Clipped n-gram overlap F-score; empty n-gram sets yield zero."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    sys_counts = _ngrams(tokenize(system), n)
    ref_counts = _ngrams(tokenize(reference), n)
    sys_total = sum(sys_counts.values())
    ref_total = sum(ref_counts.values())
    if sys_total == 0 or ref_total == 0:
        return RougeScore(0.0, 0.0, 0.0)
    overlap = sum((sys_counts & ref_counts).values())
    precision = overlap / sys_total
    recall = overlap / ref_total
    return RougeScore(precision, recall, _f1(precision, recall))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Classic O(|a|*|b|) dynamic program, two rolling rows."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(system: str, reference: str) -> RougeScore:
    """Longest-common-subsequence F-score over the token sequences."""
    sys_tokens = tokenize(system)
    ref_tokens = tokenize(reference)
    if not sys_tokens or not ref_tokens:
        return RougeScore(0.0, 0.0, 0.0)
    lcs = _lcs_length(sys_tokens, ref_tokens)
    precision = lcs / len(sys_tokens)
    recall = lcs / len(ref_tokens)
    return RougeScore(precision, recall, _f1(precision, recall))


def semantic_similarity(
    system: str,
    reference: str,
    provider: EmbeddingProvider,
    cfg: SegmenterConfig | None = None,
) -> float:
    """Cosine between the mean sentence embeddings of the two texts."""
    means = []
    for label, text in (("system", system), ("reference", reference)):
        sentences = split_sentences(text, cfg)
        if not sentences:
            raise EmptyText(f"{label} text tokenizes to zero sentences")
        vectors = embed_sentences(provider, [s.text for s in sentences])
        stacked = np.stack([v.values for v in vectors]).astype(np.float64)
        means.append(stacked.mean(axis=0))
    a, b = means
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na < 1e-12 or nb < 1e-12:
        raise ZeroVector("mean sentence embedding has near-zero norm")
    return float(np.dot(a, b) / (na * nb))


class MetricSummary(NamedTuple):
    mean: float
    std: float


@dataclass(frozen=True)
class CaseResult:
    """Per-case metric values after averaging over its references."""

    case_id: str
    values: Mapping[str, float]


@dataclass(frozen=True)
class EvalReport:
    method: str
    cases: tuple[CaseResult, ...]
    metrics: Mapping[str, MetricSummary]


def _sample_std(values: Sequence[float], mean: float) -> float:
    if len(values) < 2:
        return 0.0
    return math.sqrt(sum((v - mean) ** 2 for v in values) / (len(values) - 1))


def macro_aggregate(
    per_case: Sequence[tuple[str, Sequence[Mapping[str, float]]]],
    method: str = "unknown",
) -> EvalReport:
    """Average each case over its references, then mean/std across cases.

    per_case holds (case_id, per-reference metric dicts); every reference
    of a case must report the same metric keys.
    """
    if not per_case:
        raise EmptyInput("no cases to aggregate")
    cases = []
    for case_id, ref_values in per_case:
        if not ref_values:
            raise EmptyInput(f"{case_id}: no reference scores")
        keys = set(ref_values[0])
        for rv in ref_values[1:]:
            if set(rv) != keys:
                raise ValueError(f"{case_id}: references report different metrics")
        averaged = {
            key: sum(rv[key] for rv in ref_values) / len(ref_values) for key in sorted(keys)
        }
        cases.append(CaseResult(case_id=case_id, values=averaged))

    metric_keys = set(cases[0].values)
    for case in cases[1:]:
        if set(case.values) != metric_keys:
            raise ValueError("cases report different metric sets")

    metrics = {}
    for key in sorted(metric_keys):
        values = [case.values[key] for case in cases]
        mean = sum(values) / len(values)
        metrics[key] = MetricSummary(mean=mean, std=_sample_std(values, mean))
    return EvalReport(method=method, cases=tuple(cases), metrics=metrics)


def format_report(report: EvalReport) -> str:
    """Render a report table: ROUGE as percentages, semantic as raw values."""
    lines = [f"method: {report.method}  (cases: {len(report.cases)})"]
    for key, summary in report.metrics.items():
        if key in ROUGE_METRICS:
            lines.append(f"  {key:<10} {summary.mean * 100:6.2f} ± {summary.std * 100:.2f}")
        else:
            lines.append(f"  {key:<10} {summary.mean:6.2f} ± {summary.std:.2f}")
    return "\n".join(lines)


def report_to_json(report: EvalReport) -> str:
    """Serialize a report to the JSON schema used by ``--report``."""
    payload: dict = {
        "method": report.method,
        "cases": [
            {"case_id": case.case_id, **{k: v for k, v in sorted(case.values.items())}}
            for case in report.cases
        ],
    }
    for key, summary in report.metrics.items():
        payload[key] = {"mean": summary.mean, "std": summary.std}
    return json.dumps(payload, indent=2, sort_keys=True)
