"""
End-to-end pipeline on a synthetic case
=======================================

Builds a toy case directory on the fly, fabricates deterministic
embeddings into the JSONL store format, and runs the whole chain:

    load -> extract citances -> embed -> similarity matrix
         -> score -> budgeted summary in original order

Swap the toy store for a real service (``--embed-url`` /
``CBJSUMM_EMBED_URL``) and the same chain produces real summaries.
"""

import hashlib
import tempfile
from pathlib import Path

import numpy as np

from cbjsumm import corpus, segmenter
from cbjsumm.embedding import embed_sentences, load_embedding_file, write_embedding_file
from cbjsumm.scoring import score
from cbjsumm.simmatrix import build_similarity_matrix
from cbjsumm.summary import assemble_summary, budget_from_ratio

JUDGMENT = (
    "The appellant challenged the order of detention under the national act. "
    "The High Court dismissed the challenge at the threshold stage. "
    "This Court examined the scope of preventive detention in depth. "
    "The detaining authority must record subjective satisfaction on relevant material. "
    "Stale incidents cannot ground a fresh order of detention. "
    "The impugned order is therefore quashed and the appeal is allowed."
)

CITING = (
    "This appeal arises from a detention matter of recent vintage.\n\n"
    "In Alpha v State the apex court held that stale incidents cannot ground "
    "a fresh order of detention. The detaining authority must show proximate "
    "material. That ratio governs the present facts.\n\n"
    "Costs are left to the discretion of the parties."
)


def toy_vector(text: str, dim: int = 16) -> np.ndarray:
    """Deterministic stand-in for a sentence encoder."""
    seed = int.from_bytes(hashlib.sha256(text.strip().encode()).digest()[:8], "big")
    return np.random.default_rng(seed).normal(size=dim).astype(np.float32)


with tempfile.TemporaryDirectory() as scratch:
    case_dir = Path(scratch) / "alpha_v_state"
    (case_dir / "references").mkdir(parents=True)
    (case_dir / "citing").mkdir()
    (case_dir / "judgment.txt").write_text(JUDGMENT, encoding="utf-8")
    (case_dir / "references" / "ref_1.txt").write_text(
        "The detention order was quashed for resting on stale incidents.", encoding="utf-8"
    )
    (case_dir / "citing" / "cite_one.txt").write_text(CITING, encoding="utf-8")

    cfg = segmenter.default_config()
    entry = corpus.load_case(case_dir, cfg)
    print(f"loaded {entry.case_id}: {len(entry.judgment.sentences)} judgment sentences")

    spans = []
    for doc in entry.citing:
        spans.extend(segmenter.extract_citing_text_spans(doc, ["Alpha v State"], cfg))
    citances = segmenter.collect_citances(spans)
    print(f"citances harvested: {citances.size}")

    # fabricate the embedding store covering every sentence we will embed
    texts = sorted({s.text for s in entry.judgment.sentences} | set(citances.texts()))
    store_path = Path(scratch) / "embeddings.jsonl"
    write_embedding_file(store_path, ((t, toy_vector(t)) for t in texts))
    provider = load_embedding_file(store_path)
    print(f"store: {len(texts)} vectors, dim {provider.dim}")

    matrix = build_similarity_matrix(
        embed_sentences(provider, citances.texts()),
        embed_sentences(provider, [s.text for s in entry.judgment.sentences]),
        [s.word_count for s in entry.judgment.sentences],
    )
    print(f"similarity matrix: {matrix.rows} x {matrix.cols}")

    budget = budget_from_ratio(entry.judgment, 0.45)
    for method in ("cisumm", "cd"):
        result = assemble_summary(entry.judgment, score(matrix, method, k=3), budget)
        print(f"\n{method} summary ({result.word_count}/{result.budget_words} words,"
              f" sentences {list(result.selected)}):")
        print(f"  {result.text}")
