"""Citation-based extractive summarization of legal judgments.

Sentences of a target judgment are scored by their embedding-space
similarity to the citances harvested from judgments that cite it, then
assembled into a word-budgeted extract in original document order.
"""

from .corpus import (
    CitanceCorpus,
    CitingJudgment,
    CitingTextSpan,
    DatasetEntry,
    DatasetStats,
    JudgmentDoc,
    Sentence,
    compute_stats,
    load_dataset,
)
from .embedding import (
    EmbeddingProvider,
    EmbeddingVector,
    FileEmbeddingProvider,
    RemoteEmbeddingProvider,
    embed_sentences,
    fetch_remote_embeddings,
    load_embedding_file,
    write_embedding_file,
)
from .evaluation import (
    EvalReport,
    RougeScore,
    macro_aggregate,
    rouge_l,
    rouge_n,
    semantic_similarity,
)
from .scoring import (
    METHODS,
    CitanceLists,
    ScoredSelection,
    build_citance_lists,
    score,
    score_additive,
    score_cisumm,
    score_citation_diversity,
)
from .segmenter import (
    SegmenterConfig,
    collect_citances,
    default_config,
    extract_citing_text_spans,
    load_abbreviations,
    split_paragraphs,
    split_sentences,
)
from .simmatrix import SimilarityMatrix, build_similarity_matrix, cosine_similarity
from .summary import SummaryResult, assemble_summary, budget_from_ratio

__version__ = "0.1.0"

__all__ = [
    "CitanceCorpus",
    "CitanceLists",
    "CitingJudgment",
    "CitingTextSpan",
    "DatasetEntry",
    "DatasetStats",
    "EmbeddingProvider",
    "EmbeddingVector",
    "EvalReport",
    "FileEmbeddingProvider",
    "JudgmentDoc",
    "METHODS",
    "RemoteEmbeddingProvider",
    "RougeScore",
    "ScoredSelection",
    "SegmenterConfig",
    "Sentence",
    "SimilarityMatrix",
    "SummaryResult",
    "assemble_summary",
    "budget_from_ratio",
    "build_citance_lists",
    "build_similarity_matrix",
    "collect_citances",
    "compute_stats",
    "cosine_similarity",
    "default_config",
    "embed_sentences",
    "extract_citing_text_spans",
    "fetch_remote_embeddings",
    "load_abbreviations",
    "load_dataset",
    "load_embedding_file",
    "macro_aggregate",
    "rouge_l",
    "rouge_n",
    "score",
    "score_additive",
    "score_cisumm",
    "score_citation_diversity",
    "semantic_similarity",
    "split_paragraphs",
    "split_sentences",
    "write_embedding_file",
]
