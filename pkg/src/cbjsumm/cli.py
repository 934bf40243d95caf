"""Command-line pipeline: summarize, evaluate, stats, extract-citances.

Exit codes: 0 success, 1 configuration or dataset errors, 2 no citances
for the target(s), 3 embedding-backend failures.

The citances.jsonl cache written by ``extract-citances`` (and read by
``summarize``) decouples the slow extraction step from fast, repeatable
scoring runs, so the five methods can be compared on fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import NamedTuple, Sequence

from . import corpus, evaluation, scoring, segmenter, summary
from .corpus import CitanceCorpus, CitingJudgment, JudgmentDoc
from .embedding import (
    EmbeddingProvider,
    RemoteEmbeddingProvider,
    embed_sentences,
    load_embedding_file,
)
from .errors import (
    BackendUnavailable,
    CbjsummError,
    DimensionMismatch,
    MissingEmbedding,
    NoCitations,
    NoMatch,
)
from .simmatrix import build_similarity_matrix, dump_matrix_csv

EMBED_URL_ENV = "CBJSUMM_EMBED_URL"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NO_CITATIONS = 2
EXIT_BACKEND = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the pipeline reserves 2 for
    NoCitations, so usage errors exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


class CaseJob(NamedTuple):
    """One summarization unit: a judgment, its citing docs, its case dir."""

    case_id: str
    judgment: JudgmentDoc
    citing: tuple[CitingJudgment, ...]
    case_dir: Path


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cbjsumm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input_flags(p):
        p.add_argument("--dataset", type=Path, help="dataset root directory")
        p.add_argument("--judgment", type=Path, help="single judgment text file")
        p.add_argument(
            "--citing-dir",
            type=Path,
            help="directory of citing judgments (single-judgment mode)",
        )

    def add_backend_flags(p):
        p.add_argument("--embeddings", type=Path, help="JSONL embedding store")
        p.add_argument(
            "--embed-url",
            help=f"embedding service URL (or ${EMBED_URL_ENV})",
        )

    p_sum = sub.add_parser("summarize", help="run the full pipeline and write summaries")
    add_input_flags(p_sum)
    p_sum.add_argument("--method", required=True, choices=sorted(scoring.METHODS))
    p_sum.add_argument("--k", type=int, default=scoring.DEFAULT_K)
    p_sum.add_argument("--budget-words", type=int)
    p_sum.add_argument("--budget-ratio", type=float)
    add_backend_flags(p_sum)
    p_sum.add_argument("--patterns", type=Path, help="file of target reference patterns")
    p_sum.add_argument("--out", type=Path, required=True, help="output directory")
    p_sum.add_argument("--dump-matrix", type=Path, help="debug CSV of the similarity matrix")
    p_sum.add_argument("--workers", type=int, default=4)

    p_eval = sub.add_parser("evaluate", help="score system summaries against references")
    p_eval.add_argument("--dataset", type=Path, required=True)
    p_eval.add_argument("--system", type=Path, required=True, help="directory of system summaries")
    p_eval.add_argument("--method", default=None, help="method label for the report")
    p_eval.add_argument(
        "--metrics",
        default="rouge",
        help="comma list from {rouge, semantic} or 'all' (default: rouge)",
    )
    add_backend_flags(p_eval)
    p_eval.add_argument("--report", type=Path, help="write the report as JSON")

    p_stats = sub.add_parser("stats", help="dataset statistics")
    p_stats.add_argument("--dataset", type=Path, required=True)

    p_ext = sub.add_parser("extract-citances", help="extract citances and write the cache")
    add_input_flags(p_ext)
    p_ext.add_argument("--patterns", type=Path)
    p_ext.add_argument("--out", type=Path, help="cache directory (single-judgment mode)")

    return parser


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _resolve_provider(parser, args) -> EmbeddingProvider:
    url = args.embed_url or os.environ.get(EMBED_URL_ENV)
    if args.embeddings and args.embed_url:
        parser.error("--embeddings and --embed-url are mutually exclusive")
    if args.embeddings:
        return load_embedding_file(args.embeddings)
    if url:
        return RemoteEmbeddingProvider(url)
    parser.error("an embedding backend is required: --embeddings FILE or --embed-url URL")


def _load_patterns_file(path: Path) -> list[str]:
    lines = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
    return [line for line in lines if line]


def _patterns_for_case(job: CaseJob, cli_patterns: list[str] | None) -> list[str]:
    if cli_patterns:
        return cli_patterns
    per_case = job.case_dir / "patterns.txt"
    if per_case.is_file():
        return _load_patterns_file(per_case)
    return [job.case_id]


def _collect_jobs(parser, args) -> list[CaseJob]:
    if args.dataset and args.judgment:
        parser.error("--dataset and --judgment are mutually exclusive")
    if args.dataset:
        entries = corpus.load_dataset(args.dataset)
        return [
            CaseJob(e.case_id, e.judgment, e.citing, Path(args.dataset) / e.case_id)
            for e in entries
        ]
    if args.judgment:
        cfg = segmenter.default_config()
        raw = args.judgment.read_text(encoding="utf-8")
        judgment = JudgmentDoc(
            case_id=args.judgment.stem,
            sentences=tuple(segmenter.split_sentences(raw, cfg)),
            raw_text=raw,
        )
        citing: tuple[CitingJudgment, ...] = ()
        citing_dir = getattr(args, "citing_dir", None)
        if citing_dir:
            citing = tuple(
                CitingJudgment(doc_id=p.stem, raw_text=p.read_text(encoding="utf-8"))
                for p in sorted(Path(citing_dir).glob("*.txt"))
            )
        return [CaseJob(judgment.case_id, judgment, citing, args.judgment.parent)]
    parser.error("either --dataset or --judgment is required")


def _case_citances(job: CaseJob, patterns: list[str]) -> CitanceCorpus:
    """Citance corpus for one case: cache when present, else extraction."""
    cache = job.case_dir / corpus.CITANCE_CACHE_FILENAME
    if cache.is_file():
        return corpus.read_citances_cache(cache)
    return _extract_citances(job, patterns)


def _extract_citances(job: CaseJob, patterns: list[str]) -> CitanceCorpus:
    cfg = segmenter.default_config()
    spans = []
    for doc in job.citing:
        try:
            spans.extend(segmenter.extract_citing_text_spans(doc, patterns, cfg))
        except NoMatch:
            continue
    return segmenter.collect_citances(spans)


def _summarize_job(
    job: CaseJob,
    args,
    provider: EmbeddingProvider,
    patterns: list[str],
    dump_path: Path | None,
) -> summary.SummaryResult:
    citances = _case_citances(job, patterns)
    if not job.judgment.sentences:
        raise CbjsummError(f"{job.case_id}: judgment has no sentences")

    citance_vecs = embed_sentences(provider, citances.texts())
    judgment_vecs = embed_sentences(provider, [s.text for s in job.judgment.sentences])
    matrix = build_similarity_matrix(
        citance_vecs,
        judgment_vecs,
        [s.word_count for s in job.judgment.sentences],
    )
    if dump_path is not None:
        dump_matrix_csv(matrix, dump_path)

    selection = scoring.score(matrix, args.method, args.k)
    if args.budget_words is not None:
        budget = args.budget_words
    else:
        budget = summary.budget_from_ratio(job.judgment, args.budget_ratio)
    result = summary.assemble_summary(job.judgment, selection, budget)

    out_dir = Path(args.out)
    _atomic_write_text(out_dir / f"{job.case_id}.txt", result.text + "\n")
    sidecar = {
        "case_id": result.case_id,
        "method": args.method,
        "k": args.k,
        "budget_words": result.budget_words,
        "selected_indices": list(result.selected),
        "scores": _selected_scores(selection, result.selected),
    }
    _atomic_write_text(
        out_dir / f"{job.case_id}.json", json.dumps(sidecar, indent=2, sort_keys=True) + "\n"
    )
    return result


def _selected_scores(selection: scoring.ScoredSelection, selected: Sequence[int]) -> list[float]:
    by_index = {r.index: r.score for r in selection.ranked}
    return [by_index[i] for i in selected]


def run_summarize(parser, args) -> int:
    if (args.budget_words is None) == (args.budget_ratio is None):
        parser.error("exactly one of --budget-words or --budget-ratio is required")
    if args.budget_words is not None and args.budget_words < 1:
        parser.error("--budget-words must be >= 1")
    provider = _resolve_provider(parser, args)
    jobs = _collect_jobs(parser, args)
    cli_patterns = _load_patterns_file(args.patterns) if args.patterns else None

    multi_case = args.dataset is not None

    def dump_path_for(job: CaseJob) -> Path | None:
        if args.dump_matrix is None:
            return None
        if multi_case:
            args.dump_matrix.mkdir(parents=True, exist_ok=True)
            return args.dump_matrix / f"{job.case_id}.csv"
        return args.dump_matrix

    skipped: list[str] = []
    done: list[str] = []

    def process(job: CaseJob) -> None:
        try:
            result = _summarize_job(job, args, provider, _patterns_for_case(job, cli_patterns), dump_path_for(job))
        except NoCitations as exc:
            skipped.append(job.case_id)
            print(f"warning: {job.case_id}: skipped ({exc})", file=sys.stderr)
            return
        done.append(job.case_id)
        print(f"{job.case_id}: {len(result.selected)} sentences, {result.word_count}/{result.budget_words} words")

    workers = max(1, min(args.workers, len(jobs)))
    if workers == 1 or len(jobs) == 1:
        for job in jobs:
            process(job)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(process, jobs))

    if not done:
        print("error: no case produced a summary (no citances found)", file=sys.stderr)
        return EXIT_NO_CITATIONS
    return EXIT_OK


def _parse_metrics(parser, value: str) -> set[str]:
    names = {v.strip() for v in value.split(",") if v.strip()}
    if names == {"all"}:
        return {"rouge", "semantic"}
    unknown = names - {"rouge", "semantic"}
    if unknown or not names:
        parser.error(f"--metrics must name rouge and/or semantic, got {value!r}")
    return names


def run_evaluate(parser, args) -> int:
    metrics = _parse_metrics(parser, args.metrics)
    provider = _resolve_provider(parser, args) if "semantic" in metrics else None
    entries = corpus.load_dataset(args.dataset)

    method = args.method
    per_case: list[tuple[str, list[dict[str, float]]]] = []
    for entry in entries:
        system_path = Path(args.system) / f"{entry.case_id}.txt"
        if not system_path.is_file():
            print(f"warning: {entry.case_id}: no system summary, excluded", file=sys.stderr)
            continue
        system_text = system_path.read_text(encoding="utf-8")
        if method is None:
            method = _sidecar_method(Path(args.system) / f"{entry.case_id}.json")
        ref_values = []
        for ref in entry.references:
            values: dict[str, float] = {}
            if "rouge" in metrics:
                values["rouge1"] = evaluation.rouge_n(system_text, ref, 1).f1
                values["rouge2"] = evaluation.rouge_n(system_text, ref, 2).f1
                values["rougeL"] = evaluation.rouge_l(system_text, ref).f1
            if "semantic" in metrics:
                values["semantic"] = evaluation.semantic_similarity(system_text, ref, provider)
            ref_values.append(values)
        per_case.append((entry.case_id, ref_values))

    if not per_case:
        print("error: no case has both a system summary and references", file=sys.stderr)
        return EXIT_CONFIG

    report = evaluation.macro_aggregate(per_case, method=method or "unknown")
    print(evaluation.format_report(report))
    if args.report:
        _atomic_write_text(args.report, evaluation.report_to_json(report) + "\n")
    return EXIT_OK


def _sidecar_method(path: Path) -> str | None:
    if not path.is_file():
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8")).get("method")
    except (json.JSONDecodeError, OSError):
        return None


def run_stats(parser, args) -> int:
    entries = corpus.load_dataset(args.dataset)
    stats = corpus.compute_stats(entries)
    rows = [
        ("judgments", stats.judgment_count),
        ("citing per judgment (mean)", stats.mean_citing_display),
        ("median judgment sentences", stats.median_judgment_sentences),
        ("median judgment words", stats.median_judgment_words),
        ("median reference sentences", stats.median_reference_sentences),
        ("median reference words", stats.median_reference_words),
    ]
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"{label:<{width}}  {value}")
    return EXIT_OK


def run_extract_citances(parser, args) -> int:
    jobs = _collect_jobs(parser, args)
    cli_patterns = _load_patterns_file(args.patterns) if args.patterns else None
    total = 0
    for job in jobs:
        try:
            citances = _extract_citances(job, _patterns_for_case(job, cli_patterns))
        except NoCitations:
            print(f"{job.case_id}: 0 citances", file=sys.stderr)
            continue
        cache_dir = Path(args.out) if getattr(args, "out", None) and not args.dataset else job.case_dir
        cache_dir.mkdir(parents=True, exist_ok=True)
        corpus.write_citances_cache(cache_dir / corpus.CITANCE_CACHE_FILENAME, citances)
        total += citances.size
        print(f"{job.case_id}: {citances.size} citances")
    if total == 0:
        print("error: no citances extracted from any citing judgment", file=sys.stderr)
        return EXIT_NO_CITATIONS
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    runners = {
        "summarize": run_summarize,
        "evaluate": run_evaluate,
        "stats": run_stats,
        "extract-citances": run_extract_citances,
    }
    try:
        return runners[args.command](parser, args)
    except NoCitations as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CITATIONS
    except (BackendUnavailable, MissingEmbedding, DimensionMismatch) as exc:
        print(f"error: embedding backend: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except (CbjsummError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
