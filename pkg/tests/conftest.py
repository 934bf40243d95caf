"""Shared fixtures: the worked matrix, deterministic embeddings, a
three-case dataset laid out on disk, a JSONL store covering it, and a
stub embedding HTTP service."""

from __future__ import annotations

import hashlib
import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np
import pytest

from cbjsumm import corpus, segmenter
from cbjsumm.embedding import write_embedding_file
from cbjsumm.simmatrix import SimilarityMatrix

# The worked 3x4 example used across the scoring tests.
SPEC_ROWS = [
    [0.9, 0.1, 0.4, 0.3],
    [0.2, 0.8, 0.5, 0.1],
    [0.7, 0.3, 0.6, 0.2],
]
SPEC_WORD_COUNTS = (10, 5, 20, 8)


def make_matrix(rows, word_counts) -> SimilarityMatrix:
    data = np.asarray(rows, dtype=np.float64)
    data.setflags(write=False)
    return SimilarityMatrix(data=data, col_word_counts=tuple(word_counts))


@pytest.fixture
def spec_matrix() -> SimilarityMatrix:
    return make_matrix(SPEC_ROWS, SPEC_WORD_COUNTS)


def vector_for(text: str, dim: int = 12) -> np.ndarray:
    """Deterministic pseudo-embedding derived from the text content."""
    seed = int.from_bytes(hashlib.sha256(text.strip().encode("utf-8")).digest()[:8], "big")
    rng = np.random.default_rng(seed)
    return rng.normal(size=dim).astype(np.float32)


# --- on-disk dataset fixture ---------------------------------------------

CASES = {
    "alpha_v_state": {
        "judgment": (
            "The appellant challenged the order of detention under the national act. "
            "The High Court dismissed the challenge at the threshold stage. "
            "This Court examined the scope of preventive detention in depth. "
            "The detaining authority must record subjective satisfaction on relevant material. "
            "Stale incidents cannot ground a fresh order of detention. "
            "The impugned order is therefore quashed and the appeal is allowed."
        ),
        "references": [
            "The court quashed the detention order because the incidents were stale. "
            "Subjective satisfaction must rest on relevant and proximate material.",
        ],
        "patterns": ["Alpha v State"],
        "citing": {
            "cite_a1": (
                "This appeal arises from a detention matter of recent vintage.\n\n"
                "In Alpha v State the apex court held that stale incidents cannot ground "
                "a fresh order of detention. The detaining authority must show proximate "
                "material. That ratio governs the present facts.\n\n"
                "Costs are left to the discretion of the parties."
            ),
            "cite_a2": (
                "The petitioner relies on Alpha v State for the proposition that subjective "
                "satisfaction requires relevant material. We find the reliance well placed.\n\n"
                "The detention order before us suffers from the same defect."
            ),
        },
    },
    "bravo_v_union": {
        "judgment": (
            "The writ petition questions the acquisition of agricultural land for a highway. "
            "Compensation was fixed without hearing the recorded owners of the land. "
            "Natural justice requires notice before the determination of compensation. "
            "The acquisition itself is sustained as the public purpose is genuine. "
            "The matter is remitted for fresh determination of compensation after notice."
        ),
        "references": [
            "The acquisition stood but compensation must be redetermined after notice. "
            "Natural justice requires hearing the owners before fixing compensation.",
            "Compensation fixed without notice to owners was set aside and remitted. "
            "The public purpose behind the acquisition was not disturbed.",
        ],
        "patterns": ["Bravo v Union"],
        "citing": {
            "cite_b1": (
                "The appellants press for enhanced compensation in this batch of appeals.\n\n"
                "Bravo v Union settles that natural justice requires notice before the "
                "determination of compensation. The respondent could not distinguish it.\n\n"
                "We allow the appeals on that short ground."
            ),
        },
    },
    "charlie_v_regina": {
        "judgment": (
            "The accused was convicted of criminal breach of trust by the trial court. "
            "The prosecution failed to prove entrustment of the disputed funds. "
            "Mere dominion over property does not establish entrustment in law. "
            "Suspicion however strong cannot substitute for legal proof of guilt. "
            "The conviction is set aside and the accused stands acquitted of the charge. "
            "The bail bonds stand discharged with immediate effect."
        ),
        "references": [
            "The conviction was reversed because entrustment was not proved. "
            "Suspicion cannot replace proof and the accused was acquitted.",
        ],
        "patterns": ["Charlie v Regina"],
        "citing": {
            "cite_c1": (
                "The question is whether entrustment stands established on this record.\n\n"
                "Charlie v Regina holds that mere dominion over property does not establish "
                "entrustment in law. The prosecution must prove entrustment affirmatively.\n\n"
                "Applying that standard the charge must fail here as well."
            ),
            "cite_c2": (
                "Suspicion and proof occupy different planes in criminal law.\n\n"
                "As observed in Charlie v Regina, suspicion however strong cannot substitute "
                "for legal proof of guilt."
            ),
        },
    },
}


def build_dataset(root: Path, cases: dict = CASES) -> Path:
    """Materialize the fixture dataset under root using the on-disk layout."""
    for case_id, spec in cases.items():
        case_dir = root / case_id
        (case_dir / "references").mkdir(parents=True)
        (case_dir / "citing").mkdir()
        (case_dir / "judgment.txt").write_text(spec["judgment"], encoding="utf-8")
        for i, ref in enumerate(spec["references"], start=1):
            (case_dir / "references" / f"ref_{i}.txt").write_text(ref, encoding="utf-8")
        for doc_id, text in spec["citing"].items():
            (case_dir / "citing" / f"{doc_id}.txt").write_text(text, encoding="utf-8")
        (case_dir / "patterns.txt").write_text("\n".join(spec["patterns"]) + "\n", encoding="utf-8")
    return root


def dataset_texts(root: Path) -> set[str]:
    """Every sentence the pipeline will need to embed for this dataset."""
    cfg = segmenter.default_config()
    texts: set[str] = set()
    for entry in corpus.load_dataset(root):
        texts.update(s.text for s in entry.judgment.sentences)
        for ref in entry.references:
            texts.update(s.text for s in segmenter.split_sentences(ref, cfg))
        patterns_file = root / entry.case_id / "patterns.txt"
        patterns = [
            line.strip()
            for line in patterns_file.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        for doc in entry.citing:
            try:
                spans = segmenter.extract_citing_text_spans(doc, patterns, cfg)
            except Exception:
                continue
            for span in spans:
                texts.update(s.text for s in span.citances)
    return texts


def build_store(path: Path, texts: set[str], dim: int = 12) -> Path:
    write_embedding_file(path, ((t, vector_for(t, dim)) for t in sorted(texts)))
    return path


@pytest.fixture
def dataset(tmp_path: Path) -> Path:
    return build_dataset(tmp_path / "dataset")


@pytest.fixture
def dataset_with_store(tmp_path: Path) -> tuple[Path, Path]:
    root = build_dataset(tmp_path / "dataset")
    store = build_store(tmp_path / "embeddings.jsonl", dataset_texts(root))
    return root, store


class EmbedStubService:
    """Tiny /embed server with a scriptable failure budget."""

    def __init__(self, dim=8, fail_first=0, fail_status=503):
        self.dim = dim
        self.fail_first = fail_first
        self.fail_status = fail_status
        self.requests: list[list[str]] = []
        self._lock = threading.Lock()
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                if self.path != "/embed":
                    self.send_error(404)
                    return
                length = int(self.headers.get("Content-Length", 0))
                texts = json.loads(self.rfile.read(length))["texts"]
                with stub._lock:
                    stub.requests.append(texts)
                    should_fail = stub.fail_first > 0
                    if should_fail:
                        stub.fail_first -= 1
                if should_fail:
                    body = json.dumps({"error": "unavailable"}).encode()
                    self.send_response(stub.fail_status)
                else:
                    vectors = [vector_for(t, stub.dim).tolist() for t in texts]
                    body = json.dumps({"dim": stub.dim, "vectors": vectors}).encode()
                    self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.server.server_address[1]}"

    def close(self):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def stub_service():
    services = []

    def make(**kwargs):
        service = EmbedStubService(**kwargs)
        services.append(service)
        return service

    yield make
    for service in services:
        service.close()
