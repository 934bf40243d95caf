"""Mean-pooling transformer encoder on a tiny randomly initialized BERT
(no checkpoint download; the weights are irrelevant to the pooling,
truncation and determinism contracts being tested)."""

from __future__ import annotations

import numpy as np
import pytest
import torch
from fastapi.testclient import TestClient
from transformers import BertConfig, BertModel, BertTokenizer

from embed_service import MeanPoolingTransformerEncoder, create_app

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "court", "appeal", "order", "held", "law", "act", "writ", "plea",
]


@pytest.fixture(scope="module")
def encoder(tmp_path_factory) -> MeanPoolingTransformerEncoder:
    vocab_file = tmp_path_factory.mktemp("vocab") / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB), encoding="utf-8")
    tokenizer = BertTokenizer(str(vocab_file))
    torch.manual_seed(7)
    model = BertModel(
        BertConfig(
            vocab_size=len(VOCAB),
            hidden_size=16,
            num_hidden_layers=1,
            num_attention_heads=2,
            intermediate_size=32,
            max_position_embeddings=24,
        )
    )
    return MeanPoolingTransformerEncoder(model_name="tiny-test-bert", model=model, tokenizer=tokenizer)


class TestMeanPooling:
    def test_dim_is_hidden_size(self, encoder):
        assert encoder.dim == 16

    def test_padding_does_not_leak_into_short_texts(self, encoder):
        # batching a short text with a long one forces padding; masked mean
        # pooling must give (numerically) the same vector as encoding alone
        short = "the court"
        long = "the court held the appeal and the order under the act"
        alone = np.asarray(encoder.encode([short])[0])
        batched = np.asarray(encoder.encode([short, long])[0])
        np.testing.assert_allclose(batched, alone, atol=1e-5)

    def test_pooling_matches_manual_mean(self, encoder):
        texts = ["the appeal held", "the court order under the law"]
        got = np.asarray(encoder.encode(texts))
        enc = encoder._tokenizer(texts, padding=True, return_tensors="pt")
        with torch.inference_mode():
            hidden = encoder._model(**enc).last_hidden_state.numpy()
        mask = enc["attention_mask"].numpy()
        for i in range(len(texts)):
            rows = hidden[i][mask[i] == 1]
            np.testing.assert_allclose(got[i], rows.mean(axis=0), atol=1e-6)

    def test_truncation_to_model_max_length(self, encoder):
        # 200 tokens >> max_position_embeddings; must encode, not crash
        text = " ".join(["appeal"] * 200)
        vec = encoder.encode([text])[0]
        assert len(vec) == 16
        assert all(np.isfinite(vec))

    def test_repeat_determinism(self, encoder):
        a = encoder.encode(["the writ plea held"])[0]
        b = encoder.encode(["the writ plea held"])[0]
        assert a == b

    def test_served_through_app(self, encoder):
        client = TestClient(create_app(encoder, max_batch=4))
        response = client.post("/embed", json={"texts": ["the court", "the appeal"]})
        assert response.status_code == 200
        payload = response.json()
        assert payload["dim"] == 16
        assert len(payload["vectors"]) == 2
        health = client.get("/health").json()
        assert health == {"dim": 16, "model": "tiny-test-bert"}
