"""Adapters against tiny randomly initialized BERT models saved to disk."""

import re

import numpy as np
import pytest

torch = pytest.importorskip("torch")
transformers = pytest.importorskip("transformers")

from reqanaphora.corpus import read_report  # noqa: E402
from reqanaphora.errors import EncoderError, ResolverBackendError  # noqa: E402
from reqanaphora.features import TransformerEncoder, extract_fe  # noqa: E402
from reqanaphora.nlpcore import triples_for_document  # noqa: E402
from reqanaphora.pipeline import PipelineConfig, run  # noqa: E402
from reqanaphora.resolver import TransformerSpanPredictor, encode, predict_spans  # noqa: E402
from reqanaphora.synth import WORKED_EXAMPLE_SPEC  # noqa: E402

pytestmark = pytest.mark.slow


def _save(path, model_cls, hidden=768):
    from transformers import BertConfig, BertTokenizerFast

    words = sorted(set(re.findall(r"[a-z]+|[^\sa-z]", WORKED_EXAMPLE_SPEC.lower())))
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + words
    path.mkdir()
    (path / "vocab.txt").write_text("\n".join(vocab) + "\n")
    BertTokenizerFast(str(path / "vocab.txt")).save_pretrained(path)
    torch.manual_seed(0)
    cfg = BertConfig(vocab_size=len(vocab), hidden_size=hidden, num_hidden_layers=1, num_attention_heads=12,
                     intermediate_size=32, max_position_embeddings=128)
    model_cls(cfg).save_pretrained(path)
    return str(path)


@pytest.fixture(scope="module")
def encoder_dir(tmp_path_factory):
    return _save(tmp_path_factory.mktemp("m") / "enc", transformers.BertModel)


@pytest.fixture(scope="module")
def qa_dir(tmp_path_factory):
    return _save(tmp_path_factory.mktemp("m") / "qa", transformers.BertForQuestionAnswering)


def test_encoder_vectors(encoder_dir, example_doc):
    enc = TransformerEncoder(encoder_dir, max_length=128)
    triples = [t for _, _, ts in triples_for_document(example_doc) for t in ts]
    a, b = extract_fe(triples[0], enc), extract_fe(triples[0], enc)
    assert len(a) == 768 and np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, extract_fe(triples[1], enc).values)


def test_encoder_dimension_check(tmp_path):
    path = _save(tmp_path / "small", transformers.BertModel, hidden=96)
    with pytest.raises(EncoderError, match="96"):
        TransformerEncoder(path)


def test_missing_models(tmp_path):
    with pytest.raises(EncoderError):
        TransformerEncoder(str(tmp_path / "nope"))
    with pytest.raises(ResolverBackendError):
        TransformerSpanPredictor(str(tmp_path / "nope"))


def test_span_predictor(qa_dir, example_doc):
    from reqanaphora.nlpcore import build_context, find_pronouns

    pred = TransformerSpanPredictor(qa_dir, max_length=128)
    (p,) = find_pronouns(example_doc)
    ctx = build_context(p, example_doc)
    spans = predict_spans(encode(ctx, p, pred.tokenizer, 128), pred, k=3)
    assert 1 <= len(spans) <= 3
    assert all(0.0 <= s.probability <= 1.0 for s in spans)
    assert all(s.end < ctx.pronoun_position or s.start > ctx.pronoun_position for s in spans)
    assert [s.probability for s in spans] == sorted((s.probability for s in spans), reverse=True)


def test_pipeline_with_models(encoder_dir, qa_dir, tmp_path):
    src = tmp_path / "myRS.txt"
    src.write_text(WORKED_EXAMPLE_SPEC)
    cfg = PipelineConfig(analyzer="fixture", encoder="transformer", encoder_path=encoder_dir,
                         resolver_backend="model", resolver_model_path=qa_dir, max_length=128)
    s = run(src, tmp_path / "o.csv", cfg)
    assert "heuristic-resolver" not in s.degraded and "hashing-encoder" not in s.degraded
    assert len(read_report((tmp_path / "o.csv").read_text())) == 1
