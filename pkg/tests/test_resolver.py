import logging

import pytest
from hypothesis import given, strategies as st

from reqanaphora.corpus import parse_spec
from reqanaphora.errors import InternalConsistencyError, ResolverBackendError
from reqanaphora.nlpcore import PronounOccurrence, analyze_document, build_context, extract_candidates, find_pronouns
from reqanaphora.resolver import (
    FixtureTokenizer,
    HeuristicSpanPredictor,
    SpanPrediction,
    encode,
    predict_spans,
    resolve,
    squad_example,
)


@pytest.fixture(scope="module")
def tok():
    return FixtureTokenizer()


def _single(doc):
    (p,) = find_pronouns(doc)
    return p, build_context(p, doc)


def test_encoding_layout(example_doc, tok):
    p, ctx = _single(example_doc)
    enc = encode(ctx, p, tok)
    # hand count: R1 has 19 words, six of them longer than six letters; R2 has 14 words, four long
    assert len(enc.context_ids) == 43
    assert len(enc) == 1 + 43 + 1 + 1
    assert enc.token_ids[0] == tok.cls_id and enc.cls_index == 0
    assert enc.token_ids.count(tok.sep_id) == 1 and enc.token_ids[enc.sep_index] == tok.sep_id
    assert tok.decode(enc.pronoun_ids) == "them"


def test_decode_round_trip(example_doc, tok):
    p, ctx = _single(example_doc)
    enc = encode(ctx, p, tok)
    assert tok.decode(enc.context_ids) == " ".join(w.lower() for w in ctx.surfaces())


def test_empty_pronoun_segment(example_doc, tok):
    p, ctx = _single(example_doc)
    bad = PronounOccurrence(p.req_ordinal, p.token_index, "", p.pronoun_class, p.req_id)
    with pytest.raises(InternalConsistencyError):
        encode(ctx, bad, tok)
    elsewhere = PronounOccurrence(p.req_ordinal, 0, "them", p.pronoun_class, p.req_id)
    with pytest.raises(InternalConsistencyError):
        encode(ctx, elsewhere, tok)


def test_left_truncation_keeps_pronoun(example_doc, tok, caplog):
    p, ctx = _single(example_doc)
    with caplog.at_level(logging.WARNING):
        enc = encode(ctx, p, tok, max_length=20)
    assert len(enc) == 20
    assert enc.truncated == 43 - 17
    assert ctx.pronoun_position in enc.token_map
    assert enc.token_map[enc.sep_index - 1] == len(ctx.tokens) - 1
    assert "truncated" in caplog.text


def test_heuristic_top_span(example_doc, tok):
    # write-once folders: 1/1 + 2 + 1 = 4.0; authorized users: 1/2 + 2 + 1 + 0.4 (subject) = 3.9
    p, ctx = _single(example_doc)
    spans = predict_spans(encode(ctx, p, tok), HeuristicSpanPredictor())
    assert spans[0].text == "write-once folders"
    assert spans[1].text == "authorized users"
    assert [s.probability for s in spans] == sorted((s.probability for s in spans), reverse=True)
    assert len(predict_spans(encode(ctx, p, tok), HeuristicSpanPredictor(), k=1)) == 1


def test_heuristic_probabilities_sum_to_one(example_doc, tok):
    p, ctx = _single(example_doc)
    spans = predict_spans(encode(ctx, p, tok), HeuristicSpanPredictor(), k=100)
    assert len(spans) == len(extract_candidates(ctx, p))
    assert sum(s.probability for s in spans) == pytest.approx(1.0)


def test_no_np_gives_no_spans(rule_analyzer, tok):
    doc = analyze_document(parse_spec("Them shall be stored.", "d"), rule_analyzer)
    (p,) = find_pronouns(doc)
    spans = predict_spans(encode(build_context(p, doc, 0), p, tok), HeuristicSpanPredictor())
    assert spans == []
    assert resolve(spans).flag == "none"


def test_single_candidate_is_certain(golden, tok):
    from reqanaphora.fixtures import fixture_analyzer

    doc = analyze_document(parse_spec("The system shall record them.", "d"), fixture_analyzer(golden))
    p, ctx = _single(doc)
    (span,) = predict_spans(encode(ctx, p, tok), HeuristicSpanPredictor())
    assert span.text == "The system" and span.probability == 1.0
    assert resolve([span]).flag == "accepted"


def test_backend_failure_wrapped(example_doc, tok):
    class Broken:
        identity, max_length = "broken", 512

        def predict(self, enc, k):
            raise RuntimeError("cuda")

    class Rogue(Broken):
        def predict(self, enc, k):
            return [SpanPrediction(0, enc.context.pronoun_position, "x", 0.5)]

    p, ctx = _single(example_doc)
    with pytest.raises(ResolverBackendError):
        predict_spans(encode(ctx, p, tok), Broken())
    with pytest.raises(ResolverBackendError):
        predict_spans(encode(ctx, p, tok), Rogue())


@pytest.mark.parametrize("prob, flag", [(0.95, "accepted"), (0.9, "low_confidence"), (0.3, "low_confidence")])
def test_threshold(prob, flag):
    s = SpanPrediction(0, 1, "x", prob)
    res = resolve([s])
    assert res.flag == flag and res.accepted == s


@given(st.lists(st.floats(0, 1), max_size=6), st.floats(0.01, 0.99))
def test_resolve_property(probs, threshold):
    spans = [SpanPrediction(i, i, str(i), p) for i, p in enumerate(sorted(probs, reverse=True))]
    res = resolve(spans, threshold)
    assert (res.flag == "none") == (not spans)
    if spans:
        assert res.accepted == spans[0]
        assert (res.flag == "accepted") == (spans[0].probability > threshold)


def test_squad_formatting(example_doc):
    p, ctx = _single(example_doc)
    cand = extract_candidates(ctx, p)[0]
    ex = squad_example(ctx, p, cand, "q1")
    start = ex["answers"]["answer_start"][0]
    assert ex["context"][start : start + len(ex["answers"]["text"][0])] == "write-once folders"
    assert ex["question"] == "them"
    assert squad_example(ctx, p, None, "q2")["answers"]["text"] == []
