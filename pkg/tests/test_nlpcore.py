import pytest
from hypothesis import given, settings, strategies as st

from conftest import norm_phrase
from reqanaphora.corpus import Requirement, parse_spec
from reqanaphora.errors import AnalysisError
from reqanaphora.nlpcore import (
    analyze,
    analyze_document,
    build_context,
    extract_candidates,
    find_pronouns,
    is_pleonastic,
    make_triples,
    split_triple_id,
    triples_for_document,
)
from reqanaphora.synth import generate_requirements


def _doc(text, analyzer, doc_id="d"):
    return analyze_document(parse_spec(text, doc_id), analyzer)


def test_simple_requirement(rule_analyzer):
    ann = rule_analyzer.analyze_text("The system shall record them.")
    assert [t.surface for t in ann.tokens] == ["The", "system", "shall", "record", "them", "."]
    assert ann.sentence_boundaries == ((0, 5),)
    assert "The system" in [c.text for c in ann.np_chunks]
    them = ann.tokens[4]
    assert them.pos_tag == "PRON" and them.attrs["number"] == "Plur"


def test_single_token(rule_analyzer):
    ann = rule_analyzer.analyze_text("X")
    assert len(ann.tokens) == 1 and ann.sentence_boundaries == ((0, 0),)
    assert len(ann.np_chunks) <= 1


def test_two_sentences_partition(rule_analyzer):
    ann = rule_analyzer.analyze_text("The parser reads the file. It stores the results.")
    assert len(ann.sentence_boundaries) == 2
    covered = [i for s, e in ann.sentence_boundaries for i in range(s, e + 1)]
    assert covered == list(range(len(ann.tokens)))


def test_analysis_error_carries_id(rule_analyzer):
    class Broken:
        backend_id = "broken"

        def analyze_text(self, text):
            raise RuntimeError("boom")

    with pytest.raises(AnalysisError, match="R9"):
        analyze(Requirement("R9", 0, "text"), Broken())
    with pytest.raises(AnalysisError):
        analyze(Requirement("R1", 0, "   "), rule_analyzer)


def test_worked_example_pronoun(example_doc):
    ps = find_pronouns(example_doc)
    assert [(p.req_id, p.surface, p.pronoun_class) for p in ps] == [("R2", "them", "personal")]


def test_no_pronouns(rule_analyzer):
    assert find_pronouns(_doc("The system shall not send any messages.", rule_analyzer)) == []


def test_pleonastic_filter(rule_analyzer):
    doc = _doc("It is required that the system logs it.", rule_analyzer)
    ps = find_pronouns(doc)
    assert [(p.surface, p.token_index) for p in ps] == [("it", 7)]
    assert len(find_pronouns(doc, exclude_pleonastic=False)) == 2


@pytest.mark.parametrize("text, expected", [
    ("it shall be possible to export the reports", True),
    ("it is necessary that the file exists", True),
    ("it seems that the link is down", True),
    ("it is archived daily", False),
    ("it shall be stored", False),
])
def test_pleonastic_patterns(text, expected):
    assert is_pleonastic(text.split()) is expected


def test_context_windows(example_doc):
    (p,) = find_pronouns(example_doc)
    ctx = build_context(p, example_doc, 1)
    assert ctx.req_ids == ("R1", "R2")
    r1, r2 = (r.annotations for r in example_doc.requirements)
    assert len(ctx.tokens) == len(r1.tokens) + len(r2.tokens)
    assert ctx.tokens[ctx.pronoun_position].surface == "them"
    assert build_context(p, example_doc, 0).req_ids == ("R2",)
    assert sorted(set(ctx.offset_map)) == list(ctx.offset_map)


def test_first_requirement_context(rule_analyzer):
    doc = _doc("The controller shall validate the messages and forward them to the gateway.", rule_analyzer)
    (p,) = find_pronouns(doc)
    assert build_context(p, doc, 1).req_ids == ("R1",)


def test_worked_example_candidates(example_doc):
    (p,) = find_pronouns(example_doc)
    ctx = build_context(p, example_doc, 1)
    cands = extract_candidates(ctx, p)
    texts = {norm_phrase(c.text) for c in cands}
    for phrase in ("records, parts, folders and groups of folders", "records", "write-once folders",
                   "access", "obliteration", "system", "parts", "groups of folders"):
        assert phrase in texts
    assert [c.recency_rank for c in cands] == list(range(1, len(cands) + 1))
    assert all(c.ctx_end < ctx.pronoun_position for c in cands)
    assert cands[0].text == "write-once folders"


def test_pronoun_first_has_no_candidates(rule_analyzer):
    doc = _doc("Them shall be stored.", rule_analyzer)
    p = find_pronouns(doc)[0]
    assert p.token_index == 0
    ctx = build_context(p, doc, 0)
    assert extract_candidates(ctx, p) == []
    assert make_triples(p, ctx, []) == []


def test_recency_order(rule_analyzer):
    doc = _doc("The parser reads the file. It stores the results.", rule_analyzer)
    (p,) = find_pronouns(doc)
    cands = extract_candidates(build_context(p, doc), p)
    assert [(c.text, c.recency_rank) for c in cands] == [("the file", 1), ("The parser", 2)]


def test_candidate_cap_drops_farthest(example_doc):
    (p,) = find_pronouns(example_doc)
    ctx = build_context(p, example_doc)
    full = extract_candidates(ctx, p)
    capped = extract_candidates(ctx, p, max_candidates=3)
    assert [c.text for c in capped] == [c.text for c in full[:3]]


def test_triples_share_context(example_doc):
    (p,) = find_pronouns(example_doc)
    ctx = build_context(p, example_doc)
    cands = extract_candidates(ctx, p)
    triples = make_triples(p, ctx, cands)
    assert len(triples) == len(cands)
    assert len({t.triple_id for t in triples}) == len(triples)
    assert all(t.context is ctx for t in triples)
    assert split_triple_id(triples[0].triple_id) == ("myRS", "R2", p.token_index, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(0, 2))
def test_analysis_invariants(seed, n, window):
    from reqanaphora.nlpcore import RuleAnalyzer

    analyzer = RuleAnalyzer()
    texts = generate_requirements(n, seed)
    doc = analyze_document(parse_spec("\n".join(texts), "h"), analyzer)
    for req in doc.requirements:
        ann = req.annotations
        covered = [i for s, e in ann.sentence_boundaries for i in range(s, e + 1)]
        assert covered == list(range(len(ann.tokens)))
        for i, t in enumerate(ann.tokens):
            assert t.char_start < t.char_end <= len(req.text)
            assert t.dep_head != i
        for c in ann.np_chunks:
            assert ann.sentence_of(c.start) == ann.sentence_of(c.end)
            assert c.start <= c.head <= c.end
        assert analyzer.analyze_text(req.text) == ann
    for p, ctx, triples in triples_for_document(doc, window=window):
        assert ctx.req_ordinals[-1] == p.req_ordinal
        for t in triples:
            assert t.candidate.ctx_end < ctx.pronoun_position
            assert t.candidate.ctx_start <= t.candidate.head_token <= t.candidate.ctx_end
        if window == 1 and p.req_ordinal >= 1:
            prev, cur = doc.requirements[p.req_ordinal - 1], doc.requirements[p.req_ordinal]
            assert len(ctx.tokens) == len(prev.annotations.tokens) + len(cur.annotations.tokens)
