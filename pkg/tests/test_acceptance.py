"""Acceptance gate: one test per criterion, summarized at the end of the run.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints a PASS/FAIL line per criterion.
"""

import csv
import io
import itertools
import random
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import norm_phrase
from oracles import confusion, count_pronouns, count_preceding_chunks, decision_rules, ensemble_expected
from reqanaphora.cli import main as cli_main, read_vector_csv
from reqanaphora.corpus import ReportRow, parse_spec, read_report
from reqanaphora.detector import (
    ClassifierVerdict,
    DecisionRuleConfig,
    TriplePrediction,
    decide_pronoun,
    ensemble,
    load_classifier,
    train_classifier,
)
from reqanaphora.evalkit import (
    ACKNOWLEDGED,
    UNACKNOWLEDGED,
    AnnotationRecord,
    GoldPronounLabel,
    aggregate_annotations,
    compute_detection_metrics,
)
from reqanaphora.features import DEFAULT_REGISTRY, FeatureRegistry, HashingEncoder, extract_fe, extract_lf
from reqanaphora.nlpcore import RuleAnalyzer, analyze_document, triples_for_document
from reqanaphora.pipeline import PipelineConfig, run
from reqanaphora.resolver import SpanPrediction, resolve
from reqanaphora.synth import (
    ACCEPTANCE_CORPUS_SEED,
    ACCEPTANCE_CORPUS_SIZE,
    WORKED_EXAMPLE_SPEC,
    generate_spec,
)

DATA = Path(__file__).parent / "data"
EXAMPLE_CANDIDATES = (
    "records, parts, folders and groups of folders",
    "records",
    "write-once folders",
    "access",
    "obliteration",
    "system",
)


def _random_simplex(rng: random.Random) -> tuple[float, float, float]:
    if rng.random() < 0.3:
        # coarse grid to exercise exact ties
        a = rng.randint(0, 10)
        b = rng.randint(0, 10 - a)
        return (a / 10, b / 10, (10 - a - b) / 10)
    x = [rng.expovariate(1.0) for _ in range(3)]
    s = sum(x)
    return (x[0] / s, x[1] / s, x[2] / s)


def _sampled_prediction_sets(n=10_000, seed=3):
    rng = random.Random(seed)
    for _ in range(n):
        size = rng.randint(1, 8)
        yield [TriplePrediction(f"t{i}", *_random_simplex(rng)) for i in range(size)]


def test_criterion_01_worked_example_reproduction(tmp_path):
    spec = tmp_path / "myRS.txt"
    spec.write_text(WORKED_EXAMPLE_SPEC)
    out, triples = tmp_path / "myRS.csv", tmp_path / "triples.csv"
    t0 = time.perf_counter()
    code = cli_main(["detect", "--input", str(spec), "--output", str(out), "--analyzer", "fixture",
                     "--triples-out", str(triples)])
    elapsed = time.perf_counter() - t0
    assert code == 0
    rows = read_report(out.read_text())
    assert len(rows) == 1
    assert rows[0].pronoun == "them"
    assert rows[0].detection_label in ("ambiguous", "unambiguous")
    assert rows[0].resolved_antecedent
    candidates = {norm_phrase(r["candidate_text"]) for r in csv.DictReader(io.StringIO(triples.read_text()))}
    missing = [c for c in EXAMPLE_CANDIDATES if c not in candidates]
    assert not missing, f"missing candidates: {missing}"
    assert elapsed < 5.0


def test_criterion_02_triple_construction_oracle():
    analyzer = RuleAnalyzer()
    violations = []
    pronouns = 0
    for seed in range(50):
        rng = random.Random(seed)
        doc = analyze_document(parse_spec(generate_spec(rng.randint(3, 12), seed=1000 + seed), f"d{seed}"), analyzer)
        window = rng.choice((0, 1, 2))
        for p, ctx, triples in triples_for_document(doc, window=window):
            pronouns += 1
            expected = count_preceding_chunks(doc, p.req_ordinal, p.token_index, window)
            if len(triples) != expected:
                violations.append((doc.doc_id, p.req_id, p.token_index, len(triples), expected))
    assert pronouns > 50
    assert violations == []


def test_criterion_03_decision_rule_oracle():
    rules = DecisionRuleConfig(0.15)
    rng = random.Random(11)
    mismatches = 0
    for preds in _sampled_prediction_sets():
        v = decide_pronoun(preds, rules)
        label, conf, best = decision_rules([(p.triple_id, (p.p_correct, p.p_incorrect, p.p_inconclusive)) for p in preds], 0.15)
        if (v.label, v.best_candidate) != (label, best) or v.confidence != pytest.approx(conf, abs=1e-12):
            mismatches += 1
        shuffled = list(preds)
        rng.shuffle(shuffled)
        w = decide_pronoun(shuffled, rules)
        if (w.label, w.confidence, w.best_candidate) != (v.label, v.confidence, v.best_candidate):
            mismatches += 1
    assert mismatches == 0


def test_criterion_04_ensemble_properties():
    grid = [i / 10 for i in range(11)]
    for l1, l2 in itertools.product(("ambiguous", "unambiguous"), repeat=2):
        for c1, c2 in itertools.product(grid, repeat=2):
            lf = ClassifierVerdict("LF", l1, c1, "x" if l1 == "unambiguous" else None)
            fe = ClassifierVerdict("FE", l2, c2, "x" if l2 == "unambiguous" else None)
            got = ensemble(lf, fe)
            label, conf = ensemble_expected((l1, c1), (l2, c2))
            assert got.label == label
            assert got.confidence == pytest.approx(conf, abs=1e-12)
            if l1 == l2:
                assert got.label == l1
            assert got.lf_verdict is lf and got.fe_verdict is fe


def test_criterion_05_resolution_threshold():
    rng = random.Random(5)
    for i in range(1000):
        n = rng.randint(0, 6)
        probs = sorted((rng.random() for _ in range(n)), reverse=True)
        if n and i % 5 == 0:
            probs[0] = 0.9
        probs.sort(reverse=True)
        spans = [SpanPrediction(j, j, f"s{j}", p) for j, p in enumerate(probs)]
        res = resolve(spans, 0.9)
        if not spans:
            assert res.flag == "none" and res.accepted is None
            continue
        assert (res.flag == "accepted") == (probs[0] > 0.9)
        assert res.accepted == spans[0]
        if probs[0] == 0.9:
            assert res.flag == "low_confidence"


def _annotation_set(n_ack, n_unack, n_unamb, seed):
    rng = random.Random(seed)
    records, expected = [], {}
    kinds = ["ack"] * n_ack + ["unack"] * n_unack + ["unamb"] * n_unamb
    rng.shuffle(kinds)
    for i, kind in enumerate(kinds):
        n_cand = rng.randint(1, 5)
        annotators = [f"a{j}" for j in range(rng.choice((2, 3)))]
        key = ("doc", f"R{i + 1}", rng.randint(0, 20))
        tids = [f"{key[0]}/{key[1]}/{key[2]}/{r + 1}" for r in range(n_cand)]
        gold = rng.randrange(n_cand)
        labels = {a: ["correct" if r == gold else "incorrect" for r in range(n_cand)] for a in annotators}
        if kind == "ack":
            a = rng.choice(annotators)
            labels[a][rng.randrange(n_cand)] = "inconclusive"
        elif kind == "unack":
            variant = rng.choice(("conflict", "none_correct", "multi_correct") if n_cand > 1 else ("conflict", "none_correct"))
            if variant == "conflict":
                a = rng.choice(annotators)
                labels[a][gold] = "incorrect"
            elif variant == "none_correct":
                for a in annotators:
                    labels[a][gold] = "incorrect"
            else:
                other = (gold + 1) % n_cand
                for a in annotators:
                    labels[a][other] = "correct"
        for a in annotators:
            for tid, lab in zip(tids, labels[a]):
                records.append(AnnotationRecord(a, tid, lab))
        expected[key] = kind
    return records, expected


def _kind(g):
    if g.label == "unambiguous":
        return "unamb"
    return {ACKNOWLEDGED: "ack", UNACKNOWLEDGED: "unack"}[g.ambiguity_kind]


def test_criterion_06_aggregation_rules():
    records, expected = _annotation_set(10, 15, 25, seed=6)
    gold = aggregate_annotations(records)
    kinds = [_kind(g) for g in gold]
    assert (kinds.count("ack"), kinds.count("unack"), kinds.count("unamb")) == (10, 15, 25)
    assert {g.key: _kind(g) for g in gold} == expected
    rng = random.Random(7)
    shuffled = list(records)
    rng.shuffle(shuffled)
    rename = {a: f"reviewer-{rng.randint(0, 10**6)}-{a}" for a in {r.annotator_id for r in records}}
    renamed = [AnnotationRecord(rename[r.annotator_id], r.triple_id, r.label) for r in shuffled]
    assert aggregate_annotations(shuffled) == gold
    assert aggregate_annotations(renamed) == gold


def test_criterion_07_metrics_oracle():
    rng = random.Random(7)
    for trial in range(1000):
        n = rng.randint(1, 40)
        keys = [("doc", f"R{i}", rng.randint(0, 30)) for i in range(n)]
        g_labels = [rng.choice(("ambiguous", "unambiguous")) for _ in keys]
        p_labels = [rng.choice(("ambiguous", "unambiguous")) for _ in keys]
        gold = [
            GoldPronounLabel(k, lab, "unacknowledged" if lab == "ambiguous" else "none",
                             None if lab == "ambiguous" else f"{k[0]}/{k[1]}/{k[2]}/1")
            for k, lab in zip(keys, g_labels)
        ]
        pred = [ReportRow(k[0], k[1], "it", k[2], (k[1],), lab, 0.5, "", 0.0, "none") for k, lab in zip(keys, p_labels)]
        order = list(range(n))
        rng.shuffle(order)
        m = compute_detection_metrics(gold, [pred[i] for i in order])
        tp, fp, fn, tn, precision, recall = confusion(g_labels, p_labels)
        assert (m["tp"], m["fp"], m["fn"], m["tn"]) == (tp, fp, fn, tn)
        for got, want in ((m["precision"], precision), (m["recall"], recall)):
            if want is None:
                assert got is None
            else:
                assert abs(got - want) <= 1e-12


def test_criterion_08_end_to_end_determinism(tmp_path):
    text = generate_spec(ACCEPTANCE_CORPUS_SIZE, ACCEPTANCE_CORPUS_SEED)
    spec = tmp_path / "synthetic.txt"
    spec.write_text(text)
    base = PipelineConfig(analyzer="fixture", resolver_backend="heuristic")
    t0 = time.perf_counter()
    run(spec, tmp_path / "w1.csv", base.with_overrides(worker_count=1))
    run(spec, tmp_path / "w4.csv", base.with_overrides(worker_count=4))
    elapsed = time.perf_counter() - t0
    a, b = (tmp_path / "w1.csv").read_bytes(), (tmp_path / "w4.csv").read_bytes()
    assert a == b
    rows = read_report(a.decode())
    assert len(rows) == count_pronouns(text)
    assert elapsed < 30.0


def test_criterion_09_feature_contracts():
    analyzer = RuleAnalyzer()
    triples, docs = [], {}
    seed = 0
    while len(triples) < 500:
        doc = analyze_document(parse_spec(generate_spec(8, seed=5000 + seed), f"f{seed}"), analyzer)
        docs[doc.doc_id] = doc
        for _, _, ts in triples_for_document(doc):
            triples.extend((t, doc) for t in ts)
        seed += 1
    triples = triples[:500]
    reloaded = FeatureRegistry.from_json(DEFAULT_REGISTRY.to_json())
    encoder = HashingEncoder()
    kinds = {s.name: s.value_type for s in DEFAULT_REGISTRY}
    for t, doc in triples:
        lf = extract_lf(t, DEFAULT_REGISTRY, doc)
        assert len(lf) == 45 and lf.names == DEFAULT_REGISTRY.names
        assert np.all(np.isfinite(lf.values))
        for name, x in zip(lf.names, lf.values):
            if kinds[name] == "boolean":
                assert x in (0.0, 1.0), name
            elif kinds[name] == "agreement":
                assert x in (0.0, 0.5, 1.0), name
            elif kinds[name] == "ratio":
                assert 0.0 <= x <= 1.0, name
            else:
                assert x >= 0.0, name
        assert np.array_equal(extract_lf(t, reloaded, doc).values, lf.values)
        fe = extract_fe(t, encoder)
        assert len(fe) == 768 and np.all(np.isfinite(fe.values))


def test_criterion_10_trained_classifier_sanity(tmp_path):
    data = read_vector_csv(str(DATA / "separable_lf_train.csv"), "LF")
    # the committed set is separable by construction: the label is the argmax of features 0..2
    labels = ("correct", "incorrect", "inconclusive")
    assert all(labels[int(np.argmax(v.values[:3]))] == y for v, y in data)
    clf = train_classifier(data, "LF")
    x = np.vstack([v.values for v, _ in data])
    pred = [labels[i] for i in clf.predict_proba(x).argmax(axis=1)]
    accuracy = np.mean([p == y for p, (_, y) in zip(pred, data)])
    assert accuracy >= 0.95
    clf.save(tmp_path / "lf")
    again = load_classifier(tmp_path / "lf")
    probe = np.random.default_rng(0).uniform(0, 3, size=(64, 45))
    assert np.array_equal(clf.predict_proba(probe), again.predict_proba(probe))


def test_criterion_11_recall_first_tau_monotonicity():
    low, high = DecisionRuleConfig(0.15), DecisionRuleConfig(0.5)
    flips = 0
    for preds in _sampled_prediction_sets():
        if decide_pronoun(preds, low).label == "ambiguous" and decide_pronoun(preds, high).label != "ambiguous":
            flips += 1
    assert flips == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
