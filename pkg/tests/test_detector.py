import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from reqanaphora.cli import read_vector_csv
from reqanaphora.detector import (
    ClassifierVerdict,
    DecisionRuleConfig,
    TriplePrediction,
    classify_triples,
    decide_pronoun,
    ensemble,
    load_classifier,
    train_classifier,
)
from reqanaphora.errors import ArtifactError, DegenerateTrainingSet, InputShapeError, NoCandidatesError
from reqanaphora.features import DEFAULT_REGISTRY, FeatureVector
from reqanaphora.fixtures import fixture_classifier

DATA = Path(__file__).parent / "data"


def P(tid, pc, pi, pn):
    return TriplePrediction(tid, pc, pi, pn)


def _lf(values):
    return FeatureVector("LF", values, DEFAULT_REGISTRY.names)


@pytest.fixture(scope="module")
def separable():
    return read_vector_csv(str(DATA / "separable_lf_train.csv"), "LF")


@pytest.fixture(scope="module")
def trained(separable):
    return train_classifier(separable, "LF")


def test_simplex_validation():
    with pytest.raises(ValueError):
        P("t", 0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        P("t", 1.2, -0.2, 0.0)


def test_single_candidate_rule():
    v = decide_pronoun([P("a", 0.9, 0.1, 0.0)])
    assert (v.label, v.confidence, v.best_candidate) == ("unambiguous", 0.9, "a")


def test_inconclusive_forces_ambiguous():
    v = decide_pronoun([P("a", 0.2, 0.2, 0.6), P("b", 0.9, 0.1, 0.0)])
    assert v.label == "ambiguous" and v.rule == "R1"


def test_narrow_margin():
    v = decide_pronoun([P("a", 0.92, 0.08, 0.0), P("b", 0.90, 0.10, 0.0)], DecisionRuleConfig(0.15))
    assert v.label == "ambiguous"
    assert v.confidence == pytest.approx(0.98, abs=1e-12)


def test_wide_margin():
    v = decide_pronoun([P("a", 0.9, 0.1, 0.0), P("b", 0.6, 0.4, 0.0)], DecisionRuleConfig(0.15))
    assert (v.label, v.best_candidate) == ("unambiguous", "a")
    assert v.confidence == pytest.approx(0.9)


def test_no_correct_candidate():
    v = decide_pronoun([P("a", 0.3, 0.7, 0.0), P("b", 0.1, 0.9, 0.0)])
    assert v.label == "ambiguous" and v.confidence == pytest.approx(0.7)


def test_empty_predictions():
    with pytest.raises(NoCandidatesError):
        decide_pronoun([])


def test_tau_bounds():
    with pytest.raises(ValueError):
        DecisionRuleConfig(0.0)


@pytest.mark.parametrize("lf, fe, label, conf", [
    (("ambiguous", 0.8), ("ambiguous", 0.7), "ambiguous", 0.75),
    (("ambiguous", 0.8), ("unambiguous", 0.6), "ambiguous", 0.8),
    (("unambiguous", 0.7), ("ambiguous", 0.7), "ambiguous", 0.7),
])
def test_ensemble_examples(lf, fe, label, conf):
    a = ClassifierVerdict("LF", lf[0], lf[1], "x" if lf[0] == "unambiguous" else None)
    b = ClassifierVerdict("FE", fe[0], fe[1], "x" if fe[0] == "unambiguous" else None)
    got = ensemble(a, b)
    assert got.label == label and got.confidence == pytest.approx(conf)


def test_lf_only_ensemble():
    a = ClassifierVerdict("LF", "unambiguous", 0.6, "x")
    got = ensemble(a, None)
    assert got.label == "unambiguous" and got.best_candidate == "x"


_pred = st.tuples(st.integers(0, 20), st.integers(0, 20), st.integers(0, 20)).filter(lambda t: sum(t) > 0)


@given(st.lists(_pred, min_size=1, max_size=8), st.floats(0.01, 0.99))
def test_never_unambiguous_with_inconclusive(raw, tau):
    preds = [P(f"t{i}", a / (a + b + c), b / (a + b + c), c / (a + b + c)) for i, (a, b, c) in enumerate(raw)]
    v = decide_pronoun(preds, DecisionRuleConfig(tau))
    if any(p.argmax == "inconclusive" for p in preds):
        assert v.label == "ambiguous"
    assert 0.0 <= v.confidence <= 1.0


@given(st.sampled_from(["ambiguous", "unambiguous"]), st.sampled_from(["ambiguous", "unambiguous"]),
       st.floats(0, 1), st.floats(0, 1))
def test_ensemble_symmetry(l1, l2, c1, c2):
    def verdict(kind, lab, c):
        return ClassifierVerdict(kind, lab, c, "x" if lab == "unambiguous" else None)

    a = ensemble(verdict("LF", l1, c1), verdict("FE", l2, c2))
    b = ensemble(verdict("LF", l2, c2), verdict("FE", l1, c1))
    assert (a.label, a.confidence) == (b.label, pytest.approx(b.confidence))


def test_fixture_classifier_scripted_and_uniform():
    clf = fixture_classifier({"a": (1.0, 0.0, 0.0)})
    a, b = clf.predict(["a", "b"])
    assert (a.p_correct, a.p_incorrect, a.p_inconclusive) == (1.0, 0.0, 0.0)
    assert b.p_correct == b.p_incorrect == b.p_inconclusive == pytest.approx(1 / 3)
    assert all(decide_pronoun([p]).label for p in (a, b))
    assert a.argmax == "correct"


def test_classify_shape_mismatch(trained):
    with pytest.raises(InputShapeError):
        classify_triples([FeatureVector("FE", np.zeros(768))], trained)


def test_classify_simplex(trained):
    rng = np.random.default_rng(1)
    preds = classify_triples([_lf(rng.uniform(0, 3, 45)) for _ in range(20)], trained)
    assert len(preds) == 20
    for p in preds:
        assert abs(p.p_correct + p.p_incorrect + p.p_inconclusive - 1.0) <= 1e-9


def test_heldout_predictions_match_frozen(trained):
    held = read_vector_csv(str(DATA / "separable_lf_heldout.csv"), "LF")
    frozen = json.loads((DATA / "separable_lf_heldout_predictions.json").read_text())
    got = trained.predict_proba(np.vstack([v.values for v, _ in held]))
    np.testing.assert_allclose(got, np.array(frozen["probabilities"]), atol=1e-8)


def test_degenerate_training_set(separable):
    two = [(v, y) for v, y in separable if y != "inconclusive"]
    with pytest.raises(DegenerateTrainingSet):
        train_classifier(two, "LF")


def test_artifact_round_trip_and_version_check(trained, tmp_path):
    out = trained.save(tmp_path / "lf")
    assert {p.name for p in out.iterdir()} == {"model.joblib", "manifest.json", "metadata.json"}
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["kind"] == "LF" and meta["tau"] == 0.15 and meta["fingerprint"]
    probe = np.random.default_rng(2).uniform(0, 3, (16, 45))
    assert np.array_equal(load_classifier(out).predict_proba(probe), trained.predict_proba(probe))
    manifest = json.loads((out / "manifest.json").read_text())
    manifest["version"] = 0
    (out / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(ArtifactError):
        load_classifier(out)


def test_missing_artifact(tmp_path):
    with pytest.raises(ArtifactError):
        load_classifier(tmp_path / "nothing")
