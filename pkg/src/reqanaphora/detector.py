"""Three-way triple classification and pronoun-level ambiguity decisions."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, Protocol, Sequence

import numpy as np

from .errors import ArtifactError, DegenerateTrainingSet, InputShapeError, NoCandidatesError
from .features.registry import DEFAULT_REGISTRY, FE_DIMENSION, LF_DIMENSION, FeatureRegistry, FeatureVector

LABELS = ("correct", "incorrect", "inconclusive")
AMBIGUOUS, UNAMBIGUOUS = "ambiguous", "unambiguous"
DEFAULT_TAU = 0.15
SIMPLEX_TOL = 1e-9
ARTIFACT_FORMAT = 1

# Argmax ties resolve toward the more cautious label.
_TIE_ORDER = ("inconclusive", "correct", "incorrect")


@dataclass(frozen=True)
class TriplePrediction:
    triple_id: str
    p_correct: float
    p_incorrect: float
    p_inconclusive: float

    def __post_init__(self):
        ps = (self.p_correct, self.p_incorrect, self.p_inconclusive)
        if any(not (0.0 <= p <= 1.0) or math.isnan(p) for p in ps):
            raise ValueError(f"{self.triple_id}: probabilities must lie in [0, 1], got {ps}")
        if abs(sum(ps) - 1.0) > SIMPLEX_TOL:
            raise ValueError(f"{self.triple_id}: probabilities must sum to 1, got {sum(ps)!r}")

    def prob(self, label: str) -> float:
        return getattr(self, f"p_{label}")

    @property
    def argmax(self) -> str:
        best = max(self.prob(lab) for lab in LABELS)
        return next(lab for lab in _TIE_ORDER if self.prob(lab) == best)


@dataclass(frozen=True)
class DecisionRuleConfig:
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if not (0.0 < self.tau < 1.0):
            raise ValueError(f"tau must lie in (0, 1), got {self.tau}")


@dataclass(frozen=True)
class ClassifierVerdict:
    classifier_kind: str
    label: str
    confidence: float
    best_candidate: str | None = None
    rule: str = ""

    def __post_init__(self):
        if self.classifier_kind not in ("LF", "FE"):
            raise ValueError(f"unknown classifier kind {self.classifier_kind!r}")
        if self.label not in (AMBIGUOUS, UNAMBIGUOUS):
            raise ValueError(f"unknown label {self.label!r}")
        if self.label == UNAMBIGUOUS and self.best_candidate is None:
            raise ValueError("an unambiguous verdict needs a best candidate")


@dataclass(frozen=True)
class DetectionVerdict:
    label: str
    confidence: float
    lf_verdict: ClassifierVerdict | None
    fe_verdict: ClassifierVerdict | None

    @property
    def best_candidate(self) -> str | None:
        for v in (self.lf_verdict, self.fe_verdict):
            if v is not None and v.label == self.label == UNAMBIGUOUS:
                return v.best_candidate
        return None


class TripleClassifier(Protocol):
    kind: str
    identity: str
    input_dimension: int

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        """(n, 3) probabilities in LABELS order."""
        ...


def _expected_dimension(kind: str) -> int:
    return LF_DIMENSION if kind == "LF" else FE_DIMENSION


def _stack(vectors: Sequence[FeatureVector], kind: str, dim: int) -> np.ndarray:
    for i, v in enumerate(vectors):
        if v.kind != kind or len(v) != dim:
            raise InputShapeError(f"vector {i}: got {v.kind}/{len(v)}, classifier expects {kind}/{dim}")
    if not vectors:
        return np.zeros((0, dim))
    return np.vstack([v.values for v in vectors])


def _renormalize(row: np.ndarray) -> np.ndarray:
    row = np.clip(np.asarray(row, dtype=np.float64), 0.0, 1.0)
    s = row.sum()
    return row / s if s > 0 else np.full(3, 1.0 / 3.0)


def classify_triples(
    vectors: Sequence[FeatureVector], clf: TripleClassifier, triple_ids: Sequence[str] | None = None
) -> list[TriplePrediction]:
    x = _stack(vectors, clf.kind, clf.input_dimension)
    if triple_ids is None:
        triple_ids = [str(i) for i in range(len(vectors))]
    if len(triple_ids) != len(vectors):
        raise InputShapeError("one triple id per vector is required")
    probs = clf.predict_proba(x) if len(x) else np.zeros((0, 3))
    out = []
    for tid, row in zip(triple_ids, probs):
        row = _renormalize(row)
        out.append(TriplePrediction(tid, float(row[0]), float(row[1]), float(row[2])))
    return out


def decide_pronoun(preds: Sequence[TriplePrediction], rules: DecisionRuleConfig = DecisionRuleConfig(),
                   kind: str = "LF") -> ClassifierVerdict:
    """Turn one pronoun's triple predictions into a classifier verdict.

    R1: any argmax-inconclusive triple makes the pronoun ambiguous.
    R2: no argmax-correct triple makes it ambiguous.
    R3: exactly one argmax-correct triple resolves it.
    R4: several correct triples resolve it only if the best leads the
        runner-up by at least ``tau`` in p_correct.
    """
    if not preds:
        raise NoCandidatesError("decide_pronoun needs at least one prediction")
    inconclusive = [p for p in preds if p.argmax == "inconclusive"]
    if inconclusive:
        return ClassifierVerdict(kind, AMBIGUOUS, max(p.p_inconclusive for p in inconclusive), None, "R1")
    correct = sorted((p for p in preds if p.argmax == "correct"), key=lambda p: (-p.p_correct, p.triple_id))
    if not correct:
        return ClassifierVerdict(kind, AMBIGUOUS, 1.0 - max(p.p_correct for p in preds), None, "R2")
    if len(correct) == 1:
        return ClassifierVerdict(kind, UNAMBIGUOUS, correct[0].p_correct, correct[0].triple_id, "R3")
    p1, p2 = correct[0].p_correct, correct[1].p_correct
    margin = p1 - p2
    if margin >= rules.tau:
        return ClassifierVerdict(kind, UNAMBIGUOUS, min(1.0, margin / rules.tau) * p1, correct[0].triple_id, "R4")
    return ClassifierVerdict(kind, AMBIGUOUS, 1.0 - margin, None, "R4")


def ensemble(lf: ClassifierVerdict | None, fe: ClassifierVerdict | None) -> DetectionVerdict:
    """Agreement keeps the shared label (mean confidence); otherwise the more
    confident classifier wins and an exact tie is resolved as ambiguous.
    A missing verdict (single-classifier mode) passes the other through."""
    if lf is None and fe is None:
        raise ValueError("ensemble needs at least one verdict")
    if lf is None or fe is None:
        only = lf or fe
        return DetectionVerdict(only.label, only.confidence, lf, fe)
    if lf.label == fe.label:
        return DetectionVerdict(lf.label, (lf.confidence + fe.confidence) / 2.0, lf, fe)
    if lf.confidence > fe.confidence:
        return DetectionVerdict(lf.label, lf.confidence, lf, fe)
    if fe.confidence > lf.confidence:
        return DetectionVerdict(fe.label, fe.confidence, lf, fe)
    return DetectionVerdict(AMBIGUOUS, lf.confidence, lf, fe)


class FixtureClassifier:
    """Replays scripted predictions by triple id; anything else is uniform.

    Because it keys on ids, use :meth:`predict` rather than
    :func:`classify_triples`.
    """

    def __init__(self, kind: str, script: Mapping[str, tuple[float, float, float]] | None = None):
        self.kind = kind
        self.input_dimension = _expected_dimension(kind)
        self.identity = f"fixture-{kind.lower()}"
        self._script = {k: tuple(float(x) for x in v) for k, v in (script or {}).items()}

    def predict(self, triple_ids: Sequence[str], vectors: Sequence[FeatureVector] | None = None) -> list[TriplePrediction]:
        if vectors is not None:
            _stack(vectors, self.kind, self.input_dimension)
        out = []
        for tid in triple_ids:
            pc, pi, pn = self._script.get(tid, (1 / 3, 1 / 3, 1 / 3))
            out.append(TriplePrediction(tid, pc, pi, pn))
        return out

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        return np.full((len(x), 3), 1.0 / 3.0)


def predict_triples(clf, triple_ids: Sequence[str], vectors: Sequence[FeatureVector]) -> list[TriplePrediction]:
    """Dispatch to id-aware classifiers, else to :func:`classify_triples`."""
    if hasattr(clf, "predict"):
        return clf.predict(triple_ids, vectors)
    return classify_triples(vectors, clf, triple_ids)


class SklearnTripleClassifier:
    """Standardized multinomial logistic regression over feature vectors."""

    def __init__(self, kind: str, model, metadata: dict | None = None, registry_manifest: dict | None = None):
        self.kind = kind
        self.input_dimension = _expected_dimension(kind)
        self.model = model
        self.metadata = dict(metadata or {})
        self.registry_manifest = registry_manifest
        self.identity = f"sklearn-logreg-{kind.lower()}:{self.metadata.get('fingerprint', 'unsaved')}"
        classes = list(model.classes_)
        self._order = [classes.index(lab) for lab in LABELS]

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.input_dimension:
            raise InputShapeError(f"expected (n, {self.input_dimension}) input, got {x.shape}")
        return self.model.predict_proba(x)[:, self._order]

    def save(self, directory: str | Path) -> Path:
        import joblib

        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        joblib.dump(self.model, d / "model.joblib")
        manifest = self.registry_manifest
        if manifest is not None:
            (d / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        (d / "metadata.json").write_text(json.dumps(self.metadata, indent=2, sort_keys=True) + "\n")
        return d

    @classmethod
    def load(cls, directory: str | Path, registry: FeatureRegistry = DEFAULT_REGISTRY) -> SklearnTripleClassifier:
        import joblib

        d = Path(directory)
        try:
            meta = json.loads((d / "metadata.json").read_text())
            model = joblib.load(d / "model.joblib")
        except (OSError, ValueError) as exc:
            raise ArtifactError(f"cannot load classifier artifact {d}: {exc}") from exc
        if meta.get("format") != ARTIFACT_FORMAT:
            raise ArtifactError(f"{d}: unsupported artifact format {meta.get('format')!r}")
        kind = meta.get("kind")
        manifest = None
        if kind == "LF":
            try:
                manifest = json.loads((d / "manifest.json").read_text())
            except OSError as exc:
                raise ArtifactError(f"{d}: LF artifact lacks manifest.json") from exc
            live = registry.manifest()
            if manifest.get("version") != live["version"]:
                raise ArtifactError(
                    f"{d}: trained with registry version {manifest.get('version')}, live registry is {live['version']}"
                )
            if [f["name"] for f in manifest.get("features", [])] != list(registry.names):
                raise ArtifactError(f"{d}: feature layout differs from the live registry")
        return cls(kind, model, meta, manifest)


def _fingerprint(x: np.ndarray, y: Sequence[str]) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(x, dtype=np.float64).tobytes())
    h.update("\n".join(y).encode())
    return h.hexdigest()[:16]


def train_classifier(
    labeled: Iterable[tuple[FeatureVector, str]],
    kind: str,
    hyperparams: Mapping | None = None,
    registry: FeatureRegistry = DEFAULT_REGISTRY,
    tau: float = DEFAULT_TAU,
) -> SklearnTripleClassifier:
    from sklearn.linear_model import LogisticRegression
    from sklearn.pipeline import make_pipeline
    from sklearn.preprocessing import StandardScaler

    labeled = list(labeled)
    if kind not in ("LF", "FE"):
        raise ValueError(f"unknown classifier kind {kind!r}")
    vectors = [v for v, _ in labeled]
    y = [lab for _, lab in labeled]
    bad = sorted(set(y) - set(LABELS))
    if bad:
        raise ValueError(f"unknown labels {bad}")
    missing = [lab for lab in LABELS if lab not in y]
    if missing:
        raise DegenerateTrainingSet(f"training data lacks examples of {missing}")
    x = _stack(vectors, kind, _expected_dimension(kind))
    params = {"C": 1.0, "max_iter": 2000, "random_state": 0}
    params.update(hyperparams or {})
    model = make_pipeline(StandardScaler(), LogisticRegression(**params))
    model.fit(x, y)
    meta = {
        "format": ARTIFACT_FORMAT,
        "kind": kind,
        "tau": tau,
        "trained_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "fingerprint": _fingerprint(x, y),
        "n_examples": len(y),
        "label_counts": {lab: y.count(lab) for lab in LABELS},
        "hyperparams": {k: v for k, v in params.items()},
        "registry_version": registry.manifest()["version"] if kind == "LF" else None,
    }
    return SklearnTripleClassifier(kind, model, meta, registry.manifest() if kind == "LF" else None)


def load_classifier(directory: str | Path, registry: FeatureRegistry = DEFAULT_REGISTRY) -> SklearnTripleClassifier:
    return SklearnTripleClassifier.load(directory, registry)
