"""Write the linearly separable LF training/held-out sets used by the tests.

Class k (correct, incorrect, inconclusive) has feature k drawn from [2, 3]
and the other two of the first three features from [0, 1], so the label is
the argmax of features 0..2. The remaining 42 columns are noise in [0, 1].
Held-out predictions of the reference classifier are frozen alongside.
"""

import csv
import json
import sys
from pathlib import Path

import numpy as np

from reqanaphora.detector import LABELS, train_classifier
from reqanaphora.features import DEFAULT_REGISTRY, FeatureVector

OUT = Path(__file__).resolve().parents[1] / "tests" / "data"
SEED_TRAIN, SEED_HELDOUT = 20220901, 20220902
PER_CLASS_TRAIN, PER_CLASS_HELDOUT = 60, 10


def make_rows(seed: int, per_class: int) -> list[tuple[str, list[float]]]:
    rng = np.random.default_rng(seed)
    rows = []
    for k, label in enumerate(LABELS):
        for _ in range(per_class):
            x = rng.uniform(0.0, 1.0, size=len(DEFAULT_REGISTRY))
            x[k] = rng.uniform(2.0, 3.0)
            rows.append((label, [round(float(v), 6) for v in x]))
    order = rng.permutation(len(rows))
    return [rows[i] for i in order]


def write_csv(path: Path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", *DEFAULT_REGISTRY.names])
        for label, x in rows:
            w.writerow([label, *(f"{v:.6f}" for v in x)])


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    train, held = make_rows(SEED_TRAIN, PER_CLASS_TRAIN), make_rows(SEED_HELDOUT, PER_CLASS_HELDOUT)
    write_csv(OUT / "separable_lf_train.csv", train)
    write_csv(OUT / "separable_lf_heldout.csv", held)
    clf = train_classifier([(FeatureVector("LF", x, DEFAULT_REGISTRY.names), y) for y, x in train], "LF")
    probs = clf.predict_proba(np.array([x for _, x in held]))
    frozen = {"labels": list(LABELS), "probabilities": [[round(float(p), 10) for p in row] for row in probs]}
    (OUT / "separable_lf_heldout_predictions.json").write_text(json.dumps(frozen, indent=1) + "\n")
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
