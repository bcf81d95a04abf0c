"""Gold-label aggregation from multi-annotator triple labels, and scoring."""

from __future__ import annotations

import csv
import io
import json
import re
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import ReportRow
from .errors import AlignmentError, InsufficientAnnotation
from .nlpcore.triples import split_triple_id

TRIPLE_LABELS = ("correct", "incorrect", "inconclusive")
ANNOTATION_HEADER = ("annotator_id", "triple_id", "label")
ACKNOWLEDGED, UNACKNOWLEDGED, NO_AMBIGUITY = "acknowledged", "unacknowledged", "none"


@dataclass(frozen=True)
class AnnotationRecord:
    annotator_id: str
    triple_id: str
    label: str

    def __post_init__(self):
        if self.label not in TRIPLE_LABELS:
            raise ValueError(f"unknown annotation label {self.label!r}")


@dataclass(frozen=True)
class GoldPronounLabel:
    key: tuple[str, str, int]  # (doc_id, req_id, pronoun token index)
    label: str
    ambiguity_kind: str
    gold_antecedent: str | None = None  # triple id
    gold_antecedent_text: str | None = None

    def __post_init__(self):
        if self.label == "unambiguous" and (self.ambiguity_kind != NO_AMBIGUITY or self.gold_antecedent is None):
            raise ValueError("an unambiguous gold label needs kind 'none' and an antecedent")


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float | None
    recall: float | None
    resolution_accuracy: float | None
    pronoun_count: int
    ambiguous_fraction: float | None
    unacknowledged_fraction: float | None  # among ambiguous pronouns

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def read_annotations(csv_text: str) -> list[AnnotationRecord]:
    reader = csv.DictReader(io.StringIO(csv_text))
    if tuple(reader.fieldnames or ()) != ANNOTATION_HEADER:
        raise ValueError(f"annotation header must be {','.join(ANNOTATION_HEADER)}, got {reader.fieldnames}")
    records = [AnnotationRecord(r["annotator_id"], r["triple_id"], r["label"]) for r in reader]
    seen = set()
    for r in records:
        if (r.annotator_id, r.triple_id) in seen:
            raise ValueError(f"duplicate annotation by {r.annotator_id} on {r.triple_id}")
        seen.add((r.annotator_id, r.triple_id))
    return records


def write_annotations(records: Iterable[AnnotationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ANNOTATION_HEADER)
    for r in records:
        w.writerow([r.annotator_id, r.triple_id, r.label])
    return buf.getvalue()


def read_triple_index(csv_text: str) -> dict[str, str]:
    """triple_id -> candidate text from a pipeline triples file."""
    reader = csv.DictReader(io.StringIO(csv_text))
    if not reader.fieldnames or "triple_id" not in reader.fieldnames or "candidate_text" not in reader.fieldnames:
        raise ValueError("triples file needs triple_id and candidate_text columns")
    return {r["triple_id"]: r["candidate_text"] for r in reader}


def pronoun_key(triple_id: str) -> tuple[str, str, int]:
    doc, req, tok, _ = split_triple_id(triple_id)
    return (doc, req, tok)


def aggregate_annotations(
    records: Iterable[AnnotationRecord], triples: Mapping[str, str] | None = None
) -> list[GoldPronounLabel]:
    """Derive one gold label per pronoun.

    Any inconclusive label is an acknowledged ambiguity. A triple that got
    different labels is an unacknowledged one. Otherwise the pronoun is
    unambiguous iff exactly one triple is unanimously correct; zero or
    several such triples also count as unacknowledged ambiguity.
    ``triples`` (triple id -> candidate text) adds the gold antecedent text
    and lets unannotated triples be detected.
    """
    by_triple: dict[str, list[str]] = defaultdict(list)
    for r in records:
        by_triple[r.triple_id].append(r.label)
    if triples is not None:
        for tid in triples:
            by_triple.setdefault(tid, [])
    for tid, labels in sorted(by_triple.items()):
        if len(labels) < 2:
            raise InsufficientAnnotation(tid, len(labels))

    by_pronoun: dict[tuple[str, str, int], list[str]] = defaultdict(list)
    for tid in by_triple:
        by_pronoun[pronoun_key(tid)].append(tid)

    out = []
    for key in sorted(by_pronoun):
        tids = sorted(by_pronoun[key])
        if any("inconclusive" in by_triple[t] for t in tids):
            out.append(GoldPronounLabel(key, "ambiguous", ACKNOWLEDGED))
            continue
        if any(len(set(by_triple[t])) > 1 for t in tids):
            out.append(GoldPronounLabel(key, "ambiguous", UNACKNOWLEDGED))
            continue
        unanimous = [t for t in tids if by_triple[t][0] == "correct"]
        if len(unanimous) == 1:
            text = triples.get(unanimous[0]) if triples is not None else None
            out.append(GoldPronounLabel(key, "unambiguous", NO_AMBIGUITY, unanimous[0], text))
        else:
            out.append(GoldPronounLabel(key, "ambiguous", UNACKNOWLEDGED))
    return out


def _align(gold: Sequence[GoldPronounLabel], predicted: Sequence[ReportRow]):
    g = {x.key: x for x in gold}
    p = {r.key: r for r in predicted}
    missing_pred = sorted(set(g) - set(p))
    missing_gold = sorted(set(p) - set(g))
    if missing_pred or missing_gold:
        raise AlignmentError(missing_pred, missing_gold)
    return g, p


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def compute_detection_metrics(gold: Sequence[GoldPronounLabel], predicted: Sequence[ReportRow]) -> dict:
    g, p = _align(gold, predicted)
    tp = fp = fn = tn = 0
    for key, gl in g.items():
        gpos = gl.label == "ambiguous"
        ppos = p[key].detection_label == "ambiguous"
        if gpos and ppos:
            tp += 1
        elif ppos:
            fp += 1
        elif gpos:
            fn += 1
        else:
            tn += 1
    return {"tp": tp, "fp": fp, "fn": fn, "tn": tn, "precision": _ratio(tp, tp + fp), "recall": _ratio(tp, tp + fn)}


_ARTICLE = re.compile(r"^(?:the|a|an)\s+")


def normalize_antecedent(text: str) -> str:
    t = " ".join(text.casefold().split())
    return _ARTICLE.sub("", t)


def compute_resolution_accuracy(gold: Sequence[GoldPronounLabel], predicted: Sequence[ReportRow]) -> float | None:
    """Share of gold-resolvable pronouns whose reported antecedent matches.

    A pronoun without a reported antecedent counts as a miss. Gold labels
    need ``gold_antecedent_text``.
    """
    p = {r.key: r for r in predicted}
    resolvable = [x for x in gold if x.gold_antecedent is not None]
    if not resolvable:
        return None
    hits = 0
    for x in resolvable:
        if x.gold_antecedent_text is None:
            raise ValueError(f"gold antecedent text missing for {x.gold_antecedent}")
        row = p.get(x.key)
        if row is not None and row.resolved_antecedent and (
            normalize_antecedent(row.resolved_antecedent) == normalize_antecedent(x.gold_antecedent_text)
        ):
            hits += 1
    return hits / len(resolvable)


def evaluate(gold: Sequence[GoldPronounLabel], predicted: Sequence[ReportRow]) -> EvalReport:
    m = compute_detection_metrics(gold, predicted)
    n = len(gold)
    amb = [x for x in gold if x.label == "ambiguous"]
    unack = sum(1 for x in amb if x.ambiguity_kind == UNACKNOWLEDGED)
    return EvalReport(
        tp=m["tp"], fp=m["fp"], fn=m["fn"], tn=m["tn"],
        precision=m["precision"], recall=m["recall"],
        resolution_accuracy=compute_resolution_accuracy(gold, predicted),
        pronoun_count=n,
        ambiguous_fraction=_ratio(len(amb), n),
        unacknowledged_fraction=_ratio(unack, len(amb)),
    )
