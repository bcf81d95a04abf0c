"""Deterministic test backends and the committed golden annotations."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .detector import FixtureClassifier
from .errors import FixtureMissError
from .nlpcore.analyzer import LinguisticAnalyzer, RuleAnalyzer, TokenAnnotations
from .corpus import parse_spec
from .synth import ACCEPTANCE_CORPUS_SEED, ACCEPTANCE_CORPUS_SIZE, WORKED_EXAMPLE_SPEC, generate_spec

GOLDEN_FILENAME = "golden_annotations.jsonl"

# extra sentences exercised by the test-suite through the fixture analyzer
EXTRA_GOLDEN_TEXTS = (
    "The system shall record them.",
    "The parser reads the file. It stores the results.",
    "It is required that the system logs it.",
    "It shall be possible to export the reports.",
    "The operator shall approve the request before it expires.",
    "The system shall not send any messages.",
    "The controller shall validate the messages and forward them to the gateway.",
    "If the backup is duplicate, the module shall export it.",
)


def normalize_text(text: str) -> str:
    return " ".join(text.split())


def text_key(text: str) -> str:
    return hashlib.sha256(normalize_text(text).encode("utf-8")).hexdigest()


class GoldenAnnotationSet:
    """Frozen per-requirement annotations keyed by the hash of the normalized text."""

    def __init__(self, records: Mapping[str, tuple[str, TokenAnnotations]], backend: str):
        self._records = dict(records)
        self.backend = backend

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, text: str) -> bool:
        return text_key(text) in self._records

    def get(self, text: str) -> TokenAnnotations:
        rec = self._records.get(text_key(text))
        if rec is None:
            raise FixtureMissError(normalize_text(text))
        return rec[1]

    def texts(self) -> list[str]:
        return [t for t, _ in self._records.values()]

    @classmethod
    def build(cls, texts: Iterable[str], analyzer: LinguisticAnalyzer) -> GoldenAnnotationSet:
        records = {}
        for text in texts:
            norm = normalize_text(text)
            records.setdefault(text_key(norm), (norm, analyzer.analyze_text(norm)))
        return cls(records, analyzer.backend_id)

    def dumps(self) -> str:
        lines = []
        for key, (text, ann) in sorted(self._records.items(), key=lambda kv: kv[1][0]):
            lines.append(json.dumps({"key": key, "text": text, "annotations": ann.to_dict()}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, data: str) -> GoldenAnnotationSet:
        records = {}
        backends = set()
        for n, line in enumerate(data.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                key, text = rec["key"], rec["text"]
                ann = TokenAnnotations.from_dict(rec["annotations"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"golden record {n} is malformed: {exc}") from exc
            if key != text_key(text):
                raise ValueError(f"golden record {n}: key does not match its text")
            backends.add(ann.backend)
            records[key] = (text, ann)
        if len(backends) > 1:
            raise ValueError(f"golden file mixes analyzer backends: {sorted(backends)}")
        return cls(records, backends.pop() if backends else "unknown")

    @classmethod
    def load(cls, path: str | Path | None = None) -> GoldenAnnotationSet:
        if path is None:
            data = resources.files("reqanaphora").joinpath("data", GOLDEN_FILENAME).read_text(encoding="utf-8")
        else:
            data = Path(path).read_text(encoding="utf-8")
        return cls.loads(data)


class FixtureAnalyzer:
    """Replays golden annotations; unknown text raises :class:`FixtureMissError`."""

    def __init__(self, golden: GoldenAnnotationSet):
        self.golden = golden
        self.backend_id = f"fixture:{golden.backend}"

    def analyze_text(self, text: str) -> TokenAnnotations:
        return self.golden.get(text)


def fixture_analyzer(golden: GoldenAnnotationSet | None = None) -> FixtureAnalyzer:
    return FixtureAnalyzer(golden if golden is not None else GoldenAnnotationSet.load())


def fixture_classifier(script: Mapping[str, tuple[float, float, float]] | None = None, kind: str = "LF") -> FixtureClassifier:
    return FixtureClassifier(kind, script)


def golden_source_texts() -> list[str]:
    """Every requirement text the committed golden file must cover."""
    texts = [r.text for r in parse_spec(WORKED_EXAMPLE_SPEC, "myRS").requirements]
    corpus = generate_spec(ACCEPTANCE_CORPUS_SIZE, ACCEPTANCE_CORPUS_SEED)
    texts += [r.text for r in parse_spec(corpus, "synthetic").requirements]
    texts += list(EXTRA_GOLDEN_TEXTS)
    return texts


def regenerate_golden(analyzer: LinguisticAnalyzer | None = None) -> GoldenAnnotationSet:
    return GoldenAnnotationSet.build(golden_source_texts(), analyzer or RuleAnalyzer())
