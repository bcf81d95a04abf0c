"""End-to-end detection and resolution over a specification file."""

from __future__ import annotations

import configparser
import csv
import io
import logging
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .corpus import DEFAULT_ID_PATTERN, Document, ReportRow, parse_spec, write_report
from .detector import DecisionRuleConfig, DetectionVerdict, decide_pronoun, ensemble, load_classifier, predict_triples
from .errors import ConfigError, EncoderError, PipelineError, ReqAnaphoraError
from .features import DEFAULT_REGISTRY, HashingEncoder, TransformerEncoder, extract_fe, extract_lf
from .fixtures import GoldenAnnotationSet, fixture_analyzer, fixture_classifier
from .nlpcore import (
    PRONOUN_CLASSES,
    RuleAnalyzer,
    analyze_document,
    build_context,
    extract_candidates,
    find_pronouns,
    make_triples,
)
from .resolver import (
    ACCEPTED,
    LOW_CONFIDENCE,
    FixtureTokenizer,
    HeuristicSpanPredictor,
    TransformerSpanPredictor,
    encode,
    predict_spans,
    resolve,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TRIPLES_HEADER = ("triple_id", "doc_id", "req_id", "pronoun_token_index", "recency_rank", "candidate_text")

_CHOICES = {
    "analyzer": ("rule", "fixture"),
    "lf_classifier": ("fixture", "model", "none"),
    "fe_classifier": ("fixture", "model", "none"),
    "encoder": ("hashing", "transformer", "none"),
    "resolver_backend": ("heuristic", "model"),
}


@dataclass(frozen=True)
class PipelineConfig:
    schema_version: int = SCHEMA_VERSION
    context_window: int = 1
    tau_margin: float = 0.15
    resolution_threshold: float = 0.9
    analyzer: str = "rule"
    golden_path: str | None = None
    lf_classifier: str = "fixture"
    lf_model_path: str | None = None
    fe_classifier: str = "fixture"
    fe_model_path: str | None = None
    encoder: str = "hashing"
    encoder_path: str | None = None
    resolver_backend: str = "heuristic"
    resolver_model_path: str | None = None
    max_length: int = 512
    top_k: int = 5
    device: str = "cpu"
    pronoun_classes: tuple[str, ...] = ("personal", "possessive")
    exclude_pleonastic: bool = True
    max_candidates: int | None = None
    worker_count: int = 1
    id_pattern: str = DEFAULT_ID_PATTERN

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported config schema_version {self.schema_version} (expected {SCHEMA_VERSION})")
        for name in ("tau_margin", "resolution_threshold"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ConfigError(f"{name} must lie in (0, 1), got {v}")
        if self.context_window < 0:
            raise ConfigError(f"context_window must be >= 0, got {self.context_window}")
        if self.worker_count < 1:
            raise ConfigError(f"worker_count must be >= 1, got {self.worker_count}")
        if self.top_k < 1 or self.max_length < 8:
            raise ConfigError("top_k must be >= 1 and max_length >= 8")
        if self.max_candidates is not None and self.max_candidates < 1:
            raise ConfigError("max_candidates must be >= 1")
        for key, allowed in _CHOICES.items():
            if getattr(self, key) not in allowed:
                raise ConfigError(f"{key} must be one of {allowed}, got {getattr(self, key)!r}")
        bad = sorted(set(self.pronoun_classes) - set(PRONOUN_CLASSES))
        if bad or not self.pronoun_classes:
            raise ConfigError(f"pronoun_classes must be a non-empty subset of {PRONOUN_CLASSES}")
        if self.lf_classifier == "none" and self.fe_classifier == "none":
            raise ConfigError("at least one of lf_classifier / fe_classifier must be enabled")
        for kind, path in (("lf", self.lf_model_path), ("fe", self.fe_model_path)):
            if getattr(self, f"{kind}_classifier") == "model" and not path:
                raise ConfigError(f"{kind}_classifier = model requires {kind}_model_path")
        if self.encoder == "transformer" and not self.encoder_path:
            raise ConfigError("encoder = transformer requires encoder_path")
        if self.resolver_backend == "model" and not self.resolver_model_path:
            raise ConfigError("resolver_backend = model requires resolver_model_path")

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> PipelineConfig:
        types = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in types:
                raise ConfigError(f"unknown config key {key!r}")
            kwargs[key] = _coerce(key, types[key], raw)
        return cls(**kwargs)

    def with_overrides(self, **overrides) -> PipelineConfig:
        try:
            return replace(self, **{k: v for k, v in overrides.items() if v is not None})
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def _coerce(key: str, typ: str, raw: Any):
    if not isinstance(raw, str):
        return raw
    raw = raw.strip()
    try:
        if "None" in typ and raw.lower() in ("", "none"):
            return None
        if typ.startswith("int"):
            return int(raw)
        if typ.startswith("float"):
            return float(raw)
        if typ.startswith("bool"):
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if typ.startswith("tuple"):
            return tuple(x.strip() for x in raw.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return raw


def load_config(path: str | Path) -> PipelineConfig:
    """Read a flat ``key = value`` file; ``schema_version`` is mandatory."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"), inline_comment_prefixes=("#",))
    try:
        cp.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    values = dict(cp["config"])
    if "schema_version" not in values:
        raise ConfigError(f"{path}: missing schema_version")
    return PipelineConfig.from_mapping(values)


def dump_config(config: PipelineConfig) -> str:
    out = []
    for f in fields(config):
        v = getattr(config, f.name)
        if isinstance(v, tuple):
            v = ",".join(v)
        out.append(f"{f.name} = {'none' if v is None else v}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class RunSummary:
    pronoun_count: int
    ambiguous_count: int
    unambiguous_count: int
    accepted_resolutions: int
    low_confidence_resolutions: int
    wall_time_seconds: float
    degraded: tuple[str, ...] = ()
    output_path: str = ""
    figures: tuple[str, ...] = ()

    def __post_init__(self):
        if self.ambiguous_count + self.unambiguous_count != self.pronoun_count:
            raise ValueError("ambiguous + unambiguous must equal the pronoun count")


@dataclass
class Components:
    lf_classifier: Any = None
    fe_classifier: Any = None
    encoder: Any = None
    tokenizer: Any = None
    predictor: Any = None
    degraded: list[str] = field(default_factory=list)

    def make_analyzer(self, config: PipelineConfig):
        if config.analyzer == "fixture":
            golden = GoldenAnnotationSet.load(config.golden_path) if config.golden_path else None
            return fixture_analyzer(golden)
        return RuleAnalyzer()


def build_components(config: PipelineConfig) -> Components:
    c = Components()
    if config.lf_classifier == "model":
        c.lf_classifier = load_classifier(config.lf_model_path, DEFAULT_REGISTRY)
    elif config.lf_classifier == "fixture":
        c.lf_classifier = fixture_classifier(kind="LF")
        c.degraded.append("fixture-lf-classifier")

    if config.fe_classifier != "none":
        try:
            if config.encoder == "transformer":
                c.encoder = TransformerEncoder(config.encoder_path, config.max_length, config.device)
            elif config.encoder == "hashing":
                c.encoder = HashingEncoder()
                c.degraded.append("hashing-encoder")
        except EncoderError as exc:
            log.warning("FE encoder unavailable, continuing LF-only: %s", exc)
        if c.encoder is not None:
            if config.fe_classifier == "model":
                c.fe_classifier = load_classifier(config.fe_model_path, DEFAULT_REGISTRY)
            else:
                c.fe_classifier = fixture_classifier(kind="FE")
                c.degraded.append("fixture-fe-classifier")
    if c.fe_classifier is None:
        c.degraded.append("lf-only")
    if c.lf_classifier is None and c.fe_classifier is None:
        raise ConfigError("no usable classifier: the FE encoder failed and LF classification is disabled")
    if c.lf_classifier is None:
        c.degraded.append("fe-only")

    if config.resolver_backend == "model":
        c.predictor = TransformerSpanPredictor(config.resolver_model_path, config.max_length, config.device)
        c.tokenizer = c.predictor.tokenizer
    else:
        c.predictor = HeuristicSpanPredictor(config.max_length)
        c.tokenizer = FixtureTokenizer()
        c.degraded.append("heuristic-resolver")
    return c


@dataclass(frozen=True)
class PronounResult:
    row: ReportRow
    verdict: DetectionVerdict
    triples: tuple[tuple[str, int, str], ...]  # (triple id, recency rank, candidate text)
    req_ordinal: int


def process_pronoun(p, doc: Document, config: PipelineConfig, comp: Components) -> PronounResult:
    ctx = build_context(p, doc, config.context_window)
    triples = make_triples(p, ctx, extract_candidates(ctx, p, config.max_candidates))
    ids = [t.triple_id for t in triples]
    if not triples:
        verdict = DetectionVerdict("ambiguous", 1.0, None, None)
    else:
        rules = DecisionRuleConfig(config.tau_margin)
        lf = fe = None
        if comp.lf_classifier is not None:
            vecs = [extract_lf(t, DEFAULT_REGISTRY, doc) for t in triples]
            lf = decide_pronoun(predict_triples(comp.lf_classifier, ids, vecs), rules, "LF")
        if comp.fe_classifier is not None:
            vecs = [extract_fe(t, comp.encoder) for t in triples]
            fe = decide_pronoun(predict_triples(comp.fe_classifier, ids, vecs), rules, "FE")
        verdict = ensemble(lf, fe)
    enc = encode(ctx, p, comp.tokenizer, comp.predictor.max_length)
    res = resolve(predict_spans(enc, comp.predictor, config.top_k), config.resolution_threshold)
    top = res.accepted
    row = ReportRow(
        doc_id=doc.doc_id,
        req_id=p.req_id,
        pronoun=p.surface,
        pronoun_token_index=p.token_index,
        context_req_ids=ctx.req_ids,
        detection_label=verdict.label,
        detection_confidence=verdict.confidence,
        resolved_antecedent=top.text if top else "",
        resolution_probability=top.probability if top else 0.0,
        resolution_flag=res.flag,
    )
    return PronounResult(row, verdict, tuple((t.triple_id, t.candidate.recency_rank, t.candidate.text) for t in triples),
                         p.req_ordinal)


def detect_document(doc: Document, config: PipelineConfig, comp: Components | None = None) -> list[PronounResult]:
    """Analyze ``doc`` and process every pronoun; results in document order."""
    comp = comp or build_components(config)
    try:
        doc = analyze_document(doc, comp.make_analyzer(config))
    except ReqAnaphoraError as exc:
        raise PipelineError(str(exc), getattr(exc, "req_id", None)) from exc
    pronouns = find_pronouns(doc, config.pronoun_classes, config.exclude_pleonastic)

    def work(p):
        try:
            return process_pronoun(p, doc, config, comp)
        except Exception as exc:
            raise PipelineError(f"{type(exc).__name__}: {exc}", p.req_id, p.token_index) from exc

    if config.worker_count == 1 or len(pronouns) < 2:
        results = [work(p) for p in pronouns]
    else:
        with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
            results = list(pool.map(work, pronouns))
    return sorted(results, key=lambda r: (r.req_ordinal, r.row.pronoun_token_index))


def triples_csv(results: list[PronounResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRIPLES_HEADER)
    for r in results:
        for tid, rank, text in r.triples:
            w.writerow([tid, r.row.doc_id, r.row.req_id, r.row.pronoun_token_index, rank, text])
    return buf.getvalue()


def atomic_write(path: str | Path, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(
    input_path: str | Path,
    output_path: str | Path,
    config: PipelineConfig = PipelineConfig(),
    triples_path: str | Path | None = None,
    figures_dir: str | Path | None = None,
) -> RunSummary:
    t0 = time.perf_counter()
    input_path = Path(input_path)
    try:
        raw = input_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PipelineError(f"cannot read {input_path}: {exc}") from exc
    try:
        doc = parse_spec(raw, input_path.stem, config.id_pattern)
    except ReqAnaphoraError as exc:
        raise PipelineError(str(exc)) from exc
    comp = build_components(config)
    results = detect_document(doc, config, comp)
    rows = [r.row for r in results]
    report = write_report(rows)
    triples = triples_csv(results) if triples_path else None
    atomic_write(output_path, report)
    if triples is not None:
        atomic_write(triples_path, triples)
    figures: list[str] = []
    if figures_dir is not None:
        from .plotting import write_detection_figures

        figures = [str(p) for p in write_detection_figures(rows, figures_dir, Path(output_path).stem,
                                                           config.resolution_threshold)]
    amb = sum(r.detection_label == "ambiguous" for r in rows)
    return RunSummary(
        pronoun_count=len(rows),
        ambiguous_count=amb,
        unambiguous_count=len(rows) - amb,
        accepted_resolutions=sum(r.resolution_flag == ACCEPTED for r in rows),
        low_confidence_resolutions=sum(r.resolution_flag == LOW_CONFIDENCE for r in rows),
        wall_time_seconds=time.perf_counter() - t0,
        degraded=tuple(comp.degraded),
        output_path=str(output_path),
        figures=tuple(figures),
    )
