"""Antecedent resolution as span prediction over the encoded context."""

from __future__ import annotations

import json
import logging
import threading
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

import numpy as np

from .errors import InternalConsistencyError, ResolverBackendError
from .nlpcore.triples import CandidateAntecedent, Context, PronounOccurrence, extract_candidates

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.9
ACCEPTED, LOW_CONFIDENCE, NONE = "accepted", "low_confidence", "none"


class SubwordTokenizer(Protocol):
    cls_id: int
    sep_id: int

    def tokenize_word(self, word: str) -> list[int]: ...

    def decode(self, ids: Sequence[int]) -> str: ...


class FixtureTokenizer:
    """Lowercasing word-piece tokenizer with a hash-derived vocabulary.

    Words are cut into pieces of at most ``piece_len`` characters; pieces
    after the first get a ``##`` prefix. Ids are stable across runs.
    """

    identity = "fixture-wordpiece/1"
    CLS, SEP = "[CLS]", "[SEP]"

    def __init__(self, piece_len: int = 6):
        self.piece_len = piece_len
        self._vocab: dict[int, str] = {0: self.CLS, 1: self.SEP}
        self._lock = threading.Lock()
        self.cls_id, self.sep_id = 0, 1

    def _id(self, piece: str) -> int:
        i = 2 + zlib.crc32(piece.encode("utf-8")) % 1_000_000_007
        with self._lock:
            self._vocab.setdefault(i, piece)
        return i

    def pieces(self, word: str) -> list[str]:
        w = word.lower()
        n = self.piece_len
        chunks = [w[i : i + n] for i in range(0, len(w), n)] or [""]
        return [chunks[0]] + ["##" + c for c in chunks[1:]]

    def tokenize_word(self, word: str) -> list[int]:
        return [self._id(p) for p in self.pieces(word)]

    def decode(self, ids: Sequence[int]) -> str:
        out: list[str] = []
        for i in ids:
            piece = self._vocab.get(i, "[UNK]")
            if piece.startswith("##") and out:
                out[-1] += piece[2:]
            else:
                out.append(piece)
        return " ".join(out)


class HFTokenizerAdapter:
    """Wraps a Hugging Face fast tokenizer behind :class:`SubwordTokenizer`."""

    def __init__(self, tokenizer):
        self._tok = tokenizer
        self.cls_id = tokenizer.cls_token_id
        self.sep_id = tokenizer.sep_token_id
        self.identity = f"hf:{getattr(tokenizer, 'name_or_path', '')}"

    def tokenize_word(self, word: str) -> list[int]:
        return self._tok.convert_tokens_to_ids(self._tok.tokenize(word)) or [self._tok.unk_token_id]

    def decode(self, ids: Sequence[int]) -> str:
        return self._tok.decode(list(ids))


@dataclass(frozen=True)
class EncodedInput:
    token_ids: tuple[int, ...]
    cls_index: int
    sep_index: int
    pronoun_ids: tuple[int, ...]
    token_map: tuple[int, ...]  # sequence position -> context token index, -1 for special/pronoun segment
    context: Context
    pronoun: PronounOccurrence
    truncated: int = 0  # context sub-tokens dropped from the left

    def __post_init__(self):
        if self.cls_index != 0 or self.sep_index <= 0 or not self.pronoun_ids:
            raise InternalConsistencyError("malformed encoded input")

    @property
    def context_ids(self) -> tuple[int, ...]:
        return self.token_ids[1 : self.sep_index]

    def __len__(self) -> int:
        return len(self.token_ids)


def encode(ctx: Context, p: PronounOccurrence, tokenizer: SubwordTokenizer, max_length: int = 512) -> EncodedInput:
    """``[CLS] context [SEP] pronoun`` with left truncation of the context."""
    if not p.surface:
        raise InternalConsistencyError("empty pronoun segment")
    try:
        pos = ctx.index_of(p.req_ordinal, p.token_index)
    except KeyError:
        pos = -1
    if pos != ctx.pronoun_position or ctx.tokens[pos].surface != p.surface:
        raise InternalConsistencyError(f"pronoun {p.surface!r} at {p.req_id}:{p.token_index} is not in the context")
    pron_ids = tuple(tokenizer.tokenize_word(p.surface))
    if not pron_ids:
        raise InternalConsistencyError("empty pronoun segment")
    ids: list[int] = []
    tmap: list[int] = []
    for i, tok in enumerate(ctx.tokens):
        pieces = tokenizer.tokenize_word(tok.surface)
        ids.extend(pieces)
        tmap.extend([i] * len(pieces))
    budget = max_length - 2 - len(pron_ids)
    p_first = tmap.index(ctx.pronoun_position)
    p_last = len(tmap) - 1 - tmap[::-1].index(ctx.pronoun_position)
    if budget <= p_last - p_first:
        raise InternalConsistencyError(f"max_length {max_length} cannot hold the pronoun")
    dropped = max(0, len(ids) - budget)
    if dropped:
        # drop from the left; only an overlong pronoun requirement loses right-hand tokens
        start = min(dropped, p_first)
        log.warning("context for %s:%d truncated by %d sub-tokens", p.req_id, p.token_index, dropped)
        ids, tmap = ids[start : start + budget], tmap[start : start + budget]
    seq = (tokenizer.cls_id, *ids, tokenizer.sep_id, *pron_ids)
    full_map = (-1, *tmap, -1, *([-1] * len(pron_ids)))
    return EncodedInput(seq, 0, len(ids) + 1, pron_ids, full_map, ctx, p, dropped)


@dataclass(frozen=True)
class SpanPrediction:
    start: int
    end: int
    text: str
    probability: float

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start must not exceed its end")
        if not (0.0 <= self.probability <= 1.0):
            raise ValueError(f"probability out of range: {self.probability}")


@dataclass(frozen=True)
class ResolutionResult:
    ranked: tuple[SpanPrediction, ...]
    accepted: SpanPrediction | None
    flag: str


class SpanPredictor(Protocol):
    identity: str
    max_length: int

    def predict(self, enc: EncodedInput, k: int) -> list[SpanPrediction]: ...


def _span_text(ctx: Context, start: int, end: int) -> str:
    out = ctx.tokens[start].surface
    for i in range(start + 1, end + 1):
        prev, tok = ctx.tokens[i - 1], ctx.tokens[i]
        same_req = ctx.offset_map[i][0] == ctx.offset_map[i - 1][0]
        out += ("" if same_req and tok.char_start == prev.char_end else " ") + tok.surface
    return out


def _agreement(ctx: Context, pos: int, cand: CandidateAntecedent) -> tuple[float, float]:
    ptok, htok = ctx.tokens[pos], ctx.tokens[cand.head_token]
    pn = ptok.attrs.get("number")
    cn = "Plur" if cand.kind == "coord" else htok.attrs.get("number")
    number = 0.5 if pn is None or cn is None else float(pn == cn)
    pg, cg = ptok.attrs.get("gender"), htok.attrs.get("gender")
    if pg is None:
        gender = 1.0
    elif cg is None:
        gender = 0.0 if (pg == "neut" and htok.attrs.get("animacy") == "animate") else 0.5
    else:
        gender = float(pg == cg)
    return number, gender


class HeuristicSpanPredictor:
    """Scores the context's NP candidates and normalizes the scores.

    score = 1/rank + 2*number + gender + 0.4*[subject], with number/gender in
    {0, 0.5, 1}; a candidate disagreeing in number has its score scaled by
    0.1. Probabilities are score / sum(scores). Stateless and thread-safe.
    """

    identity = "heuristic-span/1"
    RECENCY, NUMBER, GENDER, SUBJECT, MISMATCH = 1.0, 2.0, 1.0, 0.4, 0.1

    def __init__(self, max_length: int = 512):
        self.max_length = max_length

    def score(self, ctx: Context, pos: int, cand: CandidateAntecedent) -> float:
        number, gender = _agreement(ctx, pos, cand)
        subj = ctx.tokens[cand.head_token].dep_relation in ("nsubj", "nsubjpass")
        s = self.RECENCY / cand.recency_rank + self.NUMBER * number + self.GENDER * gender + self.SUBJECT * subj
        return s * (self.MISMATCH if number == 0.0 else 1.0)

    def predict(self, enc: EncodedInput, k: int) -> list[SpanPrediction]:
        ctx, p = enc.context, enc.pronoun
        visible = {i for i in enc.token_map if i >= 0}
        cands = [c for c in extract_candidates(ctx, p) if c.ctx_start in visible]
        if not cands:
            return []
        scores = np.array([self.score(ctx, ctx.pronoun_position, c) for c in cands])
        probs = scores / scores.sum()
        order = sorted(range(len(cands)), key=lambda i: (-probs[i], cands[i].recency_rank))
        return [
            SpanPrediction(cands[i].ctx_start, cands[i].ctx_end, cands[i].text, float(min(1.0, probs[i])))
            for i in order[:k]
        ]


class TransformerSpanPredictor:
    """Adapter for a locally stored extractive QA model (start/end logits).

    The context is the first segment and the pronoun the second, as produced
    by :func:`encode`. Spans are restricted to whole context words, exclude
    the pronoun itself, and have at most ``max_span_words`` words. The span
    probability is softmax(start) * softmax(end) over context words.
    Inference is serialized by a lock.
    """

    def __init__(self, model_path: str, max_length: int = 384, device: str = "cpu", max_span_words: int = 12):
        try:
            import torch
            from transformers import AutoModelForQuestionAnswering, AutoTokenizer
        except ImportError as exc:  # pragma: no cover - depends on the environment
            raise ResolverBackendError(f"transformers/torch not available: {exc}") from exc
        try:
            tok = AutoTokenizer.from_pretrained(model_path, local_files_only=True)
            self._model = AutoModelForQuestionAnswering.from_pretrained(model_path, local_files_only=True)
            self._model.to(device).eval()
        except Exception as exc:
            raise ResolverBackendError(f"cannot load span model from {model_path}: {exc}") from exc
        self.tokenizer = HFTokenizerAdapter(tok)
        self._torch = torch
        self._device = device
        self._lock = threading.Lock()
        self.max_length = max_length
        self.max_span_words = max_span_words
        self.identity = f"transformer-span:{model_path}"

    def predict(self, enc: EncodedInput, k: int) -> list[SpanPrediction]:
        torch = self._torch
        ids = torch.tensor([list(enc.token_ids)], device=self._device)
        types = torch.tensor([[0] * (enc.sep_index + 1) + [1] * len(enc.pronoun_ids)], device=self._device)
        try:
            with self._lock, torch.no_grad():
                out = self._model(input_ids=ids, token_type_ids=types, attention_mask=torch.ones_like(ids))
        except Exception as exc:
            raise ResolverBackendError(f"span model failed: {exc}") from exc
        start_logits = out.start_logits[0].cpu().numpy().astype(np.float64)
        end_logits = out.end_logits[0].cpu().numpy().astype(np.float64)
        ctx = enc.context
        # first and last sub-token of each visible context word
        first: dict[int, int] = {}
        last: dict[int, int] = {}
        for pos, w in enumerate(enc.token_map):
            if w < 0 or w == ctx.pronoun_position:
                continue
            first.setdefault(w, pos)
            last[w] = pos
        words = sorted(first)
        if not words:
            return []
        s = start_logits[[first[w] for w in words]]
        e = end_logits[[last[w] for w in words]]
        ps = np.exp(s - s.max())
        ps /= ps.sum()
        pe = np.exp(e - e.max())
        pe /= pe.sum()
        spans = []
        for a, wa in enumerate(words):
            for b in range(a, min(len(words), a + self.max_span_words)):
                wb = words[b]
                if wb >= ctx.pronoun_position and wa < ctx.pronoun_position:
                    break
                spans.append((float(ps[a] * pe[b]), wa, wb))
        spans.sort(key=lambda x: (-x[0], x[1], x[2]))
        return [SpanPrediction(wa, wb, _span_text(ctx, wa, wb), min(1.0, p)) for p, wa, wb in spans[:k]]


def predict_spans(enc: EncodedInput, predictor: SpanPredictor, k: int = 5) -> list[SpanPrediction]:
    if k < 1:
        raise ValueError("k must be at least 1")
    try:
        spans = predictor.predict(enc, k)
    except ResolverBackendError:
        raise
    except Exception as exc:
        raise ResolverBackendError(f"{type(exc).__name__}: {exc}") from exc
    n = len(enc.context.tokens)
    for s in spans:
        if not (0 <= s.start <= s.end < n) or s.start <= enc.context.pronoun_position <= s.end:
            raise ResolverBackendError(f"backend returned an out-of-context span {s}")
    return sorted(spans, key=lambda s: -s.probability)[:k]


def resolve(spans: Sequence[SpanPrediction], threshold: float = DEFAULT_THRESHOLD) -> ResolutionResult:
    """Accept the top span only when its probability is strictly above ``threshold``."""
    ranked = tuple(spans)
    if not ranked:
        return ResolutionResult((), None, NONE)
    top = ranked[0]
    return ResolutionResult(ranked, top, ACCEPTED if top.probability > threshold else LOW_CONFIDENCE)


def squad_example(ctx: Context, p: PronounOccurrence, antecedent: CandidateAntecedent | None, qid: str) -> dict:
    """One SQuAD-v2-style record for fine-tuning a span model (pronoun as the question)."""
    text = " ".join(ctx.surfaces())
    starts, off = [], 0
    for w in ctx.surfaces():
        starts.append(off)
        off += len(w) + 1
    answers = {"text": [], "answer_start": []}
    if antecedent is not None:
        a_text = " ".join(ctx.surfaces()[antecedent.ctx_start : antecedent.ctx_end + 1])
        answers = {"text": [a_text], "answer_start": [starts[antecedent.ctx_start]]}
    return {"id": qid, "context": text, "question": p.surface, "answers": answers}


def write_squad_jsonl(examples: Iterable[dict], path: str | Path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(json.dumps(ex, sort_keys=True) + "\n")
            n += 1
    return n
