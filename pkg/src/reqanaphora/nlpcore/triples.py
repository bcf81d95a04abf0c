"""Pronoun occurrences, their contexts, candidate antecedents and triples."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ..errors import AnalysisError
from . import lexicon as lx
from .analyzer import Token

PRONOUN_CLASSES = ("personal", "possessive", "reflexive", "demonstrative")
DEFAULT_PRONOUN_CLASSES = frozenset({"personal", "possessive"})

_PLEO_ADJ = "|".join(re.escape(a) for a in lx.PLEONASTIC_ADJECTIVES)
_BE = r"(?:is|was|will be|shall be|should be|must be|may be|might be|would be|could be|can be|has been|had been|becomes|became)"
PLEONASTIC_PATTERNS = (
    # it is required/necessary/possible that|to ...
    re.compile(rf"^it {_BE}(?: not)?(?: \w+ly)? (?:{_PLEO_ADJ}) (?:that|to|for|whether|if|when|by)\b"),
    # it seems/appears that ...
    re.compile(r"^it (?:seems|seemed|appears|appeared|turns out|turned out|happens|follows|remains) (?:that|to|as if)\b"),
    # weather and time templates
    re.compile(rf"^it (?:{'|'.join(lx.WEATHER_VERBS)})\b"),
    re.compile(r"^it (?:is|was) (?:raining|snowing|sunny|cold|hot|dark|late|early|time|now|\d+)\b"),
)


def is_pleonastic(tokens: Iterable[Token] | Iterable[str]) -> bool:
    """True when a token sequence starting at an ``it`` matches a pleonastic template."""
    words = [t.surface.lower() if isinstance(t, Token) else t.lower() for t in tokens]
    if not words or words[0] != "it":
        return False
    text = " ".join(words[:12])
    return any(p.search(text) for p in PLEONASTIC_PATTERNS)


@dataclass(frozen=True)
class PronounOccurrence:
    req_ordinal: int
    token_index: int
    surface: str
    pronoun_class: str
    req_id: str = ""


@dataclass(frozen=True)
class ContextChunk:
    start: int  # context coordinates, inclusive
    end: int
    head: int
    text: str
    kind: str
    req_ordinal: int


@dataclass(frozen=True)
class Context:
    doc_id: str
    req_ordinals: tuple[int, ...]
    req_ids: tuple[str, ...]
    tokens: tuple[Token, ...]
    offset_map: tuple[tuple[int, int], ...]  # context index -> (req_ordinal, token_index)
    pronoun_position: int
    chunks: tuple[ContextChunk, ...]
    sentence_index: tuple[int, ...]  # context index -> sentence number within the context

    def __len__(self) -> int:
        return len(self.tokens)

    @cached_property
    def _req_base(self) -> dict[int, int]:
        base: dict[int, int] = {}
        for i, (ro, _) in enumerate(self.offset_map):
            base.setdefault(ro, i)
        return base

    def index_of(self, req_ordinal: int, token_index: int) -> int:
        return self._req_base[req_ordinal] + token_index

    def head_of(self, i: int) -> int | None:
        """Dependency head of context token ``i`` in context coordinates."""
        ro, _ = self.offset_map[i]
        h = self.tokens[i].dep_head
        return None if h is None else self.index_of(ro, h)

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass(frozen=True)
class CandidateAntecedent:
    req_ordinal: int
    token_start: int  # requirement coordinates, inclusive
    token_end: int
    ctx_start: int  # context coordinates, inclusive
    ctx_end: int
    head_token: int  # context coordinates
    text: str
    recency_rank: int
    kind: str = "base"


@dataclass(frozen=True)
class Triple:
    pronoun: PronounOccurrence
    context: Context
    candidate: CandidateAntecedent
    triple_id: str


def make_triple_id(doc_id: str, req_id: str, token_index: int, rank: int) -> str:
    return f"{doc_id}/{req_id}/{token_index}/{rank}"


def split_triple_id(triple_id: str) -> tuple[str, str, int, int]:
    doc, req, tok, rank = triple_id.rsplit("/", 3)
    return doc, req, int(tok), int(rank)


def find_pronouns(
    doc,
    classes: Iterable[str] = DEFAULT_PRONOUN_CLASSES,
    exclude_pleonastic: bool = True,
) -> list[PronounOccurrence]:
    classes = frozenset(classes)
    out = []
    for req in doc.requirements:
        ann = req.annotations
        if ann is None:
            raise AnalysisError("requirement has not been analyzed", req.id)
        for i, tok in enumerate(ann.tokens):
            if tok.pos_tag != "PRON":
                continue
            cls = tok.attrs.get("pronoun_class")
            if cls is None or cls not in classes or tok.attrs.get("person") != 3:
                continue
            if exclude_pleonastic and tok.surface.lower() == "it" and is_pleonastic(ann.tokens[i:]):
                continue
            out.append(PronounOccurrence(req.ordinal, i, tok.surface, cls, req.id))
    return out


def build_context(p: PronounOccurrence, doc, window: int = 1) -> Context:
    if window < 0:
        raise ValueError("window must be >= 0")
    ordinals = tuple(range(max(0, p.req_ordinal - window), p.req_ordinal + 1))
    tokens: list[Token] = []
    offsets: list[tuple[int, int]] = []
    chunks: list[ContextChunk] = []
    sent_idx: list[int] = []
    sent_base = 0
    pos = None
    for o in ordinals:
        req = doc.requirements[o]
        ann = req.annotations
        if ann is None:
            raise AnalysisError("requirement has not been analyzed", req.id)
        base = len(tokens)
        for c in ann.np_chunks:
            chunks.append(ContextChunk(base + c.start, base + c.end, base + c.head, c.text, c.kind, o))
        for si, (s, e) in enumerate(ann.sentence_boundaries):
            sent_idx.extend([sent_base + si] * (e - s + 1))
        sent_base += len(ann.sentence_boundaries)
        for i, tok in enumerate(ann.tokens):
            if o == p.req_ordinal and i == p.token_index:
                pos = len(tokens)
            tokens.append(tok)
            offsets.append((o, i))
    if pos is None:
        raise AnalysisError(f"pronoun token {p.token_index} out of range", p.req_id)
    return Context(
        doc_id=doc.doc_id,
        req_ordinals=ordinals,
        req_ids=tuple(doc.requirements[o].id for o in ordinals),
        tokens=tuple(tokens),
        offset_map=tuple(offsets),
        pronoun_position=pos,
        chunks=tuple(chunks),
        sentence_index=tuple(sent_idx),
    )


def extract_candidates(
    ctx: Context, p: PronounOccurrence, max_candidates: int | None = None
) -> list[CandidateAntecedent]:
    """All NP chunks ending before the pronoun, nearest first.

    Coordinations and their conjuncts are separate chunks, so both the full
    list and each member become candidates. Ties on end position put the
    shorter (later-starting) span first.
    """
    seen: dict[tuple[int, int], ContextChunk] = {}
    for c in ctx.chunks:
        if c.end < ctx.pronoun_position:
            seen.setdefault((c.start, c.end), c)
    ordered = sorted(seen.values(), key=lambda c: (-c.end, -c.start))
    if max_candidates is not None:
        ordered = ordered[:max_candidates]
    out = []
    for rank, c in enumerate(ordered, start=1):
        ro, ts = ctx.offset_map[c.start]
        _, te = ctx.offset_map[c.end]
        out.append(CandidateAntecedent(ro, ts, te, c.start, c.end, c.head, c.text, rank, c.kind))
    return out


def make_triples(p: PronounOccurrence, ctx: Context, candidates: list[CandidateAntecedent]) -> list[Triple]:
    return [
        Triple(p, ctx, c, make_triple_id(ctx.doc_id, p.req_id, p.token_index, c.recency_rank))
        for c in candidates
    ]


def triples_for_document(doc, window: int = 1, classes=DEFAULT_PRONOUN_CLASSES, exclude_pleonastic=True):
    """Convenience: (pronoun, context, triples) for every pronoun in an analyzed document."""
    for p in find_pronouns(doc, classes, exclude_pleonastic):
        ctx = build_context(p, doc, window)
        yield p, ctx, make_triples(p, ctx, extract_candidates(ctx, p))
