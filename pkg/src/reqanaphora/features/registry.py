"""Language features (LFs) describing a pronoun/candidate pair.

The vector layout is defined by a :class:`FeatureRegistry`: an ordered list
of named extractors. Agreement features use 0.5 for "unknown"; boolean
features are 0/1; distance and count features are non-negative; relative
positions and similarities lie in [0, 1].
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from ..errors import RegistryError
from ..nlpcore import lexicon as lx
from ..nlpcore.triples import Triple, extract_candidates, is_pleonastic

LF_DIMENSION = 45
FE_DIMENSION = 768
REGISTRY_SCHEMA = "lf-registry"
REGISTRY_VERSION = 1

VALUE_TYPES = ("boolean", "agreement", "count", "ratio")
_SUBJ = ("nsubj", "nsubjpass")
_CONTENT_POS = ("NOUN", "PROPN", "VERB", "ADJ")


class FeatureVector:
    """Ordered feature values of one triple; ``names`` is empty for FE vectors."""

    __slots__ = ("kind", "names", "values")

    def __init__(self, kind: str, values, names: tuple[str, ...] = ()):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("feature values must be one-dimensional")
        if kind == "LF":
            if len(values) != LF_DIMENSION or len(names) != LF_DIMENSION:
                raise ValueError(f"LF vectors have exactly {LF_DIMENSION} named values, got {len(values)}")
        elif kind == "FE":
            if len(values) != FE_DIMENSION:
                raise ValueError(f"FE vectors have exactly {FE_DIMENSION} values, got {len(values)}")
        else:
            raise ValueError(f"unknown feature kind {kind!r}")
        if not np.all(np.isfinite(values)):
            raise ValueError("feature values must be finite")
        values.setflags(write=False)
        self.kind = kind
        self.names = tuple(names)
        self.values = values

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"FeatureVector({self.kind}, n={len(self)})"

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values.tolist()))


class _View:
    """Lazily computed facts about one triple shared by the extractors."""

    def __init__(self, t: Triple, doc=None):
        self.t = t
        self.ctx = t.context
        self.cand = t.candidate
        self.pos = self.ctx.pronoun_position
        self.ptok = self.ctx.tokens[self.pos]
        self.htok = self.ctx.tokens[self.cand.head_token]
        self.doc = doc

    @cached_property
    def cand_tokens(self):
        return self.ctx.tokens[self.cand.ctx_start : self.cand.ctx_end + 1]

    @cached_property
    def cand_number(self) -> str | None:
        if self.cand.kind == "coord":
            return "Plur"
        return self.htok.attrs.get("number")

    @cached_property
    def pron_low(self) -> str:
        return self.ptok.surface.lower()

    @cached_property
    def chunk_spans(self) -> list[tuple[int, int]]:
        return sorted({(c.start, c.end) for c in self.ctx.chunks})

    @cached_property
    def all_candidates(self):
        return extract_candidates(self.ctx, self.t.pronoun)

    def depth(self, i: int) -> int:
        d, seen = 0, set()
        h = self.ctx.head_of(i)
        while h is not None and h not in seen:
            seen.add(h)
            d += 1
            h = self.ctx.head_of(h)
        return d

    def ancestors(self, i: int) -> list[int]:
        out, seen = [i], {i}
        h = self.ctx.head_of(i)
        while h is not None and h not in seen:
            out.append(h)
            seen.add(h)
            h = self.ctx.head_of(h)
        return out

    def governing_verb(self, i: int):
        h = self.ctx.head_of(i)
        for _ in range(3):
            if h is None:
                return None
            if self.ctx.tokens[h].pos_tag in ("VERB", "AUX"):
                return h
            h = self.ctx.head_of(h)
        return None

    def doc_annotations(self):
        if self.doc is not None:
            return [r.annotations for r in self.doc.requirements if r.annotations is not None]
        return None


def _b(x) -> float:
    return 1.0 if x else 0.0


# -- agreement / morphology -------------------------------------------------

def number_agreement(v: _View) -> float:
    pn, cn = v.ptok.attrs.get("number"), v.cand_number
    if pn is None or cn is None:
        return 0.5
    return _b(pn == cn)


def gender_agreement(v: _View) -> float:
    pg = v.ptok.attrs.get("gender")
    if pg is None:
        return 1.0
    cg = v.htok.attrs.get("gender")
    if cg is None:
        if v.htok.attrs.get("animacy") == "animate":
            return 0.0 if pg == "neut" else 0.5
        return 0.5
    return _b(cg == pg)


def person_agreement(v: _View) -> float:
    person = v.ptok.attrs.get("person")
    if person is None:
        return 0.5
    return _b(person == 3 and v.htok.pos_tag in ("NOUN", "PROPN"))


def animacy_agreement(v: _View) -> float:
    pa, ca = v.ptok.attrs.get("animacy"), v.htok.attrs.get("animacy")
    if pa is None:
        return 1.0
    if ca is None:
        return 0.5
    return _b(pa == ca)


def pronoun_is_plural(v: _View) -> float:
    return _b(v.ptok.attrs.get("number") == "Plur")


def candidate_is_plural(v: _View) -> float:
    return _b(v.cand_number == "Plur")


def pronoun_is_possessive(v: _View) -> float:
    return _b(v.ptok.attrs.get("pronoun_class") == "possessive")


def pronoun_is_reflexive(v: _View) -> float:
    return _b(v.ptok.attrs.get("pronoun_class") == "reflexive")


# -- distance / recency -----------------------------------------------------

def token_distance(v: _View) -> float:
    return float(v.pos - v.cand.ctx_end)


def sentence_distance(v: _View) -> float:
    return float(v.ctx.sentence_index[v.pos] - v.ctx.sentence_index[v.cand.ctx_end])


def intervening_np_count(v: _View) -> float:
    return float(sum(1 for s, e in v.chunk_spans if s > v.cand.ctx_end and e < v.pos))


def recency_rank(v: _View) -> float:
    return float(v.cand.recency_rank)


def same_requirement(v: _View) -> float:
    return _b(v.cand.req_ordinal == v.t.pronoun.req_ordinal)


def pronoun_relative_position(v: _View) -> float:
    n = len(v.ctx.tokens)
    return v.pos / (n - 1) if n > 1 else 0.0


def candidate_relative_position(v: _View) -> float:
    n = len(v.ctx.tokens)
    return v.cand.ctx_start / (n - 1) if n > 1 else 0.0


# -- syntactic --------------------------------------------------------------

def candidate_is_subject(v: _View) -> float:
    return _b(v.htok.dep_relation in _SUBJ)


def candidate_is_direct_object(v: _View) -> float:
    return _b(v.htok.dep_relation == "dobj")


def candidate_in_prep_phrase(v: _View) -> float:
    return _b(v.htok.dep_relation == "pobj")


def pronoun_is_subject(v: _View) -> float:
    return _b(v.ptok.dep_relation in _SUBJ)


def pronoun_is_direct_object(v: _View) -> float:
    return _b(v.ptok.dep_relation == "dobj")


def _role(dep: str) -> str:
    if dep in _SUBJ:
        return "subj"
    return {"dobj": "obj", "pobj": "pobj", "poss": "poss"}.get(dep, "other")


def role_parallelism(v: _View) -> float:
    rc, rp = _role(v.htok.dep_relation), _role(v.ptok.dep_relation)
    return _b(rc == rp and rc != "other")


def dependency_path_length(v: _View) -> float:
    c, p = v.cand.head_token, v.pos
    if v.ctx.sentence_index[c] == v.ctx.sentence_index[p]:
        ac, ap = v.ancestors(c), v.ancestors(p)
        common = set(ac) & set(ap)
        for i, node in enumerate(ac):
            if node in common:
                return float(i + ap.index(node))
    return float(v.depth(c) + v.depth(p) + 1 + sentence_distance(v))


def candidate_is_nested_np(v: _View) -> float:
    s, e = v.cand.ctx_start, v.cand.ctx_end
    return _b(any((cs <= s and e <= ce) and (cs, ce) != (s, e) for cs, ce in v.chunk_spans))


def candidate_has_conjunction(v: _View) -> float:
    return _b(v.cand.kind == "coord" or any(t.pos_tag == "CCONJ" for t in v.cand_tokens))


def candidate_definite(v: _View) -> float:
    first = v.cand_tokens[0]
    return _b(first.surface.lower() in lx.DEFINITE_DETS or first.tag == "PRP$" or any(t.tag == "POS" for t in v.cand_tokens))


def candidate_indefinite(v: _View) -> float:
    return _b(v.cand_tokens[0].surface.lower() in lx.INDEFINITE_DETS)


def candidate_is_proper_noun(v: _View) -> float:
    return _b(v.htok.pos_tag == "PROPN")


# -- lexical ----------------------------------------------------------------

def candidate_head_is_common_noun(v: _View) -> float:
    return _b(v.htok.pos_tag == "NOUN")


def candidate_length_tokens(v: _View) -> float:
    return float(v.cand.ctx_end - v.cand.ctx_start + 1)


def candidate_contains_digit(v: _View) -> float:
    return _b(any(ch.isdigit() for ch in v.cand.text))


def head_lemma_frequency_in_context(v: _View) -> float:
    lemma = v.htok.lemma.lower()
    return float(sum(1 for t in v.ctx.tokens if t.lemma.lower() == lemma))


def candidate_repeated_in_document(v: _View) -> float:
    lemma = v.htok.lemma.lower()
    anns = v.doc_annotations()
    if anns is None:
        heads = [v.ctx.tokens[c.head].lemma.lower() for c in v.ctx.chunks]
    else:
        heads = [a.tokens[c.head].lemma.lower() for a in anns for c in a.np_chunks]
    return _b(heads.count(lemma) >= 2)


def candidate_is_named_entity(v: _View) -> float:
    return _b(bool(v.htok.attrs.get("ent_type")))


def candidate_capitalized(v: _View) -> float:
    return _b(v.htok.surface[:1].isupper())


def candidate_is_gerund(v: _View) -> float:
    return _b(bool(v.htok.attrs.get("gerund")) or v.htok.tag == "VBG")


# -- semantic ---------------------------------------------------------------

def head_context_similarity(v: _View) -> float:
    cand_bag = Counter(t.lemma.lower() for t in v.cand_tokens if t.pos_tag in _CONTENT_POS)
    sid = v.ctx.sentence_index[v.pos]
    sent_bag = Counter(
        t.lemma.lower()
        for i, t in enumerate(v.ctx.tokens)
        if v.ctx.sentence_index[i] == sid and i != v.pos and t.pos_tag in _CONTENT_POS
        and not (v.cand.ctx_start <= i <= v.cand.ctx_end)
    )
    if not cand_bag or not sent_bag:
        return 0.0
    dot = sum(cand_bag[w] * sent_bag[w] for w in cand_bag)
    norm = math.sqrt(sum(x * x for x in cand_bag.values())) * math.sqrt(sum(x * x for x in sent_bag.values()))
    return min(1.0, dot / norm)


def governing_verb_compatibility(v: _View) -> float:
    gv = v.governing_verb(v.pos)
    if gv is None:
        return 0.5
    verb = v.ctx.tokens[gv].lemma.lower()
    head = v.htok.lemma.lower()
    anns = v.doc_annotations()
    sources = anns if anns is not None else None
    if sources is None:
        toks = v.ctx.tokens
        for i, t in enumerate(toks):
            if i == v.pos or t.lemma.lower() != head or t.dep_relation not in ("dobj", "nsubj", "nsubjpass", "pobj"):
                continue
            g = v.governing_verb(i)
            if g is not None and toks[g].lemma.lower() == verb:
                return 1.0
        return 0.0
    for a in sources:
        for t in a.tokens:
            if t.lemma.lower() != head or t.dep_relation not in ("dobj", "nsubj", "nsubjpass", "pobj"):
                continue
            h = t.dep_head
            for _ in range(3):
                if h is None:
                    break
                if a.tokens[h].pos_tag in ("VERB", "AUX"):
                    if a.tokens[h].lemma.lower() == verb:
                        return 1.0
                    break
                h = a.tokens[h].dep_head
    return 0.0


def candidate_abstractness(v: _View) -> float:
    return _b(bool(v.htok.attrs.get("abstract")))


def candidate_animate(v: _View) -> float:
    a = v.htok.attrs.get("animacy")
    if a is None:
        return 0.5
    return _b(a == "animate")


def candidate_is_collective_noun(v: _View) -> float:
    return _b(bool(v.htok.attrs.get("collective")))


# -- context / global -------------------------------------------------------

def candidate_count_total(v: _View) -> float:
    return float(len(v.all_candidates))


def pleonastic_pattern_score(v: _View) -> float:
    ro, ti = v.ctx.offset_map[v.pos]
    tail = [t for i, t in enumerate(v.ctx.tokens[v.pos :]) if v.ctx.offset_map[v.pos + i][0] == ro]
    return _b(is_pleonastic(tail))


def candidate_followed_by_relative_clause(v: _View) -> float:
    nxt = v.cand.ctx_end + 1
    if nxt >= len(v.ctx.tokens) or v.ctx.offset_map[nxt][0] != v.cand.req_ordinal:
        return 0.0
    return _b(v.ctx.tokens[nxt].tag in ("WDT", "WP", "WP$"))


def candidate_in_passive_construction(v: _View) -> float:
    if v.htok.dep_relation == "nsubjpass":
        return 1.0
    if v.htok.dep_relation == "pobj":
        adp = v.ctx.head_of(v.cand.head_token)
        if adp is not None and v.ctx.tokens[adp].surface.lower() == "by":
            gov = v.ctx.head_of(adp)
            return _b(gov is not None and bool(v.ctx.tokens[gov].attrs.get("passive")))
    return 0.0


def candidate_is_first_np_of_context(v: _View) -> float:
    return _b(bool(v.chunk_spans) and v.cand.ctx_start == v.chunk_spans[0][0])


@dataclass(frozen=True)
class FeatureSpec:
    name: str
    category: str
    value_type: str
    default: float
    extractor: Callable[[_View], float]
    doc: str


def _spec(fn, category, value_type, doc, default=None) -> FeatureSpec:
    if default is None:
        default = 0.5 if value_type == "agreement" else 0.0
    return FeatureSpec(fn.__name__, category, value_type, default, fn, doc)


_BUILTIN = [
    _spec(number_agreement, "agreement", "agreement", "pronoun and candidate share grammatical number; coordinations count as plural"),
    _spec(gender_agreement, "agreement", "agreement", "pronoun gender compatible with candidate head; they/them agree with anything"),
    _spec(person_agreement, "agreement", "agreement", "third-person pronoun with a nominal candidate"),
    _spec(animacy_agreement, "agreement", "agreement", "it/inanimate, he-she/animate"),
    _spec(pronoun_is_plural, "agreement", "boolean", "pronoun is plural"),
    _spec(candidate_is_plural, "agreement", "boolean", "candidate is plural"),
    _spec(pronoun_is_possessive, "agreement", "boolean", "pronoun is possessive (its, their, ...)"),
    _spec(pronoun_is_reflexive, "agreement", "boolean", "pronoun is reflexive"),
    _spec(token_distance, "distance", "count", "pronoun position minus candidate end, in context tokens"),
    _spec(sentence_distance, "distance", "count", "sentences between candidate end and pronoun"),
    _spec(intervening_np_count, "distance", "count", "NP chunks lying strictly between candidate and pronoun"),
    _spec(recency_rank, "distance", "count", "1 = nearest candidate", default=1.0),
    _spec(same_requirement, "distance", "boolean", "candidate is in the pronoun's requirement"),
    _spec(pronoun_relative_position, "distance", "ratio", "pronoun index / (context length - 1)"),
    _spec(candidate_relative_position, "distance", "ratio", "candidate start / (context length - 1)"),
    _spec(candidate_is_subject, "syntactic", "boolean", "candidate head is a (passive) subject"),
    _spec(candidate_is_direct_object, "syntactic", "boolean", "candidate head is a direct object"),
    _spec(candidate_in_prep_phrase, "syntactic", "boolean", "candidate head is a prepositional object"),
    _spec(pronoun_is_subject, "syntactic", "boolean", "pronoun is a (passive) subject"),
    _spec(pronoun_is_direct_object, "syntactic", "boolean", "pronoun is a direct object"),
    _spec(role_parallelism, "syntactic", "boolean", "pronoun and candidate fill the same grammatical role"),
    _spec(dependency_path_length, "syntactic", "count", "tree distance between heads; across sentences via the roots"),
    _spec(candidate_is_nested_np, "syntactic", "boolean", "candidate lies inside a larger chunk"),
    _spec(candidate_has_conjunction, "syntactic", "boolean", "candidate is a coordination"),
    _spec(candidate_definite, "syntactic", "boolean", "definite determiner, possessive, or genitive"),
    _spec(candidate_indefinite, "syntactic", "boolean", "indefinite determiner"),
    _spec(candidate_is_proper_noun, "syntactic", "boolean", "candidate head is a proper noun"),
    _spec(candidate_head_is_common_noun, "lexical", "boolean", "candidate head is a common noun"),
    _spec(candidate_length_tokens, "lexical", "count", "tokens in the candidate span", default=1.0),
    _spec(candidate_contains_digit, "lexical", "boolean", "candidate text contains a digit"),
    _spec(head_lemma_frequency_in_context, "lexical", "count", "occurrences of the head lemma in the context"),
    _spec(candidate_repeated_in_document, "lexical", "boolean", "head lemma heads another chunk in the document"),
    _spec(candidate_is_named_entity, "lexical", "boolean", "candidate head carries an entity type"),
    _spec(candidate_capitalized, "lexical", "boolean", "candidate head is capitalized"),
    _spec(candidate_is_gerund, "lexical", "boolean", "candidate head is a gerund"),
    _spec(head_context_similarity, "semantic", "ratio", "lemma-bag cosine between candidate and the pronoun's sentence"),
    _spec(governing_verb_compatibility, "semantic", "agreement", "head lemma is an argument of the pronoun's verb elsewhere in the document"),
    _spec(candidate_abstractness, "semantic", "boolean", "head noun is abstract (lexical class lookup)"),
    _spec(candidate_animate, "semantic", "agreement", "head noun is animate"),
    _spec(candidate_is_collective_noun, "semantic", "boolean", "head noun is collective"),
    _spec(candidate_count_total, "context", "count", "number of candidates for this pronoun"),
    _spec(pleonastic_pattern_score, "context", "boolean", "pronoun matches a non-referential it template"),
    _spec(candidate_followed_by_relative_clause, "context", "boolean", "a relative pronoun follows the candidate"),
    _spec(candidate_in_passive_construction, "context", "boolean", "passive subject or by-agent"),
    _spec(candidate_is_first_np_of_context, "context", "boolean", "candidate starts at the first chunk of the context"),
]
BUILTIN_EXTRACTORS: dict[str, FeatureSpec] = {s.name: s for s in _BUILTIN}


class FeatureRegistry:
    """Immutable ordered set of exactly 45 feature specs."""

    def __init__(self, entries):
        entries = tuple(entries)
        names = [e.name for e in entries]
        if len(entries) != LF_DIMENSION:
            raise RegistryError(f"registry must have {LF_DIMENSION} entries, got {len(entries)}")
        if len(set(names)) != len(names):
            raise RegistryError("feature names must be unique")
        for e in entries:
            if e.value_type not in VALUE_TYPES:
                raise RegistryError(f"{e.name}: unknown value type {e.value_type!r}")
        self._entries = entries
        self.names = tuple(names)

    @property
    def entries(self) -> tuple[FeatureSpec, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(json.dumps(self.manifest()["features"], sort_keys=True).encode()).hexdigest()[:16]

    def manifest(self) -> dict:
        return {
            "schema": REGISTRY_SCHEMA,
            "version": REGISTRY_VERSION,
            "features": [
                {"name": e.name, "category": e.category, "value_type": e.value_type, "default": e.default, "doc": e.doc}
                for e in self._entries
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.manifest(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_manifest(cls, manifest: dict) -> FeatureRegistry:
        if manifest.get("schema") != REGISTRY_SCHEMA:
            raise RegistryError(f"not a feature registry manifest: {manifest.get('schema')!r}")
        if manifest.get("version") != REGISTRY_VERSION:
            raise RegistryError(
                f"registry manifest version {manifest.get('version')} does not match this build ({REGISTRY_VERSION})"
            )
        entries = []
        for f in manifest["features"]:
            if f["name"] not in BUILTIN_EXTRACTORS:
                raise RegistryError(f"unknown feature {f['name']!r}")
            base = BUILTIN_EXTRACTORS[f["name"]]
            entries.append(
                FeatureSpec(base.name, f.get("category", base.category), f.get("value_type", base.value_type),
                            float(f.get("default", base.default)), base.extractor, f.get("doc", base.doc))
            )
        return cls(entries)

    @classmethod
    def from_json(cls, text: str) -> FeatureRegistry:
        return cls.from_manifest(json.loads(text))


DEFAULT_REGISTRY = FeatureRegistry(_BUILTIN)


def extract_lf(t: Triple, registry: FeatureRegistry = DEFAULT_REGISTRY, doc=None) -> FeatureVector:
    """Compute the language-feature vector of one triple.

    ``doc`` (the analyzed document) sharpens the two document-level lexical
    features; without it they fall back to the context.
    """
    view = _View(t, doc)
    values = []
    for spec in registry:
        try:
            x = float(spec.extractor(view))
        except (KeyError, IndexError, AttributeError, TypeError, ValueError, ZeroDivisionError):
            x = spec.default
        if not math.isfinite(x):
            x = spec.default
        values.append(x)
    return FeatureVector("LF", values, registry.names)
