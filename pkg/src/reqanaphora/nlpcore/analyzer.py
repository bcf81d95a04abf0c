"""Token-level linguistic analysis.

:class:`RuleAnalyzer` is a dependency-free, deterministic English pipeline
good enough for requirements prose. Any object with an ``analyze_text`` method
returning :class:`TokenAnnotations` and a ``backend_id`` attribute can
replace it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Protocol, Sequence

from ..errors import AnalysisError
from . import lexicon as lx

RULE_BACKEND_ID = "rule-analyzer/1.0"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos_tag: str  # universal POS
    tag: str  # Penn-style fine tag
    dep_head: int | None
    dep_relation: str
    char_start: int
    char_end: int
    attrs: dict[str, Any] = field(default_factory=dict, compare=True, hash=False)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "lemma": self.lemma,
            "pos": self.pos_tag,
            "tag": self.tag,
            "head": self.dep_head,
            "dep": self.dep_relation,
            "start": self.char_start,
            "end": self.char_end,
            "attrs": dict(sorted(self.attrs.items())),
        }

    @classmethod
    def from_dict(cls, d: dict) -> Token:
        return cls(
            surface=d["surface"],
            lemma=d["lemma"],
            pos_tag=d["pos"],
            tag=d["tag"],
            dep_head=d["head"],
            dep_relation=d["dep"],
            char_start=d["start"],
            char_end=d["end"],
            attrs=dict(d.get("attrs", {})),
        )


@dataclass(frozen=True)
class NPSpan:
    """A noun-phrase chunk; ``end`` is inclusive.

    ``kind`` is ``base`` for a maximal simple NP (including ``X of Y``
    attachment), ``nested`` for an NP embedded in an ``of`` phrase, and
    ``coord`` for a coordination of NPs.
    """

    start: int
    end: int
    head: int
    text: str
    kind: str = "base"

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "head": self.head, "text": self.text, "kind": self.kind}

    @classmethod
    def from_dict(cls, d: dict) -> NPSpan:
        return cls(d["start"], d["end"], d["head"], d["text"], d.get("kind", "base"))


@dataclass(frozen=True)
class TokenAnnotations:
    tokens: tuple[Token, ...]
    sentence_boundaries: tuple[tuple[int, int], ...]  # inclusive (start, end)
    np_chunks: tuple[NPSpan, ...]
    backend: str = RULE_BACKEND_ID

    def __len__(self) -> int:
        return len(self.tokens)

    def sentence_of(self, index: int) -> int:
        for i, (s, e) in enumerate(self.sentence_boundaries):
            if s <= index <= e:
                return i
        raise IndexError(index)

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "tokens": [t.to_dict() for t in self.tokens],
            "sentences": [list(b) for b in self.sentence_boundaries],
            "chunks": [c.to_dict() for c in self.np_chunks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> TokenAnnotations:
        return cls(
            tokens=tuple(Token.from_dict(t) for t in d["tokens"]),
            sentence_boundaries=tuple(tuple(b) for b in d["sentences"]),
            np_chunks=tuple(NPSpan.from_dict(c) for c in d["chunks"]),
            backend=d.get("backend", "unknown"),
        )


class LinguisticAnalyzer(Protocol):
    backend_id: str

    def analyze_text(self, text: str) -> TokenAnnotations: ...


def analyze(requirement, analyzer: LinguisticAnalyzer) -> TokenAnnotations:
    """Annotate one requirement, attaching its id to any failure."""
    if not requirement.text.strip():
        raise AnalysisError("empty requirement text", requirement.id)
    try:
        return analyzer.analyze_text(requirement.text)
    except AnalysisError as exc:
        if exc.req_id is None:
            exc.req_id = requirement.id
            exc.args = (f"[{requirement.id}] {exc.args[0]}",)
        raise
    except Exception as exc:  # backend bug or resource failure
        raise AnalysisError(f"{type(exc).__name__}: {exc}", requirement.id) from exc


def analyze_document(doc, analyzer: LinguisticAnalyzer):
    from dataclasses import replace

    reqs = tuple(replace(r, annotations=analyze(r, analyzer)) for r in doc.requirements)
    return replace(doc, requirements=reqs)


# ---------------------------------------------------------------------------
# rule-based backend

_ABBREV = r"e\.g\.|i\.e\.|etc\.|vs\.|cf\.|approx\.|dr\.|mr\.|mrs\.|ms\.|fig\."
_TOKEN_RE = re.compile(
    rf"(?i:{_ABBREV})|\w+(?=n't\b)|n't\b|'s\b|\d+(?:[.,]\d+)+|\w+(?:[-/]\w+)*|[^\w\s]"
)
_NOUNISH = {"NOUN", "NV", "NVS", "PROPN", "HYPH", "ING"}
_VERB_TAGS = {"VB", "VBZ", "VBD", "VBN", "VBP", "VBG"}
_ALWAYS_NOUN_ING = {
    "string", "thing", "ring", "king", "spring", "wing", "nothing", "something",
    "anything", "everything", "ceiling", "building", "meeting", "setting",
    "heading", "morning", "evening", "warning", "training", "rating", "ping",
}


@dataclass
class _Tok:
    text: str
    low: str
    start: int
    end: int
    lex: str = ""
    pos: str = "X"
    tag: str = "XX"
    lemma: str = ""
    head: int | None = None
    dep: str = "dep"
    attrs: dict = field(default_factory=dict)


def _verb_stem_candidates(w: str, suffix: str) -> list[str]:
    if suffix == "s":
        if w.endswith("ies") and len(w) > 4:
            return [w[:-3] + "y"]
        if w.endswith("es"):
            return [w[:-2], w[:-1]]
        return [w[:-1]]
    if suffix == "ed":
        out = [w[:-2], w[:-1]]
        if w.endswith("ied"):
            out.insert(0, w[:-3] + "y")
        if len(w) > 4 and w[-3] == w[-4]:
            out.append(w[:-3])
        return out
    if suffix == "ing":
        out = [w[:-3], w[:-3] + "e"]
        if len(w) > 5 and w[-4] == w[-5]:
            out.append(w[:-4])
        return out
    return [w]


def _known_verb(w: str, suffix: str) -> str | None:
    for stem in _verb_stem_candidates(w, suffix):
        if stem in lx.VERBS:
            return stem
    return None


def noun_lemma(w: str) -> tuple[str, str]:
    """(lemma, number) for a lower-cased noun."""
    if w in lx.IRREGULAR_NOUNS:
        lemma, num = lx.IRREGULAR_NOUNS[w]
        return lemma, num or "Sing"
    if len(w) > 3 and w.endswith("s") and not w.endswith(("ss", "us", "is", "'s")):
        if w.endswith("ies") and len(w) > 4:
            return w[:-3] + "y", "Plur"
        if w.endswith(("sses", "xes", "ches", "shes", "zes")):
            return w[:-2], "Plur"
        return w[:-1], "Plur"
    return w, "Sing"


class RuleAnalyzer:
    """Deterministic English analyzer: tokenizer, sentence splitter, POS tagger,
    lemmatizer, NP chunker, heuristic dependency parser and a lexical
    semantic tagger. Stateless, so one instance may be shared freely."""

    backend_id = RULE_BACKEND_ID

    def analyze_text(self, text: str) -> TokenAnnotations:
        toks = self.tokenize(text)
        if not toks:
            raise AnalysisError("no tokens in text")
        sents = self.split_sentences(toks)
        for s, e in sents:
            self.tag(toks, s, e)
        self.lemmatize(toks)
        chunks, coords = self.chunk(toks, text, sents)
        for s, e in sents:
            self.parse(toks, s, e, chunks, coords)
        self.semantics(toks)
        tokens = tuple(
            Token(t.text, t.lemma, t.pos, t.tag, t.head, t.dep, t.start, t.end, t.attrs) for t in toks
        )
        return TokenAnnotations(tokens, tuple(sents), tuple(chunks), self.backend_id)

    # (i) tokenizer
    def tokenize(self, text: str) -> list[_Tok]:
        return [_Tok(m.group(), m.group().lower(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]

    # (ii) sentence splitter
    def split_sentences(self, toks: list[_Tok]) -> list[tuple[int, int]]:
        bounds, start = [], 0
        for i, t in enumerate(toks):
            if t.text in {".", "!", "?"} and i + 1 < len(toks):
                nxt = toks[i + 1].text
                if nxt[:1].isupper() or nxt[:1].isdigit() or nxt in {'"', "'", "("}:
                    bounds.append((start, i))
                    start = i + 1
        bounds.append((start, len(toks) - 1))
        return bounds

    # (iii) part-of-speech tagger
    def _lexical(self, t: _Tok, sent_initial: bool) -> str:
        w = t.low
        if not re.search(r"\w", w):
            return "PUNCT"
        if re.fullmatch(r"\d+(?:[.,]\d+)*", w) or w in lx.NUMBER_WORDS:
            return "NUM"
        if w in ("n't", "not"):
            return "NEG"
        if w == "'s":
            return "POSS"
        if w in lx.DEMONSTRATIVES:
            return "DEM"
        if w == "her":
            return "HER"
        if w in lx.PRONOUNS:
            return "PRON"
        if w in lx.WH_PRONOUNS:
            return "WH"
        if w in lx.DETERMINERS:
            return "DET"
        if w in lx.MODALS:
            return "MD"
        if w in lx.BE_FORMS:
            return "BE"
        if w in lx.HAVE_FORMS:
            return "HAVE"
        if w in lx.DO_FORMS:
            return "DO"
        if w == "to":
            return "TO"
        if w in lx.COORD_CONJ or w in ("and/or", "&"):
            return "CCONJ"
        if w in lx.SUBORD_CONJ and w not in ("once", "so"):
            return "SCONJ"
        if w in lx.PREPOSITIONS or w == "as":
            return "ADP"
        if w in lx.ADVERBS:
            return "ADV"
        if w in lx.LY_NON_ADVERBS:
            return {"VERB": "NV", "NOUN": "NOUN", "ADJ": "ADJ", "ADV": "ADV", "PROPN": "PROPN"}[
                lx.LY_NON_ADVERBS[w]
            ]
        if w.endswith("ly") and len(w) > 4:
            return "ADV"
        if w in lx.IRREGULAR_VERBS:
            return "IRR"
        if w in lx.IRREGULAR_NOUNS:
            return "NOUN"
        if not sent_initial and t.text[:1].isupper() and w not in lx.ADJECTIVES:
            return "PROPN"
        if len(t.text) >= 2 and t.text.isupper() and t.text.isalpha():
            return "PROPN"
        if "-" in w or "/" in w:
            return "HYPH"
        if w in lx.VERBS:
            return "NV"
        if w in lx.ADJECTIVES:
            return "ADJ"
        if w.endswith("s") and _known_verb(w, "s") and not w.endswith("ss"):
            return "NVS"
        if w.endswith("ed") and len(w) > 4:
            return "ED"
        if w.endswith("ing") and len(w) > 5 and w not in _ALWAYS_NOUN_ING:
            return "ING"
        if w.endswith(lx.ADJ_SUFFIXES) and len(w) > 5 and w not in lx.ADJ_SUFFIX_EXCEPTIONS:
            if not w.endswith(lx.NOUN_SUFFIXES):
                return "ADJ"
        return "NOUN"

    def tag(self, toks: list[_Tok], s: int, e: int) -> None:
        for i in range(s, e + 1):
            toks[i].lex = self._lexical(toks[i], i == s)

        def lex_at(j):
            return toks[j].lex if s <= j <= e else "END"

        def pos_at(j):
            return toks[j].pos if s <= j <= e else "START"

        def tag_at(j):
            return toks[j].tag if s <= j <= e else "START"

        def verb_in_clause(i):
            # has a finite/main verb been seen since the last clause break?
            for j in range(i - 1, s - 1, -1):
                if toks[j].pos in ("SCONJ", "PUNCT", "CCONJ") or toks[j].tag in ("WDT", "WP"):
                    return False
                if toks[j].pos in ("VERB", "AUX"):
                    return True
            return False

        def modal_or_to_before(i, reach=4):
            for j in range(i - 1, max(s, i - reach) - 1, -1):
                if toks[j].tag in ("MD", "TO") or toks[j].low in ("did", "does", "do"):
                    return True
                if toks[j].pos not in ("ADV", "PART", "AUX"):
                    return False
            return False

        def set_(t, pos, tag):
            t.pos, t.tag = pos, tag

        for i in range(s, e + 1):
            t = toks[i]
            lex, nxt, prev_pos, prev_tag = t.lex, lex_at(i + 1), pos_at(i - 1), tag_at(i - 1)
            w = t.low
            nounish_next = nxt in _NOUNISH or nxt in ("ADJ", "ED", "NUM")
            if lex == "PUNCT":
                set_(t, "PUNCT", t.text if t.text in ".,:;" else "PUNCT")
            elif lex == "NUM":
                set_(t, "NUM", "CD")
            elif lex == "NEG":
                set_(t, "PART", "RB")
            elif lex == "POSS":
                set_(t, "PART", "POS")
            elif lex == "DEM":
                after_clause_taker = i > s and (
                    prev_pos in ("VERB", "ADJ") or toks[i - 1].low == "so"
                )
                if w == "that" and after_clause_taker:
                    set_(t, "SCONJ", "IN")
                elif nounish_next:
                    set_(t, "DET", "DT")
                elif w == "that" and prev_pos in ("NOUN", "PROPN"):
                    set_(t, "PRON", "WDT")
                elif w == "that" and prev_pos == "AUX":
                    set_(t, "SCONJ", "IN")
                else:
                    set_(t, "PRON", "DT")
            elif lex == "HER":
                set_(t, "PRON", "PRP$" if nounish_next else "PRP")
            elif lex == "PRON":
                cls = lx.PRONOUNS[w][0]
                set_(t, "PRON", "PRP$" if (cls == "possessive" and w in lx.POSSESSIVE_DETERMINERS) else "PRP")
            elif lex == "WH":
                if w == "which" and nxt in ("NOUN", "NVS", "NV"):
                    set_(t, "DET", "WDT")
                else:
                    set_(t, "PRON", "WP$" if w == "whose" else ("WDT" if w in ("which", "whichever") else "WP"))
            elif lex == "DET":
                set_(t, "DET", "DT")
            elif lex == "MD":
                set_(t, "AUX", "MD")
            elif lex == "BE":
                set_(t, "AUX", lx.IRREGULAR_VERBS[w][1])
            elif lex in ("HAVE", "DO"):
                j = i + 1
                while j <= e and toks[j].lex in ("ADV", "NEG"):
                    j += 1
                follow = lex_at(j)
                aux = follow in ("ED", "IRR", "BE") if lex == "HAVE" else follow in ("NV", "IRR", "BE", "HAVE") or nxt == "NEG"
                set_(t, "AUX" if aux else "VERB", lx.IRREGULAR_VERBS[w][1])
            elif lex == "TO":
                if nxt in ("NV", "BE", "HAVE", "DO") or (nxt == "IRR" and lx.IRREGULAR_VERBS[toks[i + 1].low][1] == "VB"):
                    set_(t, "PART", "TO")
                else:
                    set_(t, "ADP", "IN")
            elif lex == "CCONJ":
                set_(t, "CCONJ", "CC")
            elif lex == "SCONJ":
                set_(t, "SCONJ", "IN")
            elif lex == "ADP":
                clause_next = False
                if w in ("before", "after", "until", "since", "once", "as"):
                    if toks[i + 1].low in ("it", "they", "he", "she", "we", "i", "you") if i + 1 <= e else False:
                        clause_next = True
                    else:
                        for j in range(i + 1, min(e, i + 6) + 1):
                            if toks[j].lex in ("MD", "BE", "HAVE"):
                                clause_next = True
                                break
                            if toks[j].lex in ("ADP", "PUNCT", "TO", "CCONJ"):
                                break
                set_(t, "SCONJ", "IN") if clause_next else set_(t, "ADP", "IN")
            elif lex == "ADV":
                set_(t, "ADV", "RB")
            elif lex == "ADJ":
                set_(t, "ADJ", "JJ")
            elif lex == "PROPN":
                set_(t, "PROPN", "NNPS" if w.endswith("s") and len(w) > 3 and not t.text.isupper() else "NNP")
            elif lex == "IRR":
                lemma, ftag = lx.IRREGULAR_VERBS[w]
                if ftag == "VB" and prev_pos in ("DET", "ADJ") or prev_tag == "PRP$":
                    set_(t, "NOUN", "NN")
                elif ftag == "VBN" and prev_pos not in ("AUX",) and nounish_next:
                    set_(t, "ADJ", "JJ")
                else:
                    set_(t, "VERB", ftag)
            elif lex == "HYPH":
                set_(t, "ADJ", "JJ") if nounish_next else set_(t, "NOUN", "NN")
            elif lex == "NV":
                if modal_or_to_before(i):
                    set_(t, "VERB", "VB")
                elif prev_pos in ("DET", "ADJ", "NUM", "ADP") or prev_tag in ("PRP$", "POS"):
                    set_(t, "NOUN", "NN")
                elif prev_pos == "CCONJ":
                    left_verb = any(toks[j].tag == "VB" for j in range(s, i))
                    obj_next = nxt in ("DET", "PRON", "DEM", "HER", "ADJ", "HYPH", "NUM")
                    set_(t, "VERB", "VB") if (left_verb and obj_next) else set_(t, "NOUN", "NN")
                elif (prev_tag in ("NNS", "NNPS") or toks[i - 1].low in ("they", "we", "you", "i")) and i > s and not verb_in_clause(i) and nounish_next | (nxt in ("DET", "PRON", "DEM", "HER")):
                    set_(t, "VERB", "VBP")
                elif i == s and nxt in ("DET", "PRON", "DEM", "HER"):
                    set_(t, "VERB", "VB")
                else:
                    set_(t, "NOUN", "NN")
            elif lex == "NVS":
                if prev_pos in ("DET", "ADJ", "NUM", "ADP") or prev_tag in ("PRP$", "POS"):
                    set_(t, "NOUN", "NNS")
                elif (
                    i > s
                    and (prev_tag in ("NN", "NNP") or toks[i - 1].low in ("it", "he", "she", "this", "that", "which", "who"))
                    and not verb_in_clause(i)
                    and nxt not in ("MD", "BE", "HAVE", "DO")
                ):
                    set_(t, "VERB", "VBZ")
                else:
                    set_(t, "NOUN", "NNS")
            elif lex == "ED":
                if prev_pos == "AUX" and (toks[i - 1].lemma in ("be", "have") or toks[i - 1].low in lx.BE_FORMS | lx.HAVE_FORMS):
                    set_(t, "VERB", "VBN")
                elif prev_pos == "ADV" and i - 2 >= s and toks[i - 2].low in lx.BE_FORMS | lx.HAVE_FORMS:
                    set_(t, "VERB", "VBN")
                elif nounish_next and nxt != "ED":
                    set_(t, "ADJ", "JJ")
                elif prev_pos in ("NOUN", "PROPN", "PRON") and not verb_in_clause(i):
                    set_(t, "VERB", "VBD")
                elif w in lx.ADJECTIVES:
                    set_(t, "ADJ", "JJ")
                else:
                    set_(t, "VERB", "VBN")
            elif lex == "ING":
                if prev_pos == "AUX":
                    set_(t, "VERB", "VBG")
                elif prev_pos in ("DET", "ADJ") or prev_tag == "PRP$":
                    set_(t, "NOUN", "NN")
                    t.attrs["gerund"] = True
                elif nounish_next and prev_pos != "ADP" and nxt != "ING":
                    set_(t, "ADJ", "JJ")
                else:
                    set_(t, "VERB", "VBG")
            else:  # NOUN
                _, num = noun_lemma(w)
                set_(t, "NOUN", "NNS" if num == "Plur" else "NN")

    # (iv) lemmatizer
    def lemmatize(self, toks: list[_Tok]) -> None:
        for t in toks:
            w = t.low
            if t.pos in ("NOUN", "PROPN") and t.tag in ("NNS", "NNPS", "NN"):
                t.lemma = noun_lemma(w)[0] if t.pos == "NOUN" else t.text
                if t.pos == "NOUN" and t.attrs.get("gerund"):
                    t.lemma = w
            elif t.pos in ("VERB", "AUX", "ADJ") and w in lx.IRREGULAR_VERBS:
                t.lemma = lx.IRREGULAR_VERBS[w][0]
            elif t.pos == "VERB" or (t.pos == "ADJ" and t.lex in ("ED", "ING")):
                suffix = "ed" if w.endswith("ed") else "ing" if w.endswith("ing") else "s" if t.tag == "VBZ" else ""
                t.lemma = (_known_verb(w, suffix) if suffix else None) or (
                    _verb_stem_candidates(w, suffix)[0] if suffix and t.pos == "VERB" else w
                )
            elif t.pos == "PROPN":
                t.lemma = t.text
            else:
                t.lemma = w

    # (v) constituency: NP chunking
    def chunk(self, toks: list[_Tok], text: str, sents) -> tuple[list[NPSpan], list[list[tuple[int, int, int]]]]:
        def span_text(a, b):
            return text[toks[a].start : toks[b].end]

        chunks: dict[tuple[int, int], NPSpan] = {}
        coords: list[list[tuple[int, int, int]]] = []
        for s, e in sents:
            bases: list[tuple[int, int, int]] = []
            i = s
            while i <= e:
                t = toks[i]
                starter = t.pos in ("DET", "ADJ", "NOUN", "PROPN", "NUM") or t.tag == "PRP$"
                if t.pos == "DET" and t.tag == "WDT":
                    starter = True
                if not starter:
                    i += 1
                    continue
                j = i + 1
                while j <= e and (toks[j].pos in ("ADJ", "NOUN", "PROPN", "NUM") or toks[j].tag == "POS"):
                    j += 1
                last_noun = None
                for k in range(i, j):
                    if toks[k].pos in ("NOUN", "PROPN"):
                        last_noun = k
                if last_noun is None:
                    i = j
                    continue
                bases.append((i, last_noun, last_noun))
                i = last_noun + 1

            # attach "of" complements: A of B of C -> [A..C], nested [B..C], [C]
            maximal: list[tuple[int, int, int]] = []
            k = 0
            while k < len(bases):
                chain = [bases[k]]
                while (
                    k + 1 < len(bases)
                    and bases[k + 1][0] == chain[-1][1] + 2
                    and toks[chain[-1][1] + 1].low == "of"
                ):
                    k += 1
                    chain.append(bases[k])
                end = chain[-1][1]
                maximal.append((chain[0][0], end, chain[0][2]))
                chunks[(chain[0][0], end)] = NPSpan(chain[0][0], end, chain[0][2], span_text(chain[0][0], end), "base")
                for inner in chain[1:]:
                    chunks[(inner[0], end)] = NPSpan(inner[0], end, inner[2], span_text(inner[0], end), "nested")
                k += 1

            # coordination: X (, Y)* ,? and|or Z
            k = 0
            while k < len(maximal):
                group = [maximal[k]]
                m = k
                while m + 1 < len(maximal):
                    gap = list(range(group[-1][1] + 1, maximal[m + 1][0]))
                    words = [toks[g].low for g in gap]
                    if words in ([","], ["and"], ["or"], [",", "and"], [",", "or"], ["and/or"], [",", "and/or"]):
                        group.append(maximal[m + 1])
                        m += 1
                        if words[-1] != ",":
                            break
                    else:
                        break
                last_gap = [toks[g].low for g in range(group[-2][1] + 1, group[-1][0])] if len(group) > 1 else []
                clause_subject = (
                    len(group) > 1
                    and group[-1][1] + 1 <= e
                    and toks[group[-1][1] + 1].pos in ("AUX", "VERB")
                    and any(toks[x].pos == "VERB" or toks[x].tag == "MD" for x in range(s, group[0][0]))
                )
                if len(group) > 1 and last_gap and last_gap[-1] in ("and", "or", "and/or") and not clause_subject:
                    a, b = group[0][0], group[-1][1]
                    chunks[(a, b)] = NPSpan(a, b, group[0][2], span_text(a, b), "coord")
                    coords.append(group)
                    k = m + 1
                else:
                    k += 1
        ordered = sorted(chunks.values(), key=lambda c: (c.start, -c.end))
        return ordered, coords

    # (vi) dependency parser (heuristic)
    def parse(self, toks, s, e, chunks, coords) -> None:
        idx = range(s, e + 1)
        heads: dict[int, int | None] = {}
        deps: dict[int, str] = {}

        base_chunks = [c for c in chunks if s <= c.start and c.end <= e and c.kind == "base"]
        simple_spans = []  # base NPs before "of"-merging, recomputed from the maximal ones
        for c in base_chunks:
            a = c.start
            for k in range(c.start, c.end + 1):
                if toks[k].low == "of" and toks[k].pos == "ADP":
                    last = max((x for x in range(a, k) if toks[x].pos in ("NOUN", "PROPN")), default=k - 1)
                    simple_spans.append((a, k - 1, last))
                    a = k + 1
            last = max((x for x in range(a, c.end + 1) if toks[x].pos in ("NOUN", "PROPN")), default=c.end)
            simple_spans.append((a, c.end, last))
        in_np: dict[int, int] = {}
        for a, b, h in simple_spans:
            for k in range(a, b + 1):
                in_np[k] = h

        # main verbs and their auxiliary runs
        main_verbs: list[int] = []
        aux_of: dict[int, list[int]] = {}
        for i in idx:
            t = toks[i]
            is_main = t.pos == "VERB" or (
                t.pos == "AUX" and t.tag != "MD" and t.lemma in ("be", "have", "do")
                and not any(toks[j].pos == "VERB" for j in self._aux_run_after(toks, i, e))
            )
            if is_main:
                main_verbs.append(i)
                run, j = [], i - 1
                while j >= s and (toks[j].pos in ("AUX", "ADV") or toks[j].tag in ("RB", "TO")) and j not in in_np:
                    if toks[j].pos == "ADV" and j - 1 >= s and toks[j - 1].pos not in ("AUX", "PART"):
                        break
                    run.append(j)
                    j -= 1
                aux_of[i] = sorted(run)
        group_start = {v: (aux_of[v][0] if aux_of[v] else v) for v in main_verbs}

        def marker_before(v):
            """Clause marker (SCONJ / relative pronoun) between the previous verb and v."""
            prev = max((u for u in main_verbs if u < v), default=s - 1)
            for j in range(group_start[v] - 1, prev, -1):
                if toks[j].pos == "SCONJ" or toks[j].tag in ("WDT", "WP", "WP$"):
                    return j
            return None

        markers = {v: marker_before(v) for v in main_verbs}
        root = next((v for v in main_verbs if markers[v] is None), None)
        if root is None:
            root = main_verbs[0] if main_verbs else (simple_spans[0][2] if simple_spans else s)
        heads[root], deps[root] = None, "ROOT"

        for v in main_verbs:
            if v == root:
                continue
            m = markers[v]
            gs = group_start[v]
            prev_verbs = [u for u in main_verbs if u < v]
            if m is not None and toks[m].tag in ("WDT", "WP", "WP$"):
                noun = max((in_np[x] for x in range(s, m) if x in in_np), default=root)
                heads[v], deps[v] = noun, "relcl"
                heads[m], deps[m] = v, "nsubj" if m == gs - 1 else "dobj"
            elif m is not None:
                heads[v], deps[v] = root, "ccomp" if toks[m].low == "that" else "advcl"
                heads[m], deps[m] = v, "mark"
            elif gs > s and toks[gs - 1].pos == "CCONJ" and prev_verbs:
                heads[v], deps[v] = prev_verbs[-1], "conj"
                heads[gs - 1], deps[gs - 1] = prev_verbs[-1], "cc"
            elif any(toks[a].tag == "TO" for a in aux_of[v]) and prev_verbs:
                h = prev_verbs[-1]
                if gs - 1 >= s and toks[gs - 1].pos == "ADJ":
                    h = gs - 1
                heads[v], deps[v] = h, "xcomp"
            elif prev_verbs:
                heads[v], deps[v] = prev_verbs[-1], "conj" if v > root else "dep"
            else:
                heads[v], deps[v] = root, "dep"
            if heads[v] == v:
                heads[v], deps[v] = root, "dep"

        for v in main_verbs:
            passive = any(toks[a].lemma == "be" for a in aux_of[v]) and toks[v].tag == "VBN"
            for a in aux_of[v]:
                if a in heads:
                    continue
                ta = toks[a]
                if ta.tag == "RB" and ta.pos == "PART":
                    rel = "neg"
                elif ta.pos == "ADV":
                    rel = "advmod"
                elif passive and ta.lemma == "be":
                    rel = "auxpass"
                else:
                    rel = "aux"
                heads[a], deps[a] = v, rel
            toks[v].attrs["passive"] = passive

        # coordinated nominals
        conj_first: dict[int, int] = {}
        for group in coords:
            if not (s <= group[0][0] <= e):
                continue
            first = group[0][2]
            for a, b, h in group[1:]:
                conj_first[h] = first
                heads[h], deps[h] = first, "conj"
            for g in range(group[0][1] + 1, group[-1][0]):
                if g not in in_np and g not in heads:
                    heads[g], deps[g] = first, "cc" if toks[g].pos == "CCONJ" else "punct"

        nominals = sorted(
            {h for _, _, h in simple_spans}
            | {i for i in idx if toks[i].pos == "PRON" and toks[i].tag in ("PRP", "DT")}
        )
        nominal_span = {h: (a, b) for a, b, h in simple_spans}
        for i in idx:
            if toks[i].pos == "PRON" and toks[i].tag in ("PRP", "DT"):
                nominal_span[i] = (i, i)
        filled_obj: set[int] = set()
        for n in nominals:
            if n in heads:
                continue
            a, b = nominal_span[n]
            before = a - 1
            if before >= s and toks[before].pos == "ADP":
                heads[n], deps[n] = before, "pobj"
                continue
            nxt_v = [v for v in main_verbs if group_start[v] > b]
            prv_v = [v for v in main_verbs if v < a]
            if nxt_v:
                v = nxt_v[0]
                between = [x for x in range(b + 1, group_start[v]) if toks[x].pos not in ("ADV",)]
                if not between:
                    heads[n] = v
                    deps[n] = "nsubjpass" if toks[v].attrs.get("passive") else "nsubj"
                    continue
            if prv_v:
                v = prv_v[-1]
                rel = "attr" if toks[v].pos == "AUX" else "dobj"
                if v in filled_obj:
                    rel = "dep"
                heads[n], deps[n] = v, rel
                filled_obj.add(v)
                continue
            cand = [v for v in nxt_v if markers[v] is None]
            if cand:
                v = cand[0]
                heads[n], deps[n] = v, "nsubjpass" if toks[v].attrs.get("passive") else "nsubj"
                continue
            if n != root:
                heads[n], deps[n] = root, "dep"

        # chunk-internal attachments
        for a, b, h in simple_spans:
            for k in range(a, b + 1):
                if k == h or k in heads:
                    continue
                tk = toks[k]
                if tk.tag == "POS":
                    rel, hh = "case", (k - 1 if k - 1 >= a else h)
                elif k + 1 <= b and toks[k + 1].tag == "POS":
                    rel, hh = "poss", h
                elif tk.pos == "DET":
                    rel, hh = "det", h
                elif tk.tag == "PRP$":
                    rel, hh = "poss", h
                elif tk.pos == "ADJ":
                    rel, hh = "amod", h
                elif tk.pos == "NUM":
                    rel, hh = "nummod", h
                else:
                    rel, hh = "compound", h
                heads[k], deps[k] = hh, rel

        for i in idx:
            if i in heads:
                continue
            t = toks[i]
            if t.pos == "ADP":
                if i - 1 in in_np:
                    heads[i], deps[i] = in_np[i - 1], "prep"
                else:
                    pv = [v for v in main_verbs if v < i]
                    heads[i], deps[i] = (pv[-1] if pv else root), "prep"
            elif t.pos == "PUNCT":
                heads[i], deps[i] = root, "punct"
            elif t.pos == "ADV":
                nv = [v for v in main_verbs if v > i]
                pv = [v for v in main_verbs if v < i]
                heads[i], deps[i] = (nv[0] if nv else pv[-1] if pv else root), "advmod"
            elif t.pos == "ADJ":
                pv = [v for v in main_verbs if v < i]
                if pv and toks[pv[-1]].pos == "AUX":
                    heads[i], deps[i] = pv[-1], "acomp"
                else:
                    heads[i], deps[i] = root, "dep"
            elif t.pos == "CCONJ":
                heads[i], deps[i] = root, "cc"
            elif t.pos == "SCONJ":
                nv = [v for v in main_verbs if v > i]
                heads[i], deps[i] = (nv[0] if nv else root), "mark"
            elif t.tag == "PRP$" and i + 1 <= e:
                heads[i], deps[i] = root, "poss"
            else:
                heads[i], deps[i] = root, "dep"

        heads[root], deps[root] = None, "ROOT"
        for i in idx:
            if heads.get(i) == i:
                heads[i], deps[i] = root, "dep"
        # break any cycles by re-hanging the offending token on the root
        for i in idx:
            seen, cur = set(), i
            while cur is not None and cur not in seen:
                seen.add(cur)
                cur = heads.get(cur)
            if cur is not None:
                heads[cur], deps[cur] = root, "dep"
                if cur == root:
                    heads[root], deps[root] = None, "ROOT"
        for i in idx:
            toks[i].head, toks[i].dep = heads[i], deps[i]

    @staticmethod
    def _aux_run_after(toks, i, e):
        j = i + 1
        while j <= e and (toks[j].pos in ("AUX", "ADV") or toks[j].tag == "RB"):
            j += 1
        return [j] if j <= e else []

    # (vii) semantic tagging
    def semantics(self, toks: list[_Tok]) -> None:
        for t in toks:
            w = t.low
            if t.pos == "PRON" and w in lx.PRONOUNS and t.tag in ("PRP", "PRP$", "DT"):
                cls, person, number, gender = lx.PRONOUNS[w]
                if w == "her" and t.tag == "PRP$":
                    cls = "possessive"
                t.attrs.update(pronoun_class=cls, person=person)
                if number:
                    t.attrs["number"] = number
                if gender:
                    t.attrs["gender"] = gender
                if w in ("he", "him", "his", "himself", "she", "her", "hers", "herself"):
                    t.attrs["animacy"] = "animate"
                elif w in ("it", "its", "itself"):
                    t.attrs["animacy"] = "inanimate"
            elif t.pos == "NOUN":
                lemma = t.lemma
                t.attrs["number"] = "Plur" if t.tag == "NNS" else ("Plur" if lx.IRREGULAR_NOUNS.get(w, (0, ""))[1] == "Plur" else "Sing")
                if lemma in lx.ANIMATE_NOUNS:
                    t.attrs["animacy"] = "animate"
                    if lemma in lx.MASCULINE_NOUNS:
                        t.attrs["gender"] = "masc"
                    elif lemma in lx.FEMININE_NOUNS:
                        t.attrs["gender"] = "fem"
                else:
                    t.attrs["animacy"] = "inanimate"
                    t.attrs["gender"] = "neut"
                if lemma in lx.COLLECTIVE_NOUNS:
                    t.attrs["collective"] = True
                if lemma in lx.ABSTRACT_NOUNS or lemma.endswith(lx.ABSTRACT_SUFFIXES):
                    t.attrs["abstract"] = True
            elif t.pos == "PROPN":
                t.attrs["number"] = "Plur" if t.tag == "NNPS" else "Sing"
                t.attrs["ent_type"] = "ORG" if t.text.isupper() else "MISC"


def annotations_for(text: str, analyzer: LinguisticAnalyzer | None = None) -> TokenAnnotations:
    return (analyzer or RuleAnalyzer()).analyze_text(text)


def surfaces(ann: TokenAnnotations) -> Sequence[str]:
    return [t.surface for t in ann.tokens]
