from .analyzer import (
    RULE_BACKEND_ID,
    LinguisticAnalyzer,
    NPSpan,
    RuleAnalyzer,
    Token,
    TokenAnnotations,
    analyze,
    analyze_document,
)
from .triples import (
    DEFAULT_PRONOUN_CLASSES,
    PRONOUN_CLASSES,
    CandidateAntecedent,
    Context,
    ContextChunk,
    PronounOccurrence,
    Triple,
    build_context,
    extract_candidates,
    find_pronouns,
    is_pleonastic,
    make_triple_id,
    make_triples,
    split_triple_id,
    triples_for_document,
)

__all__ = [
    "RULE_BACKEND_ID",
    "LinguisticAnalyzer",
    "NPSpan",
    "RuleAnalyzer",
    "Token",
    "TokenAnnotations",
    "analyze",
    "analyze_document",
    "DEFAULT_PRONOUN_CLASSES",
    "PRONOUN_CLASSES",
    "CandidateAntecedent",
    "Context",
    "ContextChunk",
    "PronounOccurrence",
    "Triple",
    "build_context",
    "extract_candidates",
    "find_pronouns",
    "is_pleonastic",
    "make_triple_id",
    "make_triples",
    "split_triple_id",
    "triples_for_document",
]
