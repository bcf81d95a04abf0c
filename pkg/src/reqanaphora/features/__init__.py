from .embeddings import (
    ContextEncoder,
    HashingEncoder,
    TransformerEncoder,
    extract_fe,
    mark_context,
)
from .registry import (
    BUILTIN_EXTRACTORS,
    DEFAULT_REGISTRY,
    FE_DIMENSION,
    LF_DIMENSION,
    FeatureRegistry,
    FeatureSpec,
    FeatureVector,
    extract_lf,
)

__all__ = [
    "ContextEncoder",
    "HashingEncoder",
    "TransformerEncoder",
    "extract_fe",
    "mark_context",
    "BUILTIN_EXTRACTORS",
    "DEFAULT_REGISTRY",
    "FE_DIMENSION",
    "LF_DIMENSION",
    "FeatureRegistry",
    "FeatureSpec",
    "FeatureVector",
    "extract_lf",
]
