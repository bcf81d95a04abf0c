"""Detection of pronominal anaphoric ambiguity in natural-language requirements."""

__version__ = "0.1.0"
