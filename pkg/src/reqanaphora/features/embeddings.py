"""Feature embeddings (FEs): 768-d contextual vectors per triple.

The context is rendered as words with the candidate wrapped in ``[C]`` /
``[/C]`` and the pronoun in ``[P]`` / ``[/P]``. The encoder returns the mean
of the final-layer vectors of the pronoun and the candidate head.
"""

from __future__ import annotations

import hashlib
import threading
from functools import lru_cache
from typing import Protocol, Sequence

import numpy as np

from ..errors import EncoderError
from ..nlpcore.triples import Triple
from .registry import FE_DIMENSION, FeatureVector

CAND_OPEN, CAND_CLOSE = "[C]", "[/C]"
PRON_OPEN, PRON_CLOSE = "[P]", "[/P]"


class ContextEncoder(Protocol):
    identity: str
    dimension: int

    def encode(self, words: Sequence[str], targets: Sequence[int]) -> np.ndarray:
        """Mean final-layer vector over the words at ``targets``."""
        ...


def mark_context(t: Triple) -> tuple[list[str], int, int]:
    """Marked word sequence plus the word indices of the pronoun and candidate head."""
    ctx, c = t.context, t.candidate
    words: list[str] = []
    p_idx = h_idx = -1
    for i, tok in enumerate(ctx.tokens):
        if i == c.ctx_start:
            words.append(CAND_OPEN)
        if i == ctx.pronoun_position:
            words.append(PRON_OPEN)
        if i == c.head_token:
            h_idx = len(words)
        if i == ctx.pronoun_position:
            p_idx = len(words)
        words.append(tok.surface)
        if i == ctx.pronoun_position:
            words.append(PRON_CLOSE)
        if i == c.ctx_end:
            words.append(CAND_CLOSE)
    return words, p_idx, h_idx


@lru_cache(maxsize=65536)
def _word_vector(word: str, dim: int) -> np.ndarray:
    seed = int.from_bytes(hashlib.blake2b(word.encode("utf-8"), digest_size=8).digest(), "little")
    v = np.random.default_rng(seed).standard_normal(dim) / np.sqrt(dim)
    v.setflags(write=False)
    return v


class HashingEncoder:
    """Deterministic stand-in for a transformer encoder.

    Each word gets a seeded Gaussian vector; a token's "contextual" vector
    adds the mean of its neighbours within ``window`` and a marker offset
    when it sits inside the candidate brackets. Pure and thread-safe.
    """

    identity = "hashing-encoder/1"

    def __init__(self, dimension: int = FE_DIMENSION, window: int = 3):
        self.dimension = dimension
        self.window = window

    def _contextual(self, words: Sequence[str], i: int, in_cand: bool) -> np.ndarray:
        lo, hi = max(0, i - self.window), min(len(words), i + self.window + 1)
        neigh = [_word_vector(words[j].lower(), self.dimension) for j in range(lo, hi) if j != i]
        h = _word_vector(words[i].lower(), self.dimension).copy()
        if neigh:
            h += 0.5 * np.mean(neigh, axis=0)
        if in_cand:
            h += 0.25 * _word_vector(CAND_OPEN, self.dimension)
        return h

    def encode(self, words: Sequence[str], targets: Sequence[int]) -> np.ndarray:
        if not targets or any(not (0 <= t < len(words)) for t in targets):
            raise EncoderError(f"target indices {list(targets)} outside 0..{len(words) - 1}")
        inside = np.zeros(len(words), dtype=bool)
        depth = 0
        for i, w in enumerate(words):
            if w == CAND_OPEN:
                depth += 1
            elif w == CAND_CLOSE:
                depth -= 1
            inside[i] = depth > 0
        return np.mean([self._contextual(words, t, bool(inside[t])) for t in targets], axis=0)


class TransformerEncoder:
    """Adapter for a locally stored BERT-family encoder (no network access).

    Inference is serialized with a lock, so one instance may be shared
    between worker threads.
    """

    def __init__(self, model_path: str, max_length: int = 512, device: str = "cpu"):
        try:
            import torch
            from transformers import AutoModel, AutoTokenizer
        except ImportError as exc:  # pragma: no cover - depends on the environment
            raise EncoderError(f"transformers/torch not available: {exc}") from exc
        try:
            self._tok = AutoTokenizer.from_pretrained(model_path, local_files_only=True)
            self._model = AutoModel.from_pretrained(model_path, local_files_only=True).to(device).eval()
        except Exception as exc:
            raise EncoderError(f"cannot load encoder from {model_path}: {exc}") from exc
        self._torch = torch
        self._device = device
        self._lock = threading.Lock()
        self.max_length = max_length
        self.dimension = int(self._model.config.hidden_size)
        if self.dimension != FE_DIMENSION:
            raise EncoderError(f"encoder hidden size {self.dimension} != {FE_DIMENSION}")
        self.identity = f"transformer:{getattr(self._model.config, '_name_or_path', model_path)}"

    def encode(self, words: Sequence[str], targets: Sequence[int]) -> np.ndarray:
        enc = self._tok(list(words), is_split_into_words=True, truncation=True, max_length=self.max_length,
                        return_tensors="pt")
        word_ids = enc.word_ids(0)
        first_piece = {}
        for pos, w in enumerate(word_ids):
            if w is not None and w not in first_piece:
                first_piece[w] = pos
        missing = [t for t in targets if t not in first_piece]
        if missing:
            raise EncoderError(f"target words {missing} were truncated away")
        with self._lock, self._torch.no_grad():
            out = self._model(**{k: v.to(self._device) for k, v in enc.items()})
        hidden = out.last_hidden_state[0].cpu().numpy().astype(np.float64)
        return hidden[[first_piece[t] for t in targets]].mean(axis=0)


def extract_fe(t: Triple, encoder: ContextEncoder) -> FeatureVector:
    words, p_idx, h_idx = mark_context(t)
    try:
        vec = np.asarray(encoder.encode(words, [p_idx, h_idx]), dtype=np.float64)
    except EncoderError:
        raise
    except Exception as exc:
        raise EncoderError(f"{type(exc).__name__}: {exc}") from exc
    if vec.shape != (FE_DIMENSION,):
        raise EncoderError(f"encoder returned shape {vec.shape}, expected ({FE_DIMENSION},)")
    if not np.all(np.isfinite(vec)):
        raise EncoderError("encoder returned non-finite values")
    return FeatureVector("FE", vec)
