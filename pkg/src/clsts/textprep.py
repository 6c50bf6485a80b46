"""Whitespace tokenization and vocabulary filtering for short texts."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .embeddings import EmbeddingSpace

__all__ = ["TokenBag", "tokenize", "to_token_bag"]


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Split on unicode whitespace and strip punctuation from both ends of each piece.

    Internal punctuation ("don't", "e-mail") is kept. Case is preserved.
    """
    tokens = []
    for piece in text.split():
        start, end = 0, len(piece)
        while start < end and _is_punct(piece[start]):
            start += 1
        while end > start and _is_punct(piece[end - 1]):
            end -= 1
        if start < end:
            tokens.append(piece[start:end])
    return tokens


@dataclass(frozen=True)
class TokenBag:
    """In-vocabulary tokens of a text, in order, with repeats kept.

    ``indices`` are the matching row indices in the space the bag was built
    against; ``oov_count`` counts tokens that did not resolve.
    """

    tokens: tuple[str, ...]
    indices: tuple[int, ...]
    oov_count: int
    source_text: str

    def __len__(self) -> int:
        return len(self.tokens)


def to_token_bag(text: str, space: EmbeddingSpace) -> TokenBag:
    tokens: list[str] = []
    indices: list[int] = []
    raw = tokenize(text)
    for tok in raw:
        idx = space.index_of(tok)
        if idx is not None:
            tokens.append(tok)
            indices.append(idx)
    return TokenBag(tuple(tokens), tuple(indices), len(raw) - len(tokens), text)
