"""Monolingual word-embedding tables loaded from word2vec/GloVe text files."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import DomainError, FormatError, ParseError

__all__ = [
    "EmbeddingSpace",
    "load_embeddings",
    "save_embeddings",
    "lookup",
    "nearest_neighbors",
]

log = logging.getLogger(__name__)

FORMATS = ("auto", "word2vec-text", "glove-text")


@dataclass(frozen=True, eq=False)
class EmbeddingSpace:
    """Immutable vocabulary -> vector table for one language.

    Words are stored exactly as given; ``lookup`` falls back to the lowercased
    form. Vectors are float64 rows and are read-only.
    """

    lang: str
    words: tuple[str, ...]
    vectors: np.ndarray
    vocab: dict[str, int] = field(init=False, repr=False)
    norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        vectors = np.array(self.vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[1] < 1:
            raise FormatError(f"vectors must be a 2-D array with dim >= 1, got {vectors.shape}")
        if vectors.shape[0] != len(self.words):
            raise FormatError(f"{len(self.words)} words but {vectors.shape[0]} vector rows")
        if not np.all(np.isfinite(vectors)):
            raise FormatError("embedding vectors must be finite")
        vocab: dict[str, int] = {}
        for i, w in enumerate(self.words):
            if w in vocab:
                raise FormatError(f"duplicate word {w!r}")
            vocab[w] = i
        vectors.setflags(write=False)
        norms = np.linalg.norm(vectors, axis=1)
        norms.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "vocab", vocab)
        object.__setattr__(self, "norms", norms)

    @classmethod
    def from_pairs(cls, items: Iterable[tuple[str, Iterable[float]]], lang: str = "") -> EmbeddingSpace:
        """Build a space from ``(word, vector)`` pairs; first occurrence of a word wins."""
        words: list[str] = []
        rows: list[np.ndarray] = []
        seen: set[str] = set()
        for word, vec in items:
            if word in seen:
                continue
            seen.add(word)
            words.append(word)
            rows.append(np.asarray(vec, dtype=np.float64))
        if not rows:
            raise FormatError("cannot build an empty embedding space")
        return cls(lang, tuple(words), np.vstack(rows))

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return self.index_of(word) is not None

    def index_of(self, word: str) -> int | None:
        """Row index of ``word``, retrying with its lowercased form."""
        idx = self.vocab.get(word)
        if idx is None:
            idx = self.vocab.get(word.lower())
        return idx


def lookup(space: EmbeddingSpace, word: str) -> np.ndarray | None:
    """Vector for ``word`` (with lowercase fallback), or None if absent."""
    idx = space.index_of(word)
    return None if idx is None else space.vectors[idx]


def nearest_neighbors(space: EmbeddingSpace, query, k: int) -> list[tuple[str, float]]:
    """Top-``k`` words by cosine to ``query``; ties go to the lower row index."""
    q = np.asarray(query, dtype=np.float64)
    if q.shape != (space.dim,):
        raise DomainError(f"query must have {space.dim} entries, got shape {q.shape}")
    if k < 1:
        raise DomainError("k must be positive")
    qn = np.linalg.norm(q)
    if qn == 0:
        raise DomainError("query vector has zero norm")
    cos = cosine_to_rows(space, q / qn)
    order = np.argsort(-cos, kind="stable")[:k]
    return [(space.words[i], float(cos[i])) for i in order]


def cosine_to_rows(space: EmbeddingSpace, unit_query: np.ndarray) -> np.ndarray:
    """Cosine of a unit-length query against every row; zero rows score 0."""
    dots = space.vectors @ unit_query
    with np.errstate(divide="ignore", invalid="ignore"):
        cos = np.where(space.norms > 0, dots / space.norms, 0.0)
    return np.clip(cos, -1.0, 1.0)


def _parse_row(parts: list[str], lineno: int) -> np.ndarray:
    if len(parts) < 2:
        raise ParseError(f"expected a word followed by floats, got {len(parts)} field(s)", lineno)
    try:
        vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
    except ValueError as exc:
        raise ParseError(f"non-numeric value ({exc})", lineno) from None
    if not np.all(np.isfinite(vec)):
        raise ParseError("non-finite value", lineno)
    return vec


def _looks_like_header(parts: list[str]) -> bool:
    return len(parts) == 2 and all(p.isdigit() for p in parts)


def load_embeddings(
    path,
    format: str = "auto",
    max_vocab: int | None = None,
    lang: str = "",
) -> EmbeddingSpace:
    """Load a word2vec-text or GloVe-text embedding file.

    Args:
        path: file to read (UTF-8).
        format: ``"auto"``, ``"word2vec-text"`` (``"<count> <dim>"`` header) or
            ``"glove-text"`` (no header).
        max_vocab: keep only the first ``max_vocab`` distinct words in file order.
        lang: language tag stored on the space.

    Raises:
        ParseError: malformed row (reports the 1-based line number).
        FormatError: empty file, bad header or inconsistent dimensionality.
    """
    if format not in FORMATS:
        raise DomainError(f"unknown embedding format {format!r}; expected one of {FORMATS}")
    if max_vocab is not None and max_vocab < 1:
        raise DomainError("max_vocab must be positive")

    words: list[str] = []
    rows: list[np.ndarray] = []
    seen: set[str] = set()
    dim: int | None = None
    declared_count: int | None = None

    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").rstrip("\r").split(" ")
            parts = [p for p in parts if p != ""]
            if lineno == 1:
                if not parts:
                    raise FormatError(f"{path}: first line is empty")
                header = _looks_like_header(parts)
                if format == "word2vec-text" and not header:
                    raise FormatError(f"{path}: missing '<count> <dim>' header")
                if header and format != "glove-text":
                    declared_count, dim = int(parts[0]), int(parts[1])
                    if dim < 1:
                        raise FormatError(f"{path}: header declares dim {dim}")
                    continue
            if not parts:
                continue
            if max_vocab is not None and len(words) >= max_vocab:
                break
            vec = _parse_row(parts, lineno)
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise FormatError(f"{path}: line {lineno}: expected {dim} values, got {vec.shape[0]}")
            word = parts[0]
            if word in seen:
                continue
            seen.add(word)
            words.append(word)
            rows.append(vec)

    if not rows:
        raise FormatError(f"{path}: no embedding rows found")
    if declared_count is not None and max_vocab is None and declared_count != len(rows):
        log.warning("%s: header declares %d words, read %d distinct", path, declared_count, len(rows))
    return EmbeddingSpace(lang, tuple(words), np.vstack(rows))


def save_embeddings(space: EmbeddingSpace, path) -> None:
    """Write ``space`` as word2vec-text.

    Components use the shortest round-tripping decimal form, so loading the
    file back reproduces every entry bit-identically.
    """
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(space)} {space.dim}\n")
        for word, row in zip(space.words, space.vectors):
            fh.write(word + " " + " ".join(repr(float(x)) for x in row) + "\n")
