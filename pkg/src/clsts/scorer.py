"""Cross-lingual word similarity and the three sentence-level similarity scores.

All scores work in the target space: source word vectors are multiplied by
the translation matrix, target word vectors are used as stored, and words
are compared by cosine.

* greedy association (``gr-assoc``): every word takes its best partner in
  the other text, averaged per direction, then the two directions averaged.
* optimal alignment (``opt-align``): one-to-one alignment maximising the
  summed similarity, normalised by both text lengths.
* aggregation (``aggreg``): cosine of the mean word vectors.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .assignment import solve_max_assignment
from .errors import DomainError, EmptyInputError
from .mapper import BilingualSpace
from .textprep import TokenBag, to_token_bag

__all__ = [
    "SimilarityMethod",
    "SentenceScore",
    "word_sim",
    "similarity_matrix",
    "greedy_association",
    "optimal_alignment",
    "aggregation",
    "score_bags",
    "score_pair",
    "score_pairs",
]

log = logging.getLogger(__name__)

PAD_SIMILARITY = -1.0


class SimilarityMethod(str, Enum):
    GR_ASSOC = "gr-assoc"
    OPT_ALIGN = "opt-align"
    AGGREG = "aggreg"

    @classmethod
    def parse(cls, value) -> SimilarityMethod:
        try:
            return cls(value)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown similarity method {value!r}; expected one of {choices}") from None


@dataclass(frozen=True)
class SentenceScore:
    value: float
    method: SimilarityMethod
    oov_source: int = 0
    oov_target: int = 0


def _unit_rows(x: np.ndarray, what: str) -> np.ndarray:
    norms = np.linalg.norm(x, axis=1)
    if np.any(norms == 0):
        raise DomainError(f"zero-norm {what} vector (degenerate embedding)")
    return x / norms[:, None]


def word_sim(bi: BilingualSpace, w_s: str, w_t: str) -> float | None:
    """Cosine between the mapped source word and the target word; None if either is OOV."""
    i, j = bi.source.index_of(w_s), bi.target.index_of(w_t)
    if i is None or j is None:
        return None
    sim = similarity_matrix(bi, [i], [j])
    return float(sim[0, 0])


def similarity_matrix(bi: BilingualSpace, source_rows: Sequence[int], target_rows: Sequence[int]) -> np.ndarray:
    """``|S| x |T|`` matrix of word cosines in the shared space.

    Cosines are computed once per distinct word pair, so each entry depends
    only on the two words and not on their positions in the texts.
    """
    src_u, src_inv = np.unique(np.asarray(source_rows, dtype=np.int64), return_inverse=True)
    tgt_u, tgt_inv = np.unique(np.asarray(target_rows, dtype=np.int64), return_inverse=True)
    src = _unit_rows(bi.mapped_rows(src_u), "mapped source")
    tgt = _unit_rows(bi.target.vectors[tgt_u], "target")
    sim = np.clip(src @ tgt.T, -1.0, 1.0)
    return sim[src_inv][:, tgt_inv]


def _require_nonempty(s: TokenBag, t: TokenBag) -> None:
    if len(s) == 0 or len(t) == 0:
        raise EmptyInputError("no in-vocabulary tokens to score", s.oov_count, t.oov_count)


def greedy_association(bi: BilingualSpace, s: TokenBag, t: TokenBag) -> SentenceScore:
    _require_nonempty(s, t)
    sim = similarity_matrix(bi, s.indices, t.indices)
    forward = math.fsum(sim.max(axis=1)) / sim.shape[0]
    backward = math.fsum(sim.max(axis=0)) / sim.shape[1]
    value = 0.5 * (forward + backward)
    return SentenceScore(float(value), SimilarityMethod.GR_ASSOC, s.oov_count, t.oov_count)


def optimal_alignment(bi: BilingualSpace, s: TokenBag, t: TokenBag) -> SentenceScore:
    """Normalised score of the best one-to-one word alignment.

    The shorter text is padded with dummy words at similarity -1 so the
    assignment problem is square; dummy pairs are left out of the aligned
    sum, which runs over the ``min(|S|, |T|)`` real pairs only.
    """
    _require_nonempty(s, t)
    sim = similarity_matrix(bi, s.indices, t.indices)
    n_s, n_t = sim.shape
    size = max(n_s, n_t)
    padded = np.full((size, size), PAD_SIMILARITY)
    padded[:n_s, :n_t] = sim
    result = solve_max_assignment(padded)
    align = math.fsum(sim[i, j] for i, j in enumerate(result.matching) if i < n_s and j < n_t)
    value = align * (n_s + n_t) / (2.0 * n_s * n_t)
    return SentenceScore(float(value), SimilarityMethod.OPT_ALIGN, s.oov_count, t.oov_count)


def aggregation(bi: BilingualSpace, s: TokenBag, t: TokenBag) -> SentenceScore:
    _require_nonempty(s, t)
    # mean of mapped vectors == mapped mean, by linearity
    mean_s = bi.matrix.m @ bi.source.vectors[np.asarray(s.indices)].mean(axis=0)
    mean_t = bi.target.vectors[np.asarray(t.indices)].mean(axis=0)
    ns, nt = np.linalg.norm(mean_s), np.linalg.norm(mean_t)
    if ns == 0 or nt == 0:
        raise DomainError("aggregate text vector has zero norm")
    value = float(np.clip(mean_s @ mean_t / (ns * nt), -1.0, 1.0))
    return SentenceScore(value, SimilarityMethod.AGGREG, s.oov_count, t.oov_count)


_SCORERS = {
    SimilarityMethod.GR_ASSOC: greedy_association,
    SimilarityMethod.OPT_ALIGN: optimal_alignment,
    SimilarityMethod.AGGREG: aggregation,
}


def score_bags(bi: BilingualSpace, s: TokenBag, t: TokenBag, method) -> SentenceScore:
    return _SCORERS[SimilarityMethod.parse(method)](bi, s, t)


def score_pair(bi: BilingualSpace, text_s: str, text_t: str, method) -> SentenceScore:
    """Tokenize both texts against their own spaces and score them.

    Raises:
        EmptyInputError: a text has no in-vocabulary tokens.
    """
    s = to_token_bag(text_s, bi.source)
    t = to_token_bag(text_t, bi.target)
    return score_bags(bi, s, t, method)


def score_pairs(
    bi: BilingualSpace,
    pairs: Iterable[tuple[str, str]],
    method,
    jobs: int = 1,
) -> list[SentenceScore | EmptyInputError]:
    """Score many text pairs, keeping input order.

    Unscoreable pairs yield their ``EmptyInputError`` in place of a score.
    ``jobs > 1`` spreads the work over a thread pool.
    """
    method = SimilarityMethod.parse(method)

    def one(pair):
        try:
            return score_pair(bi, pair[0], pair[1], method)
        except EmptyInputError as exc:
            return exc

    pairs = list(pairs)
    if jobs <= 1:
        return [one(p) for p in pairs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, pairs))
