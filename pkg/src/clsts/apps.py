"""Parallel-sentence mining and cross-lingual plagiarism fragment retrieval."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, EmptyInputError
from .evalkit import RankedCandidates
from .mapper import BilingualSpace
from .scorer import SimilarityMethod, score_bags
from .textprep import TokenBag, to_token_bag

__all__ = [
    "ComparablePair",
    "Fragment",
    "FragmentedDoc",
    "MiningConfig",
    "MiningResult",
    "Hit",
    "GoldCase",
    "mine_parallel",
    "segment_document",
    "rank_fragments",
    "char_recall_at_k",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComparablePair:
    """Two sentence-segmented documents on the same topic, optionally with gold links."""

    doc_s: tuple[str, ...]
    doc_t: tuple[str, ...]
    gold_alignments: frozenset[tuple[int, int]] | None = None

    def __post_init__(self) -> None:
        if self.gold_alignments is not None:
            for i, j in self.gold_alignments:
                if not (0 <= i < len(self.doc_s) and 0 <= j < len(self.doc_t)):
                    raise DomainError(f"gold alignment ({i}, {j}) out of range")


@dataclass(frozen=True)
class MiningConfig:
    tau: float | None = None
    method: SimilarityMethod = SimilarityMethod.OPT_ALIGN

    def __post_init__(self) -> None:
        if self.tau is not None and not (-1.0 <= self.tau <= 1.0):
            raise DomainError(f"tau {self.tau} outside [-1, 1]")
        object.__setattr__(self, "method", SimilarityMethod.parse(self.method))


@dataclass(frozen=True)
class MiningResult:
    """All scored sentence pairs (as ``(i, j, score, is_gold)``) plus those at or above tau."""

    candidates: RankedCandidates
    emitted: tuple[tuple[int, int, float], ...] | None


def _bag_score(bi, s: TokenBag, t: TokenBag, method) -> float:
    try:
        return score_bags(bi, s, t, method).value
    except EmptyInputError:
        return 0.0


def mine_parallel(bi: BilingualSpace, cp: ComparablePair, cfg: MiningConfig = MiningConfig()) -> MiningResult:
    """Score every sentence of ``doc_s`` against every sentence of ``doc_t``.

    Unscoreable pairs get 0. No sequence or cluster post-processing is done:
    with ``cfg.tau`` set, the emitted pairs are simply those scoring ``>= tau``.
    """
    if not cp.doc_s or not cp.doc_t:
        raise DomainError("both documents must contain at least one sentence")
    bags_s = [to_token_bag(x, bi.source) for x in cp.doc_s]
    bags_t = [to_token_bag(x, bi.target) for x in cp.doc_t]
    gold = cp.gold_alignments or frozenset()
    items = []
    for i, bs in enumerate(bags_s):
        for j, bt in enumerate(bags_t):
            items.append((i, j, _bag_score(bi, bs, bt, cfg.method), (i, j) in gold))
    ranked = RankedCandidates.from_unsorted(items)
    emitted = None
    if cfg.tau is not None:
        emitted = tuple((i, j, sc) for i, j, sc, _ in ranked.items if sc >= cfg.tau)
    return MiningResult(ranked, emitted)


@dataclass(frozen=True)
class Fragment:
    text: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class FragmentedDoc:
    doc_id: str
    fragments: tuple[Fragment, ...]


def _sentence_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    pos = 0
    for line in text.split("\n"):
        end = pos + len(line)
        stripped = line.rstrip("\r")
        if stripped.strip():
            spans.append((pos, pos + len(stripped)))
        pos = end + 1
    return spans


def segment_document(text: str, window: int = 5, stride: int = 1, doc_id: str = "") -> FragmentedDoc:
    """Slide a window of ``window`` sentences over newline-separated sentences.

    Windows start every ``stride`` sentences. If the last full window stops
    short of the final sentence, one shorter window covers the remainder; a
    document with fewer than ``window`` sentences yields a single fragment.
    Blank lines are not sentences. Offsets index into ``text``.
    """
    if window < 1 or stride < 1:
        raise DomainError("window and stride must be positive")
    spans = _sentence_spans(text)
    if not spans:
        raise DomainError("document has no sentences")
    n = len(spans)
    starts = list(range(0, max(n - window, 0) + 1, stride))
    ranges = [(a, min(a + window, n)) for a in starts]
    last_end = ranges[-1][1]
    next_start = starts[-1] + stride
    if last_end < n and next_start < n:
        ranges.append((next_start, n))
    frags = []
    for a, b in ranges:
        lo, hi = spans[a][0], spans[b - 1][1]
        frags.append(Fragment(text[lo:hi], lo, hi))
    return FragmentedDoc(doc_id, tuple(frags))


@dataclass(frozen=True)
class Hit:
    """One retrieved source fragment."""

    doc_id: str
    fragment_index: int
    score: float
    char_start: int
    char_end: int


def rank_fragments(
    bi: BilingualSpace,
    suspicious: FragmentedDoc,
    sources: Sequence[FragmentedDoc],
    method=SimilarityMethod.OPT_ALIGN,
    k: int = 1,
) -> dict[tuple[int, int], list[Hit]]:
    """Top-``k`` source fragments for every suspicious fragment.

    Keys are the suspicious fragments' ``(char_start, char_end)`` spans. Hits
    are sorted by score descending, then by ``(doc_id, fragment_index)``.
    Fragments of the suspicious document are read in the source language of
    ``bi``; source-collection fragments in its target language.
    """
    if k < 1:
        raise DomainError("k must be positive")
    method = SimilarityMethod.parse(method)
    pool = [
        (doc.doc_id, fi, frag, to_token_bag(frag.text, bi.target))
        for doc in sources
        for fi, frag in enumerate(doc.fragments)
    ]
    if not pool:
        raise DomainError("no source fragments to rank")
    pool.sort(key=lambda p: (p[0], p[1]))

    out: dict[tuple[int, int], list[Hit]] = {}
    for frag in suspicious.fragments:
        bag = to_token_bag(frag.text, bi.source)
        scores = np.array([_bag_score(bi, bag, tb, method) for _, _, _, tb in pool])
        # stable sort on -score keeps the (doc_id, index) order among ties
        order = np.argsort(-scores, kind="stable")[:k]
        out[(frag.char_start, frag.char_end)] = [
            Hit(pool[i][0], pool[i][1], float(scores[i]), pool[i][2].char_start, pool[i][2].char_end)
            for i in order
        ]
    return out


@dataclass(frozen=True)
class GoldCase:
    """A plagiarism case: suspicious span copied from a span of a source document."""

    susp_start: int
    susp_end: int
    source_doc_id: str
    src_start: int
    src_end: int


def char_recall_at_k(
    retrievals: dict[tuple[int, int], list[Hit]],
    gold: Iterable[GoldCase],
    k: int,
) -> float:
    """Fraction of plagiarized suspicious characters recalled within the top ``k``.

    A character of a gold case counts when some suspicious fragment covering
    it has, among its first ``k`` hits, a fragment of the case's source
    document whose span overlaps the case's source span.
    """
    gold = list(gold)
    if not gold:
        raise DomainError("gold set is empty")
    if k < 1:
        raise DomainError("k must be positive")
    total = 0
    recalled = 0
    for case in gold:
        length = case.susp_end - case.susp_start
        if length <= 0:
            raise DomainError(f"empty suspicious span in gold case {case}")
        covered = np.zeros(length, dtype=bool)
        for (f_start, f_end), hits in retrievals.items():
            lo, hi = max(f_start, case.susp_start), min(f_end, case.susp_end)
            if lo >= hi:
                continue
            if any(
                h.doc_id == case.source_doc_id and h.char_start < case.src_end and case.src_start < h.char_end
                for h in hits[:k]
            ):
                covered[lo - case.susp_start : hi - case.susp_start] = True
        total += length
        recalled += int(covered.sum())
    return recalled / total
