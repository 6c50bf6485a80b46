"""STS datasets and evaluation metrics (Pearson, AP, recall at precision)."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, EmptyInputError, ParseError
from .mapper import BilingualSpace
from .scorer import SimilarityMethod, score_pairs

__all__ = [
    "StsDataset",
    "RankedCandidates",
    "load_sts_dataset",
    "pearson",
    "average_precision",
    "recall_at_precision",
    "evaluate_sts",
]

log = logging.getLogger(__name__)

GOLD_MIN, GOLD_MAX = 0.0, 5.0


@dataclass(frozen=True)
class StsDataset:
    pairs: tuple[tuple[str, str, float], ...]
    name: str = ""

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class RankedCandidates:
    """Scored candidate pairs in nonincreasing score order, each with a gold label.

    Use :meth:`from_unsorted` to build one; equal scores keep their input order.
    """

    items: tuple[tuple[object, object, float, bool], ...]

    @classmethod
    def from_unsorted(cls, items: Iterable[tuple[object, object, float, bool]]) -> RankedCandidates:
        return cls(tuple(sorted(items, key=lambda it: -it[2])))

    @property
    def labels(self) -> list[bool]:
        return [bool(it[3]) for it in self.items]

    def __len__(self) -> int:
        return len(self.items)


def load_sts_dataset(path, name: str | None = None) -> StsDataset:
    """Read ``sent_a<TAB>sent_b<TAB>gold`` lines; gold must lie in [0, 5]."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(f"expected 3 tab-separated fields, got {len(fields)}", lineno)
            try:
                gold = float(fields[2])
            except ValueError:
                raise ParseError(f"gold score {fields[2]!r} is not a number", lineno) from None
            if not (GOLD_MIN <= gold <= GOLD_MAX):
                raise ParseError(f"gold score {gold} outside [0, 5]", lineno)
            pairs.append((fields[0], fields[1], gold))
    return StsDataset(tuple(pairs), name if name is not None else str(path))


def _centered(x: np.ndarray, what: str) -> np.ndarray:
    c = x - x.mean()
    # rounding in a mean of identical values leaves ~1e-16 residue; treat as constant
    if np.max(np.abs(c)) <= 1e-12 * max(1.0, float(np.max(np.abs(x)))):
        raise DomainError(f"{what} has zero variance")
    return c


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient.

    Raises:
        DomainError: lengths differ, fewer than two points, or a constant input.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError(f"inputs must be 1-D of equal length, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise DomainError("pearson needs at least two points")
    cx, cy = _centered(x, "x"), _centered(y, "y")
    r = float(cx @ cy / math.sqrt(float(cx @ cx) * float(cy @ cy)))
    return max(-1.0, min(1.0, r))


def _labels(rc) -> list[bool]:
    labels = rc.labels if isinstance(rc, RankedCandidates) else [bool(b) for b in rc]
    if not any(labels):
        raise DomainError("ranking has no positive labels")
    return labels


# beyond this many positives the exact rational sum gets slow; fsum is within an ulp
_EXACT_AP_LIMIT = 20_000


def average_precision(rc: RankedCandidates | Sequence[bool]) -> float:
    """Mean of precision@i over the ranks i that hold a positive.

    Summed as exact rationals and rounded once, so results such as 5/6 come
    out as the nearest double.
    """
    labels = _labels(rc)
    ranks = [i for i, lab in enumerate(labels, start=1) if lab]
    if len(ranks) > _EXACT_AP_LIMIT:
        return math.fsum(h / r for h, r in enumerate(ranks, start=1)) / len(ranks)
    total = sum((Fraction(h, r) for h, r in enumerate(ranks, start=1)), Fraction(0))
    return float(total / len(ranks))


def recall_at_precision(rc: RankedCandidates | Sequence[bool], target_precision: float) -> float:
    """Largest recall over ranking prefixes whose precision is at least the target; 0 if none."""
    if not (0.0 < target_precision <= 1.0):
        raise DomainError("target_precision must lie in (0, 1]")
    labels = _labels(rc)
    positives = sum(labels)
    best = 0.0
    hits = 0
    for i, lab in enumerate(labels, start=1):
        hits += lab
        if hits / i >= target_precision:
            best = max(best, hits / positives)
    return best


def evaluate_sts(
    bi: BilingualSpace,
    ds: StsDataset,
    method=SimilarityMethod.OPT_ALIGN,
    jobs: int = 1,
) -> float:
    """Pearson correlation between predicted similarities and gold scores.

    Pairs with no in-vocabulary tokens on one side are scored 0 and logged.
    """
    if len(ds) == 0:
        raise DomainError(f"dataset {ds.name!r} is empty")
    results = score_pairs(bi, ((a, b) for a, b, _ in ds.pairs), method, jobs=jobs)
    preds = []
    unscoreable = 0
    for k, res in enumerate(results):
        if isinstance(res, EmptyInputError):
            unscoreable += 1
            log.warning("%s pair %d unscoreable, scored 0: %s", ds.name, k, res)
            preds.append(0.0)
        else:
            preds.append(res.value)
    if unscoreable == len(results):
        raise DomainError(f"all {unscoreable} pairs of {ds.name!r} are unscoreable")
    golds = [g for _, _, g in ds.pairs]
    try:
        return pearson(preds, golds)
    except DomainError as exc:
        raise DomainError(
            f"cannot correlate on {ds.name!r}: {exc} "
            f"(predictions min={min(preds):.6f} max={max(preds):.6f}, {unscoreable} unscoreable)"
        ) from None
