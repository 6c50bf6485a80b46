"""Linear translation matrices between two embedding spaces.

A matrix ``M`` of shape ``(target.dim, source.dim)`` is fit to word
translation pairs so that ``M @ v_source(w_s)`` lands near ``v_target(w_t)``.
Both training methods minimise the squared residual sum
``sum_i ||M s_i - t_i||^2``.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .embeddings import EmbeddingSpace
from .errors import DomainError, EmptyInputError, FormatError, OptimizationDivergedError, ParseError

__all__ = [
    "TranslationPairSet",
    "TranslationMatrix",
    "BilingualSpace",
    "AdamOptions",
    "load_pairs",
    "train_matrix",
    "map_vector",
    "evaluate_matrix",
    "save_matrix",
    "load_matrix",
]

log = logging.getLogger(__name__)

METHODS = ("least-squares", "adam")
RIDGE = 1e-6


def load_pairs(path) -> list[tuple[str, str]]:
    """Read ``source<TAB>target`` lines; blank lines and ``#`` comments are skipped."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise ParseError(f"expected 'source<TAB>target', got {len(fields)} field(s)", lineno)
            pairs.append((fields[0], fields[1]))
    return pairs


@dataclass(frozen=True)
class TranslationPairSet:
    """Word pairs resolved against a source and a target space.

    Build with :meth:`resolve`; unresolvable and repeated pairs are dropped
    and counted in ``dropped``.
    """

    pairs: tuple[tuple[str, str], ...]
    source_rows: np.ndarray
    target_rows: np.ndarray
    dropped: int = 0

    @classmethod
    def resolve(
        cls,
        pairs: Iterable[tuple[str, str]],
        source: EmbeddingSpace,
        target: EmbeddingSpace,
    ) -> TranslationPairSet:
        kept: list[tuple[str, str]] = []
        src_rows: list[int] = []
        tgt_rows: list[int] = []
        seen: set[tuple[str, str]] = set()
        dropped = 0
        for ws, wt in pairs:
            i, j = source.index_of(ws), target.index_of(wt)
            if i is None or j is None or (ws, wt) in seen:
                dropped += 1
                continue
            seen.add((ws, wt))
            kept.append((ws, wt))
            src_rows.append(i)
            tgt_rows.append(j)
        return cls(
            tuple(kept),
            np.asarray(src_rows, dtype=np.int64),
            np.asarray(tgt_rows, dtype=np.int64),
            dropped,
        )

    @property
    def n(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def head(self, size: int) -> TranslationPairSet:
        """First ``size`` pairs, in order."""
        return TranslationPairSet(
            self.pairs[:size], self.source_rows[:size], self.target_rows[:size], self.dropped
        )


@dataclass(frozen=True, eq=False)
class TranslationMatrix:
    m: np.ndarray
    source_lang: str = ""
    target_lang: str = ""
    train_loss: float = 0.0
    method: str = "least-squares"

    def __post_init__(self) -> None:
        m = np.array(self.m, dtype=np.float64)
        if m.ndim != 2:
            raise DomainError(f"translation matrix must be 2-D, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("translation matrix has non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.m.shape


@dataclass(frozen=True, eq=False)
class BilingualSpace:
    """Source space, target space and the matrix mapping the first into the second."""

    source: EmbeddingSpace
    target: EmbeddingSpace
    matrix: TranslationMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DomainError(
                f"matrix shape {self.matrix.shape} does not match "
                f"(target.dim, source.dim) = ({self.target.dim}, {self.source.dim})"
            )

    @classmethod
    def identity(cls, space: EmbeddingSpace) -> BilingualSpace:
        """Monolingual setup: the same space on both sides, identity map."""
        tm = TranslationMatrix(np.eye(space.dim), space.lang, space.lang, 0.0, "identity")
        return cls(space, space, tm)

    def mapped_rows(self, rows) -> np.ndarray:
        """Source vectors at ``rows`` projected into the target space."""
        return self.source.vectors[np.asarray(rows, dtype=np.int64)] @ self.matrix.m.T


@dataclass(frozen=True)
class AdamOptions:
    """Optimizer settings for ``train_matrix(method="adam")``.

    The step size decays linearly from ``lr`` to zero over the run unless
    ``schedule="constant"``.
    """

    lr: float = 0.1
    batch_size: int = 64
    epochs: int = 200
    seed: int = 42
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    schedule: str = "linear"


def _mean_sq_residual(m: np.ndarray, s: np.ndarray, t: np.ndarray) -> float:
    r = s @ m.T - t
    return float(np.mean(np.sum(r * r, axis=1)))


def _fit_least_squares(s: np.ndarray, t: np.ndarray, ridge: float = RIDGE) -> np.ndarray:
    gram = s.T @ s + ridge * np.eye(s.shape[1])
    return np.linalg.solve(gram, s.T @ t).T


def _fit_adam(s: np.ndarray, t: np.ndarray, opts: AdamOptions) -> np.ndarray:
    if opts.batch_size < 1 or opts.epochs < 1 or opts.lr <= 0:
        raise DomainError("adam needs batch_size >= 1, epochs >= 1 and lr > 0")
    if opts.schedule not in ("linear", "constant"):
        raise DomainError(f"unknown lr schedule {opts.schedule!r}")
    rng = np.random.default_rng(opts.seed)
    n = s.shape[0]
    m = np.zeros((t.shape[1], s.shape[1]))
    total_steps = opts.epochs * math.ceil(n / opts.batch_size)
    with np.errstate(over="ignore", invalid="ignore"):
        _adam_epochs(s, t, m, opts, rng, total_steps)
    if not np.all(np.isfinite(m)):
        raise OptimizationDivergedError(f"non-finite matrix after {total_steps} adam steps")
    return m


def _adam_epochs(s, t, m, opts, rng, total_steps) -> None:
    """Run all epochs, updating ``m`` in place."""
    n = s.shape[0]
    mom = np.zeros_like(m)
    vel = np.zeros_like(m)
    step = 0
    for _ in range(opts.epochs):
        order = rng.permutation(n)
        for start in range(0, n, opts.batch_size):
            idx = order[start : start + opts.batch_size]
            sb, tb = s[idx], t[idx]
            resid = sb @ m.T - tb
            grad = (2.0 / len(idx)) * resid.T @ sb
            step += 1
            mom = opts.beta1 * mom + (1 - opts.beta1) * grad
            vel = opts.beta2 * vel + (1 - opts.beta2) * grad * grad
            mhat = mom / (1 - opts.beta1**step)
            vhat = vel / (1 - opts.beta2**step)
            lr = opts.lr
            if opts.schedule == "linear":
                lr *= 1.0 - (step - 1) / total_steps
            m -= lr * mhat / (np.sqrt(vhat) + opts.eps)
        if not np.all(np.isfinite(m)):
            return


def train_matrix(
    src: EmbeddingSpace,
    tgt: EmbeddingSpace,
    pairs: TranslationPairSet,
    method: str = "least-squares",
    opts: AdamOptions | None = None,
) -> TranslationMatrix:
    """Fit the translation matrix from ``src`` into ``tgt`` on ``pairs``.

    ``least-squares`` solves the normal equations with a 1e-6 ridge term;
    ``adam`` runs seeded minibatch Adam from a zero matrix. The returned
    ``train_loss`` is the mean squared residual per training pair.

    Raises:
        EmptyInputError: no usable pairs.
        OptimizationDivergedError: Adam produced a non-finite loss.
    """
    if method not in METHODS:
        raise DomainError(f"unknown training method {method!r}; expected one of {METHODS}")
    if pairs.n < 1:
        raise EmptyInputError(f"no usable translation pairs ({pairs.dropped} dropped at lookup)")
    s = src.vectors[pairs.source_rows]
    t = tgt.vectors[pairs.target_rows]

    if method == "least-squares":
        if pairs.n < src.dim:
            warnings.warn(
                f"{pairs.n} pairs for a {src.dim}-dim source space: system is underdetermined, "
                "ridge term picks the minimum-norm solution",
                stacklevel=2,
            )
        m = _fit_least_squares(s, t)
    else:
        m = _fit_adam(s, t, opts or AdamOptions())

    loss = _mean_sq_residual(m, s, t)
    if not math.isfinite(loss):
        raise OptimizationDivergedError("training loss is not finite")
    log.info("trained %s matrix on %d pairs, loss %.6g", method, pairs.n, loss)
    return TranslationMatrix(m, src.lang, tgt.lang, loss, method)


def map_vector(bi: BilingualSpace, v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (bi.source.dim,):
        raise DomainError(f"expected a vector of {bi.source.dim} entries, got shape {v.shape}")
    return bi.matrix.m @ v


def evaluate_matrix(
    bi: BilingualSpace,
    test_pairs: TranslationPairSet,
    ranks: Sequence[int] = (1, 5),
) -> dict[int, float]:
    """Precision@k of retrieving the gold target word among the whole target vocabulary.

    A gold word at cosine ``c`` has rank ``1 + #{rows with cosine > c} +
    #{earlier rows with cosine == c}``, i.e. ties go to the lower row index.
    """
    ranks = list(ranks)
    if not ranks or any(k < 1 for k in ranks):
        raise DomainError("ranks must be a nonempty list of positive integers")
    if test_pairs.n == 0:
        raise DomainError("empty test set")

    tgt = bi.target
    with np.errstate(divide="ignore", invalid="ignore"):
        unit_tgt = np.where(tgt.norms[:, None] > 0, tgt.vectors / tgt.norms[:, None], 0.0)
    mapped = bi.mapped_rows(test_pairs.source_rows)
    norms = np.linalg.norm(mapped, axis=1)
    if np.any(norms == 0):
        raise DomainError("a mapped test vector has zero norm")
    mapped /= norms[:, None]

    rank_of_gold = np.empty(test_pairs.n, dtype=np.int64)
    chunk = 256
    for lo in range(0, test_pairs.n, chunk):
        cos = mapped[lo : lo + chunk] @ unit_tgt.T
        gold = test_pairs.target_rows[lo : lo + chunk]
        gold_cos = cos[np.arange(len(gold)), gold][:, None]
        above = np.sum(cos > gold_cos, axis=1)
        cols = np.arange(len(tgt))[None, :]
        tied_before = np.sum((cos == gold_cos) & (cols < gold[:, None]), axis=1)
        rank_of_gold[lo : lo + chunk] = 1 + above + tied_before

    return {k: float(np.mean(rank_of_gold <= k)) for k in ranks}


def save_matrix(tm: TranslationMatrix, path) -> None:
    """Write ``"d_t d_s source_lang target_lang method"`` then one row per line.

    Empty language tags are written as ``-``. Entries use 17 significant
    digits.
    """
    d_t, d_s = tm.shape
    with open(Path(path), "w", encoding="utf-8") as fh:
        fh.write(f"{d_t} {d_s} {tm.source_lang or '-'} {tm.target_lang or '-'} {tm.method}\n")
        for row in tm.m:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_matrix(path) -> TranslationMatrix:
    with open(Path(path), encoding="utf-8") as fh:
        lines = [ln.split() for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise FormatError(f"{path}: empty matrix file")
    header = lines[0]
    if len(header) != 5:
        raise FormatError(f"{path}: header must be 'd_t d_s source_lang target_lang method'")
    try:
        d_t, d_s = int(header[0]), int(header[1])
    except ValueError:
        raise FormatError(f"{path}: non-integer dimensions in header") from None
    rows = lines[1:]
    if len(rows) != d_t:
        raise FormatError(f"{path}: header declares {d_t} rows, found {len(rows)}")
    try:
        m = np.array([[float(x) for x in r] for r in rows if len(r) == d_s])
    except ValueError:
        raise FormatError(f"{path}: non-numeric matrix entry") from None
    if m.shape != (d_t, d_s):
        raise FormatError(f"{path}: every row must hold {d_s} values")
    src_lang = "" if header[2] == "-" else header[2]
    tgt_lang = "" if header[3] == "-" else header[3]
    return TranslationMatrix(m, src_lang, tgt_lang, 0.0, header[4])
