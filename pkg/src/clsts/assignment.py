"""Exact maximum-weight assignment for square matrices.

The solver is the O(n^3) shortest-augmenting-path form of the Kuhn-Munkres
(Hungarian) method with row/column potentials. Maximization is turned into
minimization by negating and shifting the weights. Among all optimal
matchings the lexicographically smallest one is returned, which is found by
a second pass over the edges that are tight under the optimal potentials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["AssignmentResult", "solve_max_assignment"]


@dataclass(frozen=True)
class AssignmentResult:
    """Optimal matching: ``matching[i]`` is the column assigned to row ``i``."""

    matching: tuple[int, ...]
    total: float


def _check_weights(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DomainError(f"weights must be a square matrix, got shape {w.shape}")
    if w.shape[0] < 1:
        raise DomainError("weights must be at least 1x1")
    if not np.all(np.isfinite(w)):
        raise DomainError("weights must be finite")
    return w


def _hungarian_min(cost: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Minimum-cost perfect matching with potentials.

    Returns ``(row_to_col, u, v)`` with ``cost[i, j] - u[i] - v[j] >= 0`` for
    all cells (up to rounding) and equality on the matched cells.
    """
    n = cost.shape[0]
    # 1-based bookkeeping; index 0 is the virtual root column.
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=np.int64)  # owner[j]: row matched to column j
    way = np.zeros(n + 1, dtype=np.int64)
    a = np.zeros((n + 1, n + 1))
    a[1:, 1:] = cost

    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used
            free[0] = False
            cur = a[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            cand = np.where(free, minv, np.inf)
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1

    row_to_col = np.empty(n, dtype=np.int64)
    row_to_col[owner[1:] - 1] = np.arange(n)
    return row_to_col, u[1:], v[1:]


def _lexicographic_refine(tight: list[np.ndarray], match: np.ndarray) -> np.ndarray:
    """Smallest-lexicographic perfect matching inside the tight-edge graph.

    ``match`` must already be a perfect matching using only tight edges.
    Rows are fixed in order; for each row the smallest tight column that still
    admits a perfect matching of the remaining rows is taken, re-routing the
    current matching along an alternating path when needed.
    """
    n = len(match)
    match = match.copy()
    owner = np.empty(n, dtype=np.int64)
    owner[match] = np.arange(n)
    fixed = np.zeros(n, dtype=bool)

    for i in range(n):
        target = match[i]
        for j in tight[i]:
            if fixed[j]:
                continue
            if j == target:
                break
            path = _alternating_path(tight, owner, fixed, owner[j], j, target)
            if path is None:
                continue
            # path: list of (row, new_col) for displaced rows
            for row, col in path:
                match[row] = col
                owner[col] = row
            match[i] = j
            owner[j] = i
            break
        fixed[match[i]] = True
    return match


def _alternating_path(tight, owner, fixed, start_row, banned_col, target_col):
    """Find re-assignments moving ``start_row`` off ``banned_col`` and freeing
    ``target_col`` as the last hop. Returns None if no such path exists."""
    visited_cols = {banned_col}
    stack = [(start_row, 0)]
    chosen: list[int] = []
    while stack:
        row, k = stack[-1]
        cols = tight[row]
        advanced = False
        while k < len(cols):
            c = int(cols[k])
            k += 1
            if fixed[c] or c in visited_cols:
                continue
            visited_cols.add(c)
            stack[-1] = (row, k)
            chosen.append(c)
            if c == target_col:
                return [(r, col) for (r, _), col in zip(stack, chosen)]
            stack.append((int(owner[c]), 0))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if chosen:
                chosen.pop()
    return None


def solve_max_assignment(weights) -> AssignmentResult:
    """Maximum-weight perfect matching of a square real matrix.

    Args:
        weights: ``n x n`` array-like of finite reals (negative values allowed).

    Returns:
        AssignmentResult with the lexicographically smallest optimal matching.

    Raises:
        DomainError: if the matrix is not square, empty, or has non-finite entries.
    """
    w = _check_weights(weights)
    n = w.shape[0]
    cost = w.max() - w
    match, u, v = _hungarian_min(cost)

    scale = max(1.0, float(np.abs(cost).max()))
    reduced = cost - u[:, None] - v[None, :]
    is_tight = reduced <= 1e-11 * scale
    is_tight[np.arange(n), match] = True
    tight = [np.flatnonzero(row) for row in is_tight]
    match = _lexicographic_refine(tight, match)

    total = float(w[np.arange(n), match].sum())
    return AssignmentResult(matching=tuple(int(c) for c in match), total=total)
