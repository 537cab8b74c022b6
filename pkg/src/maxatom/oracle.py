"""Reference solvers that share no code path with Algorithm A.

Both work on the integer-scaled system and look for the greatest solution
whose finite values lie in ``[-depth, 0]``. Solutions are closed under
componentwise max and under adding a constant, so a non-trivial solution
exists iff one exists with maximum component exactly 0.

Threshold argument for :func:`kleene_descent`: in the greatest normalized
solution each finite variable below 0 is pinned by a tight atom whose larger
left operand sits higher by at most ``R`` (the largest offset magnitude).
Following pinning atoms upward visits distinct variables until a 0-valued one
is hit, so every finite value is at least ``-(n-1)*R >= -n*R``. Anything that
sinks below ``-n*R`` can only be ``-inf``.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .model import NEG_INF, Assignment, AtomSystem

EXHAUSTIVE_MAX_VARS = 5


@dataclass
class OracleVerdict:
    kind: str  # "sat" | "trivial"
    assignment: Optional[Assignment]
    iterations: int
    threshold: Fraction

    @property
    def is_sat(self) -> bool:
        return self.kind == "sat"


def integer_scaled(system: AtomSystem) -> Tuple[List[Tuple[int, int, int, int]], int, int]:
    """Atoms as ``(z, y, x, r)`` integer tuples, the scale factor, and ``R = max |r|``."""
    scale = 1
    for a in system.atoms:
        scale = scale * a.offset.denominator // math.gcd(scale, a.offset.denominator)
    rows = [(a.left1, a.left2, a.right, int(a.offset * scale)) for a in sorted(system.atoms)]
    big = max((abs(r) for *_, r in rows), default=0)
    return rows, scale, big


def _unscale(values: Dict[int, object], scale: int) -> Assignment:
    return {v: (NEG_INF if x is None else Fraction(x, scale)) for v, x in values.items()}


def kleene_descent(system: AtomSystem, threshold: Optional[int] = None) -> OracleVerdict:
    """Greatest normalized solution by monotone descent from the zero vector.

    ``threshold`` (in scaled units) overrides the default cutoff ``n * R``.
    """
    rows, scale, big = integer_scaled(system)
    n = system.nvars
    cutoff = n * big if threshold is None else threshold
    # None encodes -inf
    val: Dict[int, Optional[int]] = {v: 0 for v in range(1, n + 1)}
    watchers = defaultdict(list)
    for i, (z, y, x, r) in enumerate(rows):
        watchers[z].append(i)
        if y != z:
            watchers[y].append(i)

    def violated(i):
        z, y, x, r = rows[i]
        if val[x] is None:
            return False
        lz, ly = val[z], val[y]
        top = ly if lz is None else (lz if ly is None else max(lz, ly))
        return top is None or top + r < val[x]

    # lowest-index violated atom first, for reproducibility
    heap = [i for i in range(len(rows)) if violated(i)]
    heapq.heapify(heap)
    queued = set(heap)
    iterations = 0
    while heap:
        i = heapq.heappop(heap)
        queued.discard(i)
        if not violated(i):
            continue
        iterations += 1
        z, y, x, r = rows[i]
        lz, ly = val[z], val[y]
        top = ly if lz is None else (lz if ly is None else max(lz, ly))
        new = None if top is None or top + r < -cutoff else top + r
        val[x] = new
        for j in watchers[x]:
            if j not in queued and violated(j):
                heapq.heappush(heap, j)
                queued.add(j)

    finite = [x for x in val.values() if x is not None]
    if not finite:
        return OracleVerdict("trivial", None, iterations, Fraction(cutoff, scale))
    top = max(finite)
    shifted = {v: (None if x is None else x - top) for v, x in val.items()}
    return OracleVerdict("sat", _unscale(shifted, scale), iterations, Fraction(cutoff, scale))


def grid_levels(depth: int) -> np.ndarray:
    return np.concatenate([[-np.inf], np.arange(-depth, 1, dtype=float)])


def grid(n: int, levels: np.ndarray) -> np.ndarray:
    """All points of ``levels**n`` as rows."""
    mesh = np.meshgrid(*([levels] * n), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def satisfied_mask(rows, grid: np.ndarray) -> np.ndarray:
    """Boolean mask over grid rows (column ``v-1`` holds variable ``v``)."""
    ok = np.ones(len(grid), dtype=bool)
    for z, y, x, r in rows:
        lhs = np.maximum(grid[:, z - 1], grid[:, y - 1]) + r
        ok &= lhs >= grid[:, x - 1]
    return ok


def exhaustive_search(system: AtomSystem, depth: Optional[int] = None) -> OracleVerdict:
    """Componentwise max of all solutions on ``({-depth..0} ∪ {-inf})^n`` (scaled units)."""
    n = system.nvars
    if n > EXHAUSTIVE_MAX_VARS:
        raise ValueError(f"exhaustive search supports at most {EXHAUSTIVE_MAX_VARS} variables, got {n}")
    rows, scale, big = integer_scaled(system)
    if depth is None:
        depth = n * big
    if depth < n * big:
        raise ValueError(f"depth {depth} below n*R = {n * big}")
    levels = grid_levels(depth)
    rest = grid(n - 1, levels) if n > 1 else np.zeros((1, 0))
    best = np.full(n, -np.inf)
    for first in levels:
        # one slab per value of x1 keeps memory at (depth+2)**(n-1) rows
        pts = np.column_stack([np.full(len(rest), first), rest])
        sols = pts[satisfied_mask(rows, pts)]
        if len(sols):
            best = np.maximum(best, sols.max(axis=0))
    visited = len(levels) ** n
    if np.all(np.isneginf(best)):
        return OracleVerdict("trivial", None, visited, Fraction(depth, scale))
    values = {v: (None if np.isneginf(best[v - 1]) else int(best[v - 1])) for v in range(1, n + 1)}
    return OracleVerdict("sat", _unscale(values, scale), visited, Fraction(depth, scale))


def oracles_agree(system: AtomSystem, depth: Optional[int] = None) -> bool:
    """Descent and brute force give the same verdict and the same greatest normalized solution.

    The brute force grid reaches one offset span (plus one) past the descent
    cutoff, so a too aggressive cutoff shows up as a disagreement.
    """
    rows, scale, big = integer_scaled(system)
    if depth is None:
        depth = (system.nvars + 1) * big + 1
    a = kleene_descent(system)
    b = exhaustive_search(system, depth)
    if a.kind != b.kind:
        return False
    return a.assignment == b.assignment
