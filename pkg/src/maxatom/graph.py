"""Weighted digraphs over variables.

An arc ``x -> y`` of weight ``w`` encodes the single-variable atom
``y - w >= x``, i.e. ``value(y) >= value(x) + w``. Circuits of strictly
positive weight force their variables to ``-inf``; without them, longest
paths give finite solutions.

Dense kernels run on numpy arrays. Integer weights use float64 (exact below
2**52); anything else falls back to object arrays of ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

from .model import AtomSystem, MaxAtom

Arc = Tuple[int, int]

_EXACT_FLOAT_LIMIT = 2 ** 50


@dataclass(frozen=True)
class WeightedArc:
    source: int
    target: int
    weight: Fraction


@dataclass
class WeightedDigraph:
    vertices: Set[int] = field(default_factory=set)
    arcs: Dict[Arc, Fraction] = field(default_factory=dict)

    def copy(self) -> "WeightedDigraph":
        return WeightedDigraph(set(self.vertices), dict(self.arcs))

    def add_arc(self, u: int, v: int, w) -> None:
        """In-place arc sum: parallel arcs keep the larger weight."""
        self.vertices.update((u, v))
        old = self.arcs.get((u, v))
        if old is None or w > old:
            self.arcs[(u, v)] = Fraction(w)

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.arcs == other.arcs

    def __len__(self):
        return len(self.arcs)


@dataclass
class ClosureResult:
    rstar: Dict[Arc, Fraction]

    @property
    def reachable(self) -> FrozenSet[Arc]:
        return frozenset(self.rstar)


class PositiveCircuitError(ValueError):
    pass


def arc_sum(g: WeightedDigraph, arc: WeightedArc) -> WeightedDigraph:
    out = g.copy()
    out.add_arc(arc.source, arc.target, arc.weight)
    return out


def graph_sum(g1: WeightedDigraph, g2: WeightedDigraph) -> WeightedDigraph:
    out = g1.copy()
    out.vertices |= g2.vertices
    for (u, v), w in g2.arcs.items():
        out.add_arc(u, v, w)
    return out


def graph_from_atoms(system: AtomSystem, vertices: Iterable[int] = ()) -> WeightedDigraph:
    """Arc ``x -> y`` of weight ``-r`` for every ``y + r >= x``."""
    g = WeightedDigraph(set(vertices))
    for a in system.atoms:
        if a.is_single:
            g.add_arc(a.right, a.left1, -a.offset)
    return g


# -- dense kernels ---------------------------------------------------------------

def _dense(g: WeightedDigraph, extra: Iterable[int] = ()):
    order = sorted(g.vertices.union(extra))
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    ws = list(g.arcs.values())
    integral = all(w.denominator == 1 for w in ws)
    bound = max((abs(w) for w in ws), default=0) * (n + 1)
    if integral and bound < _EXACT_FLOAT_LIMIT:
        mat = np.full((n, n), -np.inf)
        conv = float
    else:
        mat = np.empty((n, n), dtype=object)
        mat.fill(-np.inf)
        conv = Fraction
    for (u, v), w in g.arcs.items():
        mat[index[u], index[v]] = conv(w)
    return order, mat


def _back(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x))


def _relax(dist, mat):
    cand = dist[:, None] + mat
    best = np.argmax(cand, axis=0)
    vals = cand[best, np.arange(len(dist))]
    better = vals > dist
    return best, vals, better


def _longest_from_virtual_source(mat, rounds: int):
    """Jacobi Bellman-Ford with every vertex at 0; returns dist, pred, last-round improvements."""
    n = mat.shape[0]
    dist = np.zeros(n, dtype=mat.dtype)
    if mat.dtype == object:
        dist[:] = [Fraction(0)] * n
    pred = np.full(n, -1)
    better = np.zeros(n, dtype=bool)
    for _ in range(rounds):
        best, vals, better = _relax(dist, mat)
        better = np.asarray(better, dtype=bool)
        if not better.any():
            break
        dist = np.where(better, vals, dist)
        pred = np.where(better, best, pred)
    return dist, pred, better


def _pred_cycle(pred, start: int) -> Optional[List[int]]:
    seen = {}
    v = start
    step = 0
    while v != -1 and v not in seen:
        seen[v] = step
        v = int(pred[v])
        step += 1
    if v == -1:
        return None
    cycle = [v]
    u = int(pred[v])
    while u != v:
        cycle.append(u)
        u = int(pred[u])
    cycle.reverse()
    return cycle


def positive_circuit(g: WeightedDigraph) -> Optional[List[int]]:
    """Return the vertices of a strictly positive circuit in traversal order, or ``None``."""
    if not g.arcs:
        return None
    order, mat = _dense(g)
    n = len(order)
    dist, pred, better = _longest_from_virtual_source(mat, n)
    if not better.any():
        return None
    # improvements past n rounds imply a positive circuit; predecessor cycles
    # appear once distances exceed every simple-path weight
    while True:
        for v in np.flatnonzero(better):
            cyc = _pred_cycle(pred, int(v))
            if cyc is not None:
                verts = [order[i] for i in cyc]
                assert circuit_weight(g, verts) > 0
                return verts
        best, vals, better = _relax(dist, mat)
        better = np.asarray(better, dtype=bool)
        dist = np.where(better, vals, dist)
        pred = np.where(better, best, pred)


def circuit_weight(g: WeightedDigraph, cycle: List[int]) -> Fraction:
    total = Fraction(0)
    for i, u in enumerate(cycle):
        total += g.arcs[(u, cycle[(i + 1) % len(cycle)])]
    return total


def max_weight_closure(g: WeightedDigraph) -> ClosureResult:
    """Maximum path weight for every connected ordered pair (Floyd-Warshall).

    Self pairs on a cycle get weight 0 (the empty path beats any non-positive cycle).
    """
    if not g.arcs:
        return ClosureResult({})
    order, d = _dense(g)
    n = len(order)
    for k in range(n):
        d = np.maximum(d, d[:, k, None] + d[None, k, :])
    if any(d[i, i] > 0 for i in range(n)):
        raise PositiveCircuitError("closure requested on a graph with a positive circuit")
    rstar = {}
    for i in range(n):
        for j in range(n):
            if d[i, j] != -np.inf:
                rstar[(order[i], order[j])] = Fraction(0) if i == j else _back(d[i, j])
    return ClosureResult(rstar)


def closure_graph(c: ClosureResult) -> WeightedDigraph:
    g = WeightedDigraph()
    for (u, v), w in c.rstar.items():
        g.add_arc(u, v, w)
    return g


def closure_to_atoms(c: ClosureResult) -> Set[MaxAtom]:
    """``v - r*(u,v) >= u`` for each reachable pair; self pairs are skipped."""
    return {
        MaxAtom(v, v, u, -w)
        for (u, v), w in c.rstar.items()
        if u != v
    }


def built_solution(g: WeightedDigraph, universe: Iterable[int]) -> Dict[int, Fraction]:
    """Longest path from a fresh source joined to every vertex by 0-weight arcs."""
    order, mat = _dense(g, universe)
    n = len(order)
    if n == 0:
        return {}
    dist, _, better = _longest_from_virtual_source(mat, n)
    if better.any():
        raise PositiveCircuitError("longest paths undefined: positive circuit present")
    return {v: _back(dist[i]) for i, v in enumerate(order)}
