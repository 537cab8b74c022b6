"""Max-atom constraint solving: Algorithm A, reference oracles and a differential harness."""

from .model import (
    NEG_INF,
    AtomSystem,
    BoundExceeded,
    MaxAtom,
    atom,
    canonicalize,
    evaluate_atom,
    single,
    verify,
)
from .oracle import exhaustive_search, kleene_descent, oracles_agree
from .solver import SolveOutcome, StepCounters, algorithm_a, phi

__all__ = [
    "NEG_INF",
    "AtomSystem",
    "BoundExceeded",
    "MaxAtom",
    "SolveOutcome",
    "StepCounters",
    "algorithm_a",
    "atom",
    "canonicalize",
    "evaluate_atom",
    "exhaustive_search",
    "kleene_descent",
    "oracles_agree",
    "phi",
    "single",
    "verify",
]
