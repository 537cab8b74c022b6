"""Algorithm A: rewrite, detect positive circuits, decide orderings, build a solution.

The driver follows the published step numbering (0-15) closely; the comments
refer to those step labels. Loop counters and the per-call step count of the
decision subroutine are checked against their published ceilings while the
solve runs, and every candidate solution is verified against the input before
it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import (
    PositiveCircuitError,
    WeightedDigraph,
    built_solution,
    closure_to_atoms,
    graph_from_atoms,
    graph_sum,
    max_weight_closure,
    positive_circuit,
)
from .model import (
    Assignment,
    AtomSystem,
    BoundExceeded,
    MaxAtom,
    verify,
)
from .rules import (
    rule_reflexive,
    rule_same_args_dominance,
    saturate_rules,
)


def phi_step_bound(n: int, m: int) -> int:
    return m * (3 * (m + n * n) ** 2 + m + n * n + 2 * n ** 3)


@dataclass
class StepCounters:
    loop1: int = 0  # restarts through 6.2 (positive circuit)
    loop2: int = 0  # restarts through 13.4.4 (merge)
    loop3: int = 0  # most repeats of 3-11 within one entry
    loop4: int = 0  # re-entries at 5.2 through 13.3.2 (both decisions fail)
    phi_steps: int = 0  # largest step count of a single decision call
    phi_calls: int = 0
    max_atoms: int = 0

    def violations(self, n: int, m: int) -> List[str]:
        out = []
        for name in ("loop1", "loop2", "loop4"):
            if getattr(self, name) > n:
                out.append(f"{name}={getattr(self, name)} > n={n}")
        if self.loop3 > m:
            out.append(f"loop3={self.loop3} > m={m}")
        if self.phi_steps > phi_step_bound(n, m):
            out.append(f"phi_steps={self.phi_steps} > {phi_step_bound(n, m)}")
        if self.max_atoms > m + n * n:
            out.append(f"max_atoms={self.max_atoms} > m+n^2={m + n * n}")
        return out

    def as_dict(self) -> Dict[str, int]:
        return dict(self.__dict__)


@dataclass
class PhiResult:
    status: bool
    graph: Optional[WeightedDigraph]
    steps: int = 0
    iterations: int = 0
    max_atoms: int = 0


@dataclass
class SolveOutcome:
    kind: str  # "sat" | "trivial" | "bound"
    assignment: Optional[Assignment] = None
    diagnostic: Optional[dict] = None

    @property
    def is_sat(self) -> bool:
        return self.kind == "sat"


def inject_closure(system: AtomSystem, g: WeightedDigraph) -> None:
    """Add the derived atom of every reachable pair; keep one single atom per pair."""
    for a in closure_to_atoms(max_weight_closure(g)):
        system.add(a)
    rule_same_args_dominance(system)


def propagate_minus_infinity(system: AtomSystem, seeds) -> AtomSystem:
    """Fix ``seeds`` to -inf and push the consequences through the atoms (in place)."""
    for v in seeds:
        system.kill(v)
    changed = True
    while changed:
        changed = False
        for a in sorted(system.atoms):
            dead_r = system.is_dead(a.right)
            dead_1 = system.is_dead(a.left1)
            dead_2 = system.is_dead(a.left2)
            if dead_r:
                system.discard(a)
            elif dead_1 and dead_2:
                system.discard(a)
                system.kill(a.right)
            elif dead_1 or dead_2:
                other = a.left2 if dead_1 else a.left1
                system.discard(a)
                system.add(MaxAtom(other, other, a.right, a.offset))
            else:
                continue
            changed = True
    return system


def merge_variables(system: AtomSystem, keep: int, drop: int) -> AtomSystem:
    """Identify two variables (in place); the smaller index becomes the representative."""
    if system.resolve(keep) == system.resolve(drop):
        raise ValueError("variables already merged")
    system.union(keep, drop)
    old = list(system.atoms)
    system.atoms = set()
    for a in old:
        system.add(a)
    return system


def aggregate_decision_graphs(results: Sequence[PhiResult]) -> WeightedDigraph:
    g = WeightedDigraph()
    for r in results:
        if not r.status:
            raise ValueError("cannot aggregate a failed decision")
        g = graph_sum(g, r.graph)
    return g


def phi(
    decision: Tuple[int, int],
    atom: MaxAtom,
    system: AtomSystem,
    bounds: Optional[Tuple[int, int]] = None,
) -> PhiResult:
    """Assume ``hi >= lo`` for the two left variables of ``atom`` and saturate.

    Returns status False when a positive circuit shows up, otherwise True with
    the final synthesis graph. ``system`` is left untouched. ``bounds`` is the
    ``(n, m)`` pair used for the step ceiling; defaults to the system's own sizes.
    """
    hi, lo = decision
    if atom.is_single or {hi, lo} != {atom.left1, atom.left2}:
        raise ValueError("decision must order the two left variables of a two-variable atom")
    if atom not in system:
        raise ValueError(f"{atom} is not in the system")
    live = system.live_vars()
    n, m = bounds if bounds is not None else (len(live), len(system))
    ceiling = phi_step_bound(n, m)
    max_iterations = 4 * (m + n * n) + 8

    work = system.copy()
    work.discard(atom)
    work.add(MaxAtom(hi, hi, lo, Fraction(0)))
    work.add(MaxAtom(hi, hi, atom.right, atom.offset))

    steps = 0
    iterations = 0
    max_atoms = len(work)
    while True:
        iterations += 1
        before = frozenset(work.atoms)
        steps += 3 * len(work) ** 2
        saturate_rules(work)
        steps += len(work)
        g = graph_from_atoms(work, live)
        steps += 2 * len(live) ** 3
        if positive_circuit(g) is not None:
            return PhiResult(False, None, steps, iterations)
        if g.arcs:
            inject_closure(work, g)
        max_atoms = max(max_atoms, len(work))
        if steps > ceiling or iterations > max_iterations:
            raise BoundExceeded(
                "decision subroutine exceeded its step ceiling",
                {"steps": steps, "ceiling": ceiling, "iterations": iterations,
                 "atom": str(atom), "decision": decision},
            )
        if work.atoms == before:
            break
    return PhiResult(True, g, steps, iterations, max_atoms)


class _Run:
    def __init__(self, system: AtomSystem):
        self.n = system.nvars
        self.m = len(system)
        self.S = system
        self.counters = StepCounters()
        self.trace: List[tuple] = []
        self.last_measure: Optional[Tuple[int, int]] = None

    # -- bookkeeping ---------------------------------------------------------------
    def fail(self, message: str, **extra):
        raise BoundExceeded(message, {"trace": self.trace, **extra})

    def check(self):
        bad = self.counters.violations(self.n, self.m)
        if bad:
            self.fail("step bound exceeded: " + "; ".join(bad), counters=self.counters.as_dict())

    def note_size(self, k: int):
        self.counters.max_atoms = max(self.counters.max_atoms, k)
        self.check()

    def restart_measure(self):
        measure = (len(self.S.live_vars()), len(self.S.double_atoms()))
        if self.last_measure is not None and not measure < self.last_measure:
            self.fail(f"restart did not decrease (live, two-variable) from {self.last_measure} to {measure}")
        self.last_measure = measure

    def kill_and_check(self, seeds) -> bool:
        """Steps 5.1-6: returns True when every variable is now -inf."""
        propagate_minus_infinity(self.S, seeds)
        return not self.S.live_vars()

    # -- the algorithm -------------------------------------------------------------
    def run(self) -> Tuple[str, Optional[Dict[int, Fraction]]]:
        S = self.S
        while True:
            # step 0
            self.restart_measure()
            live = S.live_vars()
            low = S.min_offset()
            if low is None or low >= 0:
                self.trace.append(("0", "offsets nonnegative"))
                return "sat", {v: Fraction(0) for v in live}
            # steps 1-2
            rule_reflexive(S)
            rule_same_args_dominance(S)
            # steps 3-11
            repeats = 0
            restart = False
            while True:
                before = frozenset(S.atoms)
                g = graph_from_atoms(S, live)
                cycle = positive_circuit(g)
                if cycle is not None:
                    self.trace.append(("5", tuple(cycle)))
                    if self.kill_and_check(cycle):
                        return "trivial", None
                    self.counters.loop1 += 1
                    self.check()
                    restart = True
                    break
                if g.arcs:
                    inject_closure(S, g)
                self.note_size(len(S))
                saturate_rules(S, limit=self.m)
                self.note_size(len(S))
                if S.atoms == before:
                    break
                repeats += 1
                self.counters.loop3 = max(self.counters.loop3, repeats)
                self.check()
            if restart:
                continue
            # step 12
            doubles = S.double_atoms()
            if not doubles:
                self.trace.append(("12", len(S)))
                return "sat", built_solution(graph_from_atoms(S, live), live)
            # step 13
            retained: List[PhiResult] = []
            jump = None
            for a in doubles:
                results = []
                for decision in ((a.left1, a.left2), (a.left2, a.left1)):
                    res = phi(decision, a, S, bounds=(self.n, self.m))
                    self.counters.phi_calls += 1
                    self.counters.phi_steps = max(self.counters.phi_steps, res.steps)
                    if res.status:
                        self.counters.max_atoms = max(self.counters.max_atoms, res.max_atoms)
                    results.append(res)
                self.check()
                first, second = results
                if not first.status and not second.status:
                    self.trace.append(("13.3", str(a)))
                    if self.kill_and_check((a.left1, a.left2)):
                        return "trivial", None
                    self.counters.loop4 += 1
                    self.check()
                    jump = "0"
                    break
                if first.status and second.status:
                    self.trace.append(("13.4", str(a)))
                    merge_variables(S, a.left1, a.left2)
                    self.counters.loop2 += 1
                    self.check()
                    jump = "0"
                    break
                retained.extend(r for r in results if r.status)
            if jump:
                continue
            # steps 14-15
            G = aggregate_decision_graphs(retained)
            self.trace.append(("14", len(retained)))
            try:
                return "sat", built_solution(G, live)
            except PositiveCircuitError:
                self.fail("aggregated decision graph has a positive circuit",
                          retained=len(retained))


def _scale(system: AtomSystem) -> Tuple[AtomSystem, int]:
    scale = 1
    for a in system.atoms:
        scale = scale * a.offset.denominator // math.gcd(scale, a.offset.denominator)
    scaled = AtomSystem(system.nvars)
    for a in system.atoms:
        scaled.add(MaxAtom(a.left1, a.left2, a.right, a.offset * scale))
    return scaled, scale


def algorithm_a(system: AtomSystem) -> Tuple[SolveOutcome, StepCounters]:
    """Decide whether ``system`` has a solution other than all ``-inf``.

    Offsets are scaled to integers first (order and sign tests are invariant
    under positive scaling). A ``"bound"`` outcome carries the reason in
    ``diagnostic``; it covers exceeded loop ceilings and candidates that fail
    verification against ``system``.
    """
    work, scale = _scale(system)
    run = _Run(work)
    try:
        kind, values = run.run()
    except BoundExceeded as exc:
        diag = {"reason": str(exc), **exc.trace}
        diag.setdefault("trace", run.trace)
        diag.setdefault("counters", run.counters.as_dict())
        return SolveOutcome("bound", None, diag), run.counters
    if kind == "trivial":
        return SolveOutcome("trivial", None, {"trace": run.trace}), run.counters
    values = {v: x / scale for v, x in values.items()}
    assignment = work.expand(values)
    report = verify(system, assignment)
    if not report.satisfied or not report.nontrivial:
        return SolveOutcome(
            "bound",
            assignment,
            {
                "reason": "candidate solution failed verification",
                "violated": [str(a) for a in report.violated],
                "trace": run.trace,
                "counters": run.counters.as_dict(),
            },
        ), run.counters
    return SolveOutcome("sat", assignment), run.counters
