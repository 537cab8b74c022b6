"""Differential campaigns: Algorithm A against the descent oracle, trial by trial.

Every trial is reproducible from its seed. Disagreements are appended to a
JSON-lines report as they happen so an interrupted campaign still leaves a
readable record; the last line is a summary object.
"""

from __future__ import annotations

import json
import logging
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import IO, Dict, List, Optional, Sequence, Tuple

from .instances import MODES, emit_instance, generate
from .model import verify
from .oracle import kleene_descent
from .solver import StepCounters, algorithm_a

log = logging.getLogger(__name__)


class OracleRefuted(RuntimeError):
    """Algorithm A produced a verified solution where the oracle claimed none exists."""


@dataclass(frozen=True)
class CampaignConfig:
    max_vars: int = 6
    max_atoms: int = 10
    offset_range: Tuple[int, int] = (-5, 5)
    modes: Tuple[str, ...] = MODES


@dataclass
class TrialRecord:
    index: int
    seed: int
    nvars: int
    natoms: int
    mode: str
    offset_range: Tuple[int, int]
    instance: str
    algorithm_a: str
    oracle: str
    verified: Optional[bool]
    counters: Dict[str, int]
    bound_violations: List[str]
    flags: List[str]
    diagnostic: Optional[str] = None
    wall_time: float = 0.0

    @property
    def disagreement(self) -> bool:
        return bool(self.flags)

    def replay_key(self) -> dict:
        """Everything except timing; two runs of the same seed must match on this."""
        d = asdict(self)
        d.pop("wall_time")
        return d

    def to_json(self) -> str:
        d = asdict(self)
        d["type"] = "trial"
        return json.dumps(d, sort_keys=True)


@dataclass
class CampaignReport:
    trials: int = 0
    verdicts: Counter = field(default_factory=Counter)
    agreements: int = 0
    sat_answers: int = 0
    sat_verified: int = 0
    planted: int = 0
    planted_solved: int = 0
    bound_outcomes: int = 0
    counter_violations: int = 0
    flags: Counter = field(default_factory=Counter)
    max_counters: Dict[str, int] = field(default_factory=dict)
    disagreements: List[TrialRecord] = field(default_factory=list)
    persisted: int = 0
    seconds: float = 0.0

    @property
    def agreement_rate(self) -> float:
        return self.agreements / self.trials if self.trials else 1.0

    def summary(self) -> dict:
        return {
            "type": "summary",
            "trials": self.trials,
            "agreements": self.agreements,
            "agreement_rate": round(self.agreement_rate, 6),
            "verdicts": {"/".join(k): v for k, v in sorted(self.verdicts.items())},
            "sat_answers": self.sat_answers,
            "sat_verified": self.sat_verified,
            "planted": self.planted,
            "planted_solved": self.planted_solved,
            "bound_outcomes": self.bound_outcomes,
            "counter_violations": self.counter_violations,
            "flags": dict(self.flags),
            "max_counters": self.max_counters,
            "disagreements": len(self.disagreements),
            "persisted": self.persisted,
            "seconds": round(self.seconds, 3),
        }


def trial_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def trial_params(seed: int, index: int, config: CampaignConfig) -> Tuple[int, int, str]:
    rng = random.Random(trial_seed(seed, index))
    n = rng.randint(1, config.max_vars)
    m = rng.randint(1, config.max_atoms)
    mode = config.modes[index % len(config.modes)]
    return n, m, mode


def run_trial(index: int, seed: int, config: CampaignConfig) -> TrialRecord:
    n, m, mode = trial_params(seed, index, config)
    return run_case(index, trial_seed(seed, index), n, m, mode, tuple(config.offset_range))


def run_case(index: int, tseed: int, n: int, m: int, mode: str, offset_range) -> TrialRecord:
    system = generate(n, m, offset_range, tseed, mode)
    t0 = time.perf_counter()
    outcome, counters = algorithm_a(system)
    wall = time.perf_counter() - t0
    oracle = kleene_descent(system)

    flags = []
    verified = None
    if outcome.assignment is not None:
        rep = verify(system, outcome.assignment)
        verified = rep.satisfied and rep.nontrivial
    if outcome.kind == "bound":
        flags.append("bound")
        if outcome.diagnostic and "verification" in outcome.diagnostic.get("reason", ""):
            flags.append("verify_failed")
    elif outcome.kind != oracle.kind:
        flags.append("verdict_mismatch")
    if oracle.is_sat and not verify(system, oracle.assignment).satisfied:
        flags.append("oracle_invalid")
    if mode == "planted" and not outcome.is_sat:
        flags.append("planted_missed")
    if outcome.is_sat and verified and oracle.kind == "trivial":
        flags.append("oracle_refuted")
    violations = counters.violations(n, len(system))

    return TrialRecord(
        index=index,
        seed=tseed,
        nvars=n,
        natoms=m,
        mode=mode,
        offset_range=tuple(offset_range),
        instance=emit_instance(system),
        algorithm_a=outcome.kind,
        oracle=oracle.kind,
        verified=verified,
        counters=counters.as_dict(),
        bound_violations=violations,
        flags=flags,
        diagnostic=(outcome.diagnostic or {}).get("reason"),
        wall_time=wall,
    )


def replay(record: TrialRecord) -> TrialRecord:
    """Re-run a trial from the generator parameters stored in its record."""
    return run_case(record.index, record.seed, record.nvars, record.natoms,
                    record.mode, record.offset_range)


def run_differential(
    trials: int,
    config: CampaignConfig = CampaignConfig(),
    seed: int = 0,
    sink: Optional[IO[str]] = None,
) -> CampaignReport:
    report = CampaignReport()
    t0 = time.perf_counter()
    for i in range(trials):
        rec = run_trial(i, seed, config)
        report.trials += 1
        report.verdicts[(rec.algorithm_a, rec.oracle)] += 1
        if rec.algorithm_a == rec.oracle:
            report.agreements += 1
        report.sat_answers += rec.algorithm_a == "sat"
        report.sat_verified += bool(rec.algorithm_a == "sat" and rec.verified)
        if rec.mode == "planted":
            report.planted += 1
            report.planted_solved += bool(rec.algorithm_a == "sat" and rec.verified)
        report.bound_outcomes += rec.algorithm_a == "bound"
        report.counter_violations += bool(rec.bound_violations)
        for k, v in rec.counters.items():
            report.max_counters[k] = max(report.max_counters.get(k, 0), v)
        report.flags.update(rec.flags)
        if rec.disagreement:
            report.disagreements.append(rec)
            if sink is not None:
                sink.write(rec.to_json() + "\n")
                sink.flush()
                report.persisted += 1
            log.info("trial %d (seed %d) flagged %s", i, rec.seed, rec.flags)
        if "oracle_refuted" in rec.flags:
            report.seconds = time.perf_counter() - t0
            if sink is not None:
                sink.write(json.dumps(report.summary()) + "\n")
            raise OracleRefuted(f"trial {i} (seed {rec.seed}): verified solution where oracle found none")
    report.seconds = time.perf_counter() - t0
    if sink is not None:
        sink.write(json.dumps(report.summary(), sort_keys=True) + "\n")
    return report


def load_report(lines: Sequence[str]) -> Tuple[List[TrialRecord], Optional[dict]]:
    records, summary = [], None
    for line in lines:
        if not line.strip():
            continue
        d = json.loads(line)
        kind = d.pop("type")
        if kind == "summary":
            summary = d
        else:
            d["offset_range"] = tuple(d["offset_range"])
            records.append(TrialRecord(**d))
    return records, summary


@dataclass
class BenchRow:
    nvars: int
    natoms: int
    outcome: str
    seconds: float
    counters: StepCounters
    violations: List[str]


def bench(sizes: Sequence[Tuple[int, int]], seed: int = 0, offset_range=(-5, 5)) -> List[BenchRow]:
    rows = []
    for n, m in sizes:
        system = generate(n, m, offset_range, seed, "planted")
        t0 = time.perf_counter()
        outcome, counters = algorithm_a(system)
        rows.append(BenchRow(n, len(system), outcome.kind, time.perf_counter() - t0,
                             counters, counters.violations(n, len(system))))
    return rows


def format_bench(rows: Sequence[BenchRow]) -> str:
    head = f"{'n':>4} {'m':>4} {'outcome':>8} {'seconds':>8} {'l1':>3} {'l2':>3} {'l3':>3} {'l4':>3} {'phi_steps':>10} {'atoms':>6}  bounds"
    out = [head]
    for r in rows:
        c = r.counters
        out.append(
            f"{r.nvars:>4} {r.natoms:>4} {r.outcome:>8} {r.seconds:>8.3f} {c.loop1:>3} {c.loop2:>3} "
            f"{c.loop3:>3} {c.loop4:>3} {c.phi_steps:>10} {c.max_atoms:>6}  {'ok' if not r.violations else '; '.join(r.violations)}"
        )
    return "\n".join(out)
