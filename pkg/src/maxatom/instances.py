"""Text format for instances and solutions, and random instance generators.

Instance::

    maxatom 1
    vars 3
    atom 1 2 3 -2      # max(x1, x2) - 2 >= x3

Solution::

    status sat
    x1 0
    x2 -inf
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .model import NEG_INF, Assignment, AtomSystem, MaxAtom, format_value, is_finite, to_offset

MODES = ("uniform", "planted", "chains", "cycles")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _parse_offset(tok: str, no: int) -> Fraction:
    try:
        return to_offset(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse offset {tok!r}", no) from None


def parse_instance(text: str) -> AtomSystem:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty instance") from None
    if head != ["maxatom", "1"]:
        raise ParseError(f"expected header 'maxatom 1', got {' '.join(head)!r}", no)
    try:
        no, decl = next(it)
    except StopIteration:
        raise ParseError("missing 'vars <n>' line") from None
    if len(decl) != 2 or decl[0] != "vars" or not decl[1].isdigit() or int(decl[1]) < 1:
        raise ParseError(f"expected 'vars <n>' with n >= 1, got {' '.join(decl)!r}", no)
    n = int(decl[1])
    system = AtomSystem(n)
    for no, toks in it:
        if toks[0] != "atom" or len(toks) != 5:
            raise ParseError(f"expected 'atom <i> <j> <k> <r>', got {' '.join(toks)!r}", no)
        idx = []
        for tok in toks[1:4]:
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise ParseError(f"variable index {tok!r} outside 1..{n}", no)
            idx.append(int(tok))
        system.add(MaxAtom(idx[0], idx[1], idx[2], _parse_offset(toks[4], no)))
    return system


def emit_instance(system: AtomSystem) -> str:
    out = ["maxatom 1", f"vars {system.nvars}"]
    for a in system:
        out.append(f"atom {a.left1} {a.left2} {a.right} {a.offset}")
    return "\n".join(out) + "\n"


def emit_solution(assignment: Optional[Assignment]) -> str:
    if assignment is None or not any(is_finite(v) for v in assignment.values()):
        return "status trivial\n"
    out = ["status sat"]
    for v in sorted(assignment):
        out.append(f"x{v} {format_value(assignment[v])}")
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> Tuple[str, Optional[Assignment]]:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty solution") from None
    if len(head) != 2 or head[0] != "status" or head[1] not in ("sat", "trivial"):
        raise ParseError("expected 'status sat' or 'status trivial'", no)
    values: Dict[int, object] = {}
    for no, toks in it:
        if len(toks) != 2 or not toks[0].startswith("x") or not toks[0][1:].isdigit():
            raise ParseError(f"expected 'x<i> <value>', got {' '.join(toks)!r}", no)
        v = int(toks[0][1:])
        if v in values:
            raise ParseError(f"duplicate value for x{v}", no)
        values[v] = NEG_INF if toks[1] == "-inf" else _parse_offset(toks[1], no)
    if head[1] == "trivial":
        return "trivial", None
    return "sat", values


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class GenParams:
    nvars: int
    natoms: int
    offset_range: Tuple[int, int] = (-3, 3)
    mode: str = "uniform"


def _offset(rng: random.Random, lo: int, hi: int) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def generate(n: int, m: int, offset_range=(-3, 3), seed: int = 0, mode: str = "uniform") -> AtomSystem:
    """Random instance, deterministic in ``seed``.

    ``planted`` samples a non-trivial assignment first and keeps only atoms it
    satisfies; ``chains`` emits single-variable atoms along paths; ``cycles``
    closes single-variable atoms into circuits, starting with one through every
    variable.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    lo, hi = offset_range
    if lo > hi:
        raise ValueError("empty offset range")
    rng = random.Random(seed)
    system = AtomSystem(n)
    if mode == "uniform":
        for _ in range(m):
            system.add(MaxAtom(rng.randint(1, n), rng.randint(1, n), rng.randint(1, n), _offset(rng, lo, hi)))
    elif mode == "planted":
        _plant(system, rng, n, m, lo, hi)
    elif mode == "chains":
        for _ in range(m):
            length = rng.randint(1, max(1, n - 1))
            path = rng.sample(range(1, n + 1), min(n, length + 1))
            for u, v in zip(path, path[1:]):
                system.add(MaxAtom(v, v, u, _offset(rng, lo, hi)))
                if len(system) >= m:
                    return system
        # n == 1 leaves nothing to chain; fall back to a self atom
        if len(system) == 0:
            system.add(MaxAtom(1, 1, 1, _offset(rng, lo, hi)))
    else:
        order = list(range(1, n + 1))
        rng.shuffle(order)
        cycle = order
        while len(system) < m:
            for u, v in zip(cycle, cycle[1:] + cycle[:1]):
                if len(system) >= m:
                    break
                system.add(MaxAtom(v, v, u, _offset(rng, lo, hi)))
            k = rng.randint(1, n)
            cycle = rng.sample(range(1, n + 1), k)
    return system


def planted_instance(n: int, m: int, offset_range=(-3, 3), seed: int = 0) -> Tuple[AtomSystem, Assignment]:
    """Same instance as ``generate(..., mode="planted")`` together with its hidden solution."""
    rng = random.Random(seed)
    system = AtomSystem(n)
    witness = _plant(system, rng, n, m, *offset_range)
    return system, witness


def _plant(system: AtomSystem, rng: random.Random, n: int, m: int, lo: int, hi: int) -> Assignment:
    spread = max(1, hi - lo)
    values: Dict[int, object] = {}
    for v in range(1, n + 1):
        values[v] = NEG_INF if rng.random() < 0.2 else Fraction(-rng.randint(0, spread))
    if not any(is_finite(x) for x in values.values()):
        values[rng.randint(1, n)] = Fraction(0)
    tries = 0
    while len(system) < m and tries < 50 * m:
        tries += 1
        z, y, x = rng.randint(1, n), rng.randint(1, n), rng.randint(1, n)
        top = max(values[z], values[y])
        if values[x] is NEG_INF:
            need = lo
        elif top is NEG_INF:
            continue
        else:
            need = max(lo, int(values[x] - top))
        if need > hi:
            continue
        system.add(MaxAtom(z, y, x, Fraction(rng.randint(need, hi))))
    return values
