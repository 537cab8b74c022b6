"""Max-atom instances, extended values and assignment checking.

A max-atom ``max(z, y) + r >= x`` is stored as ``MaxAtom(z, y, x, r)`` with
1-based variable indices and an exact rational offset. Values live in
``Q ∪ {-inf}``; finite values are :class:`fractions.Fraction` and minus
infinity is the singleton :data:`NEG_INF`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Union


class BoundExceeded(Exception):
    """An internal loop bound was exceeded; signals an implementation or claim failure."""

    def __init__(self, message: str, trace: dict | None = None):
        super().__init__(message)
        self.trace = trace or {}


@functools.total_ordering
class _NegInf:
    """Minus infinity: absorbing for ``+ r``, neutral for ``max``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("maxatom.NEG_INF")

    def __lt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()

ExtValue = Union[Fraction, _NegInf]
Assignment = Dict[int, ExtValue]


def is_finite(v: ExtValue) -> bool:
    return v is not NEG_INF


def to_offset(value) -> Fraction:
    """Parse an offset from an int, Fraction, decimal string or ``p/q`` literal."""
    if isinstance(value, float):
        # floats are exact binary rationals; go through repr so 0.1 means 1/10
        value = repr(value)
    return Fraction(value)


@dataclass(frozen=True, order=True)
class MaxAtom:
    """``max(x_left1, x_left2) + offset >= x_right``."""

    left1: int
    left2: int
    right: int
    offset: Fraction

    @property
    def is_single(self) -> bool:
        return self.left1 == self.left2

    @property
    def is_reflexive(self) -> bool:
        return self.right in (self.left1, self.left2)

    def variables(self) -> tuple:
        return (self.left1, self.left2, self.right)

    def __str__(self):
        if self.is_single:
            lhs = f"x{self.left1}"
        else:
            lhs = f"max(x{self.left1},x{self.left2})"
        r = self.offset
        sign = "+" if r >= 0 else "-"
        return f"{lhs} {sign} {abs(r)} >= x{self.right}"


def atom(z: int, y: int, x: int, r=0) -> MaxAtom:
    """Build a canonical atom ``max(x_z, x_y) + r >= x_x``."""
    return canonicalize(MaxAtom(z, y, x, to_offset(r)))


def single(y: int, x: int, r=0) -> MaxAtom:
    """Build the single-variable atom ``x_y + r >= x_x``."""
    return MaxAtom(y, y, x, to_offset(r))


def canonicalize(a: MaxAtom) -> MaxAtom:
    if a.left1 <= a.left2:
        return a
    return MaxAtom(a.left2, a.left1, a.right, a.offset)


def evaluate_atom(a: MaxAtom, values: Assignment) -> bool:
    lhs = max(values[a.left1], values[a.left2]) + a.offset
    return lhs >= values[a.right]


@dataclass
class VerifyReport:
    satisfied: bool
    violated: List[MaxAtom]
    nontrivial: bool


class AtomSystem:
    """Mutable working state: variable universe, atom set, killed variables, merges.

    Atoms are kept canonical and always refer to union-find representatives.
    Variables fixed to ``-inf`` are recorded in ``values``.
    """

    def __init__(self, nvars: int, atoms: Iterable[MaxAtom] = ()):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.nvars = nvars
        self.atoms: set = set()
        self.values: Dict[int, ExtValue] = {}
        self.parent: Dict[int, int] = {v: v for v in range(1, nvars + 1)}
        for a in atoms:
            self.add(a)

    # -- basic container protocol -------------------------------------------------
    def __len__(self):
        return len(self.atoms)

    def __iter__(self) -> Iterator[MaxAtom]:
        return iter(sorted(self.atoms))

    def __contains__(self, a: MaxAtom):
        return canonicalize(a) in self.atoms

    def __eq__(self, other):
        if not isinstance(other, AtomSystem):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.atoms == other.atoms
            and self.values == other.values
            and {v: self.resolve(v) for v in self.parent}
            == {v: other.resolve(v) for v in other.parent}
        )

    def __repr__(self):
        body = ", ".join(str(a) for a in self)
        return f"AtomSystem(n={self.nvars}, {{{body}}})"

    def copy(self) -> "AtomSystem":
        new = AtomSystem.__new__(AtomSystem)
        new.nvars = self.nvars
        new.atoms = set(self.atoms)
        new.values = dict(self.values)
        new.parent = dict(self.parent)
        return new

    # -- atoms ----------------------------------------------------------------
    def _check_var(self, v: int):
        if not (isinstance(v, int) and 1 <= v <= self.nvars):
            raise ValueError(f"variable index {v} outside 1..{self.nvars}")

    def add(self, a: MaxAtom) -> bool:
        for v in a.variables():
            self._check_var(v)
        a = canonicalize(
            MaxAtom(self.resolve(a.left1), self.resolve(a.left2), self.resolve(a.right), a.offset)
        )
        if a in self.atoms:
            return False
        self.atoms.add(a)
        return True

    def discard(self, a: MaxAtom) -> bool:
        a = canonicalize(a)
        if a in self.atoms:
            self.atoms.remove(a)
            return True
        return False

    def single_atoms(self) -> List[MaxAtom]:
        return sorted(a for a in self.atoms if a.is_single)

    def double_atoms(self) -> List[MaxAtom]:
        return sorted(a for a in self.atoms if not a.is_single)

    def min_offset(self):
        return min((a.offset for a in self.atoms), default=None)

    # -- variables --------------------------------------------------------------
    def resolve(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.resolve(a), self.resolve(b)
        if ra == rb:
            return ra
        keep, drop = min(ra, rb), max(ra, rb)
        self.parent[drop] = keep
        return keep

    def live_vars(self) -> List[int]:
        return [
            v for v in range(1, self.nvars + 1)
            if self.parent[v] == v and v not in self.values
        ]

    def is_dead(self, v: int) -> bool:
        return self.values.get(self.resolve(v)) is NEG_INF

    def kill(self, v: int) -> bool:
        v = self.resolve(v)
        if self.values.get(v) is NEG_INF:
            return False
        self.values[v] = NEG_INF
        return True

    def expand(self, values: Assignment) -> Assignment:
        """Map every original variable to the value of its representative.

        Representatives missing from ``values`` are -inf when killed, otherwise
        a ``KeyError`` is raised.
        """
        out = {}
        for v in range(1, self.nvars + 1):
            r = self.resolve(v)
            if r in self.values:
                out[v] = self.values[r]
            else:
                out[v] = values[r]
        return out


def verify(system: AtomSystem, values: Assignment) -> VerifyReport:
    expected = set(range(1, system.nvars + 1))
    if set(values) != expected:
        raise ValueError(
            f"assignment covers {sorted(values)}, system has variables 1..{system.nvars}"
        )
    violated = [a for a in system if not evaluate_atom(a, values)]
    nontrivial = any(is_finite(v) for v in values.values())
    return VerifyReport(not violated, violated, nontrivial)


def resolve(system: AtomSystem, v: int) -> int:
    return system.resolve(v)


def zeros(n: int) -> Assignment:
    return {v: Fraction(0) for v in range(1, n + 1)}


def all_neg_inf(n: int) -> Assignment:
    return {v: NEG_INF for v in range(1, n + 1)}


def format_value(v: ExtValue) -> str:
    if v is NEG_INF:
        return "-inf"
    return str(v)
