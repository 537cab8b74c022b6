"""Solution-set-preserving rewrites on an :class:`AtomSystem`.

Each rule rewrites the system in place and reports what it removed and added.
Notation: ``F(z,y,x;r)`` is ``max(z,y) + r >= x`` and ``F(y,y,x;r)`` is the
single-variable atom ``y + r >= x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .model import AtomSystem, BoundExceeded, MaxAtom, canonicalize


@dataclass
class RewriteOutcome:
    removed: List[MaxAtom] = field(default_factory=list)
    added: List[MaxAtom] = field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.removed or self.added)

    def extend(self, other: "RewriteOutcome") -> None:
        self.removed.extend(other.removed)
        self.added.extend(other.added)


def _replace(system: AtomSystem, old: MaxAtom, new: MaxAtom, out: RewriteOutcome) -> None:
    system.discard(old)
    out.removed.append(old)
    new = canonicalize(new)
    if system.add(new):
        out.added.append(new)


def _single_index(system: AtomSystem) -> Dict[Tuple[int, int], object]:
    """Smallest offset of ``y + r >= x`` keyed by ``(y, x)``."""
    best: Dict[Tuple[int, int], object] = {}
    for a in system.atoms:
        if a.is_single:
            key = (a.left1, a.right)
            if key not in best or a.offset < best[key]:
                best[key] = a.offset
    return best


def rule_reflexive(system: AtomSystem) -> RewriteOutcome:
    """``max(y,x) + r >= x``: drop when ``r >= 0``, else keep ``y + r >= x``."""
    out = RewriteOutcome()
    for a in system.double_atoms():
        if not a.is_reflexive:
            continue
        other = a.left2 if a.left1 == a.right else a.left1
        if a.offset >= 0:
            system.discard(a)
            out.removed.append(a)
        else:
            _replace(system, a, MaxAtom(other, other, a.right, a.offset), out)
    for a in system.single_atoms():
        # x + r >= x with r < 0 already has the reduced form
        if a.left1 == a.right and a.offset >= 0:
            system.discard(a)
            out.removed.append(a)
    return out


def rule_same_args_dominance(system: AtomSystem) -> RewriteOutcome:
    """Among atoms sharing ``(z, y, x)`` only the smallest offset survives."""
    out = RewriteOutcome()
    keep: Dict[Tuple[int, int, int], MaxAtom] = {}
    for a in sorted(system.atoms):
        key = (a.left1, a.left2, a.right)
        # sorted order puts the smallest offset first
        if key in keep:
            system.discard(a)
            out.removed.append(a)
        else:
            keep[key] = a
    return out


def rule_atom_dominates(system: AtomSystem) -> RewriteOutcome:
    """``y + r >= x`` with ``r <= r'`` makes ``max(z,y) + r' >= x`` redundant."""
    out = RewriteOutcome()
    singles = _single_index(system)
    for a in system.double_atoms():
        for y in (a.left1, a.left2):
            r = singles.get((y, a.right))
            if r is not None and r <= a.offset:
                system.discard(a)
                out.removed.append(a)
                break
    return out


def _order_substitution_once(system: AtomSystem, out: RewriteOutcome) -> bool:
    singles = _single_index(system)
    for a in system.double_atoms():
        for z, y in ((a.left1, a.left2), (a.left2, a.left1)):
            r = singles.get((z, y))
            if r is not None and r <= 0:
                _replace(system, a, MaxAtom(z, z, a.right, a.offset), out)
                return True
    return False


def rule_order_substitution(system: AtomSystem) -> RewriteOutcome:
    """``z + r >= y`` with ``r <= 0`` turns ``max(z,y) + r' >= x`` into ``z + r' >= x``."""
    out = RewriteOutcome()
    while _order_substitution_once(system, out):
        pass
    return out


def _negative_pair_once(system: AtomSystem, out: RewriteOutcome) -> bool:
    singles = _single_index(system)
    for a in system.double_atoms():
        y = a.right
        for x, z in ((a.left1, a.left2), (a.left2, a.left1)):
            r = singles.get((y, x))
            if r is not None and r + a.offset < 0:
                _replace(system, a, MaxAtom(z, z, y, a.offset), out)
                return True
    return False


def rule_negative_pair(system: AtomSystem) -> RewriteOutcome:
    """``y + r >= x`` and ``max(z,x) + r' >= y`` with ``r + r' < 0``: drop ``x`` from the max."""
    out = RewriteOutcome()
    while _negative_pair_once(system, out):
        pass
    return out


def saturate_rules(system: AtomSystem, limit: int | None = None) -> RewriteOutcome:
    """Apply the dominance and the two substitution rules until nothing changes.

    Every firing removes one two-variable atom, so the number of firings is
    bounded by the two-variable atom count on entry (or ``limit``).
    """
    if limit is None:
        limit = len(system.double_atoms())
    total = RewriteOutcome()
    fired = 0
    rules = (rule_atom_dominates, rule_order_substitution, rule_negative_pair)
    while True:
        for rule in rules:
            step = rule(system)
            if step.changed:
                fired += len(step.removed)
                total.extend(step)
                break
        else:
            return total
        if fired > limit:
            raise BoundExceeded(
                f"rule saturation fired {fired} times, bound {limit}",
                {"fired": fired, "limit": limit},
            )


ALL_RULES = {
    "reflexive": rule_reflexive,
    "same_args_dominance": rule_same_args_dominance,
    "atom_dominates": rule_atom_dominates,
    "order_substitution": rule_order_substitution,
    "negative_pair": rule_negative_pair,
}
