import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from maxatom.model import AtomSystem, MaxAtom

GRID = [float("-inf")] + list(range(-8, 1))


def grid_points(n, levels=GRID):
    return np.array(list(itertools.product(levels, repeat=n)), dtype=float)


def solution_mask(system: AtomSystem, points: np.ndarray) -> np.ndarray:
    """Brute-force satisfying mask; written against the raw atom fields only."""
    ok = np.ones(len(points), dtype=bool)
    for a in system.atoms:
        lhs = np.maximum(points[:, a.left1 - 1], points[:, a.left2 - 1]) + float(a.offset)
        ok &= lhs >= points[:, a.right - 1]
    return ok


_POINT_CACHE = {}


def same_solutions(s1: AtomSystem, s2: AtomSystem) -> bool:
    n = s1.nvars
    if n not in _POINT_CACHE:
        _POINT_CACHE[n] = grid_points(n)
    pts = _POINT_CACHE[n]
    return bool(np.array_equal(solution_mask(s1, pts), solution_mask(s2, pts)))


@st.composite
def systems(draw, max_vars=4, max_atoms=6, lo=-3, hi=3, min_atoms=0):
    n = draw(st.integers(1, max_vars))
    var = st.integers(1, n)
    atoms = draw(st.lists(
        st.builds(MaxAtom, var, var, var, st.integers(lo, hi).map(Fraction)),
        min_size=min_atoms, max_size=max_atoms,
    ))
    return AtomSystem(n, atoms)


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
