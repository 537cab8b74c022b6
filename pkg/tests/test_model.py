import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maxatom.model import (
    NEG_INF,
    AtomSystem,
    MaxAtom,
    all_neg_inf,
    atom,
    canonicalize,
    evaluate_atom,
    single,
    to_offset,
    verify,
    zeros,
)
from maxatom.oracle import kleene_descent

from conftest import systems

ext_values = st.one_of(st.just(NEG_INF), st.fractions(min_value=-20, max_value=20, max_denominator=6))
offsets = st.fractions(min_value=-10, max_value=10, max_denominator=6)


def vals(*xs):
    return {i + 1: (NEG_INF if x is None else Fraction(x)) for i, x in enumerate(xs)}


class TestExtValue:
    def test_neg_inf_is_singleton(self):
        assert type(NEG_INF)() is NEG_INF

    @given(offsets)
    def test_absorbs_offsets(self, r):
        assert NEG_INF + r is NEG_INF
        assert r + NEG_INF is NEG_INF

    @given(ext_values, ext_values, ext_values)
    def test_max_laws(self, a, b, c):
        assert max(a, NEG_INF) == a
        assert max(a, b) == max(b, a)
        assert max(max(a, b), c) == max(a, max(b, c))
        assert max(a, a) == a

    @given(st.fractions(min_value=-20, max_value=20))
    def test_below_every_finite(self, q):
        assert NEG_INF < q and q > NEG_INF and not q < NEG_INF
        assert NEG_INF <= NEG_INF and NEG_INF >= NEG_INF

    @pytest.mark.parametrize("text,expected", [
        ("3/2", Fraction(3, 2)), ("-0.25", Fraction(-1, 4)), ("4", Fraction(4)), ("6/4", Fraction(3, 2)),
    ])
    def test_offsets_are_reduced_rationals(self, text, expected):
        r = to_offset(text)
        assert r == expected and r.denominator == expected.denominator


class TestEvaluate:
    def test_all_neg_inf_holds(self):
        assert evaluate_atom(atom(1, 2, 3, 5), vals(None, None, None))

    def test_neg_inf_left_finite_right(self):
        assert not evaluate_atom(atom(1, 2, 3, 5), vals(None, None, 0))

    def test_finite(self):
        assert evaluate_atom(atom(1, 2, 3, -2), vals(2, 0, 0))

    @given(ext_values, ext_values, ext_values, offsets, st.fractions(min_value=0, max_value=5))
    def test_monotone(self, z, y, x, r, bump):
        a = MaxAtom(1, 2, 3, r)
        before = evaluate_atom(a, {1: z, 2: y, 3: x})
        if before:
            assert evaluate_atom(a, {1: z + bump, 2: y, 3: x})
            assert evaluate_atom(a, {1: z, 2: y, 3: x - bump})
            assert evaluate_atom(a, {1: z, 2: y, 3: NEG_INF})


class TestVerify:
    def test_empty_system(self):
        rep = verify(AtomSystem(3), zeros(3))
        assert rep.satisfied and rep.nontrivial and rep.violated == []

    def test_contradiction_at_zero(self):
        s = AtomSystem(2, [single(1, 2, -1), single(2, 1, -1)])
        rep = verify(s, zeros(2))
        assert not rep.satisfied
        assert sorted(rep.violated) == sorted([single(1, 2, -1), single(2, 1, -1)])

    def test_trivial_assignment(self):
        s = AtomSystem(2, [single(1, 2, -1), single(2, 1, -1)])
        rep = verify(s, all_neg_inf(2))
        assert rep.satisfied and not rep.nontrivial

    def test_domain_mismatch(self):
        with pytest.raises(ValueError):
            verify(AtomSystem(3), zeros(2))

    def test_all_neg_inf_satisfies_random_systems(self):
        rng = random.Random(7)
        for _ in range(1000):
            n = rng.randint(1, 6)
            s = AtomSystem(n, [
                MaxAtom(rng.randint(1, n), rng.randint(1, n), rng.randint(1, n), Fraction(rng.randint(-5, 5)))
                for _ in range(rng.randint(0, 10))
            ])
            assert verify(s, all_neg_inf(n)).satisfied


class TestCanonicalize:
    def test_swaps(self):
        assert canonicalize(MaxAtom(3, 1, 2, Fraction(1))) == MaxAtom(1, 3, 2, Fraction(1))

    def test_single_unchanged(self):
        a = MaxAtom(1, 1, 2, Fraction(1))
        assert canonicalize(a) is a

    @given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), offsets)
    def test_idempotent(self, z, y, x, r):
        a = MaxAtom(z, y, x, r)
        assert canonicalize(canonicalize(a)) == canonicalize(a)

    def test_preserves_evaluation_on_grid(self):
        levels = [NEG_INF] + [Fraction(k) for k in range(-3, 2)]
        for z, y, x in itertools.product(range(1, 4), repeat=3):
            for r in (-2, 0, 1):
                a = MaxAtom(z, y, x, Fraction(r))
                for point in itertools.product(levels, repeat=3):
                    v = dict(zip((1, 2, 3), point))
                    assert evaluate_atom(a, v) == evaluate_atom(canonicalize(a), v)


class TestAtomSystem:
    def test_set_semantics(self):
        s = AtomSystem(3, [MaxAtom(2, 1, 3, Fraction(1)), MaxAtom(1, 2, 3, Fraction(1))])
        assert len(s) == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            AtomSystem(2, [atom(1, 2, 3, 0)])

    def test_resolve_identity(self):
        assert AtomSystem(5).resolve(3) == 3

    def test_resolve_smaller_wins(self):
        s = AtomSystem(5)
        s.union(5, 2)
        assert s.resolve(5) == 2

    def test_resolve_transitive(self):
        s = AtomSystem(5)
        s.union(2, 5)
        s.union(1, 2)
        assert s.resolve(5) == 1

    def test_copy_is_independent(self):
        s = AtomSystem(3, [atom(1, 2, 3, 0)])
        t = s.copy()
        t.add(single(1, 2, 0))
        t.kill(3)
        assert len(s) == 1 and not s.is_dead(3)


@settings(max_examples=150, deadline=None)
@given(systems(max_vars=4, max_atoms=6), st.integers(-4, 4))
def test_solutions_closed_under_shift_and_max(system, c):
    sol = kleene_descent(system)
    if not sol.is_sat:
        return
    a = sol.assignment
    shifted = {v: x + c for v, x in a.items()}
    assert verify(system, shifted).satisfied
    # a second solution: kill a variable that nothing forces to be finite, if possible
    other = dict(a)
    for v in other:
        trial = dict(other)
        trial[v] = NEG_INF
        if verify(system, trial).satisfied:
            other = trial
    other = {v: x + c for v, x in other.items()}
    joined = {v: max(a[v], other[v]) for v in a}
    assert verify(system, joined).satisfied
