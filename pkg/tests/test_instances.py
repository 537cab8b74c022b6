from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maxatom.instances import (
    MODES,
    ParseError,
    emit_instance,
    emit_solution,
    generate,
    parse_instance,
    parse_solution,
    planted_instance,
)
from maxatom.model import NEG_INF, AtomSystem, atom, verify
from maxatom.oracle import kleene_descent

from conftest import systems


class TestParse:
    def test_basic(self):
        s = parse_instance("maxatom 1\nvars 3\natom 1 2 3 -2\n")
        assert s == AtomSystem(3, [atom(1, 2, 3, -2)])

    def test_rational_literal(self):
        s = parse_instance("maxatom 1\nvars 3\natom 1 2 3 3/2\n")
        (a,) = s.atoms
        assert a.offset == Fraction(3, 2)

    def test_decimal_literal(self):
        (a,) = parse_instance("maxatom 1\nvars 2\natom 1 1 2 -0.75\n").atoms
        assert a.offset == Fraction(-3, 4)

    def test_comments_and_blank_lines(self):
        text = "# header\nmaxatom 1\n\nvars 2  # two\natom 2 1 2 0 # note\n"
        assert parse_instance(text) == AtomSystem(2, [atom(1, 2, 2, 0)])

    def test_canonical_order(self):
        (a,) = parse_instance("maxatom 1\nvars 3\natom 3 1 2 1\n").atoms
        assert (a.left1, a.left2) == (1, 3)

    @pytest.mark.parametrize("text,line", [
        ("maxatom 1\nvars 3\natom 1 2 9 0\n", 3),
        ("maxatom 2\nvars 3\n", 1),
        ("maxatom 1\nvars x\n", 2),
        ("maxatom 1\nvars 2\n\natom 1 2 1 abc\n", 4),
        ("maxatom 1\nvars 2\natom 1 2 1\n", 3),
        ("maxatom 1\nvars 2\natom 1 2 1 1/0\n", 3),
        ("maxatom 1\nvars 2\natom 0 2 1 1\n", 3),
    ])
    def test_errors_report_line(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_instance(text)
        assert info.value.line == line
        assert f"line {line}" in str(info.value)

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_instance("# nothing\n")


class TestRoundTrip:
    @settings(max_examples=200, deadline=None)
    @given(systems(max_vars=5, max_atoms=8))
    def test_parse_emit(self, system):
        text = emit_instance(system)
        back = parse_instance(text)
        assert back == system
        assert emit_instance(back) == text

    def test_fractional(self):
        s = AtomSystem(2, [atom(1, 2, 1, Fraction(-7, 3))])
        assert parse_instance(emit_instance(s)) == s

    def test_solution(self):
        values = {1: Fraction(0), 2: NEG_INF, 3: Fraction(-5, 2)}
        text = emit_solution(values)
        assert text == "status sat\nx1 0\nx2 -inf\nx3 -5/2\n"
        assert parse_solution(text) == ("sat", values)

    def test_trivial_solution(self):
        assert emit_solution(None) == "status trivial\n"
        assert emit_solution({1: NEG_INF}) == "status trivial\n"
        assert parse_solution("status trivial\n") == ("trivial", None)

    def test_bad_solution(self):
        with pytest.raises(ParseError):
            parse_solution("status maybe\n")
        with pytest.raises(ParseError):
            parse_solution("status sat\nx1 0\nx1 1\n")


class TestGenerate:
    @pytest.mark.parametrize("mode", MODES)
    def test_deterministic(self, mode):
        a = generate(5, 8, (-3, 3), seed=42, mode=mode)
        b = generate(5, 8, (-3, 3), seed=42, mode=mode)
        assert emit_instance(a) == emit_instance(b)

    @pytest.mark.parametrize("mode", MODES)
    def test_shape(self, mode):
        s = generate(6, 10, (-5, 5), seed=3, mode=mode)
        assert s.nvars == 6 and 1 <= len(s) <= 10
        assert all(-5 <= a.offset <= 5 for a in s.atoms)

    def test_seeds_differ(self):
        outs = {emit_instance(generate(5, 8, (-3, 3), seed=k)) for k in range(20)}
        assert len(outs) > 15

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            generate(3, 3, mode="nope")

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 10), st.integers(0, 10 ** 6))
    def test_planted_is_always_sat(self, n, m, seed):
        s, witness = planted_instance(n, m, (-5, 5), seed)
        rep = verify(s, witness)
        assert rep.satisfied and rep.nontrivial
        assert kleene_descent(s).is_sat
        assert kleene_descent(generate(n, m, (-5, 5), seed, "planted")).is_sat

    def test_negative_cycles_are_trivial(self):
        for seed in range(30):
            s = generate(5, 5, (-3, -1), seed, "cycles")
            assert kleene_descent(s).kind == "trivial"
