import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tenzan.expr import Expr
from tenzan.notation import parse_expr
from tenzan.soroban import DigitString, decimal_text, enumerate_interpretations, resolve_ambiguity
from tenzan.symbols import DAI
from tenzan.units import parse_quantity

TEMPLATE = "(rt(x) - x)*dai"
BIND = {DAI: parse_quantity("10 sun")}
TARGET = parse_quantity("2 sun 0 7 bu")


def test_enumerate_single_digit():
    got = enumerate_interpretations("5", range(-2, 3))
    assert [i.value for i in got] == [Fraction(5, 100), Fraction(1, 2), 5, 50, 500]
    assert [str(i) for i in got] == ["0.05", "0.5", "5", "50", "500"]


def test_enumerate_keeps_digits_and_offsets():
    got = enumerate_interpretations(DigitString("207"), [0, -3, -2])
    assert [i.offset for i in got] == [-3, -2, 0]
    assert [str(i) for i in got] == ["0.207", "2.07", "207"]


def test_enumerate_rejects_empty_range():
    with pytest.raises(ValueError):
        enumerate_interpretations("5", range(2, 1))


@pytest.mark.parametrize("bad", ["", "5a", "-5", "5.0"])
def test_digit_string_validation(bad):
    with pytest.raises(ValueError):
        DigitString(bad)


@given(st.text(alphabet="0123456789", min_size=1, max_size=6), st.integers(-6, 0), st.integers(0, 6))
def test_values_increase_with_offset(digits, lo, span):
    got = enumerate_interpretations(digits, range(lo, lo + span + 1))
    assert len(got) == span + 1
    if int(digits):
        assert all(a.value < b.value for a, b in zip(got, got[1:]))


def test_resolve_selects_half():
    survivors = resolve_ambiguity(TEMPLATE, "5", range(-2, 3), BIND, TARGET, Fraction(5, 1000))
    assert [str(s) for s in survivors] == ["0.5"]


def test_resolve_accepts_callable_template():
    def build(x):
        return parse_expr(TEMPLATE, env={"x": Expr.const(x)})

    survivors = resolve_ambiguity(build, "5", range(-2, 3), BIND, TARGET, Fraction(5, 1000))
    assert [str(s) for s in survivors] == ["0.5"]


def test_resolve_with_infinite_tolerance_keeps_all():
    assert len(resolve_ambiguity(TEMPLATE, "5", range(-2, 3), BIND, TARGET, math.inf)) == 5


def test_resolve_with_no_survivor():
    assert resolve_ambiguity(TEMPLATE, "7", range(-2, 3), BIND, TARGET, Fraction(5, 1000)) == []


def test_decimal_text():
    assert decimal_text(Fraction(1, 20)) == "0.05"
    assert decimal_text(Fraction(500)) == "500"
    assert decimal_text(Fraction(-207, 100)) == "-2.07"
