from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tenzan.engine import evaluate
from tenzan.notation import parse
from tenzan.radical import Radical, eval_fixed, radical_sqrt
from tenzan.symbols import DAI
from tenzan.units import UNITS, Quantity, QuantityError, format_quantity, parse_quantity, unit

SUN = unit("sun")
HALF = Fraction(1, 2)
SMALL = radical_sqrt(HALF) - Radical.of(HALF)  # sqrt(0.5) - 0.5


def sun(text):
    return parse_quantity(text).in_unit(SUN)


def test_unit_chain():
    assert [u.name for u in UNITS] == ["shaku", "sun", "bu", "rin", "mo"]
    assert sun("1 shaku") == Radical.of(10)
    assert sun("1 bu") == Radical.of(Fraction(1, 10))
    assert sun("1 mo") == Radical.of(Fraction(1, 1000))


@pytest.mark.parametrize(
    "text,value,approx",
    [
        ("2 sun 0 7 bu", Fraction(207, 100), False),
        ("2 bu 07 mo", Fraction(207, 1000), False),
        ("2 sun 0 7 bu …", Fraction(207, 100), True),
        ("2 bu 07 mo 有奇", Fraction(207, 1000), True),
        ("2.07 sun", Fraction(207, 100), False),
        ("1 shaku 2 sun", Fraction(12), False),
        ("2 sun 5 bu", Fraction(25, 10), False),
    ],
)
def test_parse_quantity(text, value, approx):
    q = parse_quantity(text)
    assert q.in_unit(SUN) == Radical.of(value)
    assert q.approx is approx


def test_both_historical_answers_differ_by_ten():
    assert sun("2 sun 0 7 bu") == 10 * sun("2 bu 07 mo")


@pytest.mark.parametrize("text", ["", "7 bu 2 sun", "2 sun 5", "3 furlong", "sun", "2 sun 07 8 9 mo bu"])
def test_parse_quantity_errors(text):
    with pytest.raises(QuantityError):
        parse_quantity(text)


def test_format_truncates_with_marker():
    assert format_quantity(Quantity.of(SMALL, "sun")) == "2 bu 0 rin 7 mo …"
    assert format_quantity(Quantity.of(SMALL, "shaku")) == "2 sun 0 bu 7 rin …"
    assert format_quantity(Quantity.of(SMALL * 10, "sun")) == "2 sun 0 bu 7 rin …"
    # truncation, never rounding: 0.2079 sun stays 2 bu 0 rin 7 mo
    assert format_quantity(Quantity.of(Fraction(2079, 10000), "sun")) == "2 bu 0 rin 7 mo …"


def test_format_exact():
    assert format_quantity(parse_quantity("5 sun")) == "5 sun"
    assert format_quantity(parse_quantity("0 sun")) == "0 sun"
    assert format_quantity(Quantity.of(Fraction(7, 4), "sun")) == "1 sun 7 bu 5 rin"
    assert format_quantity(Quantity.of(-1, "sun")) == "-1 sun"
    assert format_quantity(parse_quantity("2 sun 0 7 bu …")) == "2 sun 0 bu 7 rin …"


exact_amounts = st.builds(Fraction, st.integers(min_value=0, max_value=99999), st.just(1000))


@given(exact_amounts)
def test_parse_format_identity(x):
    # anything on the mo grid is printed exactly
    q = Quantity.of(x, "sun")
    text = format_quantity(q, places=4)
    assert "…" not in text
    back = parse_quantity(text)
    assert (back.value, back.approx) == (q.value, q.approx)


@given(st.integers(min_value=0, max_value=10**6))
def test_unit_telescoping(k):
    assert sun(f"{k} sun") == 10 * sun(f"{k} bu")


@given(st.fractions(min_value=0, max_value=1000).filter(lambda f: f.denominator < 50), st.integers(1, 100))
def test_scaling_law(q, lam):
    formula = parse("sho = (rt(5 bu) - 5 bu)*dai")
    base = evaluate(formula, {DAI: Quantity.of(q, SUN)}).in_unit(SUN)
    scaled = evaluate(formula, {DAI: Quantity.of(q * lam, SUN)}).in_unit(SUN)
    assert scaled == base * lam


def test_answers_checked_at_40_digits():
    formula = parse("sho = (rt(5 bu) - 5 bu)*dai")
    v = evaluate(formula, {DAI: parse_quantity("1 sun")})
    assert eval_fixed(v.in_unit(SUN), 40).startswith("0.2071067811")
    v = evaluate(formula, {DAI: parse_quantity("1 shaku")})
    assert eval_fixed(v.in_unit(SUN), 40).startswith("2.071067811")
