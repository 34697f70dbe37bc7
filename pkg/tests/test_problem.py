from fractions import Fraction
import math

import pytest

from tenzan.problem import ProblemFormatError, load_problem, parse_bindings, parse_problem, parse_tol, split_args
from tenzan.symbols import DAI
from tenzan.units import unit

GOOD = """\
name: demo   # trailing comment
source: a book
unknown dai chu sho
given halve: dai/2 = chu as 中徑   # first fact
step s1 = mul_both(halve, rt(2))
expect s1: dai*rt(2)/2 = chu*rt(2)
expect-column s1: <<END
中　二
二　｜
商　大
　　二
　　商
END
answer: 2 bu 07 mo …
verify: formula s1 with dai = 1 sun tol 0.01
"""


def test_parse_good_problem():
    p = parse_problem(GOOD)
    assert p.name == "demo"
    assert [s.ascii_alias for s in p.unknowns] == ["dai", "chu", "sho"]
    assert p.givens["halve"].note == "first fact"
    assert p.givens["halve"].equation.rhs_alias == "中徑"
    assert str(p.steps[0]) == "s1 = mul_both(halve, rt(2))"
    assert p.expect_columns["s1"].splitlines()[0] == "中　二"
    assert p.answer.approx
    assert p.verify.formula == "s1"
    assert p.verify.tol == Fraction(1, 100)
    assert p.verify.bindings[0][0] is DAI


@pytest.mark.parametrize(
    "text,line",
    [
        ("unknown dai\ngiven g: dai = \n", 2),
        ("unknown dai\nbogus line\n", 2),
        ("unknown zzz\n", 1),
        ("given g: dai = 1\ngiven g: dai = 2\n", 2),
        ("expect-column s: <<END\nabc\n", 1),
        ("answer: 2 furlong\n", 1),
        ("frobnicate: yes\n", 1),
    ],
)
def test_malformed_lines_report_line_numbers(text, line):
    with pytest.raises(ProblemFormatError) as info:
        parse_problem(text)
    assert info.value.line == line


@pytest.mark.parametrize(
    "text",
    [
        "expect nope: dai = 1\n",
        "given g: dai = 1\nverify: formula g with dai = 1 sun\n",
        "given g: dai = 1\nanswer: 1 sun\nverify: formula h with dai = 1 sun\n",
    ],
)
def test_cross_reference_errors(text):
    with pytest.raises(ProblemFormatError):
        parse_problem(text)


def test_helpers():
    assert split_args("a, rt(2), f(b, c)") == ("a", "rt(2)", "f(b, c)")
    assert split_args("") == ()
    assert parse_tol("inf") == math.inf
    assert parse_tol("0.005") == Fraction(5, 1000)
    with pytest.raises(ProblemFormatError):
        parse_tol("-1")
    (sym, q), = parse_bindings("dai = 1 shaku")
    assert sym is DAI and q.in_unit(unit("sun")).as_fraction() == 10


def test_corpus_files_load(stsn_path, kijimadaira_path):
    assert load_problem(stsn_path).name == "stsn-small-circle"
    k = load_problem(kijimadaira_path)
    assert "tablet" in k.techniques
    assert k.verify.formula == "tablet"
