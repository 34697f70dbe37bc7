"""Shared hypothesis strategies."""

from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tenzan.expr import DECIMAL, PLAIN, ROOT_DENOMINATOR, Expr, Monomial, Term, fit_mode
from tenzan.radical import Radical
from tenzan.symbols import CHU, DAI, SHO, SYMBOLS

settings.register_profile("default", deadline=None)
settings.load_profile("default")

SMALL_SYMBOLS = [DAI, CHU, SHO, SYMBOLS.get("kou"), SYMBOLS.get("otsu"), SYMBOLS.get("ne")]

fractions = st.builds(
    Fraction,
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=1, max_value=24),
)
nonneg_fractions = st.builds(
    Fraction,
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=1, max_value=10**4),
)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 12, 18, 20, 50])


@st.composite
def radicals(draw, max_terms=3):
    raw = draw(st.lists(st.tuples(fractions, radicands), max_size=max_terms))
    return Radical(raw)


@st.composite
def monomials(draw):
    syms = draw(st.lists(st.sampled_from(SMALL_SYMBOLS), max_size=2))
    return Monomial.of((s, draw(st.integers(1, 2))) for s in syms)


@st.composite
def exprs(draw):
    """Canonical expressions as the parser would build them."""
    terms = []
    for _ in range(draw(st.integers(0, 3))):
        coef = draw(radicals(max_terms=2))
        mode = fit_mode(coef, draw(st.sampled_from([PLAIN, ROOT_DENOMINATOR, DECIMAL])))
        terms.append(Term(coef, draw(monomials()), mode))
    den = draw(st.sampled_from([Monomial(), Monomial.var(SMALL_SYMBOLS[3]), Monomial.var(SMALL_SYMBOLS[4])]))
    return Expr.build(terms, den)


@pytest.fixture
def stsn_path():
    from tenzan.cli import corpus_path

    return corpus_path("stsn")


@pytest.fixture
def kijimadaira_path():
    from tenzan.cli import corpus_path

    return corpus_path("kijimadaira")
