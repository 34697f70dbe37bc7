"""Linear (modern) rendering; the output parses back to the same value and display."""

from __future__ import annotations

import re
from fractions import Fraction

from ..expr import DECIMAL, ROOT_DENOMINATOR, Block, Equation, Expr, Monomial, Term
from ..symbols import IROHA_ASCII

DECIMAL_WORDS = ("ko", "bu", "rin", "mo")


def decimal_words(v: Fraction) -> tuple[int, str]:
    """Write a nonnegative decimal with at most three places as ``(count, word)``."""
    for places, word in enumerate(DECIMAL_WORDS):
        scaled = v * 10**places
        if scaled.denominator == 1:
            return scaled.numerator, word
    raise ValueError(f"{v} needs more than three decimal places")


def _symbol_factors(m: Monomial) -> list[str]:
    out = []
    for s, e in m.powers:
        out.extend([s.ascii_alias] * e)
    return out


def component_parts(q: Fraction, d: int, mode: str) -> tuple[list[str], list[str]]:
    """Numerator-before-symbols, numerator-after-symbols and divisor factors
    for one ``q*sqrt(d)`` component (q > 0)."""
    if mode == DECIMAL:
        v = q * q * d if d > 1 else q
        n, word = decimal_words(v)
        return [f"rt({n} {word})" if d > 1 else f"({n} {word})"], [], []
    if mode == ROOT_DENOMINATOR and d > 1:
        top = q * d
        pre = [str(top.numerator)] if top.numerator != 1 else []
        div = ([str(top.denominator)] if top.denominator != 1 else []) + [f"rt({d})"]
        return pre, [], div
    pre = [str(q.numerator)] if q.numerator != 1 else []
    post = [f"rt({d})"] if d > 1 else []
    div = [str(q.denominator)] if q.denominator != 1 else []
    return pre, post, div


def _pieces(t: Term, den: Monomial) -> list[tuple[bool, str]]:
    out = []
    # irrational components first, matching how the formulas are written
    for q, d in sorted(t.coef.terms, key=lambda c: -c[1]):
        pre, post, div = component_parts(abs(q), d, t.mode)
        num = pre + _symbol_factors(t.mono) + post
        div = div + _symbol_factors(den)
        body = "*".join(num) or "1"
        if div:
            body += "/" + (div[0] if len(div) == 1 else "(" + "*".join(div) + ")")
        out.append((q < 0, body))
    return out


def _label(t: Term) -> str:
    return f"{IROHA_ASCII[t.label - 1]}: " if t.label is not None else ""


def render_expr(e: Expr) -> str:
    if e.is_zero():
        return "0"
    inline_den = e.den if (len(e.terms) == 1 and len(e.terms[0].coef.terms) == 1) else Monomial()
    chunks = []
    for t in e.terms:
        for k, (neg, body) in enumerate(_pieces(t, inline_den)):
            label = _label(t) if k == 0 else ""
            if not chunks:
                chunks.append(label + ("-" if neg else "") + body)
            else:
                chunks.append((" - " if neg else " + ") + label + body)
    text = "".join(chunks)
    if e.den and not inline_den:
        den = _symbol_factors(e.den)
        text = f"({text})/" + (den[0] if len(den) == 1 else "(" + "*".join(den) + ")")
    return text


def render_modern(v) -> str:
    if isinstance(v, Equation):
        text = f"{render_expr(v.lhs)} = {render_expr(v.rhs)}"
        return text + (f" as {v.rhs_alias}" if v.rhs_alias else "")
    if isinstance(v, Block):
        if not v.items:
            return "zero{ }"
        return "zero{ " + "; ".join(render_expr(i) for i in v.items) + " }"
    if isinstance(v, Expr):
        return render_expr(v)
    raise TypeError(f"cannot render {type(v).__name__}")


def canonical_text(v) -> str:
    """Whitespace-normalized comparison key.  Equation display aliases are
    excluded; they only affect column layout."""
    if isinstance(v, Equation) and v.rhs_alias:
        v = Equation(v.lhs, v.rhs)
    return re.sub(r"\s+", " ", render_modern(v)).strip()
