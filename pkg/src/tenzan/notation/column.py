"""Traditional columnar layout.

Each printed term becomes one vertical column of full-width cells, read top
to bottom; columns are read right to left.  Cell order inside a column:

    [iroha label] [stroke if negative] [divisor cells, bar] [coefficient] [unknowns] [radicand, 商]

Multipliers 2..3 of unknowns are written as tally strokes, everything else
(divisors, radicands, decimal counts) as kanji digits.  A multiplier of 1 is
implicit inside equations and blocks, but a standalone single-term quantity
spells it out (| 甲 is one 甲).  Negative terms carry
a leading stroke cell; this is a rendering convention, not a historical one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..expr import DECIMAL, ROOT_DENOMINATOR, Block, Equation, Expr, Monomial, Term
from ..symbols import IROHA
from .modern import decimal_words

BLANK = "　"
TALLY = "丨"
BAR = "｜"
STROKE = "＼"
ROOT = "商"
ZERO = "〇"
TERMINATOR = ("合", "矩", ZERO)
UNIT_GLYPHS = {"ko": "個", "bu": "分", "rin": "厘", "mo": "毛"}
KANJI_DIGITS = "〇一二三四五六七八九"
TALLY_MAX = 3


def kanji_digits(n: int) -> list[str]:
    return [KANJI_DIGITS[int(c)] for c in str(n)]


def multiplier_cells(n: int) -> list[str]:
    if n == 1:
        return []
    if n <= TALLY_MAX:
        return [TALLY] * n
    return kanji_digits(n)


@dataclass(frozen=True)
class ColumnLayout:
    columns: tuple[tuple[str, ...], ...]  # reading order: first column is rightmost
    owners: tuple[int, ...]  # index of the rendered term block owning each column

    @property
    def height(self) -> int:
        return max((len(c) for c in self.columns), default=0)

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def grid(self) -> list[list[str]]:
        h = self.height
        padded = [list(c) + [BLANK] * (h - len(c)) for c in reversed(self.columns)]
        return [[col[r] for col in padded] for r in range(h)]

    def to_text(self) -> str:
        return "\n".join("".join(row) for row in self.grid)

    def __str__(self) -> str:
        return self.to_text()


def _symbol_cells(m: Monomial) -> list[str]:
    out = []
    for s, e in m.powers:
        out.extend([s.glyph] * e)
    return out


def _component_cells(q: Fraction, d: int, mode: str) -> tuple[list[str], list[str], list[str]]:
    if mode == DECIMAL:
        n, word = decimal_words(q * q * d if d > 1 else q)
        return kanji_digits(n), [UNIT_GLYPHS[word]] + ([ROOT] if d > 1 else []), []
    if mode == ROOT_DENOMINATOR and d > 1:
        top = q * d
        div = (kanji_digits(top.denominator) if top.denominator != 1 else []) + kanji_digits(d) + [ROOT]
        return multiplier_cells(top.numerator), [], div
    post = kanji_digits(d) + [ROOT] if d > 1 else []
    div = kanji_digits(q.denominator) if q.denominator != 1 else []
    return multiplier_cells(q.numerator), post, div


def term_columns(t: Term, den: Monomial, unit_tally: bool = False) -> list[list[str]]:
    cols = []
    for k, (q, d) in enumerate(sorted(t.coef.terms, key=lambda c: -c[1])):
        pre, post, div = _component_cells(abs(q), d, t.mode)
        div = div + _symbol_cells(den)
        if unit_tally and not pre and not post and not div and abs(q) == 1:
            pre = [TALLY]
        body = pre + _symbol_cells(t.mono) + post
        if not body:
            body = [TALLY]
        cells = []
        if k == 0 and t.label is not None:
            cells.append(IROHA[t.label - 1])
        if q < 0:
            cells.append(STROKE)
        if div:
            cells.extend(div + [BAR])
        cells.extend(body)
        cols.append(cells)
    return cols


def expr_columns(e: Expr, standalone: bool = False) -> list[list[str]]:
    if e.is_zero():
        return [[ZERO]]
    cols = []
    lone = standalone and len(e.terms) == 1 and len(e.terms[0].coef.terms) == 1
    for t in e.terms:
        cols.extend(term_columns(t, e.den, unit_tally=lone))
    return cols


class _Builder:
    def __init__(self):
        self.columns: list[tuple[str, ...]] = []
        self.owners: list[int] = []
        self.owner = 0

    def add(self, cols: list[list[str]]):
        for c in cols:
            self.columns.append(tuple(c))
            self.owners.append(self.owner)
        self.owner += 1

    def gap(self):
        self.columns.append((BLANK,))
        self.owners.append(-1)

    def layout(self) -> ColumnLayout:
        return ColumnLayout(tuple(self.columns), tuple(self.owners))


def render_column(v) -> ColumnLayout:
    b = _Builder()
    if isinstance(v, Equation):
        b.add(expr_columns(v.lhs))
        b.gap()
        if v.rhs_alias:
            b.add([list(v.rhs_alias)])
        else:
            b.add(expr_columns(v.rhs))
    elif isinstance(v, Block):
        for item in v.items:
            b.add(expr_columns(item))
        b.add([list(TERMINATOR)])
    elif isinstance(v, Expr):
        b.add(expr_columns(v, standalone=True))
    else:
        raise TypeError(f"cannot render {type(v).__name__}")
    return b.layout()
