"""Edo length units (shaku, sun, bu, rin, mo) and mixed-unit quantities."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .radical import Radical, eval_fixed, to_radical


@dataclass(frozen=True)
class Unit:
    name: str
    glyph: str
    scale: Fraction  # in shaku

    @property
    def index(self) -> int:
        return UNITS.index(self)


UNITS = (
    Unit("shaku", "尺", Fraction(1)),
    Unit("sun", "寸", Fraction(1, 10)),
    Unit("bu", "分", Fraction(1, 100)),
    Unit("rin", "厘", Fraction(1, 1000)),
    Unit("mo", "毛", Fraction(1, 10000)),
)
_BY_NAME = {u.name: u for u in UNITS} | {u.glyph: u for u in UNITS}
SHAKU, SUN, BU, RIN, MO = UNITS

APPROX_MARKS = ("…", "...", "有奇")


class QuantityError(ValueError):
    pass


def unit(name: str) -> Unit:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise QuantityError(f"unknown unit {name!r}") from None


@dataclass(frozen=True)
class Quantity:
    value: Radical  # exact, in shaku
    display_unit: Unit = SUN
    approx: bool = False

    @classmethod
    def of(cls, amount, u: Unit | str, approx: bool = False) -> Quantity:
        u = unit(u) if isinstance(u, str) else u
        return cls(to_radical(amount) * u.scale, u, approx)

    def in_unit(self, u: Unit | str | None = None) -> Radical:
        u = self.display_unit if u is None else (unit(u) if isinstance(u, str) else u)
        return self.value / u.scale

    def __float__(self) -> float:
        return float(self.in_unit())

    def scaled(self, factor) -> Quantity:
        return Quantity(self.value * to_radical(factor), self.display_unit, self.approx)

    def __str__(self) -> str:
        return format_quantity(self)


_TOKEN = re.compile(r"\s*(-?[0-9]+(?:\.[0-9]+)?|[A-Za-z]+|[尺寸分厘毛]|…|\.\.\.|有奇)")


def parse_quantity(text: str) -> Quantity:
    """Parse mixed-unit text such as ``"2 sun 0 7 bu"`` or ``"2 bu 07 mo"``.

    The first group is a count of the first unit named.  Digits after that
    fill successive decimal places starting one place below the previous
    digit, and each later unit name must fall on one of the places its own
    digit group covers.
    """
    pos, text = 0, text.strip()
    words = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise QuantityError(f"cannot read quantity at {text[pos:]!r}")
        words.append(m.group(1))
        pos = m.end()
    approx = False
    while words and words[-1] in APPROX_MARKS:
        approx = True
        words.pop()
    if not words:
        raise QuantityError("empty quantity")

    total = Fraction(0)
    first: Unit | None = None
    negative = False
    last_place: int | None = None  # unit index of the last digit written
    group: list[str] = []
    for w in words:
        if w[0].isdigit() or w[0] == "-":
            group.append(w)
            continue
        u = unit(w)
        if not group:
            raise QuantityError(f"unit {w!r} without a number")
        if first is None:
            if len(group) != 1:
                raise QuantityError("leading count must be a single number")
            count = Fraction(group[0])
            negative = count < 0
            total += abs(count) * u.scale
            first, last_place = u, u.index
        else:
            digits = "".join(group)
            if not digits.isdigit():
                raise QuantityError(f"expected digits before {w!r}, got {digits!r}")
            start = last_place + 1
            end = start + len(digits) - 1
            if not start <= u.index <= end:
                raise QuantityError(f"unit {w!r} out of order after {UNITS[last_place].name!r}")
            if end >= len(UNITS):
                raise QuantityError("digits run past the smallest unit")
            for k, c in enumerate(digits):
                total += int(c) * UNITS[start + k].scale
            last_place = end
        group = []
    if group:
        raise QuantityError("trailing number without a unit")
    return Quantity(to_radical(-total if negative else total), first, approx)


def _truncated_digits(w: Radical, frac_places: int) -> tuple[int, str]:
    s = eval_fixed(abs(w), max(frac_places, 1))
    whole, _, frac = s.partition(".")
    return int(whole), frac[:frac_places]


def format_quantity(q: Quantity, places: int = 2) -> str:
    """Truncating mixed-unit text with ``places`` digits after the leading
    unit; a trailing ``…`` marks a dropped nonzero remainder or a quantity
    that was already approximate."""
    if places < 1:
        raise ValueError("places must be >= 1")
    d = q.display_unit.index
    w = q.in_unit()
    whole, frac = _truncated_digits(w, len(UNITS) - 1 - d)
    shown: list[tuple[int, int]] = []  # (digit or count, unit index)
    if whole:
        shown.append((whole, d))
        start = 0
    else:
        start = next((k for k, c in enumerate(frac) if c != "0"), None)
        if start is not None:
            shown.append((int(frac[start]), d + 1 + start))
            start += 1
    if shown:
        for k in range(start, min(start + places, len(frac))):
            shown.append((int(frac[k]), d + 1 + k))
        while len(shown) > 1 and shown[-1][0] == 0:
            shown.pop()
    shown_value = sum((Fraction(n) * UNITS[i].scale for n, i in shown), Fraction(0))
    negative = q.value.sign() < 0
    approx = q.approx or abs(q.value) != to_radical(shown_value)
    if not shown:
        text = f"0 {q.display_unit.name}"
    else:
        text = " ".join(f"{n} {UNITS[i].name}" for n, i in shown)
        if negative:
            text = "-" + text
    return text + " …" if approx else text


FRACTION_WORDS = {"ko": Fraction(1), "bu": Fraction(1, 10), "rin": Fraction(1, 100), "mo": Fraction(1, 1000)}


def fraction_word_value(n, word: str) -> Fraction:
    """Read a count with a fraction word: bu 1/10, rin 1/100, mo 1/1000, ko 1."""
    return Fraction(n) * FRACTION_WORDS[word]


__all__ = [
    "APPROX_MARKS",
    "BU",
    "MO",
    "Quantity",
    "QuantityError",
    "RIN",
    "SHAKU",
    "SUN",
    "UNITS",
    "Unit",
    "FRACTION_WORDS",
    "format_quantity",
    "fraction_word_value",
    "parse_quantity",
    "unit",
]
