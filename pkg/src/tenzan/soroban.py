"""Place-value readings of a digit string laid on the soroban.

Soroban rows carry digits but no decimal point, so the same beads can be
read at any power of ten.  :func:`resolve_ambiguity` keeps the readings
that make a formula hit a stated answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .expr import Expr, Symbol
from .radical import DomainError, to_radical
from .notation.parser import UnsupportedRadicand, parse_expr
from .units import Quantity

HOLE = "x"


def _exact(tol) -> Fraction:
    return Fraction(str(tol)) if isinstance(tol, float) else Fraction(tol)


@dataclass(frozen=True)
class DigitString:
    digits: str

    def __post_init__(self):
        if not self.digits or not self.digits.isdigit() or not self.digits.isascii():
            raise ValueError(f"not a digit string: {self.digits!r}")

    def __int__(self) -> int:
        return int(self.digits)


@dataclass(frozen=True)
class Interpretation:
    digits: DigitString
    offset: int
    value: Fraction

    def __str__(self) -> str:
        return decimal_text(self.value)


def decimal_text(v: Fraction) -> str:
    """Plain decimal notation for a terminating fraction (0.05, 500)."""
    sign = "-" if v < 0 else ""
    v = abs(v)
    places = 0
    while (v * 10**places).denominator != 1:
        places += 1
    n = str((v * 10**places).numerator).rjust(places + 1, "0")
    if not places:
        return sign + n
    return f"{sign}{n[:-places]}.{n[-places:]}"


def enumerate_interpretations(d: DigitString | str, offsets: Iterable[int]) -> list[Interpretation]:
    d = DigitString(d) if isinstance(d, str) else d
    offsets = sorted(offsets)
    if not offsets:
        raise ValueError("empty offset range")
    return [Interpretation(d, k, Fraction(int(d)) * Fraction(10) ** k) for k in offsets]


Template = Union[str, Callable[[Fraction], Expr]]


def _instantiate(template: Template, value: Fraction) -> Expr:
    if callable(template):
        return template(value)
    return parse_expr(template, env={HOLE: Expr.const(value)})


def resolve_ambiguity(
    template: Template,
    d: DigitString | str,
    offsets: Iterable[int],
    bindings: Mapping[Symbol, Quantity],
    target: Quantity,
    tol,
) -> list[Interpretation]:
    """Readings ``x`` of ``d`` with ``|template[x] - target| <= tol``,
    ``tol`` measured in the target's display unit (``math.inf`` keeps all)."""
    from .engine import evaluate_expr

    out = []
    for interp in enumerate_interpretations(d, offsets):
        try:
            expr = _instantiate(template, interp.value)
        except (DomainError, UnsupportedRadicand):
            # a negative radicand has no reading; report as unsatisfiable
            continue
        result = evaluate_expr(expr, bindings)
        if tol == math.inf:
            out.append(interp)
            continue
        gap = abs(result.in_unit(target.display_unit) - target.in_unit())
        if gap <= to_radical(_exact(tol)):
            out.append(interp)
    return out
