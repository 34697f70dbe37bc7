"""Polynomial fractions over :class:`Radical` coefficients in named unknowns.

An :class:`Expr` is ``(sum of coefficient*monomial) / monomial``.  Scalar
divisors are always absorbed into the (rationalized) coefficients; how a
coefficient is *printed* (``a*rt(2)/2`` vs ``a/rt(2)`` vs ``rt(5 bu)*a``) is
recorded per term as a display mode, separate from the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .radical import ONE as R_ONE
from .radical import ZERO as R_ZERO
from .radical import DivisionByZero, Radical, UnsupportedDivisor, to_radical
from .symbols import SYMBOLS, Symbol

PLAIN = "plain"
ROOT_DENOMINATOR = "radical-denominator"
DECIMAL = "decimal-radical"
MODES = (PLAIN, ROOT_DENOMINATOR, DECIMAL)


class NotLinearInSymbol(ValueError):
    pass


class UnboundSymbol(KeyError):
    pass


# -- monomials ---------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    powers: tuple[tuple[Symbol, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[Symbol, int] | Iterable[tuple[Symbol, int]]) -> Monomial:
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc: dict[Symbol, int] = {}
        for s, e in items:
            acc[s] = acc.get(s, 0) + e
        if any(e < 0 for e in acc.values()):
            raise ValueError("negative exponent")
        return cls(tuple(sorted(((s, e) for s, e in acc.items() if e), key=lambda p: p[0].rank)))

    @classmethod
    def var(cls, s: Symbol) -> Monomial:
        return cls(((s, 1),))

    def as_dict(self) -> dict[Symbol, int]:
        return dict(self.powers)

    def __bool__(self) -> bool:
        # truthy when non-constant
        return bool(self.powers)

    def degree(self, s: Symbol | None = None) -> int:
        if s is None:
            return sum(e for _, e in self.powers)
        return self.as_dict().get(s, 0)

    def symbols(self) -> list[Symbol]:
        return [s for s, _ in self.powers]

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial.of(self.powers + other.powers)

    def divides(self, other: Monomial) -> bool:
        o = other.as_dict()
        return all(o.get(s, 0) >= e for s, e in self.powers)

    def __truediv__(self, other: Monomial) -> Monomial:
        d = self.as_dict()
        for s, e in other.powers:
            d[s] = d.get(s, 0) - e
        return Monomial.of(d)

    def gcd(self, other: Monomial) -> Monomial:
        o = other.as_dict()
        return Monomial.of((s, min(e, o.get(s, 0))) for s, e in self.powers)

    def lcm(self, other: Monomial) -> Monomial:
        d = self.as_dict()
        for s, e in other.powers:
            d[s] = max(d.get(s, 0), e)
        return Monomial.of(d)

    def without(self, s: Symbol) -> Monomial:
        return Monomial(tuple(p for p in self.powers if p[0] != s))

    def sort_key(self) -> tuple[int, ...]:
        vec = [0] * len(SYMBOLS)
        for s, e in self.powers:
            vec[s.rank] = -e
        return tuple(vec)

    def __repr__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(s.ascii_alias + (f"^{e}" if e > 1 else "") for s, e in self.powers)


CONST = Monomial()


# -- display modes -----------------------------------------------------------


def _decimal_ok(r: Fraction) -> bool:
    return (r * 1000).denominator == 1


def mode_fits(coef: Radical, mode: str) -> bool:
    if mode == PLAIN:
        return True
    if mode == ROOT_DENOMINATOR:
        return len(coef.terms) == 1 and coef.terms[0][1] > 1
    if mode == DECIMAL:
        if not coef.terms:
            return False
        return all(_decimal_ok(q * q * d if d > 1 else abs(q)) for q, d in coef.terms)
    raise ValueError(f"unknown display mode {mode!r}")


def fit_mode(coef: Radical, mode: str) -> str:
    return mode if mode_fits(coef, mode) else PLAIN


def combine_modes(m1: str, m2: str) -> str:
    if DECIMAL in (m1, m2):
        return DECIMAL
    if ROOT_DENOMINATOR in (m1, m2):
        return ROOT_DENOMINATOR
    return PLAIN


# -- terms and expressions ---------------------------------------------------


@dataclass(frozen=True)
class Term:
    coef: Radical
    mono: Monomial = CONST
    mode: str = PLAIN
    label: int | None = None  # iroha index, 1-based

    def value_key(self) -> tuple[Radical, Monomial]:
        return self.coef, self.mono


def _merge(terms: Iterable[Term]) -> tuple[Term, ...]:
    acc: dict[Monomial, Term] = {}
    for t in terms:
        prev = acc.get(t.mono)
        if prev is None:
            acc[t.mono] = t
        else:
            acc[t.mono] = Term(
                prev.coef + t.coef,
                t.mono,
                prev.mode,
                prev.label if prev.label is not None else t.label,
            )
    out = []
    for mono in sorted(acc, key=Monomial.sort_key):
        t = acc[mono]
        if t.coef:
            out.append(replace(t, mode=fit_mode(t.coef, t.mode)))
    return tuple(out)


@dataclass(frozen=True)
class Expr:
    terms: tuple[Term, ...] = ()
    den: Monomial = CONST

    @classmethod
    def build(cls, terms: Iterable[Term], den: Monomial = CONST) -> Expr:
        merged = _merge(terms)
        if den and merged:
            g = den
            for t in merged:
                g = g.gcd(t.mono)
            if g:
                den = den / g
                merged = tuple(replace(t, mono=t.mono / g) for t in merged)
        if not merged:
            den = CONST
        return cls(merged, den)

    @classmethod
    def const(cls, value, mode: str = PLAIN) -> Expr:
        r = to_radical(value)
        return cls.build([Term(r, CONST, mode)])

    @classmethod
    def symbol(cls, s: Symbol) -> Expr:
        return cls((Term(R_ONE, Monomial.var(s)),))

    @property
    def denominator(self) -> tuple[Radical, Monomial]:
        return R_ONE, self.den

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.den and all(not t.mono for t in self.terms)

    def constant_value(self) -> Radical:
        if not self.is_constant():
            raise ValueError("expression is not constant")
        return self.terms[0].coef if self.terms else R_ZERO

    def free_symbols(self) -> set[Symbol]:
        out = set(self.den.symbols())
        for t in self.terms:
            out.update(t.mono.symbols())
        return out

    def value_key(self):
        return tuple(t.value_key() for t in self.terms), self.den

    def same_value(self, other: Expr) -> bool:
        return self.value_key() == other.value_key()

    def strip_display(self) -> Expr:
        return Expr(tuple(Term(t.coef, t.mono) for t in self.terms), self.den)

    def with_mode(self, mode: str) -> Expr:
        return Expr(tuple(replace(t, mode=fit_mode(t.coef, mode)) for t in self.terms), self.den)

    def with_label(self, label: int | None) -> Expr:
        return Expr(tuple(replace(t, label=label if i == 0 else None) for i, t in enumerate(self.terms)), self.den)

    def unlabeled(self) -> Expr:
        return Expr(tuple(replace(t, label=None) for t in self.terms), self.den)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> Expr:
        return Expr(tuple(replace(t, coef=-t.coef) for t in self.terms), self.den)

    def __add__(self, other) -> Expr:
        return expr_arith("add", self, _lift(other))

    def __radd__(self, other) -> Expr:
        return expr_arith("add", _lift(other), self)

    def __sub__(self, other) -> Expr:
        return expr_arith("sub", self, _lift(other))

    def __rsub__(self, other) -> Expr:
        return expr_arith("sub", _lift(other), self)

    def __mul__(self, other) -> Expr:
        return expr_arith("mul", self, _lift(other))

    def __rmul__(self, other) -> Expr:
        return expr_arith("mul", _lift(other), self)

    def __truediv__(self, other) -> Expr:
        return expr_arith("div", self, _lift(other))

    def evaluate(self, bindings: Mapping[Symbol, Radical]) -> Radical:
        """Exact value with every free symbol bound to a Radical."""
        missing = self.free_symbols() - set(bindings)
        if missing:
            names = ", ".join(sorted(s.ascii_alias for s in missing))
            raise UnboundSymbol(f"unbound symbol(s): {names}")

        def mono_value(m: Monomial) -> Radical:
            v = R_ONE
            for s, e in m.powers:
                for _ in range(e):
                    v = v * to_radical(bindings[s])
            return v

        num = R_ZERO
        for t in self.terms:
            num = num + t.coef * mono_value(t.mono)
        return num / mono_value(self.den)


def _lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, Symbol):
        return Expr.symbol(x)
    return Expr.const(x)


def _scale_terms(e: Expr, m: Monomial) -> list[Term]:
    return [replace(t, mono=t.mono * m) for t in e.terms]


def expr_arith(op: str, x: Expr, y: Expr) -> Expr:
    if op == "add":
        den = x.den.lcm(y.den)
        return Expr.build(_scale_terms(x, den / x.den) + _scale_terms(y, den / y.den), den)
    if op == "sub":
        return expr_arith("add", x, -y)
    if op == "mul":
        keep_x_labels = y.is_constant()
        keep_y_labels = x.is_constant()
        out = []
        for a in x.terms:
            for b in y.terms:
                label = a.label if keep_x_labels else (b.label if keep_y_labels else None)
                out.append(Term(a.coef * b.coef, a.mono * b.mono, combine_modes(a.mode, b.mode), label))
        return Expr.build(out, x.den * y.den)
    if op == "div":
        if y.is_zero():
            raise DivisionByZero("division by zero expression")
        if len(y.terms) != 1:
            raise UnsupportedDivisor("division by a polynomial with several terms")
        (b,) = y.terms
        out = []
        for a in x.terms:
            mode = a.mode
            if b.mode == DECIMAL:
                mode = DECIMAL
            elif not b.coef.is_rational() and mode == PLAIN:
                mode = ROOT_DENOMINATOR
            out.append(Term(a.coef / b.coef, a.mono * y.den, mode, a.label))
        return Expr.build(out, x.den * b.mono)
    raise ValueError(f"unknown operation {op!r}")


def power(e: Expr, k: int) -> Expr:
    out = Expr.const(1)
    for _ in range(k):
        out = out * e
    return out


def substitute(e: Expr, s: Symbol, replacement: Expr) -> Expr:
    """Replace every occurrence of ``s`` in ``e`` by ``replacement``."""
    if replacement.den:
        raise UnsupportedDivisor("replacement must have a scalar denominator")
    if s not in e.free_symbols():
        return e
    total = Expr()
    for t in e.terms:
        k = t.mono.degree(s)
        rest = Expr((Term(t.coef, t.mono.without(s), t.mode, t.label),))
        piece = rest * power(replacement, k) if k else rest
        if t.label is not None and piece.terms:
            piece = piece.with_label(t.label)
        total = total + piece
    kd = e.den.degree(s)
    if kd:
        total = Expr.build(total.terms, e.den.without(s)) / power(replacement, kd)
    else:
        total = Expr.build(total.terms, e.den)
    return total


@dataclass(frozen=True)
class Equation:
    lhs: Expr
    rhs: Expr
    rhs_alias: str | None = None

    def same_value(self, other: Equation) -> bool:
        return self.lhs.same_value(other.lhs) and self.rhs.same_value(other.rhs)

    def difference(self) -> Expr:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class Block:
    """Labeled terms written one per row and declared to sum to zero."""

    items: tuple[Expr, ...] = field(default_factory=tuple)

    def total(self) -> Expr:
        out = Expr()
        for item in self.items:
            out = out + item.unlabeled()
        return out

    def same_value(self, other: Block) -> bool:
        return len(self.items) == len(other.items) and all(
            a.same_value(b) for a, b in zip(self.items, other.items)
        )


def _linear_split(e: Expr, s: Symbol) -> tuple[Radical, Monomial, list[Term]]:
    """Split the numerator of ``e`` as ``coef*cofactor*s + rest``.  The
    denominator can be dropped: ``e == 0`` exactly when its numerator is."""
    if s in e.den.symbols():
        raise NotLinearInSymbol(f"{s.ascii_alias} appears in a denominator")
    coef = R_ZERO
    cofactor = None
    rest = []
    for t in e.terms:
        k = t.mono.degree(s)
        if k == 0:
            rest.append(t)
            continue
        if k != 1 or (cofactor is not None and t.mono.without(s) != cofactor):
            raise NotLinearInSymbol(f"term {t.mono!r} is not linear with a single coefficient in {s.ascii_alias}")
        cofactor = t.mono.without(s)
        coef = coef + t.coef
    if not coef:
        raise NotLinearInSymbol(f"{s.ascii_alias} does not occur linearly")
    return coef, cofactor, rest


def solve_expr(e: Expr, s: Symbol) -> Expr:
    """Solve ``e == 0`` for ``s``."""
    coef, cofactor, rest = _linear_split(e, s)
    neg_rest = Expr.build(replace(t, coef=-t.coef, label=None) for t in rest)
    if cofactor:
        return neg_rest / Expr.build([Term(coef, cofactor)])
    if coef == R_ONE:
        return neg_rest
    if coef == -R_ONE:
        return Expr.build(replace(t, coef=-t.coef) for t in neg_rest.terms)
    return neg_rest / Expr.const(coef)


def solve_linear(eq: Equation, s: Symbol) -> Expr:
    return solve_expr(eq.lhs - eq.rhs, s)
