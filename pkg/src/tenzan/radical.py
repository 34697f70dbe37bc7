"""Exact arithmetic over the rationals extended by square roots.

A :class:`Radical` is a finite sum ``q1*sqrt(d1) + q2*sqrt(d2) + ...`` with
rational ``qi`` and distinct square-free ``di``.  Because square roots of
distinct square-free integers are linearly independent over Q, the canonical
term list is a unique representation: two Radicals are equal iff their term
tuples are equal, and a Radical is zero iff it has no terms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational as _RationalABC
from typing import Iterable, Union

Number = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    pass


class UnsupportedDivisor(ValueError):
    """Divisor spans more than one square root."""


class DomainError(ValueError):
    pass


@lru_cache(maxsize=4096)
def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` square-free."""
    if n < 0:
        raise DomainError("negative radicand")
    if n == 0:
        return 0, 1
    s, f = 1, 1
    m = n
    p = 2
    # after removing primes up to the cube root, the cofactor has at most
    # two prime factors: it is either a perfect square or square-free
    while p * p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    r = isqrt(m)
    if r * r == m:
        s *= r
    else:
        f *= m
    return s, f


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, _RationalABC)):
        return Fraction(q)
    raise TypeError(f"expected a rational, got {type(q).__name__}")


class Radical:
    """Immutable canonical sum of rational multiples of square roots."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple[Number, int]] = ()):
        acc: dict[int, Fraction] = {}
        for coef, rad in terms:
            coef = _as_fraction(coef)
            if rad < 0:
                raise DomainError("negative radicand")
            if coef == 0 or rad == 0:
                continue
            s, f = square_free_split(rad)
            acc[f] = acc.get(f, Fraction(0)) + coef * s
        self.terms: tuple[tuple[Fraction, int], ...] = tuple(
            (acc[d], d) for d in sorted(acc) if acc[d] != 0
        )
        self._hash = None

    @classmethod
    def of(cls, q: Number) -> Radical:
        return cls([(q, 1)])

    @classmethod
    def _raw(cls, terms: tuple[tuple[Fraction, int], ...]) -> Radical:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        for q, d in self.terms:
            if d == 1:
                return q
        return Fraction(0)

    def is_rational(self) -> bool:
        return all(d == 1 for _, d in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Radical.of(other)
        if not isinstance(other, Radical):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "Radical(0)"
        parts = []
        for q, d in self.terms:
            parts.append(str(q) if d == 1 else f"{q}*sqrt({d})")
        return "Radical(" + " + ".join(parts) + ")"

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> Radical:
        return Radical._raw(tuple((-q, d) for q, d in self.terms))

    def __add__(self, other) -> Radical:
        other = to_radical(other)
        return Radical(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other) -> Radical:
        return self + (-to_radical(other))

    def __rsub__(self, other) -> Radical:
        return to_radical(other) - self

    def __mul__(self, other) -> Radical:
        other = to_radical(other)
        out = []
        for q1, d1 in self.terms:
            for q2, d2 in other.terms:
                out.append((q1 * q2, d1 * d2))
        return Radical(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Radical:
        return radical_div(self, to_radical(other))

    def __rtruediv__(self, other) -> Radical:
        return radical_div(to_radical(other), self)

    def __float__(self) -> float:
        return eval_float(self)

    def sign(self) -> int:
        return radical_sign(self)

    def __lt__(self, other) -> bool:
        return radical_sign(self - to_radical(other)) < 0

    def __le__(self, other) -> bool:
        return radical_sign(self - to_radical(other)) <= 0

    def __gt__(self, other) -> bool:
        return radical_sign(self - to_radical(other)) > 0

    def __ge__(self, other) -> bool:
        return radical_sign(self - to_radical(other)) >= 0

    def __abs__(self) -> Radical:
        return -self if radical_sign(self) < 0 else self


ZERO = Radical()
ONE = Radical.of(1)


def to_radical(x) -> Radical:
    if isinstance(x, Radical):
        return x
    return Radical.of(_as_fraction(x))


def radical_normalize(raw: Iterable[tuple[Number, int]]) -> Radical:
    """Canonicalize a raw ``(coefficient, radicand)`` sequence."""
    return Radical(raw)


def radical_add(x: Radical, y: Radical) -> Radical:
    return x + y


def radical_mul(x: Radical, y: Radical) -> Radical:
    return x * y


def _smallest_prime(n: int) -> int:
    k = 2
    while k * k <= n:
        if n % k == 0:
            return k
        k += 1
    return n


def radical_div(x: Radical, y: Radical) -> Radical:
    """Exact quotient.  ``y`` is rationalized one prime at a time: writing
    ``y = A + B*sqrt(p)`` and multiplying through by ``A - B*sqrt(p)`` removes
    every radicand divisible by ``p`` from the divisor."""
    if not y:
        raise DivisionByZero("division by zero radical")
    while not y.is_rational():
        p = _smallest_prime(max(y.radicands))
        conj = Radical._raw(tuple((-q if d % p == 0 else q, d) for q, d in y.terms))
        x, y = x * conj, y * conj
    r = y.rational_part
    return Radical._raw(tuple((q / r, d) for q, d in x.terms))


def radical_sqrt(q: Number) -> Radical:
    """Square root of a nonnegative rational: sqrt(m/n) = sqrt(m*n)/n."""
    q = _as_fraction(q)
    if q < 0:
        raise DomainError(f"square root of negative value {q}")
    m, n = q.numerator, q.denominator
    return Radical([(Fraction(1, n), m * n)])


# -- numeric evaluation ------------------------------------------------------


def _scaled_bounds(x: Radical, k: int) -> tuple[Fraction, Fraction]:
    """Bounds ``lo <= x * 10**k <= hi`` from integer square roots."""
    scale = 10**k
    lo = hi = Fraction(0)
    for q, d in x.terms:
        if d == 1:
            lo += q * scale
            hi += q * scale
            continue
        s = isqrt(d * scale * scale)
        # d is square-free and > 1, so s < sqrt(d)*scale < s + 1
        a, b = q * s, q * (s + 1)
        if q < 0:
            a, b = b, a
        lo += a
        hi += b
    return lo, hi


def radical_sign(x: Radical) -> int:
    if not x.terms:
        return 0
    if len(x.terms) == 1:
        return 1 if x.terms[0][0] > 0 else -1
    k = 20
    while True:
        lo, hi = _scaled_bounds(x, k)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        # a nonzero canonical Radical is bounded away from zero, so this ends
        k *= 2


def _trunc(v: Fraction) -> int:
    n = v.numerator // v.denominator
    if n < 0 and n * v.denominator != v.numerator:
        n += 1
    return n


def eval_fixed(x: Radical, digits: int) -> str:
    """Decimal expansion of ``x`` truncated toward zero to ``digits`` places.

    Pure integer arithmetic; the guard precision grows until both interval
    ends truncate to the same string.
    """
    if digits < 1 or digits > 100:
        raise ValueError("digits must be in 1..100")
    k = digits + 10
    while True:
        lo, hi = _scaled_bounds(x, k)
        shift = Fraction(1, 10 ** (k - digits))
        tlo, thi = _trunc(lo * shift), _trunc(hi * shift)
        if tlo == thi and (lo == hi or (lo > 0) == (hi > 0)):
            break
        k += 20
    neg = lo < 0
    mag = str(abs(tlo)).rjust(digits + 1, "0")
    return ("-" if neg else "") + mag[:-digits] + "." + mag[-digits:]


def eval_float(x: Radical) -> float:
    """Nearest binary64 to ``x`` (up to a tie at the last bit)."""
    if not x.terms:
        return 0.0
    k = 40
    while True:
        lo, hi = _scaled_bounds(x, k)
        mid = (lo + hi) / 2
        if mid != 0 and (hi - lo) <= abs(mid) * Fraction(1, 10**25):
            return float(mid / 10**k)
        k += 40


def to_fraction_approx(x: Radical, digits: int = 40) -> Fraction:
    """Truncated decimal value of ``x`` as an exact Fraction."""
    s = eval_fixed(x, digits)
    return Fraction(s)
