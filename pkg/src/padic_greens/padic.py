"""Exact rationals with p-adic valuations, and log-scale values q*log(p).

Valuations are plain ints; the valuation of zero is the sentinel ``INFINITY``
(``math.inf``), which orders above every int and absorbs addition, so
ultrametric identities need no special-casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .errors import BadPrime, ZeroArgument, ZeroVector

INFINITY = math.inf

Rational = Union[int, Fraction]
Valuation = Union[int, float]  # float only ever as INFINITY

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool) or not is_prime(self.p):
            raise BadPrime(f"not a prime: {self.p!r}")


def vp_int(n: int, p: int) -> Valuation:
    if n == 0:
        return INFINITY
    n = abs(n)
    v = 0
    # strip large powers first; cheap for big p-divisible integers
    pk, k = p, 1
    while n % pk == 0:
        n //= pk
        v += k
        pk, k = pk * pk, 2 * k
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: Rational, p: int) -> Valuation:
    """v_p of an int or Fraction."""
    if isinstance(x, int):
        return vp_int(x, p)
    if x == 0:
        return INFINITY
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def to_fraction(x) -> Fraction:
    if isinstance(x, PadicRational):
        return x.value
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    return Fraction(s)


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def round_sig(x: float, digits: int = 12) -> float:
    """Float rendered to `digits` significant digits (output boundary only)."""
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits}g}")


@dataclass(frozen=True)
class PadicRational:
    """A rational number viewed inside Q_p. `Fraction` keeps it reduced."""

    value: Fraction
    context: PrimeContext

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", to_fraction(self.value))

    @classmethod
    def of(cls, x, p: int | PrimeContext) -> "PadicRational":
        ctx = p if isinstance(p, PrimeContext) else PrimeContext(p)
        return cls(to_fraction(x), ctx)

    @property
    def p(self) -> int:
        return self.context.p

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PadicRational):
            if other.context != self.context:
                raise ValueError("mixing different primes")
            return other.value
        return to_fraction(other)

    def __add__(self, other):
        return PadicRational(self.value + self._coerce(other), self.context)

    __radd__ = __add__

    def __sub__(self, other):
        return PadicRational(self.value - self._coerce(other), self.context)

    def __rsub__(self, other):
        return PadicRational(self._coerce(other) - self.value, self.context)

    def __mul__(self, other):
        return PadicRational(self.value * self._coerce(other), self.context)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PadicRational(self.value / self._coerce(other), self.context)

    def __rtruediv__(self, other):
        return PadicRational(self._coerce(other) / self.value, self.context)

    def __neg__(self):
        return PadicRational(-self.value, self.context)

    def __pow__(self, k: int):
        return PadicRational(self.value**k, self.context)

    def __bool__(self):
        return self.value != 0

    def valuation(self) -> Valuation:
        return vp(self.value, self.context.p)

    def __str__(self):
        return format_rational(self.value)


@total_ordering
@dataclass(frozen=True, eq=False)
class LogValue:
    """The real number ``coeff * log(p)``, held exactly."""

    coeff: Fraction
    p: int

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))

    @classmethod
    def zero(cls, p: int) -> "LogValue":
        return cls(Fraction(0), p)

    def _other(self, other) -> Fraction:
        if isinstance(other, LogValue):
            if other.p != self.p:
                raise ValueError(f"LogValue prime mismatch: {self.p} vs {other.p}")
            return other.coeff
        if isinstance(other, int) and other == 0:
            return Fraction(0)
        return NotImplemented

    def __add__(self, other):
        c = self._other(other)
        if c is NotImplemented:
            return c
        return LogValue(self.coeff + c, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._other(other)
        if c is NotImplemented:
            return c
        return LogValue(self.coeff - c, self.p)

    def __neg__(self):
        return LogValue(-self.coeff, self.p)

    def __mul__(self, k):
        if isinstance(k, LogValue):
            return NotImplemented
        return LogValue(self.coeff * Fraction(k), self.p)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return LogValue(self.coeff / Fraction(k), self.p)

    def __eq__(self, other):
        c = self._other(other)
        if c is NotImplemented:
            return c
        return self.coeff == c

    def __lt__(self, other):
        c = self._other(other)
        if c is NotImplemented:
            return c
        return self.coeff < c

    def __hash__(self):
        return hash((self.coeff, self.p))

    def __float__(self):
        return float(self.coeff) * math.log(self.p)

    def __repr__(self):
        return f"LogValue({format_rational(self.coeff)}*log {self.p})"

    def to_json(self) -> dict:
        return {
            "coeff": format_rational(self.coeff),
            "p": self.p,
            "approx": round_sig(float(self)),
        }


def _p_of(x) -> int:
    return x.context.p if isinstance(x, PadicRational) else None


def valuation(x: PadicRational) -> Valuation:
    return x.valuation()


def abs_log(x: PadicRational) -> LogValue:
    """log|x|, i.e. -v_p(x) log p."""
    v = x.valuation()
    if v == INFINITY:
        raise ZeroArgument("log|0| is -infinity")
    return LogValue(Fraction(-v), x.context.p)


def sup_norm_valuation(xs: Iterable, p: int | None = None) -> Valuation:
    """min_i v(x_i), so that ||x|| = p**(-result)."""
    xs = list(xs)
    if not xs:
        raise ValueError("empty vector")
    if p is None:
        p = _p_of(xs[0])
    return min(vp(to_fraction(x), p) for x in xs)


def normalize_lift(xs: Sequence, p: int | None = None) -> tuple[tuple, int]:
    """Scale ``xs`` by p**(-m), m = sup-norm valuation, so the result has norm 1.

    Returns ``(scaled, m)``; entries come back in the type they went in
    (PadicRational in, PadicRational out; Fraction otherwise).
    """
    xs = list(xs)
    if p is None:
        p = _p_of(xs[0])
    m = sup_norm_valuation(xs, p)
    if m == INFINITY:
        raise ZeroVector("cannot normalize the zero vector")
    scale = Fraction(1, p**m) if m >= 0 else Fraction(p ** (-m))
    out = []
    for x in xs:
        if isinstance(x, PadicRational):
            out.append(PadicRational(x.value * scale, x.context))
        else:
            out.append(to_fraction(x) * scale)
    return tuple(out), m
