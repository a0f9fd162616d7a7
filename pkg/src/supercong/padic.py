"""Exact rationals, p-adic valuations and residue rings Z/p^s, Z/p^s[u]/(u^2 - t)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotAUnit, NotInvertible, NotPIntegral, ParseError, Supersingular

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to an exact Fraction.

    Floats are refused: nothing in the engine is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise ParseError(f"cannot parse rational {x!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError(f"zero denominator in {x!r}")
        return Fraction(int(m.group(1)), den)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Valuation:
    """A p-adic valuation.

    ``finite=False`` encodes the valuation of exact zero.  ``at_least=True``
    marks a lower bound: the quantity vanished at the working precision
    ``value`` so the true valuation is only known to be >= value.
    """

    finite: bool
    value: int = 0
    at_least: bool = False

    @classmethod
    def infinite(cls) -> "Valuation":
        return cls(False, 0)

    @classmethod
    def of(cls, v: int, at_least: bool = False) -> "Valuation":
        return cls(True, v, at_least)

    def _key(self) -> float:
        return float("inf") if not self.finite else self.value

    def __ge__(self, other) -> bool:
        if isinstance(other, Valuation):
            return self._key() >= other._key()
        return self._key() >= other

    def __gt__(self, other) -> bool:
        if isinstance(other, Valuation):
            return self._key() > other._key()
        return self._key() > other

    def __le__(self, other) -> bool:
        return not self.__gt__(other)

    def __lt__(self, other) -> bool:
        return not self.__ge__(other)

    def __add__(self, other: "Valuation") -> "Valuation":
        if not (self.finite and other.finite):
            return Valuation.infinite()
        return Valuation(True, self.value + other.value, self.at_least or other.at_least)

    def __str__(self) -> str:
        if not self.finite:
            return "inf"
        return f">={self.value}" if self.at_least else str(self.value)

    @classmethod
    def parse(cls, text: str) -> "Valuation":
        if text == "inf":
            return cls.infinite()
        if text.startswith(">="):
            return cls.of(int(text[2:]), True)
        return cls.of(int(text))


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_unit(n: int, p: int) -> tuple[int, int]:
    """Write a nonzero integer as p^v * u with p not dividing u."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def valuation(x: RationalLike, p: int) -> Valuation:
    x = as_rational(x)
    if x == 0:
        return Valuation.infinite()
    return Valuation.of(_int_val(x.numerator, p) - _int_val(x.denominator, p))


def residue_valuation(r: int, p: int, prec: int) -> Valuation:
    """Valuation of a residue mod p^prec; zero gives the lower bound >= prec."""
    r %= p**prec
    if r == 0:
        return Valuation.of(prec, at_least=True)
    return Valuation.of(_int_val(r, p))


def inverse_mod(a: int, p: int, s: int) -> "PadicInt":
    if a % p == 0:
        raise NotInvertible(f"{a} is divisible by {p}")
    m = p**s
    return PadicInt(p, s, pow(a % m, -1, m))


def reduce_rational(x: RationalLike, p: int, s: int) -> "PadicInt":
    x = as_rational(x)
    if x.denominator % p == 0:
        raise NotPIntegral(f"{x} has negative {p}-adic valuation")
    m = p**s
    return PadicInt(p, s, x.numerator * pow(x.denominator, -1, m) % m)


def is_p_integral(x: RationalLike, p: int) -> bool:
    return as_rational(x).denominator % p != 0


def legendre_symbol(a: RationalLike, p: int) -> int:
    """Quadratic character mod an odd prime; rationals are reduced first."""
    if isinstance(a, int) and not isinstance(a, bool):
        r = a % p
    else:
        r = reduce_rational(a, p, 1).residue
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def teichmuller(x: int, p: int, s: int) -> "PadicInt":
    if x % p == 0:
        raise NotAUnit(f"{x} is divisible by {p}")
    m = p**s
    return PadicInt(p, s, pow(x % m, p ** (s - 1), m))


def hensel_unit_root(trace: int, p: int, s: int) -> "PadicInt":
    """Unit root of X^2 - trace*X + p modulo p^s, by Newton iteration."""
    if trace % p == 0:
        raise Supersingular(f"{p} divides the trace {trace}")
    m = p**s
    a = trace % m
    prec = 1
    while prec < s:
        prec *= 2
        f = (a * a - trace * a + p) % m
        a = (a - f * pow((2 * a - trace) % m, -1, m)) % m
    return PadicInt(p, s, a)


def sqrt_mod(a: int, p: int, s: int) -> "PadicInt":
    """Square root of a quadratic residue unit modulo p^s (Hensel lifted)."""
    m = p**s
    a %= m
    if a % p == 0 or legendre_symbol(a, p) != 1:
        raise NotAUnit(f"{a} is not a unit square mod {p}")
    r = next(x for x in range(1, p) if (x * x - a) % p == 0)
    prec = 1
    while prec < s:
        prec *= 2
        r = (r - (r * r - a) * pow(2 * r, -1, m)) % m
    return PadicInt(p, s, r)


def padic_gamma(n: int, p: int, s: int) -> "PadicInt":
    if n < 1:
        raise ValueError("padic_gamma needs a positive integer argument")
    m = p**s
    acc = 1
    for j in range(1, n):
        if j % p:
            acc = acc * j % m
    return PadicInt(p, s, (-acc if n % 2 else acc) % m)


_HARMONIC = [Fraction(0)]


def harmonic(k: int) -> Fraction:
    if k < 0:
        raise ValueError("harmonic needs k >= 0")
    while len(_HARMONIC) <= k:
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, len(_HARMONIC)))
    return _HARMONIC[k]


def fermat_quotient(u: RationalLike, p: int) -> Fraction:
    """(u^(p-1) - 1)/p for a p-adic unit u, as an exact rational."""
    u = as_rational(u)
    if valuation(u, p) != Valuation.of(0):
        raise NotAUnit(f"{u} is not a {p}-adic unit")
    return (u ** (p - 1) - 1) / p


@dataclass(frozen=True)
class PadicInt:
    """Residue class in Z/p^prec.  Mixed precision arithmetic drops to the minimum."""

    p: int
    prec: int
    residue: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.p**self.prec)

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    def _coerce(self, other) -> tuple[int, int, int]:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mixing residues at different primes")
            prec = min(self.prec, other.prec)
            return prec, self.residue, other.residue
        if isinstance(other, Fraction):
            return self.prec, self.residue, reduce_rational(other, self.p, self.prec).residue
        if isinstance(other, int):
            return self.prec, self.residue, other
        return NotImplemented

    def _binop(self, other, op):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        prec, a, b = c
        return PadicInt(self.p, prec, op(a, b))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.p, self.prec, -self.residue)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.prec, pow(self.residue, e, self.modulus))

    def inverse(self) -> "PadicInt":
        return inverse_mod(self.residue, self.p, self.prec)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.p, self.prec, other)
        if isinstance(other, Fraction):
            other = reduce_rational(other, self.p, self.prec)
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        prec, a, b = c
        return (a - b) % self.p**prec == 0

    def __hash__(self):
        return hash((self.p, self.prec, self.residue))

    def reduce(self, prec: int) -> "PadicInt":
        return PadicInt(self.p, min(prec, self.prec), self.residue)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def valuation(self) -> Valuation:
        return residue_valuation(self.residue, self.p, self.prec)

    def signed(self) -> int:
        """Representative in (-p^s/2, p^s/2]."""
        m = self.modulus
        return self.residue - m if self.residue > m // 2 else self.residue

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"PadicInt({self.residue} mod {self.p}^{self.prec})"


@dataclass(frozen=True)
class QuadExtElem:
    """a + b*u in (Z/p^prec)[u]/(u^2 - t) with t a non-residue mod p."""

    p: int
    prec: int
    t: int
    a: int
    b: int = 0

    def __post_init__(self):
        m = self.p**self.prec
        if legendre_symbol(self.t, self.p) != -1:
            raise ValueError(f"t = {self.t} must be a quadratic non-residue mod {self.p}")
        object.__setattr__(self, "t", self.t % m)
        object.__setattr__(self, "a", self.a % m)
        object.__setattr__(self, "b", self.b % m)

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    @classmethod
    def generator(cls, p: int, prec: int, t: int) -> "QuadExtElem":
        return cls(p, prec, t, 0, 1)

    def _lift(self, other):
        if isinstance(other, QuadExtElem):
            if other.p != self.p or (other.t - self.t) % self.p ** min(self.prec, other.prec):
                raise ValueError("incompatible quadratic extensions")
            return other
        if isinstance(other, PadicInt):
            return QuadExtElem(self.p, min(self.prec, other.prec), self.t, other.residue, 0)
        if isinstance(other, Fraction):
            return QuadExtElem(self.p, self.prec, self.t, reduce_rational(other, self.p, self.prec).residue)
        if isinstance(other, int):
            return QuadExtElem(self.p, self.prec, self.t, other, 0)
        return NotImplemented

    def _make(self, other, a, b):
        prec = min(self.prec, other.prec)
        return QuadExtElem(self.p, prec, self.t, a, b)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self._make(o, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self._make(o, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadExtElem(self.p, self.prec, self.t, -self.a, -self.b)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        m = self.p ** min(self.prec, o.prec)
        return self._make(o, (self.a * o.a + self.t * self.b * o.b) % m, (self.a * o.b + self.b * o.a) % m)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem(self.p, self.prec, self.t, self.a, -self.b)

    def norm(self) -> PadicInt:
        return PadicInt(self.p, self.prec, self.a * self.a - self.t * self.b * self.b)

    def inverse(self) -> "QuadExtElem":
        n = self.norm().inverse().residue
        return QuadExtElem(self.p, self.prec, self.t, self.a * n, -self.b * n)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadExtElem(self.p, self.prec, self.t, 1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        m = self.p ** min(self.prec, o.prec)
        return (self.a - o.a) % m == 0 and (self.b - o.b) % m == 0

    def __hash__(self):
        return hash((self.p, self.prec, self.t, self.a, self.b))

    def valuation(self) -> Valuation:
        va = residue_valuation(self.a, self.p, self.prec)
        vb = residue_valuation(self.b, self.p, self.prec)
        return va if va <= vb else vb

    def is_rational(self) -> bool:
        return self.b == 0

    def to_padic(self) -> PadicInt:
        if self.b:
            raise ValueError("element has a nonzero u-coordinate")
        return PadicInt(self.p, self.prec, self.a)

    def __repr__(self) -> str:
        return f"QuadExtElem({self.a} + {self.b}*u mod {self.p}^{self.prec}, u^2={self.t})"


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes in the closed interval [lo, hi]."""
    from sympy import primerange

    return [q for q in primerange(max(lo, 3), hi + 1)]


def is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))
