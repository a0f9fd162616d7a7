"""Truncated hypergeometric sums, Legendre polynomials, eta products and related sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from . import kernels
from .errors import DegenerateLambda, NotAUnit, NotPIntegral, PrecisionLoss
from .padic import (
    PadicInt,
    QuadExtElem,
    RationalLike,
    as_rational,
    fermat_quotient,
    harmonic,
    inverse_mod,
    is_p_integral,
    split_unit,
    valuation,
)
from .report import CongruenceReport, from_exact

Factor = tuple[int, int]
Scale = Union[Fraction, int, PadicInt]


def pochhammer(a: RationalLike, k: int) -> Fraction:
    a = as_rational(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class HGParams:
    """Truncated rF(r-1) with upper parameters, lower parameters, argument and truncation n."""

    upper: tuple
    lower: tuple
    argument: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(as_rational(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(as_rational(b) for b in self.lower))
        object.__setattr__(self, "argument", as_rational(self.argument))
        if len(self.upper) != len(self.lower) + 1:
            raise ValueError("need exactly one more upper parameter than lower parameters")
        for b in self.lower:
            if b.denominator == 1 and b <= 0:
                raise ValueError(f"lower parameter {b} is a non-positive integer")
        if self.n < 0:
            raise ValueError("truncation must be >= 0")

    def ratio_factors(self) -> tuple[list[Factor], list[Factor], Fraction]:
        """Linear factors and scale with t_{k+1}/t_k = scale * prod(num(k)) / prod(den(k))."""
        num = [(a.denominator, a.numerator) for a in self.upper]
        den = [(b.denominator, b.numerator) for b in self.lower] + [(1, 1)]
        scale = self.argument
        for a in self.upper:
            scale /= a.denominator
        for b in self.lower:
            scale *= b.denominator
        return num, den, scale


def _exact_sum(num: Sequence[Factor], den: Sequence[Factor], scale: Fraction, n: int) -> Fraction:
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        top = 1
        for a, b in num:
            top *= a * k + b
        if top == 0 or scale == 0:
            break
        bottom = 1
        for a, b in den:
            bottom *= a * k + b
        term = term * scale * top / bottom
        total += term
    return total


def truncated_hg(params: HGParams) -> Fraction:
    num, den, scale = params.ratio_factors()
    return _exact_sum(num, den, scale, params.n)


def hg_sum_mod(num: Sequence[Factor], den: Sequence[Factor], scale: Scale, n: int, p: int, s: int) -> PadicInt:
    """Sum of the term-ratio series modulo p^s.

    ``scale`` may be an exact rational or a residue; in the latter case the
    result is only meaningful to the precision the residue carries, and
    PrecisionLoss is raised when that falls short of s.
    """
    prec = None
    if isinstance(scale, PadicInt):
        prec = scale.prec
        scale = scale.residue
    if isinstance(scale, int):
        scale = Fraction(scale)
    if scale == 0:
        return PadicInt(p, s, 1)
    vn, un = split_unit(scale.numerator, p)
    vd, ud = split_unit(scale.denominator, p)
    if prec is not None and vn >= prec:
        return PadicInt(p, s, 1)
    res, shift = kernels.hyper_sum_mod(list(num), list(den), vn - vd, un, ud, n, p, s)
    if res < 0:
        raise NotPIntegral(f"truncated sum is not {p}-integral")
    if prec is not None and prec - shift < s:
        raise PrecisionLoss(f"argument known mod {p}^{prec}, need {s + shift}")
    return PadicInt(p, s, res)


def truncated_hg_mod(params: HGParams, p: int, s: int) -> PadicInt:
    num, den, scale = params.ratio_factors()
    return hg_sum_mod(num, den, scale, params.n, p, s)


def f_r_params(lam: RationalLike, r: int, n: int) -> HGParams:
    return HGParams((Fraction(1, 2),) * r, (Fraction(1),) * (r - 1), as_rational(lam), n)


def f_r_term(k: int, r: int) -> Fraction:
    """((1/2)_k / k!)^r = (binom(2k, k) / 4^k)^r."""
    return Fraction(comb(2 * k, k) ** r, 4 ** (k * r))


def f_r(lam: RationalLike, r: int, n: int) -> Fraction:
    lam = as_rational(lam)
    return _exact_sum([(2, 1)] * r, [(1, 1)] * r, lam / 2**r, n)


def f_r_mod(lam: Union[RationalLike, PadicInt], r: int, n: int, p: int, s: int) -> PadicInt:
    if isinstance(lam, PadicInt):
        scale = lam * inverse_mod(2**r, p, lam.prec)
    else:
        scale = as_rational(lam) / 2**r
    return hg_sum_mod([(2, 1)] * r, [(1, 1)] * r, scale, n, p, s)


# Legendre polynomials

def legendre_poly(n: int, x: RationalLike) -> Fraction:
    x = as_rational(x)
    if n == 0:
        return Fraction(1)
    prev, cur = Fraction(1), x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur


def legendre_coefficients(n: int) -> list[Fraction]:
    """Coefficients of P_n in powers of x, by the three-term recurrence on polynomials."""
    prev, cur = [Fraction(1)], [Fraction(0), Fraction(1)]
    if n == 0:
        return prev
    for k in range(1, n):
        nxt = [Fraction(0)] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += (2 * k + 1) * c / (k + 1)
        for i, c in enumerate(prev):
            nxt[i] -= k * c / (k + 1)
        prev, cur = cur, nxt
    return cur


def _legendre_factors(n: int) -> tuple[list[Factor], list[Factor]]:
    # P_n(x) = sum_k binom(n,k) binom(n+k,k) ((x-1)/2)^k
    return [(-1, n), (1, n + 1)], [(1, 1), (1, 1)]


def _integer_coefficients_mod(n: int, p: int, prec: int) -> list[int]:
    """binom(n,k) binom(n+k,k) mod p^prec for k <= n, with valuations tracked."""
    m = p**prec
    out = []
    v, u = 0, 1
    for k in range(n + 1):
        out.append(u * p**v % m if v < prec else 0)
        if k == n:
            break
        for x in ((n - k), (n + k + 1)):
            dv, du = split_unit(x, p)
            v += dv
            u = u * du % m
        for x in ((k + 1), (k + 1)):
            dv, du = split_unit(x, p)
            v -= dv
            u = u * pow(du, -1, m) % m
    return out


def legendre_poly_mod(n: int, x: Union[PadicInt, QuadExtElem]):
    """P_n evaluated in Z/p^s or in the quadratic extension ring.

    Uses the integer-coefficient expansion in (x - 1)/2, so no division by p
    ever occurs and PrecisionLoss cannot arise.
    """
    if isinstance(x, QuadExtElem) and x.is_rational():
        return legendre_poly_mod(n, x.to_padic())
    if isinstance(x, PadicInt):
        y = (x - 1) * inverse_mod(2, x.p, x.prec)
        num, den = _legendre_factors(n)
        return hg_sum_mod(num, den, y, n, x.p, x.prec)
    if isinstance(x, QuadExtElem):
        half = inverse_mod(2, x.p, x.prec).residue
        y = (x - 1) * half
        acc = QuadExtElem(x.p, x.prec, x.t, 0, 0)
        for c in reversed(_integer_coefficients_mod(n, x.p, x.prec)):
            acc = acc * y + c
        return acc
    raise TypeError("legendre_poly_mod expects a PadicInt or QuadExtElem")


def legendre_form(k: int, lam: RationalLike) -> Fraction:
    """P_k((1+lam)/(1-lam)) (lam-1)^k."""
    lam = as_rational(lam)
    if lam == 1:
        raise DegenerateLambda("lambda = 1")
    return legendre_poly(k, (1 + lam) / (1 - lam)) * (lam - 1) ** k


def terminating_2f1_pair(k: int, lam: RationalLike) -> tuple[Fraction, Fraction]:
    lam = as_rational(lam)
    if lam == 1:
        raise DegenerateLambda("lambda = 1")
    first = truncated_hg(HGParams((-k, -k), (1,), lam, k)) * (-1) ** k
    second = truncated_hg(HGParams((-k, 1 + k), (1,), -lam / (1 - lam), k)) * (lam - 1) ** k
    return first, second


def twofone_mod(k: int, lam: Union[RationalLike, PadicInt], p: int, s: int, sign: str = "-") -> PadicInt:
    """2F1(-k, -k; 1; lam) for sign '-', 2F1(-k, k+1; 1; lam) for sign '+', modulo p^s."""
    second = (1, -k) if sign == "-" else (1, k + 1)
    scale = lam if isinstance(lam, PadicInt) else as_rational(lam)
    return hg_sum_mod([(1, -k), second], [(1, 1), (1, 1)], scale, k, p, s)


def twofone_exact(k: int, lam: RationalLike, sign: str = "-") -> Fraction:
    second = -k if sign == "-" else k + 1
    return truncated_hg(HGParams((-k, second), (1,), lam, k))


def asd_coefficient_mod(index, lam: RationalLike, p: int, s: int) -> PadicInt:
    """Coefficient a_index of the invariant differential of the Legendre curve.

    Odd indices 2k+1 give (-1)^k 2F1(-k,-k;1;lam); even or non-integral
    indices give 0.
    """
    if not isinstance(index, int) or index <= 0 or index % 2 == 0:
        return PadicInt(p, s, 0)
    k = (index - 1) // 2
    val = twofone_mod(k, lam, p, s, "-")
    return -val if k % 2 else val


def asd_coefficient(index, lam: RationalLike) -> Fraction:
    if not isinstance(index, int) or index <= 0 or index % 2 == 0:
        return Fraction(0)
    return legendre_form((index - 1) // 2, lam)


# Z.-H. Sun identity and the terminating 3F2

def _zh_factors(n: int) -> tuple[list[Factor], list[Factor]]:
    return [(2, 1), (1, -n), (1, n + 1)], [(1, 1), (1, 1), (2, 2)]


def zh_sun_3f2(n: int, lam: RationalLike) -> Fraction:
    """sum_k binom(2k,k)^2 binom(n+k,2k) (-lam/4)^k."""
    lam = as_rational(lam)
    return sum((comb(2 * k, k) ** 2 * comb(n + k, 2 * k) * (-lam / 4) ** k for k in range(n + 1)), Fraction(0))


def zh_sun_3f2_mod(n: int, lam: Union[RationalLike, PadicInt], p: int, s: int) -> PadicInt:
    num, den = _zh_factors(n)
    scale = lam if isinstance(lam, PadicInt) else as_rational(lam)
    return hg_sum_mod(num, den, scale, n, p, s)


def threef2_terminating(M: int, lam: RationalLike) -> Fraction:
    """3F2(1/2, (1-M)/2, (1+M)/2; 1, 1; lam) for odd M, straight from the definition."""
    N = (M - 1) // 2
    return truncated_hg(HGParams((Fraction(1, 2), Fraction(1 - M, 2), Fraction(1 + M, 2)), (1, 1), lam, N))


def zh_sun_polynomial(n: int) -> list[Fraction]:
    return [comb(2 * k, k) ** 2 * comb(n + k, 2 * k) * Fraction(-1, 4) ** k for k in range(n + 1)]


def legendre_square_polynomial(n: int) -> list[Fraction]:
    """Coefficients in lam of P_n(sqrt(1-lam))^2."""
    c = legendre_coefficients(n)
    sq = [Fraction(0)] * (2 * n + 1)
    for i, a in enumerate(c):
        if a:
            for j, b in enumerate(c):
                sq[i + j] += a * b
    out = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        a = sq[2 * j]
        if a:
            # (1 - lam)^j
            for i in range(j + 1):
                out[i] += a * comb(j, i) * (-1) ** i
    return out


def binom_half_congruence(k: int, p: int) -> CongruenceReport:
    h = (p - 1) // 2
    if not 0 <= k <= h:
        raise ValueError("need 0 <= k <= (p-1)/2")
    diff = comb(h + k, 2 * k) - Fraction(comb(2 * k, k), (-16) ** k)
    return from_exact("binom_half", {"p": p, "k": k}, 2, diff, p)


# eta products

@dataclass(frozen=True)
class EtaProductSpec:
    """prod eta(d z)^e, given as (d, e) pairs."""

    factors: tuple

    @property
    def leading(self) -> Fraction:
        return Fraction(sum(d * e for d, e in self.factors), 24)

    def __str__(self) -> str:
        return "".join(f"eta({d}z)^{e}" for d, e in self.factors)


ETA_4Z_6 = EtaProductSpec(((4, 6),))
ETA_Z3_7Z3 = EtaProductSpec(((1, 3), (7, 3)))
ETA_2Z4_4Z4 = EtaProductSpec(((2, 4), (4, 4)))


def _poly_mul(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    nz = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            for j, y in nz:
                if i + j > N:
                    break
                out[i + j] += x * y
    return out


def _poly_inverse(a: list[int], N: int) -> list[int]:
    # a[0] == 1
    out = [0] * (N + 1)
    out[0] = 1
    for n in range(1, N + 1):
        out[n] = -sum(a[i] * out[n - i] for i in range(1, n + 1) if a[i])
    return out


def _euler_product(d: int, N: int) -> list[int]:
    """prod_{n>=1} (1 - q^(d n)) to q^N via the pentagonal number theorem."""
    out = [0] * (N + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = d * kk * (3 * kk - 1) // 2
            if e <= N:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def eta_coefficients(spec: EtaProductSpec, N: int) -> list[int]:
    """Coefficients c[0..N] of the q-expansion; c[i] multiplies q^i."""
    if N < 1:
        raise ValueError("N must be >= 1")
    lead = spec.leading
    if lead.denominator != 1 or lead < 0:
        raise ValueError("leading q-power must be a nonnegative integer")
    lead = int(lead)
    M = N - lead
    series = [1] + [0] * max(M, 0)
    if M >= 0:
        for d, e in spec.factors:
            base = _euler_product(d, M)
            if e < 0:
                base = _poly_inverse(base, M)
            power = [1] + [0] * M
            e = abs(e)
            while e:
                if e & 1:
                    power = _poly_mul(power, base, M)
                base = _poly_mul(base, base, M)
                e >>= 1
            series = _poly_mul(series, power, M)
    out = [0] * (N + 1)
    for i in range(max(M, -1) + 1):
        out[i + lead] = series[i]
    return out


# Apery numbers and harmonic-weighted sums

def apery_half(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def gessel_aux(n: int) -> Fraction:
    return 2 * sum(
        (comb(n, k) ** 2 * comb(n + k, k) ** 2 * (harmonic(n + k) - harmonic(n - k)) for k in range(n + 1)),
        Fraction(0),
    )


@dataclass(frozen=True)
class AuxSequencePoint:
    n: int
    a: Fraction
    b: Fraction


def _unit_over_64(lam: RationalLike, p: int) -> Fraction:
    u = as_rational(lam) / 64
    if u == 0 or not is_p_integral(u, p) or valuation(u, p) > 0:
        raise NotAUnit(f"lambda/64 = {u} is not a {p}-adic unit")
    return u


def aux_sequence(lam: RationalLike, p: int, n: int) -> AuxSequencePoint:
    u = _unit_over_64(lam, p)
    q = fermat_quotient(u, p)
    a = Fraction(0)
    b = Fraction(0)
    for i in range(n + 1):
        t = comb(2 * i, i) ** 3 * u**i
        a += t
        b += t * (6 * (harmonic(2 * i) - harmonic(i)) + q)
    return AuxSequencePoint(n, a, b)


def cubed_central_sum(lam: RationalLike, n: int) -> Fraction:
    """sum_{i<=n} binom(2i,i)^3 (lam/64)^i, which is F_3(lam)_n."""
    u = as_rational(lam) / 64
    return sum((comb(2 * i, i) ** 3 * u**i for i in range(n + 1)), Fraction(0))
