"""Truncated power series over Q and one-dimensional formal group laws built from logarithms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .errors import CompositionAtUnit, IndexOutOfRange, NotPIntegral, NotReversible
from .padic import PadicInt, RationalLike, Valuation, as_rational, is_p_integral, reduce_rational, valuation
from .report import CongruenceReport, from_residue


class TruncatedSeries:
    """Power series sum c_i x^i known through degree ``cap``."""

    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs: Sequence, cap: int):
        if cap < 0:
            raise ValueError("cap must be >= 0")
        c = [as_rational(a) for a in list(coeffs)[: cap + 1]]
        c += [Fraction(0)] * (cap + 1 - len(c))
        self.coeffs = tuple(c)
        self.cap = cap

    @classmethod
    def x(cls, cap: int) -> "TruncatedSeries":
        return cls([0, 1], cap)

    @classmethod
    def one(cls, cap: int) -> "TruncatedSeries":
        return cls([1], cap)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.cap else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        return self.coeffs[: cap + 1] == other.coeffs[: cap + 1]

    def __repr__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"TruncatedSeries({' + '.join(terms) or '0'} + O(x^{self.cap + 1}))"

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(cap, self.cap))

    def __add__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.cap)
        cap = min(self.cap, other.cap)
        return TruncatedSeries([self[i] + other[i] for i in range(cap + 1)], cap)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.cap)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            k = as_rational(other)
            return TruncatedSeries([k * c for c in self.coeffs], self.cap)
        cap = min(self.cap, other.cap)
        out = [Fraction(0)] * (cap + 1)
        b = [(j, y) for j, y in enumerate(other.coeffs[: cap + 1]) if y]
        for i, x in enumerate(self.coeffs[: cap + 1]):
            if x:
                for j, y in b:
                    if i + j > cap:
                        break
                    out[i + j] += x * y
        return TruncatedSeries(out, cap)

    __rmul__ = __mul__

    def derivative(self) -> "TruncatedSeries":
        # the derivative is only known one degree lower
        return TruncatedSeries([i * self.coeffs[i] for i in range(1, self.cap + 1)], max(self.cap - 1, 0))

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series has zero constant term")
        out = [Fraction(0)] * (self.cap + 1)
        out[0] = 1 / c0
        for n in range(1, self.cap + 1):
            acc = sum((self.coeffs[i] * out[n - i] for i in range(1, n + 1) if self.coeffs[i]), Fraction(0))
            out[n] = -acc / c0
        return TruncatedSeries(out, self.cap)

    def compose(self, g: "TruncatedSeries") -> "TruncatedSeries":
        """self(g(x)); g must have zero constant term."""
        if g.coeffs[0] != 0:
            raise CompositionAtUnit("inner series has a nonzero constant term")
        cap = min(self.cap, g.cap)
        acc = TruncatedSeries([self.coeffs[cap]], cap)
        for i in range(cap - 1, -1, -1):
            acc = acc * g + self.coeffs[i]
        return acc

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse by Newton iteration, doubling the accuracy each step."""
        self._check_reversible()
        f1 = self.coeffs[1]
        g = TruncatedSeries([0, 1 / f1], min(self.cap, 1))
        k = 1
        while k < self.cap:
            k = min(2 * k, self.cap)
            g = TruncatedSeries(g.coeffs, k)
            f = self.truncate(k)
            residual = f.compose(g) - TruncatedSeries.x(k)
            fprime = TruncatedSeries(self.truncate(k + 1).derivative().coeffs, k).compose(g)
            g = g - residual * fprime.inverse()
        return g

    def reversion_triangular(self) -> "TruncatedSeries":
        """Compositional inverse by solving for one coefficient at a time."""
        self._check_reversible()
        f1 = self.coeffs[1]
        g = [Fraction(0), 1 / f1] + [Fraction(0)] * (self.cap - 1)
        for n in range(2, self.cap + 1):
            c = self.truncate(n).compose(TruncatedSeries(g[: n + 1], n))[n]
            g[n] = -c / f1
        return TruncatedSeries(g, self.cap)

    def _check_reversible(self):
        if self.cap < 1 or self.coeffs[1] == 0:
            raise NotReversible("linear coefficient is zero")
        if self.coeffs[0] != 0:
            raise NotReversible("constant term must vanish")


def series_multiply(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f.compose(g)


def series_reversion(f: TruncatedSeries) -> TruncatedSeries:
    return f.reversion()


# multivariate truncated polynomials as {exponent tuple: Fraction}

def _mp_mul(a: dict, b: dict, N: int) -> dict:
    out: dict = {}
    for ka, x in a.items():
        da = sum(ka)
        for kb, y in b.items():
            if da + sum(kb) <= N:
                k = tuple(i + j for i, j in zip(ka, kb))
                out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _mp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _mp_compose(F: dict, subs: Sequence[dict], N: int, nvars: int) -> dict:
    """F(subs[0], subs[1], ...) truncated at total degree N; subs have no constant term."""
    powers = []
    for s in subs:
        pw = [{(0,) * nvars: Fraction(1)}]
        for _ in range(N):
            pw.append(_mp_mul(pw[-1], s, N))
        powers.append(pw)
    out: dict = {}
    for key, c in F.items():
        term = {(0,) * nvars: c}
        for var, e in enumerate(key):
            if e:
                term = _mp_mul(term, powers[var][e], N)
        out = _mp_add(out, term)
    return out


class TruncatedBiSeries:
    """Series in x, y known through total degree ``cap``; stored sparsely."""

    __slots__ = ("terms", "cap")

    def __init__(self, terms: dict, cap: int):
        self.terms = {k: as_rational(v) for k, v in terms.items() if sum(k) <= cap and v}
        self.cap = cap

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedBiSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        a = {k: v for k, v in self.terms.items() if sum(k) <= cap}
        b = {k: v for k, v in other.terms.items() if sum(k) <= cap}
        return a == b

    def __repr__(self) -> str:
        terms = " + ".join(f"{v}*x^{i}*y^{j}" for (i, j), v in sorted(self.terms.items()))
        return f"TruncatedBiSeries({terms or '0'} + O(deg {self.cap + 1}))"

    def swap(self) -> "TruncatedBiSeries":
        return TruncatedBiSeries({(j, i): v for (i, j), v in self.terms.items()}, self.cap)

    def is_symmetric(self) -> bool:
        return self == self.swap()

    def at_y_zero(self) -> TruncatedSeries:
        c = [Fraction(0)] * (self.cap + 1)
        for (i, j), v in self.terms.items():
            if j == 0:
                c[i] = v
        return TruncatedSeries(c, self.cap)

    def is_associative(self) -> bool:
        """F(F(x,y),z) == F(x,F(y,z)) through the cap."""
        N = self.cap
        F3 = {(i, j, 0): v for (i, j), v in self.terms.items()}
        x = {(1, 0, 0): Fraction(1)}
        z = {(0, 0, 1): Fraction(1)}
        Fxy = F3
        Fyz = {(0, i, j): v for (i, j), v in self.terms.items()}
        left = _mp_compose(F3, [Fxy, z, {}], N, 3)
        right = _mp_compose(F3, [x, Fyz, {}], N, 3)
        return left == right

    def coefficients(self):
        return self.terms.items()


def group_law(log: TruncatedSeries, N: Optional[int] = None) -> TruncatedBiSeries:
    """F(x, y) = log^{-1}(log(x) + log(y)) through total degree N."""
    N = log.cap if N is None else min(N, log.cap)
    inv = log.truncate(N).reversion()
    S = {}
    for i in range(1, N + 1):
        c = log[i]
        if c:
            S[(i, 0)] = S.get((i, 0), 0) + c
            S[(0, i)] = S.get((0, i), 0) + c
    acc: dict = {}
    for k in range(N, 0, -1):
        acc = _mp_mul(acc, S, N)
        if inv[k]:
            acc = _mp_add(acc, {(0, 0): inv[k]})
    acc = _mp_mul(acc, S, N)
    return TruncatedBiSeries(acc, N)


@dataclass(frozen=True)
class IntegralityReport:
    p: int
    cap: int
    min_valuation: Valuation
    offending: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.min_valuation >= 0

    def __str__(self) -> str:
        tail = f" offending monomial {self.offending}" if self.offending else ""
        return f"{'pass' if self.passed else 'fail'} p={self.p} cap={self.cap} min_val={self.min_valuation}{tail}"


def integrality_report(F, p: int) -> IntegralityReport:
    """Minimum p-adic valuation over all coefficients through the cap."""
    if isinstance(F, TruncatedSeries):
        items = [((i,), c) for i, c in enumerate(F.coeffs) if c]
    else:
        items = [(k, v) for k, v in F.coefficients() if v]
    best = Valuation.infinite()
    worst_key = None
    for key, c in sorted(items):
        v = valuation(c, p)
        if v < best:
            best = v
            worst_key = key
    offending = worst_key if best < 0 else None
    return IntegralityReport(p, F.cap, best, offending)


def hypergeometric_logarithm(r: int, lam: RationalLike, N: int) -> TruncatedSeries:
    """sum_n F_r(lam)_n / (2n+1) tau^(2n+1) through degree N."""
    lam = as_rational(lam)
    c = [Fraction(0)] * (N + 1)
    partial = Fraction(0)
    for n in range((N - 1) // 2 + 1):
        partial += Fraction(comb(2 * n, n) ** r, 4 ** (n * r)) * lam**n
        c[2 * n + 1] = partial / (2 * n + 1)
    return TruncatedSeries(c, N)


def stienstra_b(r: int, n: int, lam: RationalLike) -> Fraction:
    """rF(r-1)(-n, ..., -n; 1, ..., 1; lam) = sum_k binom(n,k)^r ((-1)^r lam)^k."""
    z = (-1) ** r * as_rational(lam)
    return sum((comb(n, k) ** r * z**k for k in range(n + 1)), Fraction(0))


def stienstra_logarithm(r: int, lam: RationalLike, N: int) -> TruncatedSeries:
    c = [Fraction(0)] * (N + 1)
    for n in range((N - 1) // 2 + 1):
        c[2 * n + 1] = stienstra_b(r, n, lam) / (2 * n + 1)
    return TruncatedSeries(c, N)


def log_numerators(log: TruncatedSeries) -> list[Fraction]:
    """The sequence a_n = n * [tau^n] log, so a_{2k+1} is the k-th partial sum."""
    return [i * c for i, c in enumerate(log.coeffs)]


def fp_type_ratio(alpha: PadicInt, sequence: Sequence, p: int, m: int, s: int) -> CongruenceReport:
    """a_{m p^s} == alpha * a_{m p^(s-1)} mod p^s, cross-multiplied."""
    hi, lo = m * p**s, m * p ** (s - 1)
    if hi >= len(sequence):
        raise IndexOutOfRange(f"index {hi} beyond sequence length {len(sequence)}")
    prec = alpha.prec
    a_hi, a_lo = as_rational(sequence[hi]), as_rational(sequence[lo])
    if not (is_p_integral(a_hi, p) and is_p_integral(a_lo, p)):
        raise NotPIntegral("sequence entries must be p-integral")
    diff = reduce_rational(a_hi, p, prec) - alpha * reduce_rational(a_lo, p, prec)
    return from_residue("fp_type_ratio", {"p": p, "m": m, "s": s}, s, diff.residue, p, diff.prec,
                        alpha=alpha.residue)
