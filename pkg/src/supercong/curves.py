"""Point counts, traces, reduction types and unit roots for the Legendre and CM families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .errors import BadReduction, DegenerateLambda, NotPIntegral, Supersingular, TooLarge
from .padic import PadicInt, RationalLike, as_rational, hensel_unit_root, is_p_integral, legendre_symbol, reduce_rational

LEGENDRE = "legendre"
CM = "cm"

# loop size guard for the r-dimensional affine count
AFFINE_LIMIT = 2_000_000


@dataclass(frozen=True)
class CurveId:
    """L_lam: y^2 = x(x-1)(x-lam)   or   E_lam: y^2 = (x-1)(x^2 - 1/(1-lam))."""

    family: str
    lam: Fraction

    def __post_init__(self):
        if self.family not in (LEGENDRE, CM):
            raise ValueError(f"unknown family {self.family!r}")
        lam = as_rational(self.lam)
        object.__setattr__(self, "lam", lam)
        if lam == 1:
            raise DegenerateLambda("lambda = 1 does not define an elliptic curve")
        if lam == 0:
            raise DegenerateLambda("lambda = 0 does not define an elliptic curve")

    @classmethod
    def legendre(cls, lam: RationalLike) -> "CurveId":
        return cls(LEGENDRE, as_rational(lam))

    @classmethod
    def cm(cls, lam: RationalLike) -> "CurveId":
        return cls(CM, as_rational(lam))

    def cubic(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Coefficients (c3, c2, c1, c0) of the defining monic cubic."""
        lam = self.lam
        if self.family == LEGENDRE:
            return Fraction(1), -(1 + lam), lam, Fraction(0)
        c = 1 / (1 - lam)
        return Fraction(1), Fraction(-1), -c, c

    def shifted_model(self) -> tuple[Fraction, Fraction]:
        """(A, B) with E_lam isomorphic to Y^2 = X(X^2 + A X + B) via x = X + 1."""
        if self.family != CM:
            raise ValueError("shifted model is defined for the CM family")
        return Fraction(2), -self.lam / (1 - self.lam)

    def discriminant(self) -> Fraction:
        _, b, c, d = self.cubic()
        return 18 * b * c * d - 4 * b**3 * d + b**2 * c**2 - 4 * c**3 - 27 * d**2


@dataclass(frozen=True)
class CurveLocalData:
    curve: CurveId
    p: int
    count: int
    trace: int
    good_reduction: bool
    unit_root: Optional[PadicInt] = None

    @property
    def ordinary(self) -> bool:
        return self.trace % self.p != 0

    @property
    def supersingular(self) -> bool:
        return not self.ordinary


def good_reduction(curve: CurveId, p: int) -> bool:
    lam = curve.lam
    if not is_p_integral(lam, p):
        return False
    if curve.family == CM and (1 - lam).numerator % p == 0:
        return False
    disc = curve.discriminant()
    return is_p_integral(disc, p) and disc.numerator % p != 0


def _cubic_mod(curve: CurveId, p: int) -> tuple[int, int, int, int]:
    return tuple(reduce_rational(c, p, 1).residue for c in curve.cubic())


def trace_of_frobenius(curve: CurveId, p: int) -> int:
    if not good_reduction(curve, p):
        if not is_p_integral(curve.lam, p):
            raise NotPIntegral(f"lambda = {curve.lam} is not {p}-integral")
        raise BadReduction(f"{curve.family} curve at lambda = {curve.lam} has bad reduction at {p}")
    return -kernels.cubic_char_sum(*_cubic_mod(curve, p), p)


def count_points(curve: CurveId, p: int, s: Optional[int] = None) -> CurveLocalData:
    """Projective point count over F_p by a quadratic character sum.

    With ``s`` given, the unit root mod p^s is attached (0 when supersingular).
    """
    trace = trace_of_frobenius(curve, p)
    if trace * trace > 4 * p:
        raise AssertionError(f"Hasse bound violated: trace {trace} at p = {p}")
    root = None
    if s is not None:
        root = PadicInt(p, s, 0) if trace % p == 0 else hensel_unit_root(trace, p, s)
    return CurveLocalData(curve, p, p + 1 - trace, trace, True, root)


def unit_root(curve: CurveId, p: int, s: int) -> PadicInt:
    """Unit root of X^2 - a_p X + p mod p^s; 0 at supersingular primes."""
    trace = trace_of_frobenius(curve, p)
    try:
        return hensel_unit_root(trace, p, s)
    except Supersingular:
        return PadicInt(p, s, 0)


def hasse_invariant(lam: RationalLike, p: int) -> PadicInt:
    """(-1)^((p-1)/2) sum_i binom((p-1)/2, i)^2 lam^i mod p."""
    lam = as_rational(lam)
    if not is_p_integral(lam, p):
        raise NotPIntegral(f"lambda = {lam} is not {p}-integral")
    l = reduce_rational(lam, p, 1).residue
    h = (p - 1) // 2
    total = 0
    c = 1
    lp = 1
    for i in range(h + 1):
        total = (total + c * c * lp) % p
        c = c * (h - i) * pow(i + 1, -1, p) % p
        lp = lp * l % p
    return PadicInt(p, 1, total if h % 2 == 0 else -total)


def affine_variety_count_mod_p(r: int, lam: RationalLike, p: int) -> PadicInt:
    """Affine point count of W^2 = X_1..X_r (X_1-X_2)..(X_{r-1}-X_r)(X_r - lam X_1) mod p."""
    lam = as_rational(lam)
    if not is_p_integral(lam, p):
        raise NotPIntegral(f"lambda = {lam} is not {p}-integral")
    if p**r > AFFINE_LIMIT:
        raise TooLarge(f"p^r = {p**r} exceeds the loop guard {AFFINE_LIMIT}")
    l = reduce_rational(lam, p, 1).residue
    return PadicInt(p, 1, kernels.affine_char_sum(r, l, p))


def k3_trace(lam: RationalLike, p: int) -> PadicInt:
    """((1-lam)/p) (a_p(lam)^2 - p) mod p, from the E_lam trace."""
    lam = as_rational(lam)
    a = trace_of_frobenius(CurveId.cm(lam), p)
    return PadicInt(p, 1, legendre_symbol(1 - lam, p) * (a * a - p))


@dataclass(frozen=True)
class CmCatalogEntry:
    lam: Fraction
    note: str
    degenerate: bool = False


_CATALOG = (
    (Fraction(-8), "j = 1728, discriminant -4"),
    (Fraction(1), "degenerate: E_1 is not an elliptic curve"),
    (Fraction(-1, 8), "j = 287496, discriminant -16"),
    (Fraction(4), "j = 0, discriminant -3"),
    (Fraction(1, 4), "j = 54000, discriminant -12"),
    (Fraction(64), "j = -3375, discriminant -7"),
    (Fraction(1, 64), "j = 16581375, discriminant -28"),
    (Fraction(-1), "j = 8000, discriminant -8"),
)


def cm_catalog() -> list[CmCatalogEntry]:
    return [CmCatalogEntry(lam, note, lam == 1) for lam, note in _CATALOG]


def cm_catalog_values(include_degenerate: bool = False) -> list[Fraction]:
    return [e.lam for e in cm_catalog() if include_degenerate or not e.degenerate]


# j-invariants of the thirteen rational CM orders
RATIONAL_CM_J = frozenset({
    0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000, 16581375,
    -884736000, -147197952000, -262537412640768000,
})


def j_invariant(curve: CurveId) -> Fraction:
    lam = curve.lam
    if curve.family == LEGENDRE:
        return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)
    A, B = curve.shifted_model()
    # Y^2 = X^3 + A X^2 + B X
    return 256 * (A * A - 3 * B) ** 3 / (B * B * (A * A - 4 * B))


def has_cm(curve: CurveId) -> bool:
    """CM test for rational lambda through the rational CM j-invariants."""
    j = j_invariant(curve)
    return j.denominator == 1 and int(j) in RATIONAL_CM_J


def hasse_bound_ok(trace: int, p: int) -> bool:
    return trace * trace <= 4 * p
