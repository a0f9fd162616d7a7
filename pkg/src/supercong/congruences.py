"""Named congruence checkers.  Each returns a CongruenceReport.

Precondition failures (bad reduction, supersingular primes where a ratio is
meaningless, degenerate lambda, ...) produce skipped reports whose reason is
the error code; they never raise.  Working precision is the claimed exponent
plus ``GUARD`` digits unless overridden, so observed defects above the claim
stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Optional, Sequence, Union

from .curves import CurveId, good_reduction, has_cm, trace_of_frobenius
from .errors import (
    BadReduction,
    DegenerateLambda,
    IndexOutOfRange,
    NotAUnit,
    NotPIntegral,
    SupercongError,
    TooLarge,
)
from .hyperseries import (
    ETA_2Z4_4Z4,
    ETA_4Z_6,
    ETA_Z3_7Z3,
    apery_half,
    asd_coefficient_mod,
    aux_sequence,
    cubed_central_sum,
    eta_coefficients,
    f_r_mod,
    f_r_term,
    legendre_poly_mod,
    twofone_mod,
    zh_sun_3f2_mod,
)
from .curves import affine_variety_count_mod_p
from .padic import (
    PadicInt,
    QuadExtElem,
    RationalLike,
    Valuation,
    as_rational,
    hensel_unit_root,
    is_p_integral,
    legendre_symbol,
    reduce_rational,
    residue_valuation,
    sqrt_mod,
    valuation,
)
from .report import (
    CONJECTURE,
    THEOREM,
    CongruenceReport,
    DworkHypothesisReport,
    from_exact,
    from_residue,
    skipped,
)

GUARD = 2


def _work(claimed: int, precision: Optional[int]) -> int:
    return precision if precision else claimed + GUARD


def _require_odd(m: int):
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be a positive odd integer")


def _cm_curve(lam: Fraction, p: int) -> CurveId:
    """E_lam with every gate the CM-family checkers share."""
    if lam == 1:
        raise DegenerateLambda("lambda = 1")
    if not is_p_integral(lam, p):
        raise NotPIntegral(f"lambda = {lam} is not {p}-integral")
    curve = CurveId.cm(lam)
    if not good_reduction(curve, p):
        raise BadReduction(f"E_lambda has bad reduction at {p}")
    return curve


def _legendre_curve(lam: Fraction, p: int) -> CurveId:
    if lam == 1 or lam == 0:
        raise DegenerateLambda(f"lambda = {lam}")
    if not is_p_integral(lam, p):
        raise NotPIntegral(f"lambda = {lam} is not {p}-integral")
    curve = CurveId.legendre(lam)
    if not good_reduction(curve, p):
        raise BadReduction(f"L_lambda has bad reduction at {p}")
    return curve


def _character(lam: Fraction, p: int, which: str) -> int:
    if which == "1-lambda":
        return legendre_symbol(1 - lam, p)
    if which == "lambda-1":
        return legendre_symbol(lam - 1, p)
    raise ValueError(f"unknown character {which!r}")


def _unit_root_or_zero(trace: int, p: int, K: int) -> PadicInt:
    return PadicInt(p, K, 0) if trace % p == 0 else hensel_unit_root(trace, p, K)


# Theorem-level checks on F_3

def theorem12_check(lam: RationalLike, p: int, character: str = "1-lambda",
                    precision: Optional[int] = None) -> CongruenceReport:
    """F_3(lam)_{(p-1)/2} == chi * alpha^2 mod p^2, with alpha = 0 at supersingular p."""
    lam = as_rational(lam)
    name = "theorem12"
    params = {"lambda": lam, "p": p}
    try:
        curve = _cm_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, 2, e.code)
    K = _work(2, precision)
    trace = trace_of_frobenius(curve, p)
    alpha = _unit_root_or_zero(trace, p, K)
    chi = _character(lam, p, character)
    lhs = f_r_mod(lam, 3, (p - 1) // 2, p, K)
    diff = lhs - chi * alpha * alpha
    return from_residue(name, params, 2, diff.residue, p, K, THEOREM,
                        lhs=lhs.residue, trace=trace, alpha=alpha.residue, character=character,
                        chi=chi, ordinary=trace % p != 0, cm=has_cm(curve))


def _f3_ratio_data(lam: Fraction, p: int, m: int, s: int, K: int):
    num = f_r_mod(lam, 3, (m * p**s - 1) // 2, p, K)
    den = f_r_mod(lam, 3, (m * p ** (s - 1) - 1) // 2, p, K)
    return num, den


def theorem11_k3_check(lam: RationalLike, p: int, m: int = 1, s: int = 1, character: str = "1-lambda",
                       precision: Optional[int] = None) -> CongruenceReport:
    """F_3(lam)_{(mp^s-1)/2} == chi alpha^2 F_3(lam)_{(mp^(s-1)-1)/2} mod p^s."""
    _require_odd(m)
    lam = as_rational(lam)
    name = "theorem11"
    params = {"lambda": lam, "p": p, "m": m, "s": s}
    try:
        curve = _cm_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, s, e.code)
    if f_r_mod(lam, 3, (p - 1) // 2, p, 1).residue == 0:
        return skipped(name, params, s, "NotOrdinary")
    trace = trace_of_frobenius(curve, p)
    if trace % p == 0:
        return skipped(name, params, s, "Supersingular")
    K = _work(s, precision)
    alpha = hensel_unit_root(trace, p, K)
    chi = _character(lam, p, character)
    num, den = _f3_ratio_data(lam, p, m, s, K)
    diff = num - chi * alpha * alpha * den
    return from_residue(name, params, s, diff.residue, p, K, THEOREM,
                        trace=trace, alpha=alpha.residue, chi=chi, cm=has_cm(curve))


def conjecture33_check(lam: RationalLike, p: int, m: int = 1, s: int = 1,
                       precision: Optional[int] = None) -> CongruenceReport:
    """The theorem11 congruence strengthened to mod p^(2s) for CM lambda (evidence only)."""
    _require_odd(m)
    lam = as_rational(lam)
    name = "conjecture33"
    params = {"lambda": lam, "p": p, "m": m, "s": s}
    try:
        curve = _cm_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, 2 * s, e.code, CONJECTURE)
    if not has_cm(curve):
        return skipped(name, params, 2 * s, "NotCM", CONJECTURE)
    trace = trace_of_frobenius(curve, p)
    if trace % p == 0:
        return skipped(name, params, 2 * s, "Supersingular", CONJECTURE)
    K = _work(2 * s, precision)
    alpha = hensel_unit_root(trace, p, K)
    chi = legendre_symbol(1 - lam, p)
    num, den = _f3_ratio_data(lam, p, m, s, K)
    diff = num - chi * alpha * alpha * den
    return from_residue(name, params, 2 * s, diff.residue, p, K, CONJECTURE,
                        trace=trace, alpha=alpha.residue, chi=chi)


def prop_3f2_check(lam: RationalLike, p: int, m: int = 1, s: int = 1,
                   precision: Optional[int] = None) -> CongruenceReport:
    """3F2(1/2,(1-M)/2,(1+M)/2;1,1;lam) at M = mp^s vs M = mp^(s-1), mod p^(2s)."""
    _require_odd(m)
    lam = as_rational(lam)
    name = "prop_3f2"
    params = {"lambda": lam, "p": p, "m": m, "s": s}
    try:
        curve = _cm_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, 2 * s, e.code)
    if not has_cm(curve):
        return skipped(name, params, 2 * s, "NotCM")
    trace = trace_of_frobenius(curve, p)
    if trace % p == 0:
        return skipped(name, params, 2 * s, "Supersingular")
    K = _work(2 * s, precision)
    alpha = hensel_unit_root(trace, p, K)
    chi = legendre_symbol(1 - lam, p)
    num = zh_sun_3f2_mod((m * p**s - 1) // 2, lam, p, K)
    den = zh_sun_3f2_mod((m * p ** (s - 1) - 1) // 2, lam, p, K)
    diff = num - chi * alpha * alpha * den
    return from_residue(name, params, 2 * s, diff.residue, p, K, THEOREM,
                        trace=trace, alpha=alpha.residue, chi=chi)


def sun_target_check(lam: RationalLike, p: int, precision: Optional[int] = None) -> CongruenceReport:
    """sum binom(2k,k)^3 (lam/64)^k mod p^2 against its predicted target.

    For lam = 1 the target is the p-th coefficient of eta(4z)^6; for lam = 64
    the coefficient of eta(z)^3 eta(7z)^3 is compared in addition to the
    curve-side target (4a^2 - 2p form, i.e. chi * alpha^2).
    """
    lam = as_rational(lam)
    name = "sun_target"
    params = {"lambda": lam, "p": p}
    K = _work(2, precision)
    if not is_p_integral(lam, p):
        return skipped(name, params, 2, "NotPIntegral")
    lhs = f_r_mod(lam, 3, (p - 1) // 2, p, K)
    targets = {}
    context = {"lhs": lhs.residue}
    if lam != 1:
        try:
            curve = _cm_curve(lam, p)
        except SupercongError as e:
            context["curve_side"] = e.code
        else:
            trace = trace_of_frobenius(curve, p)
            alpha = _unit_root_or_zero(trace, p, K)
            chi = legendre_symbol(1 - lam, p)
            targets["curve"] = chi * alpha * alpha
            context.update(trace=trace, character=chi, sun_form=(trace * trace - 2 * p) * chi)
    if lam == 1:
        targets["eta"] = PadicInt(p, K, _eta(ETA_4Z_6, p))
    elif lam == 64 and p != 7:
        targets["eta"] = PadicInt(p, K, _eta(ETA_Z3_7Z3, p))
    if not targets:
        return skipped(name, params, 2, context.get("curve_side", "BadReduction"))
    observed = None
    for label, t in targets.items():
        v = (lhs - t).valuation()
        context[f"defect_{label}"] = str(v)
        observed = v if observed is None or v < observed else observed
    return CongruenceReport(name, params, 2, observed, THEOREM, None, context)


@lru_cache(maxsize=None)
def _eta_table(spec_factors: tuple, N: int) -> tuple:
    from .hyperseries import EtaProductSpec

    return tuple(eta_coefficients(EtaProductSpec(spec_factors), N))


def _eta(spec, n: int) -> int:
    N = 1 << max(8, (n + 1).bit_length())
    return _eta_table(spec.factors, N)[n]


def eta_coefficient(spec, n: int) -> int:
    return _eta(spec, n)


# Legendre-family congruences

def asd_check(lam: RationalLike, p: int, m: int = 1, s: int = 1,
              precision: Optional[int] = None) -> CongruenceReport:
    """a_{mp^(s+1)} - A_p a_{mp^s} + p a_{mp^(s-1)} == 0 mod p^(s+1)."""
    lam = as_rational(lam)
    name = "asd"
    params = {"lambda": lam, "p": p, "m": m, "s": s}
    try:
        curve = _legendre_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, s + 1, e.code)
    K = _work(s + 1, precision)
    A = trace_of_frobenius(curve, p)
    a2 = asd_coefficient_mod(m * p ** (s + 1), lam, p, K)
    a1 = asd_coefficient_mod(m * p**s, lam, p, K)
    a0 = asd_coefficient_mod(m * p ** (s - 1), lam, p, K) if s >= 1 else PadicInt(p, K, 0)
    diff = a2 - A * a1 + p * a0
    return from_residue(name, params, s + 1, diff.residue, p, K, THEOREM, trace=A)


def hecke_recursion_check(coefficients: Sequence[int], a_p: int, p: int, m: int, s: int,
                          weight: int = 2, character: Union[int, Callable[[int], int]] = 1) -> CongruenceReport:
    """Exact test of c_{mp^(s+1)} - a_p c_{mp^s} + chi(p) p^(weight-1) c_{mp^(s-1)} = 0."""
    chi = character(p) if callable(character) else character
    hi = m * p ** (s + 1)
    if hi >= len(coefficients):
        raise IndexOutOfRange(f"index {hi} beyond {len(coefficients) - 1}")
    c = coefficients
    last = c[m * p ** (s - 1)] if s >= 1 else 0
    diff = c[hi] - a_p * c[m * p**s] + chi * p ** (weight - 1) * last
    return from_exact("hecke", {"p": p, "m": m, "s": s}, None, Fraction(diff), p,
                      THEOREM, weight=weight, chi=chi, value=diff)


def twofone_ratio_check(lam: RationalLike, p: int, m: int = 1, s: int = 1, sign: str = "-",
                        twist: bool = True, precision: Optional[int] = None) -> CongruenceReport:
    """2F1((1-M)/2, (1 +- M)/2; 1; lam) at M = mp^s vs mp^(s-1): ratio == (-1/p) beta mod p^s."""
    _require_odd(m)
    lam = as_rational(lam)
    name = "twofone_ratio"
    params = {"lambda": lam, "p": p, "m": m, "s": s, "variant": sign}
    try:
        curve = _legendre_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, s, e.code)
    A = trace_of_frobenius(curve, p)
    if A % p == 0:
        return skipped(name, params, s, "Supersingular")
    K = _work(s, precision)
    beta = hensel_unit_root(A, p, K)
    k1, k0 = (m * p**s - 1) // 2, (m * p ** (s - 1) - 1) // 2
    num = twofone_mod(k1, lam, p, K, sign)
    den = twofone_mod(k0, lam, p, K, sign)
    factor = legendre_symbol(-1, p) if twist else 1
    diff = num - factor * beta * den
    return from_residue(name, params, s, diff.residue, p, K, THEOREM, trace=A, beta=beta.residue, twist=twist)


def squared_2f1_supercong_check(lam: RationalLike, p: int, m: int = 1, s: int = 1, variant: str = "-",
                                precision: Optional[int] = None) -> CongruenceReport:
    """The doubled-strength 2F1 congruences mod p^(2s).

    The claim is 2s when the Legendre curve L_lam has CM; otherwise it is
    downgraded to s and the context records ``cm_claim = "NotCM"``.  The
    working precision is always 2s + GUARD so the observed defect is comparable
    across both cases.
    """
    _require_odd(m)
    lam = as_rational(lam)
    name = "squared_2f1"
    params = {"lambda": lam, "p": p, "m": m, "s": s, "variant": variant}
    try:
        curve = _legendre_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, 2 * s, e.code)
    A = trace_of_frobenius(curve, p)
    if A % p == 0:
        return skipped(name, params, 2 * s, "Supersingular")
    cm = has_cm(curve)
    claimed = 2 * s if cm else s
    K = _work(2 * s, precision)
    beta = hensel_unit_root(A, p, K)
    M1, M0 = m * p**s, m * p ** (s - 1)
    k1, k0 = (M1 - 1) // 2, (M0 - 1) // 2
    num = twofone_mod(k1, lam, p, K, variant)
    den = twofone_mod(k0, lam, p, K, variant)
    if variant == "-":
        factor = legendre_symbol(1 - lam, p) * reduce_rational(lam - 1, p, K) ** ((M1 - M0) // 2)
    else:
        factor = PadicInt(p, K, legendre_symbol(-1, p))
    diff = num - factor * beta * den
    return from_residue(name, params, claimed, diff.residue, p, K, THEOREM,
                        trace=A, beta=beta.residue, cm_claim="CM" if cm else "NotCM")


# Coster--van Hamme

def _sqrt_one_minus_lambda(lam: Fraction, p: int, K: int):
    t = reduce_rational(1 - lam, p, K).residue
    if legendre_symbol(t, p) == 1:
        return sqrt_mod(t, p, K), None
    return QuadExtElem.generator(p, K, t), t


def _fourth_roots(p: int, K: int, t: Optional[int]) -> list:
    one = QuadExtElem(p, K, t, 1) if t is not None else PadicInt(p, K, 1)
    roots = [one, -one]
    if p % 4 == 1:
        i = sqrt_mod(-1, p, K)
        roots += [one * i.residue, -(one * i.residue)]
    elif t is not None:
        c = sqrt_mod((-pow(t, -1, p**K)) % p**K, p, K).residue
        cu = QuadExtElem(p, K, t, 0, c)
        roots += [cu, -cu]
    return roots


def _ring_valuation(x) -> Valuation:
    return x.valuation()


@lru_cache(maxsize=4096)
def cvh_epsilon(lam: Fraction, p: int, K: int):
    """Fourth root of unity eps with P_{(p-1)/2}(sqrt(1-lam)) == eps * alpha mod p, or None."""
    curve = _cm_curve(lam, p)
    trace = trace_of_frobenius(curve, p)
    alpha = hensel_unit_root(trace, p, K)
    x, t = _sqrt_one_minus_lambda(lam, p, K)
    value = legendre_poly_mod((p - 1) // 2, x)
    for eps in _fourth_roots(p, K, t):
        if (value - eps * alpha).valuation() >= 1:
            return eps
    return None


def cvh_check(lam: RationalLike, p: int, m: int = 1, s: int = 1,
              precision: Optional[int] = None) -> CongruenceReport:
    """P_{(mp^s-1)/2}(sqrt(1-lam)) == eps^(mp^(s-1)) alpha P_{(mp^(s-1)-1)/2}(sqrt(1-lam)) mod p^(2s).

    eps is fixed per (lam, p) from the m = s = 1 instance modulo p.
    """
    _require_odd(m)
    lam = as_rational(lam)
    name = "cvh"
    params = {"lambda": lam, "p": p, "m": m, "s": s}
    try:
        curve = _cm_curve(lam, p)
    except SupercongError as e:
        return skipped(name, params, 2 * s, e.code)
    if not has_cm(curve):
        return skipped(name, params, 2 * s, "NotCM")
    trace = trace_of_frobenius(curve, p)
    if trace % p == 0:
        return skipped(name, params, 2 * s, "Supersingular")
    K = _work(2 * s, precision)
    alpha = hensel_unit_root(trace, p, K)
    eps = cvh_epsilon(lam, p, K)
    if eps is None:
        return CongruenceReport(name, params, 2 * s, Valuation.of(0), THEOREM, None,
                                {"error": "NoFourthRoot", "trace": trace})
    x, t = _sqrt_one_minus_lambda(lam, p, K)
    num = legendre_poly_mod((m * p**s - 1) // 2, x)
    den = legendre_poly_mod((m * p ** (s - 1) - 1) // 2, x)
    factor = eps ** (m * p ** (s - 1))
    diff = num - factor * alpha * den
    context = {
        "trace": trace,
        "alpha": alpha.residue,
        "epsilon": _describe(eps),
        "epsilon4_is_one": eps ** 4 == 1,
        "ring": "Z/p^K" if t is None else f"Z/p^K[u]/(u^2-{t})",
    }
    if m == 1 and s == 1:
        chi = legendre_symbol(1 - lam, p)
        sq = num * num - chi * alpha * alpha
        context["squared_defect"] = str(sq.valuation())
    return CongruenceReport(name, params, 2 * s, diff.valuation(), THEOREM, None, context)


def _describe(eps) -> str:
    if isinstance(eps, PadicInt):
        return str(eps.signed())
    m = eps.modulus
    a = eps.a - m if eps.a > m // 2 else eps.a
    b = eps.b - m if eps.b > m // 2 else eps.b
    return f"{a}+{b}u" if b else str(a)


# Dwork-type checks

def _A(n: int, r: int) -> Fraction:
    return f_r_term(n, r)


def dwork_hypotheses_check(r: int, p: int, n_max: int = 60, m_max: int = 3, s_max: int = 2) -> DworkHypothesisReport:
    """Hypotheses a), b), c) for A(n) = ((1/2)_n/n!)^r on a finite window (s from 0)."""
    cache: dict = {}

    def A(n):
        if n not in cache:
            cache[n] = _A(n, r)
        return cache[n]

    witnesses = []
    ok_a = True
    for n in range(n_max + 1):
        base = A(n) / A(n // p)
        for m in range(1, m_max + 1):
            for s in range(s_max + 1):
                lhs = A(n + m * p ** (s + 1)) / A(n // p + m * p**s)
                if valuation(lhs - base, p) < s + 1:
                    ok_a = False
                    witnesses.append(("a", n, m, s))
    ok_b = True
    for n in range(n_max + 1):
        if valuation(A(n) / A(n // p), p) < 0:
            ok_b = False
            witnesses.append(("b", n))
    ok_c = True
    for i in range((p + 1) // 2, p):
        if valuation(A(i), p) < 1:
            ok_c = False
            witnesses.append(("c", i))
    return DworkHypothesisReport(r, p, n_max, m_max, s_max, ok_a, ok_b, ok_c, tuple(witnesses[:20]))


def _ratio_valuation(num: PadicInt, den: PadicInt, target: PadicInt) -> Valuation:
    """Valuation of num/den - target, given residues; capped by the precision of target."""
    vd = den.valuation()
    if not vd.finite or vd.at_least:
        raise NotAUnit("denominator vanishes at working precision")
    diff = num - target * den
    v = diff.valuation()
    cap = target.prec
    raw = v.value - vd.value
    if v.at_least or raw >= cap:
        return Valuation.of(min(raw, cap), at_least=True)
    return Valuation.of(raw)


def dwork_alpha(r: int, lam: Union[RationalLike, PadicInt], p: int, s: int) -> PadicInt:
    """The Dwork unit alpha_r mod p^s from the m = 1 ratio at level s."""
    K = s + GUARD
    num = f_r_mod(lam, r, (p**s - 1) // 2, p, K)
    den = f_r_mod(lam, r, (p ** (s - 1) - 1) // 2, p, K)
    if not den.is_unit():
        raise NotAUnit("m = 1 denominator is not a unit")
    return PadicInt(p, s, (num * den.inverse()).residue)


def dwork_ratio_check(r: int, lam: RationalLike, p: int, m: int = 1, s: int = 1,
                      s_window: Optional[int] = None) -> CongruenceReport:
    """F_r(lam)_{(mp^s-1)/2} / F_r(lam)_{(mp^(s-1)-1)/2} == alpha_r mod p^(s - d_m).

    alpha_r comes from the m = 1 ratio one level higher, so agreement for
    m > 1 also certifies that the limit does not depend on m.  d_m is the
    maximal valuation of the numerators over s' = 0..s_window.
    """
    _require_odd(m)
    lam = as_rational(lam)
    name = "dwork_ratio"
    params = {"lambda": lam, "p": p, "m": m, "s": s, "r": r}
    if not is_p_integral(lam, p):
        return skipped(name, params, s, "NotPIntegral")
    if f_r_mod(lam, r, (p - 1) // 2, p, 1).residue == 0:
        return skipped(name, params, s, "NotOrdinary")
    window = max(s, s_window or s)
    K = window + 2 * GUARD
    sums = [f_r_mod(lam, r, (m * p**j - 1) // 2, p, K) for j in range(window + 1)]
    vals = [x.valuation() for x in sums]
    d_m = max(v.value for v in vals)
    alpha = dwork_alpha(r, lam, p, s + 1)
    claimed = s - d_m
    observed = _ratio_valuation(sums[s], sums[s - 1], alpha)
    return CongruenceReport(name, params, claimed, observed, THEOREM, None,
                            {"d_m": d_m, "alpha": alpha.residue})


def eq1_dwork_fullsum_check(r: int, lam: RationalLike, p: int, m: int = 1, s: int = 1) -> CongruenceReport:
    """F_r(lam)_{mp^s - 1} == gamma F_r(lam^p)_{mp^(s-1) - 1} mod p^s, cross-multiplied.

    gamma is extracted from the m = 1 instance at level s + 1.
    """
    lam = as_rational(lam)
    name = "eq1_dwork"
    params = {"lambda": lam, "p": p, "m": m, "s": s, "r": r}
    if not is_p_integral(lam, p):
        return skipped(name, params, s, "NotPIntegral")
    if f_r_mod(lam, r, p - 1, p, 1).residue == 0:
        return skipped(name, params, s, "NotOrdinary")
    K = s + 1 + GUARD
    lam_p = lam**p
    top = s + 1
    g_num = f_r_mod(lam, r, p**top - 1, p, K)
    g_den = f_r_mod(lam_p, r, p ** (top - 1) - 1, p, K)
    if not g_den.is_unit():
        return skipped(name, params, s, "NotAUnit")
    gamma = PadicInt(p, top, (g_num * g_den.inverse()).residue)
    num = f_r_mod(lam, r, m * p**s - 1, p, K)
    den = f_r_mod(lam_p, r, m * p ** (s - 1) - 1, p, K)
    diff = (num - gamma * den).reduce(top)
    return from_residue(name, params, s, diff.residue, p, diff.prec, THEOREM, gamma=gamma.residue)


def deuring_check(r: int, lam: RationalLike, p: int) -> CongruenceReport:
    """#X_r(lam)(F_p) == (-1)^r F_r(lam)_{p-1} == (-1)^r F_r(lam)_{(p-1)/2} mod p."""
    lam = as_rational(lam)
    name = "deuring"
    params = {"lambda": lam, "p": p, "r": r}
    try:
        count = affine_variety_count_mod_p(r, lam, p)
    except (TooLarge, NotPIntegral) as e:
        return skipped(name, params, 1, e.code)
    sign = (-1) ** r
    full = f_r_mod(lam, r, p - 1, p, 1 + GUARD)
    half = f_r_mod(lam, r, (p - 1) // 2, p, 1 + GUARD)
    v_count = (count - sign * full.reduce(1)).valuation()
    v_tail = (full - half).valuation()
    observed = v_count if v_count <= v_tail else v_tail
    return CongruenceReport(name, params, 1, observed, THEOREM, None,
                            {"count_mod_p": count.residue, "sign": sign, "tail_defect": str(v_tail),
                             "count_defect": str(v_count)})


# Harmonic-sum corollaries

def corollary14_check(p: int) -> CongruenceReport:
    """sum_{i<=(p-1)/2} binom(2i,i)^3 (H_{2i} - H_i) == 0 mod p."""
    name = "corollary14"
    params = {"p": p}
    if p <= 3:
        return skipped(name, params, 1, "PTooSmall")
    K = 1 + GUARD
    M = p**K
    inv = [0] + [pow(j, -1, M) for j in range(1, p)]
    total = 0
    inner = 0
    c = 1
    for i in range(1, (p - 1) // 2 + 1):
        c = comb(2 * i, i) % M
        # H_{2i} - H_i = sum_{j=i+1}^{2i} 1/j, updated incrementally
        inner = (inner - inv[i] + inv[2 * i - 1] + inv[2 * i]) % M
        total = (total + c**3 * inner) % M
    return from_residue(name, params, 1, total, p, K)


def corollary13_check(lam: RationalLike, p: int) -> CongruenceReport:
    """b_{(p-1)/2} == 0 mod p for CM lambda with lambda/64 a p-adic unit."""
    lam = as_rational(lam)
    name = "corollary13"
    params = {"lambda": lam, "p": p}
    try:
        curve = _cm_curve(lam, p)
        point = aux_sequence(lam, p, (p - 1) // 2)
    except SupercongError as e:
        return skipped(name, params, 1, e.code)
    if not has_cm(curve):
        return skipped(name, params, 1, "NotCM")
    return from_exact(name, params, 1, point.b, p)


def corollary13_sum(lam: RationalLike, p: int) -> Fraction:
    return aux_sequence(lam, p, (p - 1) // 2).b


def lemma41_check(lam: RationalLike, p: int, k: int, n: int) -> CongruenceReport:
    """a_{k+pn} == a_k a_n + p b_k sum_{i<=n} i binom(2i,i)^3 (lam/64)^i mod p^2."""
    lam = as_rational(lam)
    name = "lemma41"
    params = {"lambda": lam, "p": p, "k": k, "n": n}
    if not (p - 1) // 2 <= k < p:
        raise ValueError("need (p-1)/2 <= k < p")
    try:
        bk = aux_sequence(lam, p, k).b
    except NotAUnit as e:
        return skipped(name, params, 2, e.code)
    u = lam / 64
    weighted = sum((i * comb(2 * i, i) ** 3 * u**i for i in range(n + 1)), Fraction(0))
    diff = cubed_central_sum(lam, k + p * n) - cubed_central_sum(lam, k) * cubed_central_sum(lam, n) - p * bk * weighted
    return from_exact(name, params, 2, diff, p)


# Apery-type congruences

def beukers_kilbourn_check(p: int, depth: int = 2) -> CongruenceReport:
    """depth 2: Apery number c_{(p-1)/2} == c_p mod p^2; depth 3: F_4(1)_{(p-1)/2} == c_p mod p^3.

    c_p is the p-th coefficient of eta(2z)^4 eta(4z)^4.
    """
    if depth not in (2, 3):
        raise ValueError("depth must be 2 or 3")
    name = "beukers" if depth == 2 else "kilbourn"
    params = {"p": p, "depth": depth}
    if p <= 2:
        return skipped(name, params, depth, "PTooSmall")
    K = depth + GUARD
    cp = _eta(ETA_2Z4_4Z4, p)
    if depth == 2:
        lhs = PadicInt(p, K, apery_half((p - 1) // 2))
    else:
        lhs = f_r_mod(1, 4, (p - 1) // 2, p, K)
    return from_residue(name, params, depth, (lhs - cp).residue, p, K, THEOREM, c_p=cp, lhs=lhs.residue)


# registry used by the command line and the scan driver

@dataclass(frozen=True)
class CheckerSpec:
    name: str
    func: Callable
    axes: tuple
    kind: str = THEOREM
    defaults: tuple = ()

    def call(self, **kw) -> CongruenceReport:
        args = dict(self.defaults)
        args.update({k: v for k, v in kw.items() if k in self.axes or k == "precision"})
        if "precision" in args and "precision" not in _ACCEPTS_PRECISION.get(self.name, ()):
            args.pop("precision")
        return self.func(**args)


_ACCEPTS_PRECISION = {
    n: ("precision",)
    for n in ("theorem12", "theorem11", "conjecture33", "prop_3f2", "sun_target", "asd",
              "twofone_ratio", "squared_2f1", "cvh")
}


def _wrap(func, rename: dict):
    def call(**kw):
        return func(**{rename.get(k, k): v for k, v in kw.items()})
    return call


_L = {"lambda": "lam"}

CHECKERS = {
    spec.name: spec
    for spec in [
        CheckerSpec("theorem12", _wrap(theorem12_check, _L), ("lambda", "p")),
        CheckerSpec("theorem11", _wrap(theorem11_k3_check, _L), ("lambda", "p", "m", "s")),
        CheckerSpec("conjecture33", _wrap(conjecture33_check, _L), ("lambda", "p", "m", "s"), CONJECTURE),
        CheckerSpec("prop_3f2", _wrap(prop_3f2_check, _L), ("lambda", "p", "m", "s")),
        CheckerSpec("sun_target", _wrap(sun_target_check, _L), ("lambda", "p")),
        CheckerSpec("asd", _wrap(asd_check, _L), ("lambda", "p", "m", "s")),
        CheckerSpec("twofone_ratio", _wrap(twofone_ratio_check, {**_L, "variant": "sign"}),
                    ("lambda", "p", "m", "s", "variant")),
        CheckerSpec("squared_2f1", _wrap(squared_2f1_supercong_check, _L), ("lambda", "p", "m", "s", "variant")),
        CheckerSpec("cvh", _wrap(cvh_check, _L), ("lambda", "p", "m", "s")),
        CheckerSpec("dwork_ratio", _wrap(dwork_ratio_check, _L), ("r", "lambda", "p", "m", "s")),
        CheckerSpec("eq1_dwork", _wrap(eq1_dwork_fullsum_check, _L), ("r", "lambda", "p", "m", "s")),
        CheckerSpec("deuring", _wrap(deuring_check, _L), ("r", "lambda", "p")),
        CheckerSpec("corollary13", _wrap(corollary13_check, _L), ("lambda", "p")),
        CheckerSpec("corollary14", corollary14_check, ("p",)),
        CheckerSpec("beukers", beukers_kilbourn_check, ("p",), THEOREM, (("depth", 2),)),
        CheckerSpec("kilbourn", beukers_kilbourn_check, ("p",), THEOREM, (("depth", 3),)),
    ]
}
