from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supercong.errors import NotAUnit, NotInvertible, NotPIntegral, ParseError, Supersingular
from supercong.padic import (
    PadicInt,
    QuadExtElem,
    Valuation,
    as_rational,
    fermat_quotient,
    harmonic,
    hensel_unit_root,
    inverse_mod,
    legendre_symbol,
    odd_primes,
    padic_gamma,
    reduce_rational,
    residue_valuation,
    sqrt_mod,
    teichmuller,
    valuation,
)

PRIMES = [3, 5, 7, 11, 13]


def test_as_rational():
    assert as_rational("-1/8") == Fraction(-1, 8)
    assert as_rational(" 64 ") == 64
    with pytest.raises(ParseError):
        as_rational("1/0")
    with pytest.raises(ParseError):
        as_rational("0.5")
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_valuation_examples():
    assert valuation(Fraction(25, 12), 5) == Valuation.of(2)
    assert not valuation(0, 7).finite
    assert valuation(Fraction(27, 512), 2) == Valuation.of(-9)
    assert valuation(harmonic(4), 5) == Valuation.of(2)


def test_valuation_order_and_text():
    assert Valuation.infinite() > 10**9
    assert Valuation.of(3, at_least=True) >= 3
    assert not Valuation.of(1) >= 2
    for text in ("inf", ">=4", "2", "-3"):
        assert str(Valuation.parse(text)) == text
    assert residue_valuation(0, 5, 3) == Valuation.of(3, at_least=True)
    assert residue_valuation(50, 5, 3) == Valuation.of(2)


def test_inverse_and_reduction():
    assert inverse_mod(8, 5, 2).residue == 22
    assert inverse_mod(1, 11, 3).residue == 1
    assert inverse_mod(12, 5, 2).residue == 23
    with pytest.raises(NotInvertible):
        inverse_mod(10, 5, 2)
    assert reduce_rational(Fraction(27, 512), 5, 2).residue == 21
    assert reduce_rational(13, 5, 1).residue == 3
    with pytest.raises(NotPIntegral):
        reduce_rational(Fraction(1, 64), 2, 3)


def test_legendre_symbol():
    assert legendre_symbol(3, 7) == -1
    assert legendre_symbol(4, 11) == 1
    assert legendre_symbol(63, 11) == -1
    assert legendre_symbol(Fraction(1, 4), 7) == 1
    assert legendre_symbol(14, 7) == 0


def test_teichmuller():
    assert teichmuller(2, 5, 2).residue == 7
    assert teichmuller(1, 13, 4).residue == 1
    # the power map x^(p^(s-1)) gives 24 for (4, 5, 2), a fixed point of y -> y^5
    t = teichmuller(4, 5, 2)
    assert t.residue == 24
    assert pow(24, 5, 25) == 24
    with pytest.raises(NotAUnit):
        teichmuller(10, 5, 2)


def test_hensel_unit_root():
    assert hensel_unit_root(3, 11, 2).residue == 80
    assert (80 * 80 - 3 * 80 + 11) % 121 == 0
    assert hensel_unit_root(1, 5, 1).residue == 1
    with pytest.raises(Supersingular):
        hensel_unit_root(0, 7, 2)


@given(st.sampled_from(PRIMES), st.integers(1, 8), st.integers(-40, 40))
def test_hensel_root_property(p, s, trace):
    if trace % p == 0:
        return
    a = hensel_unit_root(trace, p, s).residue
    assert (a * a - trace * a + p) % p**s == 0
    assert a % p == trace % p


def test_padic_gamma_and_harmonic():
    assert padic_gamma(1, 7, 3).residue == 7**3 - 1
    assert padic_gamma(6, 5, 2).residue == 24
    assert padic_gamma(4, 7, 1).residue == 6
    assert harmonic(0) == 0
    assert harmonic(3) == Fraction(11, 6)
    assert harmonic(4) == Fraction(25, 12)


def test_fermat_quotient():
    assert fermat_quotient(2, 5) == 3
    assert fermat_quotient(1, 7) == 0
    with pytest.raises(NotAUnit):
        fermat_quotient(10, 5)


def test_sqrt_mod():
    r = sqrt_mod(2, 7, 5)
    assert (r.residue**2 - 2) % 7**5 == 0
    with pytest.raises(NotAUnit):
        sqrt_mod(3, 7, 2)


@given(st.sampled_from(PRIMES), st.integers(1, 6), st.integers(), st.integers())
def test_padic_ring_laws(p, s, a, b):
    x, y = PadicInt(p, s, a), PadicInt(p, s, b)
    m = p**s
    assert (x + y).residue == (a + b) % m
    assert (x * y).residue == (a * b) % m
    assert (x - y) + y == x
    if a % p:
        assert x * x.inverse() == 1


def test_padic_mixed_precision_drops_to_min():
    x = PadicInt(5, 4, 7) + PadicInt(5, 2, 1)
    assert x.prec == 2 and x.residue == 8


def test_quadratic_extension():
    p, K, t = 7, 3, 3
    u = QuadExtElem.generator(p, K, t)
    assert u * u == 3
    z = QuadExtElem(p, K, t, 2, 5)
    assert z * z.inverse() == 1
    assert (z * z.conjugate()).is_rational()
    assert (z * z.conjugate()).to_padic() == z.norm()
    with pytest.raises(ValueError):
        QuadExtElem(p, K, 2, 1)  # 2 is a square mod 7


@given(st.integers(), st.integers(), st.integers(), st.integers())
def test_quadratic_extension_associative(a, b, c, d):
    x = QuadExtElem(5, 3, 2, a, b)
    y = QuadExtElem(5, 3, 2, c, d)
    z = QuadExtElem(5, 3, 2, b, c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_odd_primes():
    assert odd_primes(1, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert odd_primes(20, 10) == []
