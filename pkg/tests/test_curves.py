from fractions import Fraction

import pytest

from supercong.curves import (
    CurveId,
    affine_variety_count_mod_p,
    cm_catalog,
    cm_catalog_values,
    count_points,
    good_reduction,
    has_cm,
    hasse_invariant,
    j_invariant,
    k3_trace,
    trace_of_frobenius,
    unit_root,
)
from supercong.errors import BadReduction, DegenerateLambda, NotPIntegral, TooLarge
from supercong.hyperseries import f_r_mod
from supercong.padic import odd_primes


def test_legendre_count():
    data = count_points(CurveId.legendre(2), 5, 2)
    assert (data.count, data.trace) == (8, -2)
    assert data.ordinary
    assert data.unit_root.residue == 13
    assert (13 * 13 + 2 * 13 + 5) % 25 == 0


def test_cm_supersingular():
    data = count_points(CurveId.cm(-1), 7, 2)
    assert (data.count, data.trace) == (8, 0)
    assert data.supersingular
    assert unit_root(CurveId.cm(-1), 7, 3).residue == 0


def test_good_reduction():
    assert not good_reduction(CurveId.legendre(8), 7)
    assert not good_reduction(CurveId.cm(64), 7)
    assert good_reduction(CurveId.cm(-1), 7)
    assert not good_reduction(CurveId.cm(Fraction(1, 7)), 7)
    with pytest.raises(BadReduction):
        trace_of_frobenius(CurveId.cm(64), 7)
    with pytest.raises(NotPIntegral):
        trace_of_frobenius(CurveId.cm(Fraction(1, 7)), 7)


def test_degenerate_lambda():
    with pytest.raises(DegenerateLambda):
        CurveId.cm(1)
    with pytest.raises(DegenerateLambda):
        CurveId.legendre(0)


def test_hasse_invariant():
    assert hasse_invariant(2, 5).residue == 3
    for p in (5, 7, 11):
        assert hasse_invariant(0, p).residue == (-1) ** ((p - 1) // 2) % p


@pytest.mark.parametrize("lam", range(2, 11))
def test_hasse_matches_trace(lam):
    for p in odd_primes(3, 101):
        curve = CurveId.legendre(lam)
        if good_reduction(curve, p):
            assert hasse_invariant(lam, p).residue == trace_of_frobenius(curve, p) % p


def test_hasse_bound_over_catalog():
    for lam in cm_catalog_values():
        for p in odd_primes(3, 200):
            curve = CurveId.cm(lam)
            if good_reduction(curve, p):
                t = trace_of_frobenius(curve, p)
                assert t * t <= 4 * p


def test_affine_counts():
    # the count carries the sign (-1)^r against the truncated sum
    assert affine_variety_count_mod_p(2, 2, 5) == f_r_mod(2, 2, 4, 5, 1)
    c = affine_variety_count_mod_p(3, 2, 11)
    assert c.residue == 4
    assert c == -f_r_mod(2, 3, 10, 11, 1)
    assert f_r_mod(2, 3, 10, 11, 1) == f_r_mod(2, 3, 5, 11, 1)
    assert affine_variety_count_mod_p(3, 0, 7) == -1
    with pytest.raises(TooLarge):
        affine_variety_count_mod_p(3, 2, 1009)


def test_k3_trace():
    assert k3_trace(-1, 7).residue == 0
    assert f_r_mod(-1, 3, 3, 7, 1).residue == 0
    assert k3_trace(64, 11) == f_r_mod(64, 3, 5, 11, 1)


def test_catalog_and_cm():
    entries = cm_catalog()
    assert len(entries) == 8
    assert [e.lam for e in entries if e.degenerate] == [1]
    expected_j = {-8: 1728, Fraction(-1, 8): 287496, 4: 0, Fraction(1, 4): 54000,
                  64: -3375, Fraction(1, 64): 16581375, -1: 8000}
    for lam, j in expected_j.items():
        assert j_invariant(CurveId.cm(lam)) == j
        assert has_cm(CurveId.cm(lam))
    assert not has_cm(CurveId.cm(2))
    assert [lam for lam in (-1, 2, Fraction(1, 2), 3, -8) if has_cm(CurveId.legendre(lam))] == [-1, 2, Fraction(1, 2)]
