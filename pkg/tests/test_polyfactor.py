from fractions import Fraction

import pytest

from wha.polyfactor import (
    fp_mul, fp_monic, fp_eval, trager_factor, roots_in_field, sqrt_in_field,
    minpoly_from_powers,
)
from wha.scalars import field_make, rationals


def _ly():
    return field_make([-1, 0, 1, 0, 1], (Fraction(7, 10), Fraction(4, 5)))


def test_factor_difference_of_squares():
    F = _ly()
    z = F.gen()
    # T^2 - z^2 = (T - z)(T + z)
    p = [-(z * z), F.zero, F.one]
    facs = trager_factor(p, F)
    assert len(facs) == 2
    roots = sorted([-f[0] for f in facs], key=lambda r: F.embed_interval(r, Fraction(1, 1000))[0])
    assert roots == [-z, z]


def test_t2_minus_2_irreducible_over_ly():
    # sqrt(2) is not in Q(z): the only quadratic subfield is Q(sqrt 5)
    F = _ly()
    p = [F.from_int(-2), F.zero, F.one]
    facs = trager_factor(p, F)
    assert len(facs) == 1 and len(facs[0]) == 3


def test_factor_over_rationals():
    Q = rationals()
    # (T-1)(T-2)(T^2+1)
    p = fp_mul(fp_mul([Q.from_int(-1), Q.one], [Q.from_int(-2), Q.one], Q),
               [Q.one, Q.zero, Q.one], Q)
    facs = trager_factor(p, Q)
    assert sorted(len(f) for f in facs) == [2, 2, 3]


def test_product_of_factors_reconstructs():
    F = _ly()
    z = F.gen()
    p = fp_mul([-z, F.one], [z * z + 1, F.one], F)
    p = fp_mul(p, [F.from_int(3), F.one], F)
    facs = trager_factor(fp_monic(p, F), F)
    prod = [F.one]
    for f in facs:
        prod = fp_mul(prod, f, F)
    assert prod == fp_monic(p, F)


def test_roots_in_field():
    F = _ly()
    z = F.gen()
    p = fp_mul(fp_mul([-F.one, F.one], [-z, F.one], F),
               [F.from_int(-2), F.zero, F.one], F)
    roots = roots_in_field(p, F)
    assert sorted(r == z for r in roots) == [False, True]
    assert F.one in roots and z in roots and len(roots) == 2


def test_sqrt_in_field():
    F = _ly()
    z = F.gen()
    assert sqrt_in_field(z * z) == z
    assert sqrt_in_field(F.from_int(4)) == F.from_int(2)
    assert sqrt_in_field(z ** -2) == z.inverse()
    assert sqrt_in_field(F.from_int(2)) is None
    assert sqrt_in_field(-F.one) is None
    assert sqrt_in_field(F.zero) == F.zero
    # golden ratio z^-2 has square root z^-1 in the field
    golden = z * z + 1
    r = sqrt_in_field(golden)
    assert r is not None and r * r == golden


def test_minpoly_from_powers():
    F = rationals()
    # t with t^2 = t + 1 in a 2-dim algebra: powers 1=(1,0), t=(0,1), t^2=(1,1)
    vecs = [[F.one, F.zero], [F.zero, F.one]]
    assert minpoly_from_powers(vecs, F) is None or len(vecs) == 2
    vecs = [[F.one, F.zero], [F.zero, F.one], [F.one, F.one]]
    mp = minpoly_from_powers(vecs, F)
    assert mp == [-F.one, -F.one, F.one]   # T^2 - T - 1
