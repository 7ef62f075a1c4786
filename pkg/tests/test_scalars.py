import random
from fractions import Fraction

import pytest

from wha.scalars import (
    NumberField, ApproxComplex, ApproxField, ScalarError,
    field_make, field_arith, rationals, embed, sign_of,
)


def lee_yang_field():
    # z = sqrt((sqrt 5 - 1)/2), minimal polynomial x^4 + x^2 - 1
    return field_make([-1, 0, 1, 0, 1], (Fraction(7, 10), Fraction(4, 5)))


def bisect_root(poly, lo, hi, steps=80):
    """Independent float oracle: bisection on a polynomial given as a
    coefficient list (constant first)."""
    def ev(x):
        acc = 0.0
        for c in reversed(poly):
            acc = acc * x + c
        return acc
    flo = ev(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if (ev(mid) > 0) == (flo > 0):
            lo, flo = mid, ev(mid)
        else:
            hi = mid
    return (lo + hi) / 2


class TestFieldMake:
    def test_lee_yang_field(self):
        F = lee_yang_field()
        assert F.degree == 4
        z = F.gen()
        assert z ** 4 + z ** 2 == F.one

    def test_rational_field_degree_one(self):
        Q = rationals()
        assert Q.degree == 1
        assert Q.from_fraction(Fraction(2, 3)) * Q.from_int(3) == Q.from_int(2)

    def test_sqrt2_interval_contains_root(self):
        # oracle: bisection localizes the root of x^2 - 2 inside (1, 2)
        root = bisect_root([-2.0, 0.0, 1.0], 1.0, 2.0)
        assert 1 < root < 2
        F = field_make([-2, 0, 1], (1, 2))
        assert abs(embed(F.gen()).re - root) < 1e-12

    def test_rejects_non_squarefree(self):
        with pytest.raises(ScalarError):
            field_make([1, 2, 1], (-2, 0))      # (x+1)^2

    def test_rejects_non_monic(self):
        with pytest.raises(ScalarError):
            field_make([-1, 0, 2], (0, 1))

    def test_rejects_interval_without_root(self):
        with pytest.raises(ScalarError):
            field_make([-2, 0, 1], (2, 3))

    def test_rejects_interval_with_two_roots(self):
        with pytest.raises(ScalarError):
            field_make([-2, 0, 1], (-2, 2))


class TestArithmetic:
    def test_z_inverse_is_z3_plus_z(self):
        # oracle: expand z*(z^3+z) = z^4 + z^2 and reduce by z^4 = 1 - z^2
        F = lee_yang_field()
        z = F.gen()
        assert z * (z ** 3 + z) == F.one
        assert z.inverse() == z ** 3 + z

    def test_z2_inverse_is_z2_plus_one(self):
        F = lee_yang_field()
        z = F.gen()
        assert (z * z) * (z * z + 1) == F.one

    def test_golden_identity(self):
        # z^-4 = z^-2 + 1 exactly
        F = lee_yang_field()
        z = F.gen()
        assert z ** -4 == z ** -2 + F.one

    def test_additive_identity_random(self):
        F = lee_yang_field()
        rng = random.Random(1)
        for _ in range(50):
            a = F.from_coeffs([Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
                               for _ in range(4)])
            assert a + F.zero == a

    def test_field_axioms_random(self):
        F = lee_yang_field()
        rng = random.Random(2)

        def rand():
            return F.from_coeffs([Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
                                  for _ in range(4)])
        for _ in range(40):
            a, b, c = rand(), rand(), rand()
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inverse() == F.one

    def test_division_by_zero(self):
        F = lee_yang_field()
        with pytest.raises(ZeroDivisionError):
            F.one / F.zero

    def test_field_mismatch(self):
        F, G = lee_yang_field(), field_make([-2, 0, 1], (1, 2))
        with pytest.raises(ScalarError):
            field_arith(F.one, G.one, "add")

    def test_dispatch_ops(self):
        F = lee_yang_field()
        z = F.gen()
        assert field_arith(z, z, "mul") == z * z
        assert field_arith(z, z, "sub").is_zero()
        assert field_arith(z, z, "div") == F.one
        assert field_arith(F.one, F.one, "add") == F.from_int(2)


class TestEmbedding:
    def test_embed_z(self):
        # oracle: bisection on x^4 + x^2 - 1 over (0.7, 0.8)
        root = bisect_root([-1.0, 0.0, 1.0, 0.0, 1.0], 0.7, 0.8)
        F = lee_yang_field()
        assert abs(embed(F.gen(), 64).re - root) < 1e-12

    def test_embed_golden_ratio(self):
        F = lee_yang_field()
        z = F.gen()
        assert abs(embed(z ** -2).re - 1.6180339887498949) < 1e-12

    def test_embed_zero(self):
        F = lee_yang_field()
        v = embed(F.zero)
        assert v.re == 0.0 and v.im == 0.0

    def test_embed_is_ring_hom(self):
        F = lee_yang_field()
        rng = random.Random(3)
        for _ in range(25):
            a = F.from_coeffs([rng.randrange(-4, 5) for _ in range(4)])
            b = F.from_coeffs([rng.randrange(-4, 5) for _ in range(4)])
            lhs = embed(a * b, 64).re
            rhs = embed(a, 64).re * embed(b, 64).re
            assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))

    def test_embed_requires_32_bits(self):
        F = lee_yang_field()
        with pytest.raises(ScalarError):
            embed(F.one, 16)


class TestSign:
    def test_sign_examples(self):
        F = lee_yang_field()
        z = F.gen()
        assert sign_of(F.zero) == 0
        assert sign_of(z * z + 1) == 1       # ~ 1.618
        assert sign_of(-z) == -1             # ~ -0.786

    def test_sign_agrees_with_embed(self):
        F = lee_yang_field()
        rng = random.Random(4)
        for _ in range(1000):
            a = F.from_coeffs([Fraction(rng.randrange(-20, 21), rng.randrange(1, 9))
                               for _ in range(4)])
            s = sign_of(a)
            v = embed(a, 64).re
            if s == 0:
                assert v == 0.0
            else:
                assert v != 0.0 and (v > 0) == (s > 0)

    def test_sign_on_reducible_modulus(self):
        # (x-1)(x^2-2): the embedding at sqrt(2) kills x^2 - 2 exactly
        F = field_make([2, -2, -1, 1], (Fraction(13, 10), Fraction(3, 2)))
        t = F.gen()
        assert sign_of(t * t - 2) == 0
        assert sign_of(t - 1) == 1


class TestApprox:
    def test_tolerance_equality(self):
        a = ApproxComplex(1.0, 0.0, tol=1e-9)
        assert a == ApproxComplex(1.0 + 1e-12, 0.0)
        assert a != ApproxComplex(1.1, 0.0)

    def test_arith(self):
        D = ApproxField()
        i = ApproxComplex(0.0, 1.0)
        assert i * i == D.from_int(-1)
        assert (i.conj() * i) == D.one
        assert (D.one / i) == -i

    def test_sign(self):
        assert ApproxComplex(2.0, 0.0).sign() == 1
        assert ApproxComplex(-2.0, 0.0).sign() == -1
        assert ApproxComplex(1e-12, 0.0).sign() == 0


def test_serialization_roundtrip():
    F = lee_yang_field()
    z = F.gen()
    a = z ** 3 + z
    data = a.to_json()
    assert F.from_coeffs([Fraction(s) for s in data]) == a
    spec = F.to_json()
    G = field_make(spec["minpoly"], tuple(Fraction(s) for s in spec["interval"]))
    assert G == F
