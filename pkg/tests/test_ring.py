from fractions import Fraction
from math import inf

import pytest
from hypothesis import given

from contactkit.errors import DivisibilityFailure, PrecisionExhausted, RingMismatch
from contactkit.ring import Series

from conftest import series


def v(i, D=5, k=1):
    return Series.var(k, D, i)


def c(x, D=5, k=1):
    return Series.const(k, D, x)


z, x1, x2 = v(0), v(1), v(2)


class TestExamples:
    def test_add(self):
        assert (1 + x1) + x1 == 1 + x1.scale(2)

    def test_add_cancels_to_higher_term(self):
        a = Series.var(1, 3, 0)
        b = -a + a * a
        assert (a + b) == a * a and (a + b).precision == 3

    def test_product(self):
        assert (1 + x1) * (1 - x1) == 1 - x1 * x1

    def test_product_truncates(self):
        a = Series.var(1, 2, 0) + Series.var(1, 2, 1)
        p = a * Series.var(1, 2, 0)
        assert p.is_zero() and p.precision == 2

    def test_partials(self):
        assert (z * x1).partial(0) == x1.with_precision(4)
        assert c(3).partial(1).is_zero()

    def test_partial_of_exp(self):
        e = (x1 * x2).exp()
        t = x1 * x2
        want = (x2 * (1 + t + (t * t).scale(Fraction(1, 2)))).truncate(4)
        assert e.partial(1) == want

    def test_exp(self):
        t = x1 * x2
        assert Series.zero(1, 5).exp() == Series.one(1, 5)
        assert t.exp() == 1 + t + (t * t).scale(Fraction(1, 2))
        small = Series.var(1, 3, 1) * Series.var(1, 3, 2)
        assert (-small).exp() == 1 - small

    def test_exp_needs_zero_constant(self):
        with pytest.raises(ValueError):
            (1 + x1).exp()

    def test_inv(self):
        y = Series.var(1, 4, 2)
        assert (1 + y).inv() == 1 - y + y * y - y ** 3
        assert Series.one(1, 4).inv() == Series.one(1, 4)

    def test_div_z(self):
        assert (z * z * x1).div_z() == (z * x1).truncate(4)
        assert Series.zero(1, 5).div_z().is_zero()

    def test_div_z_witness(self):
        with pytest.raises(DivisibilityFailure) as info:
            (z + x1).div_z()
        assert info.value.witness == (0, 1, 0)

    def test_z_order(self):
        assert (z * z * (1 + x1)).z_order() == 2
        assert (1 + z).z_order() == 0
        assert Series.zero(1, 5).z_order() == inf

    def test_restrict(self):
        assert (1 + z + z * x1).restrict_z0() == Series.one(1, 5)
        assert (x1 * x2).restrict_z0() == x1 * x2
        assert (z * z).restrict_z0().is_zero()

    def test_eval_origin(self):
        assert (c(Fraction(3, 2)) + x1).eval_origin() == Fraction(3, 2)
        assert z.eval_origin() == 0
        assert (x1 * x2).exp().eval_origin() == 1


class TestContracts:
    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            Series.var(1, 4, 0) + Series.var(2, 4, 0)

    def test_partial_exhausts_precision(self):
        with pytest.raises(PrecisionExhausted):
            Series.one(1, 1).partial(1)

    def test_binary_ops_take_min_precision(self):
        a, b = Series.var(1, 3, 1), Series.var(1, 6, 2)
        assert (a + b).precision == 3 and (a * b).precision == 3

    def test_structural_equality_sees_precision(self):
        assert Series.one(1, 3) != Series.one(1, 4)
        assert Series.one(1, 3).agrees(Series.one(1, 4))


class TestProperties:
    @given(series(), series(), series())
    def test_associative(self, a, b, d):
        assert (a + b) + d == a + (b + d)
        assert (a * b) * d == a * (b * d)

    @given(series(), series(), series())
    def test_distributive(self, a, b, d):
        assert a * (b + d) == a * b + a * d

    @given(series(), series())
    def test_commutative(self, a, b):
        assert a + b == b + a and a * b == b * a

    @given(series())
    def test_additive_inverse(self, a):
        assert (a - a).is_zero()

    @given(series(unit=True))
    def test_inverse(self, a):
        assert (a * a.inv()).agrees(Series.one(1, a.precision))

    @given(series(), series())
    def test_leibniz(self, a, b):
        for i in range(3):
            assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)

    @given(series(precision=5), series(precision=5))
    def test_exp_is_homomorphism(self, a, b):
        a, b = a - a.eval_origin(), b - b.eval_origin()
        assert (a + b).exp() == a.exp() * b.exp()

    @given(series())
    def test_mul_z_then_div_z(self, a):
        assert a.mul_z().div_z() == a

    @given(series(precision=4))
    def test_precision_monotone(self, a):
        # the same polynomial at higher precision agrees on shared monomials
        high = Series(a.k, 7, dict(a.items()))
        assert (high * high).agrees(a * a)
