from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from contactkit.contact import darboux_germ
from contactkit.errors import PreconditionError
from contactkit.germs import (
    coords,
    example1,
    example2,
    random_realizable_k2,
    random_skew_constant,
    rng,
)
from contactkit.pfaffian import (
    SkewMatrix,
    build_W,
    build_d_vector,
    cofactor_identity_check,
    det_skew,
    laplace_det,
    pf,
    pf_minor,
    two_form_matrix_bridge,
)
from contactkit.ring import Series


def const(x):
    return Series.const(1, 1, x)


def brute_pf(W):
    """Definitional signed sum over all permutations."""
    n = W.n
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(0, n, 2):
            term *= W.entries[perm[i]][perm[i + 1]].eval_origin()
        total += term
    return total / (2 ** (n // 2) * factorial(n // 2))


def symbolic_4x4():
    k, D = 3, 3
    xs = coords(k, D)
    upper = {(1, 2): xs[1], (1, 3): xs[2], (1, 4): xs[3],
             (2, 3): xs[4], (2, 4): xs[5], (3, 4): xs[6]}
    return SkewMatrix.from_upper(4, lambda i, j: upper[i, j], k, D), upper


class TestExamples:
    def test_two_by_two(self):
        a = const(Fraction(7, 3))
        W = SkewMatrix([[const(0), a], [-a, const(0)]])
        assert pf(W) == a
        assert det_skew(W) == a * a

    def test_four_by_four(self):
        W, u = symbolic_4x4()
        want = u[1, 2] * u[3, 4] - u[1, 3] * u[2, 4] + u[1, 4] * u[2, 3]
        assert pf(W) == want

    def test_zero_matrix(self):
        W = SkewMatrix([[const(0)] * 4 for _ in range(4)])
        assert pf(W).is_zero() and det_skew(W).is_zero()

    def test_minors(self):
        W, u = symbolic_4x4()
        assert pf_minor(W, 1, 2) == u[3, 4]
        a = const(3)
        W2 = SkewMatrix([[const(0), a], [-a, const(0)]])
        assert pf_minor(W2, 1, 2).eval_origin() == 1

    def test_odd_order_refused(self):
        with pytest.raises(PreconditionError):
            SkewMatrix([[const(0)] * 3 for _ in range(3)])

    def test_not_skew_refused(self):
        with pytest.raises(ValueError):
            SkewMatrix([[const(0), const(1)], [const(1), const(0)]])

    def test_six_by_six_against_brute_force(self):
        r = rng(61)
        for _ in range(5):
            W = SkewMatrix(random_skew_constant(r, 6))
            assert pf(W).eval_origin() == brute_pf(W)

    def test_cofactor_negative_control(self):
        r = rng(62)
        W = SkewMatrix(random_skew_constant(r, 4))
        while pf(W).is_zero():
            W = SkewMatrix(random_skew_constant(r, 4))
        assert all(cofactor_identity_check(W, i, j) for i in range(1, 5) for j in range(1, 5))
        # cofactors of a corrupted matrix no longer match the original Pfaffians
        bad = W.with_entry(1, 2, W[1, 2] + 1)

        def holds(i, j):
            minor = [[bad.entries[a][b] for b in range(4) if b != j - 1]
                     for a in range(4) if a != i - 1]
            lhs = laplace_det(minor, 1, 1).scale((-1) ** (i + j))
            rhs = (pf_minor(W, i, j) * pf(W)).scale((-1) ** (i + j + 1 + (i > j)))
            return lhs.agrees(rhs)

        assert not all(holds(i, j) for i in range(1, 5) for j in range(1, 5) if i != j)


class TestGermMatrices:
    def test_darboux_W(self):
        W = build_W(darboux_germ(1, 4))
        assert W[1, 2].agrees(Series.const(1, 3, -1))
        assert pf(W).agrees(Series.const(1, 3, -1))

    def test_zero_germ(self):
        from contactkit.contact import ContactGerm

        zero = Series.zero(1, 4)
        germ = ContactGerm.from_coefficients([zero, zero], [zero, zero])
        assert build_W(germ)[1, 2].is_zero()

    def test_zero_rhs(self):
        assert all(d.is_zero() for d in build_d_vector(example1(6), Series.zero(1, 6)))

    def test_example1_W(self):
        W = build_W(example1(8))
        z = coords(1, 7)[0]
        assert W[1, 2].agrees(z)
        assert pf(W).agrees(z)

    @pytest.mark.parametrize("make", [lambda: darboux_germ(1, 6), lambda: example1(8),
                                      lambda: example2(8)])
    def test_bridge(self, make):
        assert two_form_matrix_bridge(make())

    def test_bridge_random_k2(self):
        assert two_form_matrix_bridge(random_realizable_k2(rng(63), precision=5))

    def test_bridge_needs_z_free_beta(self):
        germ = random_realizable_k2(rng(64), precision=5, z_dependent_beta=True)
        assert two_form_matrix_bridge(germ, germ.nu)


@st.composite
def skew(draw, n):
    vals = draw(st.lists(st.fractions(-5, 5, max_denominator=5),
                         min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    it = iter(vals)
    table = {(i, j): next(it) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return SkewMatrix.from_upper(n, lambda i, j: Series.const(1, 1, table[i, j]), 1, 1)


class TestProperties:
    @given(st.sampled_from([2, 4, 6]).flatmap(skew))
    def test_pf_squared_is_det(self, W):
        assert (pf(W) * pf(W)).agrees(laplace_det(W.rows(), 1, 1))

    @given(st.sampled_from([2, 4, 6]).flatmap(skew))
    def test_pivot_row_independent(self, W):
        assert all(pf(W, r).agrees(pf(W)) for r in range(1, W.n + 1))

    @given(skew(4))
    def test_cofactor_identity(self, W):
        assert all(cofactor_identity_check(W, i, j) for i in range(1, 5) for j in range(1, 5))
