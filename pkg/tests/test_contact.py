from math import inf

import pytest
from hypothesis import given, strategies as st

from contactkit.contact import (
    ContactGerm,
    Smoothness,
    adapted_frame,
    classical_inverse,
    contact_defect,
    darboux_germ,
    decompose,
    icct_check,
    injectivity_witness,
    invert_theta,
    membership,
    realizability_check,
    reeb,
    restricted_lie_corollary,
    solve_theta_inverse,
    structurally_smooth_origin,
    tangency_check,
    theta,
    vanishing_order_corollary,
)
from contactkit.errors import DegenerateGerm, MembershipFailure, PreconditionError
from contactkit.exterior import Form, VectorField, lie_derivative
from contactkit.germs import (
    coords,
    example1,
    example1_member,
    example2,
    example2_member,
    random_polynomial,
    random_realizable_k2,
    rng,
)
from contactkit.ring import Series

D1, D2 = 10, 8


@pytest.fixture(scope="module")
def ex1():
    return example1(D1)


@pytest.fixture(scope="module")
def ex2():
    return example2(D2)


def one(k, D):
    return Series.one(k, D)


def field(*comps):
    return VectorField(list(comps))


class TestDefect:
    def test_darboux_is_contact(self):
        germ = darboux_germ(1, 6)
        assert germ.defect.agrees(one(1, 6))
        assert structurally_smooth_origin(germ.defect) is Smoothness.CONTACT_POINT

    def test_example1_defect(self, ex1):
        z = coords(1, D1)[0]
        assert ex1.defect.agrees(-z)
        assert structurally_smooth_origin(ex1.defect) is Smoothness.SMOOTH_SINGULAR

    def test_closed_form_has_zero_defect(self):
        assert contact_defect(Form.basis(1, 5, (0,))).is_zero()

    def test_not_smooth(self):
        z = coords(1, 5)[0]
        assert structurally_smooth_origin(z * z) is Smoothness.NOT_SMOOTH


class TestRealizability:
    def test_example2(self, ex2):
        r = realizability_check(ex2)
        assert (r.cond1, r.cond2) == (True, True)

    def test_example1(self, ex1):
        assert realizability_check(ex1)

    def test_flat(self):
        germ = ContactGerm.from_coefficients([one(1, 6), Series.zero(1, 6)],
                                             [Series.zero(1, 6), one(1, 6)])
        assert not realizability_check(germ).cond1


class TestTheta:
    def test_reeb(self, ex1):
        assert theta(ex1, reeb(1, D1)).agrees(one(1, D1))

    def test_adapted_frame_in_kernel(self, ex1):
        for m in (1, 2):
            assert theta(ex1, adapted_frame(ex1, m)).is_zero()

    def test_example1_field(self, ex1):
        z, x1, x2 = coords(1, D1)
        X = field(x2 * z, one(1, D1), Series.zero(1, D1))
        assert theta(ex1, X).agrees((x1 * x2).exp() + x2 * z)

    def test_decompose(self, ex1):
        z, x1, x2 = coords(1, D1)
        dec = decompose(ex1, VectorField.coordinate(1, D1, 1))
        assert dec.f.agrees((x1 * x2).exp())
        assert dec.s[0].agrees(one(1, D1)) and dec.s[1].is_zero()
        zero = decompose(ex1, VectorField.zero(1, D1))
        assert zero.f.is_zero() and all(s.is_zero() for s in zero.s)
        assert decompose(ex1, reeb(1, D1)).f.agrees(one(1, D1))

    def test_reassemble(self, ex1):
        X = field(*coords(1, D1))
        assert decompose(ex1, X).reassemble(ex1).agrees(X)


class TestIcct:
    def test_example1(self, ex1):
        z, x1, x2 = coords(1, D1)
        result = icct_check(ex1, field(x2 * z, one(1, D1), Series.zero(1, D1)))
        assert result and result.h.agrees(x2)

    def test_reeb_on_darboux(self):
        result = icct_check(darboux_germ(1, 6), reeb(1, 6))
        assert result and result.h.is_zero()

    def test_negative(self):
        germ = darboux_germ(1, 6)
        result = icct_check(germ, VectorField.coordinate(1, 6, 1))
        assert not result
        idx, coeff = result.witness
        assert not coeff.is_zero()


class TestMembership:
    def test_example1_yes(self, ex1):
        z, x1, x2 = coords(1, D1)
        cert = membership(ex1, (x1 * x2).exp() + x2 * z)
        assert cert and cert.gamma is not None

    def test_example1_z_no(self, ex1):
        cert = membership(ex1, coords(1, D1)[0])
        assert not cert
        assert cert.failing_m == 1 and cert.failing_component == (1,)
        assert cert.numerator_m == 2
        assert cert.witness[0] == 0

    def test_example2_yes(self, ex2):
        z, x1, x2 = coords(1, D2)
        assert membership(ex2, (x2 + 1).inv() * (-(x1 * x2)).exp() - x2 * z)

    def test_nonsingular_always_member(self):
        germ = darboux_germ(1, 5)
        assert membership(germ, random_polynomial(rng(1), 1, 5))

    @pytest.mark.parametrize("which", [1, 2])
    def test_characterization(self, which):
        D = 7
        germ = example1(D) if which == 1 else example2(D)
        build = example1_member if which == 1 else example2_member
        r = rng(20 + which)
        for _ in range(6):
            g = random_polynomial(r, 1, D, 2, 0.6, [1])
            tail = random_polynomial(r, 1, D, 1, 0.5)
            f = build(g, tail, D)
            assert membership(germ, f)
            # the z^0 part pins g, so shifting the z-coefficient by x2 breaks membership
            bad = f + coords(1, D)[0] * coords(1, D)[2]
            assert not membership(germ, bad)


class TestInversion:
    def test_example1(self, ex1):
        z, x1, x2 = coords(1, D1)
        inv = solve_theta_inverse(ex1, (x1 * x2).exp() + x2 * z)
        assert inv.field.agrees(field(x2 * z, one(1, D1), Series.zero(1, D1)))
        assert inv.h.agrees(x2)

    def test_example2(self, ex2):
        z, x1, x2 = coords(1, D2)
        f = (x2 + 1).inv() * (-(x1 * x2)).exp() - x2 * z
        X = invert_theta(ex2, f)
        assert X.agrees(field(-(x2 * z), one(1, D2), Series.zero(1, D2)))
        assert theta(ex2, X).agrees(f)

    def test_zero(self, ex1):
        assert invert_theta(ex1, Series.zero(1, D1)).is_zero()

    def test_not_member_raises(self, ex1):
        with pytest.raises(MembershipFailure) as info:
            invert_theta(ex1, coords(1, D1)[0])
        assert not info.value.certificate

    def test_darboux_matches_classical(self):
        z, x1, x2 = coords(1, 6)
        germ = darboux_germ(1, 6)
        assert invert_theta(germ, x1).agrees(VectorField.coordinate(1, 6, 2))
        assert invert_theta(germ, one(1, 6)).agrees(reeb(1, 6))
        assert invert_theta(germ, z).agrees(field(z, x1, Series.zero(1, 6)))

    def test_classical_formula(self):
        z, x1, x2 = coords(1, 6)
        germ = darboux_germ(1, 6)
        X = classical_inverse(z, 1)
        assert lie_derivative(X, germ.omega).agrees(germ.omega)
        assert lie_derivative(classical_inverse(x1, 1), germ.omega).is_zero()

    def test_random_k2_germ(self):
        germ = random_realizable_k2(rng(30), precision=5)
        r = rng(31)
        for _ in range(3):
            X = VectorField([random_polynomial(r, 2, 5, 2) for _ in range(5)])
            icct = icct_check(germ, X)
            if icct:
                assert injectivity_witness(germ, X)

    def test_degenerate_germ_rejected(self):
        # omega = dz + z^2 x1 dx2 has defect z^2
        D = 6
        z, x1, x2 = coords(1, D)
        germ = ContactGerm.from_coefficients([Series.zero(1, D), Series.zero(1, D)],
                                             [Series.zero(1, D), z * x1])
        assert germ.smoothness is Smoothness.NOT_SMOOTH
        with pytest.raises(DegenerateGerm):
            invert_theta(germ, z * z * z)


class TestConsequences:
    def test_tangency(self, ex1):
        z, x1, x2 = coords(1, D1)
        X = field(x2 * z, one(1, D1), Series.zero(1, D1))
        t = tangency_check(ex1, X)
        assert t.tangent and t.has_martinet

    def test_tangency_refuses_non_icct(self, ex1):
        with pytest.raises(PreconditionError):
            tangency_check(ex1, reeb(1, D1))

    def test_order_z_squared(self, ex1):
        z, x1, x2 = coords(1, D1)
        report = vanishing_order_corollary(ex1, z * z)
        assert report.order == 2
        assert report.field.coeffs[0].z_order() >= 1
        # the d/dx2 component is 2 exp(x1 x2) on S, so it does not vanish there
        assert report.nonvanishing == (2,)
        assert report.field.coeffs[2].restrict_z0().agrees((x1 * x2).exp().scale(2))

    def test_order_of_zero(self, ex1):
        assert vanishing_order_corollary(ex1, Series.zero(1, D1)).order == inf

    def test_order_needs_member(self, ex1):
        with pytest.raises(MembershipFailure):
            vanishing_order_corollary(ex1, coords(1, D1)[0])

    def test_restricted_lie(self, ex1):
        z, x1, x2 = coords(1, D1)
        result = restricted_lie_corollary(ex1, field(x2 * z, one(1, D1), Series.zero(1, D1)))
        assert result.has_martinet and result.h_S.agrees(x2)

    def test_restricted_lie_zero(self, ex1):
        result = restricted_lie_corollary(ex1, VectorField.zero(1, D1))
        assert result.form.is_zero() and result.h_S.is_zero()


class TestRoundTrips:
    @given(st.integers(0, 10 ** 6))
    def test_example1_members(self, salt):
        D = 8
        r = rng(salt)
        germ = example1(D)
        f = example1_member(random_polynomial(r, 1, D, 2, 0.6, [1]),
                            random_polynomial(r, 1, D, 1, 0.5), D)
        X = invert_theta(germ, f)
        assert theta(germ, X).agrees(f)
        assert injectivity_witness(germ, X)

    @given(st.integers(0, 10 ** 6))
    def test_darboux_k2(self, salt):
        r = rng(salt)
        germ = darboux_germ(2, 5)
        f = random_polynomial(r, 2, 5, 3, 0.2)
        assert invert_theta(germ, f).agrees(classical_inverse(f, 2))
