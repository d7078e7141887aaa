"""Germs of singular contact forms ``omega = dz + alpha + z beta``.

Everything here works at the origin of C^(2k+1) with coordinates
``(z, x^1, ..., x^2k)``; the Martinet hypersurface of a structurally
smooth germ in this normal form is ``S = {z = 0}``.

The central routines are :func:`membership`, deciding whether a function
``f`` is the contact Hamiltonian ``omega(X)`` of an infinitesimal contact
transformation ``X``, and :func:`invert_theta`, which builds that ``X``.
Every verdict is certified only up to the precision carried with it.
"""

import enum
from dataclasses import dataclass, field
from functools import cached_property
from math import inf
from typing import Optional

from contactkit.errors import (
    DegenerateGerm,
    DivisibilityFailure,
    InvariantViolation,
    MembershipFailure,
    PreconditionError,
)
from contactkit.exterior import (
    Form,
    VectorField,
    ext_d,
    ext_d_prime,
    form_power,
    interior,
    lie_derivative,
    partial_z_form,
    restrict_form_S,
    vanishes_along_S,
    wedge,
)
from contactkit.pfaffian import build_W, matrix_two_form, pf
from contactkit.ring import Series

__all__ = [
    "ContactGerm",
    "Decomposition",
    "MembershipCertificate",
    "IcctResult",
    "Inversion",
    "Realizability",
    "Smoothness",
    "Tangency",
    "OrderReport",
    "RestrictedLie",
    "contact_defect",
    "structurally_smooth_origin",
    "realizability_check",
    "theta",
    "decompose",
    "adapted_frame",
    "icct_check",
    "lie_multiplier",
    "membership",
    "solve_theta_inverse",
    "invert_theta",
    "classical_inverse",
    "darboux_germ",
    "tangency_check",
    "vanishing_order_corollary",
    "restricted_lie_corollary",
    "injectivity_witness",
]


class ContactGerm:
    """The normal form ``dz + alpha + z beta`` and the forms derived from it.

    ``alpha`` must be a z-free 1-form without ``dz``; ``beta`` a 1-form
    without ``dz``.  Derived objects are computed lazily and cached; the
    germ itself is never mutated.
    """

    def __init__(self, alpha, beta):
        if alpha.degree != 1 or beta.degree != 1:
            raise PreconditionError("alpha and beta must be 1-forms")
        if alpha.k != beta.k:
            raise PreconditionError("alpha and beta live in different rings")
        if alpha.has_dz() or beta.has_dz():
            raise PreconditionError("alpha and beta may not contain dz")
        if not all(c.z_free() for c in alpha.coefficients().values()):
            raise PreconditionError("alpha must not depend on z")
        self.k = alpha.k
        self.precision = min(alpha.precision, beta.precision)
        self.alpha = alpha.truncate(self.precision)
        self.beta = beta.truncate(self.precision)

    @classmethod
    def from_coefficients(cls, a, b):
        """Build from the lists ``a_1..a_2k`` and ``b_1..b_2k``."""
        return cls(Form.dx_form(a), Form.dx_form(b))

    @property
    def nvars(self):
        return 2 * self.k + 1

    @cached_property
    def z(self):
        return Series.var(self.k, self.precision, 0)

    @cached_property
    def dz(self):
        return Form.basis(self.k, self.precision, [0])

    @cached_property
    def a(self):
        return [self.alpha[i] for i in range(1, self.nvars)]

    @cached_property
    def b(self):
        return [self.beta[i] for i in range(1, self.nvars)]

    @cached_property
    def eta(self):
        """Coefficients ``a_m + z b_m`` of ``alpha + z beta``."""
        return [am + self.z * bm for am, bm in zip(self.a, self.b)]

    @cached_property
    def omega(self):
        return self.dz + self.alpha + self.beta * self.z

    @cached_property
    def d_omega(self):
        return ext_d(self.omega)

    @cached_property
    def z_beta_z(self):
        """``d/dz (z beta)`` expanded as ``beta + z d/dz beta``; startup-checked
        against ``i_Z d(z beta)``."""
        zb = self.beta * self.z
        expanded = self.beta + partial_z_form(self.beta) * self.z
        contracted = interior(reeb(self.k, self.precision), ext_d(zb))
        if not expanded.agrees(contracted):
            raise InvariantViolation("d/dz (z beta) and i_Z d(z beta) disagree")
        return expanded

    @cached_property
    def mu(self):
        """``d alpha + z d'beta - alpha ^ d/dz(z beta)`` (no dz part)."""
        return (ext_d(self.alpha) + ext_d_prime(self.beta) * self.z
                - wedge(self.alpha, self.z_beta_z))

    @cached_property
    def W(self):
        return build_W(self)

    @cached_property
    def pf_W(self):
        return pf(self.W)

    @cached_property
    def nu(self):
        """The 2-form whose coefficient matrix is ``-W``.

        Equals ``mu - z^2 beta ^ d/dz beta``; coincides with ``mu`` whenever
        ``beta`` is z-independent.
        """
        return -matrix_two_form(self.W)

    @cached_property
    def denominator(self):
        """Volume coefficient of ``dz ^ nu^k`` (equal to (-1)^k k! pf W)."""
        return wedge(self.dz, form_power(self.nu, self.k)).top_coefficient()

    @cached_property
    def defect(self):
        return contact_defect(self.omega)

    @cached_property
    def smoothness(self):
        return structurally_smooth_origin(self.defect)

    @property
    def singular(self):
        """True when the origin lies on the Martinet hypersurface."""
        return self.smoothness is not Smoothness.CONTACT_POINT

    def __repr__(self):
        return f"ContactGerm(k={self.k}, precision={self.precision}, omega={self.omega})"


def reeb(k, precision):
    """``Z = d/dz``."""
    return VectorField.coordinate(k, precision, 0)


def darboux_germ(k, precision):
    """``dz + x^1 dx^(k+1) + ... + x^k dx^(2k)``, a nonsingular contact germ."""
    a = [Series.zero(k, precision)] * (2 * k)
    for i in range(1, k + 1):
        a[k + i - 1] = Series.var(k, precision, i)
    return ContactGerm.from_coefficients(a, [Series.zero(k, precision)] * (2 * k))


# -- defect and realizability -------------------------------------------


class Smoothness(enum.Enum):
    CONTACT_POINT = "contact_point"
    SMOOTH_SINGULAR = "smooth_singular"
    NOT_SMOOTH = "not_smooth"


def contact_defect(eta):
    """``H`` with ``eta ^ (d eta)^k = H dz ^ dx^1 ^ ... ^ dx^2k``."""
    if eta.degree != 1:
        raise PreconditionError("contact defect is defined for 1-forms")
    return wedge(eta, form_power(ext_d(eta), eta.k)).top_coefficient()


def structurally_smooth_origin(H):
    if H.eval_origin():
        return Smoothness.CONTACT_POINT
    if H.precision > 1 and any(H.linear_part()):
        return Smoothness.SMOOTH_SINGULAR
    return Smoothness.NOT_SMOOTH


@dataclass(frozen=True)
class Realizability:
    cond1: bool
    cond2: bool
    precision: int

    def __bool__(self):
        return self.cond1 and self.cond2


def realizability_check(germ):
    """Both conditions of the realizability criterion, evaluated on S."""
    k = germ.k
    alpha = germ.alpha
    beta = restrict_form_S(germ.beta)
    da = ext_d(alpha)
    db = ext_d(beta)
    first = form_power(da, k) - wedge(form_power(da, k - 1), wedge(alpha, beta)) * k
    second = wedge(form_power(da, k - 1), db)
    if k >= 2:
        second = second - wedge(
            form_power(da, k - 2), wedge(wedge(alpha, beta), db)
        ) * (k - 1)
    cond1 = first.is_zero()
    cond2 = any(c.eval_origin() for c in second.coefficients().values())
    return Realizability(cond1, cond2, min(first.precision, second.precision))


# -- theta and the adapted frame ----------------------------------------


def theta(germ, X):
    """The contact Hamiltonian ``omega(X)``."""
    if X.k != germ.k:
        raise PreconditionError("vector field and germ live in different rings")
    return interior(X, germ.omega)[()]


def adapted_frame(germ, m):
    """``X_m = d/dx^m - (a_m + z b_m) d/dz``."""
    p = germ.precision
    comps = [Series.zero(germ.k, p)] * germ.nvars
    comps[0] = -germ.eta[m - 1]
    comps[m] = Series.one(germ.k, p)
    return VectorField(comps)


@dataclass(frozen=True)
class Decomposition:
    """``X = f Z + sum s_m X_m`` in the adapted frame."""

    f: Series
    s: tuple

    def reassemble(self, germ):
        z_comp = self.f
        for sm, em in zip(self.s, germ.eta):
            z_comp = z_comp - sm * em
        return VectorField([z_comp, *self.s])


def decompose(germ, X):
    f = theta(germ, X)
    return Decomposition(f, tuple(X.coeffs[1:]))


# -- infinitesimal contact transformations ------------------------------


def lie_multiplier(germ, f, s):
    """``f_z - sum s_m b_m - z sum s_m d/dz b_m``."""
    h = f.partial(0)
    for sm, bm in zip(s, germ.b):
        h = h - sm * bm - germ.z * sm * bm.partial(0)
    return h


@dataclass(frozen=True)
class IcctResult:
    verdict: bool
    precision: int
    h: Optional[Series] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.verdict


def icct_check(germ, X):
    """Decide whether ``L_X omega`` is a multiple of ``omega``.

    Two independent routes: the contracted identity
    ``i_Z i_X (omega ^ d omega) = i_Z (f d omega + omega ^ df)`` and the Lie
    derivative itself via Cartan's formula.  They must agree.
    """
    omega, d_omega = germ.omega, germ.d_omega
    Z = reeb(germ.k, germ.precision)
    f = theta(germ, X)
    df = ext_d(Form.function(f))

    lhs = interior(Z, interior(X, wedge(omega, d_omega)))
    rhs = interior(Z, d_omega * f + wedge(omega, df))
    by_identity = lhs.agrees(rhs)

    lie = lie_derivative(X, omega)
    h_direct = lie[0]
    residual = lie - omega * h_direct
    by_lie = residual.is_zero()
    precision = min(lhs.precision, rhs.precision, residual.precision)

    if by_identity != by_lie:
        raise InvariantViolation(
            f"contracted identity says {by_identity}, Lie derivative says {by_lie}"
        )
    if not by_lie:
        idx, coeff = residual.items()[0]
        return IcctResult(False, precision, witness=(idx, coeff))
    h = lie_multiplier(germ, f, X.coeffs[1:])
    if not h.agrees(h_direct):
        raise InvariantViolation("multiplier formula disagrees with L_X omega")
    return IcctResult(True, precision, h=h)


# -- membership and the inverse of theta --------------------------------


@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of the image test for ``f``.

    ``gamma`` satisfies ``(d'f + f beta - f_z alpha) ^ (d alpha - alpha ^ beta)^(k-1)
    = z gamma`` when the verdict is yes.  On a no, ``failing_component`` is
    the first basis tuple of the membership form whose coefficient does not
    vanish on S, ``failing_m`` its smallest index (the first ``m`` with
    ``i_{d/dx^m}`` of the form nonzero on S), and ``witness`` a z-free
    monomial of that coefficient.  ``numerator_m`` is the first ``m`` whose
    Cramer numerator for ``s_m`` is not divisible by ``z``.
    """

    verdict: bool
    certified_precision: int
    gamma: Optional[Form] = None
    failing_m: Optional[int] = None
    witness: Optional[tuple] = None
    failing_component: Optional[tuple] = None
    numerator_m: Optional[int] = None

    def __bool__(self):
        return self.verdict


def _membership_form(germ, f):
    one_form = (ext_d_prime(Form.function(f)) + germ.beta * f
                - germ.alpha * f.partial(0))
    base = ext_d(germ.alpha) - wedge(germ.alpha, germ.beta)
    return wedge(one_form, form_power(base, germ.k - 1)), base


def membership(germ, f):
    """Is ``f`` the contact Hamiltonian of some infinitesimal transformation?

    Both the single-form test and the per-``m`` divisibility test are run;
    disagreement is an internal error.
    """
    if f.k != germ.k:
        raise PreconditionError(f"f has k={f.k}, germ has k={germ.k}")
    if not germ.singular:
        # contact at the origin: theta is onto, there is nothing to test
        return MembershipCertificate(True, f.precision)
    k = germ.k
    body, base = _membership_form(germ, f)
    single = wedge(germ.dz, body)
    single_ok = vanishes_along_S(single)

    source = germ.d_omega * f + wedge(germ.omega, ext_d(Form.function(f)))
    tail = wedge(source, form_power(base, k - 1))
    numerator_m = None
    precision = min(single.precision, tail.precision)
    for m in range(1, 2 * k + 1):
        dxm = Form.basis(k, germ.precision, [m])
        numerator = wedge(dxm, tail).top_coefficient()
        precision = min(precision, numerator.precision)
        if numerator.z_order() == 0:
            numerator_m = m
            break
    per_m_ok = numerator_m is None

    if single_ok != per_m_ok:
        raise InvariantViolation(
            f"membership form says {single_ok}, per-m test says {per_m_ok}"
        )
    if not single_ok:
        component, coeff = next(
            (idx, c) for idx, c in body.items() if c.z_order() == 0
        )
        witness = next(e for e, _ in coeff.items() if e[0] == 0)
        return MembershipCertificate(
            False, precision, failing_m=component[0], witness=witness,
            failing_component=component, numerator_m=numerator_m,
        )
    gamma = body.map_coefficients(lambda c: c.div_z(), body.precision - 1)
    if body.is_zero():
        gamma = Form(k, body.degree, body.precision - 1)
    return MembershipCertificate(True, min(precision, gamma.precision), gamma=gamma)


@dataclass(frozen=True)
class Inversion:
    """A solved ``theta^{-1}(f)`` with its adapted components and multiplier."""

    field: VectorField
    s: tuple
    h: Series
    certificate: MembershipCertificate = field(repr=False)


def _adapted_components(germ, f):
    k = germ.k
    source = germ.d_omega * f + wedge(germ.omega, ext_d(Form.function(f)))
    tail = wedge(source, form_power(germ.nu, k - 1))
    den = germ.denominator
    if den.eval_origin():
        unit_inv = den.inv()
        singular = False
    else:
        try:
            u = den.div_z()
        except DivisibilityFailure as exc:
            raise DegenerateGerm(
                f"denominator vanishes at 0 but is not divisible by z (witness {exc.witness})"
            ) from exc
        if not u.eval_origin():
            raise DegenerateGerm("pf(W) vanishes to order >= 2 along S; S is not structurally smooth")
        unit_inv = u.inv()
        singular = True
    s = []
    for m in range(1, 2 * k + 1):
        dxm = Form.basis(k, germ.precision, [m])
        numerator = wedge(dxm, tail).top_coefficient()
        if singular:
            try:
                numerator = numerator.div_z()
            except DivisibilityFailure as exc:
                raise InvariantViolation(
                    f"membership passed but numerator {m} is not divisible by z"
                ) from exc
        s.append((numerator * unit_inv).scale(k))
    return s


def solve_theta_inverse(germ, f):
    """Construct ``X`` with ``omega(X) = f`` and ``L_X omega = h omega``.

    Raises :class:`MembershipFailure` when ``f`` is not in the image and
    :class:`~contactkit.errors.PrecisionExhausted` when the working precision
    is too low to certify any coefficient of ``X``.
    """
    cert = membership(germ, f)
    if not cert:
        raise MembershipFailure(cert)
    s = _adapted_components(germ, f)
    X = Decomposition(f, tuple(s)).reassemble(germ)
    if not theta(germ, X).agrees(f):
        raise InvariantViolation("theta(X) does not reproduce f")
    check = icct_check(germ, X)
    if not check:
        raise InvariantViolation(f"constructed field is not a contact transformation: {check.witness}")
    return Inversion(X, tuple(X.coeffs[1:]), check.h, cert)


def invert_theta(germ, f):
    return solve_theta_inverse(germ, f).field


def classical_inverse(f, k):
    """Contact vector field of ``f`` for ``dz + sum_i x^i dx^(k+i)``."""
    p = f.precision
    x = [Series.var(k, p, i) for i in range(2 * k + 1)]
    fx = [f.partial(i) for i in range(2 * k + 1)]
    z_comp = f
    comps = [None] * (2 * k + 1)
    for i in range(1, k + 1):
        z_comp = z_comp - x[i] * fx[i]
        comps[i] = x[i] * fx[0] - fx[k + i]
        comps[k + i] = fx[i]
    comps[0] = z_comp
    return VectorField(comps)


# -- consequences on the Martinet hypersurface --------------------------


@dataclass(frozen=True)
class Tangency:
    tangent: bool
    has_martinet: bool

    def __bool__(self):
        return self.tangent


def tangency_check(germ, X):
    """Whether ``X`` is tangent to ``S`` (its d/dz coefficient vanishes on S)."""
    if not icct_check(germ, X):
        raise PreconditionError("tangency is only asserted for contact transformations")
    if not germ.singular:
        return Tangency(True, False)
    tangent = X.coeffs[0].z_order() >= 1
    if not tangent and germ.smoothness is Smoothness.SMOOTH_SINGULAR:
        raise InvariantViolation("contact transformation is not tangent to the Martinet hypersurface")
    return Tangency(tangent, True)


@dataclass(frozen=True)
class OrderReport:
    """Vanishing data of an image element ``f`` that vanishes on S.

    ``order`` is the z-order of ``f``; ``nonvanishing`` lists the coordinate
    components of ``theta^{-1}(f)`` that do not vanish on S.
    """

    order: float
    field: Optional[VectorField]
    nonvanishing: tuple

    @property
    def field_vanishes_on_S(self):
        return not self.nonvanishing


def vanishing_order_corollary(germ, f):
    """z-order of an image element vanishing on S, checked to be at least 2.

    The d/dz component of ``theta^{-1}(f)`` always vanishes on S (tangency);
    the remaining components are reported, not asserted.
    """
    if f.is_zero():
        return OrderReport(inf, VectorField.zero(germ.k, f.precision), ())
    order = f.z_order()
    if order < 1:
        raise PreconditionError("f must vanish on S")
    X = solve_theta_inverse(germ, f).field
    if order < 2:
        raise InvariantViolation(f"image element vanishing on S has z-order {order}")
    if X.coeffs[0].z_order() < 1:
        raise InvariantViolation("d/dz component of theta^-1(f) does not vanish on S")
    bad = tuple(i for i, c in enumerate(X.coeffs) if c.z_order() < 1)
    return OrderReport(order, X, bad)


@dataclass(frozen=True)
class RestrictedLie:
    form: Optional[Form]
    h_S: Optional[Series]
    has_martinet: bool


def restricted_lie_corollary(germ, X):
    """``L_{X|S} alpha`` computed on S and checked against ``h_S alpha``."""
    if not tangency_check(germ, X).has_martinet:
        return RestrictedLie(None, None, False)
    f = theta(germ, X)
    s = X.coeffs[1:]
    h_S = f.partial(0)
    for sm, bm in zip(s, germ.b):
        h_S = h_S - sm * bm
    h_S = h_S.restrict_z0()
    on_S = VectorField([Series.zero(germ.k, X.precision)] + [c.restrict_z0() for c in s])
    lie = lie_derivative(on_S, germ.alpha)
    if not lie.agrees(germ.alpha * h_S):
        raise InvariantViolation("L_{X|S} alpha is not h_S alpha")
    return RestrictedLie(lie, h_S, True)


def injectivity_witness(germ, X):
    """Round trip ``theta^{-1}(theta(X)) == X``."""
    if not icct_check(germ, X):
        raise PreconditionError("round trip is only defined for contact transformations")
    return invert_theta(germ, theta(germ, X)).agrees(X)
