"""Differential forms and vector fields with :class:`Series` coefficients.

Basis 1-forms are numbered like the coordinates: 0 is ``dz`` and ``i`` is
``dx^i``.  A p-form is stored on strictly increasing index tuples of
length p.  Every form carries an explicit precision so that the zero form
still knows how far it is certified.
"""

from itertools import combinations
from numbers import Rational

from contactkit.errors import PrecisionExhausted, PreconditionError, RingMismatch
from contactkit.ring import Series

__all__ = [
    "Form",
    "VectorField",
    "wedge",
    "ext_d",
    "ext_d_prime",
    "interior",
    "lie_derivative",
    "partial_z_form",
    "form_power",
    "restrict_form_S",
    "vanishes_along_S",
]


def _merge_sign(a, b):
    """Sign of the shuffle sorting ``a + b``, or 0 if they share an index."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for i in a for j in b if i > j)
    return -1 if inversions % 2 else 1


class Form:
    __slots__ = ("k", "degree", "precision", "_terms")

    def __init__(self, k, degree, precision, terms=None):
        n = 2 * k + 1
        if not 0 <= degree <= n:
            raise ValueError(f"degree {degree} out of range for k={k}")
        if precision < 1:
            raise PrecisionExhausted(f"form precision must be positive, got {precision}")
        self.k = k
        self.degree = degree
        self.precision = precision
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {degree}")
            if idx and not (0 <= idx[0] and idx[-1] < n):
                raise ValueError(f"index tuple {idx} out of range for k={k}")
            if not isinstance(c, Series):
                c = Series.const(k, precision, c)
            if c.k != k:
                raise RingMismatch(f"coefficient has k={c.k}, form has k={k}")
            if c.precision < precision:
                raise ValueError(
                    f"coefficient precision {c.precision} below form precision {precision}"
                )
            if c.precision > precision:
                c = c.truncate(precision)
            if c:
                clean[idx] = c
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, k, degree, precision):
        return cls(k, degree, precision)

    @classmethod
    def function(cls, f):
        """``f`` viewed as a 0-form."""
        return cls(f.k, 0, f.precision, {(): f})

    @classmethod
    def basis(cls, k, precision, indices, coeff=1):
        """``coeff * d(indices[0]) ^ d(indices[1]) ^ ...``; indices may be unsorted."""
        indices = tuple(indices)
        degree = len(indices)
        if len(set(indices)) < degree:
            return cls(k, degree, precision)
        order = sorted(range(degree), key=lambda i: indices[i])
        inversions = sum(
            1 for i, j in combinations(range(degree), 2) if order[i] > order[j]
        )
        sign = -1 if inversions % 2 else 1
        if not isinstance(coeff, Series):
            coeff = Series.const(k, precision, coeff)
        return cls(k, degree, precision, {tuple(sorted(indices)): coeff.scale(sign)})

    @classmethod
    def one_form(cls, coeffs):
        """1-form with ``coeffs[i]`` on basis element ``i`` (``dz`` first)."""
        k = coeffs[0].k
        prec = min(c.precision for c in coeffs)
        return cls(k, 1, prec, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def dx_form(cls, coeffs):
        """1-form ``sum coeffs[i-1] dx^i`` with no ``dz`` part."""
        k = coeffs[0].k
        prec = min(c.precision for c in coeffs)
        return cls(k, 1, prec, {(i + 1,): c for i, c in enumerate(coeffs)})

    @classmethod
    def volume(cls, k, precision):
        return cls.basis(k, precision, range(2 * k + 1))

    # -- inspection ---------------------------------------------------

    @property
    def nvars(self):
        return 2 * self.k + 1

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, indices):
        """Coefficient on the basis element ``indices`` (sorted, sign-adjusted)."""
        if isinstance(indices, int):
            indices = (indices,)
        indices = tuple(indices)
        zero = Series.zero(self.k, self.precision)
        if len(indices) != self.degree or len(set(indices)) < len(indices):
            return zero
        order = sorted(range(len(indices)), key=lambda i: indices[i])
        inversions = sum(
            1 for i, j in combinations(range(len(indices)), 2) if order[i] > order[j]
        )
        c = self._terms.get(tuple(sorted(indices)), zero)
        return -c if inversions % 2 else c

    def coefficients(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def has_dz(self):
        return any(idx and idx[0] == 0 for idx in self._terms)

    def top_coefficient(self):
        """Coefficient of ``dz ^ dx^1 ^ ... ^ dx^2k`` in a top-degree form."""
        if self.degree != self.nvars:
            raise PreconditionError(f"degree {self.degree} is not top degree {self.nvars}")
        return self[tuple(range(self.nvars))]

    def __eq__(self, other):
        if isinstance(other, Form):
            return (
                self.k == other.k
                and self.degree == other.degree
                and self.precision == other.precision
                and self._terms == other._terms
            )
        return NotImplemented

    __hash__ = None

    def truncate(self, precision):
        return Form(self.k, self.degree, precision,
                    {i: c.truncate(precision) for i, c in self._terms.items()})

    def agrees(self, other):
        """Equal on every coefficient certified by both forms."""
        self._check(other)
        if self.degree != other.degree:
            return False
        p = min(self.precision, other.precision)
        return (self - other).truncate(p).is_zero()

    # -- linear structure ---------------------------------------------

    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if self.k != other.k:
            raise RingMismatch(f"k mismatch: {self.k} vs {other.k}")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        prec = min(self.precision, other.precision)
        terms = {i: c.truncate(prec) for i, c in self._terms.items()}
        for i, c in other._terms.items():
            c = c.truncate(prec)
            terms[i] = terms[i] + c if i in terms else c
        return Form(self.k, self.degree, prec, terms)

    def __neg__(self):
        return Form(self.k, self.degree, self.precision, {i: -c for i, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a function (Series) or a rational scalar."""
        if isinstance(other, Series):
            if other.k != self.k:
                raise RingMismatch(f"k mismatch: {self.k} vs {other.k}")
            prec = min(self.precision, other.precision)
            return Form(self.k, self.degree, prec,
                        {i: c.truncate(prec) * other for i, c in self._terms.items()})
        if isinstance(other, Rational):
            return Form(self.k, self.degree, self.precision,
                        {i: c.scale(other) for i, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other):
        self._check(other)
        deg = self.degree + other.degree
        prec = min(self.precision, other.precision)
        if deg > self.nvars:
            return Form(self.k, self.nvars, prec)
        out = {}
        for ia, ca in self._terms.items():
            for ib, cb in other._terms.items():
                sign = _merge_sign(ia, ib)
                if not sign:
                    continue
                idx = tuple(sorted(ia + ib))
                c = ca * cb
                if sign < 0:
                    c = -c
                out[idx] = out[idx] + c if idx in out else c
        return Form(self.k, deg, prec, out)

    def map_coefficients(self, fn, precision):
        return Form(self.k, self.degree, precision,
                    {i: fn(c) for i, c in self._terms.items()})

    def __repr__(self):
        return f"Form(k={self.k}, degree={self.degree}, precision={self.precision}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["dz"] + [f"dx{i}" for i in range(1, self.nvars)]
        parts = []
        for idx, c in self.items():
            basis = "^".join(names[i] for i in idx)
            parts.append(f"({c})" + (f" {basis}" if basis else ""))
        return " + ".join(parts)


class VectorField:
    """Coefficients over ``d/dz, d/dx^1, ..., d/dx^2k``."""

    __slots__ = ("k", "precision", "coeffs")

    def __init__(self, coeffs, precision=None):
        coeffs = list(coeffs)
        k = coeffs[0].k
        if len(coeffs) != 2 * k + 1:
            raise ValueError(f"expected {2 * k + 1} components, got {len(coeffs)}")
        if any(c.k != k for c in coeffs):
            raise RingMismatch("vector field components disagree on k")
        if precision is None:
            precision = min(c.precision for c in coeffs)
        self.k = k
        self.precision = precision
        self.coeffs = tuple(c.truncate(precision) for c in coeffs)

    @classmethod
    def zero(cls, k, precision):
        return cls([Series.zero(k, precision)] * (2 * k + 1))

    @classmethod
    def coordinate(cls, k, precision, index, coeff=None):
        """``coeff * d/d(var index)``; index 0 is ``d/dz``."""
        comps = [Series.zero(k, precision)] * (2 * k + 1)
        comps[index] = coeff if coeff is not None else Series.one(k, precision)
        return cls(comps)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VectorField([-a for a in self.coeffs])

    def __mul__(self, f):
        if isinstance(f, (Series, Rational)):
            return VectorField([a * f for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, VectorField):
            return self.precision == other.precision and self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def agrees(self, other):
        return all(a.agrees(b) for a, b in zip(self.coeffs, other.coeffs))

    def truncate(self, precision):
        return VectorField([c.truncate(precision) for c in self.coeffs])

    def apply(self, f):
        """Directional derivative ``X(f)``."""
        out = Series.zero(f.k, f.precision - 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * f.partial(i)
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        names = ["d/dz"] + [f"d/dx{i}" for i in range(1, 2 * self.k + 1)]
        body = " + ".join(f"({c}) {n}" for c, n in zip(self.coeffs, names) if c) or "0"
        return f"VectorField(precision={self.precision}, {body})"


# -- operations ---------------------------------------------------------


def wedge(a, b):
    return a.wedge(b)


def ext_d(a):
    """Exterior derivative; coefficients lose one order of precision."""
    return _ext_d(a, range(a.nvars))


def ext_d_prime(a):
    """Exterior derivative in the x-directions only; ``z`` is a parameter."""
    return _ext_d(a, range(1, a.nvars))


def _ext_d(a, variables):
    prec = a.precision - 1
    if prec < 1:
        raise PrecisionExhausted("exterior derivative of a precision-1 form has no certified terms")
    if a.degree == a.nvars:
        return Form(a.k, a.degree, prec)
    out = {}
    for idx, c in a._terms.items():
        for v in variables:
            if v in idx:
                continue
            dc = c.partial(v)
            if not dc:
                continue
            if sum(1 for i in idx if i < v) % 2:
                dc = -dc
            key = tuple(sorted(idx + (v,)))
            out[key] = out[key] + dc if key in out else dc
    return Form(a.k, a.degree + 1, prec, out)


def interior(X, a):
    """Contraction of ``a`` with ``X`` in the first slot."""
    if a.degree < 1:
        raise PreconditionError("interior product needs a form of degree >= 1")
    if X.k != a.k:
        raise RingMismatch(f"k mismatch: {X.k} vs {a.k}")
    prec = min(X.precision, a.precision)
    out = {}
    for idx, c in a._terms.items():
        for r, i in enumerate(idx):
            xi = X.coeffs[i]
            if not xi:
                continue
            term = c.truncate(prec) * xi.truncate(prec)
            if r % 2:
                term = -term
            key = idx[:r] + idx[r + 1:]
            out[key] = out[key] + term if key in out else term
    return Form(a.k, a.degree - 1, prec, out)


def lie_derivative(X, a):
    """Cartan's formula ``L_X = i_X d + d i_X``."""
    if a.degree == 0:
        return Form.function(X.apply(a[()]))
    second = ext_d(interior(X, a))
    if a.degree == a.nvars:
        return second
    return interior(X, ext_d(a)) + second


def partial_z_form(a):
    """Differentiate every coefficient in ``z``; degree unchanged."""
    return a.map_coefficients(lambda c: c.partial(0), a.precision - 1)


def form_power(a, n):
    if n < 0:
        raise ValueError("negative form power")
    if n > 1 and a.degree % 2:
        raise PreconditionError("powers above 1 of an odd-degree form are not supported")
    result = Form.function(Series.one(a.k, a.precision))
    for _ in range(n):
        result = result.wedge(a)
    return result


def restrict_form_S(a):
    """Pullback to ``S = {z = 0}``: drop ``dz`` terms, set ``z = 0``."""
    return Form(a.k, a.degree, a.precision,
                {i: c.restrict_z0() for i, c in a._terms.items() if not (i and i[0] == 0)})


def vanishes_along_S(a):
    """Every coefficient (``dz`` terms included) vanishes at ``z = 0``."""
    return all(c.z_order() >= 1 for c in a._terms.values())
