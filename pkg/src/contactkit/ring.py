"""Truncated multivariate power series over the rationals.

A :class:`Series` lives in the ring Q[[z, x1, ..., x2k]] truncated at a
total degree ``precision``: every coefficient of a monomial with total
degree ``< precision`` is exact, nothing is known above it.  Exponents
are tuples of length ``2k + 1``; position 0 is ``z`` and position ``i``
is ``x^i``.

Series are immutable.  Binary operations take the minimum of the operand
precisions; differentiation and division by ``z`` lose one order.
"""

from fractions import Fraction
from math import inf
from numbers import Rational

from contactkit.errors import DivisibilityFailure, PrecisionExhausted, RingMismatch

__all__ = [
    "Series",
    "s_add",
    "s_mul",
    "s_partial",
    "s_exp",
    "s_inv",
    "s_div_z",
    "z_order",
    "restrict_z0",
    "eval_origin",
    "grlex_key",
]


def grlex_key(exponent):
    """Sort key for graded lexicographic order (degree first, then z, x1, ...)."""
    return (sum(exponent), tuple(-e for e in exponent))


def _add_exp(a, b):
    return tuple(i + j for i, j in zip(a, b))


class Series:
    __slots__ = ("k", "precision", "_terms")

    def __init__(self, k, precision, terms=None):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        if precision < 1:
            raise PrecisionExhausted(f"precision must be positive, got {precision}")
        self.k = k
        self.precision = precision
        n = 2 * k + 1
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for k={k}")
                if sum(exp) >= precision or not c:
                    continue
                clean[exp] = Fraction(c)
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, k, precision):
        return cls(k, precision)

    @classmethod
    def const(cls, k, precision, c):
        return cls(k, precision, {(0,) * (2 * k + 1): c})

    @classmethod
    def one(cls, k, precision):
        return cls.const(k, precision, 1)

    @classmethod
    def var(cls, k, precision, index):
        """The coordinate function ``z`` (index 0) or ``x^index``."""
        if not 0 <= index <= 2 * k:
            raise ValueError(f"variable index {index} out of range for k={k}")
        exp = [0] * (2 * k + 1)
        exp[index] = 1
        return cls(k, precision, {tuple(exp): 1})

    @classmethod
    def monomial(cls, k, precision, exponent, c=1):
        return cls(k, precision, {tuple(exponent): c})

    # -- inspection ---------------------------------------------------

    @property
    def nvars(self):
        return 2 * self.k + 1

    @property
    def terms(self):
        """A fresh ``{exponent: Fraction}`` dict (the series itself is immutable)."""
        return dict(self._terms)

    def items(self):
        """``(exponent, coefficient)`` pairs in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def coefficient(self, exponent):
        exponent = tuple(exponent)
        if sum(exponent) >= self.precision:
            raise PrecisionExhausted(
                f"coefficient of {exponent} is not certified at precision {self.precision}"
            )
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self):
        """True iff every certified coefficient vanishes."""
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def z_free(self):
        return all(e[0] == 0 for e in self._terms)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Series):
            return (
                self.k == other.k
                and self.precision == other.precision
                and self._terms == other._terms
            )
        return NotImplemented

    __hash__ = None

    def truncate(self, precision):
        if precision > self.precision:
            raise PrecisionExhausted(
                f"cannot raise precision from {self.precision} to {precision}"
            )
        return Series(self.k, precision, self._terms)

    def with_precision(self, precision):
        """Reinterpret as a series at ``precision``.

        Only sound when the caller knows the stored terms are exact beyond
        the current precision (e.g. polynomial literals).
        """
        return Series(self.k, precision, self._terms)

    def agrees(self, other):
        """Equality of all coefficients certified by both operands."""
        if isinstance(other, Rational):
            other = Series.const(self.k, self.precision, other)
        self._check(other)
        p = min(self.precision, other.precision)
        return self.truncate(p)._terms == other.truncate(p)._terms

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.k != other.k:
            raise RingMismatch(f"k mismatch: {self.k} vs {other.k}")

    def _coerce(self, other):
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Series.const(self.k, self.precision, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return Series(self.k, min(self.precision, other.precision), terms)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.k, self.precision, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = Fraction(c)
        return Series(self.k, self.precision, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, Series):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = min(self.precision, other.precision)
        left = sorted(self._terms.items(), key=lambda t: sum(t[0]))
        right = sorted(other._terms.items(), key=lambda t: sum(t[0]))
        rdeg = [sum(e) for e, _ in right]
        out = {}
        for ea, ca in left:
            da = sum(ea)
            if da >= prec:
                break
            for (eb, cb), db in zip(right, rdeg):
                if da + db >= prec:
                    break
                e = _add_exp(ea, eb)
                out[e] = out.get(e, 0) + ca * cb
        return Series(self.k, prec, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Series.one(self.k, self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus -----------------------------------------------------

    def partial(self, var):
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range for k={self.k}")
        if self.precision <= 1:
            raise PrecisionExhausted("derivative of a precision-1 series has no certified terms")
        out = {}
        for exp, c in self._terms.items():
            p = exp[var]
            if p:
                e = list(exp)
                e[var] = p - 1
                out[tuple(e)] = c * p
        return Series(self.k, self.precision - 1, out)

    def exp(self):
        """``sum a^n / n!``; requires zero constant term."""
        c0 = self.eval_origin()
        if c0:
            raise ValueError(f"exp needs a zero constant term, got {c0}")
        result = Series.one(self.k, self.precision)
        term = result
        for n in range(1, self.precision):
            term = (term * self).scale(Fraction(1, n))
            if term.is_zero():
                break
            result = result + term
        return result

    def inv(self):
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.eval_origin()
        if not c0:
            raise ZeroDivisionError("inverse of a series with zero constant term")
        # a = c0 (1 - t)  =>  1/a = (1/c0) sum t^n
        t = Series.one(self.k, self.precision) - self.scale(1 / c0)
        result = Series.one(self.k, self.precision)
        power = result
        for _ in range(1, self.precision):
            power = power * t
            if power.is_zero():
                break
            result = result + power
        return result.scale(1 / c0)

    def div_z(self):
        for exp, c in self.items():
            if exp[0] == 0:
                raise DivisibilityFailure(exp, c)
        if self.precision <= 1:
            raise PrecisionExhausted("z-division of a precision-1 series has no certified terms")
        out = {(e[0] - 1,) + e[1:]: c for e, c in self._terms.items()}
        return Series(self.k, self.precision - 1, out)

    def mul_z(self):
        """Multiplication by the monomial ``z``, which is exact to one more order."""
        out = {(e[0] + 1,) + e[1:]: c for e, c in self._terms.items()}
        return Series(self.k, self.precision + 1, out)

    def z_order(self):
        if not self._terms:
            return inf
        return min(e[0] for e in self._terms)

    def z_coefficient(self, n):
        """The z^n coefficient as a z-free series (precision reduced by n)."""
        if self.precision - n < 1:
            raise PrecisionExhausted(f"z^{n} coefficient not certified")
        out = {(0,) + e[1:]: c for e, c in self._terms.items() if e[0] == n}
        return Series(self.k, self.precision - n, out)

    def restrict_z0(self):
        return Series(self.k, self.precision, {e: c for e, c in self._terms.items() if e[0] == 0})

    def eval_origin(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def linear_part(self):
        """Coefficients of z, x1, ..., x2k (the differential at the origin)."""
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self._terms.get(tuple(e), Fraction(0)))
        return out

    # -- display ------------------------------------------------------

    def __repr__(self):
        return f"Series(k={self.k}, precision={self.precision}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["z"] + [f"x{i}" for i in range(1, self.nvars)]
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                n if p == 1 else f"{n}^{p}" for n, p in zip(names, exp) if p
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# functional spellings ------------------------------------------------


def s_add(a, b):
    return a + b


def s_mul(a, b):
    return a * b


def s_partial(a, var):
    return a.partial(var)


def s_exp(a):
    return a.exp()


def s_inv(a):
    return a.inv()


def s_div_z(a):
    return a.div_z()


def z_order(a):
    return a.z_order()


def restrict_z0(a):
    return a.restrict_z0()


def eval_origin(a):
    return a.eval_origin()
