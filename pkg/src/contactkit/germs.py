"""Named germs and seeded random data used by the tests and ``selftest``."""

import os
import random
from fractions import Fraction

from contactkit.contact import ContactGerm, realizability_check
from contactkit.exterior import VectorField
from contactkit.ring import Series

DEFAULT_SEED = 20251016


def seed_from_env():
    """Seed for randomized suites, overridable through ``CONTACTKIT_SEED``."""
    value = os.environ.get("CONTACTKIT_SEED")
    return int(value) if value not in (None, "") else DEFAULT_SEED


def rng(salt=0):
    return random.Random(seed_from_env() * 1000003 + salt)


def coords(k, precision):
    return [Series.var(k, precision, i) for i in range(2 * k + 1)]


def example1(precision=10):
    """``alpha = exp(x1 x2) dx1``, ``beta = -x1 dx2`` (k = 1)."""
    z, x1, x2 = coords(1, precision)
    zero = Series.zero(1, precision)
    return ContactGerm.from_coefficients([(x1 * x2).exp(), zero], [zero, -x1])


def example2(precision=8):
    """``alpha = exp(-x1 x2)/(x2+1) dx1``, ``beta = (x1 + 1/(x2+1)) dx2`` (k = 1)."""
    z, x1, x2 = coords(1, precision)
    zero = Series.zero(1, precision)
    unit = (x2 + 1).inv()
    return ContactGerm.from_coefficients(
        [unit * (-(x1 * x2)).exp(), zero], [zero, x1 + unit]
    )


def example1_member(g, tail, precision=10):
    """``exp(x1 x2) g + (x2 g + g') z + z^2 tail`` for ``g = g(x1)``."""
    z, x1, x2 = coords(1, precision)
    return (x1 * x2).exp() * g + (x2 * g + g.partial(1)) * z + z * z * tail


def example2_member(g, tail, precision=8):
    """``exp(-x1 x2) g/(x2+1) + (g' - x2 g) z + z^2 tail`` for ``g = g(x1)``."""
    z, x1, x2 = coords(1, precision)
    unit = (x2 + 1).inv()
    return unit * (-(x1 * x2)).exp() * g + (g.partial(1) - x2 * g) * z + z * z * tail


# -- random data --------------------------------------------------------


def random_rational(r, bound=5):
    num = r.randint(-bound, bound)
    return Fraction(num, r.randint(1, bound))


def random_polynomial(r, k, precision, degree=3, density=0.5, variables=None,
                      constant=True, bound=5):
    """Random polynomial of total degree <= ``degree`` in the chosen variables."""
    n = 2 * k + 1
    variables = list(range(n)) if variables is None else list(variables)
    terms = {}

    def exponents(d, vs):
        if not vs:
            if d == 0:
                yield ()
            return
        for e in range(d + 1):
            for rest in exponents(d - e, vs[1:]):
                yield (e,) + rest

    for d in range(0 if constant else 1, degree + 1):
        for sub in exponents(d, variables):
            if r.random() < density:
                exp = [0] * n
                for v, e in zip(variables, sub):
                    exp[v] = e
                terms[tuple(exp)] = random_rational(r, bound)
    return Series(k, precision, terms)


def random_vector_field(r, k, precision, degree=2):
    return VectorField([random_polynomial(r, k, precision, degree) for _ in range(2 * k + 1)])


def random_skew_constant(r, n, bound=5, k=1, precision=1):
    """Random skew matrix of rational constants (as rows of Series)."""
    zero = Series.zero(k, precision)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Series.const(k, precision, random_rational(r, bound))
            rows[i][j] = v
            rows[j][i] = -v
    return rows


def random_realizable_k2(r, precision=6, z_dependent_beta=False, attempts=50):
    """A random structurally smooth k=2 germ.

    ``alpha = exp(phi) (dx1 + x2 dx3)`` and
    ``beta = -d phi + (x4 + p1) dx1 + p2 dx2 + p3 dx3`` with random
    polynomials ``phi, p_i`` vanishing at 0, filtered by the realizability test.
    """
    k = 2
    x = coords(k, precision)
    xs = range(1, 5)
    for _ in range(attempts):
        phi = random_polynomial(r, k, precision, 2, 0.4, xs, constant=False)
        p = [random_polynomial(r, k, precision, 2, 0.3, xs, constant=False) for _ in range(3)]
        unit = phi.exp()
        a = [unit, Series.zero(k, precision), unit * x[2], Series.zero(k, precision)]
        b = [-phi.partial(i).with_precision(precision) for i in xs]
        b[0] = b[0] + x[4] + p[0]
        b[1] = b[1] + p[1]
        b[2] = b[2] + p[2]
        if z_dependent_beta:
            b = [bi + x[0] * random_polynomial(r, k, precision, 1, 0.5, xs) for bi in b]
        germ = ContactGerm.from_coefficients(a, b)
        if realizability_check(germ):
            return germ
    raise RuntimeError("no realizable germ found; change CONTACTKIT_SEED")


def random_expression(r, k=1, depth=3):
    """Random expression tree for parser round trips (never evaluated)."""
    from contactkit import expr as E

    names = ["z"] + [f"x{i}" for i in range(1, 2 * k + 1)]
    if depth <= 0 or r.random() < 0.25:
        if r.random() < 0.5:
            return E.Var(r.choice(names))
        return E.Num(abs(random_rational(r)))
    kind = r.choice(["add", "sub", "mul", "neg", "pow", "exp", "inv"])
    sub = lambda: random_expression(r, k, depth - 1)  # noqa: E731
    if kind == "add":
        return E.Add(sub(), sub())
    if kind == "sub":
        return E.Sub(sub(), sub())
    if kind == "mul":
        return E.Mul(sub(), sub())
    if kind == "neg":
        return E.Neg(sub())
    if kind == "pow":
        return E.Pow(sub(), r.randint(0, 4))
    return E.Call(kind, sub())
