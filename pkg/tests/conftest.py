from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from contactkit.exterior import Form, VectorField
from contactkit.ring import Series

settings.register_profile(
    "contactkit",
    derandomize=True,
    database=None,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("contactkit")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5)


@st.composite
def series(draw, k=1, precision=4, max_degree=3, unit=False):
    n = 2 * k + 1
    exps = st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda e: sum(e) <= max_degree)
    terms = draw(st.dictionaries(exps, rationals, max_size=6))
    if unit:
        terms[(0,) * n] = draw(rationals.filter(bool))
    return Series(k, precision, terms)


@st.composite
def forms(draw, k=1, degree=1, precision=4):
    from itertools import combinations

    n = 2 * k + 1
    terms = {}
    for idx in combinations(range(n), degree):
        if draw(st.booleans()):
            terms[idx] = draw(series(k, precision))
    return Form(k, degree, precision, terms)


@st.composite
def fields(draw, k=1, precision=4):
    return VectorField([draw(series(k, precision, 2)) for _ in range(2 * k + 1)])


def F(*args):
    return Fraction(*args)
