"""JSON encodings of series, forms and vector fields, and the problem file."""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from contactkit.contact import ContactGerm
from contactkit.errors import ContactKitError
from contactkit.exterior import Form, VectorField
from contactkit.expr import eval_expr, parse_expr
from contactkit.ring import Series

__all__ = [
    "ProblemError",
    "Problem",
    "series_to_json",
    "series_from_json",
    "form_to_json",
    "form_from_json",
    "field_to_json",
    "field_from_json",
    "load_problem",
]


class ProblemError(ContactKitError, ValueError):
    """Malformed problem file."""


def series_to_json(s):
    return {
        "k": s.k,
        "precision": s.precision,
        "terms": [[list(e), str(c.numerator), str(c.denominator)] for e, c in s.items()],
    }


def series_from_json(data):
    terms = {tuple(e): Fraction(int(num), int(den)) for e, num, den in data["terms"]}
    return Series(data["k"], data["precision"], terms)


def form_to_json(form):
    return {
        "k": form.k,
        "degree": form.degree,
        "precision": form.precision,
        "terms": [[list(idx), series_to_json(c)] for idx, c in form.items()],
    }


def form_from_json(data):
    terms = {tuple(idx): series_from_json(c) for idx, c in data["terms"]}
    return Form(data["k"], data["degree"], data["precision"], terms)


def field_to_json(X):
    return {
        "k": X.k,
        "precision": X.precision,
        "components": [series_to_json(c) for c in X.coeffs],
    }


def field_from_json(data):
    return VectorField([series_from_json(c) for c in data["components"]], data["precision"])


@dataclass
class Problem:
    """A parsed problem file: the germ data plus optional ``f`` and ``X``."""

    k: int
    precision: int
    alpha: List[str]
    beta: List[str]
    f: Optional[str] = None
    X: Optional[List[str]] = None

    def _eval(self, text, what):
        try:
            return eval_expr(parse_expr(text), self.k, self.precision)
        except ContactKitError as exc:
            raise ProblemError(f"{what}: {exc}") from exc

    def germ(self):
        a = [self._eval(t, f"alpha[{i}]") for i, t in enumerate(self.alpha)]
        b = [self._eval(t, f"beta[{i}]") for i, t in enumerate(self.beta)]
        for i, ai in enumerate(a):
            if not ai.z_free():
                raise ProblemError(f"alpha[{i}] depends on z")
        return ContactGerm.from_coefficients(a, b)

    def function(self):
        if self.f is None:
            raise ProblemError("this command needs an 'f' entry")
        return self._eval(self.f, "f")

    def field(self):
        if self.X is None:
            raise ProblemError("this command needs an 'X' entry")
        return VectorField([self._eval(t, f"X[{i}]") for i, t in enumerate(self.X)])


def _string_list(data, key, length):
    value = data.get(key)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ProblemError(f"'{key}' must be a list of strings")
    if len(value) != length:
        raise ProblemError(f"'{key}' needs {length} entries, got {len(value)}")
    return value


def load_problem(source):
    """Read a problem from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        try:
            if text.lstrip().startswith("{"):
                data = json.loads(text)
            else:
                with open(text) as fh:
                    data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ProblemError(f"cannot read problem: {exc}") from exc
    if not isinstance(data, dict):
        raise ProblemError("problem must be a JSON object")
    k, precision = data.get("k"), data.get("precision")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ProblemError("'k' must be a positive integer")
    if not isinstance(precision, int) or isinstance(precision, bool) or precision < 1:
        raise ProblemError("'precision' must be a positive integer")
    problem = Problem(
        k=k,
        precision=precision,
        alpha=_string_list(data, "alpha", 2 * k),
        beta=_string_list(data, "beta", 2 * k),
    )
    if "f" in data:
        if not isinstance(data["f"], str):
            raise ProblemError("'f' must be a string")
        problem.f = data["f"]
    if "X" in data:
        problem.X = _string_list(data, "X", 2 * k + 1)
    return problem
