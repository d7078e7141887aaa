"""Acceptance suite: one pass/fail line per criterion.

Each criterion returns a :class:`Result`.  Sub-checks that fail are named
in the detail column so a red line says exactly what did not hold.
"""

import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List

from contactkit.cli import run_cli
from contactkit.contact import (
    classical_inverse,
    darboux_germ,
    icct_check,
    invert_theta,
    membership,
    realizability_check,
    solve_theta_inverse,
    tangency_check,
    theta,
)
from contactkit.exterior import Form, ext_d, form_power, interior, lie_derivative, wedge
from contactkit.expr import parse_expr, to_text
from contactkit.germs import (
    coords,
    example1,
    example1_member,
    example2,
    example2_member,
    random_expression,
    random_polynomial,
    random_realizable_k2,
    random_skew_constant,
    random_vector_field,
    rng,
)
from contactkit.pfaffian import (
    SkewMatrix,
    build_W,
    cofactor_identity_check,
    laplace_det,
    pf,
)
from contactkit.ring import Series
from contactkit.exterior import VectorField

EXAMPLE1_PROBLEM = {
    "k": 1,
    "precision": 10,
    "alpha": ["exp(x1*x2)", "0"],
    "beta": ["0", "-x1"],
    "f": "exp(x1*x2) + x2*z",
}
EXAMPLE1_MEMBER_Z = dict(EXAMPLE1_PROBLEM, f="z")
EXAMPLE2_PROBLEM = {
    "k": 1,
    "precision": 8,
    "alpha": ["inv(x2+1)*exp(-(x1*x2))", "0"],
    "beta": ["0", "x1 + inv(x2+1)"],
    "f": "inv(x2+1)*exp(-(x1*x2)) - x2*z",
}
FLAT_PROBLEM = {"k": 1, "precision": 6, "alpha": ["1", "0"], "beta": ["0", "1"]}


@dataclass
class Result:
    number: int
    title: str
    checks: List[tuple] = field(default_factory=list)
    seconds: float = 0.0
    limit: float = None

    def check(self, name, ok):
        self.checks.append((name, bool(ok)))
        return bool(ok)

    @property
    def failed(self):
        names = [n for n, ok in self.checks if not ok]
        if self.limit is not None and self.seconds >= self.limit:
            names.append(f"runtime {self.seconds:.2f}s >= {self.limit}s")
        return names

    @property
    def passed(self):
        return bool(self.checks) and not self.failed

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        detail = f"{len(self.checks)} checks" if self.passed else "failed: " + "; ".join(self.failed)
        return f"[{mark}] {self.number:>2}. {self.title} ({self.seconds:.2f}s) {detail}"


def _timed(number, title, limit=None):
    def deco(fn):
        def run():
            res = Result(number, title, limit=limit)
            start = time.perf_counter()
            try:
                fn(res)
            except Exception as exc:  # a crash is a failed criterion, not a crashed suite
                res.check(f"raised {type(exc).__name__}: {exc}", False)
            res.seconds = time.perf_counter() - start
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return deco


def _direct_lie(germ, X):
    """``L_X omega`` by Cartan, plus its dz coefficient and the proportionality verdict."""
    lie = lie_derivative(X, germ.omega)
    h = lie[0]
    return lie, h, (lie - germ.omega * h).is_zero()


# -- criteria -----------------------------------------------------------


@_timed(1, "Example-1 end-to-end", limit=1.0)
def criterion_1(res):
    germ = example1(10)
    z, x1, x2 = coords(1, 10)
    f = (x1 * x2).exp() + x2 * z
    res.check("membership yes", membership(germ, f))
    inv = solve_theta_inverse(germ, f)
    X = inv.field
    expected = VectorField([x2 * z, Series.one(1, 10), Series.zero(1, 10)])
    res.check("X = d/dx1 + x2 z d/dz", X.agrees(expected))
    res.check("s = (1, 0)", inv.s[0].agrees(Series.one(1, 10)) and inv.s[1].is_zero())
    res.check("h = x2", inv.h.agrees(x2))
    # L_X omega via i_X d omega + d(f), with f entering at full precision
    lie = interior(X, germ.d_omega) + ext_d(Form.function(f))
    fixture = Form.one_form([x2, x2 * (x1 * x2).exp(), -(x1 * x2 * z)])
    res.check("L_X omega certified to precision 8", lie.precision >= 8)
    res.check("L_X omega = x2 omega (hand fixture)", lie.truncate(8).agrees(fixture.truncate(8)))
    res.check("L_X omega = x2 omega (Cartan)", lie_derivative(X, germ.omega).agrees(germ.omega * x2))
    res.check("tangency", tangency_check(germ, X))


@_timed(2, "Example-2 pipeline", limit=2.0)
def criterion_2(res):
    germ = example2(8)
    z, x1, x2 = coords(1, 8)
    real = realizability_check(germ)
    res.check("realizability (true, true)", real.cond1 and real.cond2)
    f = (x2 + 1).inv() * (-(x1 * x2)).exp() - x2 * z
    res.check("membership yes", membership(germ, f))
    X = invert_theta(germ, f)
    res.check("tangency", tangency_check(germ, X))
    res.check("theta(theta^-1(f)) = f", theta(germ, X).agrees(f))


@_timed(3, "Darboux oracle equivalence", limit=30.0)
def criterion_3(res):
    r = rng(3)
    for k in (1, 2):
        precision = 6
        germ = darboux_germ(k, precision)
        bad_eq = bad_lie = 0
        for _ in range(25):
            f = random_polynomial(r, k, precision, degree=3, density=0.3)
            inv = solve_theta_inverse(germ, f)
            if not inv.field.agrees(classical_inverse(f, k)):
                bad_eq += 1
            _, h, ok = _direct_lie(germ, inv.field)
            if not (ok and h.agrees(inv.h)):
                bad_lie += 1
        res.check(f"k={k}: invert_theta = classical ({25 - bad_eq}/25)", bad_eq == 0)
        res.check(f"k={k}: L_X omega = h omega ({25 - bad_lie}/25)", bad_lie == 0)


@_timed(4, "Pfaffian suite", limit=30.0)
def criterion_4(res):
    r = rng(4)
    sizes = (2, 4, 6, 8)
    bad_sq = bad_pivot = bad_cof = 0
    for t in range(200):
        n = sizes[t % 4]
        W = SkewMatrix(random_skew_constant(r, n))
        value = pf(W)
        det = laplace_det(W.rows(), W.k, W.precision)
        if not (value * value).agrees(det):
            bad_sq += 1
        if any(not pf(W, row).agrees(value) for row in range(2, n + 1)):
            bad_pivot += 1
        if n <= 6:
            pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
            if not all(cofactor_identity_check(W, i, j) for i, j in pairs):
                bad_cof += 1
    res.check(f"pf^2 = det ({bad_sq} bad)", bad_sq == 0)
    res.check(f"pivot-row independence ({bad_pivot} bad)", bad_pivot == 0)
    res.check(f"cofactor identity n<=6 ({bad_cof} bad)", bad_cof == 0)


def _order_facts(res, name, germ):
    W = build_W(germ)
    p = pf(W)
    res.check(f"{name}: z_order pf(W) = 1", p.z_order() == 1)
    res.check(f"{name}: leading coefficient nonzero at 0", p.z_coefficient(1).eval_origin() != 0)
    det = laplace_det(W.rows(), W.k, W.precision)
    res.check(f"{name}: z_order det W = 2", det.z_order() == 2)
    res.check(f"{name}: z_order defect = 1", germ.defect.z_order() == 1)
    k = germ.k
    lhs = wedge(germ.dz, form_power(germ.mu, k)).top_coefficient()
    res.check(f"{name}: bridge identity", lhs.agrees(p.scale((-1) ** k * factorial(k))))


@_timed(5, "Order facts and bridge identity")
def criterion_5(res):
    _order_facts(res, "example 1", example1(10))
    _order_facts(res, "example 2", example2(8))
    _order_facts(res, "random k=2", random_realizable_k2(rng(5), precision=6))


@_timed(6, "Vanishing-order corollary on example 1")
def criterion_6(res):
    germ = example1(10)
    z = coords(1, 10)[0]
    f = z * z
    res.check("z^2: membership yes", membership(germ, f))
    res.check("z^2: z_order = 2", f.z_order() == 2)
    X = invert_theta(germ, f)
    res.check(
        "z^2: every component of theta^-1 has z_order >= 1",
        all(c.z_order() >= 1 for c in X.coeffs),
    )
    res.check("z: membership no", not membership(germ, z))


def _member_fields(r, which, count):
    """Contact transformations from random image elements of an example germ."""
    precision = 7
    germ = example1(precision) if which == 1 else example2(precision)
    build = example1_member if which == 1 else example2_member
    fields = []
    for _ in range(count):
        g = random_polynomial(r, 1, precision, 2, 0.6, [1])
        tail = random_polynomial(r, 1, precision, 1, 0.5)
        fields.append(invert_theta(germ, build(g, tail, precision)))
    return germ, fields


@_timed(7, "Two-route icct consistency")
def criterion_7(res):
    r = rng(7)
    for which in (1, 2):
        germ, contact_fields = _member_fields(r, which, 25)
        generic = [random_vector_field(r, 1, germ.precision) for _ in range(25)]
        bad = yes = 0
        for X in contact_fields + generic:
            result = icct_check(germ, X)
            _, h, direct = _direct_lie(germ, X)
            if bool(result) != direct or (direct and not result.h.agrees(h)):
                bad += 1
            yes += direct
        res.check(f"example {which}: routes agree on 50 fields ({yes} icct, {bad} bad)", bad == 0)
        res.check(f"example {which}: member fields are icct", yes >= 25)


@_timed(8, "Injectivity round trips")
def criterion_8(res):
    r = rng(8)
    fixtures = []
    for which in (1, 2):
        germ, fields = _member_fields(r, which, 10)
        fixtures += [(germ, X) for X in fields]
    g1, g2 = example1(10), example2(8)
    z1, a1, b1 = coords(1, 10)
    z2, a2, b2 = coords(1, 8)
    images = [
        (g1, (a1 * b1).exp() + b1 * z1),
        (g1, z1 * z1),
        (g2, (b2 + 1).inv() * (-(a2 * b2)).exp() - b2 * z2),
    ]
    for k in (1, 2):
        dg = darboux_germ(k, 5)
        for _ in range(5):
            f = random_polynomial(r, k, 5, 3, 0.3)
            images.append((dg, f))
            fixtures.append((dg, classical_inverse(f, k)))
    bad = sum(not invert_theta(g, theta(g, X)).agrees(X) for g, X in fixtures)
    res.check(f"invert(theta(X)) = X on {len(fixtures)} fields ({bad} bad)", bad == 0)
    bad = sum(not theta(g, invert_theta(g, f)).agrees(f) for g, f in images)
    res.check(f"theta(invert(f)) = f on {len(images)} functions ({bad} bad)", bad == 0)


@_timed(9, "k=3 Darboux smoke test", limit=60.0)
def criterion_9(res):
    k, precision = 3, 4
    germ = darboux_germ(k, precision)
    f = Series(k, precision, {
        (0, 1, 0, 0, 1, 0, 0): Fraction(1),
        (1, 0, 1, 0, 0, 0, 0): Fraction(-2, 3),
        (0, 0, 0, 1, 0, 0, 1): Fraction(5),
        (0, 0, 0, 0, 0, 1, 0): Fraction(1, 2),
        (2, 0, 0, 0, 0, 0, 0): Fraction(3),
    })
    res.check("membership yes", membership(germ, f))
    inv = solve_theta_inverse(germ, f)
    res.check("theta(X) = f", theta(germ, inv.field).agrees(f))
    res.check("X = classical inverse", inv.field.agrees(classical_inverse(f, k)))
    res.check("invert(theta(X)) = X", invert_theta(germ, theta(germ, inv.field)).agrees(inv.field))


def _cli(problem, command):
    out = io.StringIO()
    code = run_cli([command, json.dumps(problem)], out=out)
    return code, json.loads(out.getvalue())


@_timed(10, "Frontend examples and parser round trip")
def criterion_10(res):
    code, doc = _cli(EXAMPLE1_PROBLEM, "invert")
    comps = doc.get("field", {}).get("components", [])
    want = [[[[1, 0, 1], "1", "1"]], [[[0, 0, 0], "1", "1"]], []]
    res.check("invert example1: exit 0", code == 0)
    res.check("invert example1: X = (x2 z, 1, 0)", [c["terms"] for c in comps] == want)
    res.check("invert example1: h = x2", doc.get("h", {}).get("terms") == [[[0, 0, 1], "1", "1"]])
    res.check("invert example1: round trip", doc.get("round_trip") is True)

    code, doc = _cli(EXAMPLE1_MEMBER_Z, "member")
    res.check("member z: exit 1", code == 1)
    res.check("member z: verdict no", doc.get("verdict") == "no")
    res.check("member z: failing_m = 1", doc.get("failing_m") == 1)

    code, doc = _cli(FLAT_PROBLEM, "realizable")
    res.check("realizable flat: exit 1", code == 1)
    res.check("realizable flat: cond1 false", doc.get("cond1") is False)

    r = rng(10)
    bad = 0
    for _ in range(100):
        e = random_expression(r, k=r.randint(1, 3), depth=4)
        if parse_expr(to_text(e)) != e:
            bad += 1
    res.check(f"parse(print(e)) = e on 100 expressions ({bad} bad)", bad == 0)


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def run_all(out=None):
    out = out or sys.stdout
    results = []
    for crit in CRITERIA:
        res = crit()
        out.write(res.line() + "\n")
        out.flush()
        results.append(res)
    passed = sum(r.passed for r in results)
    out.write(f"{passed}/{len(results)} criteria passed\n")
    return results
