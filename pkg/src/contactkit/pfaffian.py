"""Skew-symmetric matrices over the series ring and their Pfaffians.

Row and column indices in the public functions are 1-based, matching the
``dx^1, ..., dx^2k`` numbering of :mod:`contactkit.exterior`.
"""

from math import factorial

from contactkit.errors import PreconditionError
from contactkit.exterior import Form, form_power, wedge
from contactkit.ring import Series

__all__ = [
    "SkewMatrix",
    "heaviside",
    "pf",
    "pf_minor",
    "det_skew",
    "laplace_det",
    "cofactor_identity_check",
    "build_W",
    "build_d_vector",
    "matrix_two_form",
    "two_form_matrix_bridge",
]


def heaviside(t):
    return 1 if t > 0 else 0


class SkewMatrix:
    """An n x n skew-symmetric matrix with Series entries (n even)."""

    __slots__ = ("n", "k", "precision", "entries")

    def __init__(self, entries, k=None, precision=None):
        entries = [list(row) for row in entries]
        n = len(entries)
        if n % 2:
            raise PreconditionError(f"Pfaffians need even order, got {n}")
        if any(len(row) != n for row in entries):
            raise ValueError("matrix is not square")
        if n:
            k = entries[0][0].k
            precision = min(e.precision for row in entries for e in row)
        elif k is None or precision is None:
            raise ValueError("an empty matrix needs explicit k and precision")
        for i in range(n):
            if entries[i][i]:
                raise ValueError(f"diagonal entry {i + 1} is not zero")
            for j in range(i + 1, n):
                if not (entries[i][j] + entries[j][i]).is_zero():
                    raise ValueError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")
        self.n = n
        self.k = k
        self.precision = precision
        self.entries = tuple(tuple(e.truncate(precision) for e in row) for row in entries)

    @classmethod
    def from_upper(cls, n, upper, k, precision):
        """Build from a callable ``upper(i, j)`` for 1 <= i < j <= n."""
        zero = Series.zero(k, precision)
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = upper(i + 1, j + 1)
                rows[i][j] = v
                rows[j][i] = -v
        return cls(rows, k, precision)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    def delete(self, *indices):
        """Remove the given rows and the same columns."""
        keep = [r for r in range(self.n) if r + 1 not in indices]
        return SkewMatrix(
            [[self.entries[r][c] for c in keep] for r in keep], self.k, self.precision
        )

    def with_entry(self, i, j, value):
        """Copy with entry (i, j) set to ``value`` and (j, i) to ``-value``."""
        rows = [list(r) for r in self.entries]
        rows[i - 1][j - 1] = value
        rows[j - 1][i - 1] = -value
        return SkewMatrix(rows, self.k, self.precision)

    def rows(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"SkewMatrix(n={self.n}, precision={self.precision})"


def _pf_sub(W, idx, memo):
    if not idx:
        return Series.one(W.k, W.precision)
    hit = memo.get(idx)
    if hit is not None:
        return hit
    first = idx[0]
    total = Series.zero(W.k, W.precision)
    for q in range(1, len(idx)):
        entry = W.entries[first][idx[q]]
        if not entry:
            continue
        rest = idx[1:q] + idx[q + 1:]
        # pivot at position 1, partner at q+1: sign (-1)^(q+1)
        term = entry * _pf_sub(W, rest, memo)
        total = total + term if q % 2 else total - term
    memo[idx] = total
    return total


def pf(W, row=1):
    """Pfaffian by expansion along ``row``, memoized over index subsets."""
    if W.n == 0:
        return Series.one(W.k, W.precision)
    if not 1 <= row <= W.n:
        raise ValueError(f"row {row} out of range")
    memo = {}
    i = row
    total = Series.zero(W.k, W.precision)
    for j in range(1, W.n + 1):
        if j == i or not W[i, j]:
            continue
        rest = tuple(r for r in range(W.n) if r not in (i - 1, j - 1))
        sign = (-1) ** (i + j + 1 + heaviside(i - j))
        total = total + (W[i, j] * _pf_sub(W, rest, memo)).scale(sign)
    return total


def pf_minor(W, i, j):
    """Pfaffian of W with rows and columns i and j removed."""
    if i == j:
        raise PreconditionError("pf_minor needs i != j")
    return pf(W.delete(i, j))


def det_skew(W):
    p = pf(W)
    return p * p


def laplace_det(rows, k, precision):
    """Determinant of a square Series matrix by memoized Laplace expansion."""
    n = len(rows)
    memo = {}

    def rec(r, cols):
        if r == n:
            return Series.one(k, precision)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = Series.zero(k, precision)
        for pos, c in enumerate(cols):
            a = rows[r][c]
            if not a:
                continue
            term = a * rec(r + 1, cols[:pos] + cols[pos + 1:])
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return rec(0, tuple(range(n)))


def cofactor_identity_check(W, i, j):
    """Check (-1)^(i+j) det(W minus row i, col j) = (-1)^(i+j+1+H(i-j)) pf_minor * pf.

    On the diagonal the minor is skew of odd order, so the cofactor must vanish.
    """
    minor = [
        [W.entries[r][c] for c in range(W.n) if c != j - 1]
        for r in range(W.n)
        if r != i - 1
    ]
    lhs = laplace_det(minor, W.k, W.precision).scale((-1) ** (i + j))
    if i == j:
        return lhs.is_zero()
    rhs = (pf_minor(W, i, j) * pf(W)).scale((-1) ** (i + j + 1 + heaviside(i - j)))
    return lhs.agrees(rhs)


def build_W(germ):
    """The matrix of the linear system for the adapted-frame components."""
    eta = germ.eta
    d_eta = [[e.partial(v) for v in range(germ.nvars)] for e in eta]

    def xi(i, j):
        a, b = i - 1, j - 1
        return (d_eta[a][j] - d_eta[b][i]
                + eta[a] * d_eta[b][0] - eta[b] * d_eta[a][0])

    return SkewMatrix.from_upper(2 * germ.k, xi, germ.k, germ.precision - 1)


def build_d_vector(germ, f):
    """Right-hand side ``eta_l f_z - f (eta_l)_z - f_{x^l}`` of the system."""
    if f.k != germ.k:
        raise PreconditionError(f"f has k={f.k}, germ has k={germ.k}")
    fz = f.partial(0)
    return [
        e * fz - f * e.partial(0) - f.partial(l)
        for l, e in enumerate(germ.eta, start=1)
    ]


def matrix_two_form(W):
    """``sum_{i<j} W[i,j] dx^i ^ dx^j``."""
    return Form(W.k, 2, W.precision, {
        (i, j): W[i, j] for i in range(1, W.n + 1) for j in range(i + 1, W.n + 1)
    })


def two_form_matrix_bridge(germ, mu=None):
    """Check ``dz ^ mu^k = (-1)^k k! pf(W) vol`` at working precision.

    ``mu`` defaults to the germ's ``mu`` 2-form; pass ``germ.nu`` to check
    the matrix form itself.
    """
    k = germ.k
    mu = germ.mu if mu is None else mu
    lhs = wedge(germ.dz, form_power(mu, k)).top_coefficient()
    rhs = pf(build_W(germ)).scale((-1) ** k * factorial(k))
    return lhs.agrees(rhs)
