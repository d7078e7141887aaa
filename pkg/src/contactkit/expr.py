"""A small expression language for series coefficients.

Grammar (left-associative, ``^`` binds tightest, then unary minus, then
``*``, then ``+``/``-``)::

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := "-" unary | power
    power := atom ("^" INT)*
    atom  := NUMBER | VAR | ("exp" | "inv") "(" expr ")" | "(" expr ")"

``NUMBER`` is ``p`` or ``p/q`` with non-negative integers; variables are
``z`` and ``x1`` ... ``x2k``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from contactkit.errors import ContactKitError
from contactkit.ring import Series

__all__ = [
    "ParseError",
    "EvalError",
    "Num",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Pow",
    "Call",
    "parse_expr",
    "to_text",
    "eval_expr",
]

FUNCTIONS = ("exp", "inv")


class ParseError(ContactKitError, ValueError):
    def __init__(self, message, column):
        self.column = column
        super().__init__(f"{message} at column {column}")


class EvalError(ContactKitError, ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if not rest.strip():
                break
            col = pos + len(rest) - len(rest.lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, col = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", col)

    def parse(self):
        node = self.expr()
        kind, value, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", col)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = Mul(node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, col = self.take()
            if kind != "num" or "/" in value:
                raise ParseError("exponent must be a non-negative integer", col)
            node = Pow(node, int(value))
        return node

    def atom(self):
        kind, value, col = self.take()
        if kind == "num":
            return Num(Fraction(value))
        if kind == "name":
            if value in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(value, arg)
            return Var(value)
        if (kind, value) == ("op", "("):
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", col)
        raise ParseError(f"unexpected {value!r}", col)


def parse_expr(text):
    return _Parser(text).parse()


# -- printing -----------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4}


def _prec(node):
    return _PREC.get(type(node), 5)


def to_text(node):
    """Canonical text that parses back to an equal tree."""

    def wrap(sub, need):
        s = to_text(sub)
        return f"({s})" if _prec(sub) < need else s

    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, 3)
    if isinstance(node, Pow):
        return f"{wrap(node.base, 5)}^{node.exponent}"
    if isinstance(node, Mul):
        return f"{wrap(node.left, 2)}*{wrap(node.right, 3)}"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        return wrap(node.left, 1) + op + wrap(node.right, 2)
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ---------------------------------------------------------


def _variable_index(name, k):
    if name == "z":
        return 0
    m = re.fullmatch(r"x([1-9]\d*)", name)
    if m and int(m.group(1)) <= 2 * k:
        return int(m.group(1))
    raise EvalError(f"unknown variable {name!r} for k={k}")


def eval_expr(node, k, precision):
    """Evaluate into a :class:`Series` in ``2k+1`` variables."""
    if isinstance(node, str):
        node = parse_expr(node)

    def ev(n):
        if isinstance(n, Num):
            return Series.const(k, precision, n.value)
        if isinstance(n, Var):
            return Series.var(k, precision, _variable_index(n.name, k))
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, Add):
            return ev(n.left) + ev(n.right)
        if isinstance(n, Sub):
            return ev(n.left) - ev(n.right)
        if isinstance(n, Mul):
            return ev(n.left) * ev(n.right)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        if isinstance(n, Call):
            arg = ev(n.arg)
            if n.func == "exp":
                if arg.eval_origin():
                    raise EvalError(
                        f"exp needs an argument with zero constant term, got {arg.eval_origin()}"
                    )
                return arg.exp()
            if not arg.eval_origin():
                raise EvalError("inv needs an argument with nonzero constant term")
            return arg.inv()
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)
