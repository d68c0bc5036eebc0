"""Analytic-function expression language: parse, evaluate, differentiate.

Grammar (whitespace-insensitive)::

    expr    := term (("+"|"-") term)*
    term    := factor (("*"|"/") factor)*
    factor  := atom ("^" integer)?
    atom    := number | complex | "z" | call | "(" expr ")" | "-" atom
    call    := "pow" "(" expr "," complexnum ")"
             | ("exp"|"sin"|"cos") "(" expr ")"
    complex := number "i"? | "(" number ("+"|"-") number "i" ")"

``pow(z - c, alpha)`` makes the basepoint of the branch cut syntactically
visible; every non-integer power is evaluated on the principal branch
(arg in (-pi, pi]).  Evaluation is vectorized over numpy arrays; symbolic
derivatives stay inside the grammar.
"""

import re
from dataclasses import dataclass

import numpy as np

from .errors import ABCalcError, EvalDomainError


class ParseError(ABCalcError):
    """Syntax error with the first offending character offset."""

    def __init__(self, position, message):
        super().__init__(f"parse error at offset {position}: {message}")
        self.position = position
        self.message = message


def _fmt_float(x):
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _fmt_complex(v):
    re_, im_ = v.real, v.imag
    if im_ == 0:
        return _fmt_float(re_)
    if re_ == 0:
        return _fmt_float(im_) + "i"
    sign = "+" if im_ > 0 else "-"
    return f"({_fmt_float(re_)}{sign}{_fmt_float(abs(im_))}i)"


class Node:
    prec = 4

    def _wrap(self, child, tight=False):
        p = child.prec
        if p < self.prec or (tight and p == self.prec):
            return f"({child.fmt()})"
        return child.fmt()


@dataclass(frozen=True)
class Const(Node):
    value: complex

    def ev(self, z):
        return self.value

    def diff(self):
        return Const(0j)

    def fmt(self):
        return _fmt_complex(complex(self.value))


@dataclass(frozen=True)
class Var(Node):
    def ev(self, z):
        return z

    def diff(self):
        return Const(1 + 0j)

    def fmt(self):
        return "z"


@dataclass(frozen=True)
class Add(Node):
    prec = 1
    a: Node
    b: Node

    def ev(self, z):
        return self.a.ev(z) + self.b.ev(z)

    def diff(self):
        return _add(self.a.diff(), self.b.diff())

    def fmt(self):
        return f"{self._wrap(self.a)} + {self._wrap(self.b)}"


@dataclass(frozen=True)
class Sub(Node):
    prec = 1
    a: Node
    b: Node

    def ev(self, z):
        return self.a.ev(z) - self.b.ev(z)

    def diff(self):
        return _sub(self.a.diff(), self.b.diff())

    def fmt(self):
        return f"{self._wrap(self.a)} - {self._wrap(self.b, tight=True)}"


@dataclass(frozen=True)
class Mul(Node):
    prec = 2
    a: Node
    b: Node

    def ev(self, z):
        return self.a.ev(z) * self.b.ev(z)

    def diff(self):
        return _add(_mul(self.a.diff(), self.b), _mul(self.a, self.b.diff()))

    def fmt(self):
        return f"{self._wrap(self.a)}*{self._wrap(self.b)}"


@dataclass(frozen=True)
class Div(Node):
    prec = 2
    a: Node
    b: Node

    def ev(self, z):
        den = self.b.ev(z)
        if np.any(den == 0):
            raise EvalDomainError("division by zero in expression")
        return self.a.ev(z) / den

    def diff(self):
        num = _sub(_mul(self.a.diff(), self.b), _mul(self.a, self.b.diff()))
        return Div(num, Pow(self.b, 2 + 0j))

    def fmt(self):
        return f"{self._wrap(self.a)}/{self._wrap(self.b, tight=True)}"


def _principal_pow(base, expo):
    """base**expo on the principal branch, exact for integer exponents."""
    e = complex(expo)
    if e.imag == 0 and e.real == round(e.real) and abs(e.real) < 2**31:
        n = int(e.real)
        if n <= 0 and np.any(np.asarray(base) == 0):
            raise EvalDomainError("0 raised to power with Re <= 0")
        return base ** n
    scalar = np.isscalar(base) or np.ndim(base) == 0
    arr = np.asarray(base, dtype=complex)
    zero = arr == 0
    if np.any(zero):
        if e.real <= 0:
            raise EvalDomainError("0 raised to power with Re <= 0")
        out = np.zeros_like(arr)
        nz = ~zero
        out[nz] = np.exp(e * np.log(arr[nz]))
    else:
        out = np.exp(e * np.log(arr))
    return complex(out) if scalar else out


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    expo: complex

    def ev(self, z):
        return _principal_pow(self.base.ev(z), self.expo)

    def diff(self):
        e = complex(self.expo)
        if e == 0:
            return Const(0j)
        outer = _mul(Const(e), Pow(self.base, e - 1))
        return _mul(outer, self.base.diff())

    def fmt(self):
        return f"pow({self.base.fmt()}, {_fmt_complex(complex(self.expo))})"


@dataclass(frozen=True)
class Exp(Node):
    arg: Node

    def ev(self, z):
        return np.exp(self.arg.ev(z))

    def diff(self):
        return _mul(self.arg.diff(), self)

    def fmt(self):
        return f"exp({self.arg.fmt()})"


@dataclass(frozen=True)
class Sin(Node):
    arg: Node

    def ev(self, z):
        return np.sin(self.arg.ev(z))

    def diff(self):
        return _mul(self.arg.diff(), Cos(self.arg))

    def fmt(self):
        return f"sin({self.arg.fmt()})"


@dataclass(frozen=True)
class Cos(Node):
    arg: Node

    def ev(self, z):
        return np.cos(self.arg.ev(z))

    def diff(self):
        return _mul(self.arg.diff(), _mul(Const(-1 + 0j), Sin(self.arg)))

    def fmt(self):
        return f"cos({self.arg.fmt()})"


def _is_const(n, v=None):
    return isinstance(n, Const) and (v is None or n.value == v)


def _add(a, b):
    if _is_const(a, 0j):
        return b
    if _is_const(b, 0j):
        return a
    return Add(a, b)


def _sub(a, b):
    if _is_const(b, 0j):
        return a
    return Sub(a, b)


def _mul(a, b):
    if _is_const(a, 0j) or _is_const(b, 0j):
        return Const(0j)
    if _is_const(a, 1 + 0j):
        return b
    if _is_const(b, 1 + 0j):
        return a
    return Mul(a, b)


class FunctionExpr:
    """Immutable parsed expression; callable and symbolically differentiable."""

    def __init__(self, root):
        self.root = root

    def __call__(self, z):
        if np.isscalar(z) or np.ndim(z) == 0:
            return complex(self.root.ev(complex(z)))
        return self.root.ev(np.asarray(z, dtype=complex))

    def derivative(self):
        return FunctionExpr(self.root.diff())

    def pretty(self):
        return self.root.fmt()

    def __eq__(self, other):
        return isinstance(other, FunctionExpr) and self.root == other.root

    def __hash__(self):
        return hash(self.root)

    def __repr__(self):
        return f"FunctionExpr({self.pretty()!r})"


_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_COMPLEX_PAREN = re.compile(
    r"\(\s*(?P<rsign>[+-]?)(?P<re>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\s*"
    r"(?P<sign>[+-])\s*(?P<im>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)i\s*\)")


class _Parser:
    def __init__(self, src):
        self.src = src
        self.pos = 0

    def error(self, message, pos=None):
        raise ParseError(self.pos if pos is None else pos, message)

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.src):
            self.error("unexpected trailing input")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.src[self.pos]
            self.pos += 1
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.src[self.pos]
            self.pos += 1
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        node = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            m = re.compile(r"[+-]?\d+").match(self.src, self.pos)
            if not m:
                self.error("expected integer exponent after '^'")
            self.pos = m.end()
            node = Pow(node, complex(int(m.group())))
        return node

    def atom(self):
        ch = self.peek()
        if ch == "":
            self.error("unexpected end of input")
        if ch == "-":
            self.pos += 1
            inner = self.atom()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Sub(Const(0j), inner)
        if ch == "(":
            m = _COMPLEX_PAREN.match(self.src, self.pos)
            if m:
                self.pos = m.end()
                re_ = float(m.group("re"))
                if m.group("rsign") == "-":
                    re_ = -re_
                im_ = float(m.group("im"))
                if m.group("sign") == "-":
                    im_ = -im_
                return Const(complex(re_, im_))
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isdigit() or ch == ".":
            return self.number()
        if ch.isalpha():
            return self.ident()
        self.error(f"unexpected character {ch!r}")

    def number(self):
        self.skip_ws()
        m = _NUMBER.match(self.src, self.pos)
        if not m:
            self.error("expected number")
        self.pos = m.end()
        value = float(m.group())
        if self.pos < len(self.src) and self.src[self.pos] == "i":
            nxt = self.src[self.pos + 1: self.pos + 2]
            if not (nxt.isalnum() or nxt == "_"):
                self.pos += 1
                return Const(complex(0.0, value))
        return Const(complex(value))

    def ident(self):
        self.skip_ws()
        start = self.pos
        m = re.compile(r"[A-Za-z_]\w*").match(self.src, self.pos)
        name = m.group()
        self.pos = m.end()
        if name == "z":
            return Var()
        if name == "pow":
            self.expect("(")
            base = self.expr()
            self.expect(",")
            expo = self.complexnum()
            self.expect(")")
            return Pow(base, expo)
        if name in ("exp", "sin", "cos"):
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return {"exp": Exp, "sin": Sin, "cos": Cos}[name](arg)
        self.error(f"unknown identifier {name!r}", pos=start)

    def complexnum(self):
        self.skip_ws()
        start = self.pos
        node = self.atom()
        if not isinstance(node, Const):
            self.error("expected a complex constant", pos=start)
        return node.value


def parse(src):
    """Parse source text into a FunctionExpr; raises ParseError."""
    return FunctionExpr(_Parser(src).parse())


def pretty_print(f):
    return f.pretty()


def derivative(f):
    """Exact symbolic derivative, closed within the grammar."""
    return f.derivative()


def evaluate(f, z):
    """Evaluate f at z (scalar or numpy array of complex)."""
    return f(z)


def power_function(c, alpha):
    """(z - c)^alpha as a FunctionExpr."""
    base = Var() if c == 0 else Sub(Var(), Const(complex(c)))
    return FunctionExpr(Pow(base, complex(alpha)))


def exponential(a):
    """exp(a*z) as a FunctionExpr."""
    arg = Var() if a == 1 else Mul(Const(complex(a)), Var())
    return FunctionExpr(Exp(arg))


def constant(v):
    return FunctionExpr(Const(complex(v)))
