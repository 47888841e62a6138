"""A small expression language for elements of O2.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | NAME '(' expr ',' expr ')' | '(' expr ')'

So ^ binds tighter than unary minus, which binds tighter than *, and
-x^2 means -(x^2).  Names are the constants below; comm(a, b) is
a b a^-1 b^-1 and conj(a, b) is a b a^-1.
"""

import re
from dataclasses import dataclass

from .errors import ExprSyntaxError, UnknownIdentifier
from .order import OrderElement, o_inv
from .stabilizer import named_element

CONSTANTS = {
    "e": "e",
    "w": "omega",
    "pi": "pi",
    "alpha": "alpha",
    "i": "i",
    "j": "j",
    "k": "k",
    "sqrt_m7": "sqrt_m7",
    "alpha_i": "alpha_i",
    "alpha_j": "alpha_j",
    "alpha_k": "alpha_k",
}
FUNCTIONS = ("comm", "conj")

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.)")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^(),":
                raise ExprSyntaxError(f"unexpected character {ch!r}", _byte_offset(text, m.start(3)))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _byte_offset(text, index):
    return len(text[:index].encode())


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.p = 0

    def peek(self):
        return self.toks[self.p]

    def take(self):
        t = self.toks[self.p]
        self.p += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, _byte_offset(self.text, tok[2]))

    def expect(self, ch):
        t = self.take()
        if t[:2] != ("op", ch):
            self.fail(f"expected {ch!r}", t)

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                self.fail("exponent must be an integer literal", t)
            return Pow(base, sign * int(t[1]))
        return base

    def atom(self):
        t = self.take()
        kind, val, off = t
        if kind == "int":
            return Num(int(val))
        if kind == "name":
            if val in FUNCTIONS:
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return Call(val, (a, b))
            if val not in CONSTANTS and val != "S":
                raise UnknownIdentifier(val, _byte_offset(self.text, off))
            return Name(val)
        if (kind, val) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        if kind == "end":
            self.fail("unexpected end of input", t)
        self.fail(f"unexpected {val!r}", t)


def parse_expr(text):
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail(f"unexpected {p.peek()[1]!r}")
    return node


def to_string(node):
    """Fully parenthesised rendering; parse(to_string(x)) == x."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_string(node.arg)})"
    if isinstance(node, BinOp):
        return f"({to_string(node.left)} {node.op} {to_string(node.right)})"
    if isinstance(node, Pow):
        base = to_string(node.base)
        if isinstance(node.base, Pow):
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Call):
        return f"{node.fn}({to_string(node.args[0])}, {to_string(node.args[1])})"
    raise TypeError(node)


def evaluate(node, N):
    """Value of the expression in O2 / S^N (N even)."""
    if isinstance(node, Num):
        return OrderElement(node.value, 0, N)
    if isinstance(node, Name):
        if node.name == "S":
            return OrderElement(0, 1, N)
        return named_element(CONSTANTS[node.name], N)
    if isinstance(node, Neg):
        return -evaluate(node.arg, N)
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, N), evaluate(node.right, N)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Pow):
        return evaluate(node.base, N) ** node.exp
    if isinstance(node, Call):
        a, b = evaluate(node.args[0], N), evaluate(node.args[1], N)
        if node.fn == "comm":
            return a * b * o_inv(a) * o_inv(b)
        return a * b * o_inv(a)
    raise TypeError(node)


def eval_expr(text, N):
    return evaluate(parse_expr(text), N)
