"""Closed grammar for exponent expressions.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' factor)?
    unary  := '-'? atom
    atom   := number | 'abs(z)' | 're(z)' | 'im(z)'
            | func '(' expr (',' expr)? ')' | '(' expr ')'
    func   := log | exp | sin | min | max

The variable ``z`` only appears wrapped in ``abs``, ``re`` or ``im``.
Trees are tuples so they hash and compare structurally.
"""

import re

import numpy as np

__all__ = ["ExpressionError", "parse", "evaluate", "to_text"]

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+(?:[eE][-+]?\d+)?)|([A-Za-z_]+)|(.))")

_UNARY_FUNCS = {"log": np.log, "exp": np.exp, "sin": np.sin}
_BINARY_FUNCS = {"min": np.minimum, "max": np.maximum}
_VARIABLES = {"abs": np.abs, "re": np.real, "im": np.imag}


class ExpressionError(ValueError):
    """Malformed expression, or an evaluation that leaves the real domain."""


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        number, name, sym = m.groups()
        if number is not None:
            tokens.append(("num", float(number)))
        elif name is not None:
            tokens.append(("name", name))
        elif sym.strip():
            tokens.append(("sym", sym))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind is not None and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ExpressionError(f"expected {want!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise ExpressionError(f"trailing input at {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            node = (op, node, self.factor())
        return node

    def factor(self):
        base = self.unary()
        if self.peek() == ("sym", "^"):
            self.take()
            return ("^", base, self.factor())
        return base

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return ("neg", self.atom())
        return self.atom()

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return ("num", value)
        if kind == "sym" and value == "(":
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        if kind == "name":
            self.take()
            if value == "z":
                raise ExpressionError("bare z is not allowed; use abs(z), re(z) or im(z)")
            if value in _VARIABLES:
                self.take("sym", "(")
                self.take("name", "z")
                self.take("sym", ")")
                return ("var", value)
            if value in _UNARY_FUNCS or value in _BINARY_FUNCS:
                self.take("sym", "(")
                args = [self.expr()]
                if self.peek() == ("sym", ","):
                    self.take()
                    args.append(self.expr())
                self.take("sym", ")")
                want = 2 if value in _BINARY_FUNCS else 1
                if len(args) != want:
                    raise ExpressionError(f"{value} takes {want} argument(s)")
                return ("call", value, *args)
            raise ExpressionError(f"unknown name {value!r}")
        raise ExpressionError(f"unexpected token {value!r}")


def _is_constant(node):
    if node[0] == "num":
        return True
    if node[0] == "var":
        return False
    children = node[2:] if node[0] == "call" else node[1:]
    return all(_is_constant(c) for c in children)


def _check_static(node):
    """Reject divisions by a constant zero subexpression."""
    if node[0] in ("num", "var"):
        return
    children = node[2:] if node[0] == "call" else node[1:]
    for c in children:
        _check_static(c)
    if node[0] == "/" and _is_constant(node[2]):
        if evaluate(node[2], np.zeros(1, dtype=complex))[0] == 0.0:
            raise ExpressionError("division by zero")


def parse(text):
    """Parse ``text`` into an expression tree."""
    if not isinstance(text, str) or not text.strip():
        raise ExpressionError("empty expression")
    tree = _Parser(text).parse()
    _check_static(tree)
    return tree


def evaluate(node, z):
    """Evaluate a tree on an array of complex points."""
    z = np.asarray(z, dtype=complex)
    op = node[0]
    if op == "num":
        return np.full(z.shape, node[1])
    if op == "var":
        return _VARIABLES[node[1]](z).astype(float)
    if op == "neg":
        return -evaluate(node[1], z)
    if op == "call":
        args = [evaluate(a, z) for a in node[2:]]
        name = node[1]
        if name == "log" and np.any(args[0] <= 0):
            raise ExpressionError("log of a non-positive value")
        fn = _UNARY_FUNCS.get(name) or _BINARY_FUNCS[name]
        return fn(*args)
    a, b = evaluate(node[1], z), evaluate(node[2], z)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if np.any(b == 0):
            raise ExpressionError("division by zero")
        return a / b
    with np.errstate(invalid="ignore", over="ignore"):
        out = np.power(a, b)
    if not np.all(np.isfinite(out)):
        raise ExpressionError("power left the real domain")
    return out


def to_text(node):
    op = node[0]
    if op == "num":
        return repr(node[1])
    if op == "var":
        return f"{node[1]}(z)"
    if op == "neg":
        return f"-({to_text(node[1])})"
    if op == "call":
        return f"{node[1]}({', '.join(to_text(a) for a in node[2:])})"
    return f"({to_text(node[1])} {op} {to_text(node[2])})"
