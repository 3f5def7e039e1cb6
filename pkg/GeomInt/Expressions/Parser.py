#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Scalar expressions of the configuration variables: parsing, printing,
evaluation and exact first derivatives.

Grammar (binding power in brackets, ^ is right associative):

    expr   := expr [10] ('+' | '-') expr
            | expr [20] ('*' | '/') expr
            | '-' expr [25]
            | expr [30] '^' integer
            | number | identifier | '(' expr ')'

Exponents must fold to non-negative integer constants. There are no
functions; everything the mechanics needs is rational in q.
"""

import re
from dataclasses import dataclass

from GeomInt.Tools.Dual import Dual, derivative, new_tag, value


class ExpressionError(ValueError):
    pass


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__("syntax error at offset {}: {}".format(offset, message))


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name, offset):
        self.name = name
        self.offset = offset
        super().__init__("unknown identifier '{}' at offset {}".format(name, offset))


class EvaluationError(ArithmeticError):
    pass


###

class Expr(object):
    """Base of the expression tree. Nodes are immutable."""

    precedence = 5

    def evaluate(self, q):
        raise NotImplementedError()

    def variables(self):
        """Set of configuration indices the expression depends on"""
        return set().union(*[c.variables() for c in self.children()])

    def children(self):
        return ()


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, q):
        return self.value


@dataclass(frozen=True)
class Var(Expr):
    index: int

    def evaluate(self, q):
        return q[self.index]

    def variables(self):
        return {self.index}


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr
    precedence = 3

    def evaluate(self, q):
        return -self.arg.evaluate(q)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    def children(self):
        return self.left, self.right


class Add(_Binary):
    precedence = 1
    symbol = "+"

    def evaluate(self, q):
        return self.left.evaluate(q) + self.right.evaluate(q)


class Sub(_Binary):
    precedence = 1
    symbol = "-"

    def evaluate(self, q):
        return self.left.evaluate(q) - self.right.evaluate(q)


class Mul(_Binary):
    precedence = 2
    symbol = "*"

    def evaluate(self, q):
        return self.left.evaluate(q) * self.right.evaluate(q)


class Div(_Binary):
    precedence = 2
    symbol = "/"

    def evaluate(self, q):
        denominator = self.right.evaluate(q)
        if value(denominator) == 0:
            raise EvaluationError("division by zero")
        return self.left.evaluate(q) / denominator


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    precedence = 4

    def evaluate(self, q):
        if self.exponent == 0:
            return 1.
        return self.base.evaluate(q) ** self.exponent

    def children(self):
        return (self.base,)


###

_token_pat = re.compile(r"\s*(?:"
                        r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
                        r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                        r"|(?P<op>[-+*/^()]))")

_infix = {"+": (10, Add), "-": (10, Sub), "*": (20, Mul), "/": (20, Div), "^": (30, Pow)}
_unary_minus_bp = 25


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _token_pat.match(text, pos)
        if m is None:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError("unexpected character {!r}".format(text[offset]),
                                        _byte_offset(text, offset))
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()
    tokens.append(_Token("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


class _Parser(object):
    def __init__(self, text, names):
        self.tokens = _tokenize(text)
        self.names = names
        self.pos = 0

    @property
    def token(self):
        return self.tokens[self.pos]

    def advance(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def parse(self):
        e = self.expression(0)
        if self.token.kind != "end":
            raise ExpressionSyntaxError("unexpected {!r}".format(self.token.text), self.token.offset)
        return e

    def expression(self, rbp):
        left = self.nud(self.advance())
        while rbp < self.lbp(self.token):
            left = self.led(self.advance(), left)
        return left

    @staticmethod
    def lbp(token):
        if token.kind == "op" and token.text in _infix:
            return _infix[token.text][0]
        return 0

    def nud(self, t):
        if t.kind == "number":
            return Num(float(t.text))
        if t.kind == "name":
            if t.text not in self.names:
                raise UnknownIdentifierError(t.text, t.offset)
            return Var(self.names[t.text])
        if t.kind == "op" and t.text == "-":
            return Neg(self.expression(_unary_minus_bp))
        if t.kind == "op" and t.text == "(":
            e = self.expression(0)
            if self.token.kind != "op" or self.token.text != ")":
                raise ExpressionSyntaxError("expected ')'", self.token.offset)
            self.advance()
            return e
        if t.kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", t.offset)
        raise ExpressionSyntaxError("unexpected {!r}".format(t.text), t.offset)

    def led(self, t, left):
        bp, node = _infix[t.text]
        if node is Pow:
            start = self.token.offset
            # right associative
            exponent = self.expression(bp - 1)
            return Pow(left, _integer_exponent(exponent, start))
        return node(left, self.expression(bp))


def _integer_exponent(e, offset):
    if e.variables():
        raise ExpressionSyntaxError("exponent must be a constant", offset)
    try:
        n = e.evaluate(())
    except EvaluationError:
        raise ExpressionSyntaxError("exponent is undefined", offset)
    if n < 0 or not float(n).is_integer():
        raise ExpressionSyntaxError("exponent must be a non-negative integer", offset)
    return int(n)


def default_varnames(n):
    """q1 ... qn, plus the aliases x, y, z for n <= 3"""
    names = {"q{}".format(i + 1): i for i in range(n)}
    if n <= 3:
        names.update({a: i for i, a in enumerate("xyz"[:n])})
    return names


def parse_expr(text, varnames):
    """
    Parse `text` into an expression tree.

    Parameters:
    -----------
    text: str
        expression source
    varnames: list of str or dict
        names of the configuration variables in index order, or a mapping
        name -> index when several names refer to the same variable
    """
    if isinstance(varnames, dict):
        names = dict(varnames)
    else:
        names = {name: i for i, name in enumerate(varnames)}
        if len(names) != len(varnames):
            raise ValueError("variable names must be distinct")
    if not names:
        raise ValueError("at least one variable name is required")
    return _Parser(text, names).parse()


def format_expr(e, varnames):
    """Canonical text of `e` with the minimal set of parentheses"""
    if isinstance(varnames, dict):
        inverse = {}
        for name, i in varnames.items():
            inverse.setdefault(i, name)
        varnames = [inverse[i] for i in sorted(inverse)]

    def fmt(node, min_precedence):
        text = _format(node)
        if node.precedence < min_precedence:
            return "(" + text + ")"
        return text

    def _format(node):
        if isinstance(node, Num):
            v = node.value
            return str(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)
        if isinstance(node, Var):
            return varnames[node.index]
        if isinstance(node, Neg):
            return "-" + fmt(node.arg, Neg.precedence)
        if isinstance(node, Pow):
            return fmt(node.base, Pow.precedence + 1) + "^" + str(node.exponent)
        return "{} {} {}".format(fmt(node.left, node.precedence), node.symbol,
                                 fmt(node.right, node.precedence + 1))

    return _format(e)


def eval_expr(e, q):
    """Value of `e` at q; q may carry dual numbers."""
    return e.evaluate(q)


def diff_expr(e, q, i):
    """
    Exact partial derivative ∂e/∂q^i at q by forward-mode propagation.
    Nested calls (q already holding duals) give higher derivatives.
    """
    if i not in e.variables():
        return 0.
    tag = new_tag()
    qd = list(q)
    qd[i] = Dual(qd[i], 1., tag)
    return derivative(e.evaluate(qd), tag)
