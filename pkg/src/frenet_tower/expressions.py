"""Profile expression language: parser, printer, and evaluator.

Grammar (operators listed loosest to tightest, ``^`` right-associative):

    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := unary ('^' factor)?
    unary   := '-' unary | primary
    primary := NUMBER | 's' | FUNC '(' expr ')' | '(' expr ')'

with FUNC one of sin, cos, tan, sqrt, exp, log, abs.  The only variable is
the arclength ``s``.  Note that unary minus binds tighter than ``^`` here,
so ``-2^2`` is ``(-2)^2 = 4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ArityError, SyntaxErrorWithColumn, UnknownIdentifierError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sqrt": np.sqrt,
    "exp": np.exp,
    "log": np.log,
    "abs": np.abs,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call]

VAR = Var()


def num(value: float) -> Node:
    """Literal node; negative values become an explicit negation."""
    return Num(float(value)) if value >= 0 else Neg(Num(float(-value)))


# --- lexer -----------------------------------------------------------------

_OPS = set("+-*/^(),")


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER | IDENT | OP | END
    text: str
    column: int  # 1-based


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        col = i + 1
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            while j < n and (source[j].isdigit() or source[j] == "."):
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            if text.count(".") > 1:
                raise SyntaxErrorWithColumn(f"malformed number {text!r}", column=col)
            tokens.append(_Token("NUMBER", text, col))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", source[i:j], col))
            i = j
        elif c in _OPS:
            tokens.append(_Token("OP", c, col))
            i += 1
        else:
            raise SyntaxErrorWithColumn(f"unexpected character {c!r}", column=col)
    tokens.append(_Token("END", "", n + 1))
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept_op(self, *ops: str) -> _Token | None:
        tok = self.peek()
        if tok.kind == "OP" and tok.text in ops:
            return self.next()
        return None

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != op:
            raise SyntaxErrorWithColumn(
                f"expected {op!r}, found {tok.text or 'end of input'!r}", column=tok.column
            )
        return self.next()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise SyntaxErrorWithColumn(f"unexpected {tok.text!r}", column=tok.column)
        return node

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.accept_op("+", "-")) is not None:
            node = BinOp(tok.text, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while (tok := self.accept_op("*", "/")) is not None:
            node = BinOp(tok.text, node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.unary()
        if self.accept_op("^") is not None:
            return BinOp("^", base, self.factor())
        return base

    def unary(self) -> Node:
        if self.accept_op("-") is not None:
            return Neg(self.unary())
        return self.primary()

    def primary(self) -> Node:
        tok = self.next()
        if tok.kind == "NUMBER":
            return Num(float(tok.text))
        if tok.kind == "IDENT":
            if tok.text == "s":
                return VAR
            if tok.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                comma = self.peek()
                if comma.kind == "OP" and comma.text == ",":
                    raise ArityError(
                        f"{tok.text} takes exactly one argument", column=comma.column
                    )
                self.expect_op(")")
                return Call(tok.text, arg)
            raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", column=tok.column)
        if tok.kind == "OP" and tok.text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise SyntaxErrorWithColumn(
            f"expected a value, found {tok.text or 'end of input'!r}", column=tok.column
        )


def parse_expression(source: str) -> Node:
    if not source or not source.strip():
        raise SyntaxErrorWithColumn("empty expression", column=1)
    return _Parser(source).parse()


# --- printer ---------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_POW, _LEVEL_UNARY, _LEVEL_PRIMARY = 1, 2, 3, 4, 5


def _level(node: Node) -> int:
    if isinstance(node, BinOp):
        if node.op in "+-":
            return _LEVEL_ADD
        if node.op in "*/":
            return _LEVEL_MUL
        return _LEVEL_POW
    if isinstance(node, Neg):
        return _LEVEL_UNARY
    return _LEVEL_PRIMARY


def to_source(node: Node, min_level: int = _LEVEL_ADD) -> str:
    text: str
    if isinstance(node, Num):
        text = f"{node.value:.17g}"
    elif isinstance(node, Var):
        text = "s"
    elif isinstance(node, Call):
        text = f"{node.func}({to_source(node.arg)})"
    elif isinstance(node, Neg):
        text = "-" + to_source(node.operand, _LEVEL_UNARY)
    elif node.op in "+-":
        text = to_source(node.left, _LEVEL_ADD) + node.op + to_source(node.right, _LEVEL_MUL)
    elif node.op in "*/":
        text = to_source(node.left, _LEVEL_MUL) + node.op + to_source(node.right, _LEVEL_POW)
    else:  # ^
        text = to_source(node.left, _LEVEL_UNARY) + "^" + to_source(node.right, _LEVEL_POW)
    if _level(node) < min_level:
        return "(" + text + ")"
    return text


# --- evaluator ---------------------------------------------------------------


def evaluate(node: Node, s):
    """Evaluate over a scalar or numpy array ``s``; non-finite results are the
    caller's to detect (see profiles.evaluate_checked)."""
    if isinstance(node, Num):
        return node.value if np.isscalar(s) else np.full(np.shape(s), node.value)
    if isinstance(node, Var):
        return s
    if isinstance(node, Neg):
        return -evaluate(node.operand, s)
    if isinstance(node, Call):
        with np.errstate(all="ignore"):
            return FUNCTIONS[node.func](evaluate(node.arg, s))
    left = evaluate(node.left, s)
    right = evaluate(node.right, s)
    with np.errstate(all="ignore"):
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return np.divide(left, right)
        return np.power(left, right)
