"""Math-expression engine for the functions demo.

Grammar (standard notation, no implicit multiplication):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          right-associative, tighter than unary minus
    atom   := number | 'x' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'

Evaluation follows IEEE double semantics; domain violations produce
non-finite values instead of errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadRangeError, LexError, ParseError, UnknownFunctionError

__all__ = [
    "Token",
    "Number",
    "Variable",
    "Constant",
    "Unary",
    "Binary",
    "Call",
    "Expr",
    "FUNCTIONS",
    "tokenize",
    "parse",
    "parse_expression",
    "unparse",
    "evaluate",
    "sample_curve",
]


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op | lparen | rparen | comma
    lexeme: str
    pos: int


_OPS = set("+-*/^")
_DIGITS = set("0123456789")


def tokenize(text: str) -> list[Token]:
    """Longest-match lexing; whitespace skipped; LexError on illegal chars."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _DIGITS:
            j = i
            while j < n and text[j] in _DIGITS:
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j] in _DIGITS:
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k] in _DIGITS:
                    j = k
                    while j < n and text[j] in _DIGITS:
                        j += 1
            tokens.append(Token("number", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], i))
            i = j
            continue
        if c in _OPS:
            tokens.append(Token("op", c, i))
        elif c == "(":
            tokens.append(Token("lparen", c, i))
        elif c == ")":
            tokens.append(Token("rparen", c, i))
        elif c == ",":
            tokens.append(Token("comma", c, i))
        else:
            raise LexError(i, f"illegal character {c!r}")
        i += 1
    return tokens


# --- AST ----------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Constant:
    name: str  # pi | e


@dataclass(frozen=True)
class Unary:
    op: str  # only '-'
    child: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


Expr = Number | Variable | Constant | Unary | Binary | Call


def _ln(x: float) -> float:
    if math.isnan(x):
        return math.nan
    if x > 0:
        return math.log(x)
    return -math.inf if x == 0 else math.nan


def _log10(x: float) -> float:
    if math.isnan(x):
        return math.nan
    if x > 0:
        return math.log10(x)
    return -math.inf if x == 0 else math.nan


def _sqrt(x: float) -> float:
    return math.sqrt(x) if x >= 0 else math.nan


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": _exp,
    "ln": _ln,
    "log10": _log10,
    "sqrt": _sqrt,
    "abs": abs,
}

_CONSTANTS = {"pi": math.pi, "e": math.e}


class _Parser:
    def __init__(self, tokens: list[Token], length: int):
        self.tokens = tokens
        self.i = 0
        self.length = length  # end-of-input error position

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.length, "unexpected end of input")
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.length, f"expected {what}")
        if tok.kind != kind:
            raise ParseError(tok.pos, f"expected {what}")
        return self.take()

    def expr(self) -> Expr:
        node = self.term()
        while (tok := self.peek()) and tok.kind == "op" and tok.lexeme in "+-":
            self.take()
            node = Binary(tok.lexeme, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while (tok := self.peek()) and tok.kind == "op" and tok.lexeme in "*/":
            self.take()
            node = Binary(tok.lexeme, node, self.unary())
        return node

    def unary(self) -> Expr:
        tok = self.peek()
        if tok and tok.kind == "op" and tok.lexeme == "-":
            self.take()
            return Unary("-", self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        tok = self.peek()
        if tok and tok.kind == "op" and tok.lexeme == "^":
            self.take()
            node = Binary("^", node, self.unary())
        return node

    def atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "number":
            return Number(float(tok.lexeme))
        if tok.kind == "ident":
            if tok.lexeme == "x":
                return Variable()
            if tok.lexeme in _CONSTANTS:
                return Constant(tok.lexeme)
            if tok.lexeme not in FUNCTIONS:
                raise UnknownFunctionError(tok.lexeme, tok.pos)
            self.expect("lparen", "'(' after function name")
            arg = self.expr()
            self.expect("rparen", "')'")
            return Call(tok.lexeme, (arg,))
        if tok.kind == "lparen":
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        raise ParseError(tok.pos, f"unexpected {tok.lexeme!r}")


def parse(tokens: list[Token], length: int | None = None) -> Expr:
    """Parse a token list into an AST; every token must be consumed."""
    if length is None:
        length = tokens[-1].pos + len(tokens[-1].lexeme) if tokens else 0
    p = _Parser(tokens, length)
    node = p.expr()
    trailing = p.peek()
    if trailing is not None:
        raise ParseError(trailing.pos, f"unexpected {trailing.lexeme!r}")
    return node


def parse_expression(text: str) -> Expr:
    return parse(tokenize(text), len(text))


def unparse(ast: Expr) -> str:
    """Render an AST back to text; reparsing yields an identical tree."""
    s, _ = _unparse(ast)
    return s


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _unparse(ast: Expr) -> tuple[str, int]:
    if isinstance(ast, Number):
        v = ast.value
        text = repr(int(v)) if v == int(v) and abs(v) < 1e15 else repr(v)
        return text, 9
    if isinstance(ast, Variable):
        return "x", 9
    if isinstance(ast, Constant):
        return ast.name, 9
    if isinstance(ast, Call):
        return f"{ast.name}({unparse(ast.args[0])})", 9
    if isinstance(ast, Unary):
        inner, prec = _unparse(ast.child)
        # '^' binds tighter than unary minus, so -(a^b) survives unwrapped
        if prec < _PREC["neg"] and prec != _PREC["^"]:
            inner = f"({inner})"
        return f"-{inner}", _PREC["neg"]
    if isinstance(ast, Binary):
        lt, lp = _unparse(ast.left)
        rt, rp = _unparse(ast.right)
        my = _PREC[ast.op]
        if ast.op == "^":
            # right-assoc; left operand must be an atom to reparse the same
            if lp <= _PREC["^"]:
                lt = f"({lt})"
            if rp < _PREC["neg"]:
                rt = f"({rt})"
        else:
            if lp < my:
                lt = f"({lt})"
            # left-assoc: parenthesize right child at equal precedence
            if rp <= my:
                rt = f"({rt})"
        return f"{lt}{ast.op}{rt}", my
    raise TypeError(f"not an expression node: {ast!r}")


# --- evaluation ---------------------------------------------------------


def _div(a: float, b: float) -> float:
    if b == 0:
        if math.isnan(a) or a == 0:
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)
    return a / b


def _pow(a: float, b: float) -> float:
    try:
        return a**b
    except ZeroDivisionError:  # 0 ** negative
        return math.inf
    except ValueError:  # negative base, fractional exponent
        return math.nan
    except OverflowError:
        if a < 0 and float(b).is_integer() and int(b) % 2:
            return -math.inf
        return math.inf


def evaluate(ast: Expr, x: float) -> float:
    """Evaluate at `x`; total over the reals via non-finite results."""
    if isinstance(ast, Number):
        return ast.value
    if isinstance(ast, Variable):
        return float(x)
    if isinstance(ast, Constant):
        return _CONSTANTS[ast.name]
    if isinstance(ast, Unary):
        return -evaluate(ast.child, x)
    if isinstance(ast, Binary):
        a = evaluate(ast.left, x)
        b = evaluate(ast.right, x)
        if ast.op == "+":
            return a + b
        if ast.op == "-":
            return a - b
        if ast.op == "*":
            return a * b
        if ast.op == "/":
            return _div(a, b)
        return _pow(a, b)
    if isinstance(ast, Call):
        return FUNCTIONS[ast.name](evaluate(ast.args[0], x))
    raise TypeError(f"not an expression node: {ast!r}")


def sample_curve(
    ast: Expr, x_min: float, x_max: float, n: int
) -> tuple[list[tuple[float, float]], list[bool]]:
    """Evaluate at n uniform steps; the mask flags finite y values."""
    if not (math.isfinite(x_min) and math.isfinite(x_max) and x_min < x_max):
        raise BadRangeError(f"bad x range [{x_min}, {x_max}]")
    if n < 2:
        raise BadRangeError("need at least 2 samples")
    span = x_max - x_min
    points = []
    finite = []
    for i in range(n):
        xi = x_min + i * span / (n - 1)
        yi = evaluate(ast, xi)
        points.append((xi, yi))
        finite.append(math.isfinite(yi))
    return points, finite
