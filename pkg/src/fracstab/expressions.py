"""Recursive-descent parser and evaluator for right-hand-side expressions.

Grammar (whitespace insignificant, `#`-free single expressions):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'

`^` is right-associative and binds tighter than unary minus applied to its
base, so `-x1^2` is -(x1^2) while `(-x1)^2` squares.  Known identifiers are
the time variable `t`, state variables `x1`, `x2`, ..., the radius variable
`r` (for class-K bounds), and the calls sin, cos, exp, sqrt, abs and the
two-argument pow.  Faults (division by zero, domain errors, non-finite
results) raise EvalError naming the offending subexpression.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BindError, EvalError, ParseError

__all__ = ["Expr", "Num", "Var", "Neg", "BinOp", "Call", "parse", "evaluate", "variables", "to_text"]

_FUNCTIONS = {"sin": 1, "cos": 1, "exp": 1, "sqrt": 1, "abs": 1, "pow": 2}
_MAX_DEPTH = 256


class Expr:
    """Base class for AST nodes; instances are immutable and shareable."""

    __slots__ = ()


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str  # "t", "r", or "x<i>"
    index: int = 0  # 1-based state index for x-variables, else 0


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple[Expr, ...]


# --- lexer -----------------------------------------------------------------

_TOK_OPS = set("+-*/^(),")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _TOK_OPS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lit = text[i:j]
            try:
                value = float(lit)
            except ValueError:
                raise ParseError(f"bad number literal '{lit}'", i) from None
            tokens.append(("num", value, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("eof", None, n))
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Expr:
        e = self.expr(0)
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"trailing input starting at {tok[1]!r}", tok[2])
        return e

    def expr(self, depth: int) -> Expr:
        if depth > _MAX_DEPTH:
            raise ParseError("expression too deeply nested", self.peek()[2])
        e = self.term(depth + 1)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            e = BinOp(op, e, self.term(depth + 1))
        return e

    def term(self, depth: int) -> Expr:
        e = self.factor(depth + 1)
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            e = BinOp(op, e, self.factor(depth + 1))
        return e

    def factor(self, depth: int) -> Expr:
        if depth > _MAX_DEPTH:
            raise ParseError("expression too deeply nested", self.peek()[2])
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor(depth + 1))
        return self.power(depth + 1)

    def power(self, depth: int) -> Expr:
        base = self.atom(depth + 1)
        if self.peek()[0] == "^":
            self.take()
            return BinOp("^", base, self.factor(depth + 1))
        return base

    def atom(self, depth: int) -> Expr:
        kind, value, offset = self.take()
        if kind == "num":
            return Num(value)
        if kind == "(":
            e = self.expr(depth + 1)
            self.expect(")")
            return e
        if kind == "ident":
            if self.peek()[0] == "(":
                return self.call(value, offset, depth + 1)
            return self.variable(value, offset)
        raise ParseError(f"expected a value, found {value!r}", offset)

    def call(self, name: str, offset: int, depth: int) -> Expr:
        if name not in _FUNCTIONS:
            raise ParseError(f"unknown function '{name}'", offset)
        self.expect("(")
        args = [self.expr(depth + 1)]
        while self.peek()[0] == ",":
            self.take()
            args.append(self.expr(depth + 1))
        self.expect(")")
        if len(args) != _FUNCTIONS[name]:
            raise ParseError(
                f"'{name}' takes {_FUNCTIONS[name]} argument(s), got {len(args)}", offset
            )
        return Call(name, tuple(args))

    def variable(self, name: str, offset: int) -> Expr:
        if name == "t" or name == "r":
            return Var(name)
        if name.startswith("x") and name[1:].isdigit():
            index = int(name[1:])
            if index < 1:
                raise ParseError(f"state variables start at x1, got '{name}'", offset)
            return Var(name, index)
        raise ParseError(f"unknown identifier '{name}'", offset)


def parse(text: str) -> Expr:
    """Parse expression text into an AST; ParseError carries the byte offset."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


# --- evaluation ------------------------------------------------------------


def _check_finite(value, node: Expr):
    if not np.all(np.isfinite(value)):
        raise EvalError("non-finite result", to_text(node))
    return value


def _eval(node: Expr, t, x, r):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        if node.name == "t":
            return t
        if node.name == "r":
            if r is None:
                raise BindError("variable 'r' is not bound in this context")
            return r
        if node.index > len(x):
            raise BindError(
                f"variable x{node.index} exceeds the bound dimension {len(x)}"
            )
        return x[node.index - 1]
    if isinstance(node, Neg):
        return -_eval(node.operand, t, x, r)
    if isinstance(node, BinOp):
        a = _eval(node.left, t, x, r)
        b = _eval(node.right, t, x, r)
        if node.op in "+-*/":
            if node.op == "/" and np.any(b == 0):
                raise EvalError("division by zero", to_text(node))
            with np.errstate(over="ignore", invalid="ignore"):
                if node.op == "+":
                    out = a + b
                elif node.op == "-":
                    out = a - b
                elif node.op == "*":
                    out = a * b
                else:
                    out = a / b
            return _check_finite(out, node)
        # power: negative base requires an integer exponent
        if np.any(np.asarray(a) < 0):
            bb = np.asarray(b)
            if not np.all(bb == np.floor(bb)):
                raise EvalError("negative base with non-integer exponent", to_text(node))
        try:
            with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
                out = (
                    np.asarray(a, dtype=float) ** b
                    if np.ndim(a) or np.ndim(b)
                    else float(a) ** float(b)
                )
        except (OverflowError, ZeroDivisionError) as exc:
            raise EvalError(str(exc), to_text(node)) from None
        return _check_finite(out, node)
    if isinstance(node, Call):
        args = [_eval(arg, t, x, r) for arg in node.args]
        if node.name == "sqrt":
            if np.any(np.asarray(args[0]) < 0):
                raise EvalError("sqrt of negative value", to_text(node))
            return np.sqrt(args[0])
        if node.name == "abs":
            return np.abs(args[0])
        if node.name == "pow":
            return _eval(BinOp("^", node.args[0], node.args[1]), t, x, r)
        with np.errstate(over="ignore"):
            out = getattr(np, node.name)(args[0])
        return _check_finite(out, node)
    raise TypeError(f"not an Expr node: {node!r}")


def evaluate(node: Expr, t=0.0, x=(), r=None) -> float:
    """Evaluate at scalar or numpy-array arguments.

    Scalar inputs return float; array inputs return an ndarray over the
    broadcast shape.  Faults raise EvalError/BindError, never silent NaN.
    """
    out = _eval(node, t, x, r)
    if np.ndim(out) == 0 and not isinstance(out, float):
        return float(out)
    return out


def sample_on(node: Expr, ts: np.ndarray, x=(), r=None) -> np.ndarray:
    """Evaluate over an array of times, broadcasting constants to ts.shape."""
    out = np.asarray(_eval(node, ts, x, r), dtype=float)
    return np.broadcast_to(out, np.shape(ts)).copy()


def variables(node: Expr) -> set[str]:
    """Names of all variables referenced by the expression."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return variables(node.operand)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Call):
        out: set[str] = set()
        for arg in node.args:
            out |= variables(arg)
        return out
    return set()


def max_state_index(node: Expr) -> int:
    """Largest x-variable index used (0 when none)."""
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Neg):
        return max_state_index(node.operand)
    if isinstance(node, BinOp):
        return max(max_state_index(node.left), max_state_index(node.right))
    if isinstance(node, Call):
        return max((max_state_index(a) for a in node.args), default=0)
    return 0


# --- printing --------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_UNARY, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _level(node: Expr) -> int:
    if isinstance(node, BinOp):
        if node.op in "+-":
            return _LEVEL_ADD
        if node.op in "*/":
            return _LEVEL_MUL
        return _LEVEL_POW
    if isinstance(node, Neg):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def _wrap(node: Expr, minimum: int) -> str:
    text = to_text(node)
    return f"({text})" if _level(node) < minimum else text


def to_text(node: Expr) -> str:
    """Render the AST back to parseable text (round-trips structurally)."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, _LEVEL_UNARY)}"
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_wrap(node.left, _LEVEL_ADD)} {node.op} {_wrap(node.right, _LEVEL_MUL)}"
        if node.op in "*/":
            return f"{_wrap(node.left, _LEVEL_MUL)}{node.op}{_wrap(node.right, _LEVEL_UNARY)}"
        # '^': the base must be an atom, the exponent re-enters factor
        return f"{_wrap(node.left, _LEVEL_ATOM)}^{_wrap(node.right, _LEVEL_UNARY)}"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_text(a) for a in node.args)})"
    raise TypeError(f"not an Expr node: {node!r}")
