"""Arithmetic expression parsing and evaluation for user-supplied functions.

Grammar, loosest to tightest binding::

    expr   := term  (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?          right associative
    atom   := NUMBER | VARIABLE | NAME "(" expr ("," expr)* ")" | "(" expr ")"

"^" binds tighter than unary minus, so ``-2^2`` is ``-(2^2) = -4`` and
``2^3^2`` is ``2^(3^2) = 512``.  Variables are ``t`` or ``x1``, ``x2``, ...
Callable names are fixed: exp, log, abs, sqrt (one argument) and max, min
(two arguments).  Offsets in error messages are 1-based positions into the
source string.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

FUNCTION_ARITY = {"exp": 1, "log": 1, "abs": 1, "sqrt": 1, "max": 2, "min": 2}


class ExprError(ValueError):
    """Error with a 1-based offset into the expression source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ParseError(ExprError):
    pass


class EvalError(ExprError):
    pass


@dataclass(frozen=True)
class Const:
    value: float
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Node"
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]
    pos: int = field(default=0, compare=False, repr=False)


Node = Const | Var | Unary | Bin | Call


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    # token kinds: num, name, op; pos is 1-based
    tokens = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c.isdigit() or (c == "." and i + 1 < n and src[i + 1].isdigit()):
            i += 1
            while i < n and (src[i].isdigit() or src[i] == "."):
                i += 1
            if i < n and src[i] in "eE":
                j = i + 1
                if j < n and src[j] in "+-":
                    j += 1
                if j < n and src[j].isdigit():
                    i = j + 1
                    while i < n and src[i].isdigit():
                        i += 1
            text = src[start:i]
            try:
                float(text)
            except ValueError:
                raise ParseError(f"malformed number '{text}'", start + 1)
            tokens.append(("num", text, start + 1))
        elif c.isalpha() or c == "_":
            i += 1
            while i < n and (src[i].isalnum() or src[i] == "_"):
                i += 1
            tokens.append(("name", src[start:i], start + 1))
        elif c in "+-*/^(),":
            i += 1
            tokens.append(("op", c, start + 1))
        else:
            raise ParseError(f"unexpected character '{c}'", start + 1)
    return tokens


def _is_variable(name: str) -> bool:
    return name == "t" or (len(name) > 1 and name[0] == "x" and name[1:].isdigit())


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _end_pos(self) -> int:
        return len(self.src) + 1

    def _take_op(self, *ops: str):
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] in ops:
            self.i += 1
            return tok
        return None

    def parse(self) -> Node:
        node = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected token '{tok[1]}'", tok[2])
        return node

    def _expr(self) -> Node:
        node = self._term()
        while True:
            tok = self._take_op("+", "-")
            if tok is None:
                return node
            node = Bin(tok[1], node, self._term(), tok[2])

    def _term(self) -> Node:
        node = self._unary()
        while True:
            tok = self._take_op("*", "/")
            if tok is None:
                return node
            node = Bin(tok[1], node, self._unary(), tok[2])

    def _unary(self) -> Node:
        tok = self._take_op("-")
        if tok is not None:
            return Unary("-", self._unary(), tok[2])
        return self._power()

    def _power(self) -> Node:
        node = self._atom()
        tok = self._take_op("^")
        if tok is None:
            return node
        return Bin("^", node, self._unary(), tok[2])

    def _atom(self) -> Node:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", self._end_pos())
        kind, text, pos = tok
        if kind == "num":
            self.i += 1
            return Const(float(text), pos)
        if kind == "name":
            self.i += 1
            if self._take_op("("):
                return self._call(text, pos)
            if text in FUNCTION_ARITY:
                nxt = self._peek()
                raise ParseError(
                    f"function '{text}' must be called",
                    nxt[2] if nxt else self._end_pos(),
                )
            if not _is_variable(text):
                raise ParseError(f"unknown identifier '{text}'", pos)
            return Var(text, pos)
        if kind == "op" and text == "(":
            self.i += 1
            node = self._expr()
            if self._take_op(")") is None:
                nxt = self._peek()
                raise ParseError(
                    "unclosed parenthesis", nxt[2] if nxt else self._end_pos()
                )
            return node
        raise ParseError(f"unexpected token '{text}'", pos)

    def _call(self, name: str, pos: int) -> Node:
        if name not in FUNCTION_ARITY:
            raise ParseError(f"unknown function '{name}'", pos)
        args = [self._expr()]
        while self._take_op(","):
            args.append(self._expr())
        if self._take_op(")") is None:
            nxt = self._peek()
            raise ParseError("unclosed parenthesis", nxt[2] if nxt else self._end_pos())
        arity = FUNCTION_ARITY[name]
        if len(args) != arity:
            raise ParseError(
                f"'{name}' takes {arity} argument{'s' if arity > 1 else ''}, got {len(args)}",
                pos,
            )
        return Call(name, tuple(args), pos)


def parse(src: str) -> Node:
    """Parse an expression string into an AST."""
    if not src or not src.strip():
        raise ParseError("empty expression", 1)
    return _Parser(src).parse()


def _finite(value: float, what: str, pos: int) -> float:
    if not math.isfinite(value):
        raise EvalError(f"overflow in {what}", pos)
    return value


def evaluate(node: Node, bindings: dict[str, float]) -> float:
    """Evaluate an AST under variable bindings.

    Domain errors (log of a nonpositive value, division by zero, 0 raised
    to a negative power, fractional power of a negative base) raise
    EvalError with the offending node's offset; the result is never NaN.
    """
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        if node.name not in bindings:
            raise EvalError(f"unbound variable '{node.name}'", node.pos)
        return float(bindings[node.name])
    if isinstance(node, Unary):
        return -evaluate(node.operand, bindings)
    if isinstance(node, Bin):
        a = evaluate(node.left, bindings)
        b = evaluate(node.right, bindings)
        if node.op == "+":
            return _finite(a + b, "'+'", node.pos)
        if node.op == "-":
            return _finite(a - b, "'-'", node.pos)
        if node.op == "*":
            return _finite(a * b, "'*'", node.pos)
        if node.op == "/":
            if b == 0.0:
                raise EvalError("division by zero", node.pos)
            return _finite(a / b, "'/'", node.pos)
        # "^" with real semantics; 0^0 is 1 by convention
        if a == 0.0 and b == 0.0:
            return 1.0
        if a == 0.0 and b < 0.0:
            raise EvalError("zero raised to a negative power", node.pos)
        try:
            return _finite(math.pow(a, b), "'^'", node.pos)
        except ValueError:
            raise EvalError("fractional power of a negative base", node.pos)
        except OverflowError:
            raise EvalError("overflow in '^'", node.pos)
    if isinstance(node, Call):
        args = [evaluate(arg, bindings) for arg in node.args]
        try:
            if node.name == "exp":
                return _finite(math.exp(args[0]), "exp", node.pos)
            if node.name == "log":
                if args[0] <= 0.0:
                    raise EvalError("log of a nonpositive value", node.pos)
                return math.log(args[0])
            if node.name == "abs":
                return abs(args[0])
            if node.name == "sqrt":
                if args[0] < 0.0:
                    raise EvalError("sqrt of a negative value", node.pos)
                return math.sqrt(args[0])
            if node.name == "max":
                return max(args[0], args[1])
            if node.name == "min":
                return min(args[0], args[1])
        except OverflowError:
            raise EvalError(f"overflow in {node.name}", node.pos)
        raise EvalError(f"unknown function '{node.name}'", node.pos)
    raise TypeError(f"not an expression node: {node!r}")


_ATOM_PREC = 5
_UNARY_PREC = 3
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node: Node) -> int:
    if isinstance(node, Bin):
        return _PREC[node.op]
    if isinstance(node, Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def to_source(node: Node) -> str:
    """Render an AST back to a string that reparses to an equal AST."""
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unary):
        inner = to_source(node.operand)
        if _prec(node.operand) < _UNARY_PREC:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Bin):
        left = to_source(node.left)
        right = to_source(node.right)
        p = _PREC[node.op]
        if node.op == "^":
            # left operand of ^ sits at atom level in the grammar
            if _prec(node.left) < _ATOM_PREC:
                left = f"({left})"
            if _prec(node.right) < _UNARY_PREC:
                right = f"({right})"
        else:
            if _prec(node.left) < p:
                left = f"({left})"
            if _prec(node.right) <= p:
                right = f"({right})"
        return f"{left}{node.op}{right}"
    if isinstance(node, Call):
        return f"{node.name}({','.join(to_source(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


def variables(node: Node) -> set[str]:
    """Collect the variable names appearing in an AST."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Unary):
        return variables(node.operand)
    if isinstance(node, Bin):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Call):
        out: set[str] = set()
        for arg in node.args:
            out |= variables(arg)
        return out
    return set()


def parse_scalar_function(src: str):
    """Compile an expression in the single variable t into a callable."""
    ast = parse(src)
    extra = variables(ast) - {"t"}
    if extra:
        raise ValueError(f"scalar function may only use t, found {sorted(extra)}")

    def f(t: float) -> float:
        return evaluate(ast, {"t": float(t)})

    return f


def parse_symmetric_function(src: str, dim: int):
    """Compile an expression in x1..x<dim> into a callable on sequences."""
    ast = parse(src)
    allowed = {f"x{i}" for i in range(1, dim + 1)}
    extra = variables(ast) - allowed
    if extra:
        raise ValueError(
            f"function of {dim} variables may only use x1..x{dim}, found {sorted(extra)}"
        )

    def f(xs) -> float:
        vals = list(xs)
        if len(vals) != dim:
            raise ValueError(f"expected {dim} coordinates, got {len(vals)}")
        return evaluate(ast, {f"x{i + 1}": float(v) for i, v in enumerate(vals)})

    return f
