"""Small expression language for composing 4-vectors from the command line.

Grammar::

    expr    := term | func
    func    := ("le" | "rs" | "cross") "(" expr "," expr ")"
             | ("conj" | "qform" | "embed" | "det") "(" expr ")"
             | "boost" "(" num "," num "," num ")"
    term    := ident | quat
    quat    := "(" cnum ";" cnum "," cnum "," cnum ")"
    cnum    := num | num ("+"|"-") num "i" | num "i"
    num     := rational ("p/q") | decimal     (optionally signed)

Numbers are parsed to exact rationals and only converted when an
expression is evaluated, so the exact backend is lossless end to end.
Expressions are type-checked (4-vector / scalar / matrix) before any
arithmetic runs, and every error carries the source position of the
offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (
    Quat4,
    boost_from_velocity,
    conj,
    le_compose,
    qform,
    rs_compose,
)
from .errors import (
    ArityError,
    EvalError,
    ExprTypeError,
    ParseError,
    RecsymError,
    UnboundVariable,
)
from .pauli import Mat2, cross_term, det, embed
from .scalars import Backend, CScalar

__all__ = ["Expr", "QuatLit", "Var", "Call", "parse", "evaluate", "infer_type"]


# -- tokens ----------------------------------------------------------------

_NUMBER_RE = re.compile(r"\d+/\d+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_]\w*")
_PUNCT = "();,+-"


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # 'num', 'ident', one of _PUNCT, or 'eof'
    text: str
    line: int
    column: int
    value: Fraction | None = None
    imag: bool = False


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            text = m.group(0)
            start_col = col
            i = m.end()
            col += len(text)
            imag = False
            # a bare trailing 'i' marks an imaginary part ("3/4i", "2i")
            if i < n and source[i] == "i" and (i + 1 >= n or not (source[i + 1].isalnum() or source[i + 1] == "_")):
                imag = True
                i += 1
                col += 1
            tokens.append(_Token("num", text, line, start_col,
                                 value=_to_fraction(text, line, start_col), imag=imag))
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            text = m.group(0)
            tokens.append(_Token("ident", text, line, col))
            i = m.end()
            col += len(text)
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


def _to_fraction(text: str, line: int, col: int) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(Decimal(text))
    except (ValueError, ZeroDivisionError, InvalidOperation) as exc:
        raise ParseError(f"bad number {text!r}: {exc}", line, col) from None


# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class QuatLit:
    s: tuple[Fraction, Fraction]
    v: tuple[tuple[Fraction, Fraction], ...]
    line: int
    column: int


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    line: int
    column: int


@dataclass(frozen=True, slots=True)
class Call:
    func: str
    args: tuple
    nums: tuple[Fraction, ...]  # only used by boost
    line: int
    column: int


Expr = QuatLit | Var | Call

# function name -> (argument types, result type); 'q' quat, 's' scalar, 'm' matrix
_SIGNATURES = {
    "le": (("q", "q"), "q"),
    "rs": (("q", "q"), "q"),
    "cross": (("q", "q"), "q"),
    "conj": (("q",), "q"),
    "qform": (("q",), "s"),
    "embed": (("q",), "m"),
    "det": (("m",), "s"),
}
_KIND_NAMES = {"q": "4-vector", "s": "scalar", "m": "matrix"}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.column)
        return tok

    def parse_expr(self) -> Expr:
        tok = self.peek()
        if tok.kind == "ident":
            if self.tokens[self.pos + 1].kind == "(":
                return self.parse_call()
            self.next()
            return Var(tok.text, tok.line, tok.column)
        if tok.kind == "(":
            return self.parse_quat()
        raise ParseError(f"expected an expression, found {tok.text or 'end of input'!r}",
                         tok.line, tok.column)

    def parse_call(self) -> Call:
        name_tok = self.next()
        name = name_tok.text
        self.expect("(", "'('")
        if name == "boost":
            nums = [self.parse_signed_num()]
            while self.peek().kind == ",":
                self.next()
                nums.append(self.parse_signed_num())
            self.expect(")", "')'")
            if len(nums) != 3:
                raise ArityError(f"boost takes 3 numbers, got {len(nums)}",
                                 name_tok.line, name_tok.column)
            return Call("boost", (), tuple(nums), name_tok.line, name_tok.column)
        if name not in _SIGNATURES:
            raise ParseError(f"unknown function {name!r}", name_tok.line, name_tok.column)
        args = [self.parse_expr()]
        while self.peek().kind == ",":
            self.next()
            args.append(self.parse_expr())
        self.expect(")", "')'")
        want = len(_SIGNATURES[name][0])
        if len(args) != want:
            raise ArityError(f"{name} takes {want} argument{'s' if want != 1 else ''}, got {len(args)}",
                             name_tok.line, name_tok.column)
        return Call(name, tuple(args), (), name_tok.line, name_tok.column)

    def parse_signed_num(self) -> Fraction:
        sign = 1
        tok = self.peek()
        if tok.kind in "+-":
            self.next()
            sign = -1 if tok.kind == "-" else 1
        tok = self.expect("num", "a number")
        if tok.imag:
            raise ParseError("imaginary parts are not allowed here", tok.line, tok.column)
        return sign * tok.value

    def parse_cnum(self) -> tuple[Fraction, Fraction]:
        sign = 1
        tok = self.peek()
        if tok.kind in "+-":
            self.next()
            sign = -1 if tok.kind == "-" else 1
        first = self.expect("num", "a number")
        if first.imag:
            return Fraction(0), sign * first.value
        if self.peek().kind in "+-":
            op = self.next()
            second = self.expect("num", "a number")
            if not second.imag:
                raise ParseError("expected an imaginary part like '3/4i'",
                                 second.line, second.column)
            im_sign = -1 if op.kind == "-" else 1
            return sign * first.value, im_sign * second.value
        return sign * first.value, Fraction(0)

    def parse_quat(self) -> QuatLit:
        open_tok = self.expect("(", "'('")
        s = self.parse_cnum()
        self.expect(";", "';'")
        v = [self.parse_cnum()]
        for _ in range(2):
            self.expect(",", "','")
            v.append(self.parse_cnum())
        self.expect(")", "')'")
        return QuatLit(s, tuple(v), open_tok.line, open_tok.column)


def parse(source: str) -> Expr:
    """Parse one expression; raises ParseError/ArityError with positions."""
    parser = _Parser(_tokenize(source))
    expr = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise ParseError(f"unexpected trailing input {trailing.text!r}",
                         trailing.line, trailing.column)
    return expr


# -- typing and evaluation ---------------------------------------------------


def infer_type(expr: Expr) -> str:
    """'q', 's' or 'm'; raises ExprTypeError before any evaluation."""
    if isinstance(expr, (QuatLit, Var)):
        return "q"
    if expr.func == "boost":
        return "q"
    arg_kinds, result = _SIGNATURES[expr.func]
    for want, arg in zip(arg_kinds, expr.args):
        got = infer_type(arg)
        if got != want:
            raise ExprTypeError(
                f"{expr.func} expects a {_KIND_NAMES[want]}, got a {_KIND_NAMES[got]}",
                arg.line, arg.column)
    return result


def _scalar_from_parts(re_part: Fraction, im_part: Fraction, backend: Backend) -> CScalar:
    if backend is Backend.EXACT:
        return CScalar(re_part, im_part, Backend.EXACT)
    return CScalar.approx(complex(float(re_part), float(im_part)))


def evaluate(expr: Expr, bindings: Mapping[str, Quat4], backend: Backend):
    """Bottom-up evaluation to a Quat4, CScalar or Mat2.

    Algebra errors (SqrtNotExact, SuperluminalVelocity, ...) are re-raised
    as EvalError carrying the failing subexpression's source position.
    """
    infer_type(expr)
    return _eval(expr, bindings, backend)


def _eval(expr: Expr, bindings: Mapping[str, Quat4], backend: Backend):
    if isinstance(expr, QuatLit):
        s = _scalar_from_parts(*expr.s, backend)
        v = tuple(_scalar_from_parts(re_p, im_p, backend) for re_p, im_p in expr.v)
        return Quat4(s, v)
    if isinstance(expr, Var):
        try:
            return bindings[expr.name]
        except KeyError:
            raise UnboundVariable(f"variable {expr.name!r} is not bound",
                                  expr.line, expr.column) from None
    args = [_eval(a, bindings, backend) for a in expr.args]
    try:
        return _apply(expr, args, backend)
    except RecsymError as exc:
        if isinstance(exc, EvalError):
            raise
        raise EvalError(f"{type(exc).__name__}: {exc}", expr.line, expr.column) from exc


def _apply(expr: Call, args: Sequence, backend: Backend):
    name = expr.func
    if name == "le":
        return le_compose(args[0], args[1])
    if name == "rs":
        return rs_compose(args[0], args[1])
    if name == "cross":
        s, v = cross_term(args[0].v, args[1].v)
        return Quat4(s, v)
    if name == "conj":
        return conj(args[0])
    if name == "qform":
        return qform(args[0])
    if name == "embed":
        return embed(args[0])
    if name == "det":
        return det(args[0])
    assert name == "boost"
    if backend is Backend.EXACT:
        return boost_from_velocity(expr.nums, Backend.EXACT)
    return boost_from_velocity(tuple(float(x) for x in expr.nums))
