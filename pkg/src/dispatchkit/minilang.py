"""Surface syntax: method definitions, calls, splices, tuples, ranges.

The grammar is deliberately small. A program is a newline-separated
sequence of statements; each statement is either a method definition

    name(param, x::Type, rest...) = expression

or a top-level expression. Expressions are calls `f(a, b...)`, tuple
literals `()` / `(a,)` / `(a, b)`, closed ranges `lo:hi`, `a + b`
(sugar for calling the generic function named "+"), identifiers, and
int/float/string literals. `#` starts a line comment. Newlines inside
parentheses continue the statement.

Tuple literals parse to calls of the `tuple` native, so the evaluator
and the inference engine only ever see one tuple constructor. The
printer therefore renders them in call form; parse-print-parse is
still structurally stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

__all__ = [
    "ParseError",
    "Lit",
    "Ident",
    "RangeLit",
    "Splice",
    "Call",
    "Param",
    "MethodDef",
    "Program",
    "parse",
    "print_program",
    "print_expr",
]


class ParseError(SyntaxError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.lineno = line
        self.offset = col


Loc = tuple


@dataclass
class Lit:
    value: Union[int, float, str]
    loc: Loc = field(default=(0, 0), compare=False)


@dataclass
class Ident:
    name: str
    loc: Loc = field(default=(0, 0), compare=False)


@dataclass
class RangeLit:
    lo: "Expr"
    hi: "Expr"
    loc: Loc = field(default=(0, 0), compare=False)


@dataclass
class Splice:
    expr: "Expr"
    loc: Loc = field(default=(0, 0), compare=False)


@dataclass
class Call:
    fname: str
    args: list
    loc: Loc = field(default=(0, 0), compare=False)


Expr = Union[Lit, Ident, RangeLit, Call]


@dataclass
class Param:
    name: str
    type_name: Optional[str] = None
    variadic: bool = False


@dataclass
class MethodDef:
    fname: str
    params: list
    body: Expr
    loc: Loc = field(default=(0, 0), compare=False)


@dataclass
class Program:
    items: list


# ---------------------------------------------------------------- lexer

_PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
    "=": "EQUALS",
    "+": "PLUS",
}


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _lex(source: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    depth = 0
    i, n = 0, len(source)

    def emit(kind, text, l=None, c=None):
        toks.append(_Token(kind, text, l if l is not None else line,
                           c if c is not None else col))

    while i < n:
        ch = source[i]
        if ch == "\n":
            if depth == 0 and toks and toks[-1].kind != "NEWLINE":
                emit("NEWLINE", "\n")
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if source.startswith("...", i):
            emit("ELLIPSIS", "...")
            i += 3
            col += 3
            continue
        if source.startswith("::", i):
            emit("DCOLON", "::")
            i += 2
            col += 2
            continue
        if ch == ":":
            emit("COLON", ":")
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth = max(0, depth - 1)
            emit(_PUNCT[ch], ch)
            i += 1
            col += 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            buf = []
            while i < n and source[i] != '"':
                c = source[i]
                if c == "\n":
                    raise ParseError("unterminated string", start_line, start_col)
                if c == "\\" and i + 1 < n and source[i + 1] in '\\"':
                    buf.append(source[i + 1])
                    i += 2
                    col += 2
                    continue
                buf.append(c)
                i += 1
                col += 1
            if i >= n:
                raise ParseError("unterminated string", start_line, start_col)
            i += 1
            col += 1
            emit("STRING", "".join(buf), start_line, start_col)
            continue
        if ch.isdigit():
            start_col = col
            j = i
            while j < n and source[j].isdigit():
                j += 1
            # a '.' starts a float only when not part of '...'
            if j < n and source[j] == "." and not source.startswith("...", j):
                j += 1
                if j >= n or not source[j].isdigit():
                    raise ParseError("malformed number", line, start_col)
                while j < n and source[j].isdigit():
                    j += 1
                emit("FLOAT", source[i:j], line, start_col)
            else:
                emit("INT", source[i:j], line, start_col)
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            start_col = col
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            emit("IDENT", source[i:j], line, start_col)
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)

    if toks and toks[-1].kind != "NEWLINE":
        emit("NEWLINE", "\n")
    emit("EOF", "")
    return toks


# --------------------------------------------------------------- parser


class _Parser:
    def __init__(self, toks: list[_Token]):
        self.toks = toks
        self.pos = 0

    def peek(self, ahead=0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect(self, kind: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind}, got {t.kind} {t.text!r}",
                             t.line, t.col)
        return self.next()

    def fail(self, msg: str):
        t = self.peek()
        raise ParseError(msg, t.line, t.col)

    def program(self) -> Program:
        items = []
        while self.peek().kind != "EOF":
            if self.peek().kind == "NEWLINE":
                self.next()
                continue
            items.append(self.statement())
            if self.peek().kind not in ("NEWLINE", "EOF"):
                self.fail("expected end of statement")
        return Program(items)

    def statement(self):
        if self._looks_like_def():
            return self.method_def()
        return self.expr()

    def _looks_like_def(self) -> bool:
        t = self.peek()
        if t.kind not in ("IDENT", "PLUS") or self.peek(1).kind != "LPAREN":
            return False
        depth = 0
        k = self.pos + 1
        while k < len(self.toks):
            kind = self.toks[k].kind
            if kind == "LPAREN":
                depth += 1
            elif kind == "RPAREN":
                depth -= 1
                if depth == 0:
                    return self.toks[k + 1].kind == "EQUALS"
            elif kind in ("NEWLINE", "EOF"):
                return False
            k += 1
        return False

    def method_def(self) -> MethodDef:
        t = self.next()
        fname = "+" if t.kind == "PLUS" else t.text
        self.expect("LPAREN")
        params = []
        if self.peek().kind != "RPAREN":
            while True:
                params.append(self.param())
                if self.peek().kind == "COMMA":
                    self.next()
                    continue
                break
        self.expect("RPAREN")
        self.expect("EQUALS")
        body = self.expr()
        for p in params[:-1]:
            if p.variadic:
                raise ParseError("only the last parameter may be variadic",
                                 t.line, t.col)
        return MethodDef(fname, params, body, (t.line, t.col))

    def param(self) -> Param:
        name = self.expect("IDENT").text
        type_name = None
        if self.peek().kind == "DCOLON":
            self.next()
            type_name = self.expect("IDENT").text
        variadic = False
        if self.peek().kind == "ELLIPSIS":
            self.next()
            variadic = True
        return Param(name, type_name, variadic)

    # precedence: additive < range < primary; after an operand a `+` is
    # always the infix operator, in operand position it heads a call
    def expr(self) -> Expr:
        left = self.range_expr()
        while self.peek().kind == "PLUS":
            t = self.next()
            right = self.range_expr()
            left = Call("+", [left, right], (t.line, t.col))
        return left

    def range_expr(self) -> Expr:
        lo = self.primary()
        if self.peek().kind == "COLON":
            t = self.next()
            hi = self.primary()
            return RangeLit(lo, hi, (t.line, t.col))
        return lo

    def primary(self) -> Expr:
        t = self.peek()
        if t.kind == "INT":
            self.next()
            return Lit(int(t.text), (t.line, t.col))
        if t.kind == "FLOAT":
            self.next()
            return Lit(float(t.text), (t.line, t.col))
        if t.kind == "STRING":
            self.next()
            return Lit(t.text, (t.line, t.col))
        if t.kind == "PLUS" and self.peek(1).kind == "LPAREN":
            self.next()
            return self.call("+", t)
        if t.kind == "IDENT":
            self.next()
            if self.peek().kind == "LPAREN":
                return self.call(t.text, t)
            return Ident(t.text, (t.line, t.col))
        if t.kind == "LPAREN":
            return self.tuple_or_group()
        self.fail(f"unexpected {t.kind} {t.text!r}")

    def call(self, fname: str, t: _Token) -> Call:
        self.expect("LPAREN")
        args = []
        if self.peek().kind != "RPAREN":
            while True:
                args.append(self.argument())
                if self.peek().kind == "COMMA":
                    self.next()
                    continue
                break
        self.expect("RPAREN")
        return Call(fname, args, (t.line, t.col))

    def argument(self):
        e = self.expr()
        if self.peek().kind == "ELLIPSIS":
            t = self.next()
            return Splice(e, (t.line, t.col))
        return e

    def tuple_or_group(self) -> Expr:
        t = self.expect("LPAREN")
        if self.peek().kind == "RPAREN":
            self.next()
            return Call("tuple", [], (t.line, t.col))
        first = self.argument()
        if self.peek().kind == "RPAREN":
            self.next()
            if isinstance(first, Splice):
                return Call("tuple", [first], (t.line, t.col))
            return first
        args = [first]
        while self.peek().kind == "COMMA":
            self.next()
            if self.peek().kind == "RPAREN":
                break
            args.append(self.argument())
        self.expect("RPAREN")
        return Call("tuple", args, (t.line, t.col))


def parse(source: str) -> Program:
    return _Parser(_lex(source)).program()


# -------------------------------------------------------------- printer

_ADD, _RANGE, _PRIMARY = 1, 2, 3


def _prec(e) -> int:
    if isinstance(e, Call) and e.fname == "+" and len(e.args) == 2 \
            and not any(isinstance(a, Splice) for a in e.args):
        return _ADD
    if isinstance(e, RangeLit):
        return _RANGE
    return _PRIMARY


def _pe(e, min_prec: int) -> str:
    if isinstance(e, Splice):
        return _pe(e.expr, _PRIMARY) + "..."
    p = _prec(e)
    if isinstance(e, Lit):
        if isinstance(e.value, str):
            body = e.value.replace("\\", "\\\\").replace('"', '\\"')
            s = f'"{body}"'
        else:
            s = repr(e.value)
    elif isinstance(e, Ident):
        s = e.name
    elif isinstance(e, RangeLit):
        s = f"{_pe(e.lo, _PRIMARY)}:{_pe(e.hi, _PRIMARY)}"
    elif isinstance(e, Call):
        if p == _ADD:
            s = f"{_pe(e.args[0], _ADD)} + {_pe(e.args[1], _RANGE)}"
        else:
            s = e.fname + "(" + ", ".join(_pe(a, _ADD) for a in e.args) + ")"
    else:
        raise TypeError(f"not an expression: {e!r}")
    if p < min_prec:
        return "(" + s + ")"
    return s


def print_expr(e) -> str:
    return _pe(e, _ADD)


def _print_param(p: Param) -> str:
    s = p.name
    if p.type_name is not None:
        s += f"::{p.type_name}"
    if p.variadic:
        s += "..."
    return s


def print_program(p: Program) -> str:
    lines = []
    for item in p.items:
        if isinstance(item, MethodDef):
            params = ", ".join(_print_param(q) for q in item.params)
            lines.append(f"{item.fname}({params}) = {print_expr(item.body)}")
        else:
            lines.append(print_expr(item))
    return "\n".join(lines) + ("\n" if lines else "")
