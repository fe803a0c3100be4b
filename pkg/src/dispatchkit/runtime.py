"""Evaluator and base environment for minilang programs.

A Runtime owns a type table, a function table preloaded with the native
prelude (tuple, length, size, +, error, sum, droptrail1) and one of the
packaged indexing rule sets. Programs are loaded incrementally; their
definitions extend the function table and their top-level expressions
evaluate through the dispatch engine, so every call in a trace went
through select.

Native methods carry a transfer annotation: the result type as a
function of the (already narrowed) argument tuple type. The inference
engine consults it where a minilang body would otherwise be walked.
"""

from __future__ import annotations

from typing import Callable, Optional

from .dispatch import DispatchError, FunctionTable, MethodSignature, dispatch_call
from .lattice import ANY, Bottom, TupleType, TypeTable, UndeclaredTypeError, make_tuple
from .minilang import Call, Ident, Lit, MethodDef, Param, Program, RangeLit, Splice, parse
from .ndarray import NdArray, Range, Shape
from .ndarray import length as array_length
from .ndarray import size as array_size
from .preludes import prelude_source
from .values import FLOAT, INT, INTEGER, INT_ARRAY, RANGE, REAL, STRING, type_of

__all__ = ["EvalError", "LangError", "Evaluator", "Runtime", "install_prelude"]


class LangError(Exception):
    """Raised by the `error` native; carries only the user message."""


class EvalError(Exception):
    def __init__(self, message: str, loc=None):
        self.message = message
        self.loc = loc
        super().__init__(self._render())

    def _render(self) -> str:
        if self.loc:
            return f"line {self.loc[0]}, column {self.loc[1]}: {self.message}"
        return self.message


def _bind(params: list[Param], variadic: bool, args: tuple) -> dict:
    env = {}
    fixed = params[:-1] if variadic else params
    for p, a in zip(fixed, args):
        env[p.name] = a
    if variadic:
        env[params[-1].name] = tuple(args[len(fixed):])
    return env


class Evaluator:
    """Walks syntax trees against a function table."""

    def __init__(self, functions: FunctionTable,
                 observer: Optional[Callable] = None):
        self.functions = functions
        self.observer = observer

    def signature_of(self, d: MethodDef) -> MethodSignature:
        params = []
        spec = []
        for p in d.params:
            if p.type_name is None:
                params.append(ANY)
                spec.append(False)
            else:
                try:
                    params.append(self.functions.types.named(p.type_name))
                except UndeclaredTypeError:
                    raise EvalError(f"unknown type {p.type_name}", d.loc) from None
                spec.append(True)
        variadic = bool(d.params) and d.params[-1].variadic
        return MethodSignature(tuple(params), variadic, tuple(spec))

    def define(self, d: MethodDef):
        sig = self.signature_of(d)

        def body(*args):
            env = _bind(d.params, sig.variadic, args)
            return self.eval(d.body, env)

        fn = body
        if d.fname == "index_shape":
            # index_shape results are the one value kind ndarray consumes
            # back, so promote plain integer tuples to Shape here
            def shaped(*args):
                v = body(*args)
                if type(v) is tuple and all(
                    isinstance(x, int) and not isinstance(x, bool) and x >= 0
                    for x in v
                ):
                    return Shape(v)
                return v

            fn = shaped

        return self.functions.function(d.fname).define(sig, fn, body=d)

    def run_items(self, prog: Program) -> list:
        trace = []
        for item in prog.items:
            if isinstance(item, MethodDef):
                self.define(item)
            else:
                trace.append(self.eval(item, {}))
        return trace

    def eval(self, e, env: dict):
        if isinstance(e, Lit):
            return e.value
        if isinstance(e, Ident):
            if e.name in env:
                return env[e.name]
            raise EvalError(f"unbound identifier {e.name}", e.loc)
        if isinstance(e, RangeLit):
            lo = self.eval(e.lo, env)
            hi = self.eval(e.hi, env)
            if not isinstance(lo, int) or not isinstance(hi, int) \
                    or isinstance(lo, bool) or isinstance(hi, bool):
                raise EvalError("range endpoints must be integers", e.loc)
            try:
                return Range(lo, hi)
            except ValueError as err:
                raise EvalError(str(err), e.loc) from None
        if isinstance(e, Call):
            return self._call(e, env)
        raise EvalError(f"cannot evaluate {e!r}", getattr(e, "loc", None))

    def _call(self, e: Call, env: dict):
        args = []
        for a in e.args:
            if isinstance(a, Splice):
                v = self.eval(a.expr, env)
                if isinstance(v, tuple):  # Shape included
                    args.extend(v)
                else:
                    raise EvalError("only tuples can be spliced", a.loc)
            else:
                args.append(self.eval(a, env))
        gf = self.functions.lookup(e.fname)
        if gf is None:
            raise EvalError(f"unknown function {e.fname}", e.loc)
        try:
            arg_types = tuple(type_of(v) for v in args)
        except TypeError as err:
            raise EvalError(str(err), e.loc) from None
        try:
            m = gf.select(make_tuple(arg_types))
            result = m.fn(*args)
        except DispatchError as err:
            raise EvalError(str(err), e.loc) from None
        except LangError as err:
            raise EvalError(str(err), e.loc) from None
        if self.observer is not None:
            self.observer(e, m, args, result)
        return result


# ------------------------------------------------------------- natives


def _compensated_sum(*xs) -> float:
    total = 0.0
    c = 0.0
    for x in xs:
        x = float(x)
        t = total + x
        # track the rounding error of each addition; the comparison picks
        # the operand big enough to absorb the other without losing bits
        if abs(total) >= abs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def _droptrail1(t: tuple) -> tuple:
    for x in t:
        if not isinstance(x, int) or isinstance(x, bool):
            raise LangError("droptrail1 expects a tuple of integers")
    k = len(t)
    while k > 0 and t[k - 1] == 1:
        k -= 1
    return tuple(t[:k])


def install_prelude(ft: FunctionTable) -> None:
    """Register the native generic functions and their transfer rules."""
    sig = MethodSignature
    int_tuple = make_tuple((), INT)
    empty = make_tuple(())

    def fixed(t):
        return lambda args, ctx: t

    ft.define("tuple", sig((ANY,), True), lambda *xs: tuple(xs),
              transfer=lambda args, ctx: args)

    ft.define("length", sig((REAL,)), lambda x: 1, transfer=fixed(INT))
    ft.define("length", sig((RANGE,)), lambda r: r.length, transfer=fixed(INT))
    ft.define("length", sig((INT_ARRAY,)), array_length, transfer=fixed(INT))

    ft.define("size", sig((REAL,)), lambda x: Shape(()), transfer=fixed(empty))
    ft.define("size", sig((RANGE,)), array_size,
              transfer=fixed(make_tuple((INT,))))
    ft.define("size", sig((INT_ARRAY,)), array_size,
              transfer=fixed(int_tuple))

    ft.define("+", sig((INT, INT)), lambda a, b: a + b, transfer=fixed(INT))
    ft.define("+", sig((REAL, REAL)), lambda a, b: float(a) + float(b),
              transfer=fixed(FLOAT))

    def _error(msg):
        raise LangError(msg)

    ft.define("error", sig((STRING,)), _error, transfer=fixed(Bottom))

    ft.define("sum", sig((INTEGER,), True), lambda *xs: sum(xs),
              transfer=fixed(INT))
    ft.define("sum", sig((REAL,), True), _compensated_sum,
              transfer=fixed(FLOAT))

    def droptrail1_transfer(args: TupleType, ctx):
        inner = args.fixed[0] if args.fixed else int_tuple
        if inner == empty:
            return empty
        return int_tuple

    ft.define("droptrail1", sig((int_tuple,)), _droptrail1,
              transfer=droptrail1_transfer)


class Runtime:
    """One loaded program: types, functions, active indexing rule."""

    def __init__(self, index_rule: str = "trailing-drop",
                 widen_max_fixed: int = 8, base: bool = True):
        self.types = TypeTable.prelude()
        self.functions = FunctionTable(self.types)
        self.index_rule = index_rule
        self.widen_max_fixed = widen_max_fixed
        self.items: list = []
        self._evaluator = Evaluator(self.functions)
        if base:
            install_prelude(self.functions)
            self.load_definitions(prelude_source(index_rule))

    def load_definitions(self, source: str) -> Program:
        """Parse and define methods; top-level expressions are kept,
        not evaluated."""
        prog = parse(source)
        for item in prog.items:
            if isinstance(item, MethodDef):
                self._evaluator.define(item)
        self.items.extend(prog.items)
        return prog

    def run(self, source: str, observer=None) -> list:
        """Parse, define, and evaluate; returns the value trace.

        The observer, when given, sees every call made while this source
        runs, including calls inside previously defined method bodies.
        """
        prog = parse(source)
        self.items.extend(prog.items)
        saved = self._evaluator.observer
        if observer is not None:
            self._evaluator.observer = observer
        try:
            return self._evaluator.run_items(prog)
        finally:
            self._evaluator.observer = saved

    def call(self, name: str, *args):
        gf = self.functions.lookup(name)
        if gf is None:
            raise EvalError(f"unknown function {name}")
        return dispatch_call(gf, args)

    def expressions(self) -> list:
        return [it for it in self.items if not isinstance(it, MethodDef)]
