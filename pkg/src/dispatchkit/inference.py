"""Dataflow type inference over minilang programs.

Works by abstract interpretation: each method is analyzed per distinct
(narrowed) argument tuple type, and every call joins the results of the
methods that could win dispatch for some concretization of the abstract
argument tuple. A method is ruled out when its signature cannot overlap
the argument type (meet is Bottom) or when a strictly more specific
method is applicable over the whole argument type, so no concrete call
could ever reach it.

Recursion is handled with per-instance frames. A frame consumed while
still being computed contributes its provisional result (starting at
Bottom, the empty type); the root of such a cycle recomputes until its
result stops ascending. Frames finished against provisional inputs are
discarded afterwards and recomputed on demand, which keeps memoized
results honest.

Termination is forced rather than hoped for: every tuple type built
during inference is widened to a bounded number of fixed slots, a
function that re-enters itself with a longer argument tuple has the new
arguments widened down to the active frame's arity, and each generic
function gets a hard budget of distinct instantiations before inference
gives up and answers Any.

A call site is reported static only when every instantiation of its
enclosing context resolved it to the same single method covering all
possible concrete argument types; everything else, including sites
never reached, is dynamic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .dispatch import FunctionTable, GenericFunction, Method, more_specific
from .lattice import (
    ANY,
    Bottom,
    TupleType,
    TypeExpr,
    join,
    make_tuple,
    meet,
    render_type,
    subtype,
    widen,
)
from .minilang import Call, Ident, Lit, MethodDef, RangeLit, Splice
from .values import FLOAT, INT, RANGE, STRING

__all__ = [
    "InferenceState",
    "SiteReport",
    "InferenceReport",
    "splice_types",
    "infer_call_type",
    "infer_program",
]

_FRESH, _ACTIVE, _PROVISIONAL, _DONE = range(4)

_ITERATION_CAP = 100


@dataclass
class _Frame:
    key: tuple
    state: int = _ACTIVE
    result: TypeExpr = Bottom
    index: int = 0
    lowlink: int = 1 << 30


@dataclass
class _SiteRecord:
    arg_type: TypeExpr
    static_method: Optional[Method]
    result: TypeExpr
    splice_elidable: bool


@dataclass
class SiteReport:
    loc: tuple
    fname: str
    static: bool
    method_label: Optional[str]
    result: TypeExpr
    splice_elidable: bool = False

    def render(self) -> str:
        kind = "STATIC" if self.static else "DYNAMIC"
        target = f" {self.method_label}" if self.method_label else ""
        return (f"{self.loc[0]}:{self.loc[1]} {kind}{target} "
                f"{render_type(self.result)}")


@dataclass
class InferenceReport:
    sites: list
    expr_types: list
    instantiations: int
    by_node: dict = field(default_factory=dict, repr=False)

    def render_lines(self) -> list[str]:
        return [s.render() for s in self.sites]

    def site_at(self, line: int, col: int) -> Optional[SiteReport]:
        for s in self.sites:
            if s.loc == (line, col):
                return s
        return None


def splice_types(t: TypeExpr):
    """Abstract argument sequence (fixed list, tail) for a spliced value.

    Splicing something not known to be a tuple degrades to an unbounded
    Any suffix, which is sound for every runtime outcome.
    """
    if isinstance(t, TupleType):
        return list(t.fixed), t.tail
    if t is Bottom:
        return [], Bottom
    return [], ANY


class InferenceState:
    def __init__(self, functions: FunctionTable, widen_max_fixed: int = 8,
                 instantiation_budget: int = 64):
        self.functions = functions
        self.types = functions.types
        self.max_fixed = widen_max_fixed
        self.budget = instantiation_budget
        self.frames: dict[tuple, _Frame] = {}
        self.stack: list[_Frame] = []
        self.active_args: list[tuple] = []  # (gf name, arg TupleType)
        self.per_gf_instances: dict[str, int] = {}
        self.instantiations = 0
        self.sites: dict[int, tuple] = {}       # id(node) -> (node, records)

    # ---------------------------------------------------------- helpers

    def _widen(self, t: TypeExpr) -> TypeExpr:
        if isinstance(t, TupleType):
            return widen(t, self.max_fixed, self.types)
        return t

    def register_site(self, node: Call):
        self.sites.setdefault(id(node), (node, []))

    def _record_site(self, node: Optional[Call], arg_type, static_method,
                     result, splice_elidable):
        if node is None:
            return
        entry = self.sites.get(id(node))
        if entry is None:
            return
        entry[1].append(_SiteRecord(arg_type, static_method, result,
                                    splice_elidable))

    # ------------------------------------------------------- expressions

    def infer_expr(self, e, env: dict) -> TypeExpr:
        if isinstance(e, Lit):
            if isinstance(e.value, int):
                return INT
            if isinstance(e.value, float):
                return FLOAT
            return STRING
        if isinstance(e, Ident):
            return env.get(e.name, Bottom)
        if isinstance(e, RangeLit):
            lo = self.infer_expr(e.lo, env)
            hi = self.infer_expr(e.hi, env)
            for t in (lo, hi):
                if t is Bottom or meet(t, INT, self.types) is Bottom:
                    return Bottom
            return RANGE
        if isinstance(e, Call):
            return self._infer_call_node(e, env)
        return ANY

    def _infer_call_node(self, node: Call, env: dict) -> TypeExpr:
        fixed: list = []
        tail: Optional[TypeExpr] = None
        dead = False
        elidable = True
        for a in node.args:
            if isinstance(a, Splice):
                t = self.infer_expr(a.expr, env)
                if t is Bottom:
                    dead = True
                    break
                sp_fixed, sp_tail = splice_types(t)
                if not isinstance(t, TupleType) or sp_tail is not None:
                    elidable = False
                if tail is None:
                    fixed.extend(sp_fixed)
                    tail = sp_tail
                else:
                    for x in sp_fixed:
                        tail = join(tail, x, self.types)
                    if sp_tail is not None:
                        tail = join(tail, sp_tail, self.types)
            else:
                t = self.infer_expr(a, env)
                if t is Bottom:
                    dead = True
                    break
                if tail is None:
                    fixed.append(t)
                else:
                    tail = join(tail, t, self.types)
        if dead:
            self._record_site(node, Bottom, None, Bottom, elidable)
            return Bottom
        arg_type = self._widen(make_tuple(tuple(fixed), tail))
        gf = self.functions.lookup(node.fname)
        if gf is None or arg_type is Bottom:
            self._record_site(node, arg_type, None, Bottom, elidable)
            return Bottom
        result, static_method = self.infer_call(gf, arg_type)
        self._record_site(node, arg_type, static_method, result, elidable)
        return result

    # ------------------------------------------------------------- calls

    def infer_call(self, gf: GenericFunction, arg_type: TypeExpr):
        """Result type and, when provably unique, the winning method."""
        if arg_type is Bottom:
            return Bottom, None
        if not isinstance(arg_type, TupleType):
            return ANY, None
        arg_type = self._accelerate(gf, arg_type)
        potential = []
        narrowed = []
        for m in gf.methods:
            nt = meet(arg_type, m.sig_tuple, self.types)
            if nt is not Bottom:
                potential.append(m)
                narrowed.append(nt)
        if not potential:
            return Bottom, None
        covering = [m for m in potential
                    if subtype(arg_type, m.sig_tuple, self.types)]
        survivors = []
        surv_narrowed = []
        for m, nt in zip(potential, narrowed):
            dominated = any(
                o is not m and more_specific(o.signature, m.signature, self.types)
                for o in covering
            )
            if not dominated:
                survivors.append(m)
                surv_narrowed.append(nt)
        if self._over_budget(gf):
            return ANY, None
        result = Bottom
        for m, nt in zip(survivors, surv_narrowed):
            result = join(result, self._infer_instance(gf, m, nt), self.types)
        static = None
        if len(survivors) == 1 and survivors[0] in covering:
            static = survivors[0]
        return result, static

    def _accelerate(self, gf: GenericFunction, t: TupleType) -> TupleType:
        """Self-recursion with a longer tuple gets widened down to the
        arity already being analyzed, forcing the cycle closed."""
        shortest = None
        for name, active in self.active_args:
            if name == gf.name:
                n = len(active.fixed)
                shortest = n if shortest is None else min(shortest, n)
        if shortest is not None and len(t.fixed) > shortest:
            return widen(t, shortest, self.types)
        return t

    def _over_budget(self, gf: GenericFunction) -> bool:
        return self.per_gf_instances.get(gf.name, 0) > self.budget

    def _infer_instance(self, gf: GenericFunction, m: Method,
                        narrowed: TupleType) -> TypeExpr:
        key = (m.fname, m.ordinal, narrowed)
        fr = self.frames.get(key)
        if fr is not None:
            if fr.state in (_DONE, _PROVISIONAL):
                if fr.state == _PROVISIONAL and self.stack:
                    self.stack[-1].lowlink = min(self.stack[-1].lowlink,
                                                 fr.lowlink)
                return fr.result
            # active: a cycle; consume the provisional value
            if self.stack:
                self.stack[-1].lowlink = min(self.stack[-1].lowlink, fr.index)
            return fr.result

        self.per_gf_instances[gf.name] = self.per_gf_instances.get(gf.name, 0) + 1
        self.instantiations += 1
        fr = _Frame(key, _ACTIVE, Bottom, index=len(self.stack))
        self.frames[key] = fr
        self.stack.append(fr)
        try:
            for _ in range(_ITERATION_CAP):
                before = fr.result
                low_before = fr.lowlink
                fr.lowlink = 1 << 30
                r = self._run_body(gf, m, narrowed)
                fr.lowlink = min(fr.lowlink, low_before)
                r = join(before, r, self.types)
                changed = r != before
                fr.result = r
                if fr.lowlink < fr.index:
                    break  # inner member; an outer root drives iteration
                if not changed:
                    break
                self._reset_provisionals()
            else:
                fr.result = ANY
        finally:
            self.stack.pop()
        if fr.lowlink < fr.index:
            fr.state = _PROVISIONAL
            if self.stack:
                self.stack[-1].lowlink = min(self.stack[-1].lowlink, fr.lowlink)
        else:
            fr.state = _DONE
            self._reset_provisionals()
        return fr.result

    def _reset_provisionals(self):
        stale = [k for k, f in self.frames.items()
                 if f.state == _PROVISIONAL]
        for k in stale:
            del self.frames[k]

    def _run_body(self, gf: GenericFunction, m: Method,
                  narrowed: TupleType) -> TypeExpr:
        if m.transfer is not None:
            return self._widen(m.transfer(narrowed, self))
        if m.body is None:
            return ANY
        env = self._bind(m, narrowed)
        self.active_args.append((gf.name, narrowed))
        try:
            return self.infer_expr(m.body.body, env)
        finally:
            self.active_args.pop()

    def _bind(self, m: Method, narrowed: TupleType) -> dict:
        d: MethodDef = m.body
        env = {}
        sig = m.signature
        n_fixed = len(sig.params) - 1 if sig.variadic else len(sig.params)
        for k in range(n_fixed):
            env[d.params[k].name] = narrowed.fixed[k]
        if sig.variadic:
            rest = make_tuple(narrowed.fixed[n_fixed:], narrowed.tail)
            env[d.params[-1].name] = self._widen(rest)
        return env


def infer_call_type(functions: FunctionTable, name: str, arg_type: TypeExpr,
                    widen_max_fixed: int = 8):
    """One-off query: (result type, static method or None)."""
    gf = functions.lookup(name)
    if gf is None:
        return Bottom, None
    state = InferenceState(functions, widen_max_fixed)
    return state.infer_call(gf, arg_type)


def _walk_calls(e, out: list):
    if isinstance(e, Call):
        out.append(e)
        for a in e.args:
            _walk_calls(a.expr if isinstance(a, Splice) else a, out)
    elif isinstance(e, RangeLit):
        _walk_calls(e.lo, out)
        _walk_calls(e.hi, out)


def infer_program(functions: FunctionTable, items,
                  widen_max_fixed: int = 8) -> InferenceReport:
    """Annotate every call site of the given program items.

    `items` are parsed statements (definitions and expressions); the
    definitions are assumed to be already present in `functions`.
    """
    state = InferenceState(functions, widen_max_fixed)
    nodes: list[Call] = []
    for item in items:
        body = item.body if isinstance(item, MethodDef) else item
        _walk_calls(body, nodes)
    for n in nodes:
        state.register_site(n)
    expr_types = []
    for item in items:
        if not isinstance(item, MethodDef):
            expr_types.append(state.infer_expr(item, {}))
    sites = []
    by_node = {}
    for n in nodes:
        _, records = state.sites[id(n)]
        if not records:
            sr = SiteReport(n.loc, n.fname, False, None, Bottom)
        else:
            labels = {r.static_method.label if r.static_method else None
                      for r in records}
            static = len(labels) == 1 and None not in labels
            label = labels.pop() if static else None
            result = Bottom
            for r in records:
                result = join(result, r.result, functions.types)
            elidable = all(r.splice_elidable for r in records)
            sr = SiteReport(n.loc, n.fname, static, label, result, elidable)
        sites.append(sr)
        by_node[id(n)] = sr
    sites.sort(key=lambda s: s.loc)
    return InferenceReport(sites, expr_types, state.instantiations, by_node)
