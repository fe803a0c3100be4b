"""Generic functions with multiple dispatch.

A generic function owns an ordered list of methods. Calling one selects
the applicable method whose signature, read as a tuple type, is most
specific for the concrete argument types, then runs its body. Selection
is memoized per concrete argument-type tuple; any (re)definition clears
the memo, so a warm cache is observationally identical to a cold one.

Specificity uses the signature order from the lattice module (see the
note there): it extends strict semantic subtyping so that variadic
signatures like (Real...) outrank (Any, Any...), and ties that survive
it raise AmbiguityError rather than falling back to definition order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Optional

from .lattice import (
    ANY,
    Named,
    TupleType,
    TypeExpr,
    TypeTable,
    make_tuple,
    render_type,
    signature_subtype,
    subtype,
)
from .values import type_of

__all__ = [
    "DispatchError",
    "NoMethodError",
    "AmbiguityError",
    "DefinitionError",
    "MethodSignature",
    "signature",
    "Method",
    "GenericFunction",
    "FunctionTable",
    "more_specific",
    "dispatch_call",
]


class DispatchError(Exception):
    pass


class NoMethodError(DispatchError):
    def __init__(self, name: str, arg_types):
        rendered = ", ".join(render_type(t) for t in arg_types)
        super().__init__(f"no method matching {name}({rendered})")
        self.name = name
        self.arg_types = tuple(arg_types)


class AmbiguityError(DispatchError):
    def __init__(self, name: str, arg_types, candidates):
        rendered = ", ".join(render_type(t) for t in arg_types)
        labels = ", ".join(m.label for m in candidates)
        super().__init__(f"ambiguous call {name}({rendered}); candidates: {labels}")
        self.name = name
        self.arg_types = tuple(arg_types)
        self.candidates = tuple(candidates)


class DefinitionError(DispatchError):
    pass


@dataclass(frozen=True)
class MethodSignature:
    """Formal parameter types plus a flag for a trailing repeated formal.

    When variadic, the final param is the element type that matches zero
    or more trailing arguments. `specialized` records which formals were
    written with an explicit type; it does not affect matching (an
    unspecialized formal is just Any) but the metrics layer reads it.
    """

    params: tuple[TypeExpr, ...]
    variadic: bool = False
    specialized: tuple[bool, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.variadic and not self.params:
            raise DefinitionError("variadic signature needs an element type")
        if len(self.specialized) not in (0, len(self.params)):
            raise DefinitionError("specialized flags must match params")
        if not self.specialized:
            object.__setattr__(
                self, "specialized", tuple(p != ANY for p in self.params)
            )

    def as_tuple_type(self) -> TypeExpr:
        if self.variadic:
            return make_tuple(self.params[:-1], self.params[-1])
        return make_tuple(self.params)

    def render(self) -> str:
        parts = [render_type(p) for p in self.params]
        if self.variadic:
            parts[-1] += "..."
        return "(" + ", ".join(parts) + ")"


def signature(*params: TypeExpr, variadic: bool = False,
              specialized: Optional[tuple[bool, ...]] = None) -> MethodSignature:
    return MethodSignature(tuple(params), variadic, tuple(specialized or ()))


def more_specific(a: MethodSignature, b: MethodSignature, table: TypeTable) -> bool:
    """True iff a strictly precedes b in the signature order."""
    ta, tb = a.as_tuple_type(), b.as_tuple_type()
    return signature_subtype(ta, tb, table) and not signature_subtype(tb, ta, table)


@dataclass
class Method:
    signature: MethodSignature
    fn: Callable[..., Any]
    fname: str
    ordinal: int
    body: Any = None        # syntax tree when the body is language-defined
    transfer: Any = None    # inference rule for native bodies
    sig_tuple: TypeExpr = field(init=False, repr=False)

    def __post_init__(self):
        self.sig_tuple = self.signature.as_tuple_type()

    @property
    def label(self) -> str:
        return f"{self.fname}#{self.ordinal}"

    def __repr__(self):
        return f"<method {self.fname}{self.signature.render()}>"


class GenericFunction:
    """Named collection of methods sharing a dispatch cache."""

    def __init__(self, name: str, types: TypeTable):
        self.name = name
        self.types = types
        self.methods: list[Method] = []
        self.cache_enabled = True
        self.frozen = False
        self._cache: dict[tuple, Method] = {}

    def define(self, sig: MethodSignature, fn: Callable[..., Any],
               body=None, transfer=None) -> Method:
        if self.frozen:
            raise DefinitionError(f"function table is frozen; cannot extend {self.name}")
        for p in sig.params:
            self._check_declared(p)
        for k, existing in enumerate(self.methods):
            if existing.signature == sig:
                m = Method(sig, fn, self.name, existing.ordinal, body, transfer)
                self.methods[k] = m
                self._cache.clear()
                return m
        m = Method(sig, fn, self.name, len(self.methods) + 1, body, transfer)
        self.methods.append(m)
        self._cache.clear()
        return m

    def _check_declared(self, t: TypeExpr) -> None:
        if isinstance(t, Named):
            self.types.named(t.name)
        elif isinstance(t, TupleType):
            for c in t.fixed:
                self._check_declared(c)
            if t.tail is not None:
                self._check_declared(t.tail)

    def applicable(self, arg_types: TypeExpr) -> list[Method]:
        return [m for m in self.methods if subtype(arg_types, m.sig_tuple, self.types)]

    def select(self, arg_types: TupleType) -> Method:
        if self.cache_enabled and arg_types.tail is None:
            hit = self._cache.get(arg_types.fixed)
            if hit is not None:
                return hit
            m = self._select_uncached(arg_types)
            self._cache[arg_types.fixed] = m
            return m
        return self._select_uncached(arg_types)

    def _select_uncached(self, arg_types: TupleType) -> Method:
        candidates = self.applicable(arg_types)
        if not candidates:
            raise NoMethodError(self.name, arg_types.fixed if arg_types.tail is None
                                else (arg_types,))
        if len(candidates) == 1:
            return candidates[0]
        winners = [
            m for m in candidates
            if not any(
                more_specific(o.signature, m.signature, self.types)
                for o in candidates if o is not m
            )
        ]
        if len(winners) == 1:
            return winners[0]
        raise AmbiguityError(self.name, arg_types.fixed if arg_types.tail is None
                             else (arg_types,), winners or candidates)

    def __call__(self, *args):
        return dispatch_call(self, args)

    def __repr__(self):
        return f"<generic {self.name} with {len(self.methods)} methods>"


def dispatch_call(gf: GenericFunction, args) -> Any:
    key = tuple(type_of(a) for a in args)
    if gf.cache_enabled:
        m = gf._cache.get(key)
        if m is None:
            m = gf._select_uncached(make_tuple(key))
            gf._cache[key] = m
    else:
        m = gf._select_uncached(make_tuple(key))
    return m.fn(*args)


class FunctionTable:
    """All generic functions of one program, plus the type table they share."""

    def __init__(self, types: TypeTable):
        self.types = types
        self._functions: dict[str, GenericFunction] = {}
        self.frozen = False

    def function(self, name: str) -> GenericFunction:
        gf = self._functions.get(name)
        if gf is None:
            if self.frozen:
                raise DefinitionError(f"function table is frozen; cannot create {name}")
            gf = GenericFunction(name, self.types)
            self._functions[name] = gf
        return gf

    def lookup(self, name: str) -> Optional[GenericFunction]:
        return self._functions.get(name)

    def define(self, name: str, sig: MethodSignature, fn, body=None, transfer=None) -> Method:
        return self.function(name).define(sig, fn, body, transfer)

    def freeze(self) -> None:
        self.frozen = True
        for gf in self._functions.values():
            gf.frozen = True

    def names(self) -> list[str]:
        return list(self._functions)

    def __iter__(self) -> Iterator[GenericFunction]:
        return iter(self._functions.values())

    def __len__(self):
        return len(self._functions)
