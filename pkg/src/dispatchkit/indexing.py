"""Array indexing with pluggable result-shape rules.

The shape of an indexing result is not computed by host code: getindex
hands the index values to the `index_shape` generic function of the
active rule set and uses whatever shape those minilang methods produce.
Swapping rule sets swaps a handful of method definitions and nothing
else, which is the point of the design.

Each rule set gets one lazily built Runtime, shared by all callers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ndarray import BoundsError, IndexArg, NdArray, Range, RankMismatchError, Shape
from .preludes import RULE_NAMES, UnknownRuleError, prelude_source
from .runtime import Runtime

__all__ = [
    "RuleSet",
    "get_rule",
    "rule_names",
    "index_shape",
    "getindex",
]


@dataclass(frozen=True)
class RuleSet:
    name: str
    source: str


def rule_names() -> tuple[str, ...]:
    return RULE_NAMES


def get_rule(name: str) -> RuleSet:
    return RuleSet(name, prelude_source(name))


_runtimes: dict[str, Runtime] = {}


def _runtime_for(rule) -> Runtime:
    name = rule.name if isinstance(rule, RuleSet) else rule
    rt = _runtimes.get(name)
    if rt is None:
        rt = Runtime(index_rule=name)
        _runtimes[name] = rt
    return rt


def index_shape(rule, indices) -> Shape:
    """Result shape for an index list, per the rule's minilang methods."""
    result = _runtime_for(rule).call("index_shape", *indices)
    return result if isinstance(result, Shape) else Shape(result)


def _elements(idx: IndexArg, dim: int) -> list[int]:
    if isinstance(idx, bool):
        raise TypeError("booleans are not indexes")
    if isinstance(idx, int):
        return [idx]
    if isinstance(idx, Range):
        return list(idx)
    if isinstance(idx, NdArray):
        out = []
        for v in idx.buffer:
            if v != int(v):
                raise ValueError(
                    f"index array for dimension {dim} holds non-integer {v!r}"
                )
            out.append(int(v))
        return out
    raise TypeError(f"not an index: {idx!r}")


def getindex(a: NdArray, indices, rule="trailing-drop") -> NdArray:
    """Select elements of `a`; one index per dimension."""
    indices = list(indices)
    if len(indices) != a.rank:
        raise RankMismatchError(a.rank, len(indices))
    pools = []
    for dim, idx in enumerate(indices, start=1):
        extent = a.shape[dim - 1]
        elems = _elements(idx, dim)
        for e in elems:
            if not 1 <= e <= extent:
                raise BoundsError(dim, e, extent)
        pools.append(elems)
    shape = index_shape(rule, indices)
    strides = a.strides()
    values = []
    for rev in itertools.product(*reversed(pools)):
        flat = 0
        for k in range(len(rev)):
            flat += (rev[len(rev) - 1 - k] - 1) * strides[k]
        values.append(a.buffer[flat])
    return NdArray(tuple(shape), values)
