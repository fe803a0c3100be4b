"""Non-copying array views with contiguous-rank tracking.

A view holds the base array (by identity, never copied), a 0-based
element offset, one stride per result dimension, and the contiguous
rank: the count of leading dimensions whose strides equal the running
cumulative product of the extents. A view is Contiguous exactly when
every dimension is in that leading run.

Index vocabulary: COLON keeps a whole dimension, an int picks one
position, a Range picks an interval. Result shape follows the
trailing-drop convention: scalar-indexed dimensions survive as extent
1 unless they form a trailing run, which is dropped. Kept scalar
dimensions get stride 0 (the subscript there can only be 1).

Views of views resolve to the inner base eagerly, so reading an element
is always one multiply-add chain against one buffer.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .ndarray import BoundsError, NdArray, Range, RankMismatchError, Shape

__all__ = [
    "COLON",
    "Colon",
    "ViewKind",
    "ArrayView",
    "contrank",
    "vshape",
    "view",
    "view_get",
    "to_array",
    "crank_from_strides",
]


class Colon:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return ":"


COLON = Colon()


class ViewKind(enum.Enum):
    CONTIGUOUS = "Contiguous"
    STRIDED = "Strided"


@dataclass(frozen=True)
class ArrayView:
    base: NdArray
    offset: int
    shape: Shape
    strides: tuple
    kind: ViewKind
    crank: int

    @property
    def rank(self) -> int:
        return len(self.shape)


def crank_from_strides(shape, strides) -> int:
    acc = 1
    n = 0
    for extent, stride in zip(shape, strides):
        if stride != acc:
            break
        n += 1
        acc *= extent
    return n


def _layout(a):
    """(base, offset, shape, strides) for an array or a view."""
    if isinstance(a, ArrayView):
        return a.base, a.offset, tuple(a.shape), a.strides
    if isinstance(a, NdArray):
        return a, 0, a.shape, a.strides()
    raise TypeError(f"not an array or view: {a!r}")


def _check_indices(indices, shape):
    if len(indices) != len(shape):
        raise RankMismatchError(len(shape), len(indices))
    for dim, (idx, extent) in enumerate(zip(indices, shape), start=1):
        if idx is COLON:
            continue
        if isinstance(idx, bool):
            raise TypeError("booleans are not indexes")
        if isinstance(idx, int):
            if not 1 <= idx <= extent:
                raise BoundsError(dim, idx, extent)
        elif isinstance(idx, Range):
            if idx.length > 0 and (idx.lo < 1 or idx.hi > extent):
                raise BoundsError(dim, idx, extent)
        else:
            raise TypeError(f"not a view index: {idx!r}")


def contrank(a, indices) -> int:
    """Leading COLON count, capped by the argument's own contiguous rank."""
    _, _, shape, _ = _layout(a)
    if len(indices) != len(shape):
        raise RankMismatchError(len(shape), len(indices))
    n = 0
    for idx in indices:
        if idx is not COLON:
            break
        n += 1
    if isinstance(a, ArrayView):
        return min(n, a.crank)
    return n


def _extents(indices, shape):
    out = []
    for idx, extent in zip(indices, shape):
        if idx is COLON:
            out.append(extent)
        elif isinstance(idx, int):
            out.append(1)
        else:
            out.append(idx.length)
    return out


def vshape(a, indices) -> Shape:
    """Result extents; a trailing run of scalar indexes is dropped."""
    _, _, shape, _ = _layout(a)
    _check_indices(indices, shape)
    keep = len(indices)
    while keep > 0 and isinstance(indices[keep - 1], int):
        keep -= 1
    return Shape(_extents(indices[:keep], shape[:keep]))


def view(a, indices) -> ArrayView:
    """Build a view; no elements are copied."""
    base, offset, shape, strides = _layout(a)
    _check_indices(indices, shape)
    for idx, stride in zip(indices, strides):
        if isinstance(idx, int):
            offset += (idx - 1) * stride
        elif isinstance(idx, Range) and idx.length > 0:
            offset += (idx.lo - 1) * stride
    keep = len(indices)
    while keep > 0 and isinstance(indices[keep - 1], int):
        keep -= 1
    out_shape = Shape(_extents(indices[:keep], shape[:keep]))
    out_strides = tuple(
        0 if isinstance(idx, int) else stride
        for idx, stride in zip(indices[:keep], strides[:keep])
    )
    crank = crank_from_strides(out_shape, out_strides)
    kind = ViewKind.CONTIGUOUS if crank == len(out_shape) else ViewKind.STRIDED
    return ArrayView(base, offset, out_shape, out_strides, kind, crank)


def view_get(v: ArrayView, subscript):
    if len(subscript) != len(v.shape):
        raise RankMismatchError(len(v.shape), len(subscript))
    flat = v.offset
    for dim, (j, extent) in enumerate(zip(subscript, v.shape), start=1):
        if not isinstance(j, int) or isinstance(j, bool) or not 1 <= j <= extent:
            raise BoundsError(dim, j, extent)
        flat += (j - 1) * v.strides[dim - 1]
    return v.base.buffer[flat]


def to_array(v: ArrayView) -> NdArray:
    """Copy a view into a fresh array (column-major)."""
    if not v.shape:
        return NdArray((), [view_get(v, ())])
    axes = [range(1, e + 1) for e in v.shape]
    values = [view_get(v, rev[::-1]) for rev in itertools.product(*reversed(axes))]
    return NdArray(tuple(v.shape), values)
