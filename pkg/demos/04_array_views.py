#!/usr/bin/env python3
"""Array views: indexing without copying.

A view records a base array, an offset, per-dimension strides, and how
many leading dimensions are still laid out contiguously (the crank).
Reads go through subscript arithmetic against the base buffer, so
constructing a view costs nothing per element.
"""

from dispatchkit import COLON, Range, Shape, getindex, iota, to_array, view, view_get


def describe(label, v):
    print(f"  {label}")
    print(f"    kind={v.kind.name.title()}  offset={v.offset}  "
          f"shape={tuple(v.shape)}  strides={v.strides}  crank={v.crank}")


def main():
    a = iota(Shape((4, 5, 6)))
    print(f"A = iota{tuple(a.shape)}")

    print("\n== slicing the last dimension keeps the layout contiguous ==")
    v = view(a, [COLON, COLON, 2])
    describe("V = A[:, :, 2]", v)
    print(f"    element V[2, 3] = {view_get(v, (2, 3))}"
          f"  (reads straight from A's buffer)")

    print("\n== slicing an early dimension breaks contiguity ==")
    w = view(a, [2, COLON, COLON])
    describe("W = A[2, :, :]", w)
    print("    the kept scalar dimension has extent 1 and stride 0;")
    print("    no leading run of strides matches the cumulative products,")
    print("    so crank = 0 and the view is Strided")

    print("\n== views compose without touching the base ==")
    vv = view(v, [Range(2, 4), COLON])
    describe("V[2:4, :]", vv)
    assert vv.base is a

    print("\n== materializing agrees with copying getindex ==")
    copied = getindex(a, [Range(1, 4), Range(1, 5), 2])
    print(f"    to_array(V) == A[1:4, 1:5, 2]  ->  {to_array(v) == copied}")


if __name__ == "__main__":
    main()
