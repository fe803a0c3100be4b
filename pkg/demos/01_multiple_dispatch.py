#!/usr/bin/env python3
"""Multiple dispatch basics: methods, specificity, failure modes.

A generic function is a bag of methods; each call picks the most
specific method applicable to the whole argument tuple. This walkthrough
defines methods from program text, watches selection respond to
argument types, and then triggers the two dispatch errors on purpose.
"""

from dispatchkit import (
    AmbiguityError,
    NoMethodError,
    Runtime,
    make_tuple,
    render_value,
    type_of,
)


def main():
    rt = Runtime()

    print("== defining methods ==")
    rt.run(
        'describe(x::Int) = "a machine integer"\n'
        'describe(x::Real) = "some other number"\n'
        'describe(x) = "not a number at all"\n'
    )
    gf = rt.functions.lookup("describe")
    for m in gf.methods:
        print(f"  {m.label}: {m.signature.render()}")

    print("\n== calls dispatch on the argument type ==")
    for v in (3, 2.5, "hello"):
        picked = gf.select(make_tuple((type_of(v),)))
        print(f"  describe({render_value(v)}) -> {rt.call('describe', v)!r}"
              f"   via {picked.label}")

    print("\n== variadic specificity: sum ==")
    print("  sum(1, 2, 3)      ->", rt.call("sum", 1, 2, 3),
          "  (integer method: exact arithmetic)")
    print("  sum(1, 2.5)       ->", rt.call("sum", 1, 2.5),
          "(real method: compensated float arithmetic)")
    for args in ((1, 2, 3), (1, 2.5)):
        types = make_tuple(tuple(type_of(a) for a in args))
        print(f"  argument tuple {types} selects {gfname(rt, 'sum', types)}")

    print("\n== when no method applies ==")
    try:
        rt.call("sum", "oops")
    except NoMethodError as err:
        print(" ", err)

    print("\n== when two methods tie ==")
    rt.run(
        'clash(x::Int, y) = "int on the left"\n'
        'clash(x, y::Int) = "int on the right"\n'
    )
    try:
        rt.call("clash", 1, 2)
    except AmbiguityError as err:
        print(" ", err)
    print("  (adding a (Int, Int) method would resolve the tie)")
    rt.run('clash(x::Int, y::Int) = "int on both sides"\n')
    print("  after adding it:", rt.call("clash", 1, 2))


def gfname(rt, name, types):
    return rt.functions.lookup(name).select(types).label


if __name__ == "__main__":
    main()
