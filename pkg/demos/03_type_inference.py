#!/usr/bin/env python3
"""Dataflow type inference: static call sites without running anything.

The inferencer abstractly interprets a program, instantiating each
method per abstract argument tuple. When one method provably wins a
call site for every possible concrete input, the site is STATIC and the
dispatch could be compiled to a direct call; otherwise it stays
DYNAMIC. Recursion is tamed with widening and an instantiation budget.
"""

from pathlib import Path

from dispatchkit import (
    ANY,
    Runtime,
    infer_call_type,
    infer_program,
    make_tuple,
    render_type,
)
from dispatchkit.values import INT, RANGE

PROGRAMS = Path(__file__).parent / "programs"


def main():
    print("== rank inference without execution ==")
    rt = Runtime()
    for types in ((RANGE, RANGE, INT), (RANGE, INT, RANGE)):
        t, m = infer_call_type(rt.functions, "index_shape", make_tuple(types))
        names = ", ".join(render_type(x) for x in types)
        note = f"   [static -> {m.label}]" if m else ""
        print(f"  index_shape({names}) : {render_type(t)}{note}")
    t, m = infer_call_type(rt.functions, "index_shape", make_tuple((), ANY))
    print(f"  index_shape(Any...) : {render_type(t)}   [dynamic fixpoint]")

    print("\n== per-site report for a mixed program ==")
    src = (PROGRAMS / "dynamic_splice.mjl").read_text()
    rt = Runtime()
    prog = rt.load_definitions(src)
    report = infer_program(rt.functions, prog.items, rt.widen_max_fixed)
    for line in report.render_lines():
        print("  " + line)
    print("  (the index_shape splice joins both mix results, so it cannot")
    print("   be devirtualized; everything else resolved to one method)")

    print("\n== widening keeps recursion finite ==")
    rt = Runtime()
    rt.load_definitions("grow(r...) = grow(1, r...)\n")
    t, _ = infer_call_type(rt.functions, "grow", make_tuple(()))
    print(f"  grow() never returns; inferred result: {render_type(t)}")
    rt = Runtime()
    rt.load_definitions("nest(x) = nest((x,))\n")
    t, _ = infer_call_type(rt.functions, "nest", make_tuple((INT,)))
    print(f"  nest(1) deepens forever; budget fallback: {render_type(t)}")


if __name__ == "__main__":
    main()
