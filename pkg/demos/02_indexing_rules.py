#!/usr/bin/env python3
"""Swappable indexing rules: one array, four result-shape policies.

The shape of an indexing result is decided by the index_shape generic
function, which ships in four interchangeable rule sets. Each rule set
is a couple of one-line method definitions, so changing the policy
means swapping two lines of program text, not patching the array
library.
"""

from dispatchkit import RULE_NAMES, Range, Shape, getindex, iota, prelude_source


def main():
    a = iota(Shape((5, 3, 2)))
    print(f"A = iota{tuple(a.shape)}  (column-major, 1-based)")

    cases = [
        ("A[1:5, 1:3, 2]", [Range(1, 5), Range(1, 3), 2]),
        ("A[1:5, 2, 1:2]", [Range(1, 5), 2, Range(1, 2)]),
        ("A[2, 3, 1]", [2, 3, 1]),
        ("A[1:1, 2, 1:1]", [Range(1, 1), 2, Range(1, 1)]),
    ]

    print("\nresult shapes per rule set:")
    header = f"  {'indexing':<18}" + "".join(f"{r:>15}" for r in RULE_NAMES)
    print(header)
    for label, indices in cases:
        row = f"  {label:<18}"
        for rule in RULE_NAMES:
            got = getindex(a, indices, rule=rule)
            row += f"{str(tuple(got.shape)):>15}"
        print(row)

    print("\nhow the policies differ:")
    print("  trailing-drop  drops scalar-indexed dimensions only at the end")
    print("  all-drop       drops every scalar-indexed dimension")
    print("  apl            concatenates the shapes of the indices themselves")
    print("  drop-size1     keeps everything, then strips trailing 1s")

    print("\nthe whole trailing-drop policy is just:")
    for line in prelude_source("trailing-drop").strip().splitlines():
        print("   ", line)


if __name__ == "__main__":
    main()
