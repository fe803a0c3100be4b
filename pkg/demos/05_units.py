#!/usr/bin/env python3
"""Physical quantities as a dispatch extension.

A Dimension is a vector of exponents over the seven SI base units, and a
Quantity pairs a magnitude with one. Addition checks that both operands
share a dimension; multiplication adds the exponent vectors. Installing
the extension into a runtime adds quantity methods to the existing `+`
generic function, so mixed programs keep dispatching on value types.
"""

from dispatchkit import (
    LENGTH,
    MASS,
    TIME,
    Dimension,
    Quantity,
    Runtime,
    UnitMismatchError,
    install_quantities,
    qadd,
    qmul,
)


def main() -> None:
    print("== dimensions render as unit strings ==")
    velocity = LENGTH - TIME
    force = MASS + LENGTH - TIME - TIME
    for label, dim in [("length", LENGTH), ("velocity", velocity),
                       ("force", force), ("plain number", Dimension((0,) * 7))]:
        print(f"  {label:<13} {dim.render()}")

    print("\n== addition demands matching dimensions ==")
    d1 = Quantity(3.0, LENGTH)
    d2 = Quantity(4.5, LENGTH)
    print(f"  {d1.render()} + {d2.render()} = {qadd(d1, d2).render()}")
    t = Quantity(2.0, TIME)
    try:
        qadd(d1, t)
    except UnitMismatchError as exc:
        print(f"  {d1.render()} + {t.render()} raises: {exc}")

    print("\n== multiplication combines exponents ==")
    trip = Quantity(120.0, LENGTH)
    per_second = Quantity(0.25, Dimension((0, 0, -1, 0, 0, 0, 0)))
    speed = qmul(trip, per_second)
    print(f"  {trip.render()} * {per_second.render()} = {speed.render()}")
    area = qmul(d1, d2)
    print(f"  {d1.render()} * {d2.render()} = {area.render()}")

    print("\n== the same operations through the dispatcher ==")
    rt = Runtime()
    install_quantities(rt)
    got = rt.call("+", d1, d2)
    print(f"  call('+', {d1.render()}, {d2.render()}) -> {got.render()}")
    print(f"  call('+', 1, 2) -> {rt.call('+', 1, 2)}   (number methods untouched)")
    try:
        rt.call("+", d1, t)
    except UnitMismatchError as exc:
        print(f"  call('+', {d1.render()}, {t.render()}) raises: {exc}")


if __name__ == "__main__":
    main()
