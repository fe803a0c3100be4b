"""Concrete typing of runtime values."""

from __future__ import annotations

import pytest

import dispatchkit.values as values
from dispatchkit.lattice import Named, TupleType, make_tuple
from dispatchkit.ndarray import NdArray, Range, Shape, iota
from dispatchkit.values import (
    FLOAT,
    INT,
    INT_ARRAY,
    RANGE,
    STRING,
    register_value_probe,
    render_value,
    type_of,
)


def test_scalars():
    assert type_of(3) == INT
    assert type_of(2.5) == FLOAT
    assert type_of("hi") == STRING


def test_ranges_and_arrays():
    assert type_of(Range(1, 5)) == RANGE
    assert type_of(iota((2, 2))) == INT_ARRAY


def test_tuples():
    assert type_of(()) == TupleType(())
    assert type_of((1, 2.0)) == make_tuple((INT, FLOAT))
    assert type_of(((1,), "a")) == make_tuple((make_tuple((INT,)), STRING))


def test_shape_types_as_tuple_of_its_elements():
    assert type_of(Shape((5, 3))) == make_tuple((INT, INT))
    assert type_of(Shape(())) == TupleType(())


def test_bool_rejected():
    with pytest.raises(TypeError):
        type_of(True)
    with pytest.raises(TypeError):
        type_of((1, False))


def test_unknown_kind_rejected():
    with pytest.raises(TypeError):
        type_of(object())


def test_probe_registration():
    class Tagged:
        pass

    saved = list(values._probes)
    try:
        register_value_probe(
            lambda v: Named("Int") if isinstance(v, Tagged) else None
        )
        assert type_of(Tagged()) == INT
        assert type_of(4) == INT
    finally:
        values._probes[:] = saved


class TestRender:
    def test_scalars(self):
        assert render_value(3) == "3"
        assert render_value(1.5) == "1.5"
        assert render_value('say "hi"') == '"say \\"hi\\""'

    def test_tuples(self):
        assert render_value(()) == "()"
        assert render_value((1,)) == "(1,)"
        assert render_value((1, 2.0)) == "(1, 2.0)"

    def test_shape_and_range(self):
        assert render_value(Shape((5, 3))) == "Shape(5, 3)"
        assert render_value(Range(1, 5)) == "1:5"

    def test_array(self):
        assert render_value(NdArray((2,), [1.0, 2.0])) == "NdArray(shape=(2,))"
