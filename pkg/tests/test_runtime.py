"""Evaluator semantics: natives, splicing, rule preludes, dispatch flow."""

from __future__ import annotations

import pytest

from dispatchkit.lattice import make_tuple
from dispatchkit.ndarray import Range, Shape, iota
from dispatchkit.preludes import UnknownRuleError, prelude_source
from dispatchkit.runtime import EvalError, Runtime
from dispatchkit.values import type_of


@pytest.fixture
def rt():
    return Runtime()


class TestNatives:
    def test_tuple_and_splice(self, rt):
        assert rt.run("tuple(1, (2, 3)...)") == [(1, 2, 3)]

    def test_empty_tuple(self, rt):
        assert rt.run("()") == [()]

    def test_length(self, rt):
        assert rt.run("length(7)") == [1]
        assert rt.run("length(2.5)") == [1]
        assert rt.run("length(1:5)") == [5]
        assert rt.call("length", iota((2, 3))) == 6

    def test_size(self, rt):
        assert rt.run("size(7)") == [Shape(())]
        assert rt.run("size(1:5)") == [Shape((5,))]
        assert rt.call("size", iota((2, 3))) == Shape((2, 3))

    def test_plus(self, rt):
        v = rt.run("1 + 2")[0]
        assert v == 3 and isinstance(v, int)
        assert rt.run("1 + 2.5") == [3.5]
        assert rt.run("+(2.0, 3.0)") == [5.0]

    def test_sum_integer_branch(self, rt):
        v = rt.run("sum(1, 2, 3)")[0]
        assert v == 6 and isinstance(v, int)

    def test_sum_empty(self, rt):
        v = rt.run("sum()")[0]
        assert v == 0 and isinstance(v, int)

    def test_sum_real_branch(self, rt):
        v = rt.run("sum(1, 2.5)")[0]
        assert v == 3.5 and isinstance(v, float)

    def test_sum_compensation(self, rt):
        xs = [1e16, 1.0, -1e16] * 10
        got = rt.call("sum", *xs)
        assert got == 10.0

    def test_sum_tracks_exact_summation(self, rt):
        import math
        import random

        rng = random.Random(7)
        for _ in range(20):
            xs = [rng.uniform(-1, 1) * 10 ** rng.randrange(-8, 12)
                  for _ in range(50)]
            got = rt.call("sum", *xs)
            want = math.fsum(xs)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-9)

    def test_error_native(self, rt):
        with pytest.raises(EvalError) as e:
            rt.run('error("boom")')
        assert "boom" in str(e.value)
        assert "line 1" in str(e.value)

    def test_droptrail1(self, rt):
        assert rt.call("droptrail1", (5, 1, 3, 1, 1)) == (5, 1, 3)
        assert rt.call("droptrail1", (1, 1)) == ()
        assert rt.call("droptrail1", ()) == ()


class TestIndexShapeRules:
    def test_trailing_rank_triple(self, rt):
        a = rt.run("index_shape(1:5, 1:3, 2)")[0]
        b = rt.run("index_shape(1:5, 2, 1:3)")[0]
        c = rt.run("index_shape(1:5, 2, 1:3, 1)")[0]
        assert a == Shape((5, 3))
        assert b == Shape((5, 1, 3))
        assert c == Shape((5, 1, 3))
        assert [len(s) for s in (a, b, c)] == [2, 3, 3]

    def test_trailing_zero_args(self, rt):
        v = rt.run("index_shape()")[0]
        assert v == Shape(())
        assert isinstance(v, Shape)

    def test_trailing_all_scalars(self, rt):
        assert rt.run("index_shape(2, 3, 4)") == [Shape(())]

    def test_all_drop(self):
        rt = Runtime("all-drop")
        assert rt.run("index_shape(1:5, 2, 1:3)") == [Shape((5, 3))]
        assert rt.run("index_shape(2, 1:4)") == [Shape((4,))]

    def test_apl(self):
        rt = Runtime("apl")
        assert rt.call("index_shape", iota((2, 2)), 7) == Shape((2, 2))
        assert rt.run("index_shape(1:5, 2, 1:3)") == [Shape((5, 3))]

    def test_drop_size1(self):
        rt = Runtime("drop-size1")
        assert rt.call("index_shape", Range(1, 5), 2, Range(1, 3), 1) == Shape((5, 1, 3))
        assert rt.call("index_shape", Range(1, 5), Range(1, 3), 1, 1) == Shape((5, 3))

    def test_unknown_rule(self):
        with pytest.raises(UnknownRuleError):
            Runtime("banana")

    def test_prelude_sources_differ_only_in_defs(self):
        # every prelude defines index_shape and nothing evaluates at load
        for rule in ("trailing-drop", "all-drop", "apl", "drop-size1"):
            src = prelude_source(rule)
            assert "index_shape" in src


class TestUserPrograms:
    def test_simple_def_and_call(self, rt):
        assert rt.run("double(x::Int) = x + x\ndouble(2)") == [4]

    def test_no_method(self, rt):
        rt.run("double(x::Int) = x + x")
        with pytest.raises(EvalError) as e:
            rt.run("double(1.5)")
        assert "no method" in str(e.value)

    def test_variadic_binding(self, rt):
        rt.run("head(x, rest...) = x\ntail(x, rest...) = rest")
        assert rt.call("head", 1, 2, 3) == 1
        assert rt.call("tail", 1, 2, 3) == (2, 3)
        assert rt.call("tail", 1) == ()

    def test_recursion_through_dispatch(self, rt):
        rt.run("count() = 0\ncount(x, r...) = 1 + count(r...)")
        assert rt.call("count", "a", "b", "c", "d") == 4

    def test_unbound_identifier(self, rt):
        with pytest.raises(EvalError) as e:
            rt.run("f(x) = y\nf(1)")
        assert "unbound identifier y" in str(e.value)

    def test_unknown_function(self, rt):
        with pytest.raises(EvalError) as e:
            rt.run("nope(1)")
        assert "unknown function nope" in str(e.value)

    def test_unknown_type(self, rt):
        with pytest.raises(EvalError) as e:
            rt.run("f(x::Widget) = x")
        assert "unknown type Widget" in str(e.value)

    def test_splice_requires_tuple(self, rt):
        with pytest.raises(EvalError) as e:
            rt.run("tuple(1...)")
        assert "splice" in str(e.value)

    def test_ranges(self, rt):
        assert rt.run("2:1") == [Range(2, 1)]
        with pytest.raises(EvalError):
            rt.run("3:1")
        with pytest.raises(EvalError) as e:
            rt.run("(1:2):3")
        assert "integers" in str(e.value)

    def test_trace_order(self, rt):
        assert rt.run("1\n2 + 3\nsum(1, 1)") == [1, 5, 2]

    def test_redefined_index_shape_without_ints_stays_plain(self, rt):
        rt.run('index_shape(s::String) = tuple(s)')
        v = rt.call("index_shape", "x")
        assert v == ("x",)
        assert not isinstance(v, Shape)


class TestObserver:
    def test_methods_match_fresh_selection(self, rt):
        rt.run("count() = 0\ncount(x, r...) = 1 + count(r...)")
        seen = []
        rt.run("count(1, 2, 3)", observer=lambda e, m, args, v: seen.append((e, m, args, v)))
        labels = [m.label for _, m, _, _ in seen]
        assert labels.count("count#2") == 3
        assert labels.count("count#1") == 1
        for _, m, args, _ in seen:
            gf = rt.functions.lookup(m.fname)
            types = make_tuple(tuple(type_of(a) for a in args))
            assert gf.select(types) is m

    def test_observer_restored(self, rt):
        rt.run("1", observer=lambda *a: None)
        assert rt._evaluator.observer is None


class TestRuntimeBookkeeping:
    def test_load_definitions_does_not_evaluate(self, rt):
        prog = rt.load_definitions('f(x) = x\nerror("never")')
        assert len(prog.items) == 2
        assert len(rt.expressions()) == 1

    def test_base_can_be_skipped(self):
        rt = Runtime(base=False)
        assert rt.functions.lookup("tuple") is None

    def test_base_functions_present(self, rt):
        for name in ("tuple", "length", "size", "+", "error", "sum",
                     "droptrail1", "index_shape"):
            assert rt.functions.lookup(name) is not None
