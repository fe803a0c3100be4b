"""Parser, printer, and their round-trip stability."""

from __future__ import annotations

import random

import pytest

from dispatchkit.minilang import (
    Call,
    Ident,
    Lit,
    MethodDef,
    Param,
    ParseError,
    RangeLit,
    Splice,
    parse,
    print_expr,
    print_program,
)
from dispatchkit.preludes import RULE_NAMES, prelude_source


class TestDefinitions:
    def test_variadic_specialized(self):
        p = parse("index_shape(i::Real...) = ()")
        assert len(p.items) == 1
        d = p.items[0]
        assert isinstance(d, MethodDef)
        assert d.fname == "index_shape"
        assert d.params == [Param("i", "Real", True)]
        assert d.body == Call("tuple", [])

    def test_unspecialized_param(self):
        d = parse("g(x) = x").items[0]
        assert d.params == [Param("x", None, False)]
        assert d.body == Ident("x")

    def test_mixed_params(self):
        d = parse("f(x::Int, rest...) = rest").items[0]
        assert d.params == [Param("x", "Int", False), Param("rest", None, True)]

    def test_zero_params(self):
        d = parse("f() = 1").items[0]
        assert d.params == []

    def test_plus_as_function_name(self):
        d = parse("+(a::Int, b::Int) = sum(a, b)").items[0]
        assert d.fname == "+"

    def test_variadic_must_be_last(self):
        with pytest.raises(ParseError):
            parse("f(a..., b) = a")

    def test_continuation_inside_parens(self):
        src = "index_shape(i, I...) = tuple(length(i),\n" \
              "                             index_shape(I...)...)\n"
        d = parse(src).items[0]
        assert d.body.fname == "tuple"
        assert isinstance(d.body.args[1], Splice)

    def test_comments_ignored(self):
        p = parse("# heading\nf(x) = x  # trailing\n\n# done\n")
        assert len(p.items) == 1


class TestExpressions:
    def test_tuple_literals(self):
        assert parse("()").items[0] == Call("tuple", [])
        assert parse("(1,)").items[0] == Call("tuple", [Lit(1)])
        assert parse("(1, 2)").items[0] == Call("tuple", [Lit(1), Lit(2)])
        assert parse("(1, 2,)").items[0] == Call("tuple", [Lit(1), Lit(2)])

    def test_parens_group(self):
        assert parse("(1)").items[0] == Lit(1)

    def test_single_splice_makes_tuple(self):
        assert parse("(xs...)").items[0] == Call("tuple", [Splice(Ident("xs"))])

    def test_call_with_splice(self):
        e = parse("f(a, b...)").items[0]
        assert e == Call("f", [Ident("a"), Splice(Ident("b"))])

    def test_range(self):
        assert parse("1:5").items[0] == RangeLit(Lit(1), Lit(5))
        assert parse("lo:hi").items[0] == RangeLit(Ident("lo"), Ident("hi"))

    def test_range_binds_tighter_than_plus(self):
        e = parse("1 + 2:4").items[0]
        assert e == Call("+", [Lit(1), RangeLit(Lit(2), Lit(4))])

    def test_nested_range_needs_parens(self):
        e = parse("(1:2):3").items[0]
        assert e == RangeLit(RangeLit(Lit(1), Lit(2)), Lit(3))

    def test_plus_left_associative(self):
        e = parse("1 + 2 + 3").items[0]
        assert e == Call("+", [Call("+", [Lit(1), Lit(2)]), Lit(3)])

    def test_prefix_plus_call(self):
        assert parse("+(1, 2)").items[0] == Call("+", [Lit(1), Lit(2)])
        e = parse("a + +(1, 2)").items[0]
        assert e == Call("+", [Ident("a"), Call("+", [Lit(1), Lit(2)])])

    def test_literals(self):
        assert parse("42").items[0] == Lit(42)
        assert parse("2.5").items[0] == Lit(2.5)
        assert parse('"hi \\"there\\""').items[0] == Lit('hi "there"')

    def test_int_before_ellipsis(self):
        assert parse("f(1...)").items[0] == Call("f", [Splice(Lit(1))])


class TestParseErrors:
    @pytest.mark.parametrize("src", [
        "f(",
        "f(x,",
        "1 +",
        "f(x::) = x",
        "f(x) =",
        "(1, 2",
        '"unterminated',
        "f(x)) = x",
        "1 2",
        "xs...",
        "f(x::1) = x",
        "1.",
    ])
    def test_rejected(self, src):
        with pytest.raises(SyntaxError):
            parse(src)

    def test_location_reported(self):
        with pytest.raises(ParseError) as e:
            parse("f(x) = x\ng(y = y\n")
        assert e.value.lineno == 2
        assert "line 2" in str(e.value)


class TestLocations:
    def test_statement_lines(self):
        p = parse("f(x) = x\n\nf(1)\n")
        assert p.items[0].loc[0] == 1
        assert p.items[1].loc[0] == 3

    def test_locations_ignored_by_equality(self):
        assert parse("f(1)\n") == parse("\n# c\nf(1)\n")


class TestPrinter:
    def test_def_form(self):
        src = "f(x::Int, rest...) = tuple(x, rest...)\n"
        assert print_program(parse(src)) == src

    def test_infix_plus(self):
        assert print_expr(parse("1 + 2 + 3").items[0]) == "1 + 2 + 3"
        assert print_expr(parse("1 + (2 + 3)").items[0]) == "1 + (2 + 3)"

    def test_range_parens(self):
        assert print_expr(parse("(1:2):3").items[0]) == "(1:2):3"
        assert print_expr(parse("(1 + 2):3").items[0]) == "(1 + 2):3"

    def test_tuple_literal_prints_as_call(self):
        assert print_expr(parse("(1, 2)").items[0]) == "tuple(1, 2)"

    def test_string_escaping(self):
        assert print_expr(parse('"a\\"b"').items[0]) == '"a\\"b"'


def _round_trip_stable(source: str):
    p = parse(source)
    assert parse(print_program(p)) == p


class TestRoundTrip:
    def test_preludes(self):
        for rule in RULE_NAMES:
            _round_trip_stable(prelude_source(rule))

    def test_aligned_multiline_listing(self):
        _round_trip_stable(
            "index_shape(i::Real...) = ()\n"
            "index_shape(i, I...)    = tuple(length(i),\n"
            "                                index_shape(I...)...)\n"
        )

    def test_random_programs(self):
        rng = random.Random(41002)

        def expr(depth):
            kinds = ["lit", "ident"]
            if depth > 0:
                kinds += ["call", "range", "plus", "tuple"]
            k = rng.choice(kinds)
            if k == "lit":
                return rng.choice([Lit(1), Lit(7), Lit(2.5), Lit("s")])
            if k == "ident":
                return Ident(rng.choice("abcxyz"))
            if k == "range":
                return RangeLit(expr(0), expr(0))
            if k == "plus":
                return Call("+", [expr(depth - 1), expr(depth - 1)])
            name = "tuple" if k == "tuple" else rng.choice(["f", "g", "length"])
            args = []
            for _ in range(rng.randrange(3)):
                a = expr(depth - 1)
                args.append(Splice(a) if rng.random() < 0.3 else a)
            return Call(name, args)

        from dispatchkit.minilang import Program

        for _ in range(200):
            items = []
            for _ in range(rng.randrange(1, 4)):
                if rng.random() < 0.4:
                    params = [
                        Param(n, rng.choice([None, "Int", "Real"]), False)
                        for n in ("p", "q")[: rng.randrange(3)]
                    ]
                    if params and rng.random() < 0.5:
                        params[-1] = Param(params[-1].name,
                                           params[-1].type_name, True)
                    items.append(MethodDef("f", params, expr(2)))
                else:
                    items.append(expr(2))
            _round_trip_stable(print_program(Program(items)))
