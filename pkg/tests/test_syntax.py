import pytest

from genforms.errors import EvalError, ParseError
from genforms.exterior import Chart, OrdForm, dx
from genforms.gforms import GenForm, GenVec, gd
from genforms.polyring import Poly
from genforms.syntax import (
    GD,
    Contract,
    GenFormLit,
    Wedge,
    eval_source,
    format_value,
    parse,
    parse_genform,
    parse_genvec,
    parse_poly,
    tokenize,
    unparse,
)

from .exprgen import expressions

C2 = Chart(2)


def test_parse_examples():
    ast = parse("d(gf(0; x1; 0))")
    assert isinstance(ast, GD) and isinstance(ast.operand, GenFormLit)
    assert ast.operand.degree == 0
    ast = parse("I(gv([1*e1]; x2), gf(1; [1*dx1]; [1*dx1^dx2]))")
    assert isinstance(ast, Contract)


def test_wedge_is_left_associative():
    ast = parse("gf(0;1;0) ^ gf(0;x1;0) ^ gf(0;x2;0)")
    assert isinstance(ast, Wedge) and isinstance(ast.left, Wedge)


def test_missing_slot_is_syntax_error():
    with pytest.raises(ParseError) as info:
        parse("gf(0; x1)")
    err = info.value
    assert (err.line, err.column) == (1, 9)
    assert "';'" in err.expected
    assert "1:9" in str(err)


def test_error_position_on_later_line():
    with pytest.raises(ParseError) as info:
        parse("d(\n  gf(0; x1; 0)\n  , )")
    assert info.value.line == 3


def test_type_errors_have_spans():
    src = "Lhat(gf(0; 1; 0), gf(0; 1; 0))"
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.line == 1 and info.value.column == 6
    with pytest.raises(ParseError):
        parse("gf(0; dx1; 0)")  # a 1-form in a 0-form slot
    with pytest.raises(ParseError):
        parse("gv([e1]; dx1)")


def test_eval_examples():
    a = "gf(1; x1*dx2 - 2*dx1; (x1 + 1)^2*dx1^dx2)"
    assert eval_source(f"gf(0;1;0) ^ {a}", C2) == eval_source(a, C2)
    assert format_value(eval_source(f"gf(0;1;0) ^ {a}", C2)) == format_value(eval_source(a, C2))
    z = eval_source("d(d(gf(0; x1*x2; x1*dx2)))", C2)
    assert z == GenForm.zero(C2, 2)
    assert format_value(z) == "gf(2; 0; 0)"
    v = eval_source("comm(gv([x1*e1]; x2), gv([1*e2]; x1))", C2)
    assert format_value(v) == "gv(0; x1 - 1)"


def test_canonical_output():
    value = eval_source("gf(1; x1*dx1 + [-1]*dx2; dx1^dx2 + x1*dx1^dx2)", C2)
    assert format_value(value) == "gf(1; [x1*dx1 - dx2]; [(x1 + 1)*dx1^dx2])"
    assert format_value(eval_source("gv(e1 + x1*e2; 0)", C2)) == "gv([e1 + x1*e2]; 0)"
    assert format_value(eval_source("d(gf(-1; 0; 1))", Chart(2, "-1/2"))) == "gf(0; -1/2; 0)"


def test_eval_errors_have_spans():
    src = "scale(gf(1; dx1; 0), gv([e1]; 0))"
    with pytest.raises(EvalError) as info:
        eval_source(src, C2)
    start, end = info.value.span
    assert src[start:end] == src
    with pytest.raises(EvalError):
        eval_source("gf(0; x3; 0)", C2)
    with pytest.raises(EvalError):
        eval_source("gv([e3]; 0)", C2)


def test_repeated_differential_is_zero():
    assert eval_source("gf(2; dx1^dx1; 0)", C2) == GenForm.zero(C2, 2)


def test_custom_names():
    chart = Chart(2, 1, ("t", "q"))
    value = eval_source("d(gf(0; t*q; 0))", chart)
    assert value == gd(GenForm.scalar(chart, chart.poly("t*q")))
    assert format_value(value) == "gf(1; [q*dt + t*dq]; 0)"


def test_parse_helpers():
    assert parse_poly("(x - y)^2", ("x", "y")) == Poly.parse("x^2 - 2*x*y + y^2", ("x", "y"))
    with pytest.raises(ParseError):
        parse_poly("x*dy", ("x", "y"))
    assert parse_genform("gf(1; dx1; 0)", C2) == GenForm(C2, 1, dx(C2, 0))
    assert parse_genvec("gv(0; 2)", C2) == GenVec.zero(C2) + GenVec(GenVec.zero(C2).v1, C2.const(2))
    assert OrdForm.scalar(C2, 1) == eval_source("gf(0; 1; 0)", C2).first


def test_tokenizer_positions():
    tokens = tokenize("gf(0;\n x1; 0)")
    x1 = next(t for t in tokens if t.text == "x1")
    assert (x1.line, x1.column) == (2, 2)
    with pytest.raises(ParseError):
        tokenize("gf(0; x1 $ 0; 0)")


@pytest.mark.parametrize("source,chart", expressions(120, seed=1))
def test_round_trip(source, chart):
    ast = parse(source)
    assert parse(unparse(ast)) == ast
    value = eval_source(source, chart)
    assert eval_source(format_value(value), chart) == value
    # deterministic evaluation
    assert format_value(eval_source(source, chart)) == format_value(value)
