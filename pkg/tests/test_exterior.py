import pytest
from hypothesis import given, strategies as st

from genforms.errors import ChartMismatchError
from genforms.exterior import (
    Chart,
    OrdForm,
    OrdVec,
    commutator_ord,
    contract_ord,
    d_ord,
    dx,
    lie_ord,
    lie_ord_scalar,
    sort_with_sign,
    wedge_ord,
)
from genforms.suites import naive_lie_ord

from .conftest import make_gen


def poly(chart, text):
    return chart.poly(text)


def test_sort_with_sign():
    assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_with_sign((1, 0)) == (-1, (0, 1))
    assert sort_with_sign((1, 1))[0] == 0


def test_wedge_examples(chart2, chart3):
    assert wedge_ord(dx(chart2, 0), dx(chart2, 1)) == dx(chart2, 0, 1)
    assert wedge_ord(dx(chart2, 1), dx(chart2, 0)) == -dx(chart2, 0, 1)
    x2dx1 = OrdForm.basis(chart2, 0, coeff=poly(chart2, "x2"))
    assert wedge_ord(x2dx1, dx(chart2, 0)).is_zero()
    b = OrdForm.basis(chart3, 1, 2, coeff=poly(chart3, "x1"))
    assert wedge_ord(dx(chart3, 0), b) == OrdForm.basis(chart3, 0, 1, 2, coeff=poly(chart3, "x1"))


def test_wedge_past_top_degree_is_zero_object(chart2):
    out = wedge_ord(dx(chart2, 0, 1), dx(chart2, 0))
    assert out.is_zero() and out.degree == 3


def test_chart_mismatch():
    with pytest.raises(ChartMismatchError):
        wedge_ord(dx(Chart(2), 0), dx(Chart(3), 0))
    with pytest.raises(ChartMismatchError):
        wedge_ord(dx(Chart(2, 1), 0), dx(Chart(2, 2), 1))


def test_chart_validation():
    with pytest.raises(ValueError):
        Chart(2, 0)
    with pytest.raises(ValueError):
        Chart(0)
    with pytest.raises(ValueError):
        Chart(2, 1, ("x", "dx"))


def test_d_examples(chart2):
    f = OrdForm.scalar(chart2, poly(chart2, "x1*x2"))
    assert d_ord(f) == OrdForm(chart2, 1, {(0,): poly(chart2, "x2"), (1,): poly(chart2, "x1")})
    x2dx1 = OrdForm.basis(chart2, 0, coeff=poly(chart2, "x2"))
    assert d_ord(x2dx1) == -dx(chart2, 0, 1)
    top = OrdForm.basis(chart2, 0, 1, coeff=poly(chart2, "x1^2"))
    assert d_ord(top).is_zero() and d_ord(top).degree == 3


def test_contract_examples(chart2):
    e1, e2 = OrdVec.basis(chart2, 0), OrdVec.basis(chart2, 1)
    assert contract_ord(e1, dx(chart2, 0)) == OrdForm.scalar(chart2, 1)
    assert contract_ord(e1, dx(chart2, 0, 1)) == dx(chart2, 1)
    assert contract_ord(e2, dx(chart2, 0, 1)) == -dx(chart2, 0)
    f = OrdForm.scalar(chart2, poly(chart2, "x1 + 3"))
    assert contract_ord(e1, f).is_zero() and contract_ord(e1, f).degree == -1


def test_lie_examples(chart2):
    e1 = OrdVec.basis(chart2, 0)
    x1e1 = OrdVec.basis(chart2, 0, poly(chart2, "x1"))
    a = OrdForm.basis(chart2, 1, coeff=poly(chart2, "x1"))
    assert lie_ord(e1, a) == dx(chart2, 1)
    assert lie_ord(x1e1, dx(chart2, 0)) == dx(chart2, 0)
    f = poly(chart2, "x1^2*x2 - x2")
    v = OrdVec(chart2, [poly(chart2, "x2"), poly(chart2, "x1 + 1")])
    assert lie_ord(v, OrdForm.scalar(chart2, f)) == contract_ord(v, d_ord(OrdForm.scalar(chart2, f)))


def test_commutator_examples(chart2):
    e1, e2 = OrdVec.basis(chart2, 0), OrdVec.basis(chart2, 1)
    assert commutator_ord(e1, e2).is_zero()
    x1e1 = OrdVec.basis(chart2, 0, poly(chart2, "x1"))
    assert commutator_ord(x1e1, e1) == -e1


def test_directional_derivative_examples(chart2):
    e1 = OrdVec.basis(chart2, 0)
    x1e1 = OrdVec.basis(chart2, 0, poly(chart2, "x1"))
    assert lie_ord_scalar(e1, poly(chart2, "x1")) == 1
    assert lie_ord_scalar(x1e1, poly(chart2, "x1^2")) == poly(chart2, "2*x1^2")
    assert lie_ord_scalar(x1e1, chart2.const(5)).is_zero()


def test_form_indexing_is_antisymmetric(chart3):
    a = OrdForm.basis(chart3, 0, 2, coeff=poly(chart3, "x2"))
    assert a[(2, 0)] == -a[(0, 2)]
    assert a[(1, 1)].is_zero()


seeds = st.integers(0, 2**32)
dims = st.integers(1, 3)


@given(seeds, dims, st.data())
def test_graded_anticommutativity(seed, n, data):
    g = make_gen(seed, n)
    p, q = data.draw(st.integers(0, n)), data.draw(st.integers(0, n))
    a, b = g.ordform(p), g.ordform(q)
    assert wedge_ord(a, b) == wedge_ord(b, a) * (-1) ** (p * q)


@given(seeds, dims, st.data())
def test_d_squared_and_leibniz(seed, n, data):
    g = make_gen(seed, n)
    p, q = data.draw(st.integers(0, n)), data.draw(st.integers(0, n))
    a, b = g.ordform(p), g.ordform(q)
    assert d_ord(d_ord(a)).is_zero()
    assert d_ord(wedge_ord(a, b)) == wedge_ord(d_ord(a), b) + wedge_ord(a, d_ord(b)) * (-1) ** p


@given(seeds, dims, st.data())
def test_cartan_matches_component_formula(seed, n, data):
    g = make_gen(seed, n)
    p = data.draw(st.integers(0, min(n, 2)))
    v, a = g.ordvec(), g.ordform(p)
    assert lie_ord(v, a) == naive_lie_ord(v, a)


@given(seeds, dims, st.data())
def test_lie_bracket_of_lie_derivatives(seed, n, data):
    g = make_gen(seed, n)
    p = data.draw(st.integers(0, n))
    v, w, a = g.ordvec(), g.ordvec(), g.ordform(p)
    assert lie_ord(v, lie_ord(w, a)) - lie_ord(w, lie_ord(v, a)) == lie_ord(commutator_ord(v, w), a)


@given(seeds, dims)
def test_commutator_antisymmetric(seed, n):
    g = make_gen(seed, n)
    v, w = g.ordvec(), g.ordvec()
    assert commutator_ord(v, v).is_zero()
    assert commutator_ord(v, w) == -commutator_ord(w, v)
