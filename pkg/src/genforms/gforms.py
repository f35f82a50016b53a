"""Generalized forms and generalized vector fields.

A generalized p-form is a pair ``(a_p, a_{p+1})`` of ordinary forms with
``-1 <= p <= n``; a generalized vector field is a pair ``(v1, v0)`` of an
ordinary vector field and a scalar. Degrees outside ``[-1, n]`` are allowed
only for the zero object, which is what wedge and d produce past the ends.
"""

from __future__ import annotations

from numbers import Rational

from .errors import ChartMismatchError, ConsistencyError, DegreeError
from .exterior import (
    Chart,
    OrdForm,
    OrdVec,
    _check_same_chart,
    commutator_ord,
    contract_ord,
    d_ord,
    lie_ord,
    lie_ord_scalar,
    wedge_ord,
)
from .polyring import Poly


class GenForm:
    """Generalized p-form ``(first, second)`` with ``first`` of degree p and ``second`` of degree p+1."""

    __slots__ = ("chart", "degree", "first", "second")

    def __init__(self, chart: Chart, degree: int, first: OrdForm | None = None, second: OrdForm | None = None):
        if first is None:
            first = OrdForm.zero(chart, degree)
        if second is None:
            second = OrdForm.zero(chart, degree + 1)
        for slot, want in ((first, degree), (second, degree + 1)):
            _check_same_chart(chart, slot.chart)
            if slot.degree != want:
                raise DegreeError(f"slot of degree {slot.degree} in a generalized {degree}-form")
        self.chart = chart
        self.degree = degree
        self.first = first
        self.second = second

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> GenForm:
        return cls(chart, degree)

    @classmethod
    def scalar(cls, chart: Chart, f) -> GenForm:
        """The generalized 0-form ``(f, 0)``."""
        return cls(chart, 0, OrdForm.scalar(chart, f))

    @classmethod
    def of(cls, first: OrdForm, second: OrdForm) -> GenForm:
        return cls(first.chart, first.degree, first, second)

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: GenForm) -> GenForm:
        if not isinstance(other, GenForm):
            return NotImplemented
        _check_same_chart(self.chart, other.chart)
        if self.degree != other.degree:
            raise DegreeError(f"cannot add generalized {self.degree}- and {other.degree}-forms")
        return GenForm(self.chart, self.degree, self.first + other.first, self.second + other.second)

    def __neg__(self) -> GenForm:
        return GenForm(self.chart, self.degree, -self.first, -self.second)

    def __sub__(self, other: GenForm) -> GenForm:
        if not isinstance(other, GenForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> GenForm:
        # ordinary scalar multiplication by a rational or a function
        if isinstance(c, (Poly, int, Rational)):
            return GenForm(self.chart, self.degree, self.first * c, self.second * c)
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other: GenForm) -> GenForm:
        return gwedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenForm):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.degree == other.degree
            and self.first == other.first
            and self.second == other.second
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.first, self.second))

    def __repr__(self) -> str:
        from .syntax import format_genform

        return format_genform(self)


class GenVec:
    """Generalized vector field ``(v1, v0)``."""

    __slots__ = ("chart", "v1", "v0")

    def __init__(self, v1: OrdVec, v0: Poly | None = None):
        if v0 is None:
            v0 = v1.chart.zero()
        elif not isinstance(v0, Poly):
            v0 = v1.chart.const(v0)
        if v0.nvars != v1.chart.n:
            raise ChartMismatchError("scalar part has wrong number of variables")
        self.chart = v1.chart
        self.v1 = v1
        self.v0 = v0

    @classmethod
    def zero(cls, chart: Chart) -> GenVec:
        return cls(OrdVec.zero(chart))

    def is_zero(self) -> bool:
        return self.v1.is_zero() and self.v0.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: GenVec) -> GenVec:
        if not isinstance(other, GenVec):
            return NotImplemented
        _check_same_chart(self.chart, other.chart)
        return GenVec(self.v1 + other.v1, self.v0 + other.v0)

    def __neg__(self) -> GenVec:
        return GenVec(-self.v1, -self.v0)

    def __sub__(self, other: GenVec) -> GenVec:
        if not isinstance(other, GenVec):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> GenVec:
        if isinstance(c, (Poly, int, Rational)):
            return GenVec(self.v1 * c, self.v0 * c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenVec):
            return NotImplemented
        return self.chart == other.chart and self.v1 == other.v1 and self.v0 == other.v0

    def __hash__(self) -> int:
        return hash((self.v1, self.v0))

    def __repr__(self) -> str:
        from .syntax import format_genvec

        return format_genvec(self)


def zeta(chart: Chart) -> GenForm:
    """The distinguished generalized (-1)-form ``(0, 1)``."""
    return GenForm(chart, -1, OrdForm.zero(chart, -1), OrdForm.scalar(chart, 1))


def xbar(chart: Chart) -> GenVec:
    """The unit generalized vector ``(0, 1)``."""
    return GenVec(OrdVec.zero(chart), chart.one())


def unit(chart: Chart) -> GenForm:
    return GenForm.scalar(chart, 1)


def tau(p: int) -> int:
    """Scalar weight of ``v0`` in the contraction of a generalized p-form: ``p (-1)^(p-1)``."""
    return p if (p - 1) % 2 == 0 else -p


def _sign(p: int) -> int:
    return -1 if p % 2 else 1


def gwedge(a: GenForm, b: GenForm) -> GenForm:
    _check_same_chart(a.chart, b.chart)
    p, q = a.degree, b.degree
    first = wedge_ord(a.first, b.first)
    second = wedge_ord(a.first, b.second)
    cross = wedge_ord(a.second, b.first)
    second = second + cross if q % 2 == 0 else second - cross
    return GenForm(a.chart, p + q, first, second)


def gd(a: GenForm) -> GenForm:
    p = a.degree
    k = a.chart.k
    first = d_ord(a.first) + a.second * (k * _sign(p + 1))
    return GenForm(a.chart, p + 1, first, d_ord(a.second))


def gscale(s: GenForm, v: GenVec) -> GenVec:
    """Generalized scalar multiplication ``(a0, a1) V = (a0 v1, a0 v0 + i_{v1} a1)``."""
    if s.degree != 0:
        raise DegreeError(f"generalized scalar multiplication needs a 0-form, got degree {s.degree}")
    _check_same_chart(s.chart, v.chart)
    a0 = s.first.as_poly()
    return GenVec(v.v1 * a0, a0 * v.v0 + contract_ord(v.v1, s.second).as_poly())


def gcontract(v: GenVec, a: GenForm) -> GenForm:
    _check_same_chart(v.chart, a.chart)
    p = a.degree
    first = contract_ord(v.v1, a.first)
    second = contract_ord(v.v1, a.second)
    t = tau(p)
    if t and v.v0:
        second = second + a.first * (v.v0 * t)
    return GenForm(a.chart, p - 1, first, second)


def glie_cartan_closed(v: GenVec, a: GenForm) -> GenForm:
    """Closed form of ``I_V d + d I_V``."""
    _check_same_chart(v.chart, a.chart)
    p, k = a.degree, a.chart.k
    v1, v0 = v.v1, v.v0
    first = lie_ord(v1, a.first) - a.first * (v0 * (p * k))
    dv0 = d_ord(OrdForm.scalar(a.chart, v0))
    second = (
        lie_ord(v1, a.second)
        - a.second * (v0 * ((p + 1) * k))
        + wedge_ord(dv0, a.first) * tau(p)
        + d_ord(a.first) * (v0 * _sign(p))
    )
    return GenForm(a.chart, p, first, second)


def glie_cartan(v: GenVec, a: GenForm, check: bool = True) -> GenForm:
    """Lie derivative from Cartan's formula ``I_V d a + d I_V a``.

    With ``check`` the result is compared against :func:`glie_cartan_closed`.
    """
    result = gcontract(v, gd(a)) + gd(gcontract(v, a))
    if check:
        closed = glie_cartan_closed(v, a)
        if closed != result:
            raise ConsistencyError(f"Cartan formula {result!r} != closed form {closed!r}")
    return result


def glie_hat(v: GenVec, a: GenForm) -> GenForm:
    """Corrected Lie derivative ``(L a_p - p k v0 a_p, L a_{p+1} - (p+1) k v0 a_{p+1})``."""
    _check_same_chart(v.chart, a.chart)
    p, k = a.degree, a.chart.k
    first = lie_ord(v.v1, a.first) - a.first * (v.v0 * (p * k))
    second = lie_ord(v.v1, a.second) - a.second * (v.v0 * ((p + 1) * k))
    return GenForm(a.chart, p, first, second)


def correction_term(v: GenVec, a: GenForm) -> GenForm:
    """``(0, (-1)^p (-v0 d a_p + p dv0 a_p))``, the difference between the two Lie derivatives."""
    p = a.degree
    dv0 = d_ord(OrdForm.scalar(a.chart, v.v0))
    second = (wedge_ord(dv0, a.first) * p - d_ord(a.first) * v.v0) * _sign(p)
    return GenForm(a.chart, p, OrdForm.zero(a.chart, p), second)


def glie_hat_vec(v: GenVec, w: GenVec) -> GenVec:
    """Lie derivative of a generalized vector: ``([v1, w1] + k v0 w1, L_{v1} w0)``."""
    _check_same_chart(v.chart, w.chart)
    k = v.chart.k
    return GenVec(commutator_ord(v.v1, w.v1) + w.v1 * (v.v0 * k), lie_ord_scalar(v.v1, w.v0))


def gcommutator(v: GenVec, w: GenVec) -> GenVec:
    _check_same_chart(v.chart, w.chart)
    return GenVec(commutator_ord(v.v1, w.v1), lie_ord_scalar(v.v1, w.v0) - lie_ord_scalar(w.v1, v.v0))
