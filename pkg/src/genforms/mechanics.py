"""Constrained Hamiltonian dynamics written with a generalized 2-form.

The extended phase space has coordinates ``(t, q1..qm, p1..pm)``; the momentum
conjugate to ``t`` is eliminated through the constraint ``Pi = -H0``. On that
surface the canonical one-form is ``theta = p_i dq^i - H0 dt``, ``omega = d theta``
and ``Omega = (omega, omega ^ theta)``. The dynamics are ``I_V Omega = 0`` for a
generalized vector ``V = (v1, v0)``; the scalar part ``v0`` comes out as half the
constrained Lagrangian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError
from .exterior import Chart, OrdForm, OrdVec, contract_ord, d_ord, wedge_ord
from .gforms import GenForm, GenVec, gcontract
from .polyring import Poly


def extended_names(m: int) -> tuple[str, ...]:
    return ("t",) + tuple(f"q{i + 1}" for i in range(m)) + tuple(f"p{i + 1}" for i in range(m))


@dataclass(frozen=True)
class ExtendedChart:
    """Constraint surface of the extended phase space for ``m`` degrees of freedom."""

    m: int
    H0: Poly
    k: Fraction = Fraction(1)
    chart: Chart = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        chart = Chart(2 * self.m + 1, self.k, extended_names(self.m))
        if self.H0.nvars != chart.n:
            raise ValueError(f"H0 has {self.H0.nvars} variables, expected {chart.n}")
        object.__setattr__(self, "chart", chart)

    @classmethod
    def from_text(cls, text: str, m: int, k=1) -> ExtendedChart:
        return cls(m, Poly.parse(text, extended_names(m)), Fraction(k))

    # coordinate positions in the chart
    @property
    def t(self) -> int:
        return 0

    def q(self, i: int) -> int:
        return 1 + i

    def p(self, i: int) -> int:
        return 1 + self.m + i


@dataclass(frozen=True)
class PresymplecticData:
    theta: OrdForm
    omega: OrdForm
    Omega: GenForm


@dataclass(frozen=True)
class DynamicsReport:
    """Outcome of :func:`verify_dynamics`; every residual is an exact object."""

    chart: ExtendedChart
    data: PresymplecticData
    v1: OrdVec
    v0: Poly
    lagrangian: Poly
    kernel_residual: OrdForm
    constraint_residual: OrdForm
    contraction_residual: GenForm
    lagrangian_residual: Poly

    @property
    def failures(self) -> list[str]:
        out = []
        if self.kernel_residual:
            out.append("i_{v1} omega = 0")
        if self.constraint_residual:
            out.append("-2 v0 omega + i_{v1}(omega ^ theta) = 0")
        if self.contraction_residual:
            out.append("I_V Omega = 0")
        if self.lagrangian_residual:
            out.append("2 v0 = p_i dq^i/dtau - H0 dt/dtau")
        return out

    @property
    def ok(self) -> bool:
        return not self.failures


def build_presymplectic(ext: ExtendedChart) -> PresymplecticData:
    chart = ext.chart
    theta = OrdForm.basis(chart, ext.t, coeff=-ext.H0)
    for i in range(ext.m):
        theta = theta + OrdForm.basis(chart, ext.q(i), coeff=chart.coord(ext.p(i)))
    omega = d_ord(theta)
    Omega = GenForm(chart, 2, omega, wedge_ord(omega, theta))
    return PresymplecticData(theta, omega, Omega)


def _tangent(ext: ExtendedChart) -> OrdVec:
    # Hamilton's equations with dt/dtau = 1
    chart = ext.chart
    comps = [chart.zero()] * chart.n
    comps[ext.t] = chart.one()
    for i in range(ext.m):
        comps[ext.q(i)] = ext.H0.diff(ext.p(i))
        comps[ext.p(i)] = -ext.H0.diff(ext.q(i))
    return OrdVec(chart, comps)


def hamiltonian_vector(ext: ExtendedChart, data: PresymplecticData | None = None) -> OrdVec:
    """Null direction of omega normalized to ``dt/dtau = 1``; raises if ``i_{v1} omega != 0``."""
    v1 = _tangent(ext)
    if data is None:
        data = build_presymplectic(ext)
    residual = contract_ord(v1, data.omega)
    if residual:
        raise ConsistencyError(f"i_v1 omega = {residual!r} is not zero")
    return v1


def solve_v0(ext: ExtendedChart, v1: OrdVec, data: PresymplecticData) -> Poly:
    """``v0 = (1/2) i_{v1} theta``; checks ``-2 v0 omega + i_{v1}(omega theta) = 0``."""
    v0 = contract_ord(v1, data.theta).as_poly() * Fraction(1, 2)
    residual = data.omega * (v0 * -2) + contract_ord(v1, data.Omega.second)
    if residual:
        raise ConsistencyError(f"-2 v0 omega + i_v1(omega theta) = {residual!r}")
    return v0


def constrained_lagrangian(ext: ExtendedChart, v1: OrdVec) -> Poly:
    """``p_i qdot^i - H0 tdot`` with the velocities read off ``v1``."""
    chart = ext.chart
    total = -ext.H0 * v1[ext.t]
    for i in range(ext.m):
        total = total + chart.coord(ext.p(i)) * v1[ext.q(i)]
    return total


def verify_dynamics(ext: ExtendedChart) -> DynamicsReport:
    """Build V = (v1, v0) and evaluate every residual of the dynamical equations.

    Unlike the helpers above this never raises on a nonzero residual; the
    report names whichever equations fail.
    """
    data = build_presymplectic(ext)
    # built without the guards so residuals are reported, not raised
    v1 = _tangent(ext)
    v0 = contract_ord(v1, data.theta).as_poly() * Fraction(1, 2)
    lagrangian = constrained_lagrangian(ext, v1)
    V = GenVec(v1, v0)
    return DynamicsReport(
        chart=ext,
        data=data,
        v1=v1,
        v0=v0,
        lagrangian=lagrangian,
        kernel_residual=contract_ord(v1, data.omega),
        constraint_residual=data.omega * (v0 * -2) + contract_ord(v1, data.Omega.second),
        contraction_residual=gcontract(V, data.Omega),
        lagrangian_residual=v0 * 2 - lagrangian,
    )
