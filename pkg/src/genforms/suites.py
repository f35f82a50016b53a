"""Seeded property families over random generalized forms and vectors.

Each property draws its instance from its own ``random.Random`` stream keyed by
``(seed, property, trial)``, so reports do not depend on execution order or on
how trials are split across workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import GenFormsError
from .exterior import (
    Chart,
    OrdForm,
    OrdVec,
    all_indices,
    commutator_ord,
    contract_ord,
    d_ord,
    lie_ord,
    lie_ord_scalar,
    wedge_ord,
)
from .gforms import (
    GenForm,
    GenVec,
    correction_term,
    gcommutator,
    gcontract,
    gd,
    glie_cartan,
    glie_cartan_closed,
    glie_hat,
    glie_hat_vec,
    gscale,
    gwedge,
    tau,
    unit,
    xbar,
    zeta,
)
from .mechanics import ExtendedChart, extended_names, verify_dynamics
from .polyring import Poly
from .syntax import format_value

SUITES = (
    "wedge",
    "extd",
    "contract",
    "lie-cartan",
    "lie-hat",
    "commutator",
    "jacobi",
    "defects",
    "altvect",
    "mechanics",
)


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    n: int = 2
    k: Fraction = Fraction(1)
    seed: int = 0
    trials: int = 100
    max_degree: int = 2
    max_terms: int = 3

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + ('all',))}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        object.__setattr__(self, "k", Fraction(self.k))
        if self.k == 0:
            raise ValueError("k must be nonzero")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def chart(self) -> Chart:
        return Chart(self.n, self.k)

    def families(self) -> tuple[str, ...]:
        return SUITES if self.suite == "all" else (self.suite,)


class Generator:
    """Random instances: coefficients a/b with |a| <= 9 and b in {1, 2, 3}."""

    def __init__(self, rng: random.Random, chart: Chart, max_degree: int = 2, max_terms: int = 3):
        self.rng = rng
        self.chart = chart
        self.max_degree = max_degree
        self.max_terms = max_terms

    def rational(self) -> Fraction:
        return Fraction(self.rng.randint(-9, 9), self.rng.choice((1, 2, 3)))

    def nonzero_rational(self) -> Fraction:
        while True:
            r = self.rational()
            if r:
                return r

    def monomial(self, nvars: int) -> tuple[int, ...]:
        exps = [0] * nvars
        for _ in range(self.rng.randint(0, self.max_degree)):
            exps[self.rng.randrange(nvars)] += 1
        return tuple(exps)

    def poly(self, nvars: int | None = None, max_terms: int | None = None) -> Poly:
        nvars = self.chart.n if nvars is None else nvars
        terms: dict = {}
        for _ in range(self.rng.randint(1, max_terms or self.max_terms)):
            mono = self.monomial(nvars)
            terms[mono] = terms.get(mono, 0) + self.rational()
        return Poly(nvars, terms)

    def ordform(self, p: int) -> OrdForm:
        comps = {idx: self.poly() for idx in all_indices(self.chart.n, p) if self.rng.random() < 0.6}
        return OrdForm(self.chart, p, comps)

    def ordvec(self) -> OrdVec:
        return OrdVec(self.chart, [self.poly() if self.rng.random() < 0.7 else self.chart.zero() for _ in range(self.chart.n)])

    def genform(self, p: int) -> GenForm:
        return GenForm(self.chart, p, self.ordform(p), self.ordform(p + 1))

    def genvec(self) -> GenVec:
        return GenVec(self.ordvec(), self.poly())


@dataclass
class Outcome:
    ok: bool
    lhs: str = ""
    rhs: str = ""
    instance: dict = field(default_factory=dict)


def _fmt(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return format_value(x)


def _eq(lhs, rhs, **instance) -> Outcome:
    if lhs == rhs:
        return Outcome(True)
    return Outcome(False, _fmt(lhs), _fmt(rhs), {k: _fmt(v) for k, v in instance.items()})


def _sign(p: int) -> int:
    return -1 if p % 2 else 1


class Trial:
    """Per-property, per-trial context: generator plus degree choices that sweep the grid."""

    def __init__(self, config: SuiteConfig, prop: str, index: int):
        self.chart = config.chart
        self.index = index
        rng = random.Random(f"{config.seed}/{prop}/{index}")
        self.gen = Generator(rng, self.chart, config.max_degree, config.max_terms)
        span = self.chart.n + 2
        # trial t covers generalized degrees (p, q) = (t mod span - 1, t div span mod span - 1)
        self.p = index % span - 1
        self.q = (index // span) % span - 1
        self.r = (index // (span * span)) % span - 1

    @property
    def op(self) -> int:
        """Ordinary degree in [0, n]."""
        return self.index % (self.chart.n + 1)

    @property
    def oq(self) -> int:
        return (self.index // (self.chart.n + 1)) % (self.chart.n + 1)


Property = Callable[[Trial], Outcome]


# -- wedge --------------------------------------------------------------------


def prop_ord_graded_commutativity(t: Trial) -> Outcome:
    a, b = t.gen.ordform(t.op), t.gen.ordform(t.oq)
    return _eq(wedge_ord(a, b), wedge_ord(b, a) * _sign(t.op * t.oq), a=a, b=b)


def prop_graded_commutativity(t: Trial) -> Outcome:
    a, b = t.gen.genform(t.p), t.gen.genform(t.q)
    return _eq(gwedge(a, b), gwedge(b, a) * _sign(t.p * t.q), a=a, b=b)


def prop_wedge_associativity(t: Trial) -> Outcome:
    a, b, c = t.gen.genform(t.p), t.gen.genform(t.q), t.gen.genform(t.r)
    return _eq(gwedge(gwedge(a, b), c), gwedge(a, gwedge(b, c)), a=a, b=b, c=c)


def prop_wedge_unit(t: Trial) -> Outcome:
    a = t.gen.genform(t.p)
    return _eq(gwedge(unit(t.chart), a), a, a=a)


def prop_zeta_squared(t: Trial) -> Outcome:
    z = zeta(t.chart)
    return _eq(gwedge(z, z), GenForm.zero(t.chart, -2))


# -- exterior derivative ------------------------------------------------------


def prop_ord_d_squared(t: Trial) -> Outcome:
    a = t.gen.ordform(t.op)
    return _eq(d_ord(d_ord(a)), OrdForm.zero(t.chart, t.op + 2), a=a)


def prop_ord_leibniz(t: Trial) -> Outcome:
    a, b = t.gen.ordform(t.op), t.gen.ordform(t.oq)
    lhs = d_ord(wedge_ord(a, b))
    rhs = wedge_ord(d_ord(a), b) + wedge_ord(a, d_ord(b)) * _sign(t.op)
    return _eq(lhs, rhs, a=a, b=b)


def prop_gd_leibniz(t: Trial) -> Outcome:
    a, b = t.gen.genform(t.p), t.gen.genform(t.q)
    lhs = gd(gwedge(a, b))
    rhs = gwedge(gd(a), b) + gwedge(a, gd(b)) * _sign(t.p)
    return _eq(lhs, rhs, a=a, b=b)


def prop_gd_squared(t: Trial) -> Outcome:
    a = t.gen.genform(t.p)
    return _eq(gd(gd(a)), GenForm.zero(t.chart, t.p + 2), a=a)


def prop_d_zeta(t: Trial) -> Outcome:
    return _eq(gd(zeta(t.chart)), GenForm.scalar(t.chart, t.chart.k))


# -- contraction --------------------------------------------------------------


def prop_contract_antiderivation(t: Trial) -> Outcome:
    V = t.gen.genvec()
    a, b = t.gen.genform(t.p), t.gen.genform(t.q)
    lhs = gcontract(V, gwedge(a, b))
    rhs = gwedge(gcontract(V, a), b) + gwedge(a, gcontract(V, b)) * _sign(t.p)
    return _eq(lhs, rhs, V=V, a=a, b=b)


def prop_contract_linearity(t: Trial) -> Outcome:
    V, W = t.gen.genvec(), t.gen.genvec()
    mu = t.gen.rational()
    a = t.gen.genform(t.p)
    lhs = gcontract(V + W * mu, a)
    rhs = gcontract(V, a) + gcontract(W, a) * mu
    return _eq(lhs, rhs, V=V, W=W, mu=mu, a=a)


def prop_gscale_ring_action(t: Trial) -> Outcome:
    a, b, V = t.gen.genform(0), t.gen.genform(0), t.gen.genvec()
    return _eq(gscale(a, gscale(b, V)), gscale(gwedge(a, b), V), a=a, b=b, V=V)


def prop_gscale_unit(t: Trial) -> Outcome:
    V = t.gen.genvec()
    return _eq(gscale(unit(t.chart), V), V, V=V)


def prop_contract_ordinary_restriction(t: Trial) -> Outcome:
    v = t.gen.ordvec()
    a = t.gen.genform(t.p)
    lhs = gcontract(GenVec(v), a)
    rhs = GenForm(t.chart, t.p - 1, contract_ord(v, a.first), contract_ord(v, a.second))
    return _eq(lhs, rhs, v=v, a=a)


# -- Lie derivative, Cartan form ----------------------------------------------


def naive_lie_ord(v: OrdVec, a: OrdForm) -> OrdForm:
    """Component formula: L_v(f dx_I) = v(f) dx_I + f sum_r dx_i1 ^ .. ^ d(v^{i_r}) ^ .. ^ dx_ip."""
    chart = a.chart
    total = OrdForm.zero(chart, a.degree)
    for idx, f in a.components:
        total = total + OrdForm.basis(chart, *idx, coeff=lie_ord_scalar(v, f))
        for r, i in enumerate(idx):
            dvi = d_ord(OrdForm.scalar(chart, v[i]))
            left = OrdForm.basis(chart, *idx[:r]) if r else OrdForm.scalar(chart, 1)
            right = OrdForm.basis(chart, *idx[r + 1:]) if r + 1 < len(idx) else OrdForm.scalar(chart, 1)
            total = total + wedge_ord(wedge_ord(left, dvi), right) * f
    return total


def prop_ord_cartan_consistency(t: Trial) -> Outcome:
    v, a = t.gen.ordvec(), t.gen.ordform(t.op)
    return _eq(lie_ord(v, a), naive_lie_ord(v, a), v=v, a=a)


def prop_ord_lie_commutator(t: Trial) -> Outcome:
    v, w, a = t.gen.ordvec(), t.gen.ordvec(), t.gen.ordform(t.op)
    lhs = lie_ord(v, lie_ord(w, a)) - lie_ord(w, lie_ord(v, a))
    return _eq(lhs, lie_ord(commutator_ord(v, w), a), v=v, w=w, a=a)


def _cartan(V: GenVec, a: GenForm) -> GenForm:
    return glie_cartan(V, a, check=False)


def prop_cartan_closed_form(t: Trial) -> Outcome:
    V, a = t.gen.genvec(), t.gen.genform(t.p)
    return _eq(glie_cartan(V, a, check=False), glie_cartan_closed(V, a), V=V, a=a)


def prop_cartan_leibniz(t: Trial) -> Outcome:
    V = t.gen.genvec()
    a, b = t.gen.genform(t.p), t.gen.genform(t.q)
    L = _cartan
    lhs = L(V, gwedge(a, b))
    rhs = gwedge(L(V, a), b) + gwedge(a, L(V, b))
    return _eq(lhs, rhs, V=V, a=a, b=b)


def prop_cartan_linearity(t: Trial) -> Outcome:
    V, W = t.gen.genvec(), t.gen.genvec()
    lam = t.gen.rational()
    a = t.gen.genform(t.p)
    L = _cartan
    return _eq(L(V * lam + W, a), L(V, a) * lam + L(W, a), V=V, W=W, lam=lam, a=a)


def prop_cartan_commutator(t: Trial) -> Outcome:
    V, W, a = t.gen.genvec(), t.gen.genvec(), t.gen.genform(t.p)
    L = _cartan
    lhs = L(V, L(W, a)) - L(W, L(V, a))
    return _eq(lhs, L(gcommutator(V, W), a), V=V, W=W, a=a)


def prop_cartan_defect(t: Trial) -> Outcome:
    V, W, a = t.gen.genvec(), t.gen.genvec(), t.gen.genform(t.p)
    chart, p, k = t.chart, t.p, t.chart.k
    L = _cartan
    lhs = L(V, gcontract(W, a)) - gcontract(W, L(V, a))
    U = GenVec(
        commutator_ord(V.v1, W.v1) + W.v1 * (V.v0 * k),
        lie_ord_scalar(V.v1, W.v0) - lie_ord_scalar(W.v1, V.v0),
    )
    extra = lie_ord(W.v1 * V.v0, a.first) * _sign(p)
    rhs = gcontract(U, a) - GenForm(chart, p - 1, OrdForm.zero(chart, p - 1), extra)
    return _eq(lhs, rhs, V=V, W=W, a=a)


# -- corrected Lie derivative -------------------------------------------------


def prop_hat_correction(t: Trial) -> Outcome:
    V, a = t.gen.genvec(), t.gen.genform(t.p)
    return _eq(glie_hat(V, a) - glie_cartan(V, a), correction_term(V, a), V=V, a=a)


def prop_hat_leibniz(t: Trial) -> Outcome:
    V = t.gen.genvec()
    a, b = t.gen.genform(t.p), t.gen.genform(t.q)
    lhs = glie_hat(V, gwedge(a, b))
    rhs = gwedge(glie_hat(V, a), b) + gwedge(a, glie_hat(V, b))
    return _eq(lhs, rhs, V=V, a=a, b=b)


def prop_hat_linearity(t: Trial) -> Outcome:
    V, W = t.gen.genvec(), t.gen.genvec()
    lam = t.gen.rational()
    a = t.gen.genform(t.p)
    return _eq(glie_hat(V * lam + W, a), glie_hat(V, a) * lam + glie_hat(W, a), V=V, W=W, lam=lam, a=a)


def prop_hat_derivation_law(t: Trial) -> Outcome:
    V, W, a = t.gen.genvec(), t.gen.genvec(), t.gen.genform(t.p)
    k = t.chart.k
    lhs = glie_hat(V, gcontract(W, a)) - gcontract(W, glie_hat(V, a))
    U = GenVec(commutator_ord(V.v1, W.v1) + W.v1 * (V.v0 * k), lie_ord_scalar(V.v1, W.v0))
    return _eq(lhs, gcontract(U, a), V=V, W=W, a=a)


def prop_hat_vector_derivation(t: Trial) -> Outcome:
    V, W, a = t.gen.genvec(), t.gen.genvec(), t.gen.genform(t.p)
    lhs = glie_hat(V, gcontract(W, a))
    rhs = gcontract(W, glie_hat(V, a)) + gcontract(glie_hat_vec(V, W), a)
    return _eq(lhs, rhs, V=V, W=W, a=a)


def prop_hat_commutator_forms(t: Trial) -> Outcome:
    V, W, a = t.gen.genvec(), t.gen.genvec(), t.gen.genform(t.p)
    lhs = glie_hat(V, glie_hat(W, a)) - glie_hat(W, glie_hat(V, a))
    return _eq(lhs, glie_hat(gcommutator(V, W), a), V=V, W=W, a=a)


def prop_hat_commutator_vectors(t: Trial) -> Outcome:
    V, W, U = t.gen.genvec(), t.gen.genvec(), t.gen.genvec()
    lhs = glie_hat_vec(V, glie_hat_vec(W, U)) - glie_hat_vec(W, glie_hat_vec(V, U))
    return _eq(lhs, glie_hat_vec(gcommutator(V, W), U), V=V, W=W, U=U)


def prop_hat_vec_ordinary(t: Trial) -> Outcome:
    v, w = t.gen.ordvec(), t.gen.ordvec()
    return _eq(glie_hat_vec(GenVec(v), GenVec(w)), GenVec(commutator_ord(v, w)), v=v, w=w)


# -- generalized commutator ---------------------------------------------------


def prop_commutator_antisymmetry(t: Trial) -> Outcome:
    V, W = t.gen.genvec(), t.gen.genvec()
    return _eq(gcommutator(V, W), -gcommutator(W, V), V=V, W=W)


def prop_commutator_self(t: Trial) -> Outcome:
    V = t.gen.genvec()
    return _eq(gcommutator(V, V), GenVec.zero(t.chart), V=V)


def prop_commutator_bilinear(t: Trial) -> Outcome:
    U, V, W = t.gen.genvec(), t.gen.genvec(), t.gen.genvec()
    lam = t.gen.rational()
    lhs = gcommutator(U * lam + V, W)
    return _eq(lhs, gcommutator(U, W) * lam + gcommutator(V, W), U=U, V=V, W=W, lam=lam)


def prop_commutator_ordinary(t: Trial) -> Outcome:
    v, w = t.gen.ordvec(), t.gen.ordvec()
    return _eq(gcommutator(GenVec(v), GenVec(w)), GenVec(commutator_ord(v, w)), v=v, w=w)


def prop_jacobi(t: Trial) -> Outcome:
    U, V, W = t.gen.genvec(), t.gen.genvec(), t.gen.genvec()
    c = gcommutator
    lhs = c(U, c(V, W)) + c(V, c(W, U)) + c(W, c(U, V))
    return _eq(lhs, GenVec.zero(t.chart), U=U, V=V, W=W)


# -- failure identities -------------------------------------------------------


def prop_anticommutation_defect(t: Trial) -> Outcome:
    V, W, a = t.gen.genvec(), t.gen.genvec(), t.gen.genform(t.p)
    chart, p = t.chart, t.p
    lhs = gcontract(V, gcontract(W, a)) + gcontract(W, gcontract(V, a))
    second = (contract_ord(V.v1, a.first) * W.v0 + contract_ord(W.v1, a.first) * V.v0) * _sign(p - 1)
    rhs = GenForm(chart, p - 2, OrdForm.zero(chart, p - 2), second)
    return _eq(lhs, rhs, V=V, W=W, a=a)


def prop_zero_form_contraction(t: Trial) -> Outcome:
    V, a = t.gen.genvec(), t.gen.genform(0)
    rhs = GenForm(t.chart, -1, OrdForm.zero(t.chart, -1), contract_ord(V.v1, a.second))
    return _eq(gcontract(V, a), rhs, V=V, a=a)


def prop_one_form_contraction(t: Trial) -> Outcome:
    V, a = t.gen.genvec(), t.gen.genform(1)
    rhs = GenForm(t.chart, 0, contract_ord(V.v1, a.first), a.first * V.v0 + contract_ord(V.v1, a.second))
    return _eq(gcontract(V, a), rhs, V=V, a=a)


def nonlinearity_witness(chart: Chart) -> dict:
    """The stored instance V=(d/dx1, 0), a0=(0, dx1), b=(dx2, 0); needs n >= 2."""
    V = GenVec(OrdVec.basis(chart, 0))
    a0 = GenForm(chart, 0, OrdForm.zero(chart, 0), OrdForm.basis(chart, 0))
    b = GenForm(chart, 1, OrdForm.basis(chart, 1))
    return {
        "V": V,
        "a0": a0,
        "b": b,
        "I_{a0 V} b": gcontract(gscale(a0, V), b),
        "a0 ^ I_V b": gwedge(a0, gcontract(V, b)),
        "I_V (a0 ^ b)": gcontract(V, gwedge(a0, b)),
    }


def prop_nonlinearity(t: Trial) -> Outcome:
    if t.chart.n < 2:
        return Outcome(True)  # the instance needs two coordinates
    w = nonlinearity_witness(t.chart)
    lhs = w["I_{a0 V} b"]
    if lhs != w["a0 ^ I_V b"] and lhs != w["I_V (a0 ^ b)"]:
        return Outcome(True)
    return Outcome(False, _fmt(lhs), _fmt(w["a0 ^ I_V b"]), {"note": "expected unequal sides"})


def prop_tau_functional(t: Trial) -> Outcome:
    n = t.chart.n
    for p in range(-1, n + 1):
        for q in range(-1, n + 1):
            if -1 <= p + q <= n:
                lhs = _sign(q) * tau(p) + _sign(p) * tau(q)
                if lhs != tau(p + q):
                    return Outcome(False, str(lhs), str(tau(p + q)), {"p": str(p), "q": str(q)})
    return Outcome(True)


# -- X-bar / zeta equivalences ------------------------------------------------


def prop_xbar_under_ordinary(t: Trial) -> Outcome:
    w1, v0 = t.gen.ordvec(), t.gen.poly()
    lhs = glie_hat_vec(GenVec(w1), GenVec(OrdVec.zero(t.chart), v0))
    return _eq(lhs, GenVec(OrdVec.zero(t.chart), lie_ord_scalar(w1, v0)), w1=w1, v0=v0)


def prop_ordinary_under_xbar(t: Trial) -> Outcome:
    w1, v0 = t.gen.ordvec(), t.gen.poly()
    lhs = glie_hat_vec(GenVec(OrdVec.zero(t.chart), v0), GenVec(w1))
    return _eq(lhs, GenVec(w1 * (v0 * t.chart.k)), w1=w1, v0=v0)


def prop_xbar_under_xbar(t: Trial) -> Outcome:
    v0, w0 = t.gen.poly(), t.gen.poly()
    zero = OrdVec.zero(t.chart)
    lhs = glie_hat_vec(GenVec(zero, v0), GenVec(zero, w0))
    return _eq(lhs, GenVec.zero(t.chart), v0=v0, w0=w0)


def prop_xbar_contraction(t: Trial) -> Outcome:
    a = t.gen.genform(t.p)
    rhs = GenForm(t.chart, t.p - 1, OrdForm.zero(t.chart, t.p - 1), a.first * tau(t.p))
    return _eq(gcontract(xbar(t.chart), a), rhs, a=a)


def prop_hat_along_xbar(t: Trial) -> Outcome:
    v0, a = t.gen.poly(), t.gen.genform(t.p)
    p, k = t.p, t.chart.k
    V = GenVec(OrdVec.zero(t.chart), v0)
    rhs = GenForm(t.chart, p, a.first * (v0 * (-p * k)), a.second * (v0 * (-(p + 1) * k)))
    return _eq(glie_hat(V, a), rhs, v0=v0, a=a)


def prop_d_zeta_alt(t: Trial) -> Outcome:
    return prop_d_zeta(t)


# -- mechanics ----------------------------------------------------------------


def prop_mechanics(t: Trial) -> Outcome:
    m = 1 + t.index % 2
    nvars = 2 * m + 1
    gen = Generator(t.gen.rng, t.chart, max_degree=3, max_terms=4)
    H0 = gen.poly(nvars)
    ext = ExtendedChart(m, H0, t.chart.k)
    report = verify_dynamics(ext)
    closed = d_ord(report.data.omega)
    if report.ok and not closed:
        return Outcome(True)
    failures = report.failures + (["d omega = 0"] if closed else [])
    return Outcome(False, "; ".join(failures), "all residuals zero", {"m": str(m), "H0": H0.to_str(extended_names(m))})


FAMILIES: dict[str, dict[str, Property]] = {
    "wedge": {
        "ordinary_graded_commutativity": prop_ord_graded_commutativity,
        "graded_commutativity": prop_graded_commutativity,
        "associativity": prop_wedge_associativity,
        "unit": prop_wedge_unit,
        "zeta_squared": prop_zeta_squared,
    },
    "extd": {
        "ordinary_d_squared": prop_ord_d_squared,
        "ordinary_leibniz": prop_ord_leibniz,
        "leibniz": prop_gd_leibniz,
        "d_squared": prop_gd_squared,
        "d_zeta": prop_d_zeta,
    },
    "contract": {
        "antiderivation": prop_contract_antiderivation,
        "linearity": prop_contract_linearity,
        "scalar_ring_action": prop_gscale_ring_action,
        "scalar_unit": prop_gscale_unit,
        "ordinary_restriction": prop_contract_ordinary_restriction,
    },
    "lie-cartan": {
        "ordinary_component_formula": prop_ord_cartan_consistency,
        "ordinary_commutator": prop_ord_lie_commutator,
        "closed_form": prop_cartan_closed_form,
        "leibniz": prop_cartan_leibniz,
        "linearity": prop_cartan_linearity,
        "commutator": prop_cartan_commutator,
        "contraction_defect": prop_cartan_defect,
    },
    "lie-hat": {
        "correction_term": prop_hat_correction,
        "leibniz": prop_hat_leibniz,
        "linearity": prop_hat_linearity,
        "derivation_law": prop_hat_derivation_law,
        "vector_derivation": prop_hat_vector_derivation,
        "commutator_on_forms": prop_hat_commutator_forms,
        "commutator_on_vectors": prop_hat_commutator_vectors,
        "ordinary_vectors": prop_hat_vec_ordinary,
    },
    "commutator": {
        "antisymmetry": prop_commutator_antisymmetry,
        "self_bracket": prop_commutator_self,
        "bilinearity": prop_commutator_bilinear,
        "ordinary_bracket": prop_commutator_ordinary,
    },
    "jacobi": {
        "jacobi_identity": prop_jacobi,
    },
    "defects": {
        "anticommutation_defect": prop_anticommutation_defect,
        "zero_form_contraction": prop_zero_form_contraction,
        "one_form_contraction": prop_one_form_contraction,
        "nonlinearity_witness": prop_nonlinearity,
        "correction_term": prop_hat_correction,
        "tau_functional_equation": prop_tau_functional,
    },
    "altvect": {
        "xbar_under_ordinary": prop_xbar_under_ordinary,
        "ordinary_under_xbar": prop_ordinary_under_xbar,
        "xbar_under_xbar": prop_xbar_under_xbar,
        "xbar_contraction": prop_xbar_contraction,
        "hat_along_xbar": prop_hat_along_xbar,
        "d_zeta": prop_d_zeta_alt,
    },
    "mechanics": {
        "dynamics": prop_mechanics,
    },
}


@dataclass
class PropertyResult:
    family: str
    name: str
    trials: int
    failures: list[dict]

    @property
    def key(self) -> str:
        return f"{self.family}.{self.name}"

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list[PropertyResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[dict]:
        out = [f for r in self.results for f in r.failures]
        return sorted(out, key=lambda f: (f["trial"], f["property"]))

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        c = self.config
        return {
            "suite": c.suite,
            "seed": c.seed,
            "trials": c.trials,
            "n": c.n,
            "k": str(c.k),
            "properties": {r.key: {"trials": r.trials, "failures": len(r.failures)} for r in self.results},
            "failures": self.failures,
        }

    def to_text(self) -> str:
        c = self.config
        lines = [f"suite={c.suite} n={c.n} k={c.k} seed={c.seed} trials={c.trials}"]
        for r in self.results:
            status = "PASS" if r.ok else "FAIL"
            lines.append(f"{status} {r.key} {r.trials - len(r.failures)}/{r.trials}")
        for f in self.failures:
            lines.append(f"  counterexample {f['property']} trial={f['trial']}")
            for name, value in f["instance"].items():
                lines.append(f"    {name} = {value}")
            lines.append(f"    lhs = {f['lhs']}")
            lines.append(f"    rhs = {f['rhs']}")
        total = len(self.failures)
        lines.append(f"RESULT {'PASS' if self.ok else 'FAIL'} ({total} failure{'s' if total != 1 else ''})")
        return "\n".join(lines)


def run_trial(config: SuiteConfig, family: str, name: str, index: int) -> dict | None:
    prop = FAMILIES[family][name]
    key = f"{family}.{name}"
    try:
        outcome = prop(Trial(config, key, index))
    except GenFormsError as exc:
        outcome = Outcome(False, f"error: {exc}", "", {})
    if outcome.ok:
        return None
    return {"trial": index, "property": key, "lhs": outcome.lhs, "rhs": outcome.rhs, "instance": outcome.instance}


def _run_chunk(args) -> list[dict]:
    config, family, name, indices = args
    return [f for f in (run_trial(config, family, name, i) for i in indices) if f]


def run_suite(config: SuiteConfig, jobs: int = 1) -> SuiteReport:
    """Run every property of the configured families for ``config.trials`` trials each."""
    tasks = [(family, name) for family in config.families() for name in FAMILIES[family]]
    if jobs > 1:
        chunks = []
        step = max(1, config.trials // jobs)
        for family, name in tasks:
            for start in range(0, config.trials, step):
                chunks.append((config, family, name, range(start, min(start + step, config.trials))))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_run_chunk, chunks))
        per_task: dict[tuple[str, str], list[dict]] = {task: [] for task in tasks}
        for chunk, failures in zip(chunks, found):
            per_task[(chunk[1], chunk[2])].extend(failures)
    else:
        per_task = {task: _run_chunk((config, *task, range(config.trials))) for task in tasks}
    results = [
        PropertyResult(family, name, config.trials, sorted(per_task[(family, name)], key=lambda f: f["trial"]))
        for family, name in tasks
    ]
    return SuiteReport(config, results)
