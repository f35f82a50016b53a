"""Ordinary exterior calculus on a coordinate chart.

Forms are sparse maps from strictly increasing index tuples (0-based) to
:class:`Poly` coefficients. A form whose degree lies outside ``[0, n]`` is
the zero object of that degree; it carries no components.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import ChartMismatchError, DegreeError
from .polyring import Poly, as_fraction, default_names

Index = tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"gf", "gv", "d", "I", "L", "Lhat", "Lhatv", "comm", "scale"}


@dataclass(frozen=True)
class Chart:
    """Coordinate chart: dimension ``n``, coordinate names and the nonzero constant ``k``."""

    n: int
    k: Fraction = Fraction(1)
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"chart dimension must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "k", as_fraction(self.k))
        if self.k == 0:
            raise ValueError("k must be nonzero")
        names = tuple(self.names) if self.names else default_names(self.n)
        if len(names) != self.n:
            raise ValueError(f"{len(names)} coordinate names for dimension {self.n}")
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be distinct")
        for name in names:
            # 'd...' and 'e<i>' spell basis elements in the text syntax
            if not _NAME_RE.match(name) or name in _RESERVED or name[0] in "de":
                raise ValueError(f"invalid coordinate name {name!r}")
        object.__setattr__(self, "names", names)

    def zero(self) -> Poly:
        return Poly.zero(self.n)

    def one(self) -> Poly:
        return Poly.const(self.n, 1)

    def const(self, c) -> Poly:
        return Poly.const(self.n, c)

    def coord(self, i: int) -> Poly:
        """The coordinate function ``x_{i+1}``."""
        return Poly.var(self.n, i)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def poly(self, text: str) -> Poly:
        return Poly.parse(text, self.names)


def _check_same_chart(a: Chart, b: Chart) -> None:
    if a is not b and a != b:
        raise ChartMismatchError(f"chart mismatch: {a} vs {b}")


def sort_with_sign(indices: Sequence[int]) -> tuple[int, Index]:
    """Sort an index tuple, returning (parity sign, sorted tuple); sign is 0 on a repeated index."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort counts transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class OrdForm:
    """An ordinary p-form ``sum_I f_I dx_I`` on a chart."""

    __slots__ = ("chart", "degree", "_comps", "_hash")

    def __init__(self, chart: Chart, degree: int, comps: Mapping[Iterable[int], Poly] | None = None):
        self.chart = chart
        self.degree = degree
        out: dict[Index, Poly] = {}
        if comps:
            if not 0 <= degree <= chart.n:
                if any(p for p in comps.values()):
                    raise DegreeError(f"nonzero {degree}-form on a chart of dimension {chart.n}")
            else:
                for idx, f in comps.items():
                    idx = tuple(idx)
                    if len(idx) != degree or any(not 0 <= i < chart.n for i in idx):
                        raise DegreeError(f"index {idx} invalid for a {degree}-form in dimension {chart.n}")
                    if not isinstance(f, Poly):
                        f = chart.const(f)
                    elif f.nvars != chart.n:
                        raise ChartMismatchError("coefficient has wrong number of variables")
                    sign, key = sort_with_sign(idx)
                    if sign == 0 or not f:
                        continue
                    total = out.get(key, chart.zero()) + (f if sign > 0 else -f)
                    if total:
                        out[key] = total
                    else:
                        out.pop(key, None)
        self._comps = out
        self._hash = None

    @classmethod
    def _raw(cls, chart: Chart, degree: int, comps: dict[Index, Poly]) -> OrdForm:
        obj = cls.__new__(cls)
        obj.chart = chart
        obj.degree = degree
        obj._comps = comps
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> OrdForm:
        return cls._raw(chart, degree, {})

    @classmethod
    def scalar(cls, chart: Chart, f) -> OrdForm:
        if not isinstance(f, Poly):
            f = chart.const(f)
        return cls._raw(chart, 0, {(): f} if f else {})

    @classmethod
    def basis(cls, chart: Chart, *indices: int, coeff: Poly | None = None) -> OrdForm:
        """``coeff * dx_{i1} ^ ... ^ dx_{ip}`` with 0-based indices in any order."""
        return cls(chart, len(indices), {tuple(indices): coeff if coeff is not None else chart.one()})

    # -- inspection -------------------------------------------------------

    @property
    def components(self) -> list[tuple[Index, Poly]]:
        """Components sorted lexicographically by multi-index."""
        return sorted(self._comps.items())

    def __getitem__(self, idx: Iterable[int]) -> Poly:
        sign, key = sort_with_sign(tuple(idx))
        f = self._comps.get(key)
        if f is None or sign == 0:
            return self.chart.zero()
        return f if sign > 0 else -f

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self) -> bool:
        return bool(self._comps)

    def as_poly(self) -> Poly:
        """Coefficient of a 0-form."""
        if self.degree != 0:
            raise DegreeError(f"{self.degree}-form is not a scalar")
        return self._comps.get((), self.chart.zero())

    # -- linear structure -------------------------------------------------

    def _same(self, other: OrdForm) -> None:
        _check_same_chart(self.chart, other.chart)
        if self.degree != other.degree:
            raise DegreeError(f"cannot add a {self.degree}-form and a {other.degree}-form")

    def __add__(self, other: OrdForm) -> OrdForm:
        if not isinstance(other, OrdForm):
            return NotImplemented
        self._same(other)
        out = dict(self._comps)
        for key, f in other._comps.items():
            s = out[key] + f if key in out else f
            if s:
                out[key] = s
            else:
                del out[key]
        return OrdForm._raw(self.chart, self.degree, out)

    def __neg__(self) -> OrdForm:
        return OrdForm._raw(self.chart, self.degree, {k: -f for k, f in self._comps.items()})

    def __sub__(self, other: OrdForm) -> OrdForm:
        if not isinstance(other, OrdForm):
            return NotImplemented
        return self + (-other)

    def scale(self, f) -> OrdForm:
        """Multiply every component by a scalar function or rational."""
        if isinstance(f, Poly) and f.nvars != self.chart.n:
            raise ChartMismatchError("scalar has wrong number of variables")
        out = {}
        for key, g in self._comps.items():
            h = g * f
            if h:
                out[key] = h
        return OrdForm._raw(self.chart, self.degree, out)

    def __mul__(self, other) -> OrdForm:
        if isinstance(other, (Poly, int, Rational)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other: OrdForm) -> OrdForm:
        return wedge_ord(self, other)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrdForm):
            return NotImplemented
        return self.chart == other.chart and self.degree == other.degree and self._comps == other._comps

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._comps.items())))
        return self._hash

    def __repr__(self) -> str:
        from .syntax import format_ordform

        return f"OrdForm<{self.degree}>({format_ordform(self)})"


class OrdVec:
    """Ordinary vector field ``sum_i v^i d/dx_i``."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Sequence | None = None):
        self.chart = chart
        if comps is None:
            comps = [chart.zero()] * chart.n
        if len(comps) != chart.n:
            raise ChartMismatchError(f"{len(comps)} components for dimension {chart.n}")
        out = []
        for c in comps:
            if not isinstance(c, Poly):
                c = chart.const(c)
            elif c.nvars != chart.n:
                raise ChartMismatchError("component has wrong number of variables")
            out.append(c)
        self.comps = tuple(out)

    @classmethod
    def zero(cls, chart: Chart) -> OrdVec:
        return cls(chart)

    @classmethod
    def basis(cls, chart: Chart, i: int, coeff: Poly | None = None) -> OrdVec:
        comps = [chart.zero()] * chart.n
        comps[i] = coeff if coeff is not None else chart.one()
        return cls(chart, comps)

    def __getitem__(self, i: int) -> Poly:
        return self.comps[i]

    def is_zero(self) -> bool:
        return not any(self.comps)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: OrdVec) -> OrdVec:
        if not isinstance(other, OrdVec):
            return NotImplemented
        _check_same_chart(self.chart, other.chart)
        return OrdVec(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> OrdVec:
        return OrdVec(self.chart, [-a for a in self.comps])

    def __sub__(self, other: OrdVec) -> OrdVec:
        if not isinstance(other, OrdVec):
            return NotImplemented
        return self + (-other)

    def scale(self, f) -> OrdVec:
        return OrdVec(self.chart, [a * f for a in self.comps])

    def __mul__(self, other) -> OrdVec:
        if isinstance(other, (Poly, int, Rational)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, f: Poly) -> Poly:
        """Directional derivative ``v(f)``."""
        return lie_ord_scalar(self, f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrdVec):
            return NotImplemented
        return self.chart == other.chart and self.comps == other.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def __repr__(self) -> str:
        from .syntax import format_ordvec

        return f"OrdVec({format_ordvec(self)})"


# -- operations -------------------------------------------------------------


def wedge_ord(a: OrdForm, b: OrdForm) -> OrdForm:
    _check_same_chart(a.chart, b.chart)
    chart = a.chart
    degree = a.degree + b.degree
    if not 0 <= degree <= chart.n or not a._comps or not b._comps:
        return OrdForm.zero(chart, degree)
    out: dict[Index, Poly] = {}
    for i1, f in a._comps.items():
        for i2, g in b._comps.items():
            if set(i1) & set(i2):
                continue
            # parity = number of pairs (x in i1, y in i2) with x > y
            inversions = sum(1 for x in i1 for y in i2 if x > y)
            key = tuple(sorted(i1 + i2))
            fg = f * g
            if inversions & 1:
                fg = -fg
            s = out[key] + fg if key in out else fg
            if s:
                out[key] = s
            else:
                del out[key]
    return OrdForm._raw(chart, degree, out)


def d_ord(a: OrdForm) -> OrdForm:
    chart = a.chart
    degree = a.degree + 1
    if not 0 <= degree <= chart.n or not a._comps:
        return OrdForm.zero(chart, degree)
    out: dict[Index, Poly] = {}
    for idx, f in a._comps.items():
        for i in range(chart.n):
            if i in idx:
                continue
            df = f.diff(i)
            if not df:
                continue
            pos = sum(1 for j in idx if j < i)
            key = idx[:pos] + (i,) + idx[pos:]
            if pos & 1:
                df = -df
            s = out[key] + df if key in out else df
            if s:
                out[key] = s
            else:
                del out[key]
    return OrdForm._raw(chart, degree, out)


def contract_ord(v: OrdVec, a: OrdForm) -> OrdForm:
    _check_same_chart(v.chart, a.chart)
    chart = a.chart
    degree = a.degree - 1
    if not 0 <= degree <= chart.n or not a._comps:
        return OrdForm.zero(chart, degree)
    out: dict[Index, Poly] = {}
    for idx, f in a._comps.items():
        for r, i in enumerate(idx):
            vi = v.comps[i]
            if not vi:
                continue
            term = vi * f
            if r & 1:
                term = -term
            key = idx[:r] + idx[r + 1:]
            s = out[key] + term if key in out else term
            if s:
                out[key] = s
            else:
                del out[key]
    return OrdForm._raw(chart, degree, out)


def lie_ord(v: OrdVec, a: OrdForm) -> OrdForm:
    """Lie derivative by Cartan's formula ``i_v d a + d i_v a``."""
    return contract_ord(v, d_ord(a)) + d_ord(contract_ord(v, a))


def commutator_ord(v: OrdVec, w: OrdVec) -> OrdVec:
    _check_same_chart(v.chart, w.chart)
    return OrdVec(v.chart, [lie_ord_scalar(v, wi) - lie_ord_scalar(w, vi) for vi, wi in zip(v.comps, w.comps)])


def lie_ord_scalar(v: OrdVec, f: Poly) -> Poly:
    if f.nvars != v.chart.n:
        raise ChartMismatchError("scalar has wrong number of variables")
    total = v.chart.zero()
    for i, vi in enumerate(v.comps):
        if vi:
            total = total + vi * f.diff(i)
    return total


def dx(chart: Chart, *indices: int) -> OrdForm:
    """Basis form ``dx_{i1} ^ ... ^ dx_{ip}`` (0-based indices)."""
    return OrdForm.basis(chart, *indices)


def all_indices(n: int, p: int) -> list[Index]:
    if not 0 <= p <= n:
        return []
    return list(combinations(range(n), p))
