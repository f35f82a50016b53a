"""Text syntax: canonical formatting, a small expression language and its evaluator.

Grammar::

    expr   := primary ('^' primary)*                 # left-associative wedge
    primary:= 'gf' '(' int ';' lin ';' lin ')'
            | 'gv' '(' lin ';' lin ')'
            | 'd' '(' expr ')'
            | ('I'|'L'|'Lhat'|'Lhatv'|'comm'|'scale') '(' expr ',' expr ')'
            | '(' expr ')'
    lin    := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := rational | var ['^' int] | dvar ('^' dvar)* | 'e'int
            | '(' lin ')' ['^' int] | '[' lin ']'

``dvar`` is ``d`` followed by a coordinate name (``dx1``, ``dt``); ``e<i>`` is
the i-th coordinate vector field, 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import ChartMismatchError, DegreeError, EvalError, GenFormsError, ParseError
from .exterior import Chart, OrdForm, OrdVec
from .gforms import (
    GenForm,
    GenVec,
    gcommutator,
    gcontract,
    gd,
    glie_cartan,
    glie_hat,
    glie_hat_vec,
    gscale,
    gwedge,
)
from .polyring import Poly

# -- canonical formatting -----------------------------------------------------


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    return p.to_str(names)


def _format_terms(items: list[tuple[Poly, str]], names: Sequence[str]) -> str:
    pieces = []
    for coeff, basis in items:
        if coeff.is_monomial():
            (mono, c), = coeff.terms
            negative = c < 0
            body = Poly(coeff.nvars, {mono: abs(c)}).to_str(names)
            body = basis if body == "1" else f"{body}*{basis}"
        else:
            negative = False
            body = f"({coeff.to_str(names)})*{basis}"
        if not pieces:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "[" + "".join(pieces) + "]"


def format_ordform(a: OrdForm) -> str:
    names = a.chart.names
    if a.is_zero():
        return "0"
    if a.degree == 0:
        return a.as_poly().to_str(names)
    items = [(f, "^".join("d" + names[i] for i in idx)) for idx, f in a.components]
    return _format_terms(items, names)


def format_ordvec(v: OrdVec) -> str:
    if v.is_zero():
        return "0"
    names = v.chart.names
    return _format_terms([(c, f"e{i + 1}") for i, c in enumerate(v.comps) if c], names)


def format_genform(a: GenForm) -> str:
    return f"gf({a.degree}; {format_ordform(a.first)}; {format_ordform(a.second)})"


def format_genvec(v: GenVec) -> str:
    return f"gv({format_ordvec(v.v1)}; {v.v0.to_str(v.chart.names)})"


def format_value(value) -> str:
    if isinstance(value, GenForm):
        return format_genform(value)
    if isinstance(value, GenVec):
        return format_genvec(value)
    if isinstance(value, OrdForm):
        return format_ordform(value)
    if isinstance(value, OrdVec):
        return format_ordvec(value)
    if isinstance(value, Poly):
        return value.to_str()
    raise TypeError(f"cannot format {type(value).__name__}")


# -- tokens -------------------------------------------------------------------

_PUNCT = set("()[];,^*+-/")


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'punct', 'eof'
    text: str
    start: int
    end: int
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start, start_col = i, col
        if ch.isdigit():
            while i < n and source[i].isdigit():
                i += 1
            kind = "num"
        elif ch.isalpha() or ch == "_":
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            kind = "ident"
        elif ch in _PUNCT:
            i += 1
            kind = "punct"
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        col += i - start
        tokens.append(Token(kind, source[start:i], start, i, line, start_col))
    tokens.append(Token("eof", "", n, n, line, col))
    return tokens


# -- AST ----------------------------------------------------------------------

Span = tuple[int, int]

# kinds of literal sub-expressions
ZERO = ("zero",)
VEC = ("vec",)


def form_kind(p: int) -> tuple:
    return ("form", p)


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class DBasis:
    names: tuple[str, ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class EBasis:
    index: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    span: Span = field(default=(0, 0), compare=False)


LinNode = Union[Num, Var, DBasis, EBasis, Add, Neg, Mul, Pow]


@dataclass(frozen=True)
class PolyLit:
    """A literal slot: scalar-, form- or vector-valued combination with polynomial coefficients."""

    body: LinNode
    kind: tuple
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class GenFormLit:
    degree: int
    first: PolyLit
    second: PolyLit
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class GenVecLit:
    vector: PolyLit
    scalar: PolyLit
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Wedge:
    left: object
    right: object
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class GD:
    operand: object
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Binary:
    """Two-argument operator; subclasses differ only in dispatch."""

    left: object
    right: object
    span: Span = field(default=(0, 0), compare=False)


class Contract(Binary):
    keyword = "I"
    kinds = ("vec", "form")


class LieCartan(Binary):
    keyword = "L"
    kinds = ("vec", "form")


class LieHat(Binary):
    keyword = "Lhat"
    kinds = ("vec", "form")


class LieHatVec(Binary):
    keyword = "Lhatv"
    kinds = ("vec", "vec")


class Commutator(Binary):
    keyword = "comm"
    kinds = ("vec", "vec")


class GScale(Binary):
    keyword = "scale"
    kinds = ("form", "vec")


_BINARY = {cls.keyword: cls for cls in (Contract, LieCartan, LieHat, LieHatVec, Commutator, GScale)}
_RESULT_KIND = {
    Contract: "form",
    LieCartan: "form",
    LieHat: "form",
    LieHatVec: "vec",
    Commutator: "vec",
    GScale: "vec",
}
KEYWORDS = frozenset({"gf", "gv", "d"} | set(_BINARY))

Ast = Union[GenFormLit, GenVecLit, Wedge, GD, Binary]


def result_kind(node) -> str:
    """'form' or 'vec' for a top-level node."""
    if isinstance(node, (GenFormLit, Wedge, GD)):
        return "form"
    if isinstance(node, GenVecLit):
        return "vec"
    return _RESULT_KIND[type(node)]


# -- parser -------------------------------------------------------------------


def _is_dbasis(text: str) -> bool:
    return len(text) > 1 and text[0] == "d" and text not in KEYWORDS


def _is_ebasis(text: str) -> bool:
    return len(text) > 1 and text[0] == "e" and text[1:].isdigit()


def _describe(token: Token) -> str:
    return "end of input" if token.kind == "eof" else repr(token.text)


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self._expected: set[str] = set()
        self._expected_at = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _note(self, what: str) -> None:
        if self._expected_at != self.pos:
            self._expected = set()
            self._expected_at = self.pos
        self._expected.add(what)

    def at(self, text: str) -> bool:
        self._note(f"'{text}'")
        t = self.tok
        return t.kind in ("punct", "ident") and t.text == text

    def at_kind(self, kind: str, label: str) -> bool:
        self._note(label)
        return self.tok.kind == kind

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail()
        return self.advance()

    def fail(self, message: str | None = None):
        t = self.tok
        expected = frozenset(self._expected) if self._expected_at == self.pos else frozenset()
        raise ParseError(message or f"unexpected {_describe(t)}", t.line, t.column, expected)

    def type_error(self, message: str, span: Span):
        line, col = _line_col(self.source, span[0])
        raise ParseError(f"type error: {message}", line, col)

    def span_from(self, start: Token) -> Span:
        return (start.start, self.tokens[self.pos - 1].end)

    # top level
    def parse(self):
        node = self.expr()
        if not self.at_kind("eof", "end of input"):
            self.fail()
        return node

    def expr(self):
        start = self.tok
        node = self.primary()
        while self.at("^"):
            self.advance()
            right = self.primary()
            span = self.span_from(start)
            for side in (node, right):
                if result_kind(side) != "form":
                    self.type_error("'^' needs generalized forms on both sides", side.span)
            node = Wedge(node, right, span)
        return node

    def primary(self):
        start = self.tok
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if self.at("gf"):
            self.advance()
            self.expect("(")
            degree = self.signed_int()
            self.expect(";")
            first = self.slot()
            self.expect(";")
            second = self.slot()
            self.expect(")")
            span = self.span_from(start)
            self._check_slot(first, degree, "first")
            self._check_slot(second, degree + 1, "second")
            return GenFormLit(degree, first, second, span)
        if self.at("gv"):
            self.advance()
            self.expect("(")
            vec = self.slot()
            self.expect(";")
            scalar = self.slot()
            self.expect(")")
            if vec.kind not in (ZERO, VEC):
                self.type_error("first slot of gv must be a vector field", vec.span)
            if scalar.kind not in (ZERO, form_kind(0)):
                self.type_error("second slot of gv must be a scalar", scalar.span)
            return GenVecLit(vec, scalar, self.span_from(start))
        if self.at("d"):
            self.advance()
            self.expect("(")
            operand = self.expr()
            self.expect(")")
            if result_kind(operand) != "form":
                self.type_error("d needs a generalized form", operand.span)
            return GD(operand, self.span_from(start))
        for keyword, cls in _BINARY.items():
            if self.at(keyword):
                self.advance()
                self.expect("(")
                left = self.expr()
                self.expect(",")
                right = self.expr()
                self.expect(")")
                for arg, want in zip((left, right), cls.kinds):
                    got = result_kind(arg)
                    if got != want:
                        self.type_error(f"{keyword} expects a {want} here, got a {got}", arg.span)
                return cls(left, right, self.span_from(start))
        self.fail()

    def _check_slot(self, slot: PolyLit, degree: int, which: str) -> None:
        if slot.kind == ZERO:
            return
        if slot.kind == VEC:
            self.type_error(f"{which} slot of gf must be a form, got a vector", slot.span)
        if degree < 0 or slot.kind != form_kind(degree):
            self.type_error(f"{which} slot of gf must have degree {degree}, got {slot.kind[1]}", slot.span)

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        elif self.at("+"):
            self.advance()
        if not self.at_kind("num", "integer"):
            self.fail()
        return sign * int(self.advance().text)

    # literal slots
    def slot(self) -> PolyLit:
        start = self.tok
        body, kind = self.lin()
        return PolyLit(body, kind, self.span_from(start))

    def lin(self):
        start = self.tok
        negate = False
        if self.at("-"):
            self.advance()
            negate = True
        elif self.at("+"):
            self.advance()
        node, kind = self.term()
        if negate:
            node = Neg(node, self.span_from(start))
        while True:
            if self.at("+"):
                self.advance()
                right, rkind = self.term()
                kind = self._join_add(kind, rkind, right.span)
                node = Add(node, right, self.span_from(start))
            elif self.at("-"):
                self.advance()
                rstart = self.tokens[self.pos - 1]
                right, rkind = self.term()
                kind = self._join_add(kind, rkind, right.span)
                node = Add(node, Neg(right, self.span_from(rstart)), self.span_from(start))
            else:
                return node, kind

    def _join_add(self, a, b, span):
        if a == ZERO:
            return b
        if b == ZERO or a == b:
            return a
        self.type_error(f"cannot add {_kind_name(a)} and {_kind_name(b)}", span)

    def term(self):
        start = self.tok
        node, kind = self.factor()
        while self.at("*"):
            self.advance()
            right, rkind = self.factor()
            kind = self._join_mul(kind, rkind, self.span_from(start))
            node = Mul(node, right, self.span_from(start))
        return node, kind

    def _join_mul(self, a, b, span):
        if a == ZERO or b == ZERO:
            return ZERO
        if a == VEC and b == VEC:
            self.type_error("cannot multiply two vectors", span)
        if VEC in (a, b):
            other = b if a == VEC else a
            if other != form_kind(0):
                self.type_error("a vector can only be multiplied by a scalar", span)
            return VEC
        return form_kind(a[1] + b[1])

    def factor(self):
        start = self.tok
        if self.at_kind("num", "number"):
            value = Fraction(int(self.advance().text))
            if self.at("/"):
                self.advance()
                if not self.at_kind("num", "integer"):
                    self.fail()
                den = int(self.advance().text)
                if den == 0:
                    self.fail("zero denominator")
                value = value / den
            node = Num(value, self.span_from(start))
            return self._maybe_pow(node, ZERO if value == 0 else form_kind(0), start)
        if self.at("("):
            self.advance()
            node, kind = self.lin()
            self.expect(")")
            return self._maybe_pow(node, kind, start)
        if self.at("["):
            self.advance()
            node, kind = self.lin()
            self.expect("]")
            return node, kind
        if self.at_kind("ident", "identifier"):
            text = self.tok.text
            if text in KEYWORDS:
                self.fail(f"keyword {text!r} inside a literal")
            self.advance()
            if _is_ebasis(text):
                return EBasis(int(text[1:]), self.span_from(start)), VEC
            if _is_dbasis(text):
                names = [text[1:]]
                while self.at("^"):
                    self.advance()
                    if not (self.tok.kind == "ident" and _is_dbasis(self.tok.text)):
                        self._note("differential")
                        self.fail()
                    names.append(self.advance().text[1:])
                return DBasis(tuple(names), self.span_from(start)), form_kind(len(names))
            return self._maybe_pow(Var(text, self.span_from(start)), form_kind(0), start)
        self.fail()

    def _maybe_pow(self, node, kind, start):
        if self.at("^"):
            if kind not in (ZERO, form_kind(0)):
                self.type_error("only scalars can be raised to a power", node.span)
            self.advance()
            if not self.at_kind("num", "integer"):
                self.fail()
            exponent = int(self.advance().text)
            node = Pow(node, exponent, self.span_from(start))
            if kind == ZERO and exponent == 0:
                kind = form_kind(0)
        return node, kind


def _kind_name(kind) -> str:
    if kind == VEC:
        return "a vector"
    if kind == ZERO:
        return "zero"
    return f"a {kind[1]}-form"


def _line_col(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    col = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse(source: str):
    """Parse an expression into a type-checked AST."""
    return Parser(source).parse()


def parse_lin(source: str) -> PolyLit:
    p = Parser(source)
    node = p.slot()
    if not p.at_kind("eof", "end of input"):
        p.fail()
    return node


# -- unparse ------------------------------------------------------------------


def _unparse_lin(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, DBasis):
        return "^".join("d" + n for n in node.names)
    if isinstance(node, EBasis):
        return f"e{node.index}"
    if isinstance(node, Add):
        right = node.right
        if isinstance(right, Neg):
            return f"{_unparse_lin(node.left)} - ({_unparse_lin(right.operand)})"
        if isinstance(right, Add):
            return f"{_unparse_lin(node.left)} + ({_unparse_lin(right)})"
        return f"{_unparse_lin(node.left)} + {_unparse_lin(right)}"
    if isinstance(node, Neg):
        return f"-({_unparse_lin(node.operand)})"
    if isinstance(node, Mul):
        return f"({_unparse_lin(node.left)})*({_unparse_lin(node.right)})"
    if isinstance(node, Pow):
        return f"({_unparse_lin(node.base)})^{node.exponent}"
    raise TypeError(node)


def unparse(node) -> str:
    """Render an AST back to source text; ``parse(unparse(t)) == t``."""
    if isinstance(node, PolyLit):
        return _unparse_lin(node.body)
    if isinstance(node, GenFormLit):
        return f"gf({node.degree}; {unparse(node.first)}; {unparse(node.second)})"
    if isinstance(node, GenVecLit):
        return f"gv({unparse(node.vector)}; {unparse(node.scalar)})"
    if isinstance(node, Wedge):
        right = unparse(node.right)
        if isinstance(node.right, Wedge):
            right = f"({right})"
        return f"{unparse(node.left)} ^ {right}"
    if isinstance(node, GD):
        return f"d({unparse(node.operand)})"
    if isinstance(node, Binary):
        return f"{node.keyword}({unparse(node.left)}, {unparse(node.right)})"
    raise TypeError(node)


# -- evaluation ---------------------------------------------------------------


class _Evaluator:
    def __init__(self, chart: Chart, source: str | None):
        self.chart = chart
        self.source = source

    def error(self, message: str, span: Span):
        raise EvalError(message, span, self.source)

    def lin(self, node):
        """Value of a slot expression: OrdForm, OrdVec, or None for literal zero."""
        chart = self.chart
        if isinstance(node, Num):
            return OrdForm.scalar(chart, node.value) if node.value else None
        if isinstance(node, Var):
            try:
                return OrdForm.scalar(chart, chart.coord(chart.index_of(node.name)))
            except KeyError as exc:
                self.error(str(exc.args[0]), node.span)
        if isinstance(node, DBasis):
            try:
                indices = [chart.index_of(name) for name in node.names]
            except KeyError as exc:
                self.error(str(exc.args[0]), node.span)
            return OrdForm.basis(chart, *indices)
        if isinstance(node, EBasis):
            if not 1 <= node.index <= chart.n:
                self.error(f"vector basis e{node.index} out of range 1..{chart.n}", node.span)
            return OrdVec.basis(chart, node.index - 1)
        if isinstance(node, Neg):
            value = self.lin(node.operand)
            return None if value is None else -value
        if isinstance(node, Add):
            a, b = self.lin(node.left), self.lin(node.right)
            if a is None:
                return b
            if b is None:
                return a
            return a + b
        if isinstance(node, Mul):
            a, b = self.lin(node.left), self.lin(node.right)
            if a is None or b is None:
                return None
            if isinstance(a, OrdVec):
                return a.scale(b.as_poly())
            if isinstance(b, OrdVec):
                return b.scale(a.as_poly())
            return a ^ b
        if isinstance(node, Pow):
            base = self.lin(node.base)
            if base is None:
                return OrdForm.scalar(chart, 1) if node.exponent == 0 else None
            return OrdForm.scalar(chart, base.as_poly() ** node.exponent)
        raise TypeError(node)

    def form_slot(self, slot: PolyLit, degree: int) -> OrdForm:
        value = self.lin(slot.body)
        if value is None:
            return OrdForm.zero(self.chart, degree)
        return value

    def eval(self, node):
        chart = self.chart
        try:
            if isinstance(node, GenFormLit):
                p = node.degree
                first = self.form_slot(node.first, p)
                second = self.form_slot(node.second, p + 1)
                return GenForm(chart, p, first, second)
            if isinstance(node, GenVecLit):
                vec = self.lin(node.vector.body)
                scalar = self.lin(node.scalar.body)
                return GenVec(
                    vec if vec is not None else OrdVec.zero(chart),
                    scalar.as_poly() if scalar is not None else chart.zero(),
                )
            if isinstance(node, Wedge):
                return gwedge(self.eval(node.left), self.eval(node.right))
            if isinstance(node, GD):
                return gd(self.eval(node.operand))
            if isinstance(node, Binary):
                left, right = self.eval(node.left), self.eval(node.right)
                return _DISPATCH[type(node)](left, right)
        except (DegreeError, ChartMismatchError) as exc:
            self.error(str(exc), node.span)
        raise TypeError(node)


_DISPATCH = {
    Contract: gcontract,
    LieCartan: glie_cartan,
    LieHat: glie_hat,
    LieHatVec: glie_hat_vec,
    Commutator: gcommutator,
    GScale: gscale,
}


def evaluate(ast, chart: Chart, source: str | None = None):
    """Evaluate a parsed AST on ``chart``; returns a GenForm or GenVec."""
    return _Evaluator(chart, source).eval(ast)


def eval_source(source: str, chart: Chart):
    return evaluate(parse(source), chart, source)


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    chart = Chart(len(names), 1, tuple(names))
    lit = parse_lin(text)
    if lit.kind not in (ZERO, form_kind(0)):
        line, col = _line_col(text, lit.span[0])
        raise ParseError(f"expected a polynomial, got {_kind_name(lit.kind)}", line, col)
    value = _Evaluator(chart, text).lin(lit.body)
    return chart.zero() if value is None else value.as_poly()


def parse_genform(text: str, chart: Chart) -> GenForm:
    value = eval_source(text, chart)
    if not isinstance(value, GenForm):
        raise GenFormsError("expected a generalized form")
    return value


def parse_genvec(text: str, chart: Chart) -> GenVec:
    value = eval_source(text, chart)
    if not isinstance(value, GenVec):
        raise GenFormsError("expected a generalized vector")
    return value
