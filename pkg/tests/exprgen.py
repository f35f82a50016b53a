"""Random well-typed expressions for the round-trip tests."""

import random

from genforms.exterior import Chart
from genforms.suites import Generator
from genforms.syntax import format_ordform, format_ordvec, format_poly

BINARY_FORM = ("L", "Lhat")
BINARY_VEC = ("comm", "Lhatv")


class ExprGen:
    def __init__(self, seed, chart: Chart, depth=3):
        self.rng = random.Random(seed)
        self.chart = chart
        self.depth = depth
        self.gen = Generator(self.rng, chart, max_degree=2, max_terms=2)

    def _names(self):
        return self.chart.names

    def _handwritten(self, degree):
        # noncanonical but equivalent spellings: parens, powers, brackets
        names = self._names()
        x = self.rng.choice(names)
        c = self.rng.choice(["1/2", "3", "2/3", "1"])
        head = self.rng.choice([f"({x} + {c})^2", f"-{c}*{x}", f"[{x} - {c}]", f"-{x}^2"])
        if degree == 0:
            return head
        picks = sorted(self.rng.sample(range(self.chart.n), degree))
        basis = "^".join("d" + names[i] for i in picks)
        return f"{head}*{basis}"

    def slot(self, degree):
        if degree < 0 or degree > self.chart.n:
            return "0"
        if self.rng.random() < 0.25:
            return self._handwritten(degree)
        return format_ordform(self.gen.ordform(degree))

    def form(self, p, depth=None):
        depth = self.depth if depth is None else depth
        n = self.chart.n
        options = ["lit"]
        if depth > 0:
            if p - 1 >= -1:
                options.append("d")
            options += ["wedge", "L"]
            if p + 1 <= n:
                options.append("I")
        choice = self.rng.choice(options)
        if choice == "lit":
            return f"gf({p}; {self.slot(p)}; {self.slot(p + 1)})"
        if choice == "d":
            return f"d({self.form(p - 1, depth - 1)})"
        if choice == "wedge":
            a = self.rng.randint(max(-1, p - n), min(n, p + 1))
            return f"{self.form(a, depth - 1)} ^ ({self.form(p - a, depth - 1)})"
        if choice == "I":
            return f"I({self.vec(depth - 1)}, {self.form(p + 1, depth - 1)})"
        op = self.rng.choice(BINARY_FORM)
        return f"{op}({self.vec(depth - 1)}, {self.form(p, depth - 1)})"

    def vec(self, depth=None):
        depth = self.depth if depth is None else depth
        choice = self.rng.choice(["lit", "lit", "bin", "scale"] if depth > 0 else ["lit"])
        if choice == "lit":
            v = self.gen.ordvec()
            return f"gv({format_ordvec(v)}; {format_poly(self.gen.poly())})"
        if choice == "scale":
            return f"scale({self.form(0, depth - 1)}, {self.vec(depth - 1)})"
        op = self.rng.choice(BINARY_VEC)
        return f"{op}({self.vec(depth - 1)}, {self.vec(depth - 1)})"

    def expr(self):
        if self.rng.random() < 0.3:
            return self.vec()
        return self.form(self.rng.randint(-1, self.chart.n))


def expressions(count, seed=0):
    """``count`` (source, chart) pairs over a few charts."""
    charts = [Chart(1), Chart(2), Chart(2, -1), Chart(3, "1/2")]
    out = []
    for i in range(count):
        chart = charts[i % len(charts)]
        out.append((ExprGen(f"{seed}/{i}", chart, depth=1 + i % 3).expr(), chart))
    return out
