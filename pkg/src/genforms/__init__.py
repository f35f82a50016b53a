"""Exact calculus of generalized differential forms and generalized vector fields."""

from .errors import ChartMismatchError, ConsistencyError, DegreeError, EvalError, GenFormsError, ParseError
from .exterior import (
    Chart,
    OrdForm,
    OrdVec,
    commutator_ord,
    contract_ord,
    d_ord,
    dx,
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
from .polyring import Poly, poly_add, poly_eval, poly_mul, poly_partial
from .syntax import evaluate, format_value, parse

__version__ = "0.1.0"
