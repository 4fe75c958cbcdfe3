"""Exact arithmetic foundations: rationals, weight polynomials, trig polynomials."""

from .linalg import SparseEliminator, det_exact, nullspace, rank, rref
from .rational import format_rational, parse_rational, to_rational
from .trig import (
    DEFAULT_DEGREE_CAP,
    DegreeCapExceeded,
    TrigPoly,
    current_degree_cap,
    degree_cap,
    trig_diff,
    trig_mean,
    trig_mul,
)
from .wpoly import SYMBOLS, WeightPolynomial, poly_eval

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DegreeCapExceeded",
    "SYMBOLS",
    "SparseEliminator",
    "TrigPoly",
    "WeightPolynomial",
    "current_degree_cap",
    "degree_cap",
    "det_exact",
    "format_rational",
    "nullspace",
    "parse_rational",
    "poly_eval",
    "rank",
    "rref",
    "to_rational",
    "trig_diff",
    "trig_mean",
    "trig_mul",
]
