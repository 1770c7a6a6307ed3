"""Exact verification of rational pairs whose compositions with exp share values."""

from .field import QQ, Field, FieldElem, field_make
from .parse import ParseError, parse_expression, parse_poly, parse_ratfunc, parse_scalar
from .ratfunc import INF, MobiusMap, RatFunc, critical_values, value_divisor
from .sharing import SharedPairSpec, check_pair, multiplicity_pattern, sharing_certificate
from .curve import (
    aux_quadratics,
    build_H0,
    fiber_check,
    implicitize,
    on_curve,
    puiseux_branches,
    resultant_pair,
    shape_check,
)
from .nevanlinna import milestone_report, proof_function_check, proximity, sample
from .search import build_constraints, count_constraints, exact_verify, numeric_search

__version__ = "0.1.0"

__all__ = [
    "INF",
    "QQ",
    "Field",
    "FieldElem",
    "MobiusMap",
    "ParseError",
    "RatFunc",
    "SharedPairSpec",
    "aux_quadratics",
    "build_H0",
    "build_constraints",
    "check_pair",
    "count_constraints",
    "critical_values",
    "exact_verify",
    "fiber_check",
    "field_make",
    "implicitize",
    "milestone_report",
    "multiplicity_pattern",
    "numeric_search",
    "on_curve",
    "parse_expression",
    "parse_poly",
    "parse_ratfunc",
    "parse_scalar",
    "proof_function_check",
    "proximity",
    "puiseux_branches",
    "resultant_pair",
    "sample",
    "shape_check",
    "sharing_certificate",
    "value_divisor",
]
