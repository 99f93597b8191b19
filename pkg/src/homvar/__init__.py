"""Exact symbolic calculus for second-order homogeneous variational
problems in two independent variables."""

from .jet_index import JetCoord, MultiIndex, enumerate_indices
from .symexpr import (
    Polynomial,
    Scalar,
    evaluate,
    is_zero,
    max_order,
    partial,
    rational,
    scalar_arith,
    scalar_equals,
)
from .forms import Form, exterior_d, form_equals, form_linear, order_profile, wedge
from .calculus_ops import (
    VectorField,
    contract,
    coord_field_ops,
    d_total,
    delta_ops,
    lie,
    p1_apply,
    p2_apply,
    q1_apply,
    q2_apply,
    s_iterated,
    s_on_field,
    s_tensor,
    s_vertical,
    total_field,
)
from .variational import (
    HomogeneityReport,
    Lagrangian,
    NullityReport,
    ProjectabilityReport,
    check_homogeneity,
    determinant_fixture,
    euler_lagrange,
    fundamental_form,
    hilbert_forms,
    is_null,
    nullity_closedness_check,
    projectability,
    prolong_pullback,
    section4_fixture,
)
from .parser import ParseError, parse, parse_map, parse_scalar
from .render import render
from .suite import SuiteReport, run_suite

__all__ = [
    "JetCoord",
    "MultiIndex",
    "enumerate_indices",
    "Polynomial",
    "Scalar",
    "rational",
    "scalar_arith",
    "partial",
    "is_zero",
    "scalar_equals",
    "evaluate",
    "max_order",
    "Form",
    "wedge",
    "form_linear",
    "exterior_d",
    "form_equals",
    "order_profile",
    "VectorField",
    "total_field",
    "contract",
    "lie",
    "d_total",
    "s_vertical",
    "s_iterated",
    "s_on_field",
    "s_tensor",
    "delta_ops",
    "coord_field_ops",
    "p1_apply",
    "p2_apply",
    "q2_apply",
    "q1_apply",
    "Lagrangian",
    "HomogeneityReport",
    "NullityReport",
    "ProjectabilityReport",
    "check_homogeneity",
    "hilbert_forms",
    "euler_lagrange",
    "is_null",
    "fundamental_form",
    "nullity_closedness_check",
    "projectability",
    "prolong_pullback",
    "determinant_fixture",
    "section4_fixture",
    "ParseError",
    "parse",
    "parse_scalar",
    "parse_map",
    "render",
    "SuiteReport",
    "run_suite",
]

__version__ = "0.1.0"
