"""Exact heights, counting functions, exceptional sets and abc-type
verification over the rational function field Q(t)."""

from .counting import count_gcd, count_zeros, divisor_decomposition, weil_lambda, zero_counts
from .exceptional import HypothesisError, build_exceptional_set, member, normalize_pair, substitute_b
from .geometry import FormSystem, general_position_by_specialization, general_position_n2, jacobian_form, specialize
from .heights import ProjectivePoint, height_point, poly_height, relevant_height
from .logderiv import LogOneForm, UnitTuple, d_u, split_ab, unit_relation_search, unit_sum_check
from .mpoly import MultiPolynomial
from .parser import parse_expression, parse_form, parse_place, parse_place_set, parse_ratfunc
from .places import INFINITY, Place, PlaceSet, chi_s, enumerate_s_units, height, place_set, valuation
from .poly import UniPoly, factor_poly
from .ratfunc import RationalFunction, derive, rf
from .verifier import RamifiedCoverSpec, abc_report, gcd_conclusion_report, ramified_cover_report, validate_hypotheses

__version__ = "0.1.0"

__all__ = [
    "abc_report",
    "build_exceptional_set",
    "chi_s",
    "count_gcd",
    "count_zeros",
    "d_u",
    "derive",
    "divisor_decomposition",
    "enumerate_s_units",
    "factor_poly",
    "FormSystem",
    "gcd_conclusion_report",
    "general_position_by_specialization",
    "general_position_n2",
    "height",
    "height_point",
    "HypothesisError",
    "INFINITY",
    "jacobian_form",
    "LogOneForm",
    "member",
    "MultiPolynomial",
    "normalize_pair",
    "parse_expression",
    "parse_form",
    "parse_place",
    "parse_place_set",
    "parse_ratfunc",
    "Place",
    "place_set",
    "PlaceSet",
    "poly_height",
    "ProjectivePoint",
    "ramified_cover_report",
    "RamifiedCoverSpec",
    "RationalFunction",
    "relevant_height",
    "rf",
    "specialize",
    "split_ab",
    "substitute_b",
    "UniPoly",
    "unit_relation_search",
    "unit_sum_check",
    "UnitTuple",
    "validate_hypotheses",
    "valuation",
    "weil_lambda",
    "zero_counts",
]
