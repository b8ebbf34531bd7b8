"""Exact toolkit for constants of derivations and differential ideals on Q[X1..Xn, params]."""

from .constants import (
    CandidateConstant,
    CofactorMatrix,
    ConstantFamilyReport,
    ConstantReport,
    IntegerDependence,
    LocalizationWitness,
    constant_family,
    first_integral_lattice,
    lattice_constants,
    localization_witness,
    new_constant_report,
)
from .darboux import (
    COMPLETE,
    REPRESENTATIVES,
    CofactorSpace,
    DarbouxPair,
    DarbouxResult,
    SearchConfig,
    cofactor_degree_bound,
    cofactor_space,
    darboux_search,
    height_one_differential_primes,
    verify_darboux,
)
from .derivation import DifferentialRing, clear_denominators, d_poly, d_ratfunc, is_constant, rescale_derivation
from .errors import DiffIdealError, DimensionError, IterationCapError, ParseError, PreconditionError
from .groebner import (
    GroebnerBasis,
    Ideal,
    RationalSolutions,
    buchberger,
    differential_closure,
    elimination_ideal,
    ideal_membership,
    is_differential_ideal,
    normal_form,
    solve_zero_dim_rational,
)
from .polys import MonomialOrder, Poly, PolyRing, exact_divide, multivariate_gcd, poly_add, poly_mul
from .problem import Options, Problem, format_problem, parse_problem, parse_problem_text
from .ratfunc import RationalFunction, ratfunc_simplify
from .textsyntax import format_poly, parse_poly, parse_ratfunc

__all__ = [
    "COMPLETE",
    "CandidateConstant",
    "CofactorMatrix",
    "CofactorSpace",
    "ConstantFamilyReport",
    "ConstantReport",
    "DarbouxPair",
    "DarbouxResult",
    "DiffIdealError",
    "DifferentialRing",
    "DimensionError",
    "GroebnerBasis",
    "Ideal",
    "IntegerDependence",
    "IterationCapError",
    "LocalizationWitness",
    "MonomialOrder",
    "Options",
    "ParseError",
    "Poly",
    "PolyRing",
    "PreconditionError",
    "Problem",
    "REPRESENTATIVES",
    "RationalFunction",
    "RationalSolutions",
    "SearchConfig",
    "buchberger",
    "clear_denominators",
    "cofactor_degree_bound",
    "cofactor_space",
    "constant_family",
    "d_poly",
    "d_ratfunc",
    "darboux_search",
    "differential_closure",
    "elimination_ideal",
    "exact_divide",
    "first_integral_lattice",
    "format_poly",
    "format_problem",
    "height_one_differential_primes",
    "ideal_membership",
    "is_constant",
    "is_differential_ideal",
    "lattice_constants",
    "localization_witness",
    "multivariate_gcd",
    "new_constant_report",
    "normal_form",
    "parse_poly",
    "parse_problem",
    "parse_problem_text",
    "parse_ratfunc",
    "poly_add",
    "poly_mul",
    "ratfunc_simplify",
    "rescale_derivation",
    "solve_zero_dim_rational",
    "verify_darboux",
]

__version__ = "0.1.0"
