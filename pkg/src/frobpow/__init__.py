"""Exact computation of generalized Frobenius powers, critical exponents,
test ideals and multiplier ideals for powers of the maximal ideal and for
diagonal monomial ideals in prime characteristic."""

from .arith import INFINITY, ExactRational, ResidueClass, mult_order
from .closedform import (
    IdealFamily,
    SymbolicCrit,
    compositions,
    crit_diag,
    crit_md,
    eval_at_prime,
    family_diag,
    family_md,
    frobpow_diag_at_crit,
)
from .errors import ConsistencyError, ResourceLimitError, ValidationError
from .fppoly import FpPolynomial, frob_root_principal, parse_fp_polynomial, poly_pow, test_ideal
from .ideal import (
    GradedWeights,
    MonomialIdeal,
    R_gt,
    diag,
    frob_power_gens,
    frob_power_int,
    frob_power_rational,
    minimalize,
    parse_ideal,
    power_of_m,
)
from .multiplier import NewtonMembership, RationalFamily, compare_test_vs_multiplier, jumping_numbers, multiplier_ideal
from .oracle import InvariantQuery, crit_truncations, mu, mu_diag_fast, nu

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "ExactRational",
    "FpPolynomial",
    "GradedWeights",
    "IdealFamily",
    "INFINITY",
    "InvariantQuery",
    "MonomialIdeal",
    "NewtonMembership",
    "R_gt",
    "RationalFamily",
    "ResidueClass",
    "ResourceLimitError",
    "SymbolicCrit",
    "ValidationError",
    "compare_test_vs_multiplier",
    "compositions",
    "crit_diag",
    "crit_md",
    "crit_truncations",
    "diag",
    "eval_at_prime",
    "family_diag",
    "family_md",
    "frob_power_gens",
    "frob_power_int",
    "frob_power_rational",
    "frob_root_principal",
    "frobpow_diag_at_crit",
    "jumping_numbers",
    "minimalize",
    "mu",
    "mu_diag_fast",
    "mult_order",
    "multiplier_ideal",
    "nu",
    "parse_fp_polynomial",
    "parse_ideal",
    "poly_pow",
    "power_of_m",
    "test_ideal",
]
