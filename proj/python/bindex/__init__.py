"""Joint-variable index computations for analytic functions on the unit bidisc."""

from ._core import (
    BindexError,
    Function,
    Weight,
    check_hayman,
    check_kth_max_modulus,
    check_local_dominance,
    check_modulus_ratio,
    check_pure_partials,
    check_tail_dominance,
    coeffs,
    comparability,
    degree_enumerate,
    find_main_polynomial,
    index_bound_from_ratio,
    index_profile,
    lambda_bounds,
    local_index,
    max_modulus,
    maximal_term,
    q_constant,
    scaled_weight,
    validate_weight,
    verify_main_polynomial,
)

__all__ = [
    "BindexError",
    "Function",
    "Weight",
    "check_hayman",
    "check_kth_max_modulus",
    "check_local_dominance",
    "check_modulus_ratio",
    "check_pure_partials",
    "check_tail_dominance",
    "coeffs",
    "comparability",
    "degree_enumerate",
    "find_main_polynomial",
    "index_bound_from_ratio",
    "index_profile",
    "lambda_bounds",
    "local_index",
    "max_modulus",
    "maximal_term",
    "q_constant",
    "scaled_weight",
    "validate_weight",
    "verify_main_polynomial",
]
