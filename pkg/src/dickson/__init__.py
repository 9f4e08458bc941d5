"""Exact Dickson invariants and Steenrod operations over prime fields."""
from ._version import __version__
from .fp_poly import (
    EXPONENT_LIMIT,
    Matrix,
    Monomial,
    NotDivisible,
    ParseError,
    Poly,
    PRIME_LIMIT,
    ShapeError,
    degree,
    exact_div,
    format_poly,
    frobenius,
    grevlex_key,
    is_homogeneous,
    is_prime,
    parse_poly,
    poly_add,
    poly_const,
    poly_mul,
    poly_one,
    poly_pow,
    poly_scale,
    poly_sub,
    poly_var,
    poly_zero,
    require_prime,
    substitute_linear,
    topological_degree,
)
from .invariants import (
    BoundExceeded,
    L,
    P_coef,
    R_coef,
    bracket,
    dickson_Q,
    dickson_monomial_count,
    enumerate_gl,
    gl_generators,
    gl_order,
    invariant_space_dimension,
    is_invariant,
    recursion_rhs,
)
from .steenrod import (
    binom_mod_p,
    corollary_rhs,
    sign_convention_flag,
    smith_switzer_value,
    st_delta,
    st_delta_via_dl2,
    st_delta_via_main,
    steenrod_P,
)
from .verify import (
    CaseResult,
    CaseSpec,
    GridConfig,
    Report,
    THEOREMS,
    emit_report,
    grid_cases,
    run_case,
    run_grid,
)

__all__ = [name for name in dir() if not name.startswith("_")]
