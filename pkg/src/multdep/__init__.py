"""Exact multiplicative dependence of rationals and counting experiments for
multiplicatively dependent polynomial values over integer boxes."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    Factorization,
    bruijn_Z,
    factorize,
    is_prime,
    largest_prime_factor,
    nth_prime,
    psi_exact,
    psi_sieve,
)
from .counting import (  # noqa: E402
    Box,
    RankDecomposition,
    count_NF,
    count_NF_by_rank,
    count_NF_star,
    count_profile,
)
from .dependence import (  # noqa: E402
    ExponentVector,
    RankResult,
    Relation,
    exponent_vector,
    find_relation,
    is_mult_dependent,
    mult_rank,
)
from .errors import BudgetExceeded, DomainError, PolyParseError  # noqa: E402
from .experiments import (  # noqa: E402
    ScalingReport,
    example13_ratio,
    gcd_value_set,
    hypersurface_count,
    pplus_profile,
    relation_size_profile,
    scaling_fit,
    v_exponent,
)
from .heights import HeightValue, height_growth_constant, naive_height, weil_height  # noqa: E402
from .lattice import integer_kernel_basis  # noqa: E402
from .poly import (  # noqa: E402
    MPoly,
    PolySystem,
    binary_form_has_linear_factor,
    evaluate,
    example11_family,
    homogeneous_part,
    parse_poly,
    total_degree,
    univariate_gcd,
)
