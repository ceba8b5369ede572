"""Exact enumeration engine for derangements whose descents are confined
to prescribed blocks, with colour-refined counts, generalized Euler
difference tables, and executable bijections."""

from .perm import (
    ColouredPermutation,
    Composition,
    Permutation,
    classify_position,
    descent_set,
    fixed_points,
    identity,
    insert_entry,
    insert_fixed_points,
    is_member,
    remove_entry,
    remove_fixed_points,
    sort_blocks,
)
from .series import MultiSeries, coeff_Dj, inv_one_minus_sum, inv_one_plus_var, series_mul, series_one
from .counting import (
    FixDistribution,
    count_Dhat,
    count_Dj,
    count_Dstar,
    count_sorted_derangement_preimage,
    fix_distribution,
    insert_block_fixed_point,
    iterate_members,
)
from .lamfak import (
    LambdaPolynomial,
    change_basis,
    derangement_basis_count,
    derangement_number,
    explicit_D_count,
    lambda_factorial,
    lambda_factorial_truncexp,
    lamfak_rhs,
    mu_coloured_count,
    poly_derivative_check,
)
from .euler import (
    DifferenceTable,
    build_tables,
    dkn_change_basis,
    enumerate_Dkn,
    eta,
    eta_inverse,
    theta,
    theta_inverse,
    zeta1,
    zeta2,
)
from .correlation import (
    BlockPairState,
    F_brute,
    FG_consistency,
    G_closed,
    G_recurrence_check,
    dominance_ge,
    verify_correlation,
    verify_unimodality,
)

__version__ = "0.1.0"
