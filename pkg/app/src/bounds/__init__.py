from .capacity import (
    LEMMA_LB_CONTINUOUS,
    LEMMA_LB_DISCRETE,
    LEMMA_UB_CONTINUOUS,
    LEMMA_UB_DISCRETE,
    discrete_entropy,
    half_log2_1p,
    lb_capacity_continuous,
    lb_capacity_discrete,
    min_symbol_probability,
    ub_capacity_continuous_gaussian,
    ub_capacity_discrete_gaussian,
)
from .structure import (
    DeterministicMode,
    deterministic_row_terms,
    fir_cross_correlation,
    lb_capacity_correlated,
    mi_ub_01_contiguous,
    mi_ub_01_random,
    mi_ub_diversity,
    mi_ub_gaussian,
    ub_capacity_01_contiguous,
    ub_capacity_01_random,
    ub_capacity_deterministic,
    ub_capacity_diversity,
)
from .error import (
    achievable_error_exponent,
    achievable_error_ub,
    fano_lb_asymptotic,
    fano_lb_exact_recovery,
    fano_lb_finite_n,
    pairwise_union_error_ub,
    sign_pattern_entropy,
    sign_pattern_error_lb,
    sign_pattern_mutual_information,
)
from .compare import DEFAULT_C1, DEFAULT_C2, min_sensors_comparison, order_crossing
