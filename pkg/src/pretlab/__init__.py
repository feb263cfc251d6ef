"""Numerical laboratory for mean values of multiplicative functions.

Building blocks: a segmented sieve with streaming evaluation of
completely multiplicative functions (sieve), a catalog of test
functions (catalog), compensated partial sums and smallness
certificates (sums), the pretentious distance and its exponent
calculators (distance), truncated Dirichlet series with tail control,
generalized von Mangoldt tables and window-mode zero location
(dirichlet), combinatorial sieve weights (sieve_weights), and a
config-driven experiment runner (harness).
"""

from .errors import (
    ArgumentError,
    CapacityError,
    DegenerateError,
    DivergenceError,
    HypothesisUnmetError,
    InfeasibleError,
    OutOfRangeError,
    PretlabError,
    SignChangeError,
    UsageError,
)
from .catalog import (
    FunctionSpec,
    PrimeAssignment,
    archimedean_twist,
    as_assignment,
    catalog_get,
    interval_indicator,
    kronecker,
    liouville,
    power_omega,
    product,
    twist,
)
from .sieve import (
    Factorization,
    SpfTable,
    build_spf_table,
    eval_cm,
    eval_cm_range,
    factorize,
    is_rough,
    load_spf_table,
    prime_count,
    primes_up_to,
    rough_mask_range,
    save_spf_table,
)
from .sums import (
    CertifyReport,
    SumRequest,
    SumResult,
    certify_power_saving,
    certify_small_on_average,
    grid_sums,
    partial_sum,
    prime_log_sum,
    prime_reciprocal_sum,
)
from .distance import (
    HALASZ_IMPROVEMENT_A,
    DistanceResult,
    MinimizerResult,
    big_N,
    bound_exponent_B,
    bound_exponent_Bprime,
    distance_sq,
    exponent_profile,
    halasz_M,
    q_sub_t,
    v_sub_t,
)
from .dirichlet import (
    IkProfile,
    LambdaTable,
    PlancherelReport,
    SeriesEvaluation,
    SiegelProfile,
    comb_log_derivative,
    der_ratio_check,
    dirichlet_mean_square,
    eta_estimate,
    euler_factor_product,
    i_k_norm,
    i_k_profile,
    l_line_value,
    l_window_values,
    l_y_derivative,
    lambda_k_by_moebius,
    lambda_k_table,
    log_series_envelope,
    plancherel_pair,
    pretentious_scale,
    siegel_locate,
    weighted_prime_sums,
    zeta_y_gamma,
)
from .sieve_weights import (
    MainTermRatio,
    SandwichReport,
    SieveWeights,
    build_beta_sieve,
    main_term_ratio,
    sandwich_scan,
)
from .harness import (
    BoundReport,
    ExperimentConfig,
    run_cli,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
