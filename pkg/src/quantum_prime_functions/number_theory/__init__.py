from .sieve import PrimeTable, sieve, small_primes
from .miller_rabin import (
    Verdict,
    WitnessMode,
    WitnessSet,
    MrDecomposition,
    mr_decompose,
    mr_witness_test,
    is_prime,
    false_prime_rate
)
from .counting import (
    BiasReport,
    BIAS_COLUMNS,
    pi,
    pi_ab,
    pi_gap,
    pi_twin,
    pi_twin_mod8,
    twin_bias,
    chebyshev_bias,
    bias_scan,
    bias_sign_changes,
    euler_phi
)
from .analytic import (
    li,
    twin_prime_constant,
    hl_constant,
    hl_gap_estimate,
    hl_twin_estimate,
    hl_twin_integral,
    rh_scale,
    rh_residual
)
