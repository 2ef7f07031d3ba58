from .qstate import (
    QuantumState,
    DensityMatrix,
    EntropyRecord,
    ENTROPY_COLUMNS,
    reduced_density,
    complement_density,
    single_qubit_density,
    von_neumann_entropy,
    entanglement_entropy,
    entropy_scan,
    pauli_expectation,
    two_site_flip_expectation,
    flip_identity_report
)
from .prime_state import (
    PreparationModel,
    PreparationStatistics,
    HamiltonianReport,
    build_prime_state,
    build_odd_prime_state,
    preparation_probability,
    preparation_statistics,
    primality_hamiltonian,
    primality_hamiltonian_check,
    closed_form_qubit_density
)
from .grover import (
    GroverRun,
    FIGURE_COLUMNS,
    grover_angle,
    uniform_state,
    oracle_sign_flip,
    diffusion,
    grover_iterate,
    optimal_iterations,
    r_max,
    pg_analytic,
    run_grover,
    subspace_amplitudes,
    power_of_two_count,
    figure_scan
)
from .mr_oracle import (
    OracleTranscript,
    EquivalenceReport,
    GateBudget,
    MISMATCH_COLUMNS,
    pipeline,
    oracle_equivalence_scan,
    pipeline_mask,
    apply_pipeline_oracle,
    mismatch_report_csv,
    gate_budget
)
from .qcount import (
    CountingDistribution,
    CountEstimate,
    RH_SCAN_COLUMNS,
    counting_distribution,
    brute_force_counting_distribution,
    estimate_M,
    sample_estimates,
    bound_success_frequency,
    calls_constant,
    count_error_bound,
    total_variation,
    pi_accuracy_bound,
    rh_comparison_scan
)
