"""Coherence and imaginarity toolkit.

Finite-dimensional density-matrix machinery (validated states, channels,
closed-form and variational coherence measures, brute-force grid oracles)
plus the bosonic Gaussian counterpart (covariance-based states, channels,
the thermal-reference measure, and real-projection gaps), and a seeded
randomized verification harness over all of it.
"""

from .catalog import (
    CLOSED_MEASURES,
    DEFAULT_MEASURES,
    OPT_MEASURES,
    ROOF_MEASURES,
    MeasureId,
    evaluate,
    evaluate_full,
    evaluate_many,
    evaluate_pure,
    parse_measure,
    real_gap,
    symmetrized_value,
)
from .closedform import (
    ONE_MINUS_MAX,
    SHANNON,
    ConcaveSymmetricFn,
    bloch_gap_l1,
    bloch_state,
    c_convex_roof_pure,
    c_l1,
    c_rel_ent,
    c_tsallis,
    concave_fn,
    l1_real_gap_closed_form,
)
from .figures import fig1_rows, fig2_rows, fig3_rows
from .gaussian import (
    GaussianChannel,
    GaussianState,
    GrRealGap,
    apply_gaussian_channel,
    boxplus,
    boxplus_many,
    c_gr,
    coherent_state,
    conjugate_gaussian,
    conjugate_gaussian_channel,
    conjugation_matrix,
    entropy_gaussian,
    g_function,
    gap_coherent_closed_form,
    gap_squeezed_closed_form,
    gap_squeezed_paper_formula,
    gaussian_channel_from_json,
    gaussian_channel_to_json,
    gaussian_from_json,
    gaussian_to_json,
    gr_real_gap,
    is_real_gaussian,
    is_thermal,
    omega,
    probe_incoherent_gaussian,
    random_gaussian_channel,
    random_gaussian_state,
    random_gaussian_state_with_form,
    random_incoherent_gaussian_channel,
    random_symplectic,
    real_projection,
    squeezed_state,
    supermajorize_slack,
    symplectic_eigenvalues,
    thermal_probe_set,
    thermal_reference,
    thermal_spectrum,
    thermal_state,
    weak_supermajorize,
    williamson_check,
)
from .report import CheckReport, SlackTracker, canonical_digest, check_hash, summarize
from .states import (
    DensityMatrix,
    InvalidChannelError,
    InvalidStateError,
    KrausChannel,
    PureState,
    SchemaError,
    apply_channel,
    channel_branches,
    conjugate_channel,
    conjugate_state,
    dephase,
    density_from_json,
    density_to_json,
    derived_rng,
    direct_sum,
    fidelity,
    imag_part,
    is_incoherent,
    kraus_from_json,
    kraus_to_json,
    random_density,
    random_diag_unitary,
    random_incoherent_channel,
    random_pure,
    real_part,
    trace_norm,
    von_neumann_entropy,
)
from .variational import (
    DiagonalProgram,
    OracleResult,
    SolveResult,
    SolverConfig,
    c_convex_roof_upper,
    c_geometric,
    c_robustness,
    c_trace_norm,
    c_weight,
    geometric_batch,
    oracle_grid,
    solve_diagonal_program,
)
from .verify import (
    all_check_ids,
    check_axioms,
    check_conjugation_invariance,
    check_gaussian_suite,
    check_real_gap_nonneg,
    check_solver_vs_oracle,
    check_symmetrized_measure,
    run_all,
    run_check,
    run_checks,
)

__version__ = "0.1.0"
