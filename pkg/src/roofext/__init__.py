"""roofext: convex and concave roof extensions over quantum state spaces.

Closed-form concurrence/tangle/entanglement machinery built on anti-linear
conjugations (Takagi factorizations, flat optimal decompositions), the
quadratic-form subtraction procedure for qubit stochastic maps, diagonal
channels, and an independent Stiefel-manifold roof solver for cross-checks.
"""

from .errors import (
    BadRank,
    ConfigError,
    DegeneratePencil,
    DimMismatch,
    EmptyInterval,
    NotHermitian,
    NotIsometry,
    NotPSD,
    NotStandardForm,
    NotSymmetric,
    NotTracePreserving,
    OutOfRange,
    OutsideBall,
    ParseError,
    RoofextError,
    ShapeMismatch,
    TraceNotOne,
    UnsupportedOrder,
    ZeroState,
)
from .states import (
    PureDecomposition,
    bell_state,
    bloch_to_qubit,
    decomposition_from_isometry,
    maximally_mixed,
    product_pure,
    pure_projector,
    psd_sqrt,
    qubit_to_bloch,
    random_density,
    random_pure,
    random_unitary,
    spectral_decomposition,
    state_rank,
    validate_density,
    validate_pure,
    werner_state,
)
from .antilinear import (
    TakagiFactorization,
    check_symmetric,
    flat_optimal_decomposition,
    lambda_spectrum,
    roof_values,
    spin_flip,
    takagi,
    theta_expectation,
    theta_from_kraus_pair,
    transport_theta,
    wootters_conjugation,
)
from .qubitmaps import (
    QuadraticFormPencil,
    QubitStochasticMap,
    SubtractionWeight,
    affine_map,
    amplitude_damping,
    apply_map,
    axial_beta_max,
    axial_critical_beta_sq,
    axial_map,
    axial_tangle,
    concurrence_general_two_kraus,
    concurrence_sq,
    dephased_amplitude_damping,
    dephasing_map,
    depolarizing_map,
    det_T_form,
    diagonal_channel,
    four_vector,
    identity_map,
    kraus_map,
    length_two_decomposition,
    subtraction_weight,
    two_kraus_seminorm,
)
from .solver import (
    RoofObjective,
    RoofResult,
    SolverConfig,
    det_output_objective,
    diag_entropy_objective,
    flatness_check,
    maximize_roof,
    minimize_roof,
    output_entropy_objective,
    sqrt_det_output_objective,
    theta_form_objective,
    verify_roof_point,
)
from .diagonal import (
    EmbeddingSpec,
    IsotropicState,
    concave_leaf_membership,
    diag_entropy,
    ed_qubit,
    ed_qubit_flat_pair,
    embed_qubit_pair,
    embed_state,
    embedding_offset,
    h0_min_entropy_experiment,
    isotropic_state,
    qubit_split_embedding,
)
from .measures import (
    BoundReport,
    MeasureReport,
    bound_suite,
    channel_entanglement,
    channel_tangle,
    concurrence_2qubit,
    eof_2qubit,
    map_concurrence,
    partial_trace_kraus,
    shannon_entropy,
    von_neumann_entropy,
    xi,
)

__version__ = "0.1.0"
