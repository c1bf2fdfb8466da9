"""Deformed Fock spaces for generalized quantum statistics built from a twist operator."""

from .fock import (
    DeformedFock,
    GramReport,
    adjointness_residual,
    annihilation_matrix,
    creation_matrix,
    gram_level,
    positivity_report,
    verify_wick_relation,
    well_defined_report,
)
from .levels import build_Pn, build_Rn
from .operators import (
    StateSpace,
    dual_vector,
    embed_leg,
    hermitian_eigs,
    kernel_basis,
    kron,
)
from .quotient import (
    WickQuotient,
    check_ideal_invariance,
    ideal_level_span,
    induced_gram,
    quotient_basis,
)
from .report import ConfigError, DiagnosticsReport, RunConfig, parse_config, run_diagnostics
from .twist import (
    AxiomVerdict,
    TwistSpec,
    check_consistency,
    check_hecke,
    check_norm_bound,
    check_star_convention,
    check_twist,
    check_yang_baxter,
    ttilde_from_cross,
)
from .validation import (
    DEFAULT_TOL,
    DegenerateScalarProductError,
    InconsistentSpaceError,
    NotAWickGeneratorError,
    RepresentativeDependenceError,
)
from .zoo import EpsilonSpec, clifford_grassmann_check, epsilon_matrix, lambda_dims, preset_twist

__version__ = "0.1.0"
