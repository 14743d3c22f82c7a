"""Super-resolution of clumped point sources from low-frequency Fourier data.

The package covers the forward model (Vandermonde and Hankel matrices), the
ESPRIT and MUSIC subspace estimators, matching distances, computable forms of
the ESPRIT stability bounds, non-harmonic uncertainty constants and a seeded
Monte-Carlo sweep harness.
"""

from .bounds import (
    BoundReport,
    check_bauer_fike,
    check_clumps_scaling,
    check_md_relation,
    check_moitra,
    check_u0_bound,
    gaussian_hankel_mean_bound,
    predicted_error_bound,
    predicted_error_bounds,
    sigma_min_vandermonde,
    error_bound_constants,
    well_separated_error_bound,
)
from .errors import (
    ConvergenceError,
    EstimatorError,
    InfeasibleClumpsError,
    MusicPeakDeficit,
    ParameterError,
    SampleFileError,
    SeparationUndefinedError,
)
from .estimators import EstimationResult, esprit, music, recover_amplitudes
from .experiments import (
    SweepResult,
    SweepSpec,
    desk_profile,
    extract_transition_curve,
    fit_md_scaling,
    fit_transition_slope,
    paper_profile,
    run_sweep,
)
from .forward import (
    Measurement,
    add_noise,
    check_L,
    fourier_coefficients,
    hankel,
    vandermonde,
    verify_vandermonde_factorization,
)
from .linalg import eigenvalues, pseudo_inverse, singular_values, svd, truncate_rank
from .measures import (
    AtomicMeasure,
    ClumpsConfig,
    generate_clumps,
    min_separation,
    srf,
    torus_distance,
    validate_clumps,
    wrap,
)
from .metrics import eigenvalue_matching_distance, matching_distance
from .uncertainty import (
    count_nonzero_coefficients,
    search_uncertainty_constant,
    support_supremum,
    uncertainty_constant,
    vanishing_polynomial,
)

__version__ = "0.1.0"
