"""Periodic interpolation on integer-matrix patterns of the d-torus.

Exact pattern / generating-set arithmetic, the pattern discrete Fourier
transform, ellipsoidal weight spaces, fundamental interpolants from
periodized box splines, Strang-Fix condition verification, and empirical
validation of the interpolation-error bounds.
"""

from .bounds import (
    BoundReport,
    ErrorBreakdown,
    ExperimentSpec,
    check_aliasing_theorem,
    check_partial_sum_theorem,
    check_trig_theorem,
    convergence_study,
    decay_profile,
    fixed_function,
    interp_error,
    report_to_csv,
    report_to_svg,
)
from .boxspline import (
    BoxSplineSpec,
    PeriodizationWindow,
    boxspline_hat,
    periodization_tail,
    periodize,
    periodized_coeff,
    sf_order,
)
from .errors import (
    AnisoError,
    ConvergenceFailure,
    DivergentSeries,
    InsufficientSupport,
    NonExistent,
    NotAMember,
    NotExpanding,
    NotInSpace,
    SingularMatrix,
    TailTooLarge,
)
from .fspaces import (
    SubmultReport,
    WeightSpec,
    a_norm,
    check_submultiplicativity,
    lq_norm,
    weight,
    weights_many,
)
from .interp import (
    ExistenceReport,
    FundamentalInterpolant,
    cardinal_residual,
    check_existence,
    dirichlet_kernel,
    evaluate,
    evaluate_at_nodes,
    fourier_partial_sum,
    fundamental_interpolant,
    interpolation_operator,
    membership_coeffs,
    translate,
)
from .intlat import (
    PatternMatrix,
    enumerate_generating_set,
    enumerate_pattern,
    is_canonical_freq,
    pattern_add,
    reduce_freq,
    reduce_freq_many,
    validate_matrix,
)
from .ptransform import (
    CoeffVector,
    FourierSeries,
    SampleVector,
    alias_fold,
    dft_forward,
    dft_inverse,
    discrete_coeffs,
    fourier_matrix,
    gset_freqs,
    pattern_generators,
    series_from_csv,
    series_to_csv,
)
from .spectral import inv_t_apply, is_expanding, spectral_data
from .strangfix import (
    SFParams,
    SFReport,
    c_rho,
    gamma_ip,
    gamma_sm,
    verify_sfc,
)

__version__ = "0.1.0"
