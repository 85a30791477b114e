"""shiftlab: a finite-truncation laboratory for invariant subspaces of the
shift plus backward shift, with constructions, classification and a
verification engine."""

from .config import TOL, Tolerances, DEFAULT_ORDER, default_grid_size
from .errors import (
    AmbientMismatchError,
    CoprimalityError,
    DomainError,
    EdgeContaminationError,
    ExtremePointError,
    GridSizeError,
    ModulusFloorError,
    ShiftlabError,
    TruncationOverflowError,
)
from .fourier import (
    BandLimited,
    FourierSeries,
    Grid,
    boundary_product,
    conjugate_boundary,
    costar_apply,
    fourier_from_samples,
    j_map,
    project_minus,
    project_plus,
    samples_from_fourier,
    shift_apply,
    tilde,
)
from .inner_outer import (
    BlaschkeSpec,
    NonExtremeReport,
    OuterFunction,
    blaschke_from_series,
    blaschke_samples,
    blaschke_series,
    check_nonextreme,
    complementary_outer,
    is_coprime,
    outer_from_modulus,
)
from .subspaces import (
    AmbientOperator,
    ReducingVerdict,
    SplitVerdict,
    Subspace,
    ambient_dim,
    ambient_to_series,
    containment_gap,
    defect_dimension,
    embed_subspace,
    gap,
    invariance_residual,
    model_space,
    conjugation_apply,
    orthonormalize,
    pminus_model_space,
    reducing_test,
    series_to_ambient,
    splitting_test,
)
from .classify import (
    ExampleResult,
    Lambda,
    ProportionalityVerdict,
    SplittingSpec,
    ThetaMatrix,
    apply_omega,
    best_fit_omega,
    construct_nonsplitting,
    construct_splitting,
    example_subspace,
    parametrize_theta,
    proportionality_test,
    theta_unitarity_defect,
)

__version__ = "0.1.0"
