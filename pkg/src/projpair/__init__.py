"""Pairs of orthogonal projections: Halmos decomposition, Grassmann geodesics,
and discrete time-/band-limiting pairs built on the unitary DFT."""
from ._backend import NAME as BACKEND
from .errors import (
    NoUniqueGeodesicError,
    NotAProjectionError,
    NotAProjectionProductError,
    ProjPairError,
    SymmetryRequiredError,
    UndefinedError,
    ValidationError,
)
from .factorization import canonical_factorization, factorization_compare, is_canonical
from .fourier import DftCalculus, build_dft, dft_eigenprojections, dft_log, even_projection
from .geodesics import (
    curve_length,
    geodesic_exponent,
    geodesic_point,
    grassmann_distance,
    path_length,
    reduced_min_modulus,
)
from .kernel import (
    commutator,
    herm_eig,
    hs_norm,
    operator_norm,
    projector_from_basis,
    subspace_intersection,
    unitary_exp,
)
from .localization import (
    IndexSet,
    band_limiter,
    concentration_check,
    localization_report,
    time_limiter,
    uncertainty_sweep,
)
from .pairs import (
    ProjectionPair,
    halmos_decompose,
    kkm_identity_check,
    position_dims,
    principal_angles,
)

__version__ = "0.1.0"
