"""cubesep: certified free-subset combinatorics on the ternary cube and
1-separated unit-vector families in finite-dimensional normed spaces."""

from .config import Config, load_config
from .errors import (
    AuerbachSearchError,
    BudgetExceededError,
    CubesepError,
    DegenerateSpecError,
    DimensionMismatchError,
    IndexRangeError,
    PreconditionError,
    ResearchFlagError,
    SearchDefectError,
)
from .ternary import (
    IntegerVector,
    SymmetricCubeSet,
    TernaryVector,
    basis_vector,
    enumerate_admissible_sets,
    extensions_of,
    project,
    project_set,
    random_admissible_set,
    raw_difference,
    raw_sum,
    symmetric_closure,
    ternary_difference,
    ternary_sum,
    zero_vector,
)
from .freesets import (
    ArrowCertificate,
    ConflictGraph,
    FreeSetCertificate,
    ValueCertificate,
    arrow_holds,
    chain_difference_free,
    conflict_graph,
    extend_difference_free,
    find_difference_free,
    find_sum_free,
    is_free,
    kottman_value,
    max_free_subset,
    sumfree_value,
    witness_difference,
    witness_sum,
)
from .gaussian import (
    GaussianFreeCertificate,
    GaussianSet,
    GaussianVector,
    delta_construction,
    embed_real,
    find_gaussian_difference_free,
    gaussian_arrow_holds,
    gaussian_kottman_value,
    i_closure,
    i_multiply,
)
from .grid import GridReport, grid_max_properties, grid_star_check
from .norms import NormSpec, dual_norm_eval, norm_eval
from .auerbach import (
    AuerbachBasis,
    AuerbachQuality,
    auerbach_basis,
    coefficient_map,
    standard_auerbach,
    verify_auerbach,
)
from .pipeline import (
    SeparatedFamily,
    SeparationReport,
    UnitTernarySet,
    complex_separated_points,
    enumerate_unit_gaussian,
    enumerate_unit_ternary,
    plus_separated_points,
    realified_separated_points,
    separated_points,
    verify_separation,
)
from .selftest import SelfTestReport, run_selftest
from .verify import VerifyResult, verify_certificate

__version__ = "0.1.0"
