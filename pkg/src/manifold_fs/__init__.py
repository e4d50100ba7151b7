"""Supervised feature selection from per-class feature-kernel geometry.

Each class's feature associations are summarized by a Gaussian kernel over
its feature columns. The two kernels are composed on the manifold of
positive-(semi)definite matrices: their geodesic midpoint captures shared
structure, and the log map of one kernel at that midpoint captures the
between-class differences. Features are ranked by an eigenvalue-weighted
sum of squared eigenvectors of that difference operator.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    predicted_shared_eigenvalue,
    prop1_bound,
    prop2_bound,
)
from .datasets import (
    GeneratorConfig,
    fisher_score,
    gen_hypercube,
    gen_xor,
    load_csv,
    pearson_score,
    save_csv,
)
from .errors import (
    DegenerateData,
    GeodesicDomain,
    InvalidInput,
    ManifoldFSError,
    NotPositiveDefinite,
    NotSharedEigenvector,
    ParseError,
)
from .kernels import (
    DataMatrix,
    KernelMatrix,
    build_rbf_kernel,
    normalize_symmetric,
    select_scale,
    split_by_class,
)
from .linalg import EigenSystem, sym_eig, sym_fn, symmetrize, thin_svd
from .scoring import (
    FeatureScore,
    PipelineConfig,
    SelectionResult,
    combine_scores,
    manifest_score,
    mean_operator_eigvecs,
    run_manifest,
    select_top_k,
)
from .spd import difference_operator, exp_map, geodesic, log_map, midpoint_mean
from .spsd import (
    StructurePair,
    effective_rank,
    grassmann_geodesic,
    spsd_decompose,
    spsd_difference,
    spsd_mean,
)

__all__ = [
    "BoundReport",
    "DataMatrix",
    "DegenerateData",
    "EigenSystem",
    "FeatureScore",
    "GeneratorConfig",
    "GeodesicDomain",
    "InvalidInput",
    "KernelMatrix",
    "ManifoldFSError",
    "NotPositiveDefinite",
    "NotSharedEigenvector",
    "ParseError",
    "PipelineConfig",
    "SelectionResult",
    "StructurePair",
    "build_rbf_kernel",
    "combine_scores",
    "difference_operator",
    "effective_rank",
    "exp_map",
    "fisher_score",
    "gen_hypercube",
    "gen_xor",
    "geodesic",
    "grassmann_geodesic",
    "load_csv",
    "log_map",
    "manifest_score",
    "mean_operator_eigvecs",
    "midpoint_mean",
    "normalize_symmetric",
    "pearson_score",
    "predicted_shared_eigenvalue",
    "prop1_bound",
    "prop2_bound",
    "run_manifest",
    "save_csv",
    "select_scale",
    "select_top_k",
    "split_by_class",
    "spsd_decompose",
    "spsd_difference",
    "spsd_mean",
    "sym_eig",
    "sym_fn",
    "symmetrize",
    "thin_svd",
    "__version__",
]
