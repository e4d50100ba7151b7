"""Spectral feature score and the end-to-end selection pipeline.

The score of feature j is sum_i |w_i| v_i(j)^2 over the eigenpairs (w_i, v_i)
of the between-class difference operator, i.e. the diagonal of the matrix
absolute value of that operator. Features that load heavily on eigenvectors
with large-magnitude eigenvalues, which encode feature associations that are
both dominant and strongly class-dependent, receive high scores.

The pipeline runs: class split, per-class scale selection, per-class feature
kernels, optional symmetric normalization, difference operator (strict SPD
route first, fixed-rank route as fallback or when forced), then the spectral
score.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spd, spsd
from .errors import InvalidInput, NotPositiveDefinite
from .kernels import (
    DataMatrix,
    KernelMatrix,
    build_rbf_kernel,
    normalize_symmetric,
    select_scale,
    split_by_class,
)
from .linalg import sym_eig, symmetrize

SPD_PATH = "spd"
SPSD_PATH = "spsd"


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the end-to-end scoring pipeline."""

    scale_percentile: float = 50.0
    scale_factor: float = 1.0
    normalize_iters: int = 0
    force_spsd: bool = False
    rank_tol: float = spsd.DEFAULT_RANK_TOL
    keep_vectors: int = 0


@dataclass(frozen=True, eq=False)
class FeatureScore:
    """Per-feature scores plus the spectral data they came from.

    ``eigenvalues`` holds the full signed spectrum of the difference
    operator ordered by descending magnitude; ``leading_vectors`` holds the
    matching first ``keep_vectors`` eigenvectors (columns) when requested.
    """

    scores: np.ndarray
    eigenvalues: np.ndarray
    leading_vectors: np.ndarray | None = None
    kernel_scales: tuple[float, float] | None = None
    path: str | None = None


@dataclass(frozen=True, eq=False)
class SelectionResult:
    """Deterministic ranking; score ties break toward the lower index."""

    ranked_indices: np.ndarray
    selected: np.ndarray
    k: int


def manifest_score(
    difference: np.ndarray,
    *,
    keep_vectors: int = 0,
    kernel_scales: tuple[float, float] | None = None,
    path: str | None = None,
) -> FeatureScore:
    """Eigenvalue-weighted squared-eigenvector score of a symmetric operator."""
    es = sym_eig(difference)
    scores = (es.vectors**2) @ np.abs(es.values)
    by_magnitude = np.argsort(-np.abs(es.values), kind="stable")
    eigenvalues = es.values[by_magnitude]
    leading = None
    if keep_vectors > 0:
        m = min(keep_vectors, es.dim)
        leading = es.vectors[:, by_magnitude[:m]]
    return FeatureScore(
        scores=scores,
        eigenvalues=eigenvalues,
        leading_vectors=leading,
        kernel_scales=kernel_scales,
        path=path,
    )


def _class_kernels(
    data: DataMatrix, config: PipelineConfig
) -> tuple[KernelMatrix, KernelMatrix]:
    first, second = split_by_class(data)
    out = []
    for part in (first, second):
        scale = select_scale(
            part.samples, config.scale_percentile, config.scale_factor
        )
        kernel = build_rbf_kernel(part.samples, scale)
        if config.normalize_iters > 0:
            kernel = normalize_symmetric(kernel, config.normalize_iters)
        out.append(kernel)
    return out[0], out[1]


def _is_strictly_spd(k: np.ndarray) -> bool:
    try:
        spd._spd_eig(k, "pipeline")
    except NotPositiveDefinite:
        return False
    return True


def _operators(
    k1: np.ndarray, k2: np.ndarray, config: PipelineConfig
) -> tuple[np.ndarray, np.ndarray, str]:
    """Mean and difference operators, recording which route produced them."""
    if np.array_equal(k1, k2):
        # identical kernels: the difference is exactly zero and the mean is
        # the kernel itself, so skip the decompositions and their round-off
        path = SPD_PATH if not config.force_spsd and _is_strictly_spd(k1) else SPSD_PATH
        return k1.copy(), np.zeros_like(k1), path
    if not config.force_spsd:
        try:
            mean = spd.midpoint_mean(k1, k2)
            diff = spd.log_map(mean, k1)
            return mean, diff, SPD_PATH
        except NotPositiveDefinite:
            pass
    mean, diff = spsd.mean_and_difference(k1, k2, config.rank_tol)
    return mean, diff, SPSD_PATH


def run_manifest(
    data: DataMatrix, config: PipelineConfig = PipelineConfig()
) -> FeatureScore:
    """Full pipeline from labeled samples to per-feature scores."""
    kern1, kern2 = _class_kernels(data, config)
    _, diff, path = _operators(kern1.matrix, kern2.matrix, config)
    return manifest_score(
        diff,
        keep_vectors=config.keep_vectors,
        kernel_scales=(kern1.scale, kern2.scale),
        path=path,
    )


def mean_operator_eigvecs(
    data: DataMatrix, config: PipelineConfig, m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Top-m eigenpairs of the mean operator, for inspection or export."""
    if m < 1 or m > data.n_features:
        raise InvalidInput(
            f"m must lie in [1, {data.n_features}], got {m}"
        )
    kern1, kern2 = _class_kernels(data, config)
    mean, _, _ = _operators(kern1.matrix, kern2.matrix, config)
    es = sym_eig(symmetrize(mean))
    return es.values[:m], es.vectors[:, :m]


def select_top_k(score: FeatureScore | np.ndarray, k: int) -> SelectionResult:
    """Rank by descending score; ties go to the smaller feature index."""
    scores = score.scores if isinstance(score, FeatureScore) else np.asarray(score)
    d = scores.shape[0]
    if not 1 <= k <= d:
        raise InvalidInput(f"k must lie in [1, {d}], got {k}")
    ranked = np.argsort(-scores, kind="stable")
    return SelectionResult(ranked_indices=ranked, selected=ranked[:k], k=k)


def _min_max(v: np.ndarray) -> np.ndarray:
    lo = float(v.min())
    hi = float(v.max())
    if hi == lo:
        return np.zeros_like(v)
    return (v - lo) / (hi - lo)


def combine_scores(
    a: FeatureScore | np.ndarray, b: np.ndarray
) -> np.ndarray:
    """Sum of min-max normalized score vectors.

    Constant vectors normalize to all zeros, so a flat companion score
    leaves the ranking of the other untouched.
    """
    av = np.asarray(a.scores if isinstance(a, FeatureScore) else a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape or av.ndim != 1:
        raise InvalidInput(
            f"score vectors must share one length, got {av.shape} and {bv.shape}"
        )
    if (av < 0).any() or (bv < 0).any():
        raise InvalidInput("score vectors must be nonnegative")
    return _min_max(av) + _min_max(bv)
