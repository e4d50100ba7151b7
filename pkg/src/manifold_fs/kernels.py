"""Per-class feature-affinity kernels.

The central object is a d x d Gaussian (RBF) kernel over the *feature
columns* of one class: entry (i, j) compares feature i with feature j across
that class's samples, so the kernel encodes feature associations rather than
sample similarities. Each class gets its own kernel built from its own
samples only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial.distance import pdist

from .errors import DegenerateData, InvalidInput
from .linalg import symmetrize


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """Labeled sample matrix: N samples by d features, binary labels."""

    samples: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        labels = np.asarray(self.labels)
        if samples.ndim != 2:
            raise InvalidInput(f"samples must be 2-D, got shape {samples.shape}")
        n, d = samples.shape
        if d < 2:
            raise InvalidInput("need at least 2 features")
        if labels.shape != (n,):
            raise InvalidInput(
                f"labels shape {labels.shape} does not match {n} samples"
            )
        if not np.isfinite(samples).all():
            raise InvalidInput("samples contain non-finite entries")
        if not np.isin(labels, (0, 1)).all():
            raise InvalidInput("labels must take values in {0, 1}")
        labels = labels.astype(int)
        for cls in (0, 1):
            count = int((labels == cls).sum())
            if 0 < count < 2:
                raise InvalidInput(f"class {cls} has fewer than 2 samples")
        if self.feature_names is not None and len(self.feature_names) != d:
            raise InvalidInput("feature_names length does not match feature count")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "labels", labels)

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def n_features(self) -> int:
        return self.samples.shape[1]


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """A feature kernel together with the scale that produced it."""

    matrix: np.ndarray
    scale: float
    normalized_iters: int = 0


def split_by_class(data: DataMatrix) -> tuple[DataMatrix, DataMatrix]:
    """Row-partition into the two classes, preserving feature order."""
    parts = []
    for cls in (0, 1):
        mask = data.labels == cls
        if int(mask.sum()) < 2:
            raise InvalidInput(
                f"class {cls} has fewer than 2 samples; need both classes"
            )
        parts.append(
            DataMatrix(
                samples=data.samples[mask],
                labels=np.full(int(mask.sum()), cls),
                feature_names=data.feature_names,
            )
        )
    return parts[0], parts[1]


def _feature_columns(x: np.ndarray) -> np.ndarray:
    """Samples-by-features matrix transposed to features-by-samples."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise InvalidInput(f"expected a 2-D sample matrix, got shape {x.shape}")
    return np.ascontiguousarray(x.T)


def select_scale(
    x: np.ndarray, percentile: float = 50.0, factor: float = 1.0
) -> float:
    """Kernel scale from pairwise feature-column distances.

    Returns ``factor`` times the given percentile (linear interpolation
    between order statistics) of the d(d-1)/2 Euclidean distances between
    feature columns of one class's samples.
    """
    if not 0.0 < percentile <= 100.0:
        raise InvalidInput(f"percentile must be in (0, 100], got {percentile}")
    if factor <= 0.0:
        raise InvalidInput(f"factor must be positive, got {factor}")
    cols = _feature_columns(x)
    if cols.shape[0] < 2:
        raise InvalidInput("need at least 2 features to select a scale")
    dists = pdist(cols, metric="euclidean")
    scale = factor * float(np.percentile(dists, percentile, method="linear"))
    if scale <= 0.0:
        raise DegenerateData(
            "selected percentile of pairwise feature distances is zero"
        )
    return scale


def build_rbf_kernel(x: np.ndarray, scale: float) -> KernelMatrix:
    """Gaussian feature kernel exp(-||x_i - x_j||^2 / (2 scale^2)).

    x holds one class's samples (rows); x_i, x_j are feature columns.
    """
    if scale <= 0.0:
        raise InvalidInput(f"scale must be positive, got {scale}")
    cols = _feature_columns(x)
    d = cols.shape[0]
    # Row-at-a-time keeps memory at O(d N) while the subtraction order stays
    # fixed, so results do not depend on how work is batched.
    k = np.empty((d, d))
    for i in range(d):
        sq = np.sum((cols - cols[i]) ** 2, axis=1)
        k[i] = np.exp(-sq / (2.0 * scale * scale))
    return KernelMatrix(matrix=symmetrize(k), scale=float(scale))


def normalize_symmetric(kernel: KernelMatrix, iters: int) -> KernelMatrix:
    """Repeated symmetric normalization K <- D^{-1/2} K D^{-1/2}.

    D is the diagonal of row sums, recomputed each iteration. Iterating
    drives the kernel toward doubly stochastic; the spectrum lands in [0, 1]
    after the first pass.
    """
    if iters < 0:
        raise InvalidInput(f"iters must be nonnegative, got {iters}")
    k = np.asarray(kernel.matrix, dtype=float)
    for _ in range(iters):
        row_sums = k.sum(axis=1)
        if np.any(row_sums <= 0.0):
            raise DegenerateData("kernel has a nonpositive row sum")
        inv_sqrt = 1.0 / np.sqrt(row_sums)
        k = symmetrize(k * inv_sqrt[:, None] * inv_sqrt[None, :])
    if iters == 0:
        return kernel
    return replace(kernel, matrix=k, normalized_iters=kernel.normalized_iters + iters)
