"""Synthetic benchmark generators, univariate baselines, CSV ingestion.

Generators are pure functions of (config, seed): the same inputs reproduce
the same matrix bit for bit, via the Philox substreams in
:mod:`manifold_fs.rng`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateData, InvalidInput, ParseError
from .kernels import DataMatrix
from .rng import substream

_MAX_REDRAWS = 100

# Replaces an infinite Fisher ratio (zero within-class variance, nonzero
# between-class separation) so rankings stay finite.
FISHER_SENTINEL_FACTOR = 1e9


@dataclass(frozen=True)
class GeneratorConfig:
    """Shared knobs for the synthetic generators.

    Defaults match the parity benchmark (50 samples, 100 binary features);
    the hypercube benchmark passes its own sizes explicitly.
    """

    seed: int
    n_samples: int = 50
    n_features: int = 100
    n_informative: int = 10
    noise_scale: float = 1.0
    clusters_per_class: int = 2

    def __post_init__(self):
        for name in ("n_samples", "n_features", "n_informative", "clusters_per_class"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"{name} must be positive")
        if self.n_informative > self.n_features:
            raise InvalidInput("n_informative cannot exceed n_features")
        if self.noise_scale <= 0:
            raise InvalidInput("noise_scale must be positive")


def gen_xor(config: GeneratorConfig) -> DataMatrix:
    """Binary features with the label equal to feature 1 XOR feature 5.

    Every feature is an independent fair coin; only the two wired into the
    parity carry label information, and neither does so on its own. Feature
    positions are 1-based in the description above, so the informative
    columns are indices 0 and 4.
    """
    if config.n_features < 5:
        raise InvalidInput("parity construction needs at least 5 features")
    for attempt in range(_MAX_REDRAWS):
        gen = substream(config.seed, f"xor-features#{attempt}")
        feats = gen.integers(0, 2, size=(config.n_samples, config.n_features))
        labels = feats[:, 0] ^ feats[:, 4]
        if (labels == 0).sum() >= 2 and (labels == 1).sum() >= 2:
            return DataMatrix(samples=feats.astype(float), labels=labels)
    raise DegenerateData("could not draw a two-class sample; increase n_samples")


def _draw_vertices(gen: np.random.Generator, count: int, dim: int) -> np.ndarray:
    vertices: list[tuple[int, ...]] = []
    for _ in range(_MAX_REDRAWS * count):
        v = tuple(int(b) for b in gen.integers(0, 2, size=dim))
        if v not in vertices:
            vertices.append(v)
        if len(vertices) == count:
            return 2.0 * np.array(vertices, dtype=float) - 1.0
    raise DegenerateData("could not draw distinct hypercube vertices")


def gen_hypercube(config: GeneratorConfig) -> tuple[DataMatrix, np.ndarray]:
    """Gaussian clusters on hypercube vertices plus pure-noise coordinates.

    Clusters sit at distinct random vertices of {-1, +1}^n_informative and
    are split two-per-class (more with a larger clusters_per_class). Each
    cluster draws standard-normal points, mixes them through its own random
    linear map with entries uniform in [-1, 1] (giving the cluster a random
    covariance, so informative coordinates are correlated in a
    cluster-specific way), and shifts them to its vertex. The remaining
    n_features - n_informative coordinates are independent normal noise
    with ``noise_scale`` spread. Columns are then shuffled by a seeded
    permutation; the returned index array locates the informative
    coordinates in the shuffled layout. Rows are grouped by cluster.
    """
    n_clusters = 2 * config.clusters_per_class
    if config.n_samples < 2 * n_clusters:
        raise InvalidInput("need at least two samples per cluster")
    p = config.n_informative
    d = config.n_features

    centers = _draw_vertices(
        substream(config.seed, "hypercube-centers"), n_clusters, p
    )
    order = substream(config.seed, "hypercube-assignments").permutation(n_clusters)
    cluster_class = np.empty(n_clusters, dtype=int)
    cluster_class[order[: config.clusters_per_class]] = 0
    cluster_class[order[config.clusters_per_class :]] = 1

    base = config.n_samples // n_clusters
    sizes = np.full(n_clusters, base)
    sizes[: config.n_samples - base * n_clusters] += 1

    noise_gen = substream(config.seed, "hypercube-noise")
    blocks = []
    for c in range(n_clusters):
        z = noise_gen.normal(size=(sizes[c], p))
        mix = noise_gen.uniform(-1.0, 1.0, size=(p, p))
        blocks.append(z @ mix + centers[c])
    informative = np.vstack(blocks)
    appended = noise_gen.normal(
        scale=config.noise_scale, size=(config.n_samples, d - p)
    )
    raw = np.hstack([informative, appended])
    labels = np.repeat(cluster_class, sizes)

    perm = substream(config.seed, "hypercube-permutation").permutation(d)
    data = DataMatrix(samples=raw[:, perm], labels=labels)
    informative_indices = np.flatnonzero(perm < p)
    return data, informative_indices


def fisher_score(data: DataMatrix) -> np.ndarray:
    """Between-class over within-class variance ratio per feature.

    Features with zero within-class variance but separated class means get a
    sentinel of FISHER_SENTINEL_FACTOR times the largest finite score (the
    factor itself if every other feature is degenerate too); fully constant
    features score zero.
    """
    x = data.samples
    y = data.labels
    mu = x.mean(axis=0)
    num = np.zeros(data.n_features)
    den = np.zeros(data.n_features)
    for cls in (0, 1):
        part = x[y == cls]
        n_c = part.shape[0]
        mu_c = part.mean(axis=0)
        num += n_c * (mu_c - mu) ** 2
        den += n_c * part.var(axis=0)
    scores = np.zeros(data.n_features)
    finite = den > 0
    scores[finite] = num[finite] / den[finite]
    blown = (~finite) & (num > 0)
    if blown.any():
        max_finite = scores[finite].max(initial=0.0)
        scores[blown] = FISHER_SENTINEL_FACTOR * max(max_finite, 1.0)
    return scores


def pearson_score(data: DataMatrix) -> np.ndarray:
    """Absolute correlation of each feature with the label."""
    x = data.samples
    y = data.labels.astype(float)
    xc = x - x.mean(axis=0)
    yc = y - y.mean()
    num = xc.T @ yc
    den = np.sqrt((xc**2).sum(axis=0) * (yc**2).sum())
    scores = np.zeros(data.n_features)
    ok = den > 0
    scores[ok] = np.abs(num[ok] / den[ok])
    return scores


def _parse_cell(cell: str, row: int, col: int) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ParseError(
            f"row {row}, column {col}: cannot parse {cell!r} as a number",
            row=row,
            col=col,
        ) from None


def _looks_numeric(cells: list[str]) -> bool:
    try:
        for cell in cells:
            float(cell)
    except ValueError:
        return False
    return True


def load_csv(
    path: str | Path,
    label_column: str | int,
    delimiter: str = ",",
) -> DataMatrix:
    """Read a rectangular numeric table with a binary label column.

    The first row is consumed as a header of feature names when any of its
    cells is non-numeric. ``label_column`` selects by header name or by
    zero-based position. Row/column indices in errors are 1-based file
    coordinates.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    if not rows:
        raise ParseError("file contains no rows")

    header: list[str] | None = None
    if not _looks_numeric(rows[0]):
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        if not rows:
            raise ParseError("file contains a header but no data rows")

    width = len(header) if header is not None else len(rows[0])
    if isinstance(label_column, int) or (
        isinstance(label_column, str) and label_column.lstrip("-").isdigit()
    ):
        label_idx = int(label_column)
        if not 0 <= label_idx < width:
            raise ParseError(f"label column index {label_idx} out of range")
    else:
        if header is None:
            raise ParseError(
                f"label column {label_column!r} needs a header row to resolve"
            )
        try:
            label_idx = header.index(label_column)
        except ValueError:
            raise ParseError(
                f"label column {label_column!r} not found in header"
            ) from None

    offset = 2 if header is not None else 1
    values = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(
                f"row {i + offset}: expected {width} cells, found {len(row)}",
                row=i + offset,
                col=min(len(row), width) + 1,
            )
        for j, cell in enumerate(row):
            values[i, j] = _parse_cell(cell.strip(), i + offset, j + 1)

    labels_raw = values[:, label_idx]
    if not np.isin(labels_raw, (0.0, 1.0)).all():
        bad = int(np.flatnonzero(~np.isin(labels_raw, (0.0, 1.0)))[0])
        raise ParseError(
            f"row {bad + offset}: label {labels_raw[bad]!r} is not 0 or 1",
            row=bad + offset,
            col=label_idx + 1,
        )

    keep = [j for j in range(width) if j != label_idx]
    names = tuple(header[j] for j in keep) if header is not None else None
    return DataMatrix(
        samples=values[:, keep],
        labels=labels_raw.astype(int),
        feature_names=names,
    )


def save_csv(data: DataMatrix, path: str | Path, delimiter: str = ",") -> None:
    """Write a DataMatrix with a header and a trailing ``label`` column.

    Floats are written with shortest round-trip formatting, so a load of the
    written file reproduces the matrix exactly.
    """
    names = data.feature_names or tuple(
        f"f{j}" for j in range(data.n_features)
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow([*names, "label"])
        for row, label in zip(data.samples, data.labels):
            writer.writerow([*(repr(float(v)) for v in row), int(label)])
