"""Fixed-rank geometry for symmetric positive semi-definite matrices.

A rank-k SPSD matrix K is handled through its structure-space representation
K = G P G^T with G a d x k orthonormal frame and P a k x k SPD core. The
pair is unique only up to a k x k orthogonal change of representative, so
every operation here first aligns representatives through an SVD of the
cross-Gram of the frames before mixing cores.

The approximate geodesic between two such matrices runs a Grassmann geodesic
on the frames and an affine-invariant geodesic on the aligned cores:

    path(t) = g(t) core_path(t) g(t)^T

Its midpoint gives the mean operator; the difference operator carries the
core-space log map back along the frame geodesic evaluated at t = 1. On
full-rank inputs both reduce to the SPD operations in
:mod:`manifold_fs.spd`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import spd
from .errors import DegenerateData, GeodesicDomain, InvalidInput
from .linalg import sym_eig, symmetrize

log = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-10

# sin(theta) below this is treated as an exactly shared direction when
# pseudo-inverting the angle matrix.
_SIN_FLOOR = 1e-12

_ANGLE_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class StructurePair:
    """Orthonormal basis and SPD core representing a rank-k SPSD matrix."""

    basis: np.ndarray
    core: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        return symmetrize(self.basis @ self.core @ self.basis.T)


def effective_rank(k: np.ndarray, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of eigenvalues above rel_tol times the largest one."""
    es = sym_eig(k)
    top = float(es.values[0])
    if top <= 0.0:
        raise DegenerateData("matrix has no positive eigenvalue")
    return int(np.count_nonzero(es.values > rel_tol * top))


def _top_k(k: np.ndarray, rank: int) -> tuple[np.ndarray, np.ndarray]:
    """Top-rank eigenvectors (columns) and eigenvalues, descending."""
    es = sym_eig(k)
    return es.vectors[:, :rank], es.values[:rank]


def spsd_decompose(k: np.ndarray, rank: int) -> StructurePair:
    """Structure-space representative from the top-rank eigenpairs."""
    k = np.asarray(k, dtype=float)
    if rank < 1:
        raise InvalidInput(f"rank must be at least 1, got {rank}")
    if rank > effective_rank(k):
        raise InvalidInput(
            f"requested rank {rank} exceeds effective rank {effective_rank(k)}"
        )
    basis, values = _top_k(k, rank)
    return StructurePair(basis=basis, core=np.diag(values), rank=rank)


class _Alignment(NamedTuple):
    """Frames, representative rotations and principal angles for a pair."""

    rank: int
    g1: np.ndarray
    g2: np.ndarray
    o1: np.ndarray
    o2: np.ndarray
    theta: np.ndarray
    p1: np.ndarray
    p2: np.ndarray


def _angles_from_cosines(cosines: np.ndarray) -> np.ndarray:
    """Principal angles from cosines, clipping round-off; guards pi/2."""
    theta = np.arccos(np.clip(cosines, -1.0, 1.0))
    if theta.size and float(theta.max()) > np.pi / 2 + _ANGLE_SLACK:
        raise GeodesicDomain(
            f"principal angle {float(theta.max()):.6f} exceeds pi/2"
        )
    return theta


def _principal_angles(cross: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD of a cross-Gram, returning (o_to, theta, o_from)."""
    u, s, vt = np.linalg.svd(cross)
    return u, _angles_from_cosines(s), vt.T


def _grassmann_path(
    a: np.ndarray,
    o_a: np.ndarray,
    b: np.ndarray,
    o_b: np.ndarray,
    theta: np.ndarray,
    t: float,
) -> np.ndarray:
    """Closed-form subspace geodesic for pre-aligned representatives.

    Conventions: the path runs from span(a) to span(b); o_a, o_b and theta
    come from the SVD b^T a = o_b diag(cos theta) o_a^T.
    """
    aligned_a = a @ o_a
    aligned_b = b @ o_b
    sin_theta = np.sin(theta)
    inv_sin = np.where(sin_theta > _SIN_FLOOR, 1.0 / np.maximum(sin_theta, _SIN_FLOOR), 0.0)
    x = (aligned_b - a @ (a.T @ aligned_b)) * inv_sin
    return aligned_a * np.cos(theta * t) + x * np.sin(theta * t)


def grassmann_geodesic(g1: np.ndarray, g2: np.ndarray, t: float) -> np.ndarray:
    """Geodesic between the subspaces spanned by two orthonormal frames."""
    if not 0.0 <= t <= 1.0:
        raise InvalidInput(f"t must lie in [0, 1], got {t}")
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    if g1.shape != g2.shape:
        raise InvalidInput(f"frame shape mismatch: {g1.shape} vs {g2.shape}")
    for name, g in (("g1", g1), ("g2", g2)):
        gram = g.T @ g
        if not np.allclose(gram, np.eye(g.shape[1]), atol=1e-6):
            raise InvalidInput(f"{name} does not have orthonormal columns")
    o2, theta, o1 = _principal_angles(g2.T @ g1)
    return _grassmann_path(g1, o1, g2, o2, theta, t)


def _align(k1: np.ndarray, k2: np.ndarray, rank_tol: float) -> _Alignment:
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    if k1.shape != k2.shape:
        raise InvalidInput(f"shape mismatch: {k1.shape} vs {k2.shape}")
    r1 = effective_rank(k1, rank_tol)
    r2 = effective_rank(k2, rank_tol)
    rank = min(r1, r2)
    g1, w1 = _top_k(k1, rank)
    g2, w2 = _top_k(k2, rank)
    if r1 != r2:
        kept = w1.sum() if r1 > r2 else w2.sum()
        total = np.trace(k1) if r1 > r2 else np.trace(k2)
        log.debug(
            "truncating ranks (%d, %d) to %d; retained spectral mass %.3e of %.3e",
            r1,
            r2,
            rank,
            kept,
            total,
        )
    o2, theta, o1 = _principal_angles(g2.T @ g1)
    p1 = symmetrize(o1.T @ (g1.T @ k1 @ g1) @ o1)
    p2 = symmetrize(o2.T @ (g2.T @ k2 @ g2) @ o2)
    return _Alignment(rank, g1, g2, o1, o2, theta, p1, p2)


def _mean_parts(al: _Alignment) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    g_mid = _grassmann_path(al.g1, al.o1, al.g2, al.o2, al.theta, 0.5)
    p_mid = spd.geodesic(al.p1, al.p2, 0.5)
    mean = symmetrize(g_mid @ p_mid @ g_mid.T)
    return mean, g_mid, p_mid


def spsd_mean(
    k1: np.ndarray, k2: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL
) -> tuple[np.ndarray, StructurePair]:
    """Midpoint of the approximate fixed-rank geodesic, with its structure."""
    al = _align(k1, k2, rank_tol)
    mean, g_mid, p_mid = _mean_parts(al)
    return mean, StructurePair(basis=g_mid, core=p_mid, rank=al.rank)


def _difference_from_alignment(
    k1: np.ndarray, al: _Alignment, mean: np.ndarray
) -> np.ndarray:
    g_m, _ = _top_k(mean, al.rank)
    o1t, theta, o_m = _principal_angles(al.g1.T @ g_m)
    p_m = symmetrize(o_m.T @ (g_m.T @ mean @ g_m) @ o_m)
    p1t = symmetrize(o1t.T @ (al.g1.T @ k1 @ al.g1) @ o1t)
    tangent_core = spd.log_map(p_m, p1t)
    carrier = _grassmann_path(g_m, o_m, al.g1, o1t, theta, 1.0)
    return symmetrize(carrier @ tangent_core @ carrier.T)


def spsd_difference(
    k1: np.ndarray, k2: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL
) -> np.ndarray:
    """Fixed-rank analogue of the SPD difference operator.

    The core-space log map of the first matrix at the mean is carried back
    to d x d space along the frame geodesic from the mean's subspace to the
    first matrix's subspace.
    """
    mean, d = mean_and_difference(k1, k2, rank_tol)
    return d


def mean_and_difference(
    k1: np.ndarray, k2: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Mean and difference operators from one shared decomposition pass."""
    k1 = np.asarray(k1, dtype=float)
    al = _align(k1, k2, rank_tol)
    mean, _, _ = _mean_parts(al)
    diff = _difference_from_alignment(k1, al, mean)
    return mean, diff
