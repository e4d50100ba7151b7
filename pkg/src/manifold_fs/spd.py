"""Affine-invariant geometry of symmetric positive-definite matrices.

Closed forms used throughout:

    geodesic   g(t) = K1^{1/2} (K1^{-1/2} K2 K1^{-1/2})^t K1^{1/2}
    exp map    Exp_K(S) = K^{1/2} exp(K^{-1/2} S K^{-1/2}) K^{1/2}
    log map    Log_K(Q) = K^{1/2} log(K^{-1/2} Q K^{-1/2}) K^{1/2}

The between-class difference operator is the log map of the first kernel at
the geodesic midpoint of the pair; the midpoint is computed explicitly (not
fused into one formula) so callers can inspect it.

Inputs whose smallest/largest eigenvalue ratio falls below ``RATIO_GUARD``
raise NotPositiveDefinite instead of being regularized; rank-deficient
kernels belong on the fixed-rank path in :mod:`manifold_fs.spsd`.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput, NotPositiveDefinite
from .linalg import EigenSystem, sym_eig, sym_exp, sym_fn, sym_log, symmetrize

RATIO_GUARD = 1e-10


def _spd_eig(a: np.ndarray, name: str) -> EigenSystem:
    es = sym_eig(a)
    top = float(es.values[0])
    low = float(es.values[-1])
    if top <= 0.0 or low / top < RATIO_GUARD:
        raise NotPositiveDefinite(
            f"{name}: eigenvalue ratio {low:.3e}/{top:.3e} below "
            f"{RATIO_GUARD:.0e}; not treatable as SPD",
            eigenvalue=low,
        )
    return es


def _halves(es: EigenSystem) -> tuple[np.ndarray, np.ndarray]:
    """K^{1/2} and K^{-1/2} from one decomposition."""
    root = np.sqrt(es.values)
    sq = symmetrize((es.vectors * root) @ es.vectors.T)
    inv_sq = symmetrize((es.vectors / root) @ es.vectors.T)
    return sq, inv_sq


def geodesic(k1: np.ndarray, k2: np.ndarray, t: float) -> np.ndarray:
    """Point at parameter t on the geodesic from k1 to k2."""
    if not 0.0 <= t <= 1.0:
        raise InvalidInput(f"t must lie in [0, 1], got {t}")
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    if k1.shape != k2.shape:
        raise InvalidInput(f"shape mismatch: {k1.shape} vs {k2.shape}")
    sq, inv_sq = _halves(_spd_eig(k1, "geodesic: k1"))
    _spd_eig(k2, "geodesic: k2")
    inner = symmetrize(inv_sq @ k2 @ inv_sq)
    powered = sym_fn(inner, lambda w: w**t, require_positive=True)
    return symmetrize(sq @ powered @ sq)


def midpoint_mean(k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """Geodesic midpoint, which is also the two-matrix Riemannian mean."""
    return geodesic(k1, k2, 0.5)


def log_map(base: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Tangent vector at ``base`` pointing to ``target``."""
    base = np.asarray(base, dtype=float)
    target = np.asarray(target, dtype=float)
    if base.shape != target.shape:
        raise InvalidInput(f"shape mismatch: {base.shape} vs {target.shape}")
    sq, inv_sq = _halves(_spd_eig(base, "log_map: base"))
    _spd_eig(target, "log_map: target")
    inner = symmetrize(inv_sq @ target @ inv_sq)
    return symmetrize(sq @ sym_log(inner) @ sq)


def exp_map(base: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    """Inverse of log_map at the same base point."""
    base = np.asarray(base, dtype=float)
    tangent = symmetrize(tangent)
    if base.shape != tangent.shape:
        raise InvalidInput(f"shape mismatch: {base.shape} vs {tangent.shape}")
    sq, inv_sq = _halves(_spd_eig(base, "exp_map: base"))
    inner = symmetrize(inv_sq @ tangent @ inv_sq)
    return symmetrize(sq @ sym_exp(inner) @ sq)


def difference_operator(k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """Log map of k1 at the midpoint of (k1, k2).

    Antisymmetric in its arguments: swapping k1 and k2 negates the result,
    so one projection captures the whole between-pair difference.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    if k1.shape != k2.shape:
        raise InvalidInput(f"shape mismatch: {k1.shape} vs {k2.shape}")
    mid = midpoint_mean(k1, k2)
    return log_map(mid, k1)
