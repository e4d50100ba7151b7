"""Symmetric-matrix numerical kernel.

Eigendecomposition-based matrix functions and subspace utilities used by the
geometry modules. Everything operates on dense float64 arrays; matrices
documented as symmetric are symmetrized on entry as (A + A^T)/2 so downstream
code never sees asymmetric round-off.

Determinism: eigenvalues are sorted in descending (signed) order and every
eigenvector / left singular vector has its first nonzero entry made positive,
so repeated runs produce identical bytes. Scores built downstream are
invariant to these sign choices; the convention only pins the representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidInput, NotPositiveDefinite

# Relative floor below which an eigenvalue is treated as violating strict
# positivity when a matrix function needs a positive spectrum (log, inverse
# powers). Rank-deficient kernels should go through the fixed-rank path
# instead of being clamped here.
SPD_FLOOR_RATIO = 1e-12


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues (descending) paired with orthonormal column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def symmetrize(a: np.ndarray) -> np.ndarray:
    """(A + A^T)/2 as a new array."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + a.T)


def _check_finite_square(a: np.ndarray, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"{name}: expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise InvalidInput(f"{name}: matrix contains non-finite entries")
    return a


def _fix_column_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the first nonzero entry of each is positive."""
    v = vectors.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        peak = np.abs(col).max()
        if peak == 0.0:
            continue
        nz = np.flatnonzero(np.abs(col) > 1e-12 * peak)
        if nz.size and col[nz[0]] < 0:
            v[:, j] = -col
    return v


def sym_eig(a: np.ndarray) -> EigenSystem:
    """Eigendecomposition of a symmetric matrix.

    Returns eigenvalues sorted descending by signed value with matching
    orthonormal eigenvectors in the columns, sign-fixed as described in the
    module docstring.
    """
    a = symmetrize(_check_finite_square(a, "sym_eig"))
    w, v = np.linalg.eigh(a)
    order = np.argsort(w, kind="stable")[::-1]
    return EigenSystem(values=w[order], vectors=_fix_column_signs(v[:, order]))


def sym_fn(
    a: np.ndarray,
    fn: Callable[[np.ndarray], np.ndarray],
    *,
    require_positive: bool = False,
) -> np.ndarray:
    """Apply a scalar function to a symmetric matrix through its spectrum.

    Computes V diag(fn(w)) V^T. With ``require_positive`` the spectrum must
    stay above ``SPD_FLOOR_RATIO`` times the largest eigenvalue; use it for
    log and negative/fractional powers, whose domain excludes zero.
    """
    es = sym_eig(a)
    if require_positive:
        top = float(es.values[0])
        floor = SPD_FLOOR_RATIO * max(top, 0.0)
        low = float(es.values[-1])
        if top <= 0.0 or low <= floor:
            raise NotPositiveDefinite(
                f"eigenvalue {low:.6e} at or below positivity floor "
                f"{floor:.6e}",
                eigenvalue=low,
            )
    w = np.asarray(fn(es.values), dtype=float)
    return symmetrize((es.vectors * w) @ es.vectors.T)


def sym_sqrt(a: np.ndarray) -> np.ndarray:
    return sym_fn(a, np.sqrt, require_positive=True)


def sym_inv_sqrt(a: np.ndarray) -> np.ndarray:
    return sym_fn(a, lambda w: 1.0 / np.sqrt(w), require_positive=True)


def sym_log(a: np.ndarray) -> np.ndarray:
    return sym_fn(a, np.log, require_positive=True)


def sym_exp(a: np.ndarray) -> np.ndarray:
    return sym_fn(a, np.exp)


def sym_power(a: np.ndarray, t: float) -> np.ndarray:
    return sym_fn(a, lambda w: w**t, require_positive=True)


def thin_svd(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD of a d x k matrix (k <= d): A = U diag(s) Vt.

    Singular values come back descending and nonnegative; U columns carry the
    same first-nonzero-positive sign convention as sym_eig (compensated in
    Vt, so the product is unchanged).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise InvalidInput(f"thin_svd: expected a matrix, got shape {a.shape}")
    if a.shape[1] > a.shape[0]:
        raise InvalidInput(
            f"thin_svd: expected k <= d, got shape {a.shape}"
        )
    if not np.isfinite(a).all():
        raise InvalidInput("thin_svd: matrix contains non-finite entries")
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    flip = np.ones(u.shape[1])
    for j in range(u.shape[1]):
        col = u[:, j]
        peak = np.abs(col).max()
        if peak == 0.0:
            continue
        nz = np.flatnonzero(np.abs(col) > 1e-12 * peak)
        if nz.size and col[nz[0]] < 0:
            flip[j] = -1.0
    return u * flip, s, vt * flip[:, None]
