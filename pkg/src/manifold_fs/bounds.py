"""Numerical checks of the spectral predictions behind the score.

For a unit vector shared (exactly or approximately) by both class kernels
with Rayleigh quotients l1 and l2, the difference operator has a matching
eigenvalue sqrt(l1 l2) (log l1 - log l2) / 2, and its magnitude is bounded
by an entrywise expression in the two kernels. These checks are used as
test oracles and exposed as diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotSharedEigenvector
from .kernels import KernelMatrix

# Residual ||K phi - (phi^T K phi) phi|| above which a vector is rejected as
# a shared eigenvector.
SHARED_EIG_RESIDUAL = 1e-6

_SLACK_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation: |eigenvalue|, bound value, slack, verdict."""

    lambda_d_abs: float
    rhs: float
    slack: float
    satisfied: bool


def _report(lhs: float, rhs: float) -> BoundReport:
    slack = rhs - lhs
    return BoundReport(
        lambda_d_abs=lhs,
        rhs=rhs,
        slack=slack,
        satisfied=slack >= -_SLACK_TOL * max(1.0, rhs),
    )


def _kernel_array(k: KernelMatrix | np.ndarray) -> np.ndarray:
    mat = k.matrix if isinstance(k, KernelMatrix) else k
    return np.asarray(mat, dtype=float)


def _unit_vector(phi: np.ndarray, name: str) -> np.ndarray:
    phi = np.asarray(phi, dtype=float).ravel()
    norm = float(np.linalg.norm(phi))
    if abs(norm - 1.0) > 1e-6:
        raise InvalidInput(f"{name} must be unit-norm, got norm {norm:.6e}")
    return phi / norm


def predicted_shared_eigenvalue(l1: float, l2: float) -> float:
    """Difference-operator eigenvalue for a shared eigendirection.

    Antisymmetric in (l1, l2) and zero exactly when they agree.
    """
    if l1 <= 0.0 or l2 <= 0.0:
        raise InvalidInput(f"eigenvalues must be positive, got ({l1}, {l2})")
    return 0.5 * math.sqrt(l1 * l2) * (math.log(l1) - math.log(l2))


def _entrywise_rhs(k1: np.ndarray, k2: np.ndarray, phi: np.ndarray) -> float:
    weights = np.abs(phi)
    return 2.0 * float(weights @ np.abs(k1 - k2) @ weights)


def prop1_bound(
    k1: KernelMatrix | np.ndarray,
    k2: KernelMatrix | np.ndarray,
    phi: np.ndarray,
) -> BoundReport:
    """Entrywise bound on the eigenvalue attached to a shared eigenvector."""
    a1 = _kernel_array(k1)
    a2 = _kernel_array(k2)
    phi = _unit_vector(phi, "phi")
    rayleigh = []
    for name, a in (("first kernel", a1), ("second kernel", a2)):
        lam = float(phi @ a @ phi)
        residual = float(np.linalg.norm(a @ phi - lam * phi))
        if residual > SHARED_EIG_RESIDUAL:
            raise NotSharedEigenvector(
                f"residual {residual:.3e} against {name} exceeds "
                f"{SHARED_EIG_RESIDUAL:.0e}"
            )
        rayleigh.append(lam)
    lhs = abs(predicted_shared_eigenvalue(rayleigh[0], rayleigh[1]))
    return _report(lhs, _entrywise_rhs(a1, a2, phi))


def prop2_bound(
    k1: KernelMatrix | np.ndarray,
    k2: KernelMatrix | np.ndarray,
    phi1: np.ndarray,
    phi2: np.ndarray,
    eps: float,
) -> BoundReport:
    """Bound for approximately shared eigenvectors, ||phi2 - phi1|| <= eps.

    The entrywise term is evaluated on phi1; the perturbation contributes
    2 a eps^2 with a the largest row sum of the second kernel.
    """
    a1 = _kernel_array(k1)
    a2 = _kernel_array(k2)
    phi1 = _unit_vector(phi1, "phi1")
    phi2 = _unit_vector(phi2, "phi2")
    gap = float(np.linalg.norm(phi2 - phi1))
    if gap > eps:
        raise InvalidInput(f"||phi2 - phi1|| = {gap:.3e} exceeds eps = {eps:.3e}")
    l1 = float(phi1 @ a1 @ phi1)
    l2 = float(phi2 @ a2 @ phi2)
    lhs = abs(predicted_shared_eigenvalue(l1, l2))
    a = float(a2.sum(axis=1).max())
    rhs = _entrywise_rhs(a1, a2, phi1) + 2.0 * a * eps * eps
    return _report(lhs, rhs)
