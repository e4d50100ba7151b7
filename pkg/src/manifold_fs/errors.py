"""Exception types shared across the library."""

from __future__ import annotations


class ManifoldFSError(Exception):
    """Base class for all library errors."""


class InvalidInput(ManifoldFSError):
    """Argument violates a documented precondition (shape, domain, range)."""


class DegenerateData(ManifoldFSError):
    """Data collapses a required quantity (zero scale, zero row sum, ...)."""


class NotPositiveDefinite(ManifoldFSError):
    """A matrix required to be SPD has an eigenvalue at or below the floor.

    Carries the offending eigenvalue so callers can report it or decide to
    reroute through the fixed-rank (SPSD) code path.
    """

    def __init__(self, message: str, eigenvalue: float | None = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class GeodesicDomain(ManifoldFSError):
    """Subspace pair outside the domain of the closed-form geodesic."""


class NotSharedEigenvector(ManifoldFSError):
    """Vector fails the shared-eigenvector residual check."""


class ParseError(ManifoldFSError):
    """Tabular input could not be parsed; carries 1-based row/column."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col
