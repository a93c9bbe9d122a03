"""Exception types and size-guard handling shared across the package."""

from __future__ import annotations

import os


class MatgorError(Exception):
    """Base class for all errors raised by this package."""


class MatroidError(MatgorError):
    """Invalid matroid input or query."""


class BasisExchangeViolation(MatroidError):
    """A claimed basis family fails the exchange axiom."""

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"basis exchange fails for {pair[0]} vs {pair[1]}")


class AxiomViolation(MatroidError):
    """A structural axiom (matroid or projective plane) fails."""

    def __init__(self, axiom, message=None):
        self.axiom = axiom
        super().__init__(message or f"axiom violated: {axiom}")


class GuardExceeded(MatgorError):
    """A desk-scale size guard was hit (override with MATGOR_GUARD_OVERRIDE)."""


class TiedWeight(MatgorError):
    """Weight vector lies on a wall of the Groebner fan of a general ideal."""


class DimensionMismatch(MatgorError):
    """Graded dimensions do not line up with lattice level sizes."""


class InvariantError(MatgorError):
    """An internal mathematical invariant failed; indicates a bug."""


class DegreeCapExceeded(MatgorError):
    """Polynomial degree exceeded the configured cap."""


def guard(condition, message):
    """Raise GuardExceeded unless the condition holds or guards are lifted."""
    if condition:
        return
    if os.environ.get("MATGOR_GUARD_OVERRIDE"):
        return
    raise GuardExceeded(message)
