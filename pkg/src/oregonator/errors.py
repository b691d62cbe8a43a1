"""Exception types shared across the package."""


class OregonatorError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveParameter(OregonatorError):
    """A physical or nondimensional parameter that must be > 0 is not."""


class DegenerateBox(OregonatorError):
    """An invariant-region box with a non-positive side."""


class ModeCapTooSmall(OregonatorError):
    """The spatial-mode enumeration ended exactly at the maximizing mode,
    so the reported maximum may be an enumeration artifact."""


class SingularEigenbasis(OregonatorError):
    """Eigenvector formulas divide by sigma - 1; raised when sigma is at
    or too close to 1."""


class ScenarioMismatch(OregonatorError):
    """An operation was invoked for a transition scenario it does not
    apply to (e.g. a Hopf chain when the steady crossing comes first)."""


class SingularBlock(OregonatorError):
    """A 3x3 spectral block required by a center-manifold solve is
    numerically singular."""


class IndeterminateType(OregonatorError):
    """The classifying coefficient is too close to zero relative to the
    size of the terms it is assembled from."""


class BlowUp(OregonatorError):
    """A trajectory left the admissible range during time integration."""

    def __init__(self, time, message=None):
        self.time = time
        super().__init__(message or f"state magnitude exceeded threshold at t={time:g}")


class GridTooCoarse(OregonatorError):
    """The requested spatial grid cannot resolve the seeded mode."""


class SingularSolve(OregonatorError):
    """A bordered/auxiliary linear system in the Lyapunov-coefficient
    computation is numerically singular."""


class ConfigError(OregonatorError):
    """Malformed run configuration; the message names the offending field."""
