"""Exception types shared across the package."""


class MorawetzLabError(Exception):
    """Base class for all package-specific errors."""


class OutOfChart(MorawetzLabError):
    """A point left the exterior chart (r at/below the floor, or too close to the axis)."""


class FamilyMismatch(MorawetzLabError):
    """A generator or tensor was requested on a metric family it is not defined for."""


class DegenerateDirection(MorawetzLabError):
    """The spatial direction supplied for null initial data is zero."""


class StepUnderflow(MorawetzLabError):
    """The adaptive integrator could not take a step of acceptable size."""


class EmptyGrid(MorawetzLabError):
    """A scan was requested on an empty sample grid."""


class NoExteriorRoots(MorawetzLabError):
    """The radial potential has no real roots in the exterior chart."""


class NoTrappedOrbit(MorawetzLabError):
    """No trapped-orbit root was found in the requested seed interval."""


class InvalidSpec(MorawetzLabError):
    """A potential or mode specification violates its invariants (e.g. l < s)."""


class CFLViolation(MorawetzLabError):
    """Requested time step exceeds the CFL bound for the grid."""


class NonFiniteField(MorawetzLabError):
    """A field value became non-finite during evolution."""


class GridMismatch(MorawetzLabError):
    """Mode states in a collection do not share grid, time, or family."""


class WindowOutsideGrid(MorawetzLabError):
    """A probe window extends beyond the computational grid."""


class ProfileUndefined(MorawetzLabError):
    """A multiplier profile cannot be evaluated on the requested grid."""


class ConfigError(MorawetzLabError):
    """Scenario configuration is malformed or violates a constraint."""


class ParseError(ConfigError):
    """Configuration text could not be parsed at all."""


class ConstraintViolation(ConfigError):
    """Configuration parsed but a value violates a physical or structural constraint."""


class AuditFailure(MorawetzLabError):
    """A built-in invariant audit exceeded its tolerance."""


class IoError(MorawetzLabError):
    """An output file or directory could not be created or completed."""
