"""Exception types shared across the solver."""

from __future__ import annotations


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


class InadmissibleStateError(ValueError):
    """Moments with nonpositive density or temperature where a Maxwellian is required."""


class SweepConvergenceError(RuntimeError):
    """Periodic sweep fixed-point iteration failed to reach tolerance."""


class StepFailureError(RuntimeError):
    """A time step produced non-finite data or an unrecoverable solver error."""
