"""Hybrid uncollided/collided solver for the 1D BGK equation.

The package couples an implicit discrete-velocity DG transport solver for the
free-streaming (uncollided) part of the distribution with an explicit DG solver
for the moments of the collided part, and provides IMEX discrete-velocity
integrators as baselines.
"""

from __future__ import annotations

from .errors import (
    ConfigError,
    InadmissibleStateError,
    StepFailureError,
    SweepConvergenceError,
)

__all__ = [
    "ConfigError",
    "InadmissibleStateError",
    "StepFailureError",
    "SweepConvergenceError",
]

__version__ = "0.1.0"
