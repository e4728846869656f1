"""Discrete velocity grid, moments, Maxwellians, and the conservation fix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg

from .errors import ConfigError, InadmissibleStateError

RHO_FLOOR = 1e-13
THETA_FLOOR = 1e-13


@dataclass(frozen=True)
class VelocityGrid:
    """Gauss-Legendre velocity quadrature on [-v_max, v_max].

    moment_matrix has rows (w_k, w_k v_k, w_k v_k^2 / 2); applying it to a
    discrete distribution yields mass, momentum, and energy densities.
    """

    n_points: int
    v_max: float
    points: np.ndarray
    weights: np.ndarray
    moment_matrix: np.ndarray
    gram: np.ndarray  # moment_matrix @ moment_matrix.T, factor for the fix


def build_velocity_grid(n_points: int, v_max: float) -> VelocityGrid:
    """Build the velocity grid.

    Args:
        n_points: quadrature size, >= 1.
        v_max: half-width of the symmetric velocity interval, > 0.
    """
    if n_points < 1:
        raise ConfigError(f"n_points must be >= 1, got {n_points}")
    if not v_max > 0:
        raise ConfigError(f"v_max must be positive, got {v_max}")
    ref_pts, ref_wts = npleg.leggauss(n_points)
    points = v_max * ref_pts
    weights = v_max * ref_wts
    moment_matrix = np.stack([weights, weights * points, 0.5 * weights * points**2])
    return VelocityGrid(
        n_points=n_points,
        v_max=float(v_max),
        points=points,
        weights=weights,
        moment_matrix=moment_matrix,
        gram=moment_matrix @ moment_matrix.T,
    )


def moments_to_primitives(q: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Convert conserved moments (rho, m, E) to (rho, u, theta).

    Args:
        q: array with leading axis of length 3.

    Raises:
        InadmissibleStateError: density or temperature at or below the floor.
    """
    rho, mom, energy = np.asarray(q[0]), np.asarray(q[1]), np.asarray(q[2])
    if np.any(rho <= RHO_FLOOR) or not np.all(np.isfinite(rho)):
        raise InadmissibleStateError("density at or below floor")
    u = mom / rho
    theta = (2.0 * energy - rho * u**2) / rho
    if np.any(theta <= THETA_FLOOR) or not np.all(np.isfinite(theta)):
        raise InadmissibleStateError("temperature at or below floor")
    return rho, u, theta


def primitives_to_moments(rho, u, theta) -> np.ndarray:
    rho, u, theta = np.broadcast_arrays(
        np.asarray(rho, dtype=float), np.asarray(u, dtype=float), np.asarray(theta, dtype=float)
    )
    return np.stack([rho, rho * u, 0.5 * rho * (u**2 + theta)])


def maxwellian_at(q: np.ndarray, v) -> np.ndarray:
    """Maxwellian density of the state q evaluated at velocity v (d = 1)."""
    rho, u, theta = moments_to_primitives(q)
    v = np.asarray(v, dtype=float)
    return rho / np.sqrt(2.0 * np.pi * theta) * np.exp(-((v - u) ** 2) / (2.0 * theta))


def maxwellian_field(
    q: np.ndarray, grid: VelocityGrid, on_vacuum: str = "raise"
) -> np.ndarray:
    """Discrete Maxwellian of a moment field, shape (n_points,) + q.shape[1:].

    Args:
        q: moments, shape (3, ...).
        grid: velocity grid supplying the evaluation points.
        on_vacuum: "raise" rejects states below the density floor; "zero" maps
            them to an identically zero distribution (the collided part starts
            each step at exactly zero, so this path is routine for it).
    """
    q = np.asarray(q, dtype=float)
    if on_vacuum == "raise":
        rho, u, theta = moments_to_primitives(q)
    elif on_vacuum == "zero":
        vac = q[0] <= RHO_FLOOR
        if np.all(vac):
            return np.zeros((grid.n_points,) + q.shape[1:])
        safe = np.where(vac, 1.0, q[0])
        u = q[1] / safe
        theta = (2.0 * q[2] - safe * u**2) / safe
        theta = np.where(vac, 1.0, theta)
        if np.any(theta <= THETA_FLOOR):
            raise InadmissibleStateError("nonvacuum state with temperature below floor")
        rho = np.where(vac, 0.0, q[0])
    else:
        raise ValueError(f"unknown vacuum policy {on_vacuum!r}")
    v = grid.points.reshape((grid.n_points,) + (1,) * (q.ndim - 1))
    return rho / np.sqrt(2.0 * np.pi * theta) * np.exp(-((v - u) ** 2) / (2.0 * theta))


def discrete_moments(f: np.ndarray, grid: VelocityGrid) -> np.ndarray:
    """Quadrature moments of a discrete distribution, shape (3,) + f.shape[1:]."""
    return np.tensordot(grid.moment_matrix, f, axes=(1, 0))


def conservation_fix(f: np.ndarray, q_target: np.ndarray, grid: VelocityGrid) -> np.ndarray:
    """Minimal-norm correction of f so its discrete moments equal q_target.

    Args:
        f: distribution values, shape (n_points, ...).
        q_target: target moments, shape (3, ...) conforming with f.

    Returns:
        f + E^T (E E^T)^{-1} (q_target - E f) with E the moment matrix.

    Raises:
        ConfigError: fewer than 3 velocity points (moment matrix loses rank).
    """
    if grid.n_points < 3:
        raise ConfigError("conservation fix requires at least 3 velocity points")
    defect = np.asarray(q_target, dtype=float) - discrete_moments(f, grid)
    multiplier = np.linalg.solve(
        grid.gram, defect.reshape(3, -1)
    ).reshape(defect.shape)
    return f + np.tensordot(grid.moment_matrix.T, multiplier, axes=(1, 0))
