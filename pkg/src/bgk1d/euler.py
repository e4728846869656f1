"""Explicit DG solver pieces for the collided moment system.

The collided part of the distribution is closed as a Maxwellian, so its
moments obey the compressible Euler equations (monatomic 1D gas, adiabatic
index 3) with a kinetic source. Moment fields have shape (3, n_cells, n_nodes)
ordered (density, momentum, energy).
"""

from __future__ import annotations

import numpy as np

from .discretization import Discretization
from .errors import InadmissibleStateError
from .velocity import (
    RHO_FLOOR,
    THETA_FLOOR,
    VelocityGrid,
    maxwellian_at,
    moments_to_primitives,
)

LAMBDA_FLOOR = 1e-12


def _primitives_or_vacuum(q: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(vacuum mask, rho, u, theta) with u = theta = 0 on vacuum entries."""
    rho = np.asarray(q[0], dtype=float)
    vacuum = rho <= RHO_FLOOR
    safe = np.where(vacuum, 1.0, rho)
    u = np.where(vacuum, 0.0, q[1] / safe)
    theta = np.where(vacuum, 0.0, (2.0 * q[2] - safe * u**2) / safe)
    return vacuum, np.where(vacuum, 0.0, rho), u, theta


def euler_flux(q: np.ndarray) -> np.ndarray:
    """Flux of the moment system: (m, m^2/rho + rho theta, u (E + rho theta)).

    Vacuum states (density at or below the floor) map to a zero flux; the
    collided field starts every step at exactly zero, so this is the routine
    path, not an error path.
    """
    q = np.asarray(q, dtype=float)
    vacuum, rho, u, theta = _primitives_or_vacuum(q)
    p = rho * theta
    flux = np.stack([q[1], q[1] * u + p, u * (q[2] + p)])
    return np.where(vacuum, 0.0, flux)


def flux_jacobian(q: np.ndarray) -> np.ndarray:
    """Jacobian of euler_flux at one admissible state, rows d(flux)/d(rho, m, E)."""
    rho, u, theta = moments_to_primitives(np.asarray(q, dtype=float))
    m, energy = q[1], q[2]
    return np.array(
        [
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 2.0],
            [
                -3.0 * m * energy / rho**2 + 2.0 * m**3 / rho**3,
                3.0 * energy / rho - 3.0 * m**2 / rho**2,
                3.0 * m / rho,
            ],
        ]
    )


def characteristic_speed(q: np.ndarray) -> np.ndarray:
    """Fastest signal speed |u| + sqrt(3 theta) per state; 0 on vacuum."""
    vacuum, _, u, theta = _primitives_or_vacuum(np.asarray(q, dtype=float))
    return np.where(vacuum, 0.0, np.abs(u) + np.sqrt(3.0 * np.abs(theta)))


def llf_flux(q_minus: np.ndarray, q_plus: np.ndarray) -> np.ndarray:
    """Local Lax-Friedrichs flux between trace states of shape (3, ...)."""
    lam = np.maximum(characteristic_speed(q_minus), characteristic_speed(q_plus))
    return 0.5 * (euler_flux(q_minus) + euler_flux(q_plus) - lam * (q_plus - q_minus))


def half_range_wall_flux(q_trace: np.ndarray, grid: VelocityGrid, outgoing: str) -> np.ndarray:
    """Kinetic boundary flux: half-range velocity quadrature of the trace Maxwellian.

    Only the outgoing half contributes; the incoming (collided) inflow is zero
    by construction of the split. A trace that has no Maxwellian shape, either
    vacuum or with no thermal spread (a cold sliver of collided gas at a far
    wall), yields a zero flux.
    """
    rho = q_trace[0]
    if rho <= RHO_FLOOR or 2.0 * q_trace[2] * rho - q_trace[1] ** 2 <= THETA_FLOOR * rho**2:
        return np.zeros(3)
    sel = grid.points > 0 if outgoing == "positive" else grid.points < 0
    m_vals = maxwellian_at(q_trace, grid.points[sel])
    return grid.moment_matrix[:, sel] @ (grid.points[sel] * m_vals)


def max_wavespeed(q: np.ndarray, disc: Discretization) -> float:
    """Largest characteristic speed over all cell interface traces."""
    mats = disc.matrices
    speeds_l = characteristic_speed(q @ mats.trace_left)
    speeds_r = characteristic_speed(q @ mats.trace_right)
    return float(max(speeds_l.max(initial=0.0), speeds_r.max(initial=0.0)))


def collided_rhs(
    q_c: np.ndarray,
    q_u: np.ndarray | None,
    epsilon: float,
    disc: Discretization,
    periodic: bool,
    wall_states: tuple[np.ndarray, np.ndarray] | None = None,
) -> np.ndarray:
    """Semi-discrete right-hand side of the collided moment system.

    Args:
        q_c: collided moments, shape (3, n_cells, n_nodes).
        q_u: optional kinetic source moments; added as q_u / epsilon.
        epsilon: relaxation time.
        disc: discretization bundle.
        periodic: True wraps the domain; False uses physical wall fluxes.
        wall_states: optional (left, right) ghost moments for non-periodic
            runs; when given, walls use the numerical flux against the ghost
            state (moment-level inflow data). When absent, walls use the
            half-range Maxwellian flux with zero incoming part, which is the
            correct closure for the collided field inside the hybrid split.

    Returns:
        dq_c/dt with the same shape as q_c.
    """
    mats, mesh = disc.matrices, disc.mesh
    phi = euler_flux(q_c)
    volume = np.einsum("ab,cib->cia", mats.stiffness, phi)

    trace_r = q_c @ mats.trace_right  # (3, n_cells)
    trace_l = q_c @ mats.trace_left
    if periodic:
        flux_right_edge = llf_flux(trace_r, np.roll(trace_l, -1, axis=1))
        flux_left_edge = np.roll(flux_right_edge, 1, axis=1)
    else:
        interior = llf_flux(trace_r[:, :-1], trace_l[:, 1:])
        if wall_states is not None:
            wall_left = llf_flux(wall_states[0], trace_l[:, 0])
            wall_right = llf_flux(trace_r[:, -1], wall_states[1])
        else:
            wall_left = half_range_wall_flux(trace_l[:, 0], disc.grid, outgoing="negative")
            wall_right = half_range_wall_flux(trace_r[:, -1], disc.grid, outgoing="positive")
        flux_right_edge = np.concatenate([interior, wall_right[:, None]], axis=1)
        flux_left_edge = np.concatenate([wall_left[:, None], interior], axis=1)

    weak = (
        volume
        - flux_right_edge[:, :, None] * mats.trace_right[None, None, :]
        + flux_left_edge[:, :, None] * mats.trace_left[None, None, :]
    )
    inv_mass = np.linalg.inv(mats.mass)
    rhs = (2.0 / mesh.h) * np.einsum("ab,cib->cia", inv_mass, weak)
    if q_u is not None:
        rhs = rhs + q_u / epsilon
    return rhs


def moment_pc_step(
    q: np.ndarray,
    dt: float,
    disc: Discretization,
    periodic: bool,
    source_moments: np.ndarray | None = None,
    wall_states: tuple[np.ndarray, np.ndarray] | None = None,
    limiter_m: float | None = None,
) -> np.ndarray:
    """Midpoint predictor-corrector step of the bare moment system.

    This is the moment-only baseline: the same spatial operator the collided
    field uses, integrated with a second order two-stage explicit method and
    no kinetic coupling. source_moments is a fixed moment-space source.
    """

    def rhs(state: np.ndarray) -> np.ndarray:
        out = collided_rhs(state, None, 1.0, disc, periodic, wall_states=wall_states)
        if source_moments is not None:
            out = out + source_moments
        return out

    def limit(state: np.ndarray) -> np.ndarray:
        if limiter_m is None:
            return state
        return admissibility_fallback(tvb_limit(state, limiter_m, disc, periodic), disc)

    q_half = limit(q + 0.5 * dt * rhs(q))
    return limit(q + dt * rhs(q_half))


def _minmod_pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    same = (np.sign(a) == np.sign(b)) & (a != 0.0)
    return np.where(same, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def _tvb_minmod(a1, a2, a3, dead_band):
    keep = np.abs(a1) <= dead_band
    same = (np.sign(a1) == np.sign(a2)) & (np.sign(a1) == np.sign(a3)) & (a1 != 0.0)
    limited = np.where(
        same, np.sign(a1) * np.minimum(np.abs(a1), np.minimum(np.abs(a2), np.abs(a3))), 0.0
    )
    return np.where(keep, a1, limited)


def tvb_limit(
    q: np.ndarray,
    m_tvb: float,
    disc: Discretization,
    periodic: bool,
) -> np.ndarray:
    """TVB slope limiter applied per leading-axis component, cell means preserved.

    Works on any stacked field of shape (n_components, n_cells, n_nodes): the
    moment field (3 components) or a kinetic field (one component per velocity).
    Cells whose interface deviations exceed the minmod-modified values (outside
    the dead band |a| <= m_tvb h^2) are replaced by their limited linear part.
    m_tvb = inf disables limiting.
    """
    if np.isinf(m_tvb):
        return q.copy()
    mats, mesh, basis = disc.matrices, disc.mesh, disc.basis
    means = q @ basis.modal[0]  # (n_components, n_cells)
    du_r = q @ mats.trace_right - means
    du_l = means - q @ mats.trace_left
    if periodic:
        fwd = np.roll(means, -1, axis=1) - means
        bwd = means - np.roll(means, 1, axis=1)
    else:
        # zero-gradient ghost means at the physical walls
        pad = np.zeros((q.shape[0], 1))
        fwd = np.concatenate([means[:, 1:] - means[:, :-1], pad], axis=1)
        bwd = np.concatenate([pad, means[:, 1:] - means[:, :-1]], axis=1)
    dead_band = m_tvb * mesh.h**2
    mod_r = _tvb_minmod(du_r, fwd, bwd, dead_band)
    mod_l = _tvb_minmod(du_l, fwd, bwd, dead_band)
    changed = (mod_r != du_r) | (mod_l != du_l)  # (n_components, n_cells)
    if not np.any(changed):
        return q.copy()
    slope = _minmod_pair(mod_r, mod_l)
    linear = means[:, :, None] + slope[:, :, None] * basis.nodes[None, None, :]
    return np.where(changed[:, :, None], linear, q)


def admissibility_fallback(q: np.ndarray, disc: Discretization) -> np.ndarray:
    """Flatten cells holding inadmissible moment nodes to their cell means.

    The explicit stages keep cell means admissible at moderate CFL, but nodal
    values near a front can leave the admissible set even after slope
    limiting: a field far smaller than the TVB dead band (such as the collided
    moments in the kinetic regime, a sliver of the gas) is never limited, yet
    its interface nodes carry the same relative overshoots. Replacing such a
    cell by its mean preserves conservation exactly. A cell whose mean is
    itself inadmissible stays unchanged and fails downstream checks.
    """
    rho, m, energy = q[0], q[1], q[2]
    s = 2.0 * energy * rho - m**2  # admissible iff rho > 0 and s > 0
    bad = ((rho > RHO_FLOOR) & (s <= THETA_FLOOR * rho**2)) | (rho < -RHO_FLOOR)
    cells = np.any(bad, axis=-1)
    if not np.any(cells):
        return q
    means = q @ disc.basis.modal[0]
    out = q.copy()
    out[:, cells, :] = means[:, cells, None]
    return out
