"""Hybrid time steppers coupling implicit kinetic sweeps to the moment system.

Each step splits the distribution by collision count: the part that has not
collided since the step began keeps the full boundary and initial data and
decays at rate 1/epsilon, while everything that has collided is closed as a
Maxwellian and evolved through its moments. At the end of the step the two
parts are recombined and the split is reset, so the decomposition never ages
across steps.

State layout: g has shape (n_velocities, n_cells, n_nodes), collided moments
have shape (3, n_cells, n_nodes).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .discretization import Discretization
from .errors import ConfigError
from .euler import (
    LAMBDA_FLOOR,
    admissibility_fallback,
    collided_rhs,
    max_wavespeed,
    tvb_limit,
)
from .transport import BoundarySpec, sweep_backward_euler, sweep_bdf2_with_source
from .velocity import conservation_fix, discrete_moments, maxwellian_field

@dataclass
class HybridState:
    """Solver state between steps: kinetic field, collided moments, clock."""

    g: np.ndarray
    q_c: np.ndarray
    t: float
    step_index: int = 0


@dataclass(frozen=True)
class StepReport:
    """Per-step diagnostics returned alongside the new state."""

    dt_used: float
    wavespeed: float
    sweep_iterations: int
    wall_time: float


def initial_state(g0: np.ndarray, t0: float = 0.0) -> HybridState:
    """Fresh state with a zero collided field."""
    g0 = np.asarray(g0, dtype=float)
    q_c = np.zeros((3,) + g0.shape[1:])
    return HybridState(g=g0.copy(), q_c=q_c, t=t0, step_index=0)


def total_moments(state: HybridState, disc: Discretization) -> np.ndarray:
    """Moments of the combined field: quadrature of g plus collided moments."""
    return discrete_moments(state.g, disc.grid) + state.q_c


def select_dt(state: HybridState, cfl: float, disc: Discretization) -> tuple[float, float]:
    """Adaptive step size cfl * h / Lambda from the current wavespeed.

    Lambda is the largest characteristic speed over all interface traces of
    the combined moments. A wavespeed below the floor means the state carries
    no signal to resolve, which is a configuration problem, not a step.
    """
    lam = max_wavespeed(total_moments(state, disc), disc)
    if lam < LAMBDA_FLOOR:
        raise ConfigError(f"wavespeed {lam:.3e} below floor; cannot set a step size")
    return cfl * disc.mesh.h / lam, lam


def _maybe_limit(
    q: np.ndarray, limiter_m: float | None, disc: Discretization, periodic: bool
) -> np.ndarray:
    if limiter_m is None:
        return q
    return admissibility_fallback(tvb_limit(q, limiter_m, disc, periodic), disc)


def _advance_split(
    state: HybridState,
    dt: float,
    epsilon: float,
    source,
    bc: BoundarySpec,
    disc: Discretization,
    limiter_m: float | None,
):
    """Shared first phase of both steppers: sweeps, predictor, corrector.

    Returns the half-step pieces and the end-of-step uncollided/collided
    fields, before any recombination.
    """
    periodic = bc.kind == "periodic"
    t_n = state.t
    s_half = source(t_n + 0.5 * dt) if source is not None else None
    s_full = source(t_n + dt) if source is not None else None

    # Uncollided half step: implicit sweep from the start-of-step field.
    f_half, it1 = sweep_backward_euler(
        state.g, 0.5 * dt, epsilon, s_half, bc, disc, t_n + 0.5 * dt
    )
    q_u_half = discrete_moments(f_half, disc.grid)

    # Collided predictor: relax in, then advect, each over half the step.
    # Splitting the two actions keeps the relaxation gain bounded as
    # epsilon -> 0, so the predictor survives the stiff limit.
    q_relaxed = state.q_c + (0.5 * dt / epsilon) * q_u_half
    q_c_half = q_relaxed + 0.5 * dt * collided_rhs(q_relaxed, None, epsilon, disc, periodic)
    q_c_half = _maybe_limit(q_c_half, limiter_m, disc, periodic)

    # Uncollided full step, again from the start-of-step field.
    f_full, it2 = sweep_backward_euler(state.g, dt, epsilon, s_full, bc, disc, t_n + dt)
    q_u_full = discrete_moments(f_full, disc.grid)

    # Collided corrector: midpoint flux, end-of-step relaxation source.
    q_c_new = state.q_c + dt * collided_rhs(q_c_half, q_u_full, epsilon, disc, periodic)
    q_c_new = _maybe_limit(q_c_new, limiter_m, disc, periodic)

    return f_half, q_c_half, f_full, q_u_full, q_c_new, s_full, it1 + it2


def berk2_step(
    state: HybridState,
    dt: float,
    epsilon: float,
    source,
    bc: BoundarySpec,
    disc: Discretization,
    limiter_m: float | None = None,
) -> tuple[HybridState, StepReport]:
    """One hybrid step: implicit sweeps plus explicit moment stages.

    Args:
        state: current solver state; its collided moments are normally zero.
        dt: step size (caller selects it, usually via select_dt).
        epsilon: relaxation time.
        source: optional callable t -> kinetic source field, shape of g.
        bc: boundary treatment shared by the sweeps and the moment fluxes.
        disc: discretization bundle.
        limiter_m: TVB parameter applied to collided moments after each
            explicit stage; None disables limiting.

    Returns:
        (new state with the split reset, per-step report).
    """
    started = time.perf_counter()
    _, _, f_full, _, q_c_new, _, iters = _advance_split(
        state, dt, epsilon, source, bc, disc, limiter_m
    )
    # Recombine: the collided moments re-enter as a Maxwellian slice so the
    # next step restarts the split from a single kinetic field. The projection
    # makes the slice carry exactly q_c_new even when the velocity grid is too
    # coarse to integrate the sampled Maxwellian accurately, so relabeling
    # never creates or destroys invariants.
    f_c = conservation_fix(
        maxwellian_field(q_c_new, disc.grid, on_vacuum="zero"), q_c_new, disc.grid
    )
    new_state = HybridState(
        g=f_full + f_c,
        q_c=np.zeros_like(q_c_new),
        t=state.t + dt,
        step_index=state.step_index + 1,
    )
    lam = max_wavespeed(total_moments(state, disc), disc)
    return new_state, StepReport(dt, lam, iters, time.perf_counter() - started)


def berk2_corrected_step(
    state: HybridState,
    dt: float,
    epsilon: float,
    source,
    bc: BoundarySpec,
    disc: Discretization,
    limiter_m: float | None = None,
) -> tuple[HybridState, StepReport]:
    """Hybrid step with a two-level implicit correction of the recombined field.

    Runs the same sweeps and moment stages as berk2_step, then replaces the
    Maxwellian recombination with an implicit two-level solve toward the
    moment-consistent Maxwellian of the combined end-of-step moments. Both the
    Maxwellian and the final field are projected to match those moments
    exactly, so the recombination itself cannot drift the invariants.
    """
    started = time.perf_counter()
    periodic = bc.kind == "periodic"
    f_half, q_c_half, _, q_u_full, q_c_new, s_full, iters = _advance_split(
        state, dt, epsilon, source, bc, disc, limiter_m
    )

    g_half = f_half + conservation_fix(
        maxwellian_field(q_c_half, disc.grid, on_vacuum="zero"), q_c_half, disc.grid
    )
    q_total = q_u_full + q_c_new
    m_new = conservation_fix(
        maxwellian_field(q_total, disc.grid, on_vacuum="zero"), q_total, disc.grid
    )
    f_corr, it3 = sweep_bdf2_with_source(
        g_half, state.g, dt, epsilon, m_new, bc, disc, state.t + dt, extra_source=s_full
    )
    f_new = conservation_fix(f_corr, q_total, disc.grid)
    new_state = HybridState(
        g=f_new,
        q_c=np.zeros_like(q_c_new),
        t=state.t + dt,
        step_index=state.step_index + 1,
    )
    lam = max_wavespeed(total_moments(state, disc), disc)
    return new_state, StepReport(dt, lam, iters + it3, time.perf_counter() - started)
