"""IMEX Runge-Kutta baseline for the full kinetic system.

Advection is explicit, relaxation implicit. Because the relaxation target is
the conservation-fixed Maxwellian of the stage moments, the implicit stage
moments coincide with the already-known explicit accumulation, which turns
every implicit solve into a closed-form pointwise update.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .discretization import Discretization
from .euler import tvb_limit
from .transport import BoundarySpec, advection_rhs_kinetic
from .velocity import conservation_fix, discrete_moments, maxwellian_field

ORDER_TOL = 1e-13


@dataclass(frozen=True)
class ImexTableau:
    """Coefficient pair (explicit, implicit) of an IMEX Runge-Kutta scheme."""

    name: str
    a_explicit: np.ndarray
    b_explicit: np.ndarray
    c_explicit: np.ndarray
    a_implicit: np.ndarray
    b_implicit: np.ndarray
    c_implicit: np.ndarray
    order: int

    @property
    def stages(self) -> int:
        return self.b_explicit.size


def _arr(rows) -> np.ndarray:
    return np.array(rows, dtype=float)


def ssp2_332() -> ImexTableau:
    """Three-stage, second order, L-stable implicit part."""
    return ImexTableau(
        name="ssp2-332",
        a_explicit=_arr([[0, 0, 0], [0, 0, 0], [0, 1, 0]]),
        b_explicit=_arr([0, 0.5, 0.5]),
        c_explicit=_arr([0, 0, 1]),
        a_implicit=_arr([[0.5, 0, 0], [-0.5, 0.5, 0], [0, 0.5, 0.5]]),
        b_implicit=_arr([0, 0.5, 0.5]),
        c_implicit=_arr([0.5, 0, 1]),
        order=2,
    )


def ars_443() -> ImexTableau:
    """Five-stage, third order, with a purely explicit first stage."""
    return ImexTableau(
        name="ars-443",
        a_explicit=_arr(
            [
                [0, 0, 0, 0, 0],
                [1 / 2, 0, 0, 0, 0],
                [11 / 18, 1 / 18, 0, 0, 0],
                [5 / 6, -5 / 6, 1 / 2, 0, 0],
                [1 / 4, 7 / 4, 3 / 4, -7 / 4, 0],
            ]
        ),
        b_explicit=_arr([1 / 4, 7 / 4, 3 / 4, -7 / 4, 0]),
        c_explicit=_arr([0, 1 / 2, 2 / 3, 1 / 2, 1]),
        a_implicit=_arr(
            [
                [0, 0, 0, 0, 0],
                [0, 1 / 2, 0, 0, 0],
                [0, 1 / 6, 1 / 2, 0, 0],
                [0, -1 / 2, 1 / 2, 1 / 2, 0],
                [0, 3 / 2, -3 / 2, 1 / 2, 1 / 2],
            ]
        ),
        b_implicit=_arr([0, 3 / 2, -3 / 2, 1 / 2, 1 / 2]),
        c_implicit=_arr([0, 1 / 2, 2 / 3, 1 / 2, 1]),
        order=3,
    )


def validate_tableau(tableau: ImexTableau, order: int | None = None) -> list[str]:
    """Check structure and order conditions; returns violation descriptions.

    An empty list means the tableau satisfies every condition up to the
    requested order (default: its advertised order) at tolerance 1e-13.
    """
    order = tableau.order if order is None else order
    violations: list[str] = []
    a_ex, a_im = tableau.a_explicit, tableau.a_implicit
    s = tableau.stages

    if np.any(np.abs(np.triu(a_ex)) > 0):
        violations.append("explicit part is not strictly lower triangular")
    if np.any(np.abs(np.triu(a_im, 1)) > 0):
        violations.append("implicit part is not lower triangular")
    for i in range(s):
        if a_im[i, i] == 0.0 and np.any(a_im[i, :] != 0.0):
            violations.append(f"implicit stage {i} has work but zero diagonal")

    def check(label, value, target):
        if abs(value - target) > ORDER_TOL:
            violations.append(f"{label} = {value:.6g}, expected {target:.6g}")

    weights = {"explicit": tableau.b_explicit, "implicit": tableau.b_implicit}
    nodes = {"explicit": tableau.c_explicit, "implicit": tableau.c_implicit}
    matrices = {"explicit": a_ex, "implicit": a_im}

    for bn, b in weights.items():
        check(f"sum b_{bn}", float(np.sum(b)), 1.0)
    if order >= 2:
        for bn, b in weights.items():
            for cn, c in nodes.items():
                check(f"b_{bn} . c_{cn}", float(b @ c), 0.5)
    if order >= 3:
        for bn, b in weights.items():
            for cn, c in nodes.items():
                check(f"b_{bn} . c_{cn}^2", float(b @ c**2), 1.0 / 3.0)
        for bn, b in weights.items():
            for an, a in matrices.items():
                for cn, c in nodes.items():
                    check(f"b_{bn} . A_{an} c_{cn}", float(b @ a @ c), 1.0 / 6.0)
    return violations


def imex_step(
    f: np.ndarray,
    t: float,
    dt: float,
    epsilon: float,
    tableau: ImexTableau,
    source,
    bc: BoundarySpec,
    disc: Discretization,
    limiter_m: float | None = None,
) -> np.ndarray:
    """One IMEX step of the full kinetic system.

    Args:
        f: kinetic field at time t, shape (n_velocities, n_cells, n_nodes).
        t: current time (drives boundary and source evaluation).
        dt: step size.
        epsilon: relaxation time.
        tableau: IMEX coefficients.
        source: optional callable t -> source field, treated explicitly.
        bc: boundary treatment for the advection operator.
        disc: discretization bundle.
        limiter_m: TVB constant for slope limiting of the kinetic field,
            applied per velocity after the update; None disables limiting.
            Needed in shock problems: near the fluid regime the scheme acts
            on the moments like an unlimited DG method for the Euler system,
            whose in-cell oscillations otherwise drive nodal moments out of
            the admissible set within a few steps.

    Returns:
        Kinetic field at t + dt.
    """
    a_ex, b_ex, c_ex = tableau.a_explicit, tableau.b_explicit, tableau.c_explicit
    a_im, b_im = tableau.a_implicit, tableau.b_implicit
    s = tableau.stages
    grid = disc.grid

    adv = [None] * s
    relax = [None] * s

    def advection(stage_f, stage_index):
        stage_t = t + c_ex[stage_index] * dt
        s_val = source(stage_t) if source is not None else None
        return advection_rhs_kinetic(stage_f, s_val, bc, disc, stage_t)

    adv_needed = [bool(b_ex[i]) or bool(np.any(a_ex[i + 1 :, i])) for i in range(s)]
    relax_needed = [bool(b_im[i]) or bool(np.any(a_im[i + 1 :, i])) for i in range(s)]

    for i in range(s):
        accum = f
        for j in range(i):
            if a_ex[i, j]:
                accum = accum + (dt * a_ex[i, j]) * adv[j]
            if a_im[i, j]:
                accum = accum + (dt * a_im[i, j]) * relax[j]

        diag = a_im[i, i]
        if diag or relax_needed[i]:
            # relaxation conserves moments, so the stage moments equal the
            # accumulated ones and the implicit solve is pointwise
            q_i = discrete_moments(accum, grid)
            m_i = conservation_fix(maxwellian_field(q_i, grid), q_i, grid)
        if diag:
            gain = dt * diag / epsilon
            f_i = (accum + gain * m_i) / (1.0 + gain)
        else:
            f_i = accum
        if relax_needed[i]:
            relax[i] = (m_i - accum) / (epsilon + dt * diag)
        if adv_needed[i]:
            adv[i] = advection(f_i, i)

    out = f
    for i in range(s):
        if b_ex[i]:
            out = out + (dt * b_ex[i]) * adv[i]
        if b_im[i]:
            out = out + (dt * b_im[i]) * relax[i]
    if limiter_m is not None:
        out = tvb_limit(out, limiter_m, disc, periodic=bc.kind == "periodic")
    return out
