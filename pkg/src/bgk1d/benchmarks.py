"""Benchmark problem library: configurations, orchestration, metrics, output.

Six experiments drive the solvers: two smooth periodic convergence studies
(pure advection of a density wave in the fluid limit, and the same initial
data across relaxation regimes) and four wall-bounded problems (Sod, Lax,
Shu-Osher, and a high-speed gas injection with a Maxwellian source). A run is
described by one flat config dataclass so the CLI and the tests share a
single entry point; results are emitted as CSV plus a key/value manifest.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .discretization import Discretization, build_discretization
from .errors import (
    ConfigError,
    InadmissibleStateError,
    StepFailureError,
    SweepConvergenceError,
)
from .euler import LAMBDA_FLOOR, max_wavespeed, moment_pc_step
from .hybrid import (
    StepReport,
    berk2_corrected_step,
    berk2_step,
    initial_state,
    select_dt,
    total_moments,
)
from .imex import ars_443, imex_step, ssp2_332
from .transport import BoundarySpec, dirichlet_bc, periodic_bc
from .velocity import (
    discrete_moments,
    maxwellian_at,
    maxwellian_field,
    moments_to_primitives,
    primitives_to_moments,
)

PROBLEM_NAMES = ("asymptotic", "accuracy", "sod", "lax", "shu-osher", "gas-injection")
SCHEMES = ("berk2", "berk2-corrected", "imex2", "imex3", "euler-only")

# gas-injection source: narrow Gaussian emitter of a fast hot Maxwellian,
# normalized so the emitted profile integrates to one over [0, 1]
INJECTION_CENTER = 0.5
INJECTION_WIDTH = 0.1
INJECTION_STATE = (0.01, 100.0, 100.0)


@dataclass(frozen=True)
class ProblemConfig:
    """Complete description of one benchmark run.

    Args:
        name: benchmark family, one of PROBLEM_NAMES.
        x_left, x_right: spatial domain endpoints.
        v_max: half-width of the symmetric velocity domain.
        n_cells: number of spatial cells.
        n_velocities: number of velocity quadrature points.
        degree: DG polynomial degree (scheme order is degree + 1).
        epsilon: relaxation time.
        t_final: end time of the run.
        cfl: CFL constant; hybrid and moment schemes scale it by the
            wavespeed, the IMEX baselines by v_max.
        scheme: integrator id, one of SCHEMES.
        boundary: "periodic" or "dirichlet" (inflow frozen at the initial
            wall states).
        limiter_m: TVB constant for slope limiting, None to disable.
        initial: registered initial-state id.
        source: registered source id or None.
    """

    name: str
    x_left: float
    x_right: float
    v_max: float
    n_cells: int
    n_velocities: int
    degree: int
    epsilon: float
    t_final: float
    cfl: float
    scheme: str
    boundary: str
    limiter_m: float | None
    initial: str
    source: str | None

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        if self.boundary not in ("periodic", "dirichlet"):
            raise ConfigError(f"unknown boundary {self.boundary!r}")
        if self.initial not in _INITIAL_STATES:
            raise ConfigError(f"unknown initial state {self.initial!r}")
        if self.source is not None and self.source != "injection":
            raise ConfigError(f"unknown source {self.source!r}")
        if min(self.n_cells, self.n_velocities, self.degree) < 1:
            raise ConfigError("counts and degree must be positive")
        if not (self.t_final > 0 and self.cfl > 0 and self.epsilon > 0 and self.v_max > 0):
            raise ConfigError("t_final, cfl, epsilon, v_max must be positive")
        if not self.x_right > self.x_left:
            raise ConfigError("empty spatial domain")
        if self.limiter_m is not None and self.limiter_m < 0:
            raise ConfigError("limiter_m must be nonnegative or None")


@dataclass
class RunResult:
    """Final fields and per-run diagnostics.

    moments/rho/u/theta are sampled at the DG nodes (n_cells, n_nodes);
    lambda_min/lambda_max bracket the wavespeed observed at step starts.
    """

    config: ProblemConfig
    x: np.ndarray
    moments: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    n_steps: int
    lambda_min: float
    lambda_max: float
    wall_time: float
    reports: list[StepReport]


def _ic_sine_advection(x: np.ndarray, centers: np.ndarray):
    rho = 1.0 + 0.2 * np.sin(10.0 * x)
    return rho, np.ones_like(x), 1.0 / rho


def _ic_sod(x: np.ndarray, centers: np.ndarray):
    # whole cells take one side so the jump sits on a cell interface
    left = (centers < 0.5)[:, None] & np.ones_like(x, dtype=bool)
    rho = np.where(left, 1.0, 0.125)
    theta = np.where(left, 1.0, 0.1 / 0.125)
    return rho, np.zeros_like(x), theta


def _ic_lax(x: np.ndarray, centers: np.ndarray):
    left = (centers < 0.5)[:, None] & np.ones_like(x, dtype=bool)
    rho = np.where(left, 0.445, 0.5)
    u = np.where(left, 0.698, 0.0)
    theta = np.where(left, 3.528 / 0.445, 0.571 / 0.5)
    return rho, u, theta


def _ic_shu_osher(x: np.ndarray, centers: np.ndarray):
    left = (centers < -4.0)[:, None] & np.ones_like(x, dtype=bool)
    rho_wave = 1.0 + 0.2 * np.sin(5.0 * x)
    rho = np.where(left, 1.756757, rho_wave)
    u = np.where(left, 2.005122, 0.0)
    theta = np.where(left, 10.333333 / 1.756757, 1.0 / rho_wave)
    return rho, u, theta


def _ic_uniform_background(x: np.ndarray, centers: np.ndarray):
    return np.ones_like(x), np.zeros_like(x), np.full_like(x, 0.1)


_INITIAL_STATES = {
    "sine-advection": _ic_sine_advection,
    "sod": _ic_sod,
    "lax": _ic_lax,
    "shu-osher": _ic_shu_osher,
    "uniform-background": _ic_uniform_background,
}

_DEFAULTS = {
    "asymptotic": dict(
        x_left=-math.pi, x_right=math.pi, v_max=7.0, n_cells=64, n_velocities=100,
        degree=3, epsilon=1e-12, t_final=0.1, cfl=0.1, scheme="berk2-corrected",
        boundary="periodic", limiter_m=None, initial="sine-advection", source=None,
    ),
    "accuracy": dict(
        x_left=-math.pi, x_right=math.pi, v_max=7.0, n_cells=32, n_velocities=100,
        degree=2, epsilon=1.0, t_final=0.1, cfl=0.1, scheme="berk2-corrected",
        boundary="periodic", limiter_m=None, initial="sine-advection", source=None,
    ),
    "sod": dict(
        x_left=0.0, x_right=1.0, v_max=6.0, n_cells=100, n_velocities=100,
        degree=2, epsilon=1e-6, t_final=0.1, cfl=0.2, scheme="berk2",
        boundary="dirichlet", limiter_m=20.0, initial="sod", source=None,
    ),
    "lax": dict(
        x_left=-0.5, x_right=1.5, v_max=15.0, n_cells=100, n_velocities=100,
        degree=2, epsilon=1e-6, t_final=0.1, cfl=0.2, scheme="berk2",
        boundary="dirichlet", limiter_m=20.0, initial="lax", source=None,
    ),
    "shu-osher": dict(
        x_left=-10.0, x_right=10.0, v_max=14.0, n_cells=200, n_velocities=200,
        degree=2, epsilon=1e-6, t_final=1.8, cfl=0.2, scheme="berk2",
        boundary="dirichlet", limiter_m=20.0, initial="shu-osher", source=None,
    ),
    "gas-injection": dict(
        x_left=-3.0, x_right=19.0, v_max=110.0, n_cells=200, n_velocities=1000,
        degree=2, epsilon=1.0, t_final=0.1, cfl=0.1, scheme="berk2",
        boundary="dirichlet", limiter_m=20.0, initial="uniform-background",
        source="injection",
    ),
}

_CONFIG_KEYS = tuple(f.name for f in fields(ProblemConfig))


def build_problem(name: str, **overrides) -> ProblemConfig:
    """Benchmark config by family name, with per-field overrides.

    Args:
        name: one of PROBLEM_NAMES.
        **overrides: any ProblemConfig field except name.

    Returns:
        Fully populated ProblemConfig.
    """
    if name not in _DEFAULTS:
        raise ConfigError(f"unknown problem {name!r}; choose from {PROBLEM_NAMES}")
    unknown = set(overrides) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config fields {sorted(unknown)}")
    params = {**_DEFAULTS[name], **overrides}
    params.pop("name", None)
    return ProblemConfig(name=name, **params)


def injection_profile(x: np.ndarray) -> np.ndarray:
    """Spatial emission profile of the gas-injection source, unit integral on [0, 1]."""
    sigma = INJECTION_WIDTH
    half_span = (1.0 - INJECTION_CENTER) / (sigma * math.sqrt(2.0))
    c0 = 1.0 / (sigma * math.sqrt(2.0 * math.pi) * math.erf(half_span))
    return c0 * np.exp(-((x - INJECTION_CENTER) ** 2) / (2.0 * sigma**2))


def initial_moments(config: ProblemConfig, disc: Discretization) -> np.ndarray:
    """Nodal conserved moments of the configured initial state."""
    x = disc.mesh.node_coordinates(disc.basis.nodes)
    rho, u, theta = _INITIAL_STATES[config.initial](x, disc.mesh.centers)
    return primitives_to_moments(rho, u, theta)


def _build_bc(config: ProblemConfig, g0: np.ndarray) -> BoundarySpec:
    """Boundary spec frozen at the initial wall states.

    Dirichlet inflow repeats the initial kinetic field's own wall values (the
    moment-projected Maxwellian, not a fresh analytic sample), so a uniform
    background next to a wall is an exact discrete fixed point at any
    velocity resolution.
    """
    if config.boundary == "periodic":
        return periodic_bc()
    f_left = g0[:, 0, 0].copy()
    f_right = g0[:, -1, -1].copy()
    return dirichlet_bc(lambda v, t: f_left, lambda v, t: f_right)


def _build_source(config: ProblemConfig, disc: Discretization):
    """Kinetic source callable and its exact moment-space image, or (None, None)."""
    if config.source is None:
        return None, None
    x = disc.mesh.node_coordinates(disc.basis.nodes)
    eta = injection_profile(x)
    q_inj = primitives_to_moments(*INJECTION_STATE)
    s_field = eta[None, :, :] * maxwellian_at(q_inj, disc.grid.points)[:, None, None]
    s_moments = eta[None, :, :] * np.asarray(q_inj)[:, None, None]
    return (lambda t: s_field), s_moments


def run(config: ProblemConfig) -> RunResult:
    """Execute one benchmark run to t_final.

    The initial kinetic field is the Maxwellian of the initial moments at
    every node and velocity. Hybrid and moment-only schemes re-select dt from
    the current wavespeed each step; the IMEX baselines use the fixed step
    cfl * h / v_max. A failed step raises StepFailureError with its index;
    there is no retry or step-size fallback.

    Args:
        config: run description from build_problem.

    Returns:
        RunResult with final nodal fields and per-step reports.
    """
    disc = build_discretization(
        config.x_left, config.x_right, config.n_cells,
        config.degree, config.n_velocities, config.v_max,
    )
    x = disc.mesh.node_coordinates(disc.basis.nodes)
    q0 = initial_moments(config, disc)
    g0 = _initial_kinetic(q0, disc)
    bc = _build_bc(config, g0)
    source, source_moments = _build_source(config, disc)

    started = time.perf_counter()
    if config.scheme in ("berk2", "berk2-corrected"):
        moments, reports = _run_hybrid(config, disc, g0, bc, source)
    elif config.scheme in ("imex2", "imex3"):
        moments, reports = _run_imex(config, disc, g0, bc, source)
    else:
        moments, reports = _run_euler_only(config, disc, q0, source_moments)
    wall_time = time.perf_counter() - started

    rho, u, theta = moments_to_primitives(moments)
    speeds = [r.wavespeed for r in reports]
    return RunResult(
        config=config, x=x, moments=moments, rho=rho, u=u, theta=theta,
        n_steps=len(reports), lambda_min=min(speeds), lambda_max=max(speeds),
        wall_time=wall_time, reports=reports,
    )


def _fail(step_index: int, t: float, exc: Exception) -> StepFailureError:
    return StepFailureError(f"step {step_index} at t = {t:.8e} failed: {exc}")


_END_TOL = 1e-12


def _initial_kinetic(q0, disc):
    # pointwise Maxwellian of the initial moments at every node and velocity
    return maxwellian_field(q0, disc.grid)


def _run_hybrid(config, disc, g0, bc, source):
    step_fn = berk2_step if config.scheme == "berk2" else berk2_corrected_step
    state = initial_state(g0)
    reports: list[StepReport] = []
    t_end = config.t_final
    while state.t < t_end * (1.0 - _END_TOL):
        try:
            dt, _ = select_dt(state, config.cfl, disc)
            dt = min(dt, t_end - state.t)
            state, report = step_fn(
                state, dt, config.epsilon, source, bc, disc, limiter_m=config.limiter_m
            )
        except (InadmissibleStateError, SweepConvergenceError, ConfigError) as exc:
            raise _fail(len(reports), state.t, exc) from exc
        if not np.all(np.isfinite(state.g)):
            raise _fail(len(reports), state.t, ValueError("non-finite kinetic field"))
        reports.append(report)
    return total_moments(state, disc), reports


def _run_imex(config, disc, g0, bc, source):
    tableau = ssp2_332() if config.scheme == "imex2" else ars_443()
    dt = config.cfl * disc.mesh.h / config.v_max
    n_steps = math.ceil(config.t_final / dt - 1e-9)
    f = g0.copy()
    reports: list[StepReport] = []
    t = 0.0
    for i in range(n_steps):
        step_dt = min(dt, config.t_final - t)
        step_start = time.perf_counter()
        try:
            lam = max_wavespeed(discrete_moments(f, disc.grid), disc)
            f = imex_step(
                f, t, step_dt, config.epsilon, tableau, source, bc, disc,
                limiter_m=config.limiter_m,
            )
        except (InadmissibleStateError, SweepConvergenceError, ConfigError) as exc:
            raise _fail(i, t, exc) from exc
        if not np.all(np.isfinite(f)):
            raise _fail(i, t, ValueError("non-finite kinetic field"))
        t += step_dt
        reports.append(StepReport(step_dt, lam, 0, time.perf_counter() - step_start))
    return discrete_moments(f, disc.grid), reports


def _run_euler_only(config, disc, q0, source_moments):
    periodic = config.boundary == "periodic"
    wall_states = None if periodic else (q0[:, 0, 0].copy(), q0[:, -1, -1].copy())
    q = q0.copy()
    reports: list[StepReport] = []
    t = 0.0
    t_end = config.t_final
    while t < t_end * (1.0 - _END_TOL):
        step_start = time.perf_counter()
        try:
            lam = max_wavespeed(q, disc)
            if lam < LAMBDA_FLOOR:
                raise ConfigError(f"wavespeed {lam:.3e} below floor")
            dt = min(config.cfl * disc.mesh.h / lam, t_end - t)
            q = moment_pc_step(
                q, dt, disc, periodic, source_moments=source_moments,
                wall_states=wall_states, limiter_m=config.limiter_m,
            )
        except (InadmissibleStateError, ConfigError) as exc:
            raise _fail(len(reports), t, exc) from exc
        if not np.all(np.isfinite(q)):
            raise _fail(len(reports), t, ValueError("non-finite moment field"))
        t += dt
        reports.append(StepReport(dt, lam, 0, time.perf_counter() - step_start))
    return q, reports


def l2_error(field_a: np.ndarray, field_b: np.ndarray, disc: Discretization) -> float:
    """Element-quadrature L2 norm of the difference of two nodal scalar fields.

    Both fields must live on disc's mesh; cross-mesh comparisons go through
    evaluate_field first.
    """
    shape = (disc.mesh.n_cells, disc.basis.n_nodes)
    a, b = np.asarray(field_a, dtype=float), np.asarray(field_b, dtype=float)
    if a.shape != shape or b.shape != shape:
        raise ConfigError(
            f"fields of shape {a.shape}/{b.shape} do not match the mesh {shape}"
        )
    w = 0.5 * disc.mesh.h * disc.basis.node_weights
    return float(np.sqrt(np.sum(w * (a - b) ** 2)))


def evaluate_field(field: np.ndarray, disc: Discretization, points: np.ndarray) -> np.ndarray:
    """Evaluate a nodal DG field at arbitrary locations in the domain.

    A point on a cell interface takes the value from the cell to its right
    (one-sided limit); the field is discontinuous there in general.
    """
    mesh, basis = disc.mesh, disc.basis
    pts = np.asarray(points, dtype=float).reshape(-1)
    cell = np.clip(
        np.floor((pts - mesh.x_left) / mesh.h).astype(int), 0, mesh.n_cells - 1
    )
    xi = 2.0 * (pts - mesh.centers[cell]) / mesh.h
    vals = basis.eval_basis(xi)  # (n_points, n_nodes)
    out = np.einsum("pn,pn->p", vals, np.asarray(field)[cell])
    return out.reshape(np.asarray(points).shape)


def evaluate_on_mesh(
    field: np.ndarray, src_disc: Discretization, dst_disc: Discretization
) -> np.ndarray:
    """Sample a nodal field from one mesh at another mesh's DG nodes.

    When a destination node sits on a source cell interface (aligned meshes),
    the source cell interior to the destination node's own cell is used, so
    cell-endpoint values keep the one-sided limit that belongs to that cell.
    Interior destination nodes falling on a source interface take the
    right-hand cell.
    """
    x = dst_disc.mesh.node_coordinates(dst_disc.basis.nodes)
    src = src_disc.mesh
    rel = (x - src.x_left) / src.h
    idx = np.floor(rel).astype(int)
    near_edge = np.abs(rel - np.round(rel)) < 1e-9
    snapped = np.round(rel).astype(int)
    # first node is the cell's left endpoint: take the source cell to its
    # right; last node is the right endpoint: take the cell to its left
    idx[:, 0] = np.where(near_edge[:, 0], snapped[:, 0], idx[:, 0])
    idx[:, -1] = np.where(near_edge[:, -1], snapped[:, -1] - 1, idx[:, -1])
    idx = np.clip(idx, 0, src.n_cells - 1)
    xi = 2.0 * (x - src.centers[idx]) / src.h
    vals = src_disc.basis.eval_basis(xi.ravel())
    cells = np.asarray(field).reshape(src.n_cells, -1)[idx.ravel()]
    return np.einsum("pn,pn->p", vals, cells).reshape(x.shape)


def convergence_order(errors, resolutions) -> list[float]:
    """Observed orders log2(E_h / E_{h/2}) along a mesh-halving sequence.

    Args:
        errors: error per resolution, finest last.
        resolutions: matching cell counts; each must double the previous.

    Returns:
        One order per refinement pair.
    """
    errors = [float(e) for e in errors]
    res = [int(n) for n in resolutions]
    if len(errors) != len(res) or len(errors) < 2:
        raise ConfigError("need matching errors/resolutions with at least two entries")
    for coarse, fine in zip(res, res[1:]):
        if fine != 2 * coarse:
            raise ConfigError(f"resolutions must halve the mesh: {coarse} -> {fine}")
    return [math.log2(e0 / e1) for e0, e1 in zip(errors, errors[1:])]


def _format_value(value) -> str:
    if value is None:
        return "none"
    return repr(value) if isinstance(value, float) else str(value)


def emit(result: RunResult, out_dir) -> dict[str, Path]:
    """Write the solution CSV and the run manifest.

    Args:
        result: finished run.
        out_dir: target directory, created if missing.

    Returns:
        {"solution": path, "manifest": path}.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        solution = out / "solution.csv"
        rows = np.column_stack(
            [result.x.ravel(), result.rho.ravel(), result.u.ravel(), result.theta.ravel()]
        )
        # 12 significant digits so emitted files support 1e-10 regression checks
        np.savetxt(solution, rows, fmt="%.11e", delimiter=",", header="x,rho,u,theta", comments="")
        manifest = out / "manifest.txt"
        lines = [f"{key} = {_format_value(getattr(result.config, key))}" for key in _CONFIG_KEYS]
        lines += [
            f"n_steps = {result.n_steps}",
            f"lambda_min = {_format_value(result.lambda_min)}",
            f"lambda_max = {_format_value(result.lambda_max)}",
            f"wall_time = {_format_value(result.wall_time)}",
        ]
        manifest.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write run output under {out}: {exc}") from exc
    return {"solution": solution, "manifest": manifest}


def emit_convergence(resolutions, errors, orders, path) -> Path:
    """Write a convergence table as `N_x,error,order` rows ("-" for the first)."""
    path = Path(path)
    lines = ["N_x,error,order"]
    for i, (n, e) in enumerate(zip(resolutions, errors)):
        order = "-" if i == 0 else f"{orders[i - 1]:.3f}"
        lines.append(f"{n},{e:.6e},{order}")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write convergence table to {path}: {exc}") from exc
    return path


def parse_manifest(path) -> dict[str, str]:
    """Key/value pairs from a manifest file."""
    mapping: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read manifest {path}: {exc}") from exc
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"malformed manifest line {line!r} in {path}")
        mapping[key.strip()] = value.strip()
    return mapping


_FLOAT_KEYS = {"x_left", "x_right", "v_max", "epsilon", "t_final", "cfl"}
_INT_KEYS = {"n_cells", "n_velocities", "degree"}
_OPTIONAL_KEYS = {"limiter_m", "source"}


def config_from_manifest(mapping: dict[str, str]) -> ProblemConfig:
    """Rebuild the ProblemConfig echoed into a manifest."""
    kwargs = {}
    for key in _CONFIG_KEYS:
        if key not in mapping:
            raise ConfigError(f"manifest missing config key {key!r}")
        raw = mapping[key]
        if key in _OPTIONAL_KEYS and raw == "none":
            kwargs[key] = None
        elif key in _FLOAT_KEYS or key == "limiter_m":
            kwargs[key] = float(raw)
        elif key in _INT_KEYS:
            kwargs[key] = int(raw)
        else:
            kwargs[key] = raw
    return ProblemConfig(**kwargs)


def read_solution(path) -> dict[str, np.ndarray]:
    """Columns of a solution CSV keyed by name."""
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1)
    except OSError as exc:
        raise OSError(f"cannot read solution {path}: {exc}") from exc
    data = np.atleast_2d(data)
    if data.shape[1] != 4:
        raise ConfigError(f"solution file {path} must have 4 columns, found {data.shape[1]}")
    return {"x": data[:, 0], "rho": data[:, 1], "u": data[:, 2], "theta": data[:, 3]}


def compare_runs(dir_a, dir_b, norm: str = "l2") -> dict[str, float]:
    """Normwise field differences between two emitted runs.

    The run with more cells is evaluated at the other's DG nodes first; both
    runs must share the spatial domain. Norms are taken on the coarser mesh.

    Args:
        dir_a, dir_b: directories produced by emit.
        norm: "l2" (element quadrature) or "linf".

    Returns:
        {"rho": value, "u": value, "theta": value}.
    """
    if norm not in ("l2", "linf"):
        raise ConfigError(f"unknown norm {norm!r}")
    runs = []
    for d in (dir_a, dir_b):
        d = Path(d)
        config = config_from_manifest(parse_manifest(d / "manifest.txt"))
        sol = read_solution(d / "solution.csv")
        disc = build_discretization(
            config.x_left, config.x_right, config.n_cells,
            config.degree, config.n_velocities, config.v_max,
        )
        runs.append((config, sol, disc))
    (conf_a, sol_a, disc_a), (conf_b, sol_b, disc_b) = runs
    if (conf_a.x_left, conf_a.x_right) != (conf_b.x_left, conf_b.x_right):
        raise ConfigError("runs live on different spatial domains")
    same_mesh = conf_a.n_cells == conf_b.n_cells and conf_a.degree == conf_b.degree
    if conf_a.n_cells <= conf_b.n_cells:
        coarse, coarse_disc, fine, fine_disc = sol_a, disc_a, sol_b, disc_b
    else:
        coarse, coarse_disc, fine, fine_disc = sol_b, disc_b, sol_a, disc_a

    shape = (coarse_disc.mesh.n_cells, coarse_disc.basis.n_nodes)
    fine_shape = (fine_disc.mesh.n_cells, fine_disc.basis.n_nodes)
    out = {}
    for key in ("rho", "u", "theta"):
        a = coarse[key].reshape(shape)
        if same_mesh:
            b = fine[key].reshape(shape)
        else:
            b = evaluate_on_mesh(fine[key].reshape(fine_shape), fine_disc, coarse_disc)
        if norm == "l2":
            out[key] = l2_error(a, b, coarse_disc)
        else:
            out[key] = float(np.max(np.abs(a - b)))
    return out
