"""Command line interface: solve one benchmark, run a convergence sweep, compare runs."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import benchmarks
from .discretization import build_discretization
from .errors import ConfigError, InadmissibleStateError, StepFailureError

# CFL by scheme order for the smooth convergence sweeps
CONVERGE_CFL = {2: 0.2, 3: 0.1, 4: 0.05}
DEFAULT_NX_LADDER = (32, 64, 128)

# distinguishes an absent --limiter flag from an explicit 'none'
_UNSET = object()


def _limiter_value(text: str) -> float | None:
    if text.lower() == "none":
        return None
    return float(text)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgk1d", description="Kinetic relaxation benchmark driver."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one benchmark and write CSV + manifest")
    solve.add_argument("--problem", required=True, choices=benchmarks.PROBLEM_NAMES)
    solve.add_argument("--scheme", choices=benchmarks.SCHEMES, help="integrator override")
    solve.add_argument("--nx", type=int, help="number of spatial cells")
    solve.add_argument("--nv", type=int, help="number of velocity points")
    solve.add_argument("--order", type=int, help="scheme order (polynomial degree + 1)")
    solve.add_argument("--eps", type=float, help="relaxation time")
    solve.add_argument("--cfl", type=float, help="CFL constant")
    solve.add_argument("--tfinal", type=float, help="end time")
    solve.add_argument(
        "--limiter", type=_limiter_value, default=_UNSET,
        help="TVB constant, or 'none' to disable (default: problem setting)",
    )
    solve.add_argument("--out", type=Path, help="output directory (default runs/<problem>)")

    conv = sub.add_parser("converge", help="self-convergence sweep on a smooth problem")
    conv.add_argument("--problem", default="accuracy", choices=("accuracy", "asymptotic"))
    conv.add_argument(
        "--orders", type=_int_list, default=[2, 3, 4],
        help="comma-separated scheme orders, each >= 2 (default 2,3,4)",
    )
    conv.add_argument(
        "--eps-list", type=_float_list, default=[1.0],
        help="comma-separated relaxation times (default 1)",
    )
    conv.add_argument(
        "--nx-list", type=_int_list, default=list(DEFAULT_NX_LADDER),
        help="halving ladder of cell counts (default 32,64,128)",
    )
    conv.add_argument("--scheme", choices=benchmarks.SCHEMES, help="integrator override")
    conv.add_argument("--nv", type=int, help="number of velocity points")
    conv.add_argument("--out", type=Path, help="directory for convergence tables")

    comp = sub.add_parser("compare", help="normwise difference of two emitted runs")
    comp.add_argument("--a", type=Path, required=True, help="first run directory")
    comp.add_argument("--b", type=Path, required=True, help="second run directory")
    comp.add_argument("--norm", choices=("l2", "linf"), default="l2")
    return parser


def _solve_overrides(args) -> dict:
    overrides = {}
    for key, attr in (
        ("n_cells", "nx"), ("n_velocities", "nv"), ("epsilon", "eps"),
        ("cfl", "cfl"), ("t_final", "tfinal"), ("scheme", "scheme"),
    ):
        value = getattr(args, attr)
        if value is not None:
            overrides[key] = value
    if args.order is not None:
        if args.order < 2:
            raise ConfigError("order must be at least 2 (polynomial degree >= 1)")
        overrides["degree"] = args.order - 1
    if args.limiter is not _UNSET:
        overrides["limiter_m"] = args.limiter
    return overrides


def _cmd_solve(args) -> int:
    overrides = _solve_overrides(args)
    config = benchmarks.build_problem(args.problem, **overrides)
    result = benchmarks.run(config)
    out = args.out if args.out is not None else Path("runs") / args.problem
    paths = benchmarks.emit(result, out)
    print(
        f"{config.name} [{config.scheme}] completed: {result.n_steps} steps, "
        f"wavespeed [{result.lambda_min:.4f}, {result.lambda_max:.4f}], "
        f"{result.wall_time:.2f} s"
    )
    print(f"solution: {paths['solution']}")
    print(f"manifest: {paths['manifest']}")
    return 0


def _density_error(coarse, fine):
    """Density L2 difference, fine run sampled on the coarse mesh."""
    disc_c = build_discretization(
        coarse.config.x_left, coarse.config.x_right, coarse.config.n_cells,
        coarse.config.degree, coarse.config.n_velocities, coarse.config.v_max,
    )
    disc_f = build_discretization(
        fine.config.x_left, fine.config.x_right, fine.config.n_cells,
        fine.config.degree, fine.config.n_velocities, fine.config.v_max,
    )
    sampled = benchmarks.evaluate_on_mesh(fine.rho, disc_f, disc_c)
    return benchmarks.l2_error(coarse.rho, sampled, disc_c)


def _cmd_converge(args) -> int:
    ladder = args.nx_list
    if len(ladder) < 2 or any(b != 2 * a for a, b in zip(ladder, ladder[1:])):
        raise ConfigError(f"--nx-list must halve the mesh at each level, got {ladder}")
    out = args.out if args.out is not None else Path("runs") / "converge"
    for order in args.orders:
        if order < 2:
            raise ConfigError("orders must be at least 2 (polynomial degree >= 1)")
        for eps in args.eps_list:
            overrides = {
                "degree": order - 1,
                "epsilon": eps,
                "cfl": CONVERGE_CFL.get(order, CONVERGE_CFL[4]),
            }
            if args.scheme is not None:
                overrides["scheme"] = args.scheme
            if args.nv is not None:
                overrides["n_velocities"] = args.nv
            cache: dict[int, benchmarks.RunResult] = {}

            def level(n_cells: int) -> benchmarks.RunResult:
                if n_cells not in cache:
                    cache[n_cells] = benchmarks.run(
                        benchmarks.build_problem(args.problem, n_cells=n_cells, **overrides)
                    )
                return cache[n_cells]

            errors = [_density_error(level(n), level(2 * n)) for n in ladder]
            orders_seen = benchmarks.convergence_order(errors, ladder)
            table = benchmarks.emit_convergence(
                ladder, errors, orders_seen,
                out / f"{args.problem}-order{order}-eps{eps:g}.csv",
            )
            pieces = ", ".join(
                f"N={n}: {e:.3e}" + (f" (order {o:.2f})" if o is not None else "")
                for n, e, o in zip(ladder, errors, [None] + orders_seen)
            )
            print(f"order {order}, eps {eps:g}: {pieces}")
            print(f"table: {table}")
    return 0


def _cmd_compare(args) -> int:
    diffs = benchmarks.compare_runs(args.a, args.b, args.norm)
    for key in ("rho", "u", "theta"):
        print(f"{key}: {diffs[key]:.6e}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"solve": _cmd_solve, "converge": _cmd_converge, "compare": _cmd_compare}
    try:
        return handlers[args.command](args)
    except (ConfigError, InadmissibleStateError, StepFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
