"""Command-line entry point.

Subcommands: simulate (single trajectory), sweep (fidelity grids),
scenario <id> (bundled presets), optimal-eps, zeno-compare, cesium, and
all-figures. Output lands in --out, defaulting to $ZENO_SIM_OUT or
./results; existing files are only overwritten with --force.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from .dynamics import (
    IntegrationError,
    IntegratorConfig,
    integrate_lindblad,
    integrate_schrodinger,
)
from .experiments import (
    SCENARIO_IDS,
    _write_csv,
    _write_summary,
    minimal_lambda_tf,
    optimal_epsilon,
    run_scenario,
    scenario,
    sweep_fidelity,
    zeno_compare,
    cesium_check,
)
from .models import ModelKind, ModelSpec

_MODEL_CHOICES = {k.value: k for k in ModelKind}


def _epsilon_arg(text: str) -> float:
    value = float(text)
    if not 0.0 < value < math.pi / 2:
        raise argparse.ArgumentTypeError(
            f"must lie in (0, pi/2), got {value}"
        )
    return value


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _grid_arg(text: str) -> tuple[str, np.ndarray]:
    try:
        axis, spec = text.split("=", 1)
        start, stop, count = spec.split(":")
        values = np.linspace(float(start), float(stop), int(count))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected <axis>=<start>:<stop>:<count>, got {text!r}"
        ) from None
    axis = axis.replace("-", "_")
    if axis not in ("epsilon", "lambda_tf", "kappa", "gamma"):
        raise argparse.ArgumentTypeError(f"unknown sweep axis {axis!r}")
    if values.size < 1:
        raise argparse.ArgumentTypeError("grid needs at least one point")
    return axis, values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenosim",
        description=(
            "Fast population transfer in cavity QED: engineered-pulse "
            "simulation, parameter sweeps, and bundled experiment presets."
        ),
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--out",
        default=None,
        help="output directory (default: $ZENO_SIM_OUT or ./results)",
    )
    shared.add_argument(
        "--force", action="store_true", help="overwrite existing output files"
    )
    shared.add_argument(
        "--steps", type=int, default=None, help="integration steps per run"
    )
    shared.add_argument(
        "--store-every", type=int, default=None, help="store every n-th step"
    )

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument(
        "--model",
        choices=sorted(_MODEL_CHOICES),
        default=ModelKind.TWO_ATOM.value,
        help="which physical model to run",
    )
    model.add_argument("--epsilon", type=_epsilon_arg, default=0.2636)
    model.add_argument("--lambda-tf", type=_positive, default=10.0)
    model.add_argument(
        "--kappa", type=_non_negative, default=0.0, help="cavity decay over lambda"
    )
    model.add_argument(
        "--gamma",
        type=_non_negative,
        default=0.0,
        help="total spontaneous emission over lambda",
    )
    model.add_argument(
        "--omega-z",
        type=_positive,
        default=0.1,
        help="constant drive over lambda (baseline model only)",
    )

    sub = parser.add_subparsers(dest="command", metavar="command")

    sub.add_parser(
        "simulate",
        parents=[shared, model],
        help="integrate one trajectory and report the final fidelity",
    )

    p_sweep = sub.add_parser(
        "sweep", parents=[shared, model], help="fidelity over one or two grids"
    )
    p_sweep.add_argument(
        "--grid",
        action="append",
        type=_grid_arg,
        required=True,
        metavar="AXIS=START:STOP:COUNT",
        help="sweep axis (repeat for a 2-d grid); axes: epsilon, lambda-tf, kappa, gamma",
    )

    p_scn = sub.add_parser(
        "scenario", parents=[shared], help="run one bundled experiment preset"
    )
    p_scn.add_argument("id", choices=SCENARIO_IDS, metavar="id")

    p_opt = sub.add_parser(
        "optimal-eps", parents=[shared, model], help="search the best mixing angle"
    )
    p_opt.add_argument("--search-steps", type=int, default=2000)

    sub.add_parser(
        "zeno-compare", parents=[shared], help="constant-drive baseline comparison"
    )
    sub.add_parser(
        "cesium", parents=[shared], help="fidelity with the cesium rate predictions"
    )
    sub.add_parser(
        "all-figures", parents=[shared], help="emit CSV output for every preset"
    )
    return parser


def _out_dir(args) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get("ZENO_SIM_OUT", "results"))


def _scenario_overrides(args) -> dict:
    overrides = {}
    if args.steps is not None:
        overrides["steps"] = args.steps
    if args.store_every is not None:
        overrides["store_every"] = args.store_every
    return overrides


def _model_from_args(args) -> ModelSpec:
    kind = _MODEL_CHOICES[args.model]
    if kind is ModelKind.TWO_ATOM:
        return ModelSpec.two_atom(args.epsilon, args.lambda_tf, args.kappa, args.gamma)
    if kind is ModelKind.THREE_ATOM:
        return ModelSpec.three_atom(
            args.epsilon, args.lambda_tf, args.kappa, args.gamma
        )
    return ModelSpec.zeno_baseline(args.omega_z)


def _echo(args, extra: dict) -> dict:
    entries = {
        "model": args.model,
        "epsilon": args.epsilon,
        "lambda_tf": args.lambda_tf,
        "kappa_over_lambda": args.kappa,
        "gamma_over_lambda": args.gamma,
        "omega_z_over_lambda": args.omega_z,
    }
    entries.update(extra)
    return entries


def _cmd_simulate(args) -> int:
    out = _out_dir(args)
    m = _model_from_args(args)
    cfg = IntegratorConfig(
        steps=args.steps or 20000, store_every=args.store_every or 20
    )
    open_system = m.kappa > 0.0 or m.gamma_total > 0.0
    traj = (
        integrate_lindblad(m, cfg=cfg) if open_system else integrate_schrodinger(m, cfg=cfg)
    )
    columns = [("t_over_tf", traj.times / traj.t_f)]
    columns += [
        (label, traj.populations[:, i]) for i, label in enumerate(traj.basis_labels)
    ]
    _write_csv(out / "simulate_traj.csv", columns, args.force)
    _write_summary(
        out / "simulate_summary.txt",
        _echo(
            args,
            {
                "steps": cfg.steps,
                "store_every": cfg.store_every,
                "open_system": open_system,
                "final_fidelity": traj.fidelity_final,
            },
        ),
        args.force,
    )
    print(f"F={traj.fidelity_final:.3f}")
    return 0


def _cmd_sweep(args) -> int:
    out = _out_dir(args)
    axes = dict(args.grid)
    if len(axes) != len(args.grid):
        print("error: --grid axes must be distinct", file=sys.stderr)
        return 1
    kind = _MODEL_CHOICES[args.model]
    if kind is ModelKind.ZENO_BASELINE:
        print("error: sweep supports the pulsed models only", file=sys.stderr)
        return 1
    result = sweep_fidelity(
        kind,
        axes,
        epsilon=args.epsilon,
        lambda_tf=args.lambda_tf,
        kappa_over_lambda=args.kappa,
        gamma_over_lambda=args.gamma,
        steps=args.steps or 3000,
    )
    names = list(result.axes)
    if len(names) == 2:
        a0, a1 = (np.asarray(result.axes[n]) for n in names)
        columns = [
            (names[0], np.repeat(a0, a1.size)),
            (names[1], np.tile(a1, a0.size)),
            ("fidelity", result.values.ravel()),
        ]
        csv_path = out / "sweep_surface.csv"
    else:
        columns = [
            (names[0], np.asarray(result.axes[names[0]])),
            ("fidelity", result.values),
        ]
        csv_path = out / "sweep_lines.csv"
    _write_csv(csv_path, columns, args.force)
    summary = _echo(args, {"steps": args.steps or 3000})
    for name in names:
        axis = np.asarray(result.axes[name])
        summary[f"axis_{name}"] = f"{axis[0]:g}:{axis[-1]:g}:{axis.size}"
    summary.update({f"argmax_{k}": v for k, v in result.argmax.items()})
    _write_summary(out / "sweep_summary.txt", summary, args.force)
    print(f"best F={result.argmax['fidelity']:.6f}")
    return 0


def _cmd_scenario(args) -> int:
    result = run_scenario(
        scenario(args.id, **_scenario_overrides(args)), _out_dir(args), args.force
    )
    for path in result.files:
        print(f"wrote {path}")
    return 0


def _cmd_optimal_eps(args) -> int:
    kind = _MODEL_CHOICES[args.model]
    if kind is ModelKind.ZENO_BASELINE:
        print("error: optimal-eps supports the pulsed models only", file=sys.stderr)
        return 1
    eps, fbest = optimal_epsilon(kind, args.lambda_tf, steps=args.search_steps)
    _write_summary(
        _out_dir(args) / "optimal_eps_summary.txt",
        {
            "model": args.model,
            "lambda_tf": args.lambda_tf,
            "search_steps": args.search_steps,
            "epsilon_best": eps,
            "fidelity_best": fbest,
        },
        args.force,
    )
    print(f"epsilon={eps:.4f} F={fbest:.6f}")
    return 0


def _cmd_zeno_compare(args) -> int:
    result = run_scenario(
        scenario("zeno-compare", **_scenario_overrides(args)),
        _out_dir(args),
        args.force,
    )
    rec = result.summary
    print(
        f"baseline lambda_tf={rec['baseline_lambda_tf']:.3f} "
        f"(max bridge {rec['baseline_max_bridge_population']:.3f}) vs "
        f"shortcut lambda_tf={rec['shortcut_lambda_tf']:.2f} "
        f"(max bridge {rec['shortcut_max_bridge_population']:.3f})"
    )
    return 0


def _cmd_cesium(args) -> int:
    result = run_scenario(
        scenario("cesium", **_scenario_overrides(args)), _out_dir(args), args.force
    )
    print(f"F={result.summary['fidelity']:.4f}")
    return 0


def _cmd_all_figures(args) -> int:
    out = _out_dir(args)
    for scenario_id in SCENARIO_IDS:
        result = run_scenario(
            scenario(scenario_id, **_scenario_overrides(args)), out, args.force
        )
        print(f"{scenario_id}: {len(result.files)} file(s)")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "scenario": _cmd_scenario,
    "optimal-eps": _cmd_optimal_eps,
    "zeno-compare": _cmd_zeno_compare,
    "cesium": _cmd_cesium,
    "all-figures": _cmd_all_figures,
}


def main(argv=None) -> int:
    parser = _build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except FileExistsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IntegrationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
