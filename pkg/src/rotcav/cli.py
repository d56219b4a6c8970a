"""Command-line interface.

Subcommands: point, sweep, figure, eigen, optimal-g, fizeau.  All model
parameters are in units of kappa1 (which is pinned to 1 and not a
flag); SI quantities enter only through `fizeau`, which converts a
rotation rate to a Fizeau shift in rad/s and, given kappa1 in rad/s,
to simulation units.

Exit codes: 0 success, 1 invalid arguments or configuration, 2 solver
failure at any grid point (partial results are still written, with the
affected rows flagged).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

from .hamiltonian import (
    SPEED_OF_LIGHT,
    DriveDirection,
    FizeauParams,
    SystemParams,
    build_h_lab,
    eigenlevels,
    fizeau_shift,
)
from .fock import build_basis
from .dynamics import SteadyStateError
from .amplitudes import optimal_g
from .sweep import (
    DEFAULT_CUTOFFS,
    DEFAULT_DRIVE,
    PRESET_NAMES,
    SweepAxis,
    SweepSpec,
    emit,
    figure_preset,
    render_csv,
    render_json,
    run_point,
    run_sweep,
    spec_from_dict,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--delta", type=float, default=None, help="pump detuning")
    parser.add_argument("--g", type=float, default=None, help="mode hopping interaction")
    parser.add_argument("--kappa2", type=float, default=None, help="second-harmonic loss rate")
    parser.add_argument(
        "--drive-strength", type=float, default=None, help="pump amplitude F"
    )
    parser.add_argument(
        "--delta-f", type=float, default=None, help="signed Fizeau shift of mode a"
    )
    parser.add_argument(
        "--direction",
        choices=["left", "right"],
        default=None,
        help="drive port (defaults to the sign of --delta-f)",
    )


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--na-cut", type=int, default=None, help="fundamental-mode cutoff")
    parser.add_argument("--nb-cut", type=int, default=None, help="second-harmonic cutoff")
    parser.add_argument(
        "--convergence-check",
        action="store_true",
        default=None,
        help="re-run at doubled cutoffs and report the worst relative change",
    )


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def _params_from_args(args) -> SystemParams:
    direction = DriveDirection(args.direction) if args.direction else None
    return SystemParams(
        delta=args.delta if args.delta is not None else 0.0,
        g=args.g if args.g is not None else 0.0,
        kappa2=args.kappa2 if args.kappa2 is not None else 1.0,
        drive_strength=(
            args.drive_strength if args.drive_strength is not None else DEFAULT_DRIVE
        ),
        delta_f=args.delta_f if args.delta_f is not None else 0.0,
        drive_direction=direction,
    )


def _cutoffs_from_args(args, default=DEFAULT_CUTOFFS) -> tuple[int, int]:
    return (
        args.na_cut if args.na_cut is not None else default[0],
        args.nb_cut if args.nb_cut is not None else default[1],
    )


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError(f"axis must be name:start:stop:count, got '{text}'")
    return SweepAxis(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))


def _fmt(value) -> str:
    return "undefined" if value is None else f"{value:.12g}"


def _cmd_point(args) -> int:
    params = _params_from_args(args)
    cutoffs = _cutoffs_from_args(args)
    try:
        stats = run_point(params, cutoffs)
    except SteadyStateError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    status = "vacuum-undefined" if stats.vacuum_undefined else "ok"
    print(f"n_a    = {_fmt(stats.n_a)}")
    print(f"n_b    = {_fmt(stats.n_b)}")
    print(f"g2_aa  = {_fmt(stats.g2_aa)}")
    print(f"g2_bb  = {_fmt(stats.g2_bb)}")
    print(f"status = {status}")
    if args.convergence_check:
        doubled = (2 * cutoffs[0], 2 * cutoffs[1])
        fine = run_point(params, doubled)
        for name in ("g2_aa", "g2_bb", "n_a", "n_b"):
            x, y = getattr(stats, name), getattr(fine, name)
            change = (
                "undefined"
                if x is None or y is None
                else f"{abs(x - y) / max(abs(y), 1e-300):.3e}"
            )
            print(f"convergence {name}: rel change {change}")
    if args.out:
        payload = {
            "params": {
                "delta": params.delta,
                "g": params.g,
                "kappa1": params.kappa1,
                "kappa2": params.kappa2,
                "drive_strength": params.drive_strength,
                "delta_f": params.delta_f,
                "direction": params.drive_direction.value,
            },
            "cutoffs": list(cutoffs),
            "outputs": {
                "n_a": stats.n_a,
                "n_b": stats.n_b,
                "g2_aa": stats.g2_aa,
                "g2_bb": stats.g2_bb,
            },
            "status": status,
        }
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
    return 0


def _emit_result(result, args) -> int:
    if args.out:
        emit(result, args.format, args.out)
    else:
        text = render_csv(result) if args.format == "csv" else render_json(result)
        sys.stdout.write(text)
    if result.convergence is not None:
        for name, change in result.convergence.items():
            print(f"convergence {name}: max rel change {change:.3e}", file=sys.stderr)
    return 2 if result.any_failure else 0


def _cmd_sweep(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as handle:
            spec = spec_from_dict(json.load(handle))
    elif args.axis1:
        spec = SweepSpec(axis1=_parse_axis(args.axis1))
    else:
        raise ValueError("sweep needs --axis1 or --config")

    # flags override config fields
    axis1 = _parse_axis(args.axis1) if args.axis1 else spec.axis1
    axis2 = _parse_axis(args.axis2) if args.axis2 else spec.axis2
    fixed = spec.fixed
    overrides = {}
    for field in ("delta", "g", "kappa2", "delta_f"):
        value = getattr(args, field)
        if value is not None:
            overrides[field] = value
    if args.drive_strength is not None:
        overrides["drive_strength"] = args.drive_strength
    if overrides or args.direction:
        direction = (
            DriveDirection(args.direction)
            if args.direction
            else (None if "delta_f" in overrides else fixed.drive_direction)
        )
        fixed = SystemParams(
            delta=overrides.get("delta", fixed.delta),
            g=overrides.get("g", fixed.g),
            kappa1=fixed.kappa1,
            kappa2=overrides.get("kappa2", fixed.kappa2),
            drive_strength=overrides.get("drive_strength", fixed.drive_strength),
            delta_f=overrides.get("delta_f", fixed.delta_f),
            drive_direction=direction,
        )
    outputs = tuple(args.outputs.split(",")) if args.outputs else spec.outputs
    spec = SweepSpec(
        axis1=axis1,
        axis2=axis2,
        fixed=fixed,
        outputs=outputs,
        cutoffs=_cutoffs_from_args(args, spec.cutoffs),
        convergence_check=(
            args.convergence_check
            if args.convergence_check is not None
            else spec.convergence_check
        ),
        include_optimal_g=spec.include_optimal_g,
    )
    return _emit_result(run_sweep(spec), args)


def _cmd_figure(args) -> int:
    spec = figure_preset(args.name, count1=args.count1, count2=args.count2)
    spec = dataclasses.replace(
        spec,
        cutoffs=_cutoffs_from_args(args, spec.cutoffs),
        convergence_check=bool(args.convergence_check),
    )
    return _emit_result(run_sweep(spec), args)


def _cmd_eigen(args) -> int:
    basis = build_basis(*_cutoffs_from_args(args))
    params = SystemParams(
        g=args.g if args.g is not None else 0.0,
        delta_f=args.delta_f if args.delta_f is not None else 0.0,
        drive_direction=DriveDirection(args.direction) if args.direction else None,
    )
    levels = eigenlevels(build_h_lab(args.omega1, params, basis), args.k)
    for energy in levels.energies:
        print(f"{energy:.12g}")
    return 0


def _cmd_optimal_g(args) -> int:
    kappa2 = args.kappa2 if args.kappa2 is not None else 1.0
    drive = args.drive_strength if args.drive_strength is not None else DEFAULT_DRIVE
    print(f"{optimal_g(1.0, kappa2, drive):.12g}")
    return 0


def _cmd_fizeau(args) -> int:
    omega1 = args.omega1 if args.omega1 else 2 * math.pi * SPEED_OF_LIGHT / args.wavelength
    fp = FizeauParams(
        n=args.n,
        r=args.radius,
        omega_rot=args.omega_rot,
        wavelength=args.wavelength,
        dn_dlambda=args.dn_dlambda,
        omega1=omega1,
    )
    direction = DriveDirection(args.direction) if args.direction else DriveDirection.LEFT
    shift = fizeau_shift(fp, direction)
    print(f"fizeau_shift_rad_s = {shift:.12g}")
    if args.kappa1_si:
        print(f"fizeau_shift_kappa1 = {shift / args.kappa1_si:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rotcav",
        description="Steady-state photon statistics of a rotating two-mode chi(2) cavity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one parameter point")
    _add_param_flags(p_point)
    _add_grid_flags(p_point)
    p_point.add_argument("--out", default=None, help="also save the result as JSON")
    p_point.set_defaults(func=_cmd_point)

    p_sweep = sub.add_parser("sweep", help="sweep one or two parameters")
    p_sweep.add_argument("--axis1", help="swept axis as name:start:stop:count")
    p_sweep.add_argument("--axis2", help="optional second axis, same syntax")
    p_sweep.add_argument("--outputs", help="comma-separated subset of g2_aa,g2_bb,n_a,n_b")
    p_sweep.add_argument("--config", help="JSON sweep specification (flags override)")
    _add_param_flags(p_sweep)
    _add_grid_flags(p_sweep)
    _add_output_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="run a preset reproducing a result figure")
    p_fig.add_argument("--name", required=True, choices=list(PRESET_NAMES))
    p_fig.add_argument("--count1", type=int, default=None, help="override axis1 resolution")
    p_fig.add_argument("--count2", type=int, default=None, help="override axis2 resolution")
    _add_grid_flags(p_fig)
    _add_output_flags(p_fig)
    p_fig.set_defaults(func=_cmd_figure)

    p_eig = sub.add_parser("eigen", help="lowest lab-frame eigenvalues")
    p_eig.add_argument("--omega1", type=float, required=True, help="fundamental frequency")
    p_eig.add_argument("--k", type=int, default=4, help="number of levels")
    p_eig.add_argument("--g", type=float, default=None)
    p_eig.add_argument("--delta-f", type=float, default=None)
    p_eig.add_argument("--direction", choices=["left", "right"], default=None)
    p_eig.add_argument("--na-cut", type=int, default=None)
    p_eig.add_argument("--nb-cut", type=int, default=None)
    p_eig.set_defaults(func=_cmd_eigen)

    p_opt = sub.add_parser("optimal-g", help="closed-form interference-optimal hopping")
    p_opt.add_argument("--kappa2", type=float, default=None)
    p_opt.add_argument("--drive-strength", type=float, default=None)
    p_opt.set_defaults(func=_cmd_optimal_g)

    p_fiz = sub.add_parser("fizeau", help="SI Fizeau shift of the fundamental mode")
    p_fiz.add_argument("--n", type=float, default=1.4, help="refractive index")
    p_fiz.add_argument("--radius", type=float, default=1.1e-3, help="cavity radius, m")
    p_fiz.add_argument(
        "--omega-rot", type=float, default=2 * math.pi * 6.6e3, help="rotation rate, rad/s"
    )
    p_fiz.add_argument("--wavelength", type=float, default=1550e-9, help="pump wavelength, m")
    p_fiz.add_argument("--dn-dlambda", type=float, default=0.0, help="dispersion, 1/m")
    p_fiz.add_argument(
        "--omega1", type=float, default=None, help="mode frequency (default 2 pi c / wavelength)"
    )
    p_fiz.add_argument("--direction", choices=["left", "right"], default=None)
    p_fiz.add_argument(
        "--kappa1-si", type=float, default=None, help="kappa1 in rad/s, to express the shift in kappa1 units"
    )
    p_fiz.set_defaults(func=_cmd_fizeau)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SteadyStateError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
