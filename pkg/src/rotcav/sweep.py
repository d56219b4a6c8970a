"""Parameter sweeps over the steady-state solver, with figure presets.

A sweep evaluates the full pipeline (basis -> Hamiltonian ->
Liouvillian -> steady state -> statistics) on a 1D or 2D grid of model
parameters and collects one row per grid point, in row-major order
(axis1 outer, axis2 inner) regardless of how the points are evaluated.
Rows carry a status flag: 'ok', 'vacuum-undefined' when a requested g2
hits the empty-mode guard (so heatmaps can tell "blocked" from
"empty"), or 'solver-failure' (the row is kept, outputs empty).

Presets reproduce the data grids behind the standard result figures of
this model: blockade maps over (detuning, hopping), the interference
dip of the second harmonic versus hopping, the optimal-hopping curve
versus the second-harmonic loss, and the direction-resolved sweeps that
exhibit nonreciprocity under rotation.  Axis ranges not fixed by the
preset definitions (heatmap extents, point counts) are package
defaults and can be overridden.

CSV output is deterministic: header row, floats at 12 significant
digits, empty fields for undefined values, no timestamps.  JSON output
carries the same rows plus a metadata object echoing the sweep
specification (timestamps live only there).
"""

from __future__ import annotations

import dataclasses
import datetime
import json
import math
from dataclasses import dataclass

import numpy as np

from . import __version__ as _version
from .fock import build_basis, annihilator_a, annihilator_b
from .hamiltonian import DriveDirection, SystemParams, build_h_eff
from .dynamics import SteadyStateError, build_liouvillian, steady_state
from .observables import PhotonStatistics, photon_statistics
from .amplitudes import optimal_g

SWEEPABLE = ("delta", "g", "kappa2", "drive_strength", "delta_f")
OUTPUT_NAMES = ("g2_aa", "g2_bb", "n_a", "n_b")
DEFAULT_CUTOFFS = (6, 3)
DEFAULT_DRIVE = 0.05

STATUS_OK = "ok"
STATUS_VACUUM = "vacuum-undefined"
STATUS_FAILURE = "solver-failure"

PRESET_NAMES = ("fig4a", "fig4b", "fig5", "fig6", "fig7a", "fig7b", "fig8a", "fig8b")


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in SWEEPABLE:
            raise ValueError(f"cannot sweep '{self.name}'; choose from {SWEEPABLE}")
        if self.count < 2:
            raise ValueError(f"axis '{self.name}' needs count >= 2, got {self.count}")
        if self.start == self.stop:
            raise ValueError(f"axis '{self.name}' is degenerate (start == stop)")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axis1: SweepAxis
    axis2: SweepAxis | None = None
    fixed: SystemParams = SystemParams(drive_strength=DEFAULT_DRIVE)
    outputs: tuple[str, ...] = OUTPUT_NAMES
    cutoffs: tuple[int, int] = DEFAULT_CUTOFFS
    convergence_check: bool = False
    include_optimal_g: bool = False

    def __post_init__(self):
        if not self.outputs:
            raise ValueError("at least one output must be requested")
        for name in self.outputs:
            if name not in OUTPUT_NAMES:
                raise ValueError(f"unknown output '{name}'; choose from {OUTPUT_NAMES}")
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise ValueError("axis1 and axis2 sweep the same parameter")

    @property
    def axis_names(self) -> tuple[str, ...]:
        if self.axis2 is None:
            return (self.axis1.name,)
        return (self.axis1.name, self.axis2.name)

    @property
    def column_names(self) -> tuple[str, ...]:
        extra = ("optimal_g",) if self.include_optimal_g else ()
        return self.axis_names + self.outputs + extra + ("status",)


@dataclass(frozen=True)
class SweepRow:
    axis_values: tuple[float, ...]
    outputs: dict[str, float | None]
    status: str


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: list[SweepRow]
    convergence: dict[str, float] | None = None

    @property
    def any_failure(self) -> bool:
        return any(row.status == STATUS_FAILURE for row in self.rows)


def run_point(p: SystemParams, cutoffs: tuple[int, int] = DEFAULT_CUTOFFS) -> PhotonStatistics:
    """Steady-state statistics at a single parameter point.

    Undefined g2 values (empty mode) come back as None; solver failures
    propagate as :class:`SteadyStateError` with the point attached.
    """
    basis = build_basis(*cutoffs)
    a = annihilator_a(basis)
    b = annihilator_b(basis)
    h = build_h_eff(p, basis)
    lio = build_liouvillian(h, a, b, p.kappa1, p.kappa2)
    try:
        rho = steady_state(lio)
    except SteadyStateError as exc:
        raise type(exc)(f"{exc} [at {_params_label(p)}]") from exc
    return photon_statistics(rho, a, b)


def _params_label(p: SystemParams) -> str:
    return (
        f"delta={p.delta:g}, g={p.g:g}, kappa2={p.kappa2:g}, "
        f"F={p.drive_strength:g}, delta_f={p.delta_f:g}"
    )


def _point_params(spec: SweepSpec, assignments: dict[str, float]) -> SystemParams:
    fixed = spec.fixed
    kwargs = {
        "delta": fixed.delta,
        "g": fixed.g,
        "kappa1": fixed.kappa1,
        "kappa2": fixed.kappa2,
        "drive_strength": fixed.drive_strength,
        "delta_f": fixed.delta_f,
    }
    kwargs.update(assignments)
    # A swept Fizeau shift implies the drive port; let it re-infer.
    direction = None if "delta_f" in assignments else fixed.drive_direction
    return SystemParams(drive_direction=direction, **kwargs)


def _grid(spec: SweepSpec):
    if spec.axis2 is None:
        for v1 in spec.axis1.values():
            yield (float(v1),), {spec.axis1.name: float(v1)}
    else:
        for v1 in spec.axis1.values():
            for v2 in spec.axis2.values():
                yield (
                    (float(v1), float(v2)),
                    {spec.axis1.name: float(v1), spec.axis2.name: float(v2)},
                )


def _evaluate_grid(spec: SweepSpec, cutoffs: tuple[int, int]) -> list[SweepRow]:
    rows = []
    for axis_values, assignments in _grid(spec):
        params = _point_params(spec, assignments)
        try:
            stats = run_point(params, cutoffs)
        except SteadyStateError:
            outputs: dict[str, float | None] = {name: None for name in spec.outputs}
            status = STATUS_FAILURE
        else:
            outputs = {name: getattr(stats, name) for name in spec.outputs}
            status = STATUS_VACUUM if None in outputs.values() else STATUS_OK
        if spec.include_optimal_g:
            outputs["optimal_g"] = optimal_g(
                params.kappa1, params.kappa2, params.drive_strength
            )
        rows.append(SweepRow(axis_values, outputs, status))
    return rows


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every grid point; deterministic row-major ordering.

    With convergence_check the whole grid is re-run at doubled cutoffs
    (considerably more expensive) and the worst relative change of each
    output is reported alongside the rows.
    """
    rows = _evaluate_grid(spec, spec.cutoffs)
    convergence = None
    if spec.convergence_check:
        doubled = (2 * spec.cutoffs[0], 2 * spec.cutoffs[1])
        rows_fine = _evaluate_grid(spec, doubled)
        convergence = {}
        for name in spec.outputs:
            worst = 0.0
            for coarse, fine in zip(rows, rows_fine):
                x, y = coarse.outputs[name], fine.outputs[name]
                if x is None or y is None:
                    continue
                worst = max(worst, abs(x - y) / max(abs(y), 1e-300))
            convergence[name] = worst
    return SweepResult(spec, rows, convergence)


def figure_preset(
    name: str, *, count1: int | None = None, count2: int | None = None
) -> SweepSpec:
    """Sweep specification reproducing the data grid of a result figure.

    All presets use kappa2 = kappa1 and F = 0.05 kappa1 (weak drive).
    The 4-panels sweep (detuning, hopping) without rotation; 5 sweeps
    hopping through the interference dip; 6 maps the dip condition over
    (kappa2, hopping) and appends the closed-form optimal hopping as an
    extra column; the 7/8 panels sweep detuning for both drive
    directions (the second axis is the signed Fizeau shift) at the
    two-photon-resonance rotation speed.  count1/count2 override the
    default grid resolutions.
    """
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset '{name}'; choose from {PRESET_NAMES}")
    weak = DEFAULT_DRIVE

    def ax(pname: str, start: float, stop: float, count: int, override: int | None):
        return SweepAxis(pname, start, stop, override if override else count)

    if name in ("fig4a", "fig4b"):
        return SweepSpec(
            axis1=ax("delta", -6.0, 6.0, 101, count1),
            axis2=ax("g", 0.0, 10.0, 101, count2),
            fixed=SystemParams(drive_strength=weak),
            outputs=("g2_aa",) if name == "fig4a" else ("g2_bb",),
        )
    if name == "fig5":
        return SweepSpec(
            axis1=ax("g", 0.1, 3.0, 200, count1),
            fixed=SystemParams(drive_strength=weak),
            outputs=("g2_bb",),
        )
    if name == "fig6":
        return SweepSpec(
            axis1=ax("kappa2", 0.1, 3.0, 101, count1),
            axis2=ax("g", 0.1, 3.0, 101, count2),
            fixed=SystemParams(drive_strength=weak),
            outputs=("g2_bb",),
            include_optimal_g=True,
        )
    # direction-resolved sweeps: strong hopping for the fundamental-mode
    # panels (a), interference-optimal hopping for the second-harmonic
    # panels (b); the rotation speed puts the Fizeau shift at the
    # two-photon-resonance value sqrt(2) g / 4 for either drive port.
    strong = name in ("fig7a", "fig8a")
    g_val = 5.0 if strong else optimal_g(1.0, 1.0, weak)
    shift = math.sqrt(2.0) / 4.0 * g_val
    outputs = {
        "fig7a": ("g2_aa",),
        "fig7b": ("g2_bb",),
        "fig8a": ("n_a",),
        "fig8b": ("n_b",),
    }[name]
    return SweepSpec(
        axis1=ax("delta", -4.0, 4.0, 201, count1),
        axis2=ax("delta_f", shift, -shift, 2, count2),
        fixed=SystemParams(g=g_val, drive_strength=weak),
        outputs=outputs,
    )


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def _row_values(spec: SweepSpec, row: SweepRow) -> list[float | None | str]:
    values: list[float | None | str] = list(row.axis_values)
    for name in spec.column_names[len(row.axis_values) : -1]:
        values.append(row.outputs.get(name))
    values.append(row.status)
    return values


def render_csv(result: SweepResult) -> str:
    """Deterministic CSV: header, 12-significant-digit floats, no timestamps."""
    lines = [",".join(result.spec.column_names)]
    for row in result.rows:
        cells = [
            cell if isinstance(cell, str) else _fmt(cell)
            for cell in _row_values(result.spec, row)
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _round12(value: float | None) -> float | None:
    return None if value is None else float(f"{value:.12g}")


def spec_to_dict(spec: SweepSpec) -> dict:
    def axis_dict(axis: SweepAxis | None):
        return None if axis is None else dataclasses.asdict(axis)

    fixed = spec.fixed
    return {
        "axis1": axis_dict(spec.axis1),
        "axis2": axis_dict(spec.axis2),
        "fixed": {
            "delta": fixed.delta,
            "g": fixed.g,
            "kappa1": fixed.kappa1,
            "kappa2": fixed.kappa2,
            "drive_strength": fixed.drive_strength,
            "delta_f": fixed.delta_f,
            "direction": fixed.drive_direction.value,
        },
        "outputs": list(spec.outputs),
        "cutoffs": list(spec.cutoffs),
        "convergence_check": spec.convergence_check,
        "include_optimal_g": spec.include_optimal_g,
    }


def spec_from_dict(data: dict) -> SweepSpec:
    """Build a sweep specification from a config-file dictionary."""

    def axis(entry):
        if entry is None:
            return None
        return SweepAxis(
            str(entry["name"]),
            float(entry["start"]),
            float(entry["stop"]),
            int(entry["count"]),
        )

    if "axis1" not in data:
        raise ValueError("config must define axis1")
    try:
        fixed_in = dict(data.get("fixed", {}))
        direction = fixed_in.pop("direction", None)
        if direction is not None:
            direction = DriveDirection(direction)
        fixed = SystemParams(
            delta=float(fixed_in.get("delta", 0.0)),
            g=float(fixed_in.get("g", 0.0)),
            kappa1=float(fixed_in.get("kappa1", 1.0)),
            kappa2=float(fixed_in.get("kappa2", 1.0)),
            drive_strength=float(fixed_in.get("drive_strength", DEFAULT_DRIVE)),
            delta_f=float(fixed_in.get("delta_f", 0.0)),
            drive_direction=direction,
        )
        cutoffs = data.get("cutoffs", DEFAULT_CUTOFFS)
        return SweepSpec(
            axis1=axis(data["axis1"]),
            axis2=axis(data.get("axis2")),
            fixed=fixed,
            outputs=tuple(data.get("outputs", OUTPUT_NAMES)),
            cutoffs=(int(cutoffs[0]), int(cutoffs[1])),
            convergence_check=bool(data.get("convergence_check", False)),
            include_optimal_g=bool(data.get("include_optimal_g", False)),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed sweep config: {exc!r}") from exc


def render_json(result: SweepResult) -> str:
    metadata = {
        "spec": spec_to_dict(result.spec),
        "generator": f"rotcav {_version}",
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if result.convergence is not None:
        metadata["convergence_max_rel_change"] = {
            k: _round12(v) for k, v in result.convergence.items()
        }
    rows = []
    for row in result.rows:
        entry: dict = dict(zip(result.spec.axis_names, map(_round12, row.axis_values)))
        for name in result.spec.column_names[len(row.axis_values) : -1]:
            entry[name] = _round12(row.outputs.get(name))
        entry["status"] = row.status
        rows.append(entry)
    return json.dumps({"metadata": metadata, "rows": rows}, indent=2) + "\n"


def emit(result: SweepResult, format: str, path) -> str:
    """Write the result as 'csv' or 'json'; returns the path written."""
    if format == "csv":
        text = render_csv(result)
    elif format == "json":
        text = render_json(result)
    else:
        raise ValueError(f"unknown format '{format}'; choose csv or json")
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {path}: {exc}") from exc
    return str(path)


def refine_extremum(
    xs: np.ndarray, ys: np.ndarray, kind: str = "min"
) -> tuple[float, float]:
    """Grid extremum location with 3-point parabolic refinement.

    Returns (refined x, grid extremum y).  Exact ties are broken toward
    the smaller x; a boundary extremum is returned unrefined.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1 or len(xs) < 2:
        raise ValueError("xs and ys must be equal-length 1D arrays, len >= 2")
    target = np.min(ys) if kind == "min" else np.max(ys)
    candidates = np.flatnonzero(ys == target)
    i = int(candidates[np.argmin(xs[candidates])])
    if i == 0 or i == len(xs) - 1:
        return float(xs[i]), float(ys[i])
    x0, x1, x2 = xs[i - 1 : i + 2]
    y0, y1, y2 = ys[i - 1 : i + 2]
    denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
    if denom == 0.0:
        return float(x1), float(y1)
    shift = 0.5 * ((x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)) / denom
    return float(x1 - shift), float(y1)
