"""Parameter sweeps over a single axis, CSV output and plot scripts.

A sweep evaluates one or more resolution methods along an axis (``beta``,
``r1``, ``N`` or ``M``) for one or more series of fixed parameters.  The
figure presets ``fig1`` .. ``fig4`` reproduce the published parameter
studies; quantities the figures leave open default to a common angle
``theta = phi = pi/2``.

Spec files are plain ``key = value`` lines (``#`` starts a comment)::

    name = custom
    axis = r1
    values = linspace(1, 200, 200)   # or an explicit list: 1, 2, 5
    methods = closed_form, oracle_fresnel
    M = 0
    N = 128
    lambda = 0.01
    d = 0.005                        # optional, defaults to lambda/2
    r2 = 40                          # meters, or "rayleigh"
    r2_offset = 20                   # optional: r2 = r1 + offset
    theta = 1.5707963267948966       # sets theta1 and theta2
    phi = 1.5707963267948966         # sets phi1 and phi2
    output = custom.csv

``r1`` is required unless the axis binds it; ``theta1``/``theta2``/``phi1``/
``phi2`` set the users individually.  Lengths are meters, angles radians.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .array_model import ArrayConfig, UserLocation
from .resolution import ContractError, Method, check_ula, compute_delta

__all__ = [
    "AXES",
    "METHODS",
    "PRESETS",
    "Scenario",
    "SweepSpec",
    "SweepRow",
    "SpecFileError",
    "preset",
    "resolve_point",
    "validate",
    "run_sweep",
    "emit_csv",
    "emit_plot_script",
    "parse_spec_file",
    "load_spec_file",
]

AXES = ("beta", "r1", "N", "M")
METHODS = ("closed_form", "oracle_fresnel", "oracle_exact", "ula")
PRESETS = ("fig1", "fig2", "fig3", "fig4")

RAYLEIGH = "rayleigh"
HALF_PI = math.pi / 2

_METHOD_TAGS = {
    "closed_form": Method.CLOSED_FORM,
    "oracle_fresnel": Method.ORACLE_FRESNEL,
    "oracle_exact": Method.ORACLE_EXACT,
    "ula": Method.CLOSED_FORM_ULA,
}


class SpecFileError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    """Fixed parameters of one sweep series.

    ``r2`` is a range in meters or ``"rayleigh"`` for the array's Rayleigh
    distance.  With ``r2_offset`` set, ``r2 = r1 + r2_offset`` instead.
    ``r1`` may be left as ``None`` when the sweep axis provides it.
    """

    M: int = 0
    N: int = 128
    lam: float = 0.01
    d: float | None = None
    r1: float | None = None
    r2: float | str = RAYLEIGH
    r2_offset: float | None = None
    theta1: float = HALF_PI
    phi1: float = HALF_PI
    theta2: float = HALF_PI
    phi2: float = HALF_PI


@dataclass(frozen=True)
class SweepSpec:
    name: str
    axis: str
    axis_values: tuple
    series: tuple[tuple[str, Scenario], ...]
    methods: tuple[str, ...] = ("closed_form", "oracle_fresnel")
    output_path: str | None = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown axis {self.axis!r}; expected one of {AXES}")
        vals = tuple(self.axis_values)
        if not vals:
            raise ValueError("axis_values must be non-empty")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("axis_values must be strictly increasing")
        if self.axis in ("N", "M"):
            if any(int(v) != v or v < 0 for v in vals):
                raise ValueError(f"axis {self.axis} takes non-negative integers")
            vals = tuple(int(v) for v in vals)
        else:
            vals = tuple(float(v) for v in vals)
        object.__setattr__(self, "axis_values", vals)
        if not self.series:
            raise ValueError("at least one series is required")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "series", tuple(self.series))

    @property
    def columns(self) -> list[str]:
        if len(self.series) == 1:
            return list(self.methods)
        return [f"{m}[{label}]" for label, _ in self.series for m in self.methods]


@dataclass(frozen=True)
class SweepRow:
    axis_value: float | int
    values: tuple[float, ...]
    warnings: tuple[str, ...] = field(default=())


def _linspace(start: float, stop: float, num: int) -> tuple[float, ...]:
    return tuple(float(v) for v in np.linspace(start, stop, num))


def preset(name: str, theta: float = HALF_PI, phi: float = HALF_PI, *,
           N: int = 128, fig1_M: tuple[int, ...] = (16, 64, 128),
           fig3_r2: tuple[float, ...] = (40.0, 20.0),
           fig4_offsets: tuple[float, ...] = (20.0, 40.0),
           output_path: str | None = None) -> SweepSpec:
    """Figure-reproduction sweeps at ``lam = 1 cm``, ``d = lam/2``.

    fig1
        UPA, delta against ``beta`` for ``M`` in ``fig1_M``.
    fig2
        ULA, delta against ``beta``.
    fig3
        ULA, delta against ``r1`` for each fixed ``r2`` in ``fig3_r2``.
    fig4
        ULA, delta against ``r1`` with ``r2 = r1 + offset``.

    In the ``beta`` presets ``r1 = beta * d_Ray`` and ``r2 = d_Ray``.  The
    ULA presets also evaluate the ULA closed form when ``phi = pi/2``.
    """
    base = Scenario(M=0, N=N, lam=0.01, d=0.005, theta1=theta, theta2=theta,
                    phi1=phi, phi2=phi)
    ula_methods = ("closed_form", "oracle_fresnel", "oracle_exact")
    if phi == HALF_PI:
        ula_methods += ("ula",)
    betas = _linspace(0.02, 1.0, 50)
    r1_grid = _linspace(1.0, 200.0, 200)
    if name == "fig1":
        series = tuple((f"M={m}", replace(base, M=m)) for m in fig1_M)
        spec = SweepSpec("fig1", "beta", betas, series, ("closed_form", "oracle_fresnel"))
    elif name == "fig2":
        spec = SweepSpec("fig2", "beta", betas, (("ula", base),), ula_methods)
    elif name == "fig3":
        series = tuple((f"r2={r2:g}", replace(base, r2=float(r2))) for r2 in fig3_r2)
        spec = SweepSpec("fig3", "r1", r1_grid, series, ula_methods)
    elif name == "fig4":
        series = tuple((f"offset={o:g}", replace(base, r2_offset=float(o))) for o in fig4_offsets)
        spec = SweepSpec("fig4", "r1", r1_grid, series, ula_methods)
    else:
        raise ValueError(f"unknown preset {name!r}; expected one of {PRESETS}")
    return replace(spec, output_path=output_path or f"{name}.csv")


def resolve_point(spec: SweepSpec, scenario: Scenario, value) -> tuple[ArrayConfig, UserLocation, UserLocation]:
    """Concrete array and user pair for one axis value of one series."""
    M, N = scenario.M, scenario.N
    if spec.axis == "M":
        M = int(value)
    elif spec.axis == "N":
        N = int(value)
    cfg = ArrayConfig(M, N, scenario.lam, scenario.d)
    if spec.axis == "beta":
        r1 = value * cfg.rayleigh_distance
    elif spec.axis == "r1":
        r1 = value
    else:
        r1 = scenario.r1
    if r1 is None:
        raise ContractError("r1 is neither fixed nor bound by the axis")
    if scenario.r2_offset is not None:
        r2 = r1 + scenario.r2_offset
    elif scenario.r2 == RAYLEIGH:
        r2 = cfg.rayleigh_distance
    else:
        r2 = float(scenario.r2)
    u1 = UserLocation(r1, scenario.theta1, scenario.phi1)
    u2 = UserLocation(r2, scenario.theta2, scenario.phi2)
    return cfg, u1, u2


def validate(spec: SweepSpec) -> None:
    """Check every grid point against every method's preconditions.

    Raises :class:`ContractError` naming the first offending point.
    """
    for label, scenario in spec.series:
        for v in spec.axis_values:
            where = f"{spec.axis}={v!r}" + (f" in series {label!r}" if label else "")
            try:
                cfg, u1, u2 = resolve_point(spec, scenario, v)
                if "ula" in spec.methods:
                    check_ula(cfg, u1, u2)
            except ValueError as exc:
                raise ContractError(f"invalid grid point {where}: {exc}") from exc


def _evaluate_row(spec: SweepSpec, value) -> SweepRow:
    values = []
    warnings = set()
    for _, scenario in spec.series:
        cfg, u1, u2 = resolve_point(spec, scenario, value)
        for m in spec.methods:
            res = compute_delta(cfg, u1, u2, _METHOD_TAGS[m])
            values.append(res.delta)
            warnings.update(res.warnings)
    return SweepRow(value, tuple(values), tuple(sorted(warnings)))


def _evaluate_row_star(args):
    return _evaluate_row(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate every axis value; rows come back in axis order for any ``workers``."""
    validate(spec)
    if workers <= 1 or len(spec.axis_values) == 1:
        return [_evaluate_row(spec, v) for v in spec.axis_values]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_row_star, [(spec, v) for v in spec.axis_values]))


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def emit_csv(rows: list[SweepRow], spec: SweepSpec, path: str | os.PathLike | None = None) -> Path:
    """Write ``axis,<columns...>,warnings`` with shortest round-trip floats and LF endings."""
    if not rows:
        raise ValueError("no rows to write")
    path = Path(path if path is not None else spec.output_path or f"{spec.name}.csv")
    try:
        if path.parent != Path("."):
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["axis", *spec.columns, "warnings"])
            for row in rows:
                w.writerow([_fmt(row.axis_value), *(_fmt(v) for v in row.values),
                            ";".join(row.warnings)])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc
    return path


_AXIS_LABELS = {
    "beta": r"$\beta = \min(r_1, r_2) / d_{Ray}$",
    "r1": r"$r_1$ (m)",
    "N": "N",
    "M": "M",
}

_PLOT_TEMPLATE = '''\
"""Plot {name}: resolution against {axis}. Generated by nfres."""
import csv
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
CSV_PATH = os.path.join(HERE, {csv_rel!r})

with open(CSV_PATH, newline="", encoding="utf-8") as fh:
    reader = csv.reader(fh)
    header = next(reader)
    rows = list(reader)

x = [float(r[0]) for r in rows]
fig, ax = plt.subplots(figsize=(6, 4))
for j, column in enumerate(header[1:-1], start=1):
    ax.plot(x, [float(r[j]) for r in rows], label=column)
ax.set_xlabel({xlabel!r})
ax.set_ylabel(r"$\\Delta$")
{xlim}ax.set_ylim(0, 1.05)
ax.set_title({name!r})
ax.grid(True, alpha=0.3)
ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig(os.path.join(HERE, {png!r}), dpi=150)
'''


def emit_plot_script(spec: SweepSpec, csv_path: str | os.PathLike,
                     script_path: str | os.PathLike | None = None) -> Path:
    """Write a matplotlib script that plots every CSV column against the axis.

    The CSV is referenced relative to the script's own directory.
    """
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise FileNotFoundError(f"CSV not found: {csv_path}")
    script_path = Path(script_path) if script_path else csv_path.with_name(f"plot_{spec.name}.py")
    csv_rel = os.path.relpath(csv_path.resolve(), script_path.resolve().parent)
    src = _PLOT_TEMPLATE.format(
        name=spec.name,
        axis=spec.axis,
        csv_rel=csv_rel,
        xlabel=_AXIS_LABELS[spec.axis],
        xlim="ax.set_xlim(0, 1)\n" if spec.axis == "beta" else "",
        png=f"{spec.name}.png",
    )
    try:
        script_path.write_text(src, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write plot script to {script_path}: {exc.strerror or exc}") from exc
    return script_path


def _parse_values(text: str) -> tuple[float, ...]:
    text = text.strip()
    if text.startswith("linspace(") and text.endswith(")"):
        args = [a.strip() for a in text[len("linspace("):-1].split(",")]
        if len(args) != 3:
            raise ValueError("linspace takes (start, stop, count)")
        return _linspace(float(args[0]), float(args[1]), int(args[2]))
    return tuple(float(v) for v in text.split(",") if v.strip())


_FLOAT_KEYS = {"lambda": "lam", "d": "d", "r1": "r1", "r2_offset": "r2_offset",
               "theta1": "theta1", "theta2": "theta2", "phi1": "phi1", "phi2": "phi2"}


def parse_spec_file(text: str) -> SweepSpec:
    """Build a single-series :class:`SweepSpec` from key = value lines."""
    fields: dict = {}
    top = {"name": "custom", "methods": ("closed_form", "oracle_fresnel"), "output": None}
    axis = values = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFileError(f"line {lineno}: expected key = value, got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in seen:
            raise SpecFileError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        try:
            if key == "axis":
                axis = val
            elif key == "values":
                values = _parse_values(val)
            elif key == "methods":
                top["methods"] = tuple(m.strip() for m in val.split(",") if m.strip())
            elif key in ("name", "output"):
                top[key] = val
            elif key in ("M", "N"):
                fields[key] = int(val)
            elif key == "r2":
                fields["r2"] = RAYLEIGH if val.lower() == RAYLEIGH else float(val)
            elif key == "theta":
                fields["theta1"] = fields["theta2"] = float(val)
            elif key == "phi":
                fields["phi1"] = fields["phi2"] = float(val)
            elif key in _FLOAT_KEYS:
                fields[_FLOAT_KEYS[key]] = float(val)
            else:
                raise SpecFileError(f"line {lineno}: unknown key {key!r}")
        except SpecFileError:
            raise
        except ValueError as exc:
            raise SpecFileError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    if axis is None or values is None:
        raise SpecFileError("spec file needs both 'axis' and 'values'")
    try:
        return SweepSpec(top["name"], axis, values, (("", Scenario(**fields)),),
                         top["methods"], top["output"])
    except ValueError as exc:
        raise SpecFileError(str(exc)) from exc


def load_spec_file(path: str | os.PathLike) -> SweepSpec:
    return parse_spec_file(Path(path).read_text(encoding="utf-8"))
