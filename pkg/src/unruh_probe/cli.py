"""Deterministic command-line front end emitting CSV.

Subcommands: ``params`` (unit conversions), ``evolve`` (Bloch trajectory),
``distance`` (distance curves), ``analyze`` (roots, kinks, maxima,
advantage threshold) and ``figure`` (canned figure-data files). Identical
invocations produce byte-identical output; time is always reported as the
dimensionless gamma0*tau. A flat ``key = value`` config file can supply
defaults (flags win); its path comes from ``--config`` or the
``UNRUH_PROBE_CONFIG`` environment variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

import numpy as np

from . import analysis, detector, discrimination

CONFIG_ENV_VAR = "UNRUH_PROBE_CONFIG"

DEFAULT_PRECISION = 12
DEFAULT_TAU_MAX = 3.0
DEFAULT_POINTS = 301

FIGURE_N = 10.0
FIGURE_TAU_MAX = 3.0
FIGURE_FILES = {1: "fig1.csv", 2: "fig2.csv", 3: "fig3.csv"}
FIG1_THETA_POINTS = 33
FIG1_TAU_POINTS = 121
FIG2_WERNER_SET = (1.0 / 3.0, 0.6, 0.88, 0.9, 1.0)
FIG23_TAU_POINTS = 301


class UsageError(Exception):
    """Malformed invocation or config; maps to exit code 2."""


# ---------------------------------------------------------------------------
# config file handling

def _parse_bool(raw: str, key: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"bad boolean config value for {key}: {raw!r}")


def _norm_key(key: str) -> str:
    return key.strip().replace("-", "_")


def _load_config(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        values[_norm_key(key)] = value.strip()
    return values


def _resolve_options(
    args: argparse.Namespace,
    command: str,
    value_keys: dict[str, Callable[[str], object]],
    bool_keys: tuple[str, ...] = ("stamp",),
) -> None:
    """Fill unset options from the config file; flags always win."""
    path = args.config if args.config is not None else os.environ.get(CONFIG_ENV_VAR)
    cfg = _load_config(path) if path else {}
    allowed = set(value_keys) | set(bool_keys)
    unknown = sorted(set(cfg) - allowed)
    if unknown:
        raise UsageError(f"unknown config key(s) for '{command}': {', '.join(unknown)}")
    for key, conv in value_keys.items():
        if getattr(args, key) is None and key in cfg:
            try:
                setattr(args, key, conv(cfg[key]))
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad config value for {key}: {cfg[key]!r}") from exc
    for key in bool_keys:
        if not getattr(args, key) and key in cfg:
            setattr(args, key, _parse_bool(cfg[key], key))


def _require(command: str, **flags: object) -> None:
    missing = [name for name, value in flags.items() if value is None]
    if missing:
        pretty = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise UsageError(f"'{command}' requires {pretty}")


def _finalize_precision(args: argparse.Namespace) -> int:
    p = DEFAULT_PRECISION if args.precision is None else int(args.precision)
    if not 1 <= p <= 17:
        raise UsageError(f"precision must be in 1..17, got {p}")
    args.precision = p
    return p


# ---------------------------------------------------------------------------
# output helpers

def _fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}g}"


def _show(value: object) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return ":".join(_show(v) for v in value)
    return str(value)


def _header(command: str, resolved: dict[str, object], stamp: bool) -> list[str]:
    shown = {k: v for k, v in resolved.items() if v is not None}
    pairs = " ".join(f"{k}={_show(v)}" for k, v in sorted(shown.items()))
    lines = [f"# unruh-probe {command}", f"# {pairs}"]
    if stamp:
        lines.append(f"# generated: {datetime.now(timezone.utc).isoformat()}")
    return lines


def _write_lines(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommand: params

def _cmd_params(args: argparse.Namespace) -> int:
    _resolve_options(
        args,
        "params",
        {
            "a": float,
            "T": float,
            "n": float,
            "omega0": float,
            "gamma0": float,
            "out": str,
            "precision": int,
        },
    )
    p = _finalize_precision(args)
    given = [name for name in ("a", "T", "n") if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("'params' needs exactly one of --a, --T, --n")
    omega0 = 1.0 if args.omega0 is None else args.omega0
    gamma0 = 1.0 if args.gamma0 is None else args.gamma0

    if args.a is not None:
        a = args.a
        point = detector.thermal_params(a, omega0)
    elif args.T is not None:
        if args.T < 0.0:
            raise ValueError(f"temperature must be >= 0, got {args.T!r}")
        a = detector.TWO_PI * args.T
        point = detector.thermal_params(a, omega0)
    else:
        a = detector.acceleration_for_n(args.n, omega0)
        point = detector.thermal_params(a, omega0)

    rates = detector.kossakowski(
        detector.DetectorParams(omega0=omega0, gamma0=gamma0, n=point.n)
    )
    resolved = {given[0]: getattr(args, given[0]), "omega0": omega0,
                "gamma0": gamma0, "precision": p}
    lines = _header("params", resolved, args.stamp)
    for name, value in (
        ("a", a),
        ("T", point.temperature),
        ("N_U", point.n_quanta),
        ("n", point.n),
        ("A", rates.A),
        ("B", rates.B),
    ):
        lines.append(f"{name} = {_fmt(value, p)}")
    _write_lines(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# subcommand: evolve

def _cmd_evolve(args: argparse.Namespace) -> int:
    _resolve_options(
        args,
        "evolve",
        {
            "theta": float,
            "n": float,
            "gamma0": float,
            "tau_max": float,
            "points": int,
            "oracle": int,
            "out": str,
            "precision": int,
        },
    )
    p = _finalize_precision(args)
    _require("evolve", theta=args.theta, n=args.n, tau_max=args.tau_max,
             points=args.points)
    gamma0 = 1.0 if args.gamma0 is None else args.gamma0
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if args.tau_max < 0.0:
        raise ValueError(f"bad --tau-max: must be >= 0, got {args.tau_max!r}")

    params = detector.DetectorParams(gamma0=gamma0, n=args.n)
    r0 = detector.bloch_from_angle(args.theta)
    gts = np.linspace(0.0, args.tau_max, args.points)
    trajectory = [detector.evolve_bloch(r0, params, gt / gamma0) for gt in gts]

    deltas = None
    if args.oracle is not None:
        if args.oracle < 1:
            raise UsageError("--oracle step count must be >= 1")
        numeric = detector.lindblad_oracle_many(
            np.tile(r0.as_array(), (len(gts), 1)), params, gts / gamma0, args.oracle
        )
        analytic = np.array([r.as_array() for r in trajectory])
        deltas = np.max(np.abs(analytic - numeric), axis=1)

    resolved = {"theta": args.theta, "n": args.n, "gamma0": gamma0,
                "tau_max": args.tau_max, "points": args.points,
                "oracle": args.oracle, "precision": p}
    lines = _header("evolve", resolved, args.stamp)
    lines.append("tau,r1,r2,r3" + (",oracle_delta" if deltas is not None else ""))
    for i, (gt, r) in enumerate(zip(gts, trajectory)):
        row = [_fmt(gt, p), _fmt(r.r1, p), _fmt(r.r2, p), _fmt(r.r3, p)]
        if deltas is not None:
            row.append(_fmt(float(deltas[i]), p))
        lines.append(",".join(row))
    _write_lines(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# subcommand: distance

def _bipartite_state(args: argparse.Namespace, command: str) -> discrimination.XStateCoeffs:
    explicit = [c for c in (args.c1, args.c2, args.c3) if c is not None]
    if args.werner is not None:
        if explicit:
            raise UsageError(f"'{command}' takes --werner or --c1/--c2/--c3, not both")
        return discrimination.werner(args.werner)
    if len(explicit) != 3:
        raise UsageError(f"'{command}' needs --werner C or all of --c1, --c2, --c3")
    return discrimination.XStateCoeffs(args.c1, args.c2, args.c3)


def _cmd_distance(args: argparse.Namespace) -> int:
    _resolve_options(
        args,
        "distance",
        {
            "mode": str,
            "theta": float,
            "werner": float,
            "c1": float,
            "c2": float,
            "c3": float,
            "n": float,
            "tau_max": float,
            "points": int,
            "out": str,
            "precision": int,
        },
        bool_keys=("stamp", "normalized"),
    )
    p = _finalize_precision(args)
    _require("distance", mode=args.mode, n=args.n)
    if args.mode not in ("single", "bipartite"):
        raise UsageError(f"--mode must be single or bipartite, got {args.mode!r}")
    tau_max = DEFAULT_TAU_MAX if args.tau_max is None else args.tau_max
    points = DEFAULT_POINTS if args.points is None else args.points
    if points < 2:
        raise UsageError("--points must be >= 2")
    if args.normalized and args.n == 1.0:
        raise ValueError("normalized distance is undefined in the inertial case n = 1")

    if args.mode == "single":
        _require("distance", theta=args.theta)
        if args.werner is not None or args.c1 is not None:
            raise UsageError("single mode takes --theta only")

        def at(gt: float) -> discrimination.DiscriminationResult:
            return discrimination.single_distance(args.theta, gt, args.n)

    else:
        c0 = _bipartite_state(args, "distance")

        def at(gt: float) -> discrimination.DiscriminationResult:
            return discrimination.bipartite_distance(c0, args.n, gt)

    with_norm = args.n > 1.0
    resolved = {"mode": args.mode, "theta": args.theta, "werner": args.werner,
                "c1": args.c1, "c2": args.c2, "c3": args.c3, "n": args.n,
                "tau_max": tau_max, "points": points, "precision": p}
    lines = _header("distance", resolved, args.stamp)
    lines.append("tau,distance" + (",normalized" if with_norm else "") + ",error_probability")
    for gt in np.linspace(0.0, tau_max, points):
        res = at(float(gt))
        row = [_fmt(res.tau, p), _fmt(res.distance, p)]
        if with_norm:
            row.append(_fmt(res.normalized, p))
        row.append(_fmt(res.error_probability, p))
        lines.append(",".join(row))
    _write_lines(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# subcommand: analyze

def _parse_bracket(raw: str) -> tuple[float, float]:
    parts = raw.replace(",", " ").split()
    if len(parts) != 2:
        raise ValueError(f"expected two numbers, got {raw!r}")
    return (float(parts[0]), float(parts[1]))


def _cmd_analyze(args: argparse.Namespace) -> int:
    _resolve_options(
        args,
        "analyze",
        {
            "what": str,
            "theta": float,
            "werner": float,
            "c1": float,
            "c2": float,
            "c3": float,
            "n": float,
            "bracket": _parse_bracket,
            "out": str,
            "precision": int,
        },
    )
    p = _finalize_precision(args)
    _require("analyze", what=args.what, n=args.n)
    if args.what not in ("zero", "kink", "max", "threshold"):
        raise UsageError(f"--what must be zero, kink, max or threshold, got {args.what!r}")
    bracket = analysis.GT_BRACKET if args.bracket is None else tuple(args.bracket)

    found: analysis.Extremum | None
    if args.what == "zero":
        _require("analyze", theta=args.theta)
        found = analysis.find_zero_crossing(args.theta, args.n, bracket)
    elif args.what == "kink":
        _require("analyze", werner=args.werner)
        found = analysis.find_sudden_change(args.werner, args.n, bracket)
    elif args.what == "max":
        c0 = _bipartite_state(args, "analyze")
        found = analysis.maximize_distance(c0, args.n, bracket)
    else:
        found = analysis.advantage_threshold_point(args.n)

    resolved = {"what": args.what, "theta": args.theta, "werner": args.werner,
                "c1": args.c1, "c2": args.c2, "c3": args.c3, "n": args.n,
                "bracket": bracket, "precision": p}
    lines = _header("analyze", resolved, args.stamp)
    if found is None:
        lines.append("no crossing")
    elif args.what == "max":
        lines.append("location,value,normalized")
        norm = "" if found.normalized is None else _fmt(found.normalized, p)
        lines.append(f"{_fmt(found.location, p)},{_fmt(found.value, p)},{norm}")
    else:
        lines.append("location,value")
        lines.append(f"{_fmt(found.location, p)},{_fmt(found.value, p)}")
    _write_lines(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# subcommand: figure

def _sweep_tau(
    quantity: str, points: int, n: float, **state: float
) -> list[discrimination.DiscriminationResult]:
    grid = analysis.SweepGrid("tau", 0.0, FIGURE_TAU_MAX, points, {"n": n, **state})
    out = []
    for row in analysis.sweep(grid, quantity):
        if row.result is None:
            raise ValueError(f"sweep failed at {grid.variable}={row.value}: {row.error}")
        out.append(row.result)
    return out


def _figure_rows(which: int, n: float, p: int) -> list[str]:
    if which == 1:
        lines = ["theta,tau,distance,normalized"]
        for theta in np.linspace(0.0, math.pi, FIG1_THETA_POINTS):
            for res in _sweep_tau("single_distance", FIG1_TAU_POINTS, n, theta=float(theta)):
                lines.append(
                    f"{_fmt(float(theta), p)},{_fmt(res.tau, p)},"
                    f"{_fmt(res.distance, p)},{_fmt(res.normalized, p)}"
                )
        return lines
    if which == 2:
        lines = ["c,tau,distance,normalized"]
        for c in FIG2_WERNER_SET:
            for res in _sweep_tau("bipartite_distance", FIG23_TAU_POINTS, n, c=c):
                lines.append(
                    f"{_fmt(c, p)},{_fmt(res.tau, p)},"
                    f"{_fmt(res.distance, p)},{_fmt(res.normalized, p)}"
                )
        return lines
    entangled = _sweep_tau("bipartite_distance", FIG23_TAU_POINTS, n, c=1.0)
    ground = _sweep_tau("single_distance", FIG23_TAU_POINTS, n, theta=math.pi)
    lines = ["tau,normalized_entangled,normalized_single_ground,normalized_equilibrium"]
    for ent, gnd in zip(entangled, ground):
        lines.append(
            f"{_fmt(ent.tau, p)},{_fmt(ent.normalized, p)},"
            f"{_fmt(gnd.normalized, p)},{_fmt(1.0, p)}"
        )
    return lines


def _cmd_figure(args: argparse.Namespace) -> int:
    _resolve_options(
        args,
        "figure",
        {"which": int, "n": float, "out": str, "precision": int},
    )
    p = _finalize_precision(args)
    _require("figure", which=args.which, out=args.out)
    if args.which not in FIGURE_FILES:
        raise UsageError(f"--which must be 1, 2 or 3, got {args.which!r}")
    n = FIGURE_N if args.n is None else args.n
    if not n > 1.0:
        raise ValueError(f"figure data needs n > 1 (normalized curves), got {n!r}")

    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ValueError(f"cannot create output directory {out_dir}: {exc}") from exc

    resolved = {"which": args.which, "n": n, "precision": p}
    lines = _header("figure", resolved, args.stamp) + _figure_rows(args.which, n, p)
    target = out_dir / FIGURE_FILES[args.which]
    try:
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot write {target}: {exc}") from exc
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--precision", type=int,
                    help=f"significant digits for values (default {DEFAULT_PRECISION})")
    sp.add_argument("--config",
                    help=f"key = value config file (default: ${CONFIG_ENV_VAR})")
    sp.add_argument("--stamp", action="store_true",
                    help="add a timestamp comment to the header")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unruh-probe",
        description=(
            "Distinguishability of inertial vs uniformly accelerated motion "
            "for a two-level probe; deterministic CSV output, times in "
            "units of 1/gamma0."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="convert between a, T and n; print rates")
    sp.add_argument("--a", type=float, help="proper acceleration")
    sp.add_argument("--T", type=float, help="bath temperature")
    sp.add_argument("--n", type=float, help="thermal parameter n = 1 + 2 N_U")
    sp.add_argument("--omega0", type=float, help="level spacing (default 1)")
    sp.add_argument("--gamma0", type=float, help="inertial emission rate (default 1)")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_params)

    sp = sub.add_parser("evolve", help="Bloch-vector trajectory of the probe")
    sp.add_argument("--theta", type=float, help="initial-state angle in [0, pi]")
    sp.add_argument("--n", type=float, help="thermal parameter")
    sp.add_argument("--gamma0", type=float, help="inertial emission rate (default 1)")
    sp.add_argument("--tau-max", type=float, help="end of the gamma0*tau grid")
    sp.add_argument("--points", type=int, help="number of grid rows")
    sp.add_argument("--oracle", type=int, metavar="STEPS",
                    help="append max |analytic - RK4| per row, using STEPS steps")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_evolve)

    sp = sub.add_parser("distance", help="distance curve vs interaction time")
    sp.add_argument("--mode", choices=("single", "bipartite"))
    sp.add_argument("--theta", type=float, help="single mode: initial-state angle")
    sp.add_argument("--werner", type=float, metavar="C",
                    help="bipartite mode: Werner parameter")
    sp.add_argument("--c1", type=float, help="bipartite mode: X-state coefficient")
    sp.add_argument("--c2", type=float, help="bipartite mode: X-state coefficient")
    sp.add_argument("--c3", type=float, help="bipartite mode: X-state coefficient")
    sp.add_argument("--n", type=float, help="thermal parameter")
    sp.add_argument("--tau-max", type=float,
                    help=f"end of the gamma0*tau grid (default {DEFAULT_TAU_MAX})")
    sp.add_argument("--points", type=int,
                    help=f"number of grid rows (default {DEFAULT_POINTS})")
    sp.add_argument("--normalized", action="store_true",
                    help="require the normalized column (error when n = 1)")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_distance)

    sp = sub.add_parser("analyze", help="roots, kinks, maxima, advantage threshold")
    sp.add_argument("--what", choices=("zero", "kink", "max", "threshold"))
    sp.add_argument("--theta", type=float, help="zero: initial-state angle")
    sp.add_argument("--werner", type=float, metavar="C",
                    help="kink/max: Werner parameter")
    sp.add_argument("--c1", type=float, help="max: X-state coefficient")
    sp.add_argument("--c2", type=float, help="max: X-state coefficient")
    sp.add_argument("--c3", type=float, help="max: X-state coefficient")
    sp.add_argument("--n", type=float, help="thermal parameter")
    sp.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"),
                    help="gamma0*tau search bracket (default 1e-6 50)")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_analyze)

    sp = sub.add_parser("figure", help="write canned figure-data CSV files")
    sp.add_argument("--which", type=int, help="figure number: 1, 2 or 3")
    sp.add_argument("--n", type=float, help=f"thermal parameter (default {FIGURE_N})")
    sp.add_argument("--out", help="output directory (required)")
    sp.add_argument("--precision", type=int,
                    help=f"significant digits (default {DEFAULT_PRECISION})")
    sp.add_argument("--config",
                    help=f"key = value config file (default: ${CONFIG_ENV_VAR})")
    sp.add_argument("--stamp", action="store_true",
                    help="add a timestamp comment to the header")
    sp.set_defaults(handler=_cmd_figure)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
