"""Command-line front end: state reports, maximizations, sweeps, bound
verification, and shot-based tangle estimation, serialized as JSON/CSV."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .bell import SvetlichnySetting
from .entanglement import summary, three_tangle
from .maximize import (
    maximize_svetlichny,
    smax_gghz_analytic,
    smax_ms_analytic,
    verify_family_bounds,
)
from .shots import estimate_tau_gghz
from .states import Family, FamilyParams, PureState3, from_amplitudes, make_state

CSV_HEADER = "family,param,tau,s_analytic,s_numeric,gap,violation"


@dataclass(frozen=True)
class SweepRecord:
    """One row of a family sweep (s_analytic and gap are None for three-param)."""

    family: str
    param: float
    tau: float
    s_analytic: float | None
    s_numeric: float
    gap: float | None
    violation: bool


class CliError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _sig9(x: float) -> float:
    """Round to 9 significant digits for diff-friendly output."""
    return float(f"{x:.9g}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _sig9(float(obj))
    return obj


def _emit(obj) -> None:
    print(json.dumps(_jsonable(obj), indent=2))


def _fmt_csv(x: float | None) -> str:
    return "" if x is None else f"{x:.9g}"


def _setting_dict(setting: SvetlichnySetting) -> dict:
    return {
        name: {"theta": d.theta, "phi": d.phi}
        for name, d in (
            ("a", setting.a),
            ("a_prime", setting.a_prime),
            ("b", setting.b),
            ("b_prime", setting.b_prime),
            ("c", setting.c),
            ("c_prime", setting.c_prime),
        )
    }


def _parse_amps(text: str) -> PureState3:
    parts = text.split(",")
    if len(parts) != 8:
        raise CliError("--amps", f"expected 8 comma-separated amplitudes, got {len(parts)}")
    amps = []
    for part in parts:
        literal = part.strip().replace(" ", "").replace("i", "j")
        try:
            amps.append(complex(literal))
        except ValueError:
            raise CliError("--amps", f"cannot parse complex literal {part.strip()!r}") from None
    try:
        return from_amplitudes(amps)
    except ValueError as exc:
        raise CliError("--amps", str(exc)) from None


def _angle(args, name: str) -> float:
    value = getattr(args, name)
    return math.radians(value) if args.degrees else value


def _resolve_state(args) -> tuple[PureState3, FamilyParams | None]:
    """State plus its family parameters (None when built from raw amplitudes)."""
    if args.amps is not None and args.family is not None:
        raise CliError("--family", "give either --family or --amps, not both")
    if args.amps is not None:
        return _parse_amps(args.amps), None
    if args.family is None:
        raise CliError("--family", "one of --family or --amps is required")
    try:
        family = Family(args.family)
    except ValueError:
        raise CliError("--family", f"unknown family {args.family!r}") from None
    params = FamilyParams(
        family=family,
        theta1=_angle(args, "theta1"),
        theta2=_angle(args, "theta2"),
        theta3=_angle(args, "theta3"),
    )
    return make_state(params), params


def _analytic_value(params: FamilyParams | None) -> float | None:
    if params is None or params.family is Family.THREE_PARAM:
        return None
    if params.family is Family.GGHZ:
        return smax_gghz_analytic(math.sin(2.0 * params.theta1) ** 2)
    return smax_ms_analytic(math.sin(params.theta3) ** 2)


def cmd_state(args) -> int:
    state, _ = _resolve_state(args)
    ent = summary(state)
    _emit(
        {
            "amplitudes": [[z.real, z.imag] for z in state.amplitudes],
            "c12": ent.c12,
            "c13": ent.c13,
            "c23": ent.c23,
            "c1_23": ent.c1_23,
            "tau": ent.tau,
        }
    )
    return 0


def cmd_svetlichny(args) -> int:
    state, params = _resolve_state(args)
    result = maximize_svetlichny(state, budget=args.budget, seed=args.seed)
    analytic = _analytic_value(params)
    _emit(
        {
            "s_max": result.s_max,
            "setting": _setting_dict(result.setting),
            "restarts_used": result.restarts_used,
            "best_restart": result.best_restart,
            "converged": result.converged,
            "iterations": result.iterations,
            "violation": result.s_max > 4.0,
            "analytic_applies": analytic is not None,
            "s_analytic": analytic,
        }
    )
    return 0


def sweep_records(family: Family, points: int, budget: int, seed: int,
                  theta2: float = 0.0, theta3: float = 0.0) -> list[SweepRecord]:
    """Sweep rows over the family's natural grid.

    GGHZ sweeps theta1 over [0, pi/4], MS sweeps theta3 over [0, pi/2];
    the three-param family sweeps theta1 over [0, pi/4] at fixed
    (theta2, theta3).
    """
    if points < 2:
        raise CliError("--points", "need at least 2 grid points")
    if family is Family.MS:
        grid = np.linspace(0.0, math.pi / 2.0, points)
    else:
        grid = np.linspace(0.0, math.pi / 4.0, points)
    records = []
    for i, angle in enumerate(grid):
        if family is Family.GGHZ:
            params = FamilyParams(family, theta1=float(angle))
        elif family is Family.MS:
            params = FamilyParams(family, theta3=float(angle))
        else:
            params = FamilyParams(family, theta1=float(angle), theta2=theta2, theta3=theta3)
        state = make_state(params)
        tau = three_tangle(state)
        s_numeric = maximize_svetlichny(state, budget=budget, seed=[seed, i]).s_max
        s_analytic = _analytic_value(params)
        records.append(
            SweepRecord(
                family=family.value,
                param=float(angle),
                tau=tau,
                s_analytic=s_analytic,
                s_numeric=s_numeric,
                gap=None if s_analytic is None else s_numeric - s_analytic,
                violation=s_numeric > 4.0,
            )
        )
    return records


def _write_sweep_csv(records: list[SweepRecord], out_path: str | None) -> None:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    r.family,
                    _fmt_csv(r.param),
                    _fmt_csv(r.tau),
                    _fmt_csv(r.s_analytic),
                    _fmt_csv(r.s_numeric),
                    _fmt_csv(r.gap),
                    "true" if r.violation else "false",
                ]
            )
        )
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError("--out", f"cannot write {out_path}: {exc}") from None


_GNUPLOT_TEMPLATE = """\
set datafile separator ','
set xlabel 'tau'
set ylabel 'S_max'
set key left top
plot '{csv}' using 3:5 with points pt 7 title 'numeric', \\
     '{csv}' using 3:4 with lines title 'analytic', \\
     4 with lines dt 2 title 'hybrid realism bound'
"""


def cmd_sweep(args) -> int:
    if args.amps is not None:
        raise CliError("--amps", "sweep works on families, not raw amplitudes")
    try:
        family = Family(args.family) if args.family is not None else Family.GGHZ
    except ValueError:
        raise CliError("--family", f"unknown family {args.family!r}") from None
    records = sweep_records(
        family,
        points=args.points,
        budget=args.budget,
        seed=args.seed,
        theta2=_angle(args, "theta2"),
        theta3=_angle(args, "theta3"),
    )
    _write_sweep_csv(records, args.out)
    if args.gnuplot:
        if args.out is None:
            raise CliError("--gnuplot", "needs --out to know the CSV path")
        script_path = args.out + ".gp"
        try:
            with open(script_path, "w") as fh:
                fh.write(_GNUPLOT_TEMPLATE.format(csv=args.out))
        except OSError as exc:
            raise CliError("--gnuplot", f"cannot write {script_path}: {exc}") from None
    return 0


def cmd_verify_bounds(args) -> int:
    if args.samples < 1:
        raise CliError("--samples", "need at least 1 sample")
    rng = np.random.default_rng(args.seed)
    angles = rng.uniform(0.0, math.pi / 2.0, size=(args.samples, 3))
    lower_failures = 0
    upper_failures = 0
    worst_lower = math.inf
    worst_upper = math.inf
    for i, (t1, t2, t3) in enumerate(angles):
        report = verify_family_bounds(t1, t2, t3, budget=args.budget, seed=[args.seed, i])
        lower_failures += not report.lower_ok
        upper_failures += not report.upper_ok
        worst_lower = min(worst_lower, report.lower_slack)
        worst_upper = min(worst_upper, report.upper_slack)
    _emit(
        {
            "samples": args.samples,
            "budget": args.budget,
            "seed": args.seed,
            "failures": lower_failures + upper_failures,
            "lower_failures": lower_failures,
            "upper_failures": upper_failures,
            "worst_lower_slack": worst_lower,
            "worst_upper_slack": worst_upper,
        }
    )
    return 0


def cmd_estimate(args) -> int:
    if args.shots < 1:
        raise CliError("--shots", "need at least 1 shot per setting")
    state, params = _resolve_state(args)
    est = estimate_tau_gghz(state, shots_per_setting=args.shots, seed=args.seed)
    _emit(
        {
            "s_estimate": est.s_estimate,
            "tau_hat": est.tau_hat,
            "shots_per_setting": est.shots_per_setting,
            "seed": est.seed,
            "tau_true": None if params is None else three_tangle(state),
        }
    )
    return 0


def _add_state_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=[f.value for f in Family], help="state family")
    parser.add_argument("--theta1", type=float, default=0.0, help="family angle theta1 (radians)")
    parser.add_argument("--theta2", type=float, default=0.0, help="family angle theta2 (radians)")
    parser.add_argument("--theta3", type=float, default=0.0, help="family angle theta3 (radians)")
    parser.add_argument("--amps", help="8 comma-separated complex amplitudes re[+im i]")
    parser.add_argument("--degrees", action="store_true", help="interpret angles as degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svetlichny",
        description="3-tangle and Svetlichny-inequality analysis for 3-qubit pure states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="construct a state and report its entanglement")
    _add_state_args(p_state)
    p_state.set_defaults(func=cmd_state)

    p_svet = sub.add_parser("svetlichny", help="maximize |<S>| over measurement angles")
    _add_state_args(p_svet)
    p_svet.add_argument("--budget", type=int, default=64, help="optimizer restarts")
    p_svet.add_argument("--seed", type=int, default=42, help="RNG seed")
    p_svet.set_defaults(func=cmd_svetlichny)

    p_sweep = sub.add_parser("sweep", help="sweep a family and tabulate tau vs S_max")
    _add_state_args(p_sweep)
    p_sweep.add_argument("--points", type=int, default=41, help="grid points")
    p_sweep.add_argument("--budget", type=int, default=64, help="optimizer restarts per point")
    p_sweep.add_argument("--seed", type=int, default=42, help="RNG seed")
    p_sweep.add_argument("--out", help="CSV output path (default: stdout)")
    p_sweep.add_argument("--gnuplot", action="store_true", help="also write <out>.gp plot script")
    p_sweep.set_defaults(func=cmd_sweep)

    p_bounds = sub.add_parser("verify-bounds", help="check |S^2/16-1| <= tau <= S^2/32 on random states")
    p_bounds.add_argument("--samples", type=int, default=100, help="number of random (t1,t2,t3) triples")
    p_bounds.add_argument("--budget", type=int, default=64, help="optimizer restarts per sample")
    p_bounds.add_argument("--seed", type=int, default=42, help="RNG seed")
    p_bounds.set_defaults(func=cmd_verify_bounds)

    p_est = sub.add_parser("estimate", help="estimate the tangle from finite-shot correlators")
    _add_state_args(p_est)
    p_est.add_argument("--shots", type=int, default=100000, help="shots per measurement setting")
    p_est.add_argument("--seed", type=int, default=42, help="RNG seed")
    p_est.set_defaults(func=cmd_estimate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
