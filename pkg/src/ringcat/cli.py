"""Command-line front end: run each experiment, emit deterministic tables.

Every run is fully determined by its flags; there is no randomness and no
hidden state, so repeated runs produce byte-identical files.  Angles are
given in units of pi (``--theta-pi 2/3`` means 2*pi/3) and rational strings
are accepted so configs stay exact.  CSV floats carry 17 significant
digits; JSON mirrors the same fields.

Exit codes: 0 success, 2 invalid configuration, 3 physics precondition
violated (for example a particle number that is not a multiple of three
where the protocol requires one).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .basis import enumerate_basis
from .evolution import evolve_interaction_phase
from .interferometer import fringe_scan
from .modes import extremal_mode_probabilities, momentum_distribution
from .protocol import (
    BracketError,
    calibrate_u,
    cattiness,
    run_protocol,
    sweep_protocol_probabilities,
    timing_tolerance,
)
from .state import site_number_distribution, superfluid_ground_state

__all__ = ["main"]

SUM_TOL = 1e-10


class PhysicsError(ValueError):
    """A physically required precondition does not hold for this config."""


def _parse_pi(text: str) -> float:
    """Angle in units of pi, as a float or an exact rational like '2/3'."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        value = float(int(num)) / float(int(den))
    else:
        value = float(text)
    return value * math.pi


def _parse_n_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _check_unit_sum(values, label: str, tol: float = SUM_TOL) -> None:
    total = float(np.sum(values))
    if abs(total - 1.0) > tol:
        raise ValueError(f"{label} sums to {total!r}, expected 1 within {tol}")


def _emit(args, columns, rows, summary=None) -> None:
    rows = [[(int(v) if isinstance(v, (int, np.integer)) else float(v)) for v in row] for row in rows]
    if args.format == "json":
        payload = {
            "command": args.command,
            "columns": list(columns),
            "rows": rows,
        }
        if summary:
            payload["summary"] = {k: (float(v) if isinstance(v, (float, np.floating)) else v) for k, v in summary.items()}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        if summary:
            lines += [f"# {key} = {_fmt(value)}" for key, value in summary.items()]
        text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as handle:
            handle.write(text)
        print(f"wrote {args.out} ({len(rows)} rows)")


def cmd_ground(args) -> None:
    if args.n < 0:
        raise ValueError(f"--n must be >= 0, got {args.n}")
    dist = site_number_distribution(superfluid_ground_state(args.n))
    _check_unit_sum(list(dist.values()), "site distribution")
    rows = [[a, b, p] for (a, b), p in dist.items()]
    _emit(args, ("n_a", "n_b", "p"), rows)


def cmd_cat(args) -> None:
    if args.n < 1:
        raise ValueError(f"--n must be >= 1, got {args.n}")
    theta = args.theta * (1.0 + args.delta)
    final = evolve_interaction_phase(superfluid_ground_state(args.n), theta)
    dist = momentum_distribution(final)
    _check_unit_sum(dist, "momentum distribution")
    pa, pb, pg = extremal_mode_probabilities(final)
    occ = enumerate_basis(args.n)
    rows = [[int(m[0]), int(m[1]), float(p)] for m, p in zip(occ, dist)]
    summary = {
        "n": args.n,
        "theta": theta,
        "p_alpha": pa,
        "p_beta": pb,
        "p_gamma": pg,
        "cattiness": cattiness(pa, pb, pg),
    }
    _emit(args, ("n_alpha", "n_beta", "p"), rows, summary)


def cmd_cattiness_sweep(args) -> None:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise ValueError(f"need 1 <= n-min <= n-max, got {args.n_min}..{args.n_max}")
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        r = run_protocol(n, args.theta)
        rows.append([n, r.p_alpha, r.p_beta, r.p_gamma, r.cattiness])
    _emit(args, ("n", "p_alpha", "p_beta", "p_gamma", "cattiness"), rows)


def cmd_timing(args) -> None:
    ns = _parse_n_list(args.n)
    if not ns:
        raise ValueError("--n list is empty")
    bad = [n for n in ns if n < 3 or n % 3 != 0]
    if bad:
        raise PhysicsError(f"timing tolerance needs positive multiples of 3, got {bad}")
    rows = []
    for n in ns:
        d0 = timing_tolerance(n, args.c_target)
        rows.append([n, d0, 1.0 / d0, n * d0])
    ns_arr = np.array([row[0] for row in rows], dtype=np.float64)
    inv = np.array([row[2] for row in rows])
    slope = float(np.sum(ns_arr * inv) / np.sum(ns_arr * ns_arr))
    summary = {
        "c_target": args.c_target,
        "fit_slope_inv_delta0_vs_n": slope,
        "fit_prefactor": 1.0 / slope,
    }
    _emit(args, ("n", "delta0", "inv_delta0", "n_delta0"), rows, summary)


def cmd_calibrate_u(args) -> None:
    if args.n < 3 or args.n % 3 != 0:
        raise PhysicsError(f"calibration needs a positive multiple of 3, got {args.n}")
    if args.grid < 3:
        raise ValueError(f"--grid must be >= 3, got {args.grid}")
    if not args.theta_min < args.theta_max:
        raise ValueError("--theta-min-pi must be below --theta-max-pi")
    thetas = np.linspace(args.theta_min, args.theta_max, args.grid)

    def c_at(grid):
        return 3.0 * np.cbrt(np.prod(sweep_protocol_probabilities(args.n, grid), axis=1))

    try:
        star = calibrate_u(args.n, thetas)
    except BracketError as exc:
        raise PhysicsError(str(exc)) from exc
    rows = [[float(t), float(c)] for t, c in zip(thetas, c_at(thetas))]
    summary = {
        "n": args.n,
        "theta_star": star,
        "theta_star_pi": star / math.pi,
        "c_star": float(c_at(np.array([star]))[0]),
    }
    _emit(args, ("theta", "cattiness"), rows, summary)


def cmd_fringes(args) -> None:
    if args.n < 3 or args.n % 3 != 0:
        raise PhysicsError(f"fringes need a positive multiple of 3, got {args.n}")
    if args.grid < 2 or args.xi <= 0 or args.dt <= 0:
        raise ValueError("need --grid >= 2, --xi > 0 and --dt > 0")
    xi_values = np.linspace(0.0, args.xi, args.grid)
    scan = fringe_scan(args.n, args.j, xi_values, args.dt)
    for i in range(xi_values.size):
        _check_unit_sum(scan.probs_sim[i], f"fringe probabilities at row {i}")
    rows = [
        [
            float(xi_values[i]),
            float(scan.xi_dt[i]),
            *map(float, scan.probs_sim[i]),
            *map(float, scan.probs_closed[i]),
            float(scan.period_xi_dt),
        ]
        for i in range(xi_values.size)
    ]
    columns = (
        "xi",
        "xi_dt",
        "p_alpha",
        "p_beta",
        "p_gamma",
        "p_alpha_closed",
        "p_beta_closed",
        "p_gamma_closed",
        "period_xi_dt",
    )
    _emit(args, columns, rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringcat",
        description="Exact simulator of flow-state cats on a three-site ring lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-", help="output path, or - for stdout")

    p = sub.add_parser("ground", help="site number distribution of the even condensate")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("cat", help="momentum distribution and summary after one protocol run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta-pi", dest="theta", type=_parse_pi, default=2.0 * math.pi / 3.0,
                   help="hold phase in units of pi (default 2/3)")
    p.add_argument("--delta", type=float, default=0.0,
                   help="fractional timing error; hold phase becomes (1+delta)*theta")
    common(p)
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("cattiness-sweep", help="cattiness at fixed hold phase over a range of n")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--theta-pi", dest="theta", type=_parse_pi, default=2.0 * math.pi / 3.0)
    common(p)
    p.set_defaults(func=cmd_cattiness_sweep)

    p = sub.add_parser("timing", help="timing tolerance delta0 for each n and the scaling fit")
    p.add_argument("--n", required=True, help="comma-separated multiples of 3, e.g. 3,6,9")
    p.add_argument("--c-target", type=float, default=0.9)
    common(p)
    p.set_defaults(func=cmd_timing)

    p = sub.add_parser("calibrate-u", help="locate the cat resonance over a hold-phase bracket")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta-min-pi", dest="theta_min", type=_parse_pi, default=0.5 * math.pi)
    p.add_argument("--theta-max-pi", dest="theta_max", type=_parse_pi, default=5.0 * math.pi / 6.0)
    p.add_argument("--grid", type=int, default=121)
    common(p)
    p.set_defaults(func=cmd_calibrate_u)

    p = sub.add_parser("fringes", help="interferometer fringes over a rotation-coupling grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=float, default=0.0, help="hopping energy during the sensing hold")
    p.add_argument("--xi", type=float, default=2.0 * math.pi, help="largest rotation coupling")
    p.add_argument("--dt", type=float, default=1.0, help="sensing hold duration")
    p.add_argument("--grid", type=int, default=256)
    common(p)
    p.set_defaults(func=cmd_fringes)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except PhysicsError as exc:
        print(f"ringcat: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"ringcat: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
