"""Command-line driver.

Exit codes: 0 success, 2 invalid arguments, 3 every requested route failed at
one or more points.
"""

from __future__ import annotations

import argparse
import json
import sys

from .entropy import ROUTES
from .errors import InvalidParams, InvalidSpec
from .params import SystemParams
from . import sweep

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3


def _routes(text: str) -> tuple[str, ...]:
    routes = tuple(r.strip() for r in text.split(",") if r.strip())
    try:
        return sweep.check_routes(routes)
    except InvalidParams as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("system parameters (natural units)")
    g.add_argument("--m", type=float, default=1.0, help="light mass (default 1)")
    g.add_argument("--M", type=float, default=1.0, help="heavy mass (default 1)")
    g.add_argument("--omega", type=float, default=1.0, help="trap frequency (default 1)")
    g.add_argument("--Omega", type=float, default=1.0, help="heavy-particle frequency (default 1)")
    g.add_argument("--kappa", type=float, default=1.0, help="coupling stiffness (default 1)")
    g.add_argument("--beta", type=float, default=None, help="inverse temperature (default 50/min(z-, Omega_eff, 1))")


def _add_output(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osc-entropy",
        description="Linear entropy of two coupled harmonic oscillators: closed forms vs exact ground state.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate one parameter point", allow_abbrev=False)
    _add_params(point)
    point.add_argument("--routes", type=_routes, default=ROUTES, help="comma list (default: all)")
    _add_output(point, "csv")

    sw = sub.add_parser("sweep", help="sweep one parameter", allow_abbrev=False)
    _add_params(sw)
    sw.add_argument("--sweep", required=True, choices=sweep.SWEEPABLE)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--count", type=int, default=50)
    sw.add_argument("--scale", choices=("lin", "log"), default="lin")
    sw.add_argument(
        "--routes", type=_routes, default=sweep.DEFAULT_SWEEP_ROUTES,
        help="comma list (default: oracle,paper_algebraic)",
    )
    _add_output(sw, "csv")

    claims = sub.add_parser("claims", help="verdict for every checkable claim", allow_abbrev=False)
    _add_params(claims)
    _add_output(claims, "json")
    return parser


def _params(args, **override) -> SystemParams:
    values = dict(m=args.m, M=args.M, omega=args.omega, Omega=args.Omega, kappa=args.kappa, beta=args.beta)
    values.update(override)
    return SystemParams(**values)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "point":
            params = _params(args)
            report = sweep.run_point(params, args.routes)
            text = sweep.point_to_json(params, args.routes, report) if args.format == "json" else sweep.point_to_csv(report)
            _emit(text, args.output)
            return EXIT_NUMERICAL if all(report.failed(r) for r in args.routes) else EXIT_OK

        if args.command == "sweep":
            # the swept value is overwritten per row; start keeps validation meaningful
            params = _params(args, **{args.sweep: args.start})
            spec = sweep.SweepSpec(
                swept=args.sweep, start=args.start, stop=args.stop, count=args.count,
                fixed=params, scale=args.scale, routes=args.routes,
            )
            result = sweep.run_sweep(spec)
            _emit(sweep.sweep_to_json(result) if args.format == "json" else sweep.sweep_to_csv(result), args.output)
            return EXIT_NUMERICAL if result.any_total_failure() else EXIT_OK

        doc = sweep.claims_report(_params(args))
        _emit(json.dumps(doc, indent=2) + "\n" if args.format == "json" else sweep.claims_to_csv(doc), args.output)
        return EXIT_OK
    except (InvalidParams, InvalidSpec) as exc:
        print(f"osc-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
