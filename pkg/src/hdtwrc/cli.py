"""Command-line front end.

Exit codes: 0 ok, 2 usage or input error, 3 infeasible model, 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import __version__
from .allocator import Objective, allocate_min_cost, allocate_rate_objective
from .core import ALL_PHASES, RatePair, rates_feasible, validate_allocation
from .errors import HdtwrcError, SchemeViolation
from .gaussian import (
    ChannelGains,
    CoherenceParams,
    PlaneNetwork,
    PowerConstraints,
    channel_gain,
    df_phase_mi,
    ub_phase_mi,
)
from .region import inner_region_df, outer_region, restrict_region, twc_region
from .sweep import SweepConfig, load_config, run_sweep, write_grid
from .wireline import builtin_schemes, evaluate_scheme, load_scheme

EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _add_channel_args(p):
    bound = p.add_mutually_exclusive_group(required=True)
    bound.add_argument("--df", dest="bound", action="store_const", const="df", help="decode-and-forward inner region")
    bound.add_argument("--ub", dest="bound", action="store_const", const="ub", help="cut-set outer region")
    bound.add_argument("--twc", dest="bound", action="store_const", const="twc", help="two-way channel without relay")
    geo = p.add_argument_group("geometry (positions or raw gains)")
    geo.add_argument("--relay", nargs=2, type=float, metavar=("X", "Y"), help="relay position")
    geo.add_argument("--d13", type=float, default=1.0, help="distance between nodes 1 and 3 (default 1)")
    geo.add_argument("--alpha", type=float, default=3.0, help="path-loss exponent (default 3)")
    geo.add_argument("--gains", nargs=3, type=float, metavar=("H12", "H13", "H23"),
                     help="reciprocal amplitude gains instead of positions")
    pw = p.add_mutually_exclusive_group()
    pw.add_argument("--power", type=float, help="same power at all nodes")
    pw.add_argument("--powers", nargs=3, type=float, metavar=("P1", "P2", "P3"))
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _gains(args) -> ChannelGains:
    if args.gains is not None:
        if args.relay is not None:
            raise UsageError("give either --relay or --gains, not both")
        return ChannelGains.reciprocal(*args.gains)
    if args.relay is None:
        if args.bound != "twc":
            raise UsageError("--relay or --gains is required for --df and --ub")
        # relay absent: only the direct link matters
        return ChannelGains.reciprocal(0.0, channel_gain(args.d13, args.alpha), 0.0)
    net = PlaneNetwork(tuple(args.relay), alpha=args.alpha, p1=(0.0, 0.0), p3=(args.d13, 0.0))
    return net.gains()


def _powers(args) -> PowerConstraints:
    if args.powers is not None:
        return PowerConstraints(*args.powers)
    return PowerConstraints.uniform(10.0 if args.power is None else args.power)


def _region(args):
    g = _gains(args)
    p = _powers(args)
    c = CoherenceParams(args.beta, args.gamma)
    if args.bound == "ub":
        return outer_region(ub_phase_mi(g, p, c))
    mi = df_phase_mi(g, p, c)
    return inner_region_df(mi) if args.bound == "df" else twc_region(mi)


def cmd_wireline(args) -> int:
    if (args.builtin is None) == (args.file is None):
        raise UsageError("give exactly one of --builtin or --file")
    if args.builtin is not None:
        schemes = builtin_schemes()
        if args.builtin not in schemes:
            raise UsageError(f"unknown scheme {args.builtin!r}; choose from {', '.join(schemes)}")
        scheme = schemes[args.builtin]
    else:
        try:
            scheme = load_scheme(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read scheme file: {exc}") from None
    m = evaluate_scheme(scheme)
    bps, lpb, npb = m.as_floats()
    if args.json:
        print(json.dumps({"scheme": scheme.name, "bps": bps, "lpb": lpb, "npb": npb,
                          "steps": m.steps, "delivered": m.delivered}))
    else:
        print(f"{bps:.4f} {lpb:.4f} {npb:.4f}")
    return 0


def cmd_allocate(args) -> int:
    obj = args.objective
    if args.lam is not None and obj != "wsrmax":
        raise UsageError("--lambda is only valid with --objective wsrmax")
    if obj == "wsrmax" and args.lam is None:
        raise UsageError("--objective wsrmax requires --lambda")
    if obj != "tcmin" and (args.target is not None or args.costs is not None):
        raise UsageError("--target and --costs are only valid with --objective tcmin")
    if obj == "tcmin" and args.target is None:
        raise UsageError("--objective tcmin requires --target R13 R31")
    region = _region(args)
    echo = dict(beta=args.beta, gamma=args.gamma)
    if obj == "tcmin":
        costs = args.costs if args.costs is not None else [1.0] * 6
        res = allocate_min_cost(region, RatePair(*args.target), costs, **echo)
    else:
        res = allocate_rate_objective(region, Objective(obj), args.lam, **echo)

    if args.json:
        out = res.as_dict()
        out.update(bound=args.bound, objective=obj)
        print(json.dumps(out))
    elif not res.feasible:
        print("infeasible")
    else:
        print("tau: " + " ".join(f"{t:.6f}" for t in res.tau.tau))
        print(f"R13: {res.rates.r13:.6f}")
        print(f"R31: {res.rates.r31:.6f}")
        print(f"value: {res.value:.6f}")
    if not res.feasible:
        if args.json:
            print("infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    return 0


def cmd_region(args) -> int:
    region = _region(args)
    if args.active is not None:
        region = restrict_region(region, args.active)
    rows = [{"kind": c.kind.value, "coeffs": list(c.coeffs)} for c in region]
    out = {"label": region.label.value, "constraints": rows}
    if args.tau is not None:
        tau = validate_allocation(args.tau)
        out["capacities"] = region.capacities(tau).tolist()
        if args.rates is not None:
            out["feasible"] = rates_feasible(region, tau, RatePair(*args.rates))
    elif args.rates is not None:
        raise UsageError("--rates needs --tau")
    if args.json:
        print(json.dumps(out))
        return 0
    print(region.label.value)
    for i, c in enumerate(region):
        terms = " + ".join(f"{v:.6f}*tau{l}" for l, v in enumerate(c.coeffs, start=1) if v)
        lhs = "R13+R31" if c.kind.value == "SUM" else c.kind.value
        line = f"{lhs} <= {terms or '0'}"
        if "capacities" in out:
            line += f"  = {out['capacities'][i]:.6f}"
        print(line)
    if "feasible" in out:
        print("feasible" if out["feasible"] else "infeasible")
    return 0


def _sweep_config(args) -> SweepConfig:
    cfg = load_config(args.config) if args.config else SweepConfig()
    over = {}
    if args.x_range:
        over.update(x_min=args.x_range[0], x_max=args.x_range[1])
    if args.y_range:
        over.update(y_min=args.y_range[0], y_max=args.y_range[1])
    for name in ("step", "bg_step", "alpha", "workers"):
        if getattr(args, name) is not None:
            over[name] = getattr(args, name)
    if args.power is not None:
        over.update(p1=args.power, p2=args.power, p3=args.power)
    if args.powers is not None:
        over.update(p1=args.powers[0], p2=args.powers[1], p3=args.powers[2])
    if args.objective is not None:
        over["objective"] = args.objective
        if args.objective != "wsrmax":
            over["lam"] = None
    if args.lam is not None:
        over["lam"] = args.lam
    return dataclasses.replace(cfg, **over)


def cmd_sweep(args) -> int:
    try:
        cfg = _sweep_config(args)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    grid = run_sweep(cfg)
    try:
        write_grid(grid, args.output)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    ratio = grid.max_df_over_twc()
    print(f"cells={len(grid)} errors={len(grid.errors())} max_df_over_twc={ratio:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdtwrc",
        description="Half-duplex two-way relay channel: bounds, time allocation and sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wireline", help="metrics of a bit-pipe scheme")
    w.add_argument("--builtin", metavar="NAME", help=f"one of {', '.join(builtin_schemes())}")
    w.add_argument("--file", metavar="PATH", help="scheme file, one step per line")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_wireline)

    a = sub.add_parser("allocate", help="optimal time allocation for one channel")
    _add_channel_args(a)
    a.add_argument("--objective", choices=["srmax", "wsrmax", "maxmin", "tcmin"], default="maxmin")
    a.add_argument("--lambda", dest="lam", type=float, help="weight on R13 for wsrmax")
    a.add_argument("--target", nargs=2, type=float, metavar=("R13", "R31"), help="rates for tcmin")
    a.add_argument("--costs", nargs=6, type=float, metavar="C", help="per-phase costs for tcmin (default 1)")
    a.set_defaults(func=cmd_allocate)

    r = sub.add_parser("region", help="print a rate region, optionally evaluated at tau")
    _add_channel_args(r)
    r.add_argument("--tau", nargs=6, type=float, metavar="T")
    r.add_argument("--rates", nargs=2, type=float, metavar=("R13", "R31"))
    r.add_argument("--active", nargs="*", type=int, choices=sorted(ALL_PHASES), metavar="L",
                   help="keep only these phases")
    r.set_defaults(func=cmd_region)

    s = sub.add_parser("sweep", help="relay-placement sweep written as CSV")
    s.add_argument("--config", metavar="PATH", help="key=value config file")
    s.add_argument("--output", "-o", required=True, metavar="PATH")
    s.add_argument("--x-range", nargs=2, type=float, metavar=("MIN", "MAX"))
    s.add_argument("--y-range", nargs=2, type=float, metavar=("MIN", "MAX"))
    s.add_argument("--step", type=float)
    s.add_argument("--bg-step", type=float, help="beta/gamma sampling step")
    s.add_argument("--alpha", type=float)
    pw = s.add_mutually_exclusive_group()
    pw.add_argument("--power", type=float)
    pw.add_argument("--powers", nargs=3, type=float, metavar=("P1", "P2", "P3"))
    s.add_argument("--objective", choices=[o.value for o in Objective])
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except SchemeViolation as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HdtwrcError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
