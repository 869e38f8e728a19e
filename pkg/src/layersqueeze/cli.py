"""Command-line front end: datasets for matrices, sweeps, curves and regions.

Exit codes: 0 success, 2 usage or domain error, 3 unsupported region,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import resonance
from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    PoleError,
    RegionError,
)
from .regions import FIRST_TYPE, Region, base_of, classify_region
from .scattering import (
    DoubleLayerPotential,
    double_layer_closed_form,
    double_layer_product,
    ode_matrix,
    transmission,
)
from .seba import TwoDeltaModel, transition_classify, two_delta_matrix
from .squeeze import SqueezeSpec, epsilon_sweep, limit_interaction

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REGION = 3
EXIT_NUMERICAL = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    return v


class Table:
    """Column-ordered dataset with optional trailing metadata lines."""

    def __init__(self, columns):
        self.columns = list(columns)
        self.rows = []
        self.meta = {}

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError("row width does not match the header")
        self.rows.append(values)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            data = {
                name: [_json_value(row[i]) for row in self.rows]
                for i, name in enumerate(self.columns)
            }
            meta = {k: _json_value(v) for k, v in self.meta.items()}
            return json.dumps({"columns": data, "meta": meta}, indent=1) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows([_cell(v) for v in row] for row in self.rows)
        for k, v in self.meta.items():
            buf.write(f"# {k}={_cell(v)}\n")
        return buf.getvalue()


def _emit(table: Table, args) -> None:
    text = table.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _decades(spec: str, per_decade: int = 1) -> list:
    """'2:6' -> [1e-2, 1e-3, ..., 1e-6]; an optional third field sets points per decade."""
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"decade range must look like LO:HI[:PER], got {spec!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
        if len(parts) == 3:
            per_decade = int(parts[2])
    except ValueError:
        raise UsageError(f"decade range must hold integers, got {spec!r}") from None
    if not (0 <= lo < hi) or per_decade < 1:
        raise UsageError(f"need 0 <= LO < HI and PER >= 1, got {spec!r}")
    n = (hi - lo) * per_decade
    return [10.0 ** -(lo + k / per_decade) for k in range(n + 1)]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_matrix(args) -> int:
    pot = DoubleLayerPotential(args.h1, args.l1, args.r, args.h2, args.l2)
    E = args.energy
    widths = [pot.l1, pot.l2] + ([pot.r] if pot.r > 0 else [])
    step = args.step if args.step is not None else min(1e-4, min(widths) / 10.0)
    ref = double_layer_closed_form(pot, E)
    paths = (
        ("closed_form", ref),
        ("product", double_layer_product(pot, E)),
        ("ode", ode_matrix(pot, E, step)),
    )
    t = Table(["path", "lam11", "lam12", "lam21", "lam22", "det", "T", "R", "delta_vs_closed_form"])
    for name, m in paths:
        T = R = math.nan
        if E > 0:
            sc = transmission(m, E, pot.length)
            T, R = sc.T, sc.R
        t.add(name, m.lam11, m.lam12, m.lam21, m.lam22, m.det(), T, R, m.rel_diff(ref))
    t.meta["ode_step"] = step
    _emit(t, args)
    return EXIT_OK


def _spec_from(args) -> SqueezeSpec:
    return SqueezeSpec(
        mu=args.mu, nu=args.nu, tau=args.tau, eta=args.eta,
        a1=args.a1, a2=args.a2, c=args.c, c0=args.c0,
    )


def cmd_sweep(args) -> int:
    spec = _spec_from(args)
    eps = _decades(args.eps_decades)
    rep = epsilon_sweep(spec, args.energy, eps, tol=args.tol)
    region = "DeltaRegime" if rep.region is None else str(rep.region)
    t = Table(["eps", "lam11", "lam12", "lam21", "lam22", "err", "region", "limit_kind"])
    for e, m, err in zip(rep.eps_values, rep.matrices, rep.errors_per_eps):
        t.add(e, m.lam11, m.lam12, m.lam21, m.lam22, err, region, rep.target.label)
    if rep.overflow_eps:
        t.meta["overflow_eps"] = " ".join(_cell(e) for e in rep.overflow_eps)
    if rep.target.is_dirichlet:
        t.meta["diverged"] = rep.diverged
    t.meta["fitted_order"] = rep.fitted_order
    _emit(t, args)
    return EXIT_OK


def _trace_rows(t: Table, region: Region, branch: int, args) -> int:
    curve = resonance.trace_curve(
        region, branch, args.eta, args.c, (args.a1_min, args.a1_max), args.npts, tol=args.tol
    )
    name = str(region)
    for (a1, a2), res in zip(curve.points, curve.residuals):
        t.add(name, branch, args.c, args.eta, a1, a2, res, "")
    for ann in curve.annotations:
        G, scale = resonance.cleared_residual(region, ann.a1, ann.a2, args.eta, args.c)
        note = f"characteristic {ann.label} verified={'true' if ann.verified else 'false'}"
        t.add(name, branch, args.c, args.eta, ann.a1, ann.a2, G / max(1.0, scale), note)
    return len(curve.points)


def cmd_trace(args) -> int:
    region = Region.parse(args.region)
    if region not in resonance.BASE_SETS:
        raise DomainError(f"--region must be one of omega, b0, b1, b2; got {args.region}")
    if args.branch is not None:
        branches = [args.branch]
    elif region is Region.OMEGA:
        branches = [0, 1] if args.c > 0 else [0]
    else:
        branches = [0]
    t = Table(["region", "branch", "c", "eta", "a1", "a2", "residual", "note"])
    count = sum(_trace_rows(t, region, n, args) for n in branches)
    if region is Region.OMEGA and args.c > 0 and count:
        nan = math.nan
        t.add("Omega", -1, args.c, args.eta, -1.0 / args.c, nan, nan, "asymptote a1=-1/c")
        t.add("Omega", -1, args.c, args.eta, nan, -1.0 / (args.eta * args.c), nan,
              "asymptote a2=-1/(eta c)")
    if count == 0:
        print(f"warning: no resonance points of {region} on branches {branches} "
              f"for a1 in [{args.a1_min}, {args.a1_max}]", file=sys.stderr)
    _emit(t, args)
    return EXIT_OK


def cmd_classify(args) -> int:
    region = classify_region(args.mu, args.nu, args.tau)
    t = Table(["mu", "nu", "tau", "region", "limit_kind", "theta", "alpha", "residual"])
    if args.a1 is None or args.a2 is None:
        if (args.a1 is None) != (args.a2 is None):
            raise UsageError("--a1 and --a2 must be given together")
        t.add(args.mu, args.nu, args.tau, str(region), "", math.nan, math.nan, math.nan)
        _emit(t, args)
        return EXIT_OK
    spec = _spec_from(args)
    lim = limit_interaction(spec, tol=args.tol)
    base = base_of(region)
    c = args.c if region in FIRST_TYPE else 0.0
    try:
        res = resonance.residual(base, args.a1, args.a2, args.eta, c)
    except PoleError:
        res = math.nan
    t.add(args.mu, args.nu, args.tau, str(region), lim.label, lim.theta, lim.alpha, res)
    _emit(t, args)
    return EXIT_OK


def cmd_seba(args) -> int:
    kind = transition_classify(args.vartheta)
    t = Table(["r", "lam11", "lam12", "lam21", "lam22", "det"])
    for r in _decades(args.r_decades):
        m = two_delta_matrix(TwoDeltaModel(args.a1, args.a2, args.c, args.vartheta, r))
        t.add(r, m.lam11, m.lam12, m.lam21, m.lam22, m.det())
    t.meta["transition"] = str(kind)
    _emit(t, args)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _common(p) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--tol", type=float, default=resonance.RESIDUAL_TOL,
                   help="residual gate for resonance decisions")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="layersqueeze", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("matrix", help="transfer matrix of a double layer by three methods")
    for name in ("--h1", "--l1", "--r", "--h2", "--l2", "--energy"):
        p.add_argument(name, type=float, required=True)
    p.add_argument("--step", type=float, default=None, help="RK4 step (default min(1e-4, width/10))")
    _common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("sweep", help="eps sweep of a squeezed double layer")
    for name in ("--mu", "--nu", "--tau"):
        p.add_argument(name, type=float, required=True)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--a2", type=float, required=True)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--c0", type=float, default=0.0)
    p.add_argument("--energy", type=float, default=1.0)
    p.add_argument("--eps-decades", default="2:6", help="LO:HI[:PER] -> eps = 10^-LO .. 10^-HI")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("trace", help="resonance curve samples in the (a1, a2) plane")
    p.add_argument("--region", required=True, choices=("omega", "b0", "b1", "b2"))
    p.add_argument("--branch", type=int, default=None)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--a1-min", type=float, required=True)
    p.add_argument("--a1-max", type=float, required=True)
    p.add_argument("--npts", type=int, default=201)
    _common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("classify", help="region of (mu, nu, tau) and its limit interaction")
    for name in ("--mu", "--nu", "--tau"):
        p.add_argument(name, type=float, required=True)
    p.add_argument("--a1", type=float, default=None)
    p.add_argument("--a2", type=float, default=None)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--c0", type=float, default=0.0)
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("seba", help="two-delta comb matrix against r")
    for name in ("--a1", "--a2", "--c", "--vartheta"):
        p.add_argument(name, type=float, required=True)
    p.add_argument("--r-decades", default="2:10", help="LO:HI[:PER] -> r = 10^-LO .. 10^-HI")
    _common(p)
    p.set_defaults(func=cmd_seba)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegionError as exc:
        print(f"region error: {exc}", file=sys.stderr)
        return EXIT_REGION
    except (PoleError, BracketError, ConvergenceError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DomainError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
