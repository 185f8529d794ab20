"""Command-line front end.

Subcommands::

    fracwave differint --fn const --alpha 0.5 --x1 1 --out s.csv
    fracwave figures --id 4 --out-dir figs
    fracwave verify [--tol-scale 0.01] [--list]
    fracwave spectrum --fn square --N 16 --beta 0.5
    fracwave ftcheck --alpha 0.5
"""

import argparse
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import acceptance, differint, fields, ftmult, spectral, wave_uv, wave_xt
from .core import SingularityError
from .fields import Axis

EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_SINGULAR = 3

# figure id -> (solver, alpha, beta)
FIGURES = {
    1: ("uv", 0.0, 0.0),
    2: ("uv", 0.5, 0.5),
    3: ("uv", 0.75, 0.75),
    4: ("uv", 1.0, 1.0),
    5: ("xt", 0.5, 1.0),
    6: ("xt", 1.5, 1.0),
    7: ("xt", 1.0, 1.0),
}


class ConfigError(ValueError):
    pass


def _builtin(name, x0, x1):
    if name == "const":
        return lambda x: np.ones_like(x)
    if name == "sin":
        return np.sin
    if name == "exp":
        return np.exp
    if name == "bump":
        return lambda x: ftmult.bump(x, 0.5 * (x0 + x1), 0.25 * (x1 - x0))
    if name == "square":
        return lambda x: np.where(np.mod(x, 2 * math.pi) < math.pi, 1.0, -1.0)
    raise ConfigError(f"unknown function {name!r}")


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _check_writable(out):
    if out in (None, "-"):
        return
    parent = Path(out).parent
    if not parent.is_dir():
        raise ConfigError(f"output directory {parent} does not exist")


def cmd_differint(args):
    if not args.step > 0:
        raise ConfigError("--step must be positive")
    if not args.x1 > args.x0:
        raise ConfigError("--x1 must exceed --x0")
    if not -differint.MAX_DERIVATIVE_ORDER <= args.alpha <= differint.MAX_INTEGRAL_ORDER:
        raise ConfigError("--alpha must lie in [-2, 4]")
    _check_writable(args.out)
    with np.errstate(over="ignore"):
        x = args.x0 + args.step * np.arange(int(round((args.x1 - args.x0) / args.step)) + 1)
        samples = _builtin(args.fn, args.x0, args.x1)(x)
    if not np.all(np.isfinite(samples)):
        raise SingularityError(f"{args.fn} overflows on [{args.x0}, {args.x1}]")
    f = differint.GridFunction(args.x0, args.step, samples)
    result = differint.differintegrate(f, args.alpha)
    if not np.all(np.isfinite(result.values)):
        raise SingularityError("non-finite values in the result")
    _emit(differint.write_csv(result), args.out)
    a = abs(args.alpha)
    if a > 0:
        half = differint.frac_integral(differint.frac_integral(f, a / 2), a / 2)
        whole = differint.frac_integral(f, a)
        err = float(np.abs(half.values - whole.values).max())
        print(
            f"index law: sup|S^{a / 2:g} S^{a / 2:g} f - S^{a:g} f| = {err:.3e}",
            file=sys.stderr,
        )
    return 0


def _figure_axes(args):
    if args.nx < 2 or args.nt < 2:
        raise ConfigError("--nx and --nt must be at least 2")
    if not (args.x1 > args.x0 and args.t1 > args.t0):
        raise ConfigError("axis ranges must be non-degenerate")
    return Axis.span(args.x0, args.x1, args.nx), Axis.span(args.t0, args.t1, args.nt)


def figure_field(fig_id, x_axis, t_axis):
    solver, alpha, beta = FIGURES[fig_id]
    if solver == "xt":
        return wave_xt.sin_field(alpha, beta, x_axis, t_axis)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", wave_uv.UniquenessWarning)
        return wave_uv.sincos_field(alpha, beta, x_axis, t_axis)


def cmd_figures(args):
    if args.id not in FIGURES:
        raise ConfigError(f"figure id must be one of {sorted(FIGURES)}")
    x_axis, t_axis = _figure_axes(args)
    out_dir = Path(args.out_dir)
    field = figure_field(args.id, x_axis, t_axis)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / f"fig{args.id}"
    solver, alpha, beta = FIGURES[args.id]
    if args.format in ("csv", "both"):
        fields.write_csv(field, f"{stem}.csv")
    if args.format in ("svg", "both"):
        fields.write_svg(field, f"{stem}.svg", title=f"figure {args.id}: alpha={alpha:g}, beta={beta:g}")
    if not args.quiet:
        print(
            f"figure {args.id} ({solver}, alpha={alpha:g}, beta={beta:g}): "
            f"{int(field.mask.sum())} of {field.mask.size} cells masked -> {stem}.*"
        )
    return 0


def cmd_verify(args):
    if args.list:
        for cid, name, _ in acceptance.CRITERIA:
            print(f"{cid} {name}")
        return 0
    if not args.tol_scale > 0:
        raise ConfigError("--tol-scale must be positive")
    outcomes = acceptance.run(args.tol_scale, ids=set(args.only) if args.only else None)
    for o in outcomes:
        print(o.line())
    failed = sum(not o.passed for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} criteria passed")
    return EXIT_FAIL if failed else 0


def cmd_spectrum(args):
    if args.samples < 2 * args.N + 1:
        raise ConfigError("--samples must be at least 2N+1")
    _check_writable(args.out)
    f = spectral.periodic_grid(_builtin(args.fn, 0.0, 2 * math.pi), args.samples)
    spec = spectral.analyze(f, args.N)
    if args.beta != 0:
        if args.beta < 0:
            spec = spectral.FourierSpectrum(np.where(spec.n == 0, 0.0, spec.coeffs))
        spec = spectral.frac_coeffs(spec, args.beta)
    _emit(spectral.write_csv(spec), args.out)
    return 0


def cmd_ftcheck(args):
    if not 0 <= args.alpha <= 1:
        raise ConfigError("--alpha must lie in [0, 1]")
    if args.count < 1 or not args.omega_max >= args.omega_min:
        raise ConfigError("bad frequency range")
    _check_writable(args.out)
    f = differint.GridFunction.from_function(ftmult.bump, 0.0, args.length, args.step)
    omegas = np.linspace(args.omega_min, args.omega_max, args.count)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", differint.SupportWarning)
        rows = ftmult.multiplier_check(f, args.alpha, omegas)
    _emit(ftmult.write_report(rows), args.out)
    print(f"max relative error {max(r.relerr for r in rows):.3e}", file=sys.stderr)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="fracwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("differint", help="differintegrate a built-in function")
    p.add_argument("--fn", choices=["const", "sin", "bump", "exp"], default="const")
    p.add_argument("--alpha", type=float, required=True, help="order; > 0 integrates, < 0 differentiates")
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--x1", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out", default="-", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_differint)

    p = sub.add_parser("figures", help="field data and heatmap for figures 1-7")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--format", choices=["csv", "svg", "both"], default="both")
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--x1", type=float, default=4 * math.pi)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=4 * math.pi)
    p.add_argument("--nx", type=int, default=201)
    p.add_argument("--nt", type=int, default=201)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--tol-scale", type=float, default=1.0)
    p.add_argument("--list", action="store_true", help="list criterion ids and exit")
    p.add_argument("--only", type=int, nargs="+", help="criterion ids to run")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="Fourier coefficients of a built-in periodic function")
    p.add_argument("--fn", choices=["sin", "square", "const", "exp"], default="sin")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ftcheck", help="Fourier multiplier report for a smooth bump")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--omega-min", type=float, default=1.0)
    p.add_argument("--omega-max", type=float, default=4.0)
    p.add_argument("--count", type=int, default=13)
    p.add_argument("--length", type=float, default=20.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_ftcheck)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"fracwave: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularityError as exc:
        print(f"fracwave: numerical singularity: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
