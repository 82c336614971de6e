"""Command-line laboratory.

Exit codes: 0 success, 1 data or solver error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis, ensembles, infogeo, laws
from .errors import SpacingLabError
from .io import (block_report_csv_text, fmt, levels_to_spacings, parse_levels,
                 parse_tabulated_cdf, read_spacing_csv, spacing_csv_text)
from .samples import SpacingSample

MOMENT_LAWS = ("exponential", "wigner", "goe-lower", "goe-upper", "goe-caer", "gue-caer", "gse-caer")


class UsageError(Exception):
    pass


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _parse_grid(spec):
    try:
        a, b, step = (float(t) for t in spec.split(":"))
    except ValueError:
        raise UsageError(f"grid must look like a:b:step, got {spec!r}") from None
    if not (step > 0 and b >= a):
        raise UsageError("grid needs step > 0 and b >= a")
    count = int(round((b - a) / step)) + 1
    return np.round(a + step * np.arange(count), 12)


def _law_arg(name, params):
    if name.startswith("table:"):
        return parse_tabulated_cdf(name[len("table:"):])
    return laws.law_from_name(name, params or ())


def cmd_law_eval(args):
    law = _law_arg(args.law, args.params)
    grid = _parse_grid(args.grid)
    pdf = np.atleast_1d(law.pdf(grid))
    cdf = np.atleast_1d(law.cdf(grid))
    lines = [f"# law={law.label()}", "s,pdf,cdf"]
    lines += [f"{fmt(s)},{fmt(p)},{fmt(c)}" for s, p, c in zip(grid, pdf, cdf)]
    _emit("\n".join(lines) + "\n", args.out)


def cmd_law_moments(args):
    names = args.law or list(MOMENT_LAWS)
    lines = ["law,mean,variance,cv,unit_mean_kappa"]
    for name in names:
        law = _law_arg(name, args.params if args.law and len(args.law) == 1 else None)
        m = laws.law_moments(law, 2)
        lines.append(",".join([law.label(), fmt(m.mean), fmt(m.variance), fmt(m.cv),
                               fmt(m.unit_mean_kappa)]))
    _emit("\n".join(lines) + "\n", args.out)


def cmd_sample(args):
    if args.law:
        if args.count is None:
            raise UsageError("--law needs --count")
        sample = laws.law_sample(_law_arg(args.law, args.params), args.count, args.seed)
    else:
        if args.ensemble is None or args.n is None or args.trials is None:
            raise UsageError("sample needs --ensemble, --n and --trials (or --law and --count)")
        spec = ensembles.EnsembleSpec(laws.EnsembleClass.parse(args.ensemble), args.n)
        sample = ensembles.monte_carlo_spacings(spec, args.trials, args.mode, args.seed, args.solver)
    _emit(spacing_csv_text(sample), args.out)


def _load_spacings(path) -> SpacingSample:
    return read_spacing_csv(path)


def cmd_fit(args):
    sample = _load_spacings(args.input)
    if args.method == "gengamma":
        if args.beta is None:
            raise UsageError("--method gengamma needs --beta")
        omega, ks = analysis.fit_gen_gamma_omega(sample, args.beta)
        text = f"method,beta,omega,ks\ngengamma,{fmt(args.beta)},{fmt(omega)},{fmt(ks)}\n"
    else:
        fitter = {
            "moments": analysis.fit_gamma_moments,
            "mle": analysis.fit_gamma_mle,
            "unitvar": analysis.fit_unit_mean_gamma_variance,
        }[args.method]
        fit = fitter(sample)
        text = f"method,nu,kappa,ks\n{fit.method.value},{fmt(fit.nu)},{fmt(fit.kappa)},{fmt(fit.goodness)}\n"
    _emit(text, args.out)


def cmd_blocks(args):
    levels = parse_levels(args.input)
    gaps = np.diff(levels.values)
    report = analysis.block_analysis(gaps, args.scheme, args.block_size, args.num)
    provenance = f"levels={Path(args.input).name} count={levels.values.size}"
    _emit(block_report_csv_text(report, provenance), args.out)


def cmd_diag(args):
    sample = _load_spacings(args.input)
    res = analysis.hwang_hu_diagnostic(sample, args.block_size, args.num, args.permutations, args.seed)
    _emit(f"correlation,p_value,blocks,permutations\n{fmt(res.correlation)},{fmt(res.p_value)},"
          f"{res.num_blocks},{res.permutations}\n", args.out)


def cmd_geo(args):
    if args.immersion:
        p = infogeo.immerse(infogeo.GammaPoint(*args.immersion))
        text = f"{fmt(p.x)},{fmt(p.y)},{fmt(p.z)}\n"
    elif args.arclength:
        text = fmt(infogeo.kappa_arclength(*args.arclength)) + "\n"
    else:
        text = fmt(infogeo.distance_from_randomness(args.from_randomness)) + "\n"
    _emit(text, args.out)


def _cdf_source(spec):
    """A law (name, name:params or table:path) or a spacing CSV path."""
    if not spec.startswith("table:") and Path(spec).is_file():
        return read_spacing_csv(spec)
    return _law_arg(spec, None)


def cmd_compare(args):
    a, b = _cdf_source(args.a), _cdf_source(args.b)
    a_emp, b_emp = isinstance(a, SpacingSample), isinstance(b, SpacingSample)
    if a_emp and b_emp:
        from scipy.stats import ks_2samp

        kind, stat = "two-sample", float(ks_2samp(a.spacings, b.spacings).statistic)
    elif a_emp or b_emp:
        sample, law = (a, b) if a_emp else (b, a)
        kind, stat = "one-sample", laws.empirical_ks(sample, law)
    else:
        grid = _parse_grid(args.grid) if args.grid else None
        kind, stat = "analytic", laws.ks_distance(a, b, grid)
    _emit(f"kind,ks\n{kind},{fmt(stat)}\n", args.out)


def build_parser():
    p = argparse.ArgumentParser(prog="spacinglab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    law = sub.add_parser("law", help="evaluate closed-form spacing laws")
    law_sub = law.add_subparsers(dest="law_command", required=True)
    ev = law_sub.add_parser("eval", help="pdf and cdf on a grid")
    ev.add_argument("--law", required=True)
    ev.add_argument("--params", nargs="*", type=float)
    ev.add_argument("--grid", default="0:5:0.01")
    ev.add_argument("--out")
    ev.set_defaults(func=cmd_law_eval)
    mo = law_sub.add_parser("moments", help="mean/variance table by quadrature")
    mo.add_argument("--law", action="append")
    mo.add_argument("--params", nargs="*", type=float)
    mo.add_argument("--out")
    mo.set_defaults(func=cmd_law_moments)

    sa = sub.add_parser("sample", help="Monte Carlo spacings of an ensemble, or draws from a law")
    sa.add_argument("--ensemble", choices=["goe", "gue", "gse", "poisson"])
    sa.add_argument("--n", type=int)
    sa.add_argument("--trials", type=int)
    sa.add_argument("--mode", choices=["central", "unfolded", "all"], default="central")
    sa.add_argument("--solver", choices=["lapack", "jacobi"], default="lapack")
    sa.add_argument("--law")
    sa.add_argument("--params", nargs="*", type=float)
    sa.add_argument("--count", type=int)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--out")
    sa.set_defaults(func=cmd_sample)

    fi = sub.add_parser("fit", help="gamma or generalized-gamma fit of a spacing CSV")
    fi.add_argument("--method", choices=["moments", "mle", "unitvar", "gengamma"], required=True)
    fi.add_argument("--beta", type=float)
    fi.add_argument("--in", dest="input", required=True)
    fi.add_argument("--out")
    fi.set_defaults(func=cmd_fit)

    bl = sub.add_parser("blocks", help="block statistics of a level list")
    bl.add_argument("--in", dest="input", required=True)
    bl.add_argument("--scheme", choices=["consecutive", "cumulative"], default="consecutive")
    bl.add_argument("--block-size", type=int, default=200_000)
    bl.add_argument("--num", type=int, default=10)
    bl.add_argument("--out")
    bl.set_defaults(func=cmd_blocks)

    di = sub.add_parser("diag", help="diagnostics")
    di_sub = di.add_subparsers(dest="diag_command", required=True)
    cv = di_sub.add_parser("cv-independence", help="permutation test of block mean vs block CV")
    cv.add_argument("--in", dest="input", required=True)
    cv.add_argument("--block-size", type=int, required=True)
    cv.add_argument("--num", type=int)
    cv.add_argument("--permutations", type=int, default=10_000)
    cv.add_argument("--seed", type=int, default=0)
    cv.add_argument("--out")
    cv.set_defaults(func=cmd_diag)

    ge = sub.add_parser("geo", help="gamma-manifold geometry")
    g = ge.add_mutually_exclusive_group(required=True)
    g.add_argument("--immersion", nargs=2, type=float, metavar=("NU", "KAPPA"))
    g.add_argument("--arclength", nargs=2, type=float, metavar=("A", "B"))
    g.add_argument("--from-randomness", type=float, metavar="KAPPA")
    ge.add_argument("--out")
    ge.set_defaults(func=cmd_geo)

    co = sub.add_parser("compare", help="KS distance between laws and/or spacing CSVs")
    co.add_argument("--a", required=True)
    co.add_argument("--b", required=True)
    co.add_argument("--grid")
    co.add_argument("--out")
    co.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spacinglab: error: {exc}", file=sys.stderr)
        return 2
    except (SpacingLabError, OSError, ValueError) as exc:
        print(f"spacinglab: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
