"""Command line front end: evaluate families and densities, run the suite.

Subcommands:

* ``eval SELECTOR``   tabulate one polynomial family, density, or moment on
                      an x grid (CSV or JSON rows).
* ``verify``          run the quadrature check suite; exit 0 only if every
                      check passes.
* ``expand TARGET``   compare a truncated kernel/moment expansion against
                      its closed form on an x grid.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error.  Floats are serialized with repr, so CSV and JSON runs of the same
command carry identical digits and identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .qcore import (
    DEFAULT_POLICY,
    DomainError,
    PoleError,
    TruncationError,
    TruncationPolicy,
)
from .polyfam import (
    asc_P,
    asc_Q,
    b_big,
    b_small,
    chebyshev_U,
    hermite_h,
    hermite_H,
)
from .awpoly import CondDensityParams, aw_A_sym, aw_D, map_params
from .densities import f_CN, f_N, phi_cond
from .moments import c_n_main, gamma_mk_partial, phi_expansion_partial
from .verify import DEFAULT_TOLERANCES, SuiteConfig, report_to_json, report_to_text, run_suite

__all__ = ["main", "entry"]

_EVAL_SELECTORS = ("h", "H", "Q", "P", "B", "b", "U", "D", "A", "f_N", "f_CN", "phi", "C")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qaw",
        description="Askey-Wilson polynomials with conjugate complex parameters: "
        "evaluation, densities, moments, and a verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a family, density, or moment on a grid")
    ev.add_argument("selector", choices=_EVAL_SELECTORS, metavar="SELECTOR",
                    help="one of " + ", ".join(_EVAL_SELECTORS))
    ev.add_argument("--n", type=int, default=0, help="degree / moment order")
    ev.add_argument("--q", type=float, required=True, help="base parameter in (-1, 1]")
    ev.add_argument("--rho1", type=float, default=0.0)
    ev.add_argument("--rho2", type=float, default=0.0)
    ev.add_argument("--y", type=float, default=0.0, help="first conditioning point")
    ev.add_argument("--z", type=float, default=0.0, help="second conditioning point")
    ev.add_argument("--x", type=float, default=None, help="single evaluation point")
    ev.add_argument("--grid", default=None, metavar="LO:HI:COUNT",
                    help="inclusive evaluation grid")
    ev.add_argument("--format", choices=("csv", "json"), default="csv")
    ev.add_argument("--tol", type=float, default=None,
                    help="relative truncation tolerance for density products")
    ev.add_argument("--max-terms", type=int, default=None,
                    help="truncation term cap for density products")

    vf = sub.add_parser("verify", help="run the verification suite")
    group = vf.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true", help="run every check")
    group.add_argument("--check", default=None, metavar="NAME", help="run one check")
    vf.add_argument("--q", type=float, default=None,
                    help="restrict the q grid to this single value")
    vf.add_argument("--nmax", type=int, default=None,
                    help="cap the polynomial orders used by the checks")
    vf.add_argument("--tol", type=float, default=None,
                    help="override the tolerance of the selected checks")
    vf.add_argument("--format", choices=("text", "json"), default="text")

    ex = sub.add_parser("expand", help="compare a partial expansion with its closed form")
    ex.add_argument("target", choices=("phi", "fcn"), metavar="TARGET",
                    help="phi: moment expansion of the two-sided density; "
                    "fcn: Poisson-Mehler kernel for the one-sided density")
    ex.add_argument("--n", type=int, default=40, help="number of series terms")
    ex.add_argument("--q", type=float, required=True)
    ex.add_argument("--rho1", type=float, default=0.0)
    ex.add_argument("--rho2", type=float, default=0.0)
    ex.add_argument("--y", type=float, default=0.0)
    ex.add_argument("--z", type=float, default=0.0)
    ex.add_argument("--x", type=float, default=None)
    ex.add_argument("--grid", default=None, metavar="LO:HI:COUNT")
    ex.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _parse_grid(spec):
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must be LO:HI:COUNT, got {spec!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError(f"grid must be LO:HI:COUNT with numeric fields, got {spec!r}")
    if count < 1:
        raise DomainError(f"grid count must be >= 1, got {count}")
    return [float(v) for v in np.linspace(lo, hi, count)]


def _points(args):
    if args.grid is not None and args.x is not None:
        raise DomainError("give either --x or --grid, not both")
    if args.grid is not None:
        return _parse_grid(args.grid)
    if args.x is not None:
        return [args.x]
    raise DomainError("an evaluation point is required: pass --x or --grid")


def _policy(args):
    rel_tol = DEFAULT_POLICY.rel_tol if args.tol is None else args.tol
    max_terms = DEFAULT_POLICY.max_terms if args.max_terms is None else args.max_terms
    return TruncationPolicy(rel_tol=rel_tol, max_terms=max_terms)


def _emit(rows, columns, fmt, out):
    if fmt == "json":
        out.write(json.dumps([{k: row[k] for k in columns} for row in rows]))
        out.write("\n")
        return
    text = io.StringIO()
    writer = csv.writer(text, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[k]) for k in columns])
    out.write(text.getvalue())


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return value


def _cmd_eval(args, out):
    sel = args.selector
    n, q = args.n, args.q
    if n < 0:
        raise DomainError(f"--n must be nonnegative, got {n}")

    if sel == "C":
        if args.x is not None or args.grid is not None:
            raise DomainError("selector C is a function of (y, z); it takes no x grid")
        p = CondDensityParams(args.y, args.rho1, args.z, args.rho2, q)
        value = float(c_n_main(n, p))
        rows = [{"n": n, "q": q, "y": p.y, "rho1": p.rho1, "z": p.z, "rho2": p.rho2,
                 "value": value}]
        _emit(rows, ["n", "q", "y", "rho1", "z", "rho2", "value"], args.format, out)
        return 0

    points = _points(args)
    policy = _policy(args)
    rows = []
    if sel in ("h", "H", "B", "b", "U"):
        fn = {"h": hermite_h, "H": hermite_H, "B": b_big, "b": b_small}.get(sel)
        columns = ["n", "q", "x", "value"]
        for x in points:
            value = chebyshev_U(n, x) if sel == "U" else fn(n, x, q)
            rows.append({"n": n, "q": q, "x": x, "value": float(value)})
    elif sel in ("Q", "P"):
        columns = ["n", "q", "y", "rho1", "x", "value"]
        if sel == "Q":
            params = map_params(CondDensityParams(args.y, args.rho1, 0.0, 0.0, q))
            for x in points:
                rows.append({"n": n, "q": q, "y": args.y, "rho1": args.rho1, "x": x,
                             "value": float(asc_Q(n, x, params.a, params.b, q))})
        else:
            for x in points:
                rows.append({"n": n, "q": q, "y": args.y, "rho1": args.rho1, "x": x,
                             "value": float(asc_P(n, x, args.y, args.rho1, q))})
    elif sel in ("D", "A"):
        p = CondDensityParams(args.y, args.rho1, args.z, args.rho2, q)
        columns = ["n", "q", "y", "rho1", "z", "rho2", "x", "value"]
        if sel == "D":
            params = map_params(p)
            for x in points:
                rows.append({"n": n, "q": q, "y": p.y, "rho1": p.rho1, "z": p.z,
                             "rho2": p.rho2, "x": x,
                             "value": float(aw_D(n, x, params, q))})
        else:
            for x in points:
                rows.append({"n": n, "q": q, "y": p.y, "rho1": p.rho1, "z": p.z,
                             "rho2": p.rho2, "x": x,
                             "value": float(aw_A_sym(n, x, p))})
    elif sel == "f_N":
        columns = ["q", "x", "value", "terms"]
        for x in points:
            ev = f_N(x, q, policy)
            rows.append({"q": q, "x": x, "value": ev.value, "terms": ev.terms})
    elif sel == "f_CN":
        columns = ["q", "y", "rho1", "x", "value", "terms"]
        for x in points:
            ev = f_CN(x, args.y, args.rho1, q, policy)
            rows.append({"q": q, "y": args.y, "rho1": args.rho1, "x": x,
                         "value": ev.value, "terms": ev.terms})
    else:  # phi
        p = CondDensityParams(args.y, args.rho1, args.z, args.rho2, q)
        columns = ["q", "y", "rho1", "z", "rho2", "x", "value", "terms"]
        for x in points:
            ev = phi_cond(x, p, policy)
            rows.append({"q": q, "y": p.y, "rho1": p.rho1, "z": p.z, "rho2": p.rho2,
                         "x": x, "value": ev.value, "terms": ev.terms})
    _emit(rows, columns, args.format, out)
    return 0


def _cmd_verify(args, out):
    config = SuiteConfig()
    if args.q is not None:
        config.q_grid = (args.q,)
    if args.nmax is not None:
        if args.nmax < 0:
            raise DomainError(f"--nmax must be nonnegative, got {args.nmax}")
        config.nmax_orthogonality = args.nmax
        config.nmax_moments = args.nmax
        config.nmax_aw = min(args.nmax, 6)
    if not args.all:
        config.checks = (args.check,)
    if args.tol is not None:
        for name in config.checks:
            if name in config.tolerances:
                config.tolerances[name] = args.tol
    reports = run_suite(config)
    if args.format == "json":
        out.write(report_to_json(reports))
        out.write("\n")
    else:
        out.write(report_to_text(reports))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_expand(args, out):
    points = _points(args)
    N = args.n
    if N < 1:
        raise DomainError(f"--n must be at least 1, got {N}")
    rows = []
    if args.target == "fcn":
        columns = ["q", "y", "rho1", "n_terms", "x", "closed_form", "partial_sum", "abs_error"]
        for x in points:
            closed = f_CN(x, args.y, args.rho1, args.q).value
            partial = f_N(x, args.q).value * gamma_mk_partial(
                0, 0, x, args.y, args.rho1, args.q, N
            )
            rows.append({"q": args.q, "y": args.y, "rho1": args.rho1, "n_terms": N,
                         "x": x, "closed_form": closed, "partial_sum": float(partial),
                         "abs_error": abs(closed - partial)})
    else:
        p = CondDensityParams(args.y, args.rho1, args.z, args.rho2, args.q)
        columns = ["q", "y", "rho1", "z", "rho2", "n_terms", "x", "closed_form",
                   "partial_sum", "abs_error"]
        for x in points:
            closed = phi_cond(x, p).value
            partial = float(phi_expansion_partial(x, p, N))
            rows.append({"q": args.q, "y": p.y, "rho1": p.rho1, "z": p.z, "rho2": p.rho2,
                         "n_terms": N, "x": x, "closed_form": closed, "partial_sum": partial,
                         "abs_error": abs(closed - partial)})
    _emit(rows, columns, args.format, out)
    return 0


def _glue_option_values(argv):
    """Join '--grid LO:HI:COUNT' into '--grid=...' so negative bounds parse.

    argparse treats '-2:2:5' as an unknown option; the '=' form binds the
    value unconditionally.
    """
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--grid" and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        merged.append(tok)
        i += 1
    return merged


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(_glue_option_values(argv))
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "eval":
            return _cmd_eval(args, out)
        if args.command == "verify":
            return _cmd_verify(args, out)
        return _cmd_expand(args, out)
    except (DomainError, PoleError, TruncationError, ValueError) as exc:
        print(f"qaw: error: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())
