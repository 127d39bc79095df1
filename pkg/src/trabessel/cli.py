"""Command-line front end.

Subcommands: classify, solve, eval, verify, spectrum, oracle, version.
Parameters come from flags or a flat `key = value` config file (flags win).
Outputs are deterministic CSV or JSON with 17-significant-digit floats;
exit codes: 0 success, 2 validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, jsonio
from .errors import (BoundaryError, ConstraintViolation, ConvergenceFailure,
                     DefinitenessError, DomainError, QuadratureFailure,
                     RealityViolation, SeriesOverflow, TraError, UnsupportedRow)
from .ode import OdeParams
from .quantum import confining_well, fd_oracle, oscillator_potential, \
    spectrum_eq64, well_potential
from .solver import (ClassId, build_series, classify, default_truncation,
                     evaluate_series, resolve_class)
from .verify import GridSpec, default_grid, residual, tridiagonality_check

_VALIDATION_ERRORS = (ConstraintViolation, DomainError, RealityViolation,
                      UnsupportedRow, ValueError, KeyError)
_NUMERICAL_ERRORS = (QuadratureFailure, ConvergenceFailure, DefinitenessError,
                     BoundaryError, SeriesOverflow, ZeroDivisionError)

_F = jsonio.format_float


def _read_config(path):
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.rstrip()}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def _apply_config(args, parser_defaults):
    if not getattr(args, "config", None):
        return args
    file_values = _read_config(args.config)
    for key, raw in file_values.items():
        if not hasattr(args, key):
            raise ValueError(f"unknown config key {key!r}")
        # flags win: only fill values still at their parser default
        if getattr(args, key) == parser_defaults.get(key):
            default = parser_defaults.get(key)
            if isinstance(default, bool):
                setattr(args, key, raw.lower() in ("1", "true", "yes"))
            elif isinstance(default, int) and not isinstance(default, bool):
                setattr(args, key, int(raw))
            elif isinstance(default, float):
                setattr(args, key, float(raw))
            else:
                setattr(args, key, _coerce(raw))
    return args


def _coerce(raw: str):
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw


def _ode_from_args(args) -> OdeParams:
    missing = [k for k in ("a", "b", "Ap", "Am", "A1", "A0")
               if getattr(args, k) is None]
    if missing:
        raise ValueError(f"missing ODE parameters: {', '.join(missing)}")
    return OdeParams(a=args.a, b=args.b, A_plus=args.Ap, A_minus=args.Am,
                     A_one=args.A1, A_zero=args.A0)


def _config_echo(args, keys):
    echo = {}
    for key in keys:
        val = getattr(args, key, None)
        if val is not None:
            echo[key] = val
    return echo


def _write(path, text):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _free_params(args):
    free = {}
    for key in ("mu", "alpha", "tau", "beta_free"):
        val = getattr(args, key, None)
        if val is not None:
            free["beta" if key == "beta_free" else key] = val
    return free


def _grid_from_args(args) -> GridSpec:
    if args.x_min is None:
        return default_grid()
    return GridSpec(args.x_min, args.x_max, args.x_count, args.x_spacing)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_classify(args):
    params = _ode_from_args(args)
    reports = classify(params, tol=args.tol)
    rows = []
    for rep in reports:
        rows.append({"class": rep.class_id.value,
                     "redirect": rep.class_id.is_redirect,
                     "residuals": dict(rep.residuals),
                     "reason": rep.reason})
        line = f"{rep.class_id.value}: admissible"
        if rep.reason:
            line += f" ({rep.reason})"
        print(line)
        for name, val in rep.residuals.items():
            print(f"    {name} = {_F(float(val))}")
    if args.format == "json":
        doc = {"config_echo": _config_echo(args, ("a", "b", "Ap", "Am", "A1", "A0", "tol")),
               "classes": rows}
        _write(args.out, jsonio.dumps(doc))
    return 0


def _resolved_solution(args):
    params = _ode_from_args(args)
    class_id = ClassId(args.klass)
    return resolve_class(params, class_id, free=_free_params(args), tol=args.tol)


def _cmd_solve(args):
    sol = _resolved_solution(args)
    n_trunc = args.N if args.N is not None else default_truncation(sol)
    series = build_series(sol, n_trunc)
    echo = _config_echo(args, ("klass", "a", "b", "Ap", "Am", "A1", "A0",
                               "mu", "alpha", "tau", "N", "tol"))
    if args.format == "csv":
        lines = ["n,f_n"]
        lines += [f"{n},{_F(float(c))}" for n, c in enumerate(series.coeffs)]
        _write(args.out, "\n".join(lines) + "\n")
    else:
        doc = {"config_echo": echo,
               "class": sol.class_id.value,
               "basis": {"kind": sol.basis.kind, "beta": sol.basis.beta,
                         "alpha": sol.basis.alpha, "mu": sol.basis.mu,
                         "exponent": sol.basis.exponent, "nu": sol.basis.nu},
               "binding": {"family": type(sol.binding.family).__name__,
                           "argument": sol.binding.argument},
               "omega": sol.omega_description(),
               "notes": list(sol.notes),
               "coefficients": [float(c) for c in series.coeffs]}
        _write(args.out, jsonio.dumps(doc))
    return 0


def _cmd_eval(args):
    sol = _resolved_solution(args)
    n_trunc = args.N if args.N is not None else default_truncation(sol)
    series = build_series(sol, n_trunc)
    grid = _grid_from_args(args)
    xs = grid.points()
    ys = evaluate_series(series, xs)
    if args.format == "csv":
        lines = ["x,y"]
        lines += [f"{_F(float(x))},{_F(float(y))}" for x, y in zip(xs, ys)]
        _write(args.out, "\n".join(lines) + "\n")
    else:
        doc = {"config_echo": _config_echo(args, ("klass", "a", "b", "Ap", "Am",
                                                  "A1", "A0", "mu", "alpha",
                                                  "tau", "N", "x_min", "x_max",
                                                  "x_count", "x_spacing")),
               "x": [float(v) for v in xs],
               "y": [float(v) for v in ys]}
        _write(args.out, jsonio.dumps(doc))
    return 0


def _cmd_verify(args):
    sol = _resolved_solution(args)
    grid = _grid_from_args(args)
    degrees = list(range(args.n_min, args.n + 1))
    workers = max(1, int(os.environ.get("TRA_NUM_THREADS", "1")))
    if workers > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(
                lambda n: tridiagonality_check(sol, n, grid, args.check_tol), degrees))
    else:
        reports = [tridiagonality_check(sol, n, grid, args.check_tol)
                   for n in degrees]
    worst = max(reports, key=lambda r: r.max_rel_deviation)
    per_n = {str(n): rep.max_rel_deviation for n, rep in zip(degrees, reports)}
    doc = {"config_echo": _config_echo(args, ("klass", "a", "b", "Ap", "Am", "A1",
                                              "A0", "mu", "alpha", "tau", "n",
                                              "check_tol")),
           "max_rel_deviation": worst.max_rel_deviation,
           "max_abs_deviation": worst.max_abs_deviation,
           "argmax_x": worst.argmax_x,
           "per_n": per_n,
           "pass": all(r.passed for r in reports),
           "notes": list(worst.notes)}
    _write(args.out, jsonio.dumps(doc))
    # residual report for the assembled series, when requested
    if args.with_residual:
        n_trunc = args.N if args.N is not None else default_truncation(sol)
        series = build_series(sol, n_trunc)
        rep = residual(series, grid)
        sys.stdout.write(f"residual(N={n_trunc}): {_F(rep.max_rel_deviation)}\n")
    return 0 if all(r.passed for r in reports) else 3


def _cmd_spectrum(args):
    if args.system == "well":
        if args.Am is None or args.Ap is None:
            raise ValueError("well spectrum needs --Am and --Ap")
        _, result = confining_well(args.Am, args.Ap, args.lam, N=args.N,
                                   n_levels=args.levels)
        method, energies, metadata = result.method, result.energies, result.metadata
        echo_keys = ("system", "Am", "Ap", "lam", "N", "levels")
    elif args.system == "oscillator":
        if args.A1 is None:
            raise ValueError("oscillator spectrum needs --A1")
        energies = np.array([spectrum_eq64(k, args.lam, args.A1, args.Lambda, args.ell)
                             for k in range(args.levels)])
        method = "closed_form_eq64"
        metadata = {"Lambda": args.Lambda, "ell": args.ell}
        echo_keys = ("system", "A1", "Lambda", "ell", "lam", "levels")
    else:
        raise ValueError(f"unknown system {args.system!r}")
    if args.format == "csv":
        lines = ["k,E_k,method"]
        lines += [f"{k},{_F(float(e))},{method}" for k, e in enumerate(energies)]
        _write(args.out, "\n".join(lines) + "\n")
    else:
        doc = {"config_echo": _config_echo(args, echo_keys),
               "method": method,
               "energies": [float(e) for e in energies],
               "metadata": metadata}
        _write(args.out, jsonio.dumps(doc))
    return 0


def _cmd_oracle(args):
    if args.system == "well":
        if args.Am is None or args.Ap is None:
            raise ValueError("well oracle needs --Am and --Ap")
        potential = well_potential(args.Am, args.Ap, args.lam)
        ell = 0
        include_centrifugal = False
    elif args.system == "oscillator":
        if args.A1 is None:
            raise ValueError("oscillator oracle needs --A1")
        # the effective oscillator potential already carries the ell term
        potential = oscillator_potential(args.A1, args.Lambda, args.ell, args.lam)
        ell = args.ell
        include_centrifugal = False
    else:
        raise ValueError(f"unknown system {args.system!r}")
    result = fd_oracle(potential, (args.r_min, args.r_max), args.grid_size,
                       ell=ell, n_levels=args.levels,
                       include_centrifugal=include_centrifugal)
    if args.format == "csv":
        lines = ["k,E_k,method"]
        lines += [f"{k},{_F(float(e))},{result.method}"
                  for k, e in enumerate(result.energies)]
        _write(args.out, "\n".join(lines) + "\n")
    else:
        doc = {"config_echo": _config_echo(args, ("system", "Am", "Ap", "A1",
                                                  "Lambda", "ell", "lam", "r_min",
                                                  "r_max", "grid_size", "levels")),
               "method": result.method,
               "energies": [float(e) for e in result.energies],
               "metadata": result.metadata}
        _write(args.out, jsonio.dumps(doc))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_ode_flags(p):
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--Ap", type=float, default=None, help="A+ coefficient")
    p.add_argument("--Am", type=float, default=None, help="A- coefficient")
    p.add_argument("--A1", type=float, default=None)
    p.add_argument("--A0", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--config", default=None, help="key = value file; flags win")


def _add_free_flags(p):
    p.add_argument("--class", dest="klass", required=True,
                   choices=[c.value for c in ClassId if not c.is_redirect])
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--beta-free", dest="beta_free", type=float, default=None,
                   help="alternative to --tau for L39C")


def _add_out_flags(p):
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None, help="output path (stdout when absent)")


def _add_grid_flags(p):
    p.add_argument("--x-min", dest="x_min", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=20.0)
    p.add_argument("--x-count", dest="x_count", type=int, default=64)
    p.add_argument("--x-spacing", dest="x_spacing",
                   choices=("linear", "logarithmic"), default="logarithmic")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trabessel",
        description="Series solutions of the six-parameter Bessel-type ODE "
                    "by tridiagonal representation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="admissible solution classes")
    _add_ode_flags(p)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="expansion coefficients f_n")
    _add_ode_flags(p)
    _add_free_flags(p)
    p.add_argument("--N", type=int, default=None)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("eval", help="evaluate the truncated series on a grid")
    _add_ode_flags(p)
    _add_free_flags(p)
    p.add_argument("--N", type=int, default=None)
    _add_grid_flags(p)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", help="operator-action tridiagonality check")
    _add_ode_flags(p)
    _add_free_flags(p)
    p.add_argument("--n", type=int, default=3, help="highest degree checked")
    p.add_argument("--n-min", dest="n_min", type=int, default=0)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--check-tol", dest="check_tol", type=float, default=1e-8)
    p.add_argument("--with-residual", dest="with_residual", action="store_true")
    _add_grid_flags(p)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("spectrum", help="bound-state energies")
    p.add_argument("--system", choices=("well", "oscillator"), required=True)
    p.add_argument("--Am", type=float, default=None)
    p.add_argument("--Ap", type=float, default=None)
    p.add_argument("--A1", type=float, default=None)
    p.add_argument("--Lambda", type=float, default=0.0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--config", default=None)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("oracle", help="finite-difference Schrodinger oracle")
    p.add_argument("--system", choices=("well", "oscillator"), required=True)
    p.add_argument("--Am", type=float, default=None)
    p.add_argument("--Ap", type=float, default=None)
    p.add_argument("--A1", type=float, default=None)
    p.add_argument("--Lambda", type=float, default=0.0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--r-min", dest="r_min", type=float, required=True)
    p.add_argument("--r-max", dest="r_max", type=float, required=True)
    p.add_argument("--grid-size", dest="grid_size", type=int, default=4000)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--config", default=None)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("version", help="print the package version")
    p.set_defaults(func=lambda args: (print(__version__), 0)[1])

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    defaults = {a.dest: a.default for sp in parser._subparsers._group_actions
                for a in sp.choices[args.command]._actions}
    try:
        if getattr(args, "config", None):
            args = _apply_config(args, defaults)
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except TraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
