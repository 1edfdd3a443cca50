"""Precision bounds for two squeezings separated by a phase scrambler.

Subcommands ``bounds``, ``scan``, ``validate`` and ``generaldyne``.  Angles
are radians and accept ``pi`` fractions such as ``pi/4`` or ``3*pi/8``.
``--config FILE`` reads ``key=value`` lines (long option names, ``-`` or
``_``); explicit flags win over the file.

Exit codes: 0 success, 1 tolerance breach or optimizer failure, 2 invalid
arguments, 3 Fock-oracle truncation failure.

CSV columns (``bounds``/``scan``)::

    lambda1 lambda2 alpha theta phi z        inputs (z empty without --z)
    q11 q12 q22 u12                          information matrix entries
    sloppiness incompatibility quantumness   1/det Q, 1/det U, sqrt(det U/det Q)
    t_identity                               sqrt(2 det U)/Tr Q
    cq bracket_t bracket_r                   Tr Q/det Q, cq(1+t_identity), cq(1+quantumness)
    cq_weighted                              Tr[W Q^-1] (W from --weight, default identity)
    c_sep_min_1 c_sep_min_2                  optimized stepwise bounds
    gamma_star_1 gamma_star_2                optimal first-step fractions
    c_g                                      Tr F^-1 for the general-dyne setting
    singular                                 true when Q is singular

Empty cells (``null`` in JSON) mark undefined values.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import bounds, generaldyne, report, validation
from .errors import ConvergenceError, OptimizationError, SingularMatrixError, TailError
from .params import ModelParams, NumericsConfig

_PI_RE = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<coef>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*\*?\s*pi"
    r"\s*(?:/\s*(?P<den>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?))?\s*$"
)


def parse_angle(text: str) -> float:
    """``"0.3"``, ``"pi/4"``, ``"-3*pi/8"``, ``"2pi"`` -> float radians."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
    value = math.pi * float(m["coef"] or 1.0)
    if m["den"]:
        den = float(m["den"])
        if den == 0:
            raise argparse.ArgumentTypeError(f"zero denominator in {text!r}")
        value /= den
    return -value if m["sign"] == "-" else value


def _finite(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def _positive(text):
    value = _finite(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return value


def _weight(text):
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}") from None
    if len(values) != 4:
        raise argparse.ArgumentTypeError("weight needs four entries a,b,c,d")
    w = np.array(values).reshape(2, 2)
    if not np.allclose(w, w.T) or np.any(np.linalg.eigvalsh(w) <= 0):
        raise argparse.ArgumentTypeError("weight must be symmetric positive definite")
    return w


def _add_point(parser, point_default=0.0):
    parser.add_argument("--lambda1", type=_finite, default=point_default)
    parser.add_argument("--lambda2", type=_finite, default=point_default)
    parser.add_argument("--alpha", type=_finite, default=point_default)
    parser.add_argument("--theta", type=parse_angle, default=point_default)
    parser.add_argument("--phi", type=parse_angle, default=point_default)


def _add_output(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--digits", type=int, default=None,
                        help="significant digits (default: shortest round-trip)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="key=value defaults for any long option")
    parser = argparse.ArgumentParser(
        prog="squeezebounds",
        description=__doc__.split("\n\n")[0],
        epilog="columns of bounds/scan output:" + __doc__.split("::")[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common],
                       help="all bounds at one parameter point",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog="columns:" + __doc__.split("::")[1])
    _add_point(p)
    p.add_argument("--z", type=_positive, default=None,
                   help="general-dyne setting; adds the c_g column")
    p.add_argument("--weight", type=_weight, default=None, metavar="a,b,c,d")
    p.add_argument("--sing-tol", type=_positive, default=1e-12)
    _add_output(p)

    p = sub.add_parser("scan", parents=[common],
                       help="bounds along one parameter axis",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog="columns:" + __doc__.split("::")[1])
    p.add_argument("--axis", choices=report.AXES, required=True)
    p.add_argument("--start", type=parse_angle, required=True)
    p.add_argument("--stop", type=parse_angle, required=True)
    p.add_argument("--count", type=int, required=True)
    _add_point(p)
    p.add_argument("--z", type=_positive, default=None)
    p.add_argument("--weight", type=_weight, default=None, metavar="a,b,c,d")
    p.add_argument("--sing-tol", type=_positive, default=1e-12)
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("validate", parents=[common],
                       help="check closed forms against the Fock oracle")
    p.add_argument("--dim", type=int, default=256, help="starting Fock truncation")
    p.add_argument("--max-dim", type=int, default=4096)
    p.add_argument("--no-adapt", action="store_true",
                   help="fixed truncation: no dimension doubling")
    p.add_argument("--tail-tol", type=_positive, default=1e-10)
    p.add_argument("--grid-points", type=int, default=None,
                   help="points per axis instead of the standard grid")
    p.add_argument("--no-moments", action="store_true")
    for name, kind in (("lambda1", _finite), ("lambda2", _finite),
                       ("alpha", _finite), ("theta", parse_angle),
                       ("phi", parse_angle)):
        p.add_argument(f"--{name}", type=kind, default=None,
                       help=f"pin the {name} axis to one value")

    p = sub.add_parser("generaldyne", parents=[common],
                       help="general-dyne Fisher matrix and bound")
    _add_point(p)
    p.add_argument("--z", type=_positive, default=1.0)
    p.add_argument("--optimize", action="store_true",
                   help="minimize over theta, phi and z")
    p.add_argument("--asymptotic", action="store_true",
                   help="also print the large-alpha expansion")
    _add_output(p)
    return parser


def _read_config(path):
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _apply_config(parser, argv):
    """Parse ``argv`` with config-file values as the subcommand defaults."""
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    subparsers = parser._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in subparsers), None)
    if not known.config or command is None:
        return parser.parse_args(argv)
    try:
        values = _read_config(known.config)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    subparser = subparsers[command]
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, text in values.items():
        action = actions.get(key)
        if action is None or key in ("help", "config"):
            parser.error(f"unknown config key {key!r}")
        if action.nargs == 0:
            defaults[key] = text.lower() in ("1", "true", "yes", "on")
            continue
        try:
            value = action.type(text) if action.type else text
        except (argparse.ArgumentTypeError, ValueError) as exc:
            parser.error(f"config {key}: {exc}")
        if action.choices is not None and value not in action.choices:
            parser.error(f"config {key}: {value!r} not in {list(action.choices)}")
        defaults[key] = value
    subparser.set_defaults(**defaults)
    # required options may now come from the file
    for action in subparser._actions:
        if action.dest in defaults:
            action.required = False
    return parser.parse_args(argv)


def _point(args):
    return ModelParams(args.lambda1, args.lambda2, args.alpha, args.theta, args.phi)


def _emit(reports, args, out):
    if args.format == "json":
        out.write(report.to_json(reports, args.digits) + "\n")
    else:
        report.write_csv(reports if isinstance(reports, list) else [reports],
                         out, args.digits)


def cmd_bounds(args, out):
    r = report.build_report(_point(args), args.weight, args.z, args.sing_tol)
    _emit(r, args, out)
    return 0


def cmd_scan(args, out, parser):
    fixed = _point(args)
    try:
        spec = report.ScanSpec(args.axis, args.start, args.stop, args.count,
                               fixed, args.z)
    except ValueError as exc:
        parser.error(str(exc))
    if args.axis == "z" and args.start <= 0:
        parser.error("z range must be positive")
    _emit(report.scan(spec, args.weight, args.sing_tol, max(1, args.jobs)), args, out)
    return 0


def cmd_validate(args, out, err):
    cfg = NumericsConfig(fock_dim=args.dim, tail_tol=args.tail_tol,
                         max_dim=max(args.max_dim, args.dim),
                         adapt=not args.no_adapt)
    axes = validation.make_grid(
        args.grid_points,
        lambda1=args.lambda1, lambda2=args.lambda2, alpha=args.alpha,
        theta=args.theta, phi=args.phi,
    )
    try:
        res = validation.validate(cfg, axes, moments=not args.no_moments)
    except TailError as exc:
        err.write(f"oracle truncation failure: {exc}\n")
        return 3
    except ConvergenceError as exc:
        err.write(f"oracle convergence failure: {exc}\n")
        return 3
    out.write(f"points {res.points}\n")
    for name in ("qfim", "uhlmann", "moments"):
        if name == "moments" and args.no_moments:
            continue
        out.write(f"{name} max_rel_err {getattr(res, name):.3e}\n")
    out.write(("PASS" if res.passed else "FAIL") + f" (tolerance {validation.REL_TOL:g})\n")
    return 0 if res.passed else 1


def cmd_generaldyne(args, out, err):
    p = _point(args)
    result = {"lambda1": p.lambda1, "lambda2": p.lambda2, "alpha": p.alpha}
    if args.optimize:
        try:
            opt = generaldyne.optimize_setting(p.lambda1, p.lambda2, p.alpha)
        except OptimizationError as exc:
            err.write(f"optimizer failure: {exc}\n")
            return 1
        p = p.replace(theta=opt.theta, phi=opt.phi)
        z = opt.z
    else:
        z = args.z
    f = generaldyne.cfi_matrix(p, z)
    try:
        cg = generaldyne.c_g(f)
    except SingularMatrixError:
        cg = None
    result.update(theta=p.theta, phi=p.phi, z=z,
                  f11=float(f[0, 0]), f12=float(f[0, 1]), f22=float(f[1, 1]),
                  c_g=cg)
    q = bounds.qfim_closed(p)
    result["cq"] = None if bounds.is_singular(q) else bounds.weighted_cq(q)
    if args.asymptotic and p.alpha > 0:
        asym = generaldyne.cg_asymptotic(p.alpha, p.lambda1)
        lo, hi = generaldyne.holevo_ratio_band(p.alpha, p.lambda1)
        result.update(c_g_asymptotic=asym,
                      c_g_ratio=None if cg is None else cg / asym,
                      holevo_ratio_lower=lo, holevo_ratio_upper=hi)
    if args.format == "json":
        out.write(json.dumps({k: report._round(v, args.digits) for k, v in result.items()}) + "\n")
    else:
        out.write(",".join(result) + "\n")
        out.write(",".join(report.format_value(v, args.digits) for v in result.values()) + "\n")
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    args = _apply_config(parser, argv)
    try:
        if args.command == "bounds":
            return cmd_bounds(args, out)
        if args.command == "scan":
            return cmd_scan(args, out, parser)
        if args.command == "validate":
            return cmd_validate(args, out, err)
        return cmd_generaldyne(args, out, err)
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
