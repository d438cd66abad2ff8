"""Command-line interface: ``thetastate <subcommand> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import sweep as sw
from .moments import uncertainty_report
from .state_model import StateParams, prob_dist, psi, reduce_to_window


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _state_flags(p, need_lambda=True):
    p.add_argument("--lambda", dest="lam", type=float, required=need_lambda, help="width parameter > 0")
    p.add_argument("--lbar", type=float, required=True, help="angular-momentum offset")
    p.add_argument("--thetabar", type=float, default=0.0, help="phase offset (default 0)")
    p.add_argument("--theta0", type=float, default=-math.pi, help="window start (default -pi)")


def _grid_flags(p):
    p.add_argument("--lambda-min", type=float, default=sw.FIGURE_LAMBDA_MIN)
    p.add_argument("--lambda-max", type=float, default=sw.FIGURE_LAMBDA_MAX)
    p.add_argument("--points", type=int, default=sw.FIGURE_POINTS)
    p.add_argument("--linear", action="store_true", help="linear instead of log spacing")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thetastate", description="Periodic Gaussian angular state: values, moments, sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="psi(theta) on a grid or at given points")
    _state_flags(p)
    p.add_argument("--theta", type=float, action="append", help="evaluation point (repeatable)")
    p.add_argument("--npoints", type=int, default=101, help="grid size when --theta is absent")

    p = sub.add_parser("moments", help="one moment report")
    _state_flags(p)

    p = sub.add_parser("pdist", help="angular-momentum distribution p(l)")
    _state_flags(p)

    p = sub.add_parser("sweep", help="moment records along a lambda grid")
    p.add_argument("--lbar", type=float, required=True)
    p.add_argument("--thetabar", type=float, default=0.0)
    p.add_argument("--theta0", type=float, default=-math.pi)
    _grid_flags(p)

    p = sub.add_parser("figure", help="curves of the uncertainty figures")
    p.add_argument("--which", choices=("fig1", "fig2"), required=True)
    p.add_argument("--lbars", type=float, nargs="+", default=list(sw.FIG2_LBARS),
                   help="fig2 l_bar values (default 1.45 1.5 1.55)")
    p.add_argument("--offset-lbar", type=float, default=sw.FIG1_OFFSET_LBAR,
                   help="fig1 offset-state l_bar (default 0.45)")
    _grid_flags(p)

    p = sub.add_parser("invert", help="lambda giving a target Delta theta")
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--lbar", type=float, default=0.0)
    p.add_argument("--thetabar", type=float, default=0.0)

    sub.add_parser("verify", help="run the invariant suite")

    for name in ("eval", "moments", "pdist", "sweep", "figure", "invert", "verify"):
        sub.choices[name].add_argument("--out", default="-", help="output path (default stdout)")
    return parser


def _params(args):
    try:
        return StateParams(args.lam, args.lbar, args.thetabar, args.theta0)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


class _UsageError(Exception):
    pass


def _cmd_eval(args):
    params = _params(args)
    if args.theta:
        theta = np.asarray(args.theta, dtype=float)
    else:
        if args.npoints < 2:
            raise _UsageError("--npoints must be at least 2")
        theta = np.linspace(*params.window, args.npoints)
    values = np.atleast_1d(psi(params, theta))
    buf = io.StringIO()
    for k, v in sw._param_meta(params).items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "theta_reduced", "psi_re", "psi_im", "abs_psi_sq"])
    for t, tr, v in zip(theta, reduce_to_window(theta, params.theta0), values):
        w.writerow([sw.format_float(t), sw.format_float(tr), sw.format_float(v.real),
                    sw.format_float(v.imag), sw.format_float(abs(v) ** 2)])
    return buf.getvalue(), 0


def _cmd_moments(args):
    params = _params(args)
    return sw.report_to_csv(uncertainty_report(params), params), 0


def _cmd_pdist(args):
    params = _params(args)
    dist = prob_dist(params)
    buf = io.StringIO()
    meta = sw._param_meta(params)
    meta["tail_mass_bound"] = sw.format_float(dist.tail_mass_bound)
    for k, v in meta.items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["l", "p"])
    for l, p in zip(dist.support, dist.weights):
        w.writerow([int(l), sw.format_float(p)])
    return buf.getvalue(), 0


def _grid_meta(args):
    return {"lambda_min": sw.format_float(args.lambda_min), "lambda_max": sw.format_float(args.lambda_max),
            "points": args.points, "spacing": "linear" if args.linear else "log"}


def _check_grid(args):
    try:
        sw.lambda_grid(args.lambda_min, args.lambda_max, args.points, not args.linear)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _cmd_sweep(args):
    _check_grid(args)
    records, flags = sw.sweep(args.lbar, args.thetabar, args.lambda_min, args.lambda_max,
                              args.points, not args.linear, args.theta0)
    meta = {"lbar": sw.format_float(args.lbar), "thetabar": sw.format_float(args.thetabar),
            "theta0": sw.format_float(args.theta0), **_grid_meta(args)}
    return sw.records_to_csv(records, flags, meta), 0


def _cmd_figure(args):
    _check_grid(args)
    points = sw.figure_data(args.which, args.lambda_min, args.lambda_max, args.points, not args.linear,
                            fig2_lbars=tuple(args.lbars), fig1_offset=args.offset_lbar)
    meta = {"figure": args.which, "thetabar": "0.0", **_grid_meta(args)}
    if args.which == "fig1":
        meta["offset_lbar"] = sw.format_float(args.offset_lbar)
    else:
        meta["lbars"] = " ".join(sw.format_float(v) for v in args.lbars)
    return sw.figure_to_csv(points, meta), 0


def _cmd_invert(args):
    try:
        lam = sw.find_lambda_for_dtheta(args.target, args.lbar, args.thetabar)
    except sw.RangeError as exc:
        raise _UsageError(str(exc)) from exc
    dt = sw.delta_theta_of(lam, args.lbar, args.thetabar)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["target", "lbar", "thetabar", "lambda", "delta_theta"])
    w.writerow([sw.format_float(v) for v in (args.target, args.lbar, args.thetabar, lam, dt)])
    return buf.getvalue(), 0


def _cmd_verify(args):
    from .verification import verify

    buf = io.StringIO()
    ok = verify(buf)
    return buf.getvalue(), 0 if ok else 1


COMMANDS = {
    "eval": _cmd_eval, "moments": _cmd_moments, "pdist": _cmd_pdist, "sweep": _cmd_sweep,
    "figure": _cmd_figure, "invert": _cmd_invert, "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"thetastate {args.command}: error: {exc}\n")
        return 2
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
