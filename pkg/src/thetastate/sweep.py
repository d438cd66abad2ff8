"""Lambda sweeps, figure curves and inversion of Delta theta(lambda)."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .moments import CS_TOL, MomentReport, uncertainty_report
from .state_model import StateParams, padgett_state_moments

FIGURE_LAMBDA_MIN = 0.02
FIGURE_LAMBDA_MAX = 50.0
FIGURE_POINTS = 200
FIG1_OFFSET_LBAR = 0.45
FIG2_LBARS = (1.45, 1.5, 1.55)

INVERT_LAMBDA_MIN = 1e-3
INVERT_LAMBDA_MAX = 1e4
INVERT_TOL = 1e-10


class RangeError(ValueError):
    """Target outside the attainable Delta theta range."""

    def __init__(self, target, lo, hi):
        super().__init__(f"target Delta theta {target!r} outside attainable range ({lo!r}, {hi!r})")
        self.target = target
        self.attainable = (lo, hi)


class MonotonicityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SweepRecord:
    lam: float
    delta_theta: float
    delta_L: float
    product: float
    mean_L: float
    kraus_bound: float
    psi_at_pi_sq: float

    @classmethod
    def from_report(cls, lam: float, report: MomentReport) -> "SweepRecord":
        return cls(lam, report.delta_theta, report.delta_L, report.product,
                   report.mean_L, report.kraus_bound, report.psi_at_pi_sq)

    def check(self) -> None:
        if abs(self.product - self.delta_theta * self.delta_L) > 1e-12:
            raise ArithmeticError(f"product mismatch at lambda={self.lam!r}")
        if self.product < self.kraus_bound - CS_TOL:
            raise ArithmeticError(f"Kraus bound violated at lambda={self.lam!r}")


SWEEP_COLUMNS = ["lambda"] + [f.name for f in fields(SweepRecord)][1:]


def lambda_grid(lambda_min: float, lambda_max: float, points: int, log_spacing: bool = True) -> np.ndarray:
    if not (0 < lambda_min < lambda_max) or not math.isfinite(lambda_max):
        raise ValueError(f"need 0 < lambda_min < lambda_max, got {lambda_min!r}, {lambda_max!r}")
    if points < 2:
        raise ValueError(f"need at least 2 points, got {points!r}")
    if log_spacing:
        return np.geomspace(lambda_min, lambda_max, points)
    return np.linspace(lambda_min, lambda_max, points)


def sweep(l_bar: float, theta_bar: float = 0.0, lambda_min: float = FIGURE_LAMBDA_MIN,
          lambda_max: float = FIGURE_LAMBDA_MAX, points: int = FIGURE_POINTS,
          log_spacing: bool = True, theta0: float = -math.pi):
    """One :class:`SweepRecord` per grid lambda, ascending.

    Returns
    -------
    records : list of SweepRecord
    non_monotone : list of bool
        ``True`` at index ``i`` when Delta theta fails to decrease from
        record ``i - 1`` to ``i`` (always ``False`` for the first record).
    """
    grid = lambda_grid(lambda_min, lambda_max, points, log_spacing)
    records = []
    for lam in grid:
        lam = float(lam)
        rec = SweepRecord.from_report(lam, uncertainty_report(StateParams(lam, l_bar, theta_bar, theta0)))
        rec.check()
        records.append(rec)
    flags = [False] + [b.delta_theta >= a.delta_theta for a, b in zip(records, records[1:])]
    return records, flags


def padgett_sweep(lambdas, l_bar: float = 0.0):
    return [SweepRecord.from_report(float(lam), padgett_state_moments(float(lam), l_bar)) for lam in lambdas]


@dataclass(frozen=True)
class CurvePoint:
    curve: str
    l_bar: float
    record: SweepRecord


def figure_data(which: str, lambda_min: float = FIGURE_LAMBDA_MIN, lambda_max: float = FIGURE_LAMBDA_MAX,
                points: int = FIGURE_POINTS, log_spacing: bool = True,
                fig2_lbars=FIG2_LBARS, fig1_offset: float = FIG1_OFFSET_LBAR) -> list[CurvePoint]:
    """Curves of the two uncertainty figures, parametric in lambda.

    ``fig1``: the full periodic state at ``l_bar = 0`` (``full``), the
    single-Gaussian comparison state (``padgett``), and the full state at
    ``l_bar = fig1_offset`` (``offset``). The Kraus equality line for the
    full state is the ``kraus_bound`` column of the ``full`` rows.

    ``fig2``: the full state at each ``l_bar`` in ``fig2_lbars``.
    """
    grid = lambda_grid(lambda_min, lambda_max, points, log_spacing)
    out = []
    if which == "fig1":
        for rec in sweep(0.0, 0.0, lambda_min, lambda_max, points, log_spacing)[0]:
            out.append(CurvePoint("full", 0.0, rec))
        for rec in padgett_sweep(grid, 0.0):
            out.append(CurvePoint("padgett", 0.0, rec))
        for rec in sweep(fig1_offset, 0.0, lambda_min, lambda_max, points, log_spacing)[0]:
            out.append(CurvePoint("offset", fig1_offset, rec))
    elif which == "fig2":
        for lb in fig2_lbars:
            for rec in sweep(lb, 0.0, lambda_min, lambda_max, points, log_spacing)[0]:
                out.append(CurvePoint(f"lbar={lb!r}", float(lb), rec))
    else:
        raise ValueError(f"unknown figure {which!r}; expected 'fig1' or 'fig2'")
    return out


def delta_theta_of(lam: float, l_bar: float, theta_bar: float = 0.0) -> float:
    return uncertainty_report(StateParams(lam, l_bar, theta_bar), check=False).delta_theta


def find_lambda_for_dtheta(target: float, l_bar: float = 0.0, theta_bar: float = 0.0,
                           dtheta=None, lambda_min: float = INVERT_LAMBDA_MIN,
                           lambda_max: float = INVERT_LAMBDA_MAX, tol: float = INVERT_TOL,
                           samples: int = 97) -> float:
    """Invert the decreasing map ``lambda -> Delta theta(lambda)`` by bisection in log lambda.

    ``dtheta`` overrides the map (default: the full state at ``l_bar``,
    ``theta_bar``). The map is sampled on the bracket first; a non-monotone
    sample raises :class:`MonotonicityError`, and a target outside the
    sampled range raises :class:`RangeError`.
    """
    if dtheta is None:
        def dtheta(lam):
            return delta_theta_of(lam, l_bar, theta_bar)

    logs = np.linspace(math.log(lambda_min), math.log(lambda_max), samples)
    values = np.array([dtheta(math.exp(t)) for t in logs])
    # Flat stretches are allowed: the small-lambda end saturates in double precision.
    if np.any(np.diff(values) > 1e-13):
        i = int(np.argmax(np.diff(values) > 1e-13))
        raise MonotonicityError(
            f"Delta theta increases between lambda={math.exp(logs[i])!r} and {math.exp(logs[i + 1])!r}")
    hi_val, lo_val = float(values[0]), float(values[-1])
    if not (lo_val <= target <= hi_val):
        raise RangeError(target, lo_val, hi_val)

    # values is non-increasing: last index with value >= target.
    i = int(np.nonzero(values >= target)[0][-1])
    if values[i] == target:
        return math.exp(logs[i])
    a, b = logs[i], logs[min(i + 1, samples - 1)]
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = dtheta(math.exp(mid)) - target
        if abs(fm) <= tol:
            return math.exp(mid)
        if fm > 0:
            a = mid
        else:
            b = mid
        if b - a < 1e-15:
            break
    raise ArithmeticError(f"bisection stalled for target {target!r}: residual {fm!r}")


def format_float(x: float) -> str:
    """Shortest round-trip repr: locale independent, at most 17 significant digits."""
    return repr(float(x))


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def _comments(buf, meta: dict):
    for k, v in meta.items():
        buf.write(f"# {k}={v}\n")


def records_to_csv(records, flags=None, meta: dict | None = None) -> str:
    buf = io.StringIO()
    _comments(buf, meta or {})
    w = _writer(buf)
    header = list(SWEEP_COLUMNS)
    if flags is not None:
        header.append("non_monotone")
    w.writerow(header)
    for i, rec in enumerate(records):
        row = [format_float(v) for v in astuple(rec)]
        if flags is not None:
            row.append(str(int(flags[i])))
        w.writerow(row)
    return buf.getvalue()


def figure_to_csv(points, meta: dict | None = None) -> str:
    buf = io.StringIO()
    _comments(buf, meta or {})
    w = _writer(buf)
    w.writerow(["curve", "lbar"] + SWEEP_COLUMNS)
    for p in points:
        w.writerow([p.curve, format_float(p.l_bar)] + [format_float(v) for v in astuple(p.record)])
    return buf.getvalue()


def report_to_csv(report: MomentReport, params: StateParams | None = None) -> str:
    buf = io.StringIO()
    if params is not None:
        _comments(buf, _param_meta(params))
    w = _writer(buf)
    d = report.as_dict()
    w.writerow(list(d))
    w.writerow([format_float(v) for v in d.values()])
    return buf.getvalue()


def _param_meta(params: StateParams) -> dict:
    return {"lambda": format_float(params.lam), "lbar": format_float(params.l_bar),
            "thetabar": format_float(params.theta_bar), "theta0": format_float(params.theta0)}
