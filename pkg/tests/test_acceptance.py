"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the measured
quantity, so ``pytest tests/test_acceptance.py -v`` doubles as a report.
Run ``python tests/test_acceptance.py`` for the lines alone.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from thetastate import asymptotics, moments, oracle, state_model, sweep
from thetastate.cli import main
from thetastate.state_model import Representation, StateParams

STANDARD_LAMBDAS = (0.05, 0.1, 0.5, 1.0 / (2.0 * math.pi), 1.0, 5.0, 20.0)
STANDARD_LBARS = (0.0, 0.25, 0.45, 0.5, 0.55, 1.0, 1.5)
STANDARD_GRID = [(lam, lb) for lam in STANDARD_LAMBDAS for lb in STANDARD_LBARS]
HALF_BOUND = math.pi**2 / 3.0 - 2.0


def _report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:2d} {title}: {detail}"
    print(line)
    return ok


def criterion_1():
    worst = max(abs(moments.mean_L(StateParams(lam, lb)) - lb)
                for lb in (-2.0, 0.0, 3.0) for lam in (0.05, 1.0, 20.0))
    return _report(1, "integer mean", worst <= 1e-12, f"max |<L> - lbar| = {worst:.3e} (tol 1e-12)")


def criterion_2():
    worst = max(abs(moments.mean_L(StateParams(lam, lb)) - lb)
                for lb in (0.5, 1.5, 7.5) for lam in (0.02, 1.0 / (2.0 * math.pi), 1.0, 20.0))
    return _report(2, "half-integer mean", worst <= 1e-12, f"max |<L> - lbar| = {worst:.3e} (tol 1e-12)")


def criterion_3():
    r = moments.uncertainty_report(StateParams(0.02, 1.5))
    d_theta = abs(r.delta_theta**2 - HALF_BOUND)
    d_L = abs(r.delta_L - 0.5)
    # Strict bounds on the figure grid. Near lambda = 0.02 both moments equal
    # their limits to double precision, so the margins are summed from the
    # non-cancelling remainder terms.
    grid = sweep.lambda_grid(sweep.FIGURE_LAMBDA_MIN, sweep.FIGURE_LAMBDA_MAX, sweep.FIGURE_POINTS)
    margins = np.array([asymptotics.half_integer_margins(float(lam), 1) for lam in grid])
    strict = bool(np.all(margins > 0))
    ok = d_theta <= 1e-4 and d_L <= 1e-4 and strict
    return _report(3, "half-integer critical limits", ok,
                   f"|dtheta^2 - (pi^2/3 - 2)| = {d_theta:.3e}, |dL - 1/2| = {d_L:.3e} (tol 1e-4); "
                   f"min strict margins (theta, L) = ({margins[:, 0].min():.3e}, {margins[:, 1].min():.3e}) "
                   f"over {len(grid)} lambdas")


def criterion_4():
    r = moments.uncertainty_report(StateParams(0.02, 0.0))
    d = abs(r.delta_theta - math.pi / math.sqrt(3.0))
    ok = d <= 1e-3 and r.delta_L <= 1e-4
    return _report(4, "integer small-lambda limit", ok,
                   f"|dtheta - pi/sqrt3| = {d:.3e} (tol 1e-3), dL = {r.delta_L:.3e} (tol 1e-4)")


def criterion_5():
    r = moments.uncertainty_report(StateParams(20.0, 0.0, 0.0))
    dp = abs(r.product - 0.5)
    dt = abs(r.delta_theta - 1.0 / math.sqrt(40.0))
    ok = dp <= 2e-3 and dt <= 1e-4
    return _report(5, "large-lambda minimal dispersion", ok,
                   f"|product - 1/2| = {dp:.3e} (tol 2e-3), |dtheta - 1/sqrt40| = {dt:.3e} (tol 1e-4)")


def criterion_6():
    worst_re = worst_im = 0.0
    for lam in (0.05, 1.0 / (2.0 * math.pi), 1.0, 5.0):
        for lb in (0.0, 0.45, 0.5, 2.0):
            p = StateParams(lam, lb, 0.0)
            inner = moments.theta_L_inner(p)
            boundary = abs(complex(state_model.psi(p, math.pi))) ** 2
            worst_re = max(worst_re, abs(inner.real))
            worst_im = max(worst_im, abs(inner.imag - (1.0 - 2.0 * math.pi * boundary) / 2.0))
    ok = worst_re <= 1e-12 and worst_im <= 1e-10
    return _report(6, "theta-L inner product identity", ok,
                   f"max |Re| = {worst_re:.3e} (tol 1e-12), max |Im - (1 - 2 pi |psi(pi)|^2)/2| = "
                   f"{worst_im:.3e} (tol 1e-10)")


def criterion_7():
    worst_cs = worst_kraus = math.inf
    for lam, lb in STANDARD_GRID:
        r = moments.uncertainty_report(StateParams(lam, lb), check=False)
        worst_cs = min(worst_cs, r.product - abs(r.cross_corr))
        worst_kraus = min(worst_kraus, r.product - r.kraus_bound)
    ok = worst_cs >= -1e-10 and worst_kraus >= -1e-10
    return _report(7, "uncertainty inequalities", ok,
                   f"min Cauchy-Schwarz slack = {worst_cs:.3e}, min Kraus slack = {worst_kraus:.3e} "
                   f"(floor -1e-10, {len(STANDARD_GRID)} points)")


def criterion_8():
    worst = 0.0
    theta = np.linspace(-math.pi, math.pi, 201)
    for lam, lb in STANDARD_GRID:
        p = StateParams(lam, lb)
        a = state_model.psi(p, theta, Representation.LATTICE_THETA)
        b = state_model.psi(p, theta, Representation.FOURIER_THETA)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return _report(8, "representation equivalence", worst <= 1e-12,
                   f"max |psi_lattice - psi_fourier| = {worst:.3e} (tol 1e-12)")


def criterion_9():
    worst, failed = 0.0, []
    for lam, lb in STANDARD_GRID:
        cmp = oracle.compare(StateParams(lam, lb), tol=1e-9)
        worst = max(worst, cmp.worst)
        if not cmp.passed:
            failed.append((lam, lb))
    return _report(9, "oracle equivalence", not failed,
                   f"max series - oracle deviation = {worst:.3e} (tol 1e-9), failing points {failed}")


def criterion_10():
    worst_m = worst_v = 0.0
    for lam in (0.02, 0.03, 0.05, 0.07, 0.1):
        for eps in (0.25, 0.45, 0.5, 0.55, 0.75):
            spec = asymptotics.BranchSpec(0, eps)
            m, v = asymptotics.small_lambda_L_moments(spec, lam)
            p = StateParams(lam, spec.l_bar)
            worst_m = max(worst_m, abs(moments.mean_L(p) - m))
            worst_v = max(worst_v, abs(moments.var_L(p) - v))
    ok = worst_m <= 1e-6 and worst_v <= 1e-5
    return _report(10, "small-lambda two-level model", ok,
                   f"max |d mean_L| = {worst_m:.3e} (tol 1e-6), max |d var_L| = {worst_v:.3e} (tol 1e-5)")


def criterion_11():
    def padgett_dtheta(lam):
        return state_model.padgett_state_moments(lam).delta_theta

    worst = -math.inf
    for target in np.linspace(0.3, 1.5, 20):
        lf = sweep.find_lambda_for_dtheta(float(target), 0.0)
        lp = sweep.find_lambda_for_dtheta(float(target), dtheta=padgett_dtheta)
        full = moments.uncertainty_report(StateParams(lf, 0.0)).product
        comparison = state_model.padgett_state_moments(lp).product
        worst = max(worst, full - comparison)
    return _report(11, "fig1 dominance", worst <= 1e-9,
                   f"max product(full) - product(comparison) = {worst:.3e} (tol 1e-9, 20 matched dtheta)")


def criterion_12():
    lams = np.geomspace(0.02, 1.0, 200)
    gap = np.array([abs(moments.mean_L(StateParams(float(l), 1.5 + 1e-6))
                        - moments.mean_L(StateParams(float(l), 1.5 - 1e-6))) for l in lams])
    exact = max(abs(moments.mean_L(StateParams(float(l), 1.5)) - 1.5) for l in lams)
    ok = bool(gap.max() >= 0.9 and exact <= 1e-12)
    return _report(12, "branching sensitivity", ok,
                   f"max gap on [0.02, 1] = {gap.max():.6e} at lambda = {lams[int(np.argmax(gap))]:.4g} "
                   f"(need >= 0.9), max |<L> - 1.5| at 1.5 = {exact:.3e}")


def criterion_13(tmp_dir):
    outs = []
    for k in range(2):
        path = tmp_dir / f"fig1_{k}.csv"
        code = main(["figure", "--which", "fig1", "--out", str(path)])
        outs.append((code, path.read_bytes()))
    ok = outs[0][0] == outs[1][0] == 0 and outs[0][1] == outs[1][1]
    return _report(13, "CLI determinism", ok,
                   f"exit codes {outs[0][0]}, {outs[1][0]}; identical bytes: {outs[0][1] == outs[1][1]} "
                   f"({len(outs[0][1])} bytes)")


def criterion_14():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "thetastate", "verify"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0 and elapsed <= 60.0
    return _report(14, "verify suite", ok, f"exit {proc.returncode} in {elapsed:.2f}s (limit 60s)")


def _run(fn, capsys, *args):
    with capsys.disabled():
        print()
        return fn(*args)


@pytest.mark.parametrize("fn", [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
                                criterion_11, criterion_12, criterion_14],
                         ids=lambda f: f.__name__)
def test_criterion(fn, capsys):
    assert _run(fn, capsys)


def test_criterion_13(tmp_path, capsys):
    assert _run(criterion_13, capsys, tmp_path)


if __name__ == "__main__":
    import pathlib
    import tempfile

    results = [fn() for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                               criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
                               criterion_11, criterion_12)]
    with tempfile.TemporaryDirectory() as d:
        results.append(criterion_13(pathlib.Path(d)))
    results.append(criterion_14())
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
