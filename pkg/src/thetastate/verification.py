"""Invariant suite run by ``thetastate verify``.

Each check returns ``(passed, detail)``. Functions from the other modules are
looked up at call time so a patched module is what gets verified.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import asymptotics, moments, oracle, state_model, sweep, theta_engine
from .state_model import StateParams

STANDARD_LAMBDAS = (0.05, 0.1, 0.5, 1.0 / (2.0 * math.pi), 1.0, 5.0, 20.0)
STANDARD_LBARS = (0.0, 0.25, 0.45, 0.5, 0.55, 1.0, 1.5)


def standard_grid():
    return [(lam, lb) for lam in STANDARD_LAMBDAS for lb in STANDARD_LBARS]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def check_theta_symmetries():
    rng = np.random.default_rng(7)
    eps = theta_engine.DEFAULT_EPS
    worst = 0.0
    for q in (0.0, 0.05, 0.3, 0.7, 0.9):
        z = rng.uniform(-3, 3, 16) + 1j * rng.uniform(-0.5, 0.5, 16)
        t = theta_engine.theta3(z, q)
        scale = np.maximum(1.0, np.abs(t))
        worst = max(worst,
                    float(np.max(np.abs(theta_engine.theta3(z + math.pi, q) - t) / scale)),
                    float(np.max(np.abs(theta_engine.theta3(-z, q) - t) / scale)),
                    float(np.max(np.abs(theta_engine.theta3(z.real, q).imag))))
    return worst <= 1e3 * eps, f"max deviation {worst:.3e}"


def check_representation_equivalence():
    theta = np.linspace(-math.pi, math.pi, 101)
    lams = list(np.geomspace(0.05, 20.0, 15)) + [state_model.LAMBDA_CROSSOVER]
    worst = 0.0
    for lam in lams:
        for lb in STANDARD_LBARS:
            p = StateParams(float(lam), lb, 0.3)
            a = state_model.psi_lattice_theta(p, theta)
            b = state_model.psi_fourier_theta(p, theta)
            worst = max(worst, float(np.max(np.abs(a - b))))
    return worst <= 1e-12, f"max |lattice - fourier| = {worst:.3e}"


def check_normalization():
    worst = 0.0
    for lam, lb in standard_grid():
        p = StateParams(lam, lb)
        dist = state_model.prob_dist(p)
        worst = max(worst, abs(float(np.sum(dist.weights)) - 1.0),
                    abs(oracle.quad_inner(p).real - 1.0))
    return worst <= 1e-10, f"max norm residual {worst:.3e}"


def _one_sided_derivative(f, x0, h, direction):
    # Fourth-order one-sided stencil.
    c = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
    pts = x0 + direction * h * np.arange(5)
    return direction * np.dot(c, f(pts)) / h


def check_boundary_smoothness():
    worst = 0.0
    for lam, lb in standard_grid():
        p = StateParams(lam, lb, 0.3)
        d_left = _one_sided_derivative(lambda t: _psi_raw(p, t), -math.pi, 1e-3, +1)
        d_right = _one_sided_derivative(lambda t: _psi_raw(p, t), math.pi, 1e-3, -1)
        worst = max(worst, abs(_psi_raw(p, -math.pi) - _psi_raw(p, math.pi)), abs(d_left - d_right))
    return worst <= 1e-10, f"max boundary mismatch {worst:.3e}"


def _psi_raw(p, theta):
    """psi without window reduction, so points at +pi stay at +pi."""
    if state_model.representation_for(p.lam) is state_model.Representation.LATTICE_THETA:
        return state_model.psi_lattice_theta(p, theta)
    return state_model.psi_fourier_theta(p, theta)


def check_half_integer_node():
    worst = 0.0
    for lam in STANDARD_LAMBDAS + (0.02,):
        for lb in (0.5, 1.5, -2.5, 7.5):
            for tb in (0.0, 0.7):
                p = StateParams(lam, lb, tb)
                worst = max(worst, abs(state_model.psi(p, tb + math.pi)))
    return worst <= 1e-13, f"max |psi(theta_bar + pi)| = {worst:.3e}"


def check_phase_covariance():
    theta = np.linspace(-math.pi, math.pi, 41)
    worst = 0.0
    for lam in (0.1, 1.0, 5.0):
        for tb, tb2 in ((0.0, 0.7), (0.3, -1.1)):
            a = StateParams(lam, 0.45, tb)
            b = StateParams(lam, 0.45, tb2)
            worst = max(worst, float(np.max(np.abs(
                np.abs(state_model.psi(a, theta)) - np.abs(state_model.psi(b, theta - tb + tb2))))))
    return worst <= 1e-12, f"max modulus mismatch {worst:.3e}"


def check_oracle_agreement():
    worst = 0.0
    failures = []
    for lam, lb in standard_grid():
        for tb in (0.0, 0.3):
            rep = oracle.compare(StateParams(lam, lb, tb))
            worst = max(worst, rep.worst)
            if not rep.passed:
                failures.append((lam, lb, tb))
    return not failures, f"max deviation {worst:.3e}; failing points {failures}"


def check_theta_bar_independence():
    worst = 0.0
    for lam, lb in standard_grid():
        base = StateParams(lam, lb, 0.0)
        for tb in (0.7, math.pi):
            other = base.replace(theta_bar=tb)
            worst = max(worst, abs(moments.mean_L(other) - moments.mean_L(base)),
                        abs(moments.mean_L_sq(other) - moments.mean_L_sq(base)))
    return worst <= 1e-12, f"max change {worst:.3e}"


def check_integer_shift():
    worst = 0.0
    for lam, lb in standard_grid():
        a = moments.uncertainty_report(StateParams(lam, lb))
        b = moments.uncertainty_report(StateParams(lam, lb + 1.0))
        worst = max(worst, abs(b.mean_L - a.mean_L - 1.0), abs(b.delta_L - a.delta_L),
                    abs(b.delta_theta - a.delta_theta))
    return worst <= 1e-12, f"max deviation {worst:.3e}"


def check_epsilon_reflection():
    worst = 0.0
    for lam in STANDARD_LAMBDAS:
        for eps in (0.1, 0.25, 0.45):
            a = moments.var_L(StateParams(lam, 1.0 + eps))
            b = moments.var_L(StateParams(lam, 2.0 - eps))
            worst = max(worst, abs(math.sqrt(a) - math.sqrt(b)))
    return worst <= 1e-12, f"max |dL(l+eps) - dL(l+1-eps)| = {worst:.3e}"


def check_uncertainty_relations():
    worst_cs = worst_kraus = math.inf
    for lam, lb in standard_grid():
        r = moments.uncertainty_report(StateParams(lam, lb), check=False)
        worst_cs = min(worst_cs, r.product - abs(r.cross_corr))
        worst_kraus = min(worst_kraus, r.product - r.kraus_bound)
    ok = worst_cs >= -1e-10 and worst_kraus >= -1e-10
    return ok, f"min slack: Cauchy-Schwarz {worst_cs:.3e}, Kraus {worst_kraus:.3e}"


def check_cross_correlation_identity():
    worst_re = worst_im = 0.0
    for lam in (0.05, state_model.LAMBDA_CROSSOVER, 1.0, 5.0):
        for lb in (0.0, 0.45, 0.5, 2.0):
            p = StateParams(lam, lb)
            v = moments.theta_L_inner(p)
            edge = abs(state_model.psi(p, math.pi)) ** 2
            worst_re = max(worst_re, abs(v.real))
            worst_im = max(worst_im, abs(v.imag - (1.0 - 2.0 * math.pi * edge) / 2.0))
    return worst_re <= 1e-12 and worst_im <= 1e-10, f"max |Re| {worst_re:.3e}, max |Im - rhs| {worst_im:.3e}"


def check_general_window_formula():
    worst = 0.0
    for lam, lb in standard_grid():
        for tb in (0.0, 0.7, -2.0):
            p = StateParams(lam, lb, tb)
            worst = max(worst, abs(moments.mean_theta_sq(p) - moments.mean_theta_sq_symmetric(p)))
    return worst <= 1e-12, f"max |general - symmetric| = {worst:.3e}"


def check_small_lambda_model():
    worst_m = worst_v = 0.0
    for lam in (0.02, 0.05, 0.1):
        for eps in (0.25, 0.45, 0.5, 0.55, 0.75):
            spec = asymptotics.BranchSpec(1, eps)
            m, v = asymptotics.small_lambda_L_moments(spec, lam)
            p = StateParams(lam, spec.l_bar)
            worst_m = max(worst_m, abs(moments.mean_L(p) - m))
            worst_v = max(worst_v, abs(moments.var_L(p) - v))
    return worst_m <= 1e-6 and worst_v <= 1e-5, f"max |d mean| {worst_m:.3e}, max |d var| {worst_v:.3e}"


def check_large_lambda_model():
    worst_t = worst_p = 0.0
    for lam in (5.0, 10.0, 20.0, 50.0):
        r = moments.uncertainty_report(StateParams(lam, 0.3))
        g = asymptotics.large_lambda_report(lam, 0.3)
        worst_t = max(worst_t, abs(r.delta_theta - g.delta_theta))
        worst_p = max(worst_p, abs(r.product - 0.5))
    return worst_t <= 1e-6 and worst_p <= 1e-4, f"max |d dtheta| {worst_t:.3e}, max |product - 1/2| {worst_p:.3e}"


def check_half_integer_limits():
    bound = asymptotics.HALF_INTEGER_DTHETA_SQ
    r = moments.uncertainty_report(StateParams(0.02, 1.5))
    ok = abs(r.delta_theta**2 - bound) <= 1e-4 and abs(r.delta_L - 0.5) <= 1e-4
    lams = sorted(STANDARD_LAMBDAS + (0.02,), reverse=True)
    margins = [asymptotics.half_integer_margins(lam, 1) for lam in lams]
    ok &= all(mt > 0 and ml > 0 for mt, ml in margins)
    # Approaches the bound from below as lambda decreases.
    dts = [moments.uncertainty_report(StateParams(lam, 1.5)).delta_theta for lam in lams]
    ok &= all(b >= a - 1e-15 for a, b in zip(dts, dts[1:]))
    return ok, f"(dtheta^2 - bound, dL - 1/2) at 0.02 = ({r.delta_theta**2 - bound:.3e}, {r.delta_L - 0.5:.3e})"


def branch_gap(lambdas, half: float = 1.5, offset: float = 1e-6):
    """``|<L>(half + offset) - <L>(half - offset)|`` at each lambda."""
    return np.array([abs(moments.mean_L(StateParams(float(l), half + offset))
                         - moments.mean_L(StateParams(float(l), half - offset))) for l in lambdas])


def check_branch_dichotomy():
    # The split needs (2 * offset) / lambda of order a few, i.e. lambda ~ 1e-7.
    lams = np.geomspace(1e-8, 1.0, 81)
    gap = branch_gap(lams)
    exact = max(abs(moments.mean_L(StateParams(float(l), 1.5)) - 1.5) for l in lams)
    where = float(lams[int(np.argmax(gap))])
    return gap.max() >= 0.9 and exact <= 1e-12, \
        f"max branch gap {gap.max():.6f} at lambda={where:.3e}; max |<L> - 1.5| at half {exact:.3e}"


def check_fig1_dominance():
    worst = -math.inf
    for target in np.linspace(0.3, 1.5, 20):
        lf = sweep.find_lambda_for_dtheta(float(target), 0.0)
        lp = sweep.find_lambda_for_dtheta(
            float(target), dtheta=lambda l: state_model.padgett_state_moments(l).delta_theta)
        pf = moments.uncertainty_report(StateParams(lf, 0.0)).product
        pp = state_model.padgett_state_moments(lp).product
        worst = max(worst, pf - pp)
    return worst <= 1e-9, f"max product(full) - product(padgett) = {worst:.3e}"


def check_l_psi():
    worst_parseval = worst_fd = 0.0
    h = 1e-4
    theta = np.linspace(-3.0, 3.0, 31)
    for lam, lb in [(0.1, 0.45), (1.0, 0.0), (5.0, 1.5), (0.5, 0.25)]:
        p = StateParams(lam, lb, 0.3)
        dist = state_model.prob_dist(p)
        parseval = float(np.dot(dist.support, dist.weights))
        worst_parseval = max(worst_parseval, abs(oracle.quad_inner(
            p, oracle.Weight.ONE, oracle.Operand.L_PSI).real - parseval))
        fd = -1j * (oracle.lattice_psi(p, theta + h) - oracle.lattice_psi(p, theta - h)) / (2 * h)
        worst_fd = max(worst_fd, float(np.max(np.abs(oracle.l_psi(p, theta) - fd))))
    return worst_parseval <= 1e-9 and worst_fd <= 1e-6, \
        f"Parseval {worst_parseval:.3e}, finite difference {worst_fd:.3e}"


def check_quadrature_self_consistency():
    spec = oracle.DEFAULT_QUAD
    worst = 0.0
    for lam, lb in [(0.05, 0.45), (20.0, 0.0), (1.0, 1.5)]:
        p = StateParams(lam, lb)
        a = oracle.quad_inner(p, oracle.Weight.THETA_SQ, spec=spec)
        finer = oracle.QuadratureSpec(panels=spec.panels * 8, nodes_per_panel=spec.nodes_per_panel,
                                      refine_tol=spec.refine_tol)
        b = oracle.quad_inner(p, oracle.Weight.THETA_SQ, spec=finer)
        worst = max(worst, abs(a - b))
    return worst < spec.refine_tol, f"max change under refinement {worst:.3e}"


CHECKS: list[tuple[str, Callable]] = [
    ("theta3 periodicity/evenness/reality", check_theta_symmetries),
    ("representation equivalence", check_representation_equivalence),
    ("normalization", check_normalization),
    ("boundary smoothness", check_boundary_smoothness),
    ("half-integer node", check_half_integer_node),
    ("phase covariance", check_phase_covariance),
    ("series vs oracle", check_oracle_agreement),
    ("theta_bar independence of L moments", check_theta_bar_independence),
    ("integer-shift covariance", check_integer_shift),
    ("epsilon reflection", check_epsilon_reflection),
    ("Cauchy-Schwarz and Kraus bounds", check_uncertainty_relations),
    ("cross-correlation identity", check_cross_correlation_identity),
    ("general vs symmetric window second moment", check_general_window_formula),
    ("small-lambda two-level model", check_small_lambda_model),
    ("large-lambda Gaussian model", check_large_lambda_model),
    ("half-integer critical limits", check_half_integer_limits),
    ("branch dichotomy", check_branch_dichotomy),
    ("fig1 dominance over comparison state", check_fig1_dominance),
    ("L psi spectral vs Parseval and finite differences", check_l_psi),
    ("quadrature self-consistency", check_quadrature_self_consistency),
]


def run_checks(checks=None) -> list[CheckResult]:
    results = []
    for name, fn in checks or CHECKS:
        t0 = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - t0))
    return results


def verify(stream=None) -> bool:
    """Run every check, print one PASS/FAIL line each, return overall success."""
    import sys

    stream = stream or sys.stdout
    results = run_checks()
    for r in results:
        stream.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail} ({r.seconds:.2f}s)\n")
    ok = all(r.passed for r in results)
    stream.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return ok
