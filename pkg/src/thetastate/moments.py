"""Expectation values and uncertainty relations from the Fourier series.

Every quantity is a finite sum over the Fourier weights
``w_n = exp(-(n - l_bar)**2 / (2 lam))``. Double sums over ``m != n`` are
grouped by the index difference ``d = m - n``, so trigonometric factors are
evaluated once per ``d`` against the autocorrelation ``A_d = sum_n w_{n+d} w_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state_model import TWO_PI, StateParams, index_window, psi, relative_weights

CS_TOL = 1e-10


class UncertaintyViolation(ArithmeticError):
    """An uncertainty inequality failed beyond round-off; indicates a series bug."""


@dataclass(frozen=True)
class MomentReport:
    mean_theta: float
    mean_theta_sq: float
    mean_L: float
    mean_L_sq: float
    delta_theta: float
    delta_L: float
    product: float
    cross_corr: complex
    kraus_bound: float
    psi_at_pi_sq: float
    norm_residual: float

    def as_dict(self) -> dict:
        return {
            "mean_theta": self.mean_theta,
            "mean_theta_sq": self.mean_theta_sq,
            "mean_L": self.mean_L,
            "mean_L_sq": self.mean_L_sq,
            "delta_theta": self.delta_theta,
            "delta_L": self.delta_L,
            "product": self.product,
            "cross_corr_re": self.cross_corr.real,
            "cross_corr_im": self.cross_corr.imag,
            "kraus_bound": self.kraus_bound,
            "psi_at_pi_sq": self.psi_at_pi_sq,
            "norm_residual": self.norm_residual,
        }


class _Series:
    """Window, weights and pair sums shared by all moments of one state."""

    def __init__(self, params: StateParams):
        self.params = params
        self.n = index_window(params.lam, params.l_bar)
        # Max-relative weights; scale = N**2/lam rescaled to match.
        self.w = relative_weights(params.lam, params.l_bar, self.n)
        self.scale = 1.0 / math.fsum(np.sort(self.w**2))
        self.k = int(round(params.l_bar))
        self.j = self.n - self.k
        self.p = self.scale * self.w**2
        size = len(self.w)
        full = np.correlate(self.w, self.w, mode="full")
        # full[size - 1 + d] = sum_n w_{n+d} w_n
        self.d = np.arange(1, size)
        self.auto = full[size:]
        # nw_full[size - 1 + D] = sum_a j_{a+D} w_{a+D} w_a: ordered pairs (a, b = a + D)
        # weighted by the (centred) index of the second member.
        jw = self.j * self.w
        nw_full = np.correlate(jw, self.w, mode="full")
        self.nweighted_pos = nw_full[size:]             # D = +d
        self.nweighted_neg = nw_full[: size - 1][::-1]  # D = -d

    @property
    def phi(self) -> float:
        return self.params.theta0 - self.params.theta_bar

    def pair_sum(self, even_fn) -> float:
        """``sum_{m != n} f(m - n) w_m w_n`` for ``f`` even in ``d``."""
        return 2.0 * math.fsum(even_fn(self.d) * self.auto)


def _series(params):
    return params if isinstance(params, _Series) else _Series(params)


def mean_L(params) -> float:
    """``<L> = (N**2/lam) sum_n n exp(-(n - l_bar)**2 / lam)``; independent of ``theta_bar``."""
    s = _series(params)
    return s.k + math.fsum(s.j * s.p)


def mean_L_sq(params) -> float:
    """``<L**2> = (N**2/lam) sum_n n**2 exp(-(n - l_bar)**2 / lam)``."""
    s = _series(params)
    n = s.n.astype(float)
    return math.fsum(n * n * s.p)


def var_L(params) -> float:
    """``(Delta L)**2`` summed about the mean, avoiding ``<L**2> - <L>**2`` cancellation."""
    s = _series(params)
    mu = mean_L(s) - s.k
    return math.fsum((s.j - mu) ** 2 * s.p)


def mean_theta(params) -> float:
    """Window mean of theta:

        sum_{m != n} sin((m - n)(theta0 - theta_bar)) / (m - n) w_m w_n * N**2/lam
        + (theta0 + pi)
    """
    s = _series(params)
    phi = s.phi
    pair = s.pair_sum(lambda d: np.sin(d * phi) / d)
    return s.scale * pair + (s.params.theta0 + math.pi)


def mean_theta_sq(params) -> float:
    """Window second moment of theta for a general window start ``theta0``."""
    s = _series(params)
    phi = s.phi
    theta0 = s.params.theta0
    cos_part = s.pair_sum(lambda d: np.cos(d * phi) / d**2)
    sin_part = s.pair_sum(lambda d: np.sin(d * phi) / d)
    const = ((theta0 + TWO_PI) ** 3 - theta0**3) / (6.0 * math.pi)
    return 2.0 * s.scale * cos_part + 2.0 * s.scale * (theta0 + math.pi) * sin_part + const


def mean_theta_sq_symmetric(params) -> float:
    """Second moment specialised to ``theta0 = -pi``; cross-checks :func:`mean_theta_sq`."""
    s = _series(params)
    tb = s.params.theta_bar
    pair = s.pair_sum(lambda d: np.cos(d * (tb - math.pi)) / d**2)
    return 2.0 * s.scale * pair + math.pi**2 / 3.0


def var_theta(params) -> float:
    s = _series(params)
    return mean_theta_sq(s) - mean_theta(s) ** 2


def theta_L_inner(params) -> complex:
    """Uncentred ``(theta psi, L psi)`` over the window.

    With ``k = n - m`` and ``phi = theta0 - theta_bar``,

        (theta0 + pi) <L> + (N**2/lam) sum_{m != n} n w_m w_n e^{1j k phi} / (1j k).
    """
    s = _series(params)
    phi = s.phi
    d = s.d
    # n = j + round(l_bar): the integer shift rides on the plain autocorrelation.
    pos = (s.nweighted_pos + s.k * s.auto) * np.exp(1j * d * phi) / (1j * d)
    neg = (s.nweighted_neg + s.k * s.auto) * np.exp(-1j * d * phi) / (-1j * d)
    total = complex(math.fsum(pos.real) + math.fsum(neg.real),
                    math.fsum(pos.imag) + math.fsum(neg.imag))
    return (s.params.theta0 + math.pi) * mean_L(s) + s.scale * total


def cross_correlation(params) -> complex:
    """Centred ``((theta - <theta>) psi, (L - <L>) psi)``."""
    s = _series(params)
    return theta_L_inner(s) - mean_theta(s) * mean_L(s)


def psi_at_boundary_sq(params) -> float:
    """``|psi(theta0)|**2``, equal to ``|psi(theta0 + 2 pi)|**2``."""
    s = _series(params)
    return abs(psi(s.params, s.params.theta0)) ** 2


def kraus_bound(params) -> float:
    """Lower bound ``|1 - 2 pi |psi(boundary)|**2| / 2`` on the uncertainty product."""
    return abs(1.0 - TWO_PI * psi_at_boundary_sq(params)) / 2.0


def norm_residual(params) -> float:
    s = _series(params)
    return abs(math.fsum(s.p) - 1.0)


def uncertainty_report(params: StateParams, check: bool = True) -> MomentReport:
    """All moments, dispersions and uncertainty bounds for one parameter point.

    Raises
    ------
    UncertaintyViolation
        If ``check`` and either the Cauchy-Schwarz relation or the Kraus
        bound fails by more than ``CS_TOL``.
    """
    s = _Series(params)
    mt = mean_theta(s)
    mt2 = mean_theta_sq(s)
    ml = mean_L(s)
    ml2 = mean_L_sq(s)
    dt = math.sqrt(max(0.0, mt2 - mt * mt))
    dl = math.sqrt(max(0.0, var_L(s)))
    product = dt * dl
    cc = cross_correlation(s)
    b_sq = psi_at_boundary_sq(s)
    kb = abs(1.0 - TWO_PI * b_sq) / 2.0
    report = MomentReport(
        mean_theta=mt, mean_theta_sq=mt2, mean_L=ml, mean_L_sq=ml2,
        delta_theta=dt, delta_L=dl, product=product, cross_corr=cc,
        kraus_bound=kb, psi_at_pi_sq=b_sq, norm_residual=norm_residual(s),
    )
    if check:
        check_uncertainty(report)
    return report


def check_uncertainty(report: MomentReport, tol: float = CS_TOL) -> None:
    if report.product < abs(report.cross_corr) - tol:
        raise UncertaintyViolation(
            f"Cauchy-Schwarz violated: product {report.product!r} < |cross| {abs(report.cross_corr)!r}")
    if report.product < report.kraus_bound - tol:
        raise UncertaintyViolation(
            f"Kraus bound violated: product {report.product!r} < {report.kraus_bound!r}")
