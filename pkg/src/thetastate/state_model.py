"""The periodic Gaussian angular state and its angular-momentum distribution.

The state on the window ``[theta0, theta0 + 2 pi]`` is

    psi(theta) = N * sum_n f(theta - theta_bar + 2 pi n),
    f(x) = exp(1j * l_bar * x) * exp(-lam * x**2 / 2),

with Fourier coefficients

    c(n) = N / sqrt(2 pi lam) * exp(-1j n theta_bar) * exp(-(n - l_bar)**2 / (2 lam)).

Two theta-function forms are used for evaluation: a lattice form with nome
``exp(-2 lam pi**2)`` (good for large ``lam``) and a Fourier form with nome
``exp(-1 / (2 lam))`` (good for small ``lam``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .theta_engine import DEFAULT_EPS, theta3, truncation_bound

TWO_PI = 2.0 * math.pi
LAMBDA_CROSSOVER = 1.0 / TWO_PI


class Representation(enum.Enum):
    LATTICE_THETA = "lattice"
    FOURIER_THETA = "fourier"


@dataclass(frozen=True)
class StateParams:
    """Parameters of the state.

    Attributes
    ----------
    lam : float
        Width parameter, ``lam > 0``.
    l_bar : float
        Angular-momentum offset.
    theta_bar : float
        Phase offset (radians).
    theta0 : float
        Start of the angular window ``[theta0, theta0 + 2 pi]``.
    """

    lam: float
    l_bar: float = 0.0
    theta_bar: float = 0.0
    theta0: float = -math.pi
    _log_norm: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("lam", "l_bar", "theta_bar", "theta0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam!r}")
        object.__setattr__(self, "_log_norm", _log_normalization(self.lam, self.l_bar))

    @property
    def norm(self) -> float:
        """``N``; overflows to ``inf`` only for ``lam`` far below 1e-3."""
        return float(np.exp(self._log_norm))

    @property
    def log_norm(self) -> float:
        return self._log_norm

    @property
    def window(self) -> tuple[float, float]:
        return self.theta0, self.theta0 + TWO_PI

    def replace(self, **changes) -> "StateParams":
        kw = dict(lam=self.lam, l_bar=self.l_bar, theta_bar=self.theta_bar, theta0=self.theta0)
        kw.update(changes)
        return StateParams(**kw)


@dataclass(frozen=True)
class ProbDist:
    l_min: int
    l_max: int
    weights: np.ndarray
    tail_mass_bound: float

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.l_min, self.l_max + 1)

    def __getitem__(self, l: int) -> float:
        if l < self.l_min or l > self.l_max:
            return 0.0
        return float(self.weights[l - self.l_min])


def index_window(lam: float, l_bar: float, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Integers ``n`` kept in every Fourier-side sum, centred on ``round(l_bar)``.

    Two indices are added on each side of the certified ``truncation_bound``
    window: the Gaussian is centred off-lattice by up to 1/2, and the
    moment sums carry polynomial weights up to ``n**2``.
    """
    k = int(round(l_bar))
    M = truncation_bound(math.exp(-1.0 / lam), eps).n_max + 2
    return np.arange(k - M, k + M + 1)


def amplitude_weights(lam: float, l_bar: float, n: np.ndarray) -> np.ndarray:
    """``exp(-(n - l_bar)**2 / (2 lam))``, the unnormalized Fourier moduli."""
    return np.exp(-((n - l_bar) ** 2) / (2.0 * lam))


def _offset_sq(l_bar):
    return (l_bar - round(l_bar)) ** 2


def relative_weights(lam: float, l_bar: float, n: np.ndarray) -> np.ndarray:
    """Fourier moduli divided by the largest one, so they never all underflow."""
    return np.exp(-((n - l_bar) ** 2 - _offset_sq(l_bar)) / (2.0 * lam))


def _log_normalization(lam, l_bar):
    n = index_window(lam, l_bar)
    # Smallest terms first.
    rel = math.fsum(np.sort(relative_weights(lam, l_bar, n) ** 2))
    # sum_n exp(-(n - l_bar)**2 / lam) = exp(-offset**2 / lam) * rel
    return 0.5 * (math.log(lam) + _offset_sq(l_bar) / lam - math.log(rel))


def normalization(params: StateParams) -> float:
    """Normalization constant ``N`` with ``(N**2/lam) sum_n exp(-(n-l_bar)**2/lam) = 1``."""
    return params.norm


def representation_for(lam: float) -> Representation:
    """Pick the theta form whose nome is smaller; they coincide at ``lam = 1/(2 pi)``."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    if lam >= LAMBDA_CROSSOVER:
        return Representation.LATTICE_THETA
    return Representation.FOURIER_THETA


def reduce_to_window(theta, theta0: float):
    """Shift ``theta`` by multiples of 2 pi into ``[theta0, theta0 + 2 pi)``."""
    theta = np.asarray(theta, dtype=float)
    return theta0 + np.mod(theta - theta0, TWO_PI)


def psi_lattice_theta(params: StateParams, theta, eps: float = DEFAULT_EPS):
    """Lattice theta form, nome ``exp(-2 lam pi**2)``.

    The Gaussian prefactor ``exp(-lam x**2 / 2)`` is folded into the theta
    series as a log-scale so large ``lam`` does not overflow.
    """
    lam, l_bar = params.lam, params.l_bar
    x = np.asarray(theta, dtype=float) - params.theta_bar
    # psi is 2 pi periodic in x; keep |Im z| = pi lam |x| as small as possible.
    x = np.mod(x + math.pi, TWO_PI) - math.pi
    z = math.pi * (l_bar + 1j * lam * x)
    q = math.exp(-2.0 * lam * math.pi**2)
    th = theta3(z, q, eps=eps, log_scale=params.log_norm - lam * x**2 / 2.0)
    return np.exp(1j * l_bar * x) * th


def psi_fourier_theta(params: StateParams, theta, eps: float = DEFAULT_EPS):
    """Fourier theta form, nome ``exp(-1/(2 lam))``.

    ``l_bar`` is split as ``k + delta`` with integer ``k``; the integer part
    becomes the phase ``exp(1j k x)`` so the theta argument has
    ``|Im z| <= 1/(4 lam)``.
    """
    lam = params.lam
    k = round(params.l_bar)
    delta = params.l_bar - k
    x = np.asarray(theta, dtype=float) - params.theta_bar
    z = x / 2.0 - 1j * delta / (2.0 * lam)
    q = math.exp(-1.0 / (2.0 * lam))
    scale = params.log_norm - 0.5 * math.log(TWO_PI * lam) - delta**2 / (2.0 * lam)
    th = theta3(z, q, eps=eps, log_scale=scale)
    return np.exp(1j * k * x) * th


def psi(params: StateParams, theta, representation: Representation | None = None):
    """Normalized amplitude ``psi(theta)``.

    ``theta`` is first reduced into the window. The theta form follows
    :func:`representation_for` unless ``representation`` is given.
    """
    theta = reduce_to_window(theta, params.theta0)
    rep = representation or representation_for(params.lam)
    if rep is Representation.LATTICE_THETA:
        out = psi_lattice_theta(params, theta)
    else:
        out = psi_fourier_theta(params, theta)
    return complex(out) if np.ndim(out) == 0 else out


def fourier_coefficient(params: StateParams, n):
    """``c(n) = N / sqrt(2 pi lam) exp(-1j n theta_bar) exp(-(n - l_bar)**2 / (2 lam))``."""
    n_arr = np.asarray(n)
    log_mod = (params.log_norm - 0.5 * math.log(TWO_PI * params.lam)
               - (n_arr - params.l_bar) ** 2 / (2.0 * params.lam))
    c = np.exp(log_mod - 1j * n_arr * params.theta_bar)
    return complex(c) if n_arr.ndim == 0 else c


def prob_l(params: StateParams, l):
    """Born-rule probability ``p(l) = (N**2/lam) exp(-(l - l_bar)**2 / lam)``."""
    l_arr = np.asarray(l)
    p = np.exp(2.0 * params.log_norm - math.log(params.lam) - (l_arr - params.l_bar) ** 2 / params.lam)
    return float(p) if l_arr.ndim == 0 else p


def prob_dist(params: StateParams, eps: float = DEFAULT_EPS) -> ProbDist:
    """``p(l)`` over the certified window plus a bound on the mass outside it."""
    n = index_window(params.lam, params.l_bar, eps)
    weights = prob_l(params, n)
    # Outside the window |l - l_bar| >= M + 1/2 >= 1; geometric tail of exp(-d**2/lam).
    d = (len(n) - 1) / 2.0 - 0.5
    ratio = math.exp(-(2.0 * d + 1.0) / params.lam)
    # Combined in log space: N**2/lam alone overflows for tiny lam.
    tail = 2.0 * math.exp(2.0 * params.log_norm - math.log(params.lam) - d * d / params.lam) / (1.0 - ratio)
    return ProbDist(int(n[0]), int(n[-1]), weights, float(tail))


def padgett_state_moments(lam: float, l_bar: float = 0.0, theta_bar: float = 0.0):
    """Moments of the renormalized single-Gaussian state on ``[-pi, pi]``.

    ``psi_P(theta) ~ exp(1j l_bar theta) exp(-lam theta**2 / 2)`` cut to the
    window and renormalized there: the comparison curve for the full periodic
    state. Moments come from quadrature; ``L psi_P = (l_bar + 1j lam theta) psi_P``
    is used inside the window.

    Returns
    -------
    MomentReport
    """
    from .moments import MomentReport, check_uncertainty
    from .oracle import integrate

    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    if theta_bar != 0.0:
        raise ValueError("the comparison state is only defined for theta_bar = 0")

    def density(t):
        return np.exp(-lam * t * t)

    a, b = -math.pi, math.pi
    Z = integrate(density, a, b)
    m1 = integrate(lambda t: t * density(t), a, b) / Z
    m2 = integrate(lambda t: t * t * density(t), a, b) / Z
    mean_L = l_bar + 0.0  # the 1j*lam*<theta> part is imaginary and drops out
    # |L psi_P|**2 = (l_bar**2 + lam**2 theta**2) |psi_P|**2
    mean_L_sq = l_bar**2 + lam**2 * m2
    var_theta = max(0.0, m2 - m1 * m1)
    var_L = max(0.0, lam**2 * m2 - (lam * m1) ** 2)
    dt, dl = math.sqrt(var_theta), math.sqrt(var_L)
    # (theta psi, L psi) = l_bar <theta> + 1j lam <theta**2>; centred part below.
    cross = complex(0.0, lam * var_theta)
    edge = math.exp(-lam * math.pi**2) / Z
    report = MomentReport(
        mean_theta=m1, mean_theta_sq=m2, mean_L=mean_L, mean_L_sq=mean_L_sq,
        delta_theta=dt, delta_L=dl, product=dt * dl, cross_corr=cross,
        kraus_bound=abs(1.0 - TWO_PI * edge) / 2.0, psi_at_pi_sq=edge,
        norm_residual=abs(integrate(lambda t: density(t) / Z, a, b) - 1.0),
    )
    check_uncertainty(report)
    return report
