"""Closed-form small- and large-lambda models of the state.

For small ``lam`` only the two integers nearest ``l_bar = l + epsilon``
carry weight, which gives a two-level model; for large ``lam`` the state is
a Gaussian wave packet in theta with ``Delta theta = 1 / sqrt(2 lam)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .moments import MomentReport
from .state_model import TWO_PI, index_window, relative_weights

OVERFLOW_EXPONENT = 700.0
HALF_INTEGER_DTHETA_SQ = math.pi**2 / 3.0 - 2.0
UNIFORM_DTHETA = math.pi / math.sqrt(3.0)


class Regime(enum.Enum):
    BELOW_HALF = "below"
    HALF = "half"
    ABOVE_HALF = "above"


@dataclass(frozen=True)
class BranchSpec:
    """``l_bar = l + epsilon`` with ``epsilon`` in (0, 1) and its branch."""

    l: int
    epsilon: float

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")

    @property
    def regime(self) -> Regime:
        # Exact comparison on purpose: near-half values belong to a branch.
        if self.epsilon == 0.5:
            return Regime.HALF
        return Regime.BELOW_HALF if self.epsilon < 0.5 else Regime.ABOVE_HALF

    @property
    def l_bar(self) -> float:
        return self.l + self.epsilon

    @classmethod
    def from_l_bar(cls, l_bar: float) -> "BranchSpec":
        l = math.floor(l_bar)
        eps = l_bar - l
        if eps == 0.0:
            raise ValueError(f"l_bar={l_bar!r} is an integer; it has no branch")
        return cls(int(l), eps)


def _two_level_exponent(spec, lam):
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    return (1.0 - 2.0 * spec.epsilon) / lam


def small_lambda_L_moments(spec: BranchSpec, lam: float) -> tuple[float, float]:
    """Two-level ``(<L>, (Delta L)**2)``:

        <L> = l + 1 / (1 + e^x),   (Delta L)**2 = e^x / (1 + e^x)**2,   x = (1 - 2 epsilon) / lam
    """
    x = _two_level_exponent(spec, lam)
    if x > OVERFLOW_EXPONENT:
        return float(spec.l), 0.0
    if x < -OVERFLOW_EXPONENT:
        return float(spec.l + 1), 0.0
    # Logistic in the form that never overflows: upper = 1/(1+e^x), lower = 1 - upper.
    e = math.exp(-abs(x))
    small, big = e / (1.0 + e), 1.0 / (1.0 + e)
    upper, lower = (small, big) if x >= 0 else (big, small)
    return spec.l + upper, upper * lower


def small_lambda_state(spec: BranchSpec, lam: float, theta, theta_bar: float = 0.0):
    """Two-term model amplitude

        (1 + e^{i(theta - theta_bar)} e^{-x/2}) / sqrt(1 + e^{-x}) * e^{i l (theta - theta_bar)} / sqrt(2 pi)

    with ``x = (1 - 2 epsilon) / lam``.
    """
    x = _two_level_exponent(spec, lam)
    phase = np.asarray(theta, dtype=float) - theta_bar
    base = np.exp(1j * spec.l * phase) / math.sqrt(TWO_PI)
    if x > OVERFLOW_EXPONENT:
        out = base
    elif x < -OVERFLOW_EXPONENT:
        out = base * np.exp(1j * phase)
    elif x >= 0:
        out = base * (1.0 + np.exp(1j * phase) * math.exp(-x / 2.0)) / math.sqrt(1.0 + math.exp(-x))
    else:
        # Same expression divided through by e^{-x/2}.
        out = base * (math.exp(x / 2.0) + np.exp(1j * phase)) / math.sqrt(math.exp(x) + 1.0)
    return complex(out) if np.ndim(out) == 0 else out


def limiting_values(l_bar: float) -> tuple[float, float, float]:
    """``(Delta theta, Delta L, <L>)`` as ``lam -> 0``, with ``theta_bar = 0``."""
    if l_bar == math.floor(l_bar):
        return UNIFORM_DTHETA, 0.0, float(l_bar)
    spec = BranchSpec.from_l_bar(l_bar)
    if spec.regime is Regime.HALF:
        return math.sqrt(HALF_INTEGER_DTHETA_SQ), 0.5, spec.l + 0.5
    if spec.regime is Regime.BELOW_HALF:
        return UNIFORM_DTHETA, 0.0, float(spec.l)
    return UNIFORM_DTHETA, 0.0, float(spec.l + 1)


def large_lambda_report(lam: float, l_bar: float = 0.0, theta_bar: float = 0.0) -> MomentReport:
    """Gaussian wave-packet predictions; error is exponentially small in ``lam``."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    dt = 1.0 / math.sqrt(2.0 * lam)
    dl = math.sqrt(lam / 2.0)
    return MomentReport(
        mean_theta=theta_bar,
        mean_theta_sq=theta_bar**2 + dt**2,
        mean_L=l_bar,
        mean_L_sq=l_bar**2 + dl**2,
        delta_theta=dt,
        delta_L=dl,
        product=0.5,
        cross_corr=0.5j,
        kraus_bound=0.5,
        psi_at_pi_sq=0.0,
        norm_residual=0.0,
    )


def half_integer_margins(lam: float, l: int = 0) -> tuple[float, float]:
    """Strict-bound margins at ``l_bar = l + 1/2``, ``theta_bar = 0``, ``theta0 = -pi``.

    Returns ``(pi**2/3 - 2 - (Delta theta)**2, (Delta L)**2 - 1/4)`` summed
    from the non-cancelling remainder terms, so they stay resolvable even
    when both moments equal their limits to double precision.

    The two-level pair ``{l, l+1}`` saturates both limits exactly, so

        (Delta L)**2 - 1/4 = sum_{n not in {l, l+1}} ((n - l_bar)**2 - 1/4) p(n)
        bound - (Delta theta)**2 = -2 (O + D') / S

    with ``S = sum w_n**2``, ``O`` the same sum without the pair and ``D'``
    the ordered-pair sum ``sum (-1)**(m-n) / (m-n)**2 w_m w_n`` without the
    pair itself.
    """
    l_bar = l + 0.5
    n = index_window(lam, l_bar)
    w = relative_weights(lam, l_bar, n)
    # Weights are symmetric about l_bar; compute in terms of the offset j = n - l.
    j = n - l
    pair = (j == 0) | (j == 1)
    S = math.fsum(np.sort(w**2))
    O = math.fsum(np.sort(w[~pair] ** 2))

    dL_margin = math.fsum(((j[~pair] - 0.5) ** 2 - 0.25) * w[~pair] ** 2) / S

    m_idx, n_idx = np.meshgrid(np.arange(len(n)), np.arange(len(n)), indexing="ij")
    d = (j[m_idx] - j[n_idx]).astype(float)
    off = d != 0
    in_pair = pair[m_idx] & pair[n_idx]
    keep = off & ~in_pair
    terms = (np.where(d.astype(int) % 2 == 0, 1.0, -1.0)[keep] / d[keep] ** 2
             * w[m_idx][keep] * w[n_idx][keep])
    D_rest = math.fsum(terms)
    dtheta_margin = -2.0 * (O + D_rest) / S
    return dtheta_margin, dL_margin
