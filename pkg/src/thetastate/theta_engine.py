"""Jacobi theta function of the third kind with certified truncation.

    theta3(z, q) = sum_n q**(n**2) * exp(2j*n*z),    0 <= q < 1

The series is cut to a symmetric window [-M, M] chosen so that the dropped
tail is bounded above by ``eps`` using the geometric majorant

    q**((M+k)**2) <= q**(M**2) * (q**(2M+1))**k,    k >= 0.

For complex ``z`` the same argument applies to the effective term size
q**(n**2) * exp(2|n| |Im z|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_EPS = 1e-15
MAX_WINDOW = 10**6


class ThetaConvergenceError(ArithmeticError):
    """Raised when the term bound does not decay within ``MAX_WINDOW`` terms."""


@dataclass(frozen=True)
class ThetaArgs:
    z: complex
    q: float
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        _check_nome(self.q)
        _check_eps(self.eps)


@dataclass(frozen=True)
class TruncationPlan:
    """Symmetric index window ``[n_min, n_max]`` and its tail-error bound."""

    n_min: int
    n_max: int
    tail_bound: float

    @property
    def size(self) -> int:
        return self.n_max - self.n_min + 1


def _check_nome(q):
    if not (0.0 <= q < 1.0):
        raise ValueError(f"nome must satisfy 0 <= q < 1, got {q!r}")


def _check_eps(eps):
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")


def _log_tail(M, log_q, b, log_scale):
    """log of 2 * scale * q**(M*M) * e**(2Mb) / (1 - q**(2M+1) e**(2b)), or +inf."""
    log_ratio = (2 * M + 1) * log_q + 2.0 * b
    if log_ratio >= 0.0:
        return math.inf
    return (math.log(2.0) + log_scale + M * M * log_q + 2.0 * M * b
            - math.log(-math.expm1(log_ratio)))


def truncation_bound(q: float, eps: float = DEFAULT_EPS, imag_shift: float = 0.0,
                     log_scale: float = 0.0) -> TruncationPlan:
    """Smallest window ``[-M, M]`` (M >= 1) whose dropped tail is at most ``eps``.

    Parameters
    ----------
    q : float
        Real nome, ``0 <= q < 1``.
    eps : float
        Absolute tolerance on the dropped tail.
    imag_shift : float
        ``|Im z|`` of the argument; terms grow like ``exp(2|n| |Im z|)``.
    log_scale : float
        Log of a positive factor multiplying every term (see :func:`theta3`).

    Returns
    -------
    TruncationPlan
        Window with ``tail_bound <= eps``. With ``imag_shift = log_scale = 0``
        the bound is ``2 q**(M**2) / (1 - q**(2M+1))``.
    """
    _check_nome(q)
    _check_eps(eps)
    if q == 0.0:
        return TruncationPlan(-1, 1, 0.0)
    b = abs(float(imag_shift))
    log_q = math.log(q)
    a = -log_q
    log_eps = math.log(eps)

    # Start from the root of a M^2 - 2 b M = log(2/eps) + log_scale, then walk.
    rhs = max(log_scale + math.log(2.0) - log_eps, 0.0)
    M = max(1, int(math.floor((b + math.sqrt(b * b + a * rhs)) / a)) - 1)
    while True:
        if M > MAX_WINDOW:
            raise ThetaConvergenceError(
                f"theta series window exceeds {MAX_WINDOW} terms (q={q}, |Im z|={b})")
        lt = _log_tail(M, log_q, b, log_scale)
        if lt <= log_eps:
            break
        M += 1
    # Walk back down in case the starting guess overshot.
    while M > 1 and _log_tail(M - 1, log_q, b, log_scale) <= log_eps:
        M -= 1
    return TruncationPlan(-M, M, math.exp(_log_tail(M, log_q, b, log_scale)))


def theta3(z, q: float, eps: float = DEFAULT_EPS, log_scale=0.0):
    """Jacobi theta_3 with real nome, optionally scaled by ``exp(log_scale)``.

    Computes ``exp(log_scale) * sum_n q**(n**2) exp(2j n z)`` with the scale
    folded into each term, so results whose unscaled value would overflow
    stay representable. Absolute truncation error is at most ``eps``.

    Parameters
    ----------
    z : complex or array_like of complex
        Argument.
    q : float
        Nome, ``0 <= q < 1``.
    eps : float
        Absolute tolerance on the truncation error.
    log_scale : float or array_like of float
        Real log-prefactor, broadcast against ``z``.

    Returns
    -------
    complex or ndarray of complex
    """
    _check_nome(q)
    _check_eps(eps)
    z = np.asarray(z, dtype=complex)
    log_scale = np.asarray(log_scale, dtype=float)
    z, log_scale = np.broadcast_arrays(z, log_scale)
    scalar = z.ndim == 0

    if q == 0.0:
        out = np.exp(log_scale).astype(complex)
        return complex(out) if scalar else out

    y = z.imag
    # The bound is monotone in |Im z| and in the scale, so the worst element decides.
    b_max = float(np.max(np.abs(y))) if y.size else 0.0
    s_max = float(np.max(log_scale)) if y.size else 0.0
    plan = truncation_bound(q, eps, imag_shift=b_max, log_scale=s_max)
    M = plan.n_max

    log_q = math.log(q)
    phase_x = z.real
    acc = np.zeros(z.shape, dtype=complex)
    # Largest |n| first, n = 0 last.
    for n in range(M, 0, -1):
        base = n * n * log_q + log_scale
        plus = np.exp(base - 2.0 * n * y) * np.exp(2j * n * phase_x)
        minus = np.exp(base + 2.0 * n * y) * np.exp(-2j * n * phase_x)
        acc += plus + minus
    acc += np.exp(log_scale)
    return complex(acc) if scalar else acc


def theta3_args(args: ThetaArgs) -> complex:
    """:func:`theta3` on a validated :class:`ThetaArgs` record."""
    return theta3(args.z, args.q, args.eps)
