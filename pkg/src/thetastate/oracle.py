"""Brute-force reference values for the state and its moments.

Nothing here goes through :mod:`thetastate.theta_engine`. The amplitude is
the raw periodic lattice sum of Gaussians, and inner products are integrated
with composite Gauss-Legendre quadrature over the angular window.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .state_model import TWO_PI, StateParams, fourier_coefficient, index_window, psi
from .theta_engine import DEFAULT_EPS, MAX_WINDOW, ThetaConvergenceError


class Weight(enum.Enum):
    ONE = 0
    THETA = 1
    THETA_SQ = 2


class Operand(enum.Enum):
    PSI = "psi"
    L_PSI = "Lpsi"


class QuadratureError(ArithmeticError):
    def __init__(self, message, last, previous):
        super().__init__(f"{message} (last={last!r}, previous={previous!r})")
        self.last = last
        self.previous = previous


@dataclass(frozen=True)
class QuadratureSpec:
    panels: int = 32
    nodes_per_panel: int = 16
    refine_tol: float = 1e-12
    max_panels: int = 2**14

    def __post_init__(self):
        if self.panels < 1 or self.nodes_per_panel < 2:
            raise ValueError("need panels >= 1 and nodes_per_panel >= 2")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")
        if self.max_panels < 2 * self.panels:
            raise ValueError("max_panels must allow at least one refinement")


DEFAULT_QUAD = QuadratureSpec()


def lattice_window(lam: float, x, eps: float = DEFAULT_EPS) -> int:
    """Largest ``|n|`` kept in the lattice sum at offset ``x = theta - theta_bar``.

    Terms with ``|x + 2 pi n| > R = sqrt(2 ln(1/eps) / lam)`` are below
    ``eps`` in modulus; ``|n| <= ceil((R + |x|) / 2 pi) + 1`` covers them.
    """
    R = math.sqrt(2.0 * math.log(1.0 / eps) / lam)
    x_max = float(np.max(np.abs(x))) if np.size(x) else 0.0
    n_max = math.ceil((R + x_max) / TWO_PI) + 1
    if n_max > MAX_WINDOW:
        raise ThetaConvergenceError(f"lattice window {n_max} exceeds {MAX_WINDOW}")
    return n_max


def lattice_psi(params: StateParams, theta, eps: float = DEFAULT_EPS):
    """``N sum_n f(theta - theta_bar + 2 pi n)`` summed directly.

    ``theta`` is used as given (no window reduction): the sum itself is
    2 pi periodic.
    """
    theta = np.asarray(theta, dtype=float)
    x = theta - params.theta_bar
    n_max = lattice_window(params.lam, x, eps)
    acc = np.zeros(x.shape, dtype=complex)
    # Outer images first so the dominant central terms are added last.
    for n in sorted(range(-n_max, n_max + 1), key=lambda n: -abs(n)):
        y = x + TWO_PI * n
        acc += np.exp(1j * params.l_bar * y - params.lam * y * y / 2.0)
    out = params.norm * acc
    return complex(out) if out.ndim == 0 else out


def l_psi(params: StateParams, theta):
    """``L psi = -i dpsi/dtheta`` built spectrally: ``sum_n n c(n) e^{i n theta}``."""
    theta = np.asarray(theta, dtype=float)
    n = index_window(params.lam, params.l_bar)
    c = fourier_coefficient(params, n)
    out = np.exp(1j * np.multiply.outer(theta, n)) @ (n * c)
    return complex(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def _gauss_legendre(nodes):
    x, w = np.polynomial.legendre.leggauss(nodes)
    return x, w


def composite_nodes(a: float, b: float, panels: int, nodes_per_panel: int):
    """Nodes and weights of composite Gauss-Legendre on ``panels`` equal pieces of ``[a, b]``."""
    x, w = _gauss_legendre(nodes_per_panel)
    edges = np.linspace(a, b, panels + 1)
    half = (edges[1:] - edges[:-1]) / 2.0
    mid = (edges[1:] + edges[:-1]) / 2.0
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate(func, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUAD):
    """Composite Gauss-Legendre with panel doubling until two estimates agree.

    ``func`` maps an array of nodes to an array of (real or complex) values.

    Raises
    ------
    QuadratureError
        If the panel cap is reached first; carries the last two estimates.
    """
    panels = spec.panels
    nodes, weights = composite_nodes(a, b, panels, spec.nodes_per_panel)
    previous = last = np.sum(weights * func(nodes))
    while True:
        panels *= 2
        if panels > spec.max_panels:
            raise QuadratureError("quadrature did not converge", last, previous)
        nodes, weights = composite_nodes(a, b, panels, spec.nodes_per_panel)
        last = np.sum(weights * func(nodes))
        if abs(last - previous) < spec.refine_tol:
            return complex(last) if np.iscomplexobj(last) else float(last)
        previous = last


def _operand_values(params, operand, theta):
    if operand is Operand.PSI:
        return lattice_psi(params, theta)
    return l_psi(params, theta)


def quad_inner(params: StateParams, weight: Weight = Weight.ONE, operand: Operand = Operand.PSI,
               bra: Operand = Operand.PSI, spec: QuadratureSpec = DEFAULT_QUAD) -> complex:
    """``integral of theta**k * conj(bra(theta)) * operand(theta)`` over the window.

    ``weight`` selects ``k in {0, 1, 2}``; ``bra`` and ``operand`` are each
    ``psi`` (lattice sum) or ``L psi`` (spectral).
    """
    power = weight.value

    def integrand(theta):
        left = _operand_values(params, bra, theta)
        right = left if operand is bra else _operand_values(params, operand, theta)
        return theta**power * np.conj(left) * right

    a, b = params.window
    return complex(integrate(integrand, a, b, spec))


@dataclass(frozen=True)
class OracleMoments:
    norm: float
    mean_theta: float
    mean_theta_sq: float
    mean_L: float
    mean_L_sq: float
    theta_L_inner: complex


def oracle_moments(params: StateParams, spec: QuadratureSpec = DEFAULT_QUAD) -> OracleMoments:
    return OracleMoments(
        norm=quad_inner(params, Weight.ONE, Operand.PSI, spec=spec).real,
        mean_theta=quad_inner(params, Weight.THETA, Operand.PSI, spec=spec).real,
        mean_theta_sq=quad_inner(params, Weight.THETA_SQ, Operand.PSI, spec=spec).real,
        mean_L=quad_inner(params, Weight.ONE, Operand.L_PSI, spec=spec).real,
        mean_L_sq=quad_inner(params, Weight.ONE, Operand.L_PSI, bra=Operand.L_PSI, spec=spec).real,
        theta_L_inner=quad_inner(params, Weight.THETA, Operand.L_PSI, spec=spec),
    )


@dataclass(frozen=True)
class ComparisonReport:
    params: StateParams
    psi: float
    norm: float
    mean_theta: float
    mean_theta_sq: float
    mean_L: float
    mean_L_sq: float
    cross_corr: float
    tol: float = 1e-9

    @property
    def deviations(self) -> dict:
        return {k: getattr(self, k) for k in
                ("psi", "norm", "mean_theta", "mean_theta_sq", "mean_L", "mean_L_sq", "cross_corr")}

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.deviations.values())

    @property
    def worst(self) -> float:
        return max(self.deviations.values())


def compare(params: StateParams, theta_points: int = 101, tol: float = 1e-9) -> ComparisonReport:
    """Series pipeline against the lattice/quadrature pipeline; failures are data."""
    from . import moments

    theta = np.linspace(*params.window, theta_points)
    dpsi = float(np.max(np.abs(psi(params, theta) - lattice_psi(params, theta))))
    om = oracle_moments(params)
    return ComparisonReport(
        params=params,
        psi=dpsi,
        norm=abs(om.norm - 1.0),
        mean_theta=abs(om.mean_theta - moments.mean_theta(params)),
        mean_theta_sq=abs(om.mean_theta_sq - moments.mean_theta_sq(params)),
        mean_L=abs(om.mean_L - moments.mean_L(params)),
        mean_L_sq=abs(om.mean_L_sq - moments.mean_L_sq(params)),
        cross_corr=abs(om.theta_L_inner - moments.theta_L_inner(params)),
        tol=tol,
    )
