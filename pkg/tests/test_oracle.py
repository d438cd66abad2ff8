import math

import numpy as np
import pytest

from thetastate import moments
from thetastate.oracle import (
    DEFAULT_QUAD,
    Operand,
    QuadratureError,
    QuadratureSpec,
    Weight,
    compare,
    composite_nodes,
    integrate,
    l_psi,
    lattice_psi,
    lattice_window,
    oracle_moments,
    quad_inner,
)
from thetastate.state_model import StateParams, psi
from thetastate.theta_engine import ThetaConvergenceError


class TestLatticeWindow:
    def test_example(self):
        # R = sqrt(2 ln 1e15 / 0.05) = 37.17; ceil(37.17 / 2 pi) + 1 = 7.
        assert lattice_window(0.05, 0.0, 1e-15) == 7

    def test_grows_with_offset(self):
        assert lattice_window(0.05, 3.0) >= lattice_window(0.05, 0.0)

    def test_cap(self):
        with pytest.raises(ThetaConvergenceError):
            lattice_window(1e-20, 0.0)

    @pytest.mark.parametrize("lam", [0.05, 1.0, 20.0])
    def test_covers_the_sum(self, lam):
        p = StateParams(lam, 0.45, 0.3)
        t = np.linspace(-math.pi, math.pi, 21)
        assert np.max(np.abs(lattice_psi(p, t) - psi(p, t))) <= 1e-12


class TestQuadrature:
    def test_nodes_span_interval(self):
        x, w = composite_nodes(-1.0, 2.0, 4, 5)
        assert x.shape == w.shape == (20,)
        assert math.fsum(w) == pytest.approx(3.0, abs=1e-14)
        assert np.all((x > -1) & (x < 2))

    @pytest.mark.parametrize("f, exact", [
        (np.cos, 0.0),
        (lambda t: t**2, 2 * math.pi**3 / 3),
        (lambda t: np.exp(np.sin(t)), 2 * math.pi * 1.2660658777520082),
    ])
    def test_integrals(self, f, exact):
        assert integrate(f, -math.pi, math.pi) == pytest.approx(exact, abs=1e-12)

    def test_complex(self):
        assert integrate(lambda t: np.exp(1j * t), 0.0, math.pi / 2) == pytest.approx(1 + 1j, abs=1e-13)

    def test_no_convergence(self):
        spec = QuadratureSpec(panels=2, nodes_per_panel=2, refine_tol=1e-14, max_panels=8)
        with pytest.raises(QuadratureError) as info:
            integrate(lambda t: np.sign(np.sin(40 * t)) * t, 0.0, 1.0, spec)
        assert info.value.last is not None and info.value.previous is not None

    @pytest.mark.parametrize("kw", [dict(panels=0), dict(nodes_per_panel=0), dict(refine_tol=0.0),
                                    dict(max_panels=16, panels=32)])
    def test_spec_validation(self, kw):
        with pytest.raises(ValueError):
            QuadratureSpec(**kw)

    def test_default(self):
        assert (DEFAULT_QUAD.panels, DEFAULT_QUAD.nodes_per_panel) == (32, 16)


class TestOperators:
    @pytest.mark.parametrize("lam, lb", [(0.1, 0.45), (1.0, 0.0), (5.0, 1.5)])
    def test_l_psi_is_derivative(self, lam, lb):
        p = StateParams(lam, lb, 0.3)
        t = np.linspace(-3, 3, 25)
        h = 1e-5
        fd = -1j * (lattice_psi(p, t + h) - lattice_psi(p, t - h)) / (2 * h)
        assert np.max(np.abs(l_psi(p, t) - fd)) <= 1e-6

    def test_norm_and_moments(self):
        p = StateParams(0.7, 0.45, 0.2)
        om = oracle_moments(p)
        assert om.norm == pytest.approx(1.0, abs=1e-12)
        assert om.mean_theta == pytest.approx(moments.mean_theta(p), abs=1e-11)
        assert om.mean_L_sq == pytest.approx(moments.mean_L_sq(p), abs=1e-11)

    def test_quad_inner_hermitian(self):
        p = StateParams(0.7, 0.45, 0.2)
        a = quad_inner(p, Weight.ONE, Operand.L_PSI, bra=Operand.PSI)
        b = quad_inner(p, Weight.ONE, Operand.PSI, bra=Operand.L_PSI)
        assert a == pytest.approx(b.conjugate(), abs=1e-12)


class TestCompare:
    def test_grid_point_passes(self, grid_point):
        lam, lb = grid_point
        r = compare(StateParams(lam, lb))
        assert r.passed, r.deviations

    def test_general_window(self):
        assert compare(StateParams(0.4, 0.3, 0.5, 0.2)).passed

    def test_failure_is_reported_not_raised(self, monkeypatch):
        monkeypatch.setattr(moments, "mean_theta", lambda p: 10.0)
        r = compare(StateParams(1.0, 0.0))
        assert not r.passed
        assert r.worst == pytest.approx(10.0, abs=1e-9)
