"""Periodic Gaussian angular states built from Jacobi theta_3 functions."""

from .asymptotics import (
    BranchSpec,
    Regime,
    half_integer_margins,
    large_lambda_report,
    limiting_values,
    small_lambda_L_moments,
    small_lambda_state,
)
from .moments import (
    MomentReport,
    UncertaintyViolation,
    cross_correlation,
    mean_L,
    mean_L_sq,
    mean_theta,
    mean_theta_sq,
    theta_L_inner,
    uncertainty_report,
)
from .oracle import compare, lattice_psi, quad_inner
from .state_model import (
    ProbDist,
    Representation,
    StateParams,
    fourier_coefficient,
    normalization,
    padgett_state_moments,
    prob_dist,
    prob_l,
    psi,
    representation_for,
)
from .sweep import SweepRecord, figure_data, find_lambda_for_dtheta
from .theta_engine import ThetaArgs, ThetaConvergenceError, TruncationPlan, theta3, truncation_bound

__version__ = "0.1.0"
