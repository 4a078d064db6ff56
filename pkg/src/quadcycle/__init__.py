"""Existence, location and stability of 3-cycles of real quadratic maps."""

from .cycles import (
    Branch,
    CyclePolynomial,
    ExistenceClass,
    QuadraticMap,
    TCoordinates,
    ThreeCycle,
    branches,
    classify_branch_from_ratio,
    classify_existence,
    cycle_points,
    cycle_polynomial,
    cycles,
    existence,
    map_from_triple,
    p_x_from_r,
    perturbed_discriminant,
    t_forward,
    t_inverse,
)
from .families import Family, FamilyThresholds, from_logistic, from_offset, thresholds
from .oracle import OracleResult, compose3, find_cycles, period3_factor, real_roots
from .polynomial import Polynomial, RealCubicRoots, h_ratio, p_alpha, q_beta, solve_cubic_real, solve_q_beta
from .report import analyze
from .stability import (
    DegenerateFactorization,
    StabilityReport,
    Verdict,
    classify_stability,
    degenerate_factorization,
    delta_nh,
    multiplier_closed_form,
    multiplier_from_points,
    ratio_stability_intervals,
    schwarzian,
    stability_from_ratio,
)

__version__ = "0.1.0"
