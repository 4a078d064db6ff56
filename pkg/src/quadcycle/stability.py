"""Multipliers, hyperbolicity and stability of 3-cycles.

The multiplier of the cycle generated by ``Q(beta)`` is ``-beta^3 - beta^2 -
7 beta + 1``, independent of the particular map. It sits in ``(-1, 1)`` exactly
for ``0 < beta < sqrt(delta_nh)``; the endpoint ``delta_nh`` is nonhyperbolic
but still attracting because quadratic maps have negative Schwarzian
derivative, and ``delta = 0`` is nonhyperbolic and unstable.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .cycles import Branch, QuadraticMap, ThreeCycle, branch_beta
from .errors import CriticalPoint, NegativeDelta, NotDegenerate
from .polynomial import TOL_DOMAIN, Polynomial, h_ratio, newton_polish, solve_q_beta

TOL_HYP = 1e-9


class Verdict(str, enum.Enum):
    ASYMPTOTICALLY_STABLE = "AsymptoticallyStable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class StabilityReport:
    multiplier: float
    hyperbolic: bool
    verdict: Verdict


# s^3 + s^2 + 7 s - 2, with s = sqrt(delta): the PLUS_DELTA multiplier equals -1
NH_CUBIC = Polynomial((-2.0, 7.0, 1.0, 1.0))


@functools.lru_cache(maxsize=None)
def delta_nh() -> float:
    """The unique positive delta at which the PLUS_DELTA multiplier is -1 (about 0.0741)."""
    return _delta_nh_uncached()


def _delta_nh_uncached() -> float:
    k = 460.0 + 60.0 * math.sqrt(201.0)
    k13 = k ** (1.0 / 3.0)
    k23 = k13 * k13
    closed = (k23 - 2.0 * k13 - 80.0) ** 2 / (36.0 * k23)
    s = newton_polish(NH_CUBIC, math.sqrt(closed))
    return s * s


def multiplier_closed_form(branch: Branch, delta: float) -> float:
    if delta < 0:
        raise NegativeDelta(f"delta must be nonnegative, got {delta!r}")
    if branch is Branch.DEGENERATE:
        return 1.0
    s = math.sqrt(delta)
    if branch is Branch.PLUS_DELTA:
        return -s * delta - delta - 7.0 * s + 1.0
    return s * delta - delta + 7.0 * s + 1.0


def multiplier_from_points(m: QuadraticMap, cycle: ThreeCycle) -> float:
    x1, x2, x3 = cycle.points
    return m.derivative(x1) * m.derivative(x2) * m.derivative(x3)


def is_hyperbolic(multiplier: float, tol: float = TOL_HYP) -> bool:
    return abs(abs(multiplier) - 1.0) > tol


def classify_stability(m: QuadraticMap, branch: Branch) -> StabilityReport:
    """Stability verdict of the ``branch`` cycle of ``m``.

    Raises NoCycleExists for negative delta and BranchMismatch when the branch
    does not exist.
    """
    beta = branch_beta(m, branch)
    if branch is Branch.DEGENERATE:
        return StabilityReport(1.0, False, Verdict.UNSTABLE)
    delta = beta * beta
    h = multiplier_closed_form(branch, delta)
    stable = branch is Branch.PLUS_DELTA and delta <= delta_nh() + m.degenerate_tolerance
    verdict = Verdict.ASYMPTOTICALLY_STABLE if stable else Verdict.UNSTABLE
    return StabilityReport(h, is_hyperbolic(h), verdict)


def schwarzian(m: QuadraticMap, x: float) -> float:
    slope = m.derivative(x)
    if abs(slope) <= TOL_DOMAIN:
        raise CriticalPoint(f"g'({x!r}) = 0: the Schwarzian derivative is undefined")
    return -6.0 * m.a * m.a / (slope * slope)


def schwarzian_of_polynomial(p: Polynomial, x: float) -> float:
    """``f'''/f' - 3/2 (f''/f')^2`` for a polynomial ``f``."""
    d1 = p.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    f1 = d1(x)
    if abs(f1) <= TOL_DOMAIN * p.residual_scale(x):
        raise CriticalPoint(f"f'({x!r}) = 0: the Schwarzian derivative is undefined")
    return d3(x) / f1 - 1.5 * (d2(x) / f1) ** 2


@dataclass(frozen=True)
class DegenerateFactorization:
    """``g^3(x) - x = scale * p1(x) * p2(x)^2`` for a map with ``delta = 0``.

    ``p1`` carries the fixed points, ``p2`` the points of the degenerate cycle.
    """

    p1: Polynomial
    p2: Polynomial
    scale: float

    def product(self) -> Polynomial:
        return self.p1 * self.p2 * self.p2 * self.scale


def degenerate_factorization(m: QuadraticMap) -> DegenerateFactorization:
    if abs(m.delta) > m.degenerate_tolerance:
        raise NotDegenerate(f"delta = {m.delta!r} is not zero")
    a, b = m.a, m.b
    p1 = Polynomial((b * b - 2.0 * b - 7.0, 4.0 * a * (b - 1.0), 4.0 * a * a))
    p2 = Polynomial(
        (
            b**3 + b * b - 9.0 * b - 1.0,
            2.0 * a * (3.0 * b * b + 2.0 * b - 9.0),
            4.0 * a * a * (3.0 * b + 1.0),
            8.0 * a**3,
        )
    )
    return DegenerateFactorization(p1, p2, 1.0 / (256.0 * a))


@functools.lru_cache(maxsize=None)
def ratio_stability_intervals() -> tuple[tuple[float, float], ...]:
    """The three half-open intervals ``(q_i, r_nh_i]`` of ratios whose cycle is
    asymptotically stable.

    ``r_nh_i`` solves ``h(r) = sqrt(delta_nh)`` on the i-th monotone piece of
    ``h``; each piece blows up to +inf at its right end (-1, 0, +inf).
    """
    target = math.sqrt(delta_nh())
    q1, q2, q3 = solve_q_beta(0.0)
    uppers = (-1.0 - 1e-9, -1e-9, q3 + 1.0)
    out = []
    for lo, hi in zip((q1, q2, q3), uppers):
        r_nh = brentq(lambda r: h_ratio(r) - target, lo, hi, xtol=1e-15, rtol=4 * 2.2205e-16)
        out.append((lo, r_nh))
    return tuple(out)


def stability_from_ratio(r: float) -> Verdict:
    """Verdict for a cycle with ``delta > 0`` given the ratio of one representative."""
    h = h_ratio(r)
    if 0.0 < h <= math.sqrt(delta_nh()):
        return Verdict.ASYMPTOTICALLY_STABLE
    return Verdict.UNSTABLE
