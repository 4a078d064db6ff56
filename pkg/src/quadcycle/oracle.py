"""Brute-force period-3 points of a quadratic map.

This path deliberately ignores the closed-form machinery: it expands
``g(g(g(x))) - x`` as a degree-8 polynomial, divides out the fixed-point
factor ``g(x) - x``, isolates the real roots of the degree-6 quotient, and
groups them into orbits by applying ``g``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple

from scipy.optimize import brentq

from .cycles import QuadraticMap
from .errors import DivisionResidual, OrbitGroupingFailure
from .polynomial import Polynomial, newton_polish

TOL_ROOT = 1e-10
TOL_DOUBLE = 3e-5
TOL_DIVISION = 1e-10
TOL_CYCLE = 1e-8
MERGE_RADII = (1e-7, 1e-6, 1e-5, 1e-4, 1e-3)


def cycle_tolerance() -> float:
    """``TOL_CYCLE``, optionally scaled by the ``QUADCYCLE_TOL`` environment variable."""
    raw = os.environ.get("QUADCYCLE_TOL")
    if not raw:
        return TOL_CYCLE
    try:
        factor = float(raw)
    except ValueError:
        raise ValueError(f"QUADCYCLE_TOL must be a positive number, got {raw!r}") from None
    if not factor > 0:
        raise ValueError(f"QUADCYCLE_TOL must be a positive number, got {raw!r}")
    return TOL_CYCLE * factor


class RealRoot(NamedTuple):
    value: float
    multiplicity: int


@dataclass
class OracleResult:
    cycles: list[tuple[float, float, float]] = field(default_factory=list)
    multipliers: list[float] = field(default_factory=list)
    residual: float = 0.0
    repeated_roots: bool = False
    merged: bool = False


def compose3(m: QuadraticMap) -> Polynomial:
    g = m.as_polynomial()
    return g.compose(g.compose(g))


def period3_factor(m: QuadraticMap) -> Polynomial:
    """Degree-6 quotient ``(g^3(x) - x) / (g(x) - x)``."""
    identity = Polynomial.x()
    numerator = compose3(m) - identity
    quotient, remainder = divmod(numerator, m.as_polynomial() - identity)
    worst = max((abs(c) for c in remainder.coefficients), default=0.0)
    if worst > TOL_DIVISION * numerator.magnitude():
        raise DivisionResidual(f"remainder {worst:.3e} after dividing out the fixed points")
    return quotient


def _cauchy_bound(p: Polynomial) -> float:
    lead = p.leading
    return 1.0 + max(abs(c / lead) for c in p.coefficients[:-1])


def _is_repeated_root(p: Polynomial, second: Polynomial, x: float, k: int, tol_double: float) -> bool:
    """Whether the critical point ``x`` (a root of ``p'`` of multiplicity ``k``)
    is also a root of ``p``.

    For a simple critical point the two roots of ``p`` nearest to it (real or
    a conjugate pair) are about ``2 sqrt(2 |p(x)| / |p''(x)|)`` apart; they
    count as one repeated root when that is below ``tol_double``.
    """
    px = p(x)
    if px == 0.0:
        return True
    curvature = abs(second(x)) if k == 1 else 0.0
    if curvature == 0.0:
        return abs(px) <= TOL_ROOT * p.residual_scale(x)
    return 2.0 * math.sqrt(2.0 * abs(px) / curvature) <= tol_double * max(1.0, abs(x))


def real_roots(p: Polynomial, tol_double: float = TOL_DOUBLE) -> list[RealRoot]:
    """All real roots of ``p`` in ascending order, with multiplicities.

    The real roots of ``p'`` split the line into pieces on which ``p`` is
    monotone; each piece holds at most one simple root, bracketed by a sign
    change. A critical point where ``p`` itself (nearly) vanishes is a
    repeated root; ``tol_double`` is the relative distance below which two
    nearby roots are reported as one.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree <= 0:
        return []
    if p.degree == 1:
        return [RealRoot(-p[0] / p[1], 1)]

    critical = real_roots(p.derivative(), tol_double)
    bound = _cauchy_bound(p)
    found: list[RealRoot] = []
    at_critical = set()
    second = p.derivative().derivative()
    for i, (x, k) in enumerate(critical):
        if _is_repeated_root(p, second, x, k, tol_double):
            found.append(RealRoot(x, k + 1))
            at_critical.add(i)

    knots = [-bound] + [x for x, _ in critical] + [bound]
    for i in range(len(knots) - 1):
        # a repeated root at a knot already accounts for that end of the piece
        if (i - 1) in at_critical or i in at_critical:
            continue
        lo, hi = knots[i], knots[i + 1]
        flo, fhi = p(lo), p(hi)
        if flo != 0.0 and fhi != 0.0 and (flo < 0) != (fhi < 0):
            root = brentq(p, lo, hi, xtol=1e-15, rtol=4 * 2.2205e-16, maxiter=200, disp=False)
            found.append(RealRoot(newton_polish(p, root), 1))
    found.sort()
    return found


def _cluster(points: list[float], radius: float) -> list[float]:
    """Merge runs of sorted points closer than ``radius * max(1, |x|)``."""
    groups: list[list[float]] = []
    for x in sorted(points):
        if groups and x - groups[-1][-1] <= radius * max(1.0, abs(x)):
            groups[-1].append(x)
        else:
            groups.append([x])
    return [math.fsum(g) / len(g) for g in groups]


def _group_orbits(m: QuadraticMap, points: list[float], tol: float) -> list[tuple[float, float, float]]:
    def nearest(target: float) -> int:
        j = min(range(len(points)), key=lambda k: abs(points[k] - target))
        slack = tol * max(1.0, abs(target), abs(m.derivative(target)))
        if abs(points[j] - target) > slack:
            raise OrbitGroupingFailure(
                f"g-orbit of a period-3 point misses every root (target {target!r}) for {m}"
            )
        return j

    orbits = []
    unassigned = set(range(len(points)))
    while unassigned:
        i = min(unassigned)
        j = nearest(m(points[i]))
        k = nearest(m(points[j]))
        if nearest(m(points[k])) != i or len({i, j, k}) != 3 or not {j, k} <= unassigned:
            raise OrbitGroupingFailure(f"period-3 points of {m} do not group into orbits")
        unassigned -= {i, j, k}
        orbits.append((points[i], points[j], points[k]))
    return orbits


def find_cycles(m: QuadraticMap) -> OracleResult:
    """Period-3 orbits of ``m`` found from the roots of the degree-6 factor.

    Each cycle is reported in orbit order ``(x, g(x), g(g(x)))`` starting at
    its smallest point. When two cycles are nearly coincident (tiny positive
    delta) their roots may be resolved inconsistently; in that case nearby
    roots are merged with a growing radius and ``merged`` is set.
    """
    factor = period3_factor(m)
    roots = real_roots(factor)
    tol = cycle_tolerance()
    result = OracleResult(repeated_roots=any(r.multiplicity > 1 for r in roots))
    try:
        orbits = _group_orbits(m, [r.value for r in roots], tol)
    except OrbitGroupingFailure:
        orbits = None
    if orbits is None:
        # some close pairs were merged and others split: resolve every pair
        points = [r.value for r in real_roots(factor, tol_double=0.0)]
        try:
            orbits = _group_orbits(m, points, tol)
            result.repeated_roots = False
        except OrbitGroupingFailure:
            orbits = None
    if orbits is None:
        for radius in MERGE_RADII:
            try:
                orbits = _group_orbits(m, _cluster(points, radius), max(tol, 4.0 * radius))
            except OrbitGroupingFailure:
                continue
            result.merged = True
            break
        else:
            raise OrbitGroupingFailure(f"period-3 points of {m} do not group into orbits")
    if len(orbits) > 2:
        raise OrbitGroupingFailure(f"found {len(orbits)} 3-cycles for {m}; at most 2 exist")

    g3 = compose3(m)
    for triple in orbits:
        result.cycles.append(triple)
        result.multipliers.append(math.prod(m.derivative(x) for x in triple))
        result.residual = max([result.residual] + [abs(g3(x) - x) for x in triple])
    return result
