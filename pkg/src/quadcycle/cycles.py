"""Existence and closed-form location of 3-cycles of ``g(x) = a x^2 + b x + c``.

Everything is driven by the perturbed discriminant ``delta = b^2 - 4ac - 2b - 7``:
no cycles when it is negative, one degenerate cycle when it vanishes, and two
cycles (tagged ``PLUS_DELTA`` and ``MINUS_DELTA``) when it is positive. The
cycle points are ``(-b + beta + 1)/(2a) + 1/(a q_i)`` where ``q_i`` are the
ascending roots of ``Q(beta)`` and ``beta`` is ``+sqrt(delta)``, ``-sqrt(delta)``
or 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    BranchMismatch,
    DegenerateTriple,
    InvalidMap,
    NoCycleExists,
    PoleAtExcludedPoint,
)
from .polynomial import TOL_DOMAIN, Polynomial, h_ratio, solve_q_beta

TOL_SEP = 1e-10
TOL_CYCLE = 1e-8
TOL_ROUNDTRIP = 1e-9
DEGENERATE_RTOL = 1e-9


class ExistenceClass(str, enum.Enum):
    NO_CYCLES = "NoCycles"
    UNIQUE_CYCLE = "UniqueCycle"
    TWO_CYCLES = "TwoCycles"


class Branch(str, enum.Enum):
    PLUS_DELTA = "PlusDelta"
    MINUS_DELTA = "MinusDelta"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class QuadraticMap:
    """The map ``x -> a x^2 + b x + c`` with ``a != 0``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidMap(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if abs(self.a) <= TOL_DOMAIN:
            raise InvalidMap("a must be nonzero")

    def __call__(self, x: float) -> float:
        return (self.a * x + self.b) * x + self.c

    def derivative(self, x: float) -> float:
        return 2.0 * self.a * x + self.b

    def iterate(self, x: float, n: int = 3) -> float:
        for _ in range(n):
            x = self(x)
        return x

    def as_polynomial(self) -> Polynomial:
        return Polynomial((self.c, self.b, self.a))

    @property
    def delta(self) -> float:
        return perturbed_discriminant(self)

    @property
    def degenerate_tolerance(self) -> float:
        """Band around zero inside which ``delta`` is treated as exactly 0."""
        return DEGENERATE_RTOL * max(1.0, self.b * self.b, abs(4.0 * self.a * self.c))


def perturbed_discriminant(m: QuadraticMap) -> float:
    return m.b * m.b - 4.0 * m.a * m.c - 2.0 * m.b - 7.0


def classify_existence(delta: float, tol: float = DEGENERATE_RTOL) -> ExistenceClass:
    """Number of 3-cycles from the sign of ``delta``; ``|delta| <= tol`` counts as zero."""
    if abs(delta) <= tol:
        return ExistenceClass.UNIQUE_CYCLE
    return ExistenceClass.TWO_CYCLES if delta > 0 else ExistenceClass.NO_CYCLES


def existence(m: QuadraticMap) -> ExistenceClass:
    return classify_existence(m.delta, m.degenerate_tolerance)


def branches(m: QuadraticMap) -> tuple[Branch, ...]:
    """The branches that exist for ``m``, PLUS_DELTA first."""
    kind = existence(m)
    if kind is ExistenceClass.TWO_CYCLES:
        return (Branch.PLUS_DELTA, Branch.MINUS_DELTA)
    if kind is ExistenceClass.UNIQUE_CYCLE:
        return (Branch.DEGENERATE,)
    return ()


def branch_beta(m: QuadraticMap, branch: Branch) -> float:
    """Parameter of the Q polynomial whose roots generate ``branch``.

    Raises NoCycleExists for negative delta and BranchMismatch when the branch
    does not match the degenerate/non-degenerate state of the map.
    """
    delta, tol = m.delta, m.degenerate_tolerance
    if delta < -tol:
        raise NoCycleExists(f"delta = {delta!r} < 0: the map has no 3-cycles")
    degenerate = abs(delta) <= tol
    if degenerate != (branch is Branch.DEGENERATE):
        state = "zero" if degenerate else "positive"
        raise BranchMismatch(f"branch {branch.value} does not exist when delta is {state} ({delta!r})")
    if degenerate:
        return 0.0
    root = math.sqrt(delta)
    return root if branch is Branch.PLUS_DELTA else -root


@dataclass(frozen=True)
class ThreeCycle:
    """A 3-cycle stored through its canonical representative.

    ``points[i]`` is built from the i-th smallest root of the branch's Q
    polynomial, and ``g(points[0]) = points[1]``, ``g(points[1]) = points[2]``.
    """

    branch: Branch
    points: tuple[float, float, float]

    @property
    def ratio(self) -> float:
        x, y, z = self.points
        return (z - y) / (y - x)

    def closure_residual(self, m: QuadraticMap) -> float:
        x1, x2, x3 = self.points
        return max(abs(m(x1) - x2), abs(m(x2) - x3), abs(m(x3) - x1))

    def period3_residual(self, m: QuadraticMap) -> float:
        return max(abs(m.iterate(x, 3) - x) for x in self.points)

    def min_separation(self) -> float:
        x1, x2, x3 = self.points
        return min(abs(x1 - x2), abs(x2 - x3), abs(x1 - x3))


def cycle_points(m: QuadraticMap, branch: Branch) -> ThreeCycle:
    beta = branch_beta(m, branch)
    q = solve_q_beta(beta)
    base = (1.0 + beta - m.b) / (2.0 * m.a)
    points = tuple(base + 1.0 / (m.a * qi) for qi in q)
    return ThreeCycle(branch, points)


def cycles(m: QuadraticMap) -> list[ThreeCycle]:
    return [cycle_points(m, br) for br in branches(m)]


@dataclass(frozen=True)
class CyclePolynomial:
    """Monic cubic ``X^3 + c2 X^2 + c1 X + c0`` whose roots are a cycle's points."""

    c2: float
    c1: float
    c0: float

    def as_polynomial(self) -> Polynomial:
        return Polynomial((self.c0, self.c1, self.c2, 1.0))


def cycle_polynomial(m: QuadraticMap, branch: Branch) -> CyclePolynomial:
    a, b = m.a, m.b
    beta = branch_beta(m, branch)
    # sign convention: upper signs (s = +sqrt(delta)) for PLUS_DELTA
    delta = beta * beta
    c2 = (3.0 * b + 1.0 - beta) / (2.0 * a)
    c1 = (3.0 * b * b + 2.0 * b - 9.0 - delta - 2.0 * (b + 1.0) * beta) / (4.0 * a * a)
    c0 = (
        beta * delta
        + (1.0 - b) * delta
        - (b * b + 2.0 * b - 7.0) * beta
        + b**3
        + b * b
        - 9.0 * b
        - 1.0
    ) / (8.0 * a**3)
    return CyclePolynomial(c2, c1, c0)


def _check_distinct(x: float, y: float, z: float) -> None:
    scale = max(1.0, abs(x), abs(y), abs(z))
    if min(abs(x - y), abs(y - z), abs(x - z)) <= TOL_SEP * scale:
        raise DegenerateTriple(f"points {(x, y, z)!r} are not pairwise distinct")


def map_from_triple(x: float, y: float, z: float) -> QuadraticMap:
    """The unique quadratic map with ``x -> y -> z -> x``.

    Obtained by solving the three interpolation conditions; the sign of the
    ``b`` numerator below is the one that actually satisfies them.
    """
    _check_distinct(x, y, z)
    den = (y - z) * (x - z) * (x - y)
    a = (x * x + y * y + z * z - x * y - x * z - y * z) / den
    b = -(x**3 + y**3 + z**3 - x * x * z - x * y * y - y * z * z) / den
    c = (x**3 * y + x * z**3 + y**3 * z - y * y * z * z - x * x * y * y - x * x * z * z) / den
    return QuadraticMap(a, b, c)


@dataclass(frozen=True)
class TCoordinates:
    """Chart ``(x, p, r)`` of an ordered triple: base point, first step, and
    ratio between successive distances."""

    x: float
    p: float
    r: float

    def __post_init__(self):
        if self.p == 0.0:
            raise DegenerateTriple("first difference p must be nonzero")
        if self.r == 0.0 or self.r == -1.0:
            raise DegenerateTriple(f"ratio r = {self.r!r} is excluded (0 or -1)")


def t_forward(x: float, y: float, z: float) -> TCoordinates:
    _check_distinct(x, y, z)
    return TCoordinates(x, y - x, (z - y) / (y - x))


def t_inverse(t: TCoordinates) -> tuple[float, float, float]:
    y = t.x + t.p
    return (t.x, y, y + t.p * t.r)


def p_x_from_r(m: QuadraticMap, r: float) -> tuple[float, float]:
    """First step ``p`` and base point ``x`` of the representative with ratio ``r``.

    Only a genuine cycle when ``r`` is a root of ``P(delta)``.
    """
    if abs(r) <= TOL_DOMAIN or abs(r + 1.0) <= TOL_DOMAIN:
        raise PoleAtExcludedPoint(f"ratio {r!r} is at an excluded point (0 or -1)")
    rr1 = r * (r + 1.0)
    p = -(r * r + r + 1.0) / (m.a * rr1)
    x = -m.b / (2.0 * m.a) + (r**3 + 2.0 * r * r + r + 1.0) / (2.0 * m.a * rr1)
    return p, x


def classify_branch_from_ratio(r: float, tol: float = DEGENERATE_RTOL) -> Branch:
    """Branch of a cycle from the ratio of one of its representatives.

    ``h(r)`` equals the signed ``beta`` of the cycle, and ``h`` is increasing on
    each piece of its domain, so the sign of ``h(r)`` picks the branch.
    """
    beta = h_ratio(r)
    if abs(beta) <= tol:
        return Branch.DEGENERATE
    return Branch.PLUS_DELTA if beta > 0 else Branch.MINUS_DELTA
