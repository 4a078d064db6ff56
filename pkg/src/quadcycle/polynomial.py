"""Real polynomials in ascending coefficient order, plus the two polynomial
families that parametrize 3-cycles of quadratic maps.

``Q(beta)`` is the monic cubic ``X^3 + (1-beta) X^2 - (2+beta) X - 1``. For every
real ``beta`` its roots are real and separated by -1 and 0, which is what makes
it a convenient chart for the ratio between successive distances of a cycle.
``P(alpha)`` is the degree-6 polynomial ``Q0^2 - alpha X^2 (X+1)^2``; for
``alpha >= 0`` it factors as ``Q(sqrt(alpha)) * Q(-sqrt(alpha))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from scipy.optimize import brentq

from .errors import ComplexRoots, NotCubic, PoleAtExcludedPoint

TOL_RESID = 1e-10
TOL_DOMAIN = 1e-12
TOL_DISC = 1e-12

Number = Union[int, float]


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with real coefficients, lowest degree first.

    Trailing zero coefficients are stripped on construction, so the leading
    coefficient is nonzero unless the polynomial is identically zero (empty
    coefficient tuple, degree -1).
    """

    coefficients: tuple[float, ...]

    def __init__(self, coefficients: Sequence[Number]):
        coeffs = [float(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def zero(cls) -> Polynomial:
        return cls(())

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0.0, 1.0))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> float:
        return self.coefficients[-1] if self.coefficients else 0.0

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> float:
        return self.coefficients[k]

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coefficients])

    def __add__(self, other: Polynomial | Number) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self), len(other))
        a = self.coefficients + (0.0,) * (n - len(self))
        b = other.coefficients + (0.0,) * (n - len(other))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other: Polynomial | Number) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Number) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other: Polynomial | Number) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coefficients])
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        out = []
        for k in range(len(self) + len(other) - 1):
            lo = max(0, k - len(other) + 1)
            hi = min(k, len(self) - 1)
            out.append(math.fsum(self[i] * other[k - i] for i in range(lo, hi + 1)))
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial((1.0,))
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        return poly_divmod(self, divisor)

    def compose(self, inner: Polynomial) -> Polynomial:
        """Return ``self(inner(x))`` by Horner's scheme on polynomials."""
        result = Polynomial.zero()
        for c in reversed(self.coefficients):
            result = result * inner + c
        return result

    def derivative(self) -> Polynomial:
        return Polynomial([k * c for k, c in enumerate(self.coefficients)][1:])

    def magnitude(self) -> float:
        """Largest absolute coefficient (1.0 for the zero polynomial)."""
        return max((abs(c) for c in self.coefficients), default=1.0) or 1.0

    def residual_scale(self, x: float) -> float:
        """``sum |c_k| |x|^k``: the natural size of ``p(x)`` in floating point."""
        ax = abs(x)
        s = 0.0
        for c in reversed(self.coefficients):
            s = s * ax + abs(c)
        return max(s, 1.0)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coefficients)!r})"


def _as_poly(p: Polynomial | Number) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial((p,))


def evaluate(p: Polynomial, x: float) -> float:
    """Horner evaluation of ``p`` at ``x``."""
    acc = 0.0
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def poly_divmod(numerator: Polynomial, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division returning ``(quotient, remainder)``.

    Each quotient coefficient is formed with a compensated sum over all the
    contributions to the running remainder instead of updating it in place.
    """
    if divisor.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    n, d = list(numerator.coefficients), divisor.coefficients
    m = len(d) - 1
    if len(n) - 1 < m:
        return Polynomial.zero(), numerator
    qlen = len(n) - m
    q = [0.0] * qlen
    for k in range(qlen - 1, -1, -1):
        # coefficient of x^(k+m) after subtracting the higher quotient terms
        terms = [n[k + m]] + [-q[j] * d[k + m - j] for j in range(k + 1, qlen) if k + m - j >= 0]
        q[k] = math.fsum(terms) / d[m]
    rem = []
    for i in range(m):
        terms = [n[i]] + [-q[j] * d[i - j] for j in range(qlen) if 0 <= i - j <= m]
        rem.append(math.fsum(terms))
    return Polynomial(q), Polynomial(rem)


class RealCubicRoots(NamedTuple):
    """Three real roots in ascending order."""

    q1: float
    q2: float
    q3: float


def q_beta(beta: float) -> Polynomial:
    return Polynomial((-1.0, -(2.0 + beta), 1.0 - beta, 1.0))


def p_alpha(alpha: float) -> Polynomial:
    return Polynomial((1.0, 4.0, 2.0 - alpha, -2.0 * (alpha + 3.0), -(alpha + 3.0), 2.0, 1.0))


Q0 = q_beta(0.0)


def _cbrt(v: float) -> float:
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def newton_polish(p: Polynomial, x: float, max_iter: int = 8) -> float:
    """A few Newton steps on ``p`` from ``x``, stopping as soon as the
    residual stops decreasing."""
    dp = p.derivative()
    fx = p(x)
    for _ in range(max_iter):
        if fx == 0.0:
            break
        slope = dp(x)
        if slope == 0.0:
            break
        xn = x - fx / slope
        fn = p(xn)
        if abs(fn) >= abs(fx):
            break
        x, fx = xn, fn
    return x


def solve_cubic_real(p: Polynomial) -> RealCubicRoots:
    """Ascending real roots of a cubic known to have three real roots.

    Uses the trigonometric form when the discriminant is clearly positive.
    Near a repeated root the trigonometric form is ill-conditioned, so one
    real root is taken from Cardano's formula, polished, and the remaining
    quadratic is solved after deflation.

    Raises NotCubic for degree != 3 and ComplexRoots when the discriminant
    is negative beyond tolerance.
    """
    if p.degree != 3:
        raise NotCubic(f"expected a cubic, got degree {p.degree}")
    c0, c1, c2, c3 = p.coefficients
    A, B, C = c2 / c3, c1 / c3, c0 / c3
    shift = A / 3.0
    P = B - A * A / 3.0
    Q = 2.0 * A**3 / 27.0 - A * B / 3.0 + C
    disc = -(4.0 * P**3 + 27.0 * Q * Q)
    scale = max(4.0 * abs(P) ** 3, 27.0 * Q * Q, 1e-300)
    if disc < -TOL_DISC * scale:
        raise ComplexRoots(f"cubic discriminant {disc:.3e} is negative")

    if disc > TOL_DISC * scale:
        m = 2.0 * math.sqrt(-P / 3.0)
        arg = 3.0 * Q / (P * m)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        ts = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
    else:
        depressed = Polynomial((Q, P, 0.0, 1.0))
        inner = math.sqrt(max(0.0, Q * Q / 4.0 + P**3 / 27.0))
        t0 = _cbrt(-Q / 2.0 + inner) + _cbrt(-Q / 2.0 - inner)
        t0 = newton_polish(depressed, t0)
        # t^3 + P t + Q = (t - t0)(t^2 + t0 t + (P + t0^2))
        qb, qc = t0, P + t0 * t0
        sq = math.sqrt(max(0.0, qb * qb - 4.0 * qc))
        ts = [t0, (-qb - sq) / 2.0, (-qb + sq) / 2.0]

    roots = sorted(newton_polish(p, t - shift) for t in ts)
    return RealCubicRoots(*roots)


def _bracketed_q_roots(beta: float) -> RealCubicRoots:
    q = q_beta(beta)
    bound = 1.0 + max(abs(1.0 - beta), abs(2.0 + beta), 1.0)
    brackets = ((-bound, -1.0), (-1.0, 0.0), (0.0, bound))
    roots = [brentq(q, lo, hi, xtol=1e-15, rtol=4 * 2.2205e-16) for lo, hi in brackets]
    return RealCubicRoots(*(newton_polish(q, r) for r in roots))


def solve_q_beta(beta: float) -> RealCubicRoots:
    """Roots ``q1 < -1 < q2 < 0 < q3`` of ``Q(beta)``."""
    q = q_beta(beta)
    try:
        roots = solve_cubic_real(q)
    except ComplexRoots:
        return _bracketed_q_roots(beta)
    q1, q2, q3 = roots
    ordered = q1 < -1.0 < q2 < 0.0 < q3
    if ordered and all(abs(q(r)) <= TOL_RESID * q.residual_scale(r) for r in roots):
        return roots
    return _bracketed_q_roots(beta)


def h_ratio(r: float) -> float:
    """``Q0(r) / (r (r + 1))``; the value of beta for which ``r`` is a root of Q(beta)."""
    if abs(r) <= TOL_DOMAIN or abs(r + 1.0) <= TOL_DOMAIN:
        raise PoleAtExcludedPoint(f"ratio {r!r} is at an excluded point (0 or -1)")
    return Q0(r) / (r * (r + 1.0))
