"""The two classical one-parameter families: ``x^2 + c`` and ``lambda x (1 - x)``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .cycles import QuadraticMap
from .errors import DegenerateFamily, InvalidMap
from .stability import delta_nh


class Family(str, enum.Enum):
    OFFSET = "offset"
    LOGISTIC = "logistic"


@dataclass(frozen=True)
class FamilyThresholds:
    """Parameter values where ``delta = 0`` (cycles appear) and where
    ``delta = delta_nh`` (the stable cycle loses stability)."""

    family: Family
    existence_boundary: tuple[float, ...]
    stability_boundary: tuple[float, ...]


def from_offset(c: float) -> QuadraticMap:
    """``x^2 + c``; its perturbed discriminant is ``-4c - 7``."""
    return QuadraticMap(1.0, 0.0, c)


def from_logistic(lam: float) -> QuadraticMap:
    """``lam x (1 - x)``; its perturbed discriminant is ``lam^2 - 2 lam - 7``."""
    if lam == 0:
        raise DegenerateFamily("lambda = 0 gives a constant map")
    try:
        return QuadraticMap(-lam, lam, 0.0)
    except InvalidMap as exc:
        raise DegenerateFamily(str(exc)) from exc


def family_map(family: Family, parameter: float) -> QuadraticMap:
    if family is Family.OFFSET:
        return from_offset(parameter)
    return from_logistic(parameter)


def thresholds(family: Family) -> FamilyThresholds:
    dnh = delta_nh()
    if family is Family.OFFSET:
        return FamilyThresholds(family, (-7.0 / 4.0,), (-(7.0 + dnh) / 4.0,))
    r0 = 2.0 * math.sqrt(2.0)
    rnh = math.sqrt(8.0 + dnh)
    return FamilyThresholds(family, (1.0 - r0, 1.0 + r0), (1.0 - rnh, 1.0 + rnh))
