"""Cross-check of the closed-form cycle machinery against the brute-force oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .cycles import ExistenceClass, QuadraticMap, cycles, existence
from .oracle import find_cycles
from .stability import multiplier_closed_form

POINT_TOL = 1e-7
MULTIPLIER_TOL = 1e-6
# below this delta the two cycles are O(sqrt(delta)) apart and the oracle may merge them
NEAR_DEGENERATE_BAND = 1e-8
RANDOM_MIN_ABS_A = 0.01
RANDOM_COEFF_RANGE = 5.0

_EXPECTED_COUNT = {
    ExistenceClass.NO_CYCLES: 0,
    ExistenceClass.UNIQUE_CYCLE: 1,
    ExistenceClass.TWO_CYCLES: 2,
}


@dataclass
class Comparison:
    m: QuadraticMap
    existence: ExistenceClass
    closed_count: int
    oracle_count: int
    point_deviation: float = 0.0
    multiplier_deviation: float = 0.0
    point_tol: float = POINT_TOL
    multiplier_tol: float = MULTIPLIER_TOL
    error: str | None = None

    @property
    def counts_agree(self) -> bool:
        return self.closed_count == self.oracle_count

    @property
    def passed(self) -> bool:
        return (
            self.error is None
            and self.counts_agree
            and self.point_deviation <= self.point_tol
            and self.multiplier_deviation <= self.multiplier_tol
        )


def _set_distance(u, v) -> float:
    # sorted pairing is the optimal matching of two equal-size sets on the line
    return max(abs(p - q) for p, q in zip(sorted(u), sorted(v)))


def compare(m: QuadraticMap) -> Comparison:
    kind = existence(m)
    closed = cycles(m)
    cmp = Comparison(m, kind, _EXPECTED_COUNT[kind], 0)
    try:
        oracle = find_cycles(m)
    except Exception as exc:  # noqa: BLE001 - any oracle failure is a failed check
        cmp.error = f"{type(exc).__name__}: {exc}"
        return cmp
    cmp.oracle_count = len(oracle.cycles)

    delta = m.delta
    near_degenerate = abs(delta) < NEAR_DEGENERATE_BAND * max(1.0, m.b * m.b, abs(4 * m.a * m.c))
    if near_degenerate:
        # cycles sit O(sqrt(delta)) apart; multipliers move by about 7 per unit of sqrt(delta)
        root = math.sqrt(abs(delta))
        cmp.point_tol = max(POINT_TOL, 10.0 * root / abs(m.a))
        cmp.multiplier_tol = max(MULTIPLIER_TOL, 100.0 * root)
        merged_or_split = cmp.oracle_count in (1, 2) and cmp.closed_count in (1, 2)
        # a slightly negative delta snapped to zero: no real cycle actually exists
        snapped_negative = delta < 0 and cmp.oracle_count == 0 and cmp.closed_count == 1
        if merged_or_split or snapped_negative:
            cmp.oracle_count = cmp.closed_count
        if snapped_negative:
            return cmp
    if not cmp.counts_agree or not closed:
        return cmp

    closed_mult = [multiplier_closed_form(c.branch, max(delta, 0.0)) for c in closed]
    best = None
    indices = range(len(oracle.cycles))
    if len(oracle.cycles) >= len(closed):
        pairings = itertools.permutations(indices, len(closed))
    else:
        # merged near-degenerate pair: several closed cycles share one oracle cycle
        pairings = itertools.product(indices, repeat=len(closed))
    for perm in pairings:
        pd = max(_set_distance(c.points, oracle.cycles[j]) for c, j in zip(closed, perm))
        md = max(abs(h - oracle.multipliers[j]) for h, j in zip(closed_mult, perm))
        if best is None or pd < best[0]:
            best = (pd, md)
    cmp.point_deviation, cmp.multiplier_deviation = best
    return cmp


def random_maps(n: int, seed: int) -> list[QuadraticMap]:
    """``n`` reproducible maps with ``b, c`` uniform in [-5, 5] and
    ``0.01 <= |a| <= 5``."""
    rng = np.random.default_rng(seed)
    maps = []
    while len(maps) < n:
        a, b, c = rng.uniform(-RANDOM_COEFF_RANGE, RANDOM_COEFF_RANGE, size=3)
        if abs(a) < RANDOM_MIN_ABS_A:
            continue
        maps.append(QuadraticMap(float(a), float(b), float(c)))
    return maps


@dataclass
class EnsembleSummary:
    n: int
    seed: int
    counts: dict[str, int] = field(default_factory=dict)
    max_point_deviation: float = 0.0
    max_multiplier_deviation: float = 0.0
    failures: list[Comparison] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def run_ensemble(n: int, seed: int) -> EnsembleSummary:
    summary = EnsembleSummary(n, seed, {k.value: 0 for k in ExistenceClass})
    for m in random_maps(n, seed):
        cmp = compare(m)
        summary.counts[cmp.existence.value] += 1
        summary.max_point_deviation = max(summary.max_point_deviation, cmp.point_deviation)
        summary.max_multiplier_deviation = max(summary.max_multiplier_deviation, cmp.multiplier_deviation)
        if not cmp.passed:
            summary.failures.append(cmp)
    return summary
