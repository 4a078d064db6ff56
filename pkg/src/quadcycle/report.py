"""Aggregate analysis of one map into a JSON-ready report, and sweep rows for CSV."""

from __future__ import annotations

import csv
import math
from typing import IO, Iterable, Optional

from .cycles import Branch, QuadraticMap, cycle_points, cycle_polynomial, branches, existence
from .families import Family, family_map, thresholds
from .stability import classify_stability, delta_nh

SWEEP_HEADER = (
    "param",
    "delta",
    "existence",
    "multiplier_plus",
    "multiplier_minus",
    "verdict_plus",
    "verdict_minus",
    "plus_x1",
    "plus_x2",
    "plus_x3",
    "minus_x1",
    "minus_x2",
    "minus_x3",
)


def cycle_block(m: QuadraticMap, branch: Branch) -> dict:
    cyc = cycle_points(m, branch)
    poly = cycle_polynomial(m, branch)
    stab = classify_stability(m, branch)
    return {
        "branch": branch.value,
        "points": list(cyc.points),
        "cycle_polynomial": {"c2": poly.c2, "c1": poly.c1, "c0": poly.c0},
        "ratio": cyc.ratio,
        "multiplier": stab.multiplier,
        "hyperbolic": stab.hyperbolic,
        "verdict": stab.verdict.value,
    }


def analyze(m: QuadraticMap, family: Optional[Family] = None, parameter: Optional[float] = None) -> dict:
    """Full classification of ``m``.

    The key layout depends only on the existence class and on whether a
    family was given, so reports diff cleanly across runs.
    """
    delta = m.delta
    tol = m.degenerate_tolerance
    inputs: dict = {}
    if family is not None:
        inputs["family"] = family.value
        inputs["parameter"] = parameter
    inputs.update(a=m.a, b=m.b, c=m.c)
    report = {
        "input": inputs,
        "delta": delta,
        "degenerate_tolerance": tol,
        "delta_snapped_to_zero": delta != 0.0 and abs(delta) <= tol,
        "existence": existence(m).value,
        "cycles": [cycle_block(m, br) for br in branches(m)],
    }
    if family is not None:
        th = thresholds(family)
        report["thresholds"] = {
            "existence_boundary": list(th.existence_boundary),
            "stability_boundary": list(th.stability_boundary),
            "delta_nh": delta_nh(),
        }
    return report


def sweep_grid(start: float, stop: float, step: float) -> list[float]:
    """``start, start + step, ...`` up to ``stop`` inclusive; empty when ``stop < start``."""
    if not step > 0 or not math.isfinite(step):
        raise ValueError("step must be a positive finite number")
    if stop < start:
        return []
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".12g")


def sweep_row(family: Family, parameter: float) -> list[str]:
    """One CSV row. A degenerate cycle fills the ``plus`` columns and leaves
    the ``minus`` columns empty."""
    m = family_map(family, parameter)
    blocks = {b.value: cycle_block(m, b) for b in branches(m)}
    plus = blocks.get(Branch.PLUS_DELTA.value) or blocks.get(Branch.DEGENERATE.value)
    minus = blocks.get(Branch.MINUS_DELTA.value)

    def pick(block, key):
        return None if block is None else block[key]

    row = [
        _fmt(parameter),
        _fmt(m.delta),
        existence(m).value,
        _fmt(pick(plus, "multiplier")),
        _fmt(pick(minus, "multiplier")),
        pick(plus, "verdict") or "",
        pick(minus, "verdict") or "",
    ]
    for block in (plus, minus):
        pts = block["points"] if block else (None, None, None)
        row.extend(_fmt(x) for x in pts)
    return row


def write_sweep(out: IO[str], family: Family, grid: Iterable[float]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for value in grid:
        writer.writerow(sweep_row(family, value))
