import math

import numpy as np
import pytest

from quadcycle import oracle
from quadcycle.cycles import Branch, QuadraticMap, cycle_points, cycle_polynomial, cycles
from quadcycle.errors import DivisionResidual
from quadcycle.families import from_logistic
from quadcycle.oracle import RealRoot, compose3, cycle_tolerance, find_cycles, period3_factor, real_roots
from quadcycle.polynomial import Polynomial
from quadcycle.stability import degenerate_factorization, multiplier_closed_form


def assert_poly_close(p, q, tol):
    n = max(len(p), len(q))
    pc = list(p.coefficients) + [0.0] * (n - len(p))
    qc = list(q.coefficients) + [0.0] * (n - len(q))
    assert pc == pytest.approx(qc, abs=tol)


# -- composition -------------------------------------------------------------------


def test_compose3_of_square():
    g3 = compose3(QuadraticMap(1.0, 0.0, 0.0))
    assert g3.coefficients == (0.0,) * 8 + (1.0,)


def test_compose3_constant_term():
    assert compose3(QuadraticMap(1.0, 0.0, -2.0))(0.0) == 2.0


def test_compose3_pointwise():
    m = QuadraticMap(-0.7, 1.3, 0.4)
    g3 = compose3(m)
    for x in np.linspace(-2, 2, 17):
        assert g3(x) == pytest.approx(m(m(m(x))), rel=1e-12, abs=1e-12)


# -- period-3 factor ---------------------------------------------------------------------


def test_factor_at_zero_delta_is_square():
    m = QuadraticMap(1.0, 0.0, -1.75)
    p2 = degenerate_factorization(m).p2
    # the degree-6 factor has leading a^6 = 1 and p2 has leading 8 a^3
    assert_poly_close(period3_factor(m), p2 * p2 * (1.0 / 64.0), 1e-12)


@pytest.mark.parametrize("a, b, c", [(1.0, 0.0, -2.0), (-1.3, 0.8, 2.1), (0.4, -1.0, -4.0)])
def test_factor_splits_into_cycle_polynomials(a, b, c):
    m = QuadraticMap(a, b, c)
    assert m.delta > 0
    plus = cycle_polynomial(m, Branch.PLUS_DELTA).as_polynomial()
    minus = cycle_polynomial(m, Branch.MINUS_DELTA).as_polynomial()
    expected = plus * minus * a**6
    assert_poly_close(period3_factor(m), expected, 1e-9 * expected.magnitude())


def test_factor_has_no_real_roots_when_delta_negative():
    m = QuadraticMap(1.0, 0.0, 0.0)
    assert real_roots(period3_factor(m)) == []
    assert find_cycles(m).cycles == []


def test_factor_division_residual_is_checked(monkeypatch):
    monkeypatch.setattr(oracle, "TOL_DIVISION", -1.0)
    with pytest.raises(DivisionResidual):
        period3_factor(QuadraticMap(1.0, 0.0, -2.0))


# -- real roots ------------------------------------------------------------------------------


def test_real_roots_simple():
    roots = real_roots(Polynomial([-1, 0, 1]))
    assert [r.value for r in roots] == pytest.approx([-1.0, 1.0], abs=1e-14)
    assert all(r.multiplicity == 1 for r in roots)


def test_real_roots_double():
    assert real_roots(Polynomial([1, -2, 1])) == [RealRoot(1.0, 2)]


def test_real_roots_of_x2_minus_2_factor():
    factor = period3_factor(QuadraticMap(1.0, 0.0, -2.0))
    roots = real_roots(factor)
    assert len(roots) == 6
    companion = sorted(np.roots(factor.coefficients[::-1]).real)
    assert [r.value for r in roots] == pytest.approx(companion, abs=1e-9)
    # closed form: 2 cos(2 pi k / 9) and 2 cos(2 pi k / 7), less the fixed points
    expected = sorted(
        [2 * math.cos(2 * math.pi * k / 9) for k in (1, 2, 4)] + [2 * math.cos(2 * math.pi * k / 7) for k in (1, 2, 3)]
    )
    assert [r.value for r in roots] == pytest.approx(expected, abs=1e-12)


# -- find_cycles ------------------------------------------------------------------------------


def test_find_cycles_degenerate_offset():
    result = find_cycles(QuadraticMap(1.0, 0.0, -1.75))
    assert len(result.cycles) == 1
    assert result.repeated_roots
    closed = cycle_points(QuadraticMap(1.0, 0.0, -1.75), Branch.DEGENERATE).points
    assert sorted(result.cycles[0]) == pytest.approx(sorted(closed), abs=1e-6)
    assert result.multipliers[0] == pytest.approx(1.0, abs=1e-5)


def test_find_cycles_none_for_square():
    assert find_cycles(QuadraticMap(1.0, 0.0, 0.0)).cycles == []


def test_find_cycles_logistic_four():
    result = find_cycles(from_logistic(4.0))
    assert len(result.cycles) == 2
    assert sorted(result.multipliers) == pytest.approx([-8.0, 8.0], abs=1e-9)
    for triple in result.cycles:
        assert triple[0] == min(triple)


def test_find_cycles_orbit_order():
    m = QuadraticMap(-1.3, 0.8, 2.1)
    for x, y, z in find_cycles(m).cycles:
        assert m(x) == pytest.approx(y, abs=1e-9)
        assert m(y) == pytest.approx(z, abs=1e-9)
        assert m(z) == pytest.approx(x, abs=1e-9)


@pytest.mark.parametrize("small", [1e-4, 1e-6])
def test_find_cycles_near_degenerate(small):
    m = QuadraticMap(1.0, 0.0, -1.75 - small / 4)
    result = find_cycles(m)
    assert len(result.cycles) == 2
    closed = sorted(multiplier_closed_form(c.branch, m.delta) for c in cycles(m))
    assert sorted(result.multipliers) == pytest.approx(closed, abs=1e-6)


def test_conjugate_maps_share_multipliers():
    # x -> s x + t conjugates x^2 - 2 to a map with the same delta and multipliers
    base = QuadraticMap(1.0, 0.0, -2.0)
    s, t = 0.5, 1.2
    # h(x) = s x + t, h^{-1} g h (x) = (g(s x + t) - t) / s
    conj = QuadraticMap(s, 2 * t, (t * t - 2 - t) / s)
    assert conj.delta == pytest.approx(base.delta, abs=1e-12)
    a = sorted(find_cycles(base).multipliers)
    b = sorted(find_cycles(conj).multipliers)
    assert a == pytest.approx(b, abs=1e-9)


def test_cycle_tolerance_env(monkeypatch):
    monkeypatch.delenv("QUADCYCLE_TOL", raising=False)
    assert cycle_tolerance() == 1e-8
    monkeypatch.setenv("QUADCYCLE_TOL", "10")
    assert cycle_tolerance() == pytest.approx(1e-7)
