"""Tests for truncated power series and the named q-functions"""

import cmath

import mpmath
import pytest

from src.core.coeffield import EXACT, NumericField
from src.core.errors import NonConvergent, PoleHit
from src.core.qfunctions import (
    BIGEQ,
    EQ,
    LI2Q,
    LOGQ,
    PowerSeries,
    eq32_check,
    gaussian_factorization,
    hybrid_identities,
    in_base,
    limit_check_q1,
    numeric_eval,
    phi10,
    phi10_a_derivative,
    qleibniz_check,
    series_of,
    series_sum,
)


def test_exponentials_are_mutually_inverse():
    product = series_of(EQ, EXACT, 10) * series_of(BIGEQ, EXACT, 10).dilate(-1)
    assert product == PowerSeries.constant(EXACT, 1).as_series(10)


def test_dilation_rule_of_small_exponential():
    F = EXACT
    e = series_of(EQ, F, 8)
    assert e.dilate(F.q) == PowerSeries.polynomial(F, [1, -1]) * e


def test_log_q_derivative_is_geometric():
    F = EXACT
    lhs = series_of(LOGQ, F, 9).qderiv() * (F.one - F.q)
    assert lhs == PowerSeries.geometric(F, 8)


def test_log_q_is_minus_parameter_derivative_of_phi10():
    assert phi10_a_derivative(EXACT, 1, 8) * -1 == series_of(LOGQ, EXACT, 8)


def test_phi10_at_zero_parameter_is_small_exponential():
    assert series_of(phi10(0), EXACT, 8) == series_of(EQ, EXACT, 8)


def test_base_power_series_uses_q_squared():
    F = EXACT
    e2 = series_of(in_base(EQ, 2), F, 4)
    assert e2[1] == F.one / (F.one - F.qpow(2))


def test_qleibniz_on_exact_series():
    F = EXACT
    report = qleibniz_check(series_of(EQ, F, 8), series_of(LOGQ, F, 8))
    assert report["success"]


def test_gaussian_factorization_exact_and_numeric():
    assert gaussian_factorization(EXACT, 10)["success"]
    assert gaussian_factorization(NumericField(0.4), 10)["success"]


def test_polynomial_survives_truncation_rules():
    p = PowerSeries.polynomial(EXACT, [1, 2, 3])
    assert p.degree() == 2
    assert p[7] == EXACT.zero
    with pytest.raises(IndexError):
        series_of(EQ, EXACT, 3)[4]


@pytest.mark.parametrize("z", [0.0, 0.3, -0.7, 0.2 + 0.4j])
def test_product_forms_against_mpmath(z):
    q = 0.5
    assert abs(numeric_eval(EQ, z, q) - 1 / complex(mpmath.qp(z, q))) < 1e-12
    assert abs(numeric_eval(BIGEQ, z, q) - complex(mpmath.qp(-z, q))) < 1e-12


@pytest.mark.parametrize("z", [0.1, -0.4, 0.6])
def test_series_and_product_forms_agree(z):
    q = 0.3
    assert abs(series_sum(EQ, z, q) - numeric_eval(EQ, z, q)) < 1e-12
    assert abs(series_sum(BIGEQ, z, q) - numeric_eval(BIGEQ, z, q)) < 1e-12


def test_radius_one_series_refuse_large_argument():
    with pytest.raises(NonConvergent):
        series_sum(LOGQ, 1.5, 0.5)


def test_small_exponential_pole_is_reported():
    with pytest.raises(PoleHit):
        numeric_eval(EQ, 1 / 0.5**2, 0.5)


def test_numeric_evaluation_needs_q_inside_unit_interval():
    with pytest.raises(NonConvergent):
        numeric_eval(LI2Q, 0.1, 1.2)


def test_li2q_is_log_of_small_exponential():
    q, z = 0.5, 0.3
    assert abs(series_sum(LI2Q, z, q) - cmath.log(numeric_eval(EQ, z, q))) < 1e-12


def test_hybrid_identities_hold_at_half():
    report = hybrid_identities(0.5)
    assert report["success"], report["checks"]
    assert set(report["checks"]) == {"eq89", "eq108", "eq109", "eq111", "eq112"}


@pytest.mark.parametrize("which", ["eq", "bigEq", "logq", "li2q"])
def test_classical_limits_are_approached(which):
    report = limit_check_q1(which, 0.5)
    assert report["monotone"]
    assert report["final_below_tol"]


def test_tail_sum_identity():
    assert eq32_check(0.5, 0.3)["success"]
    assert not eq32_check(0.5, 1.2)["success"]
