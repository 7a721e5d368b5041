"""Tests for Jackson integrals, q-Gaussian moments and translation invariance"""

import mpmath
import pytest

from src.core.coeffield import EXACT
from src.core.errors import AlgebraMismatch, DivergentUpperTail, MissingSample, TailNotConverged
from src.core.jackson import (
    JacksonConfig,
    QGridFunction,
    b_q,
    gamma_invariance_check,
    jackson_0_to,
    jackson_0_to_x,
    jackson_interval,
    jackson_realline,
    moment_closed_form,
    moments_check,
    qtaylor,
    translation_invariance_finite,
    translation_invariance_infinite,
)
from src.core.ncalg import QPLANE, NCElement
from src.core.qfunctions import EQ, PowerSeries, gauss_g, series_of

Q = 0.5


def test_exact_integral_of_monomial():
    F = EXACT
    result = jackson_0_to_x(PowerSeries.monomial(F, 2))
    assert result.is_polynomial
    assert result[3] == (F.one - F.q) / (F.one - F.qpow(3))
    assert result[2] == F.zero


def test_numeric_integral_of_square():
    value = jackson_0_to(lambda t: t * t, 1.0, Q)
    assert abs(value - (1 - Q) / (1 - Q**3)) < 1e-14


def test_interval_is_difference_of_half_lines():
    assert abs(jackson_interval(lambda t: t, -1.0, 1.0, Q)) < 1e-14
    assert abs(jackson_interval(lambda t: 1.0, 0.0, 2.0, Q) - 2.0) < 1e-13


def test_short_window_does_not_converge():
    with pytest.raises(TailNotConverged):
        jackson_0_to(lambda t: 1.0, 1.0, Q, JacksonConfig(max_window=3))


def test_config_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        JacksonConfig(tail_tol=0)
    with pytest.raises(ValueError):
        JacksonConfig(max_window=0)


@pytest.mark.parametrize("q", [0.2, 0.5, 0.8])
def test_b_q_against_mpmath(q):
    expected = (1 - q) * mpmath.qp(q, q) * mpmath.qp(-q, q) * mpmath.qp(-1, q)
    assert abs(b_q(q) - float(expected)) < 1e-12


@pytest.mark.parametrize("kind", ["69", "126"])
def test_gaussian_moments_match_closed_forms(kind):
    report = moments_check(kind, range(5), Q)
    assert report["success"], report
    assert [row["m"] for row in report["rows"]] == list(range(5))


def test_odd_moments_vanish_and_unknown_kind_fails():
    assert moment_closed_form("69", 3, Q) == 0
    with pytest.raises(ValueError):
        moment_closed_form("70", 2, Q)
    assert not moments_check("70", range(2), Q)["success"]


def test_real_line_sum_does_not_depend_on_anchor_shift():
    report = gamma_invariance_check(lambda t: gauss_g(t, Q), 0.8, Q)
    assert report["success"], report


def test_grid_function_lattice_checks():
    with pytest.raises(ValueError):
        QGridFunction(0.0, Q)
    grid = QGridFunction.from_function(lambda t: gauss_g(t, Q), Q, window=(40, 60))
    assert grid.window == (40, 60)
    with pytest.raises(MissingSample):
        grid.sample(1, 61)
    with pytest.raises(AlgebraMismatch):
        jackson_realline(grid, 0.7, Q)


def test_grid_function_matches_callable_integral():
    func = lambda t: gauss_g(t, Q)  # noqa: E731
    grid = QGridFunction.from_function(func, Q, window=(60, 80))
    assert abs(jackson_realline(grid, 1.0, Q) - jackson_realline(func, 1.0, Q)) < 1e-12


def test_lattice_qderiv_of_square():
    grid = QGridFunction.from_function(lambda t: t * t, Q, window=(0, 5), include_zero=False)
    derivative = grid.qderiv()
    # D_q t^2 = (1 + q) t
    assert abs(derivative.sample(1, 2) - (1 + Q) * Q**2) < 1e-14
    with pytest.raises(MissingSample):
        derivative.sample(1, 5)


def test_derivatives_of_small_gaussian_moment_integrate_to_zero():
    report = translation_invariance_infinite("g", 2, 1.0, Q, m_max=3)
    assert report["success"], report["moments"]


def test_big_gaussian_off_lattice_diverges():
    with pytest.raises(DivergentUpperTail):
        translation_invariance_infinite("G", 0, 1.1, Q, 1)


def test_qtaylor_remainder_starts_at_y_power():
    decomposition = qtaylor(series_of(EQ, EXACT, 5), 2)
    assert decomposition.valid


def test_finite_translation_invariance():
    report = translation_invariance_finite(series_of(EQ, EXACT, 5))
    assert report["success"], report["residual_terms"]


def test_finite_translation_needs_q_commuting_base():
    y = NCElement.generator(QPLANE, "y", EXACT, 5)
    report = translation_invariance_finite(series_of(EQ, EXACT, 5), base=y)
    assert not report["success"]
    assert "q-commute" in report["error"]
