"""Tests for the coefficient fields and q-shifted factorials"""

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from src.core.coeffield import (
    EXACT,
    ExactSymbolic,
    GaussQ,
    NumericAt,
    NumericField,
    make_field,
    parse_qmode,
    qbinomial,
    qfactorial,
    qpochhammer_infinite,
    qshifted_factorial,
)
from src.core.errors import IndexOutOfRange, ModeMismatch, NonConvergent, PoleHit


def test_parse_qmode_accepts_exact_and_fractions():
    assert parse_qmode("exact") == ExactSymbolic()
    assert parse_qmode("EXACT") == ExactSymbolic()
    assert parse_qmode("0.5") == NumericAt(0.5)
    assert parse_qmode("1/3").q == pytest.approx(1 / 3)


@pytest.mark.parametrize("text", ["1", "0", "-0.2", "1.5", "q", ""])
def test_parse_qmode_rejects_out_of_range(text):
    with pytest.raises(ValueError):
        parse_qmode(text)


def test_make_field_modes():
    assert make_field(ExactSymbolic()) is EXACT
    F = make_field(NumericAt(0.25))
    assert isinstance(F, NumericField)
    assert F.value == 0.25


def test_exact_qbinomial_small_cases():
    F = EXACT
    q = F.q
    assert qbinomial(F, 4, 0) == F.one
    assert qbinomial(F, 2, 1) == F.one + q
    assert qbinomial(F, 4, 2) == (F.one + q * q) * (F.one + q + q * q)


def test_qbinomial_rejects_bad_indices():
    with pytest.raises(IndexOutOfRange):
        qbinomial(EXACT, 3, 4)
    with pytest.raises(IndexOutOfRange):
        qfactorial(EXACT, -1)


def test_exact_qbinomial_symmetry():
    for n in range(9):
        for k in range(n + 1):
            assert qbinomial(EXACT, n, k) == qbinomial(EXACT, n, n - k)


def test_exact_evaluation_matches_numeric_field():
    F, N = EXACT, NumericField(0.3)
    value = F.evaluate(qbinomial(F, 6, 3), 0.3)
    assert abs(value - qbinomial(N, 6, 3)) < 1e-12


def test_shifted_factorial_terminates_at_q_power():
    F = EXACT
    assert qshifted_factorial(F, F.qpow(-2), 3) == F.zero
    assert qshifted_factorial(F, F.q, 3) == qfactorial(F, 3)


def test_exact_field_refuses_complex():
    with pytest.raises(ModeMismatch):
        EXACT.convert(1j)


def test_invert_q_reverses_qpowers():
    F = EXACT
    assert F.invert_q(F.qpow(3)) == F.qpow(-3)
    assert F.invert_q(F.one - F.q) == F.one - F.qpow(-1)


def test_gauss_unit_powers_cycle():
    F = EXACT
    i4 = GaussQ.unit_power(F, 4)
    assert (i4 - GaussQ.real(F, 1)).is_zero()
    assert (GaussQ.unit_power(F, 2) + GaussQ.real(F, 1)).is_zero()


@pytest.mark.parametrize("a,q", [(0.3, 0.5), (-1.0, 0.5), (0.5, 0.9), (0.2 + 0.1j, 0.7)])
def test_infinite_product_against_mpmath(a, q):
    ours = qpochhammer_infinite(a, q).value
    oracle = complex(mpmath.qp(a, q))
    assert abs(ours - oracle) < 1e-12


def test_infinite_product_refuses_unit_q():
    with pytest.raises(NonConvergent):
        qpochhammer_infinite(0.5, 1.0)


def test_infinite_product_guard_detects_pole():
    with pytest.raises(PoleHit):
        qpochhammer_infinite(1.0, 0.5, guard=1e-8)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=0.05, max_value=0.95),
    st.integers(min_value=2, max_value=14),
    st.data(),
)
def test_pascal_recurrences_hold_numerically(q, n, data):
    F = NumericField(q)
    k = data.draw(st.integers(min_value=1, max_value=n - 1))
    value = qbinomial(F, n, k)
    first = q**k * qbinomial(F, n - 1, k) + qbinomial(F, n - 1, k - 1)
    second = qbinomial(F, n - 1, k) + q ** (n - k) * qbinomial(F, n - 1, k - 1)
    assert abs(value - first) <= 1e-9 * max(1.0, abs(value))
    assert abs(value - second) <= 1e-9 * max(1.0, abs(value))
