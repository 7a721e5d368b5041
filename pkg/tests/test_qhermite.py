"""Tests for the two q-Hermite families"""

import pytest

from src.core.coeffield import EXACT, NumericField
from src.core.qhermite import (
    HermiteFamily,
    addition_formula,
    hermite,
    hermite_from_hypergeometric,
    norm,
    orthogonality_numeric,
    orthogonality_rows,
    rescaling_identity,
    structural_checks,
    transform_integrals,
)

F = EXACT


def test_low_degree_polynomials_of_first_family():
    h2 = hermite("I", 2)
    assert h2.coefficient(2) == F.one
    assert h2.at_zero() == -(F.one - F.q)
    h3 = hermite("I", 3)
    assert h3.coefficient(1) == -(F.one - F.qpow(3))
    assert h3.coefficient(2) == F.zero
    assert h3.to_text().startswith("x^3")


def test_second_family_has_inverse_q_powers():
    h2 = hermite("ii", 2)
    assert h2.family is HermiteFamily.II
    assert h2.at_zero() == -(F.one - F.q) / F.q


@pytest.mark.parametrize("family", ["I", "II"])
@pytest.mark.parametrize("n", [0, 1, 4, 5])
def test_explicit_and_hypergeometric_forms_agree(family, n):
    assert hermite(family, n).poly == hermite_from_hypergeometric(family, n).poly


def test_negative_degree_is_rejected():
    with pytest.raises(ValueError):
        hermite("I", -1)


@pytest.mark.parametrize("family", ["I", "II"])
def test_structural_identities_hold_exactly(family):
    report = structural_checks(family, 6)
    assert report["success"], report["checks"]
    assert "duality" in report["checks"]


def test_structural_identities_hold_numerically():
    report = structural_checks("I", 5, NumericField(0.4), only=["recurrence", "value_at_zero", "monomial_expansion"])
    assert report["success"], report["checks"]
    assert "duality" not in report["checks"]


def test_structural_subset_selection():
    report = structural_checks("I", 4, only=["recurrence"])
    assert list(report["checks"]) == ["recurrence"]
    with pytest.raises(ValueError):
        structural_checks("I", 4, only=["nonsense"])


@pytest.mark.parametrize("family", ["I", "II"])
@pytest.mark.parametrize("m,n", [(0, 0), (2, 2), (1, 3), (2, 4)])
def test_orthogonality(family, m, n):
    report = orthogonality_numeric(family, m, n, 0.5)
    assert report["success"], report


@pytest.mark.parametrize("q", [0.5, 0.3])
def test_family_I_orthogonality_through_degree_eight(q):
    rows = orthogonality_rows("I", range(9), q)
    bad = [(r["m"], r["n"], r.get("deviation")) for r in rows if not r["success"]]
    assert not bad
    assert len(rows) == 81


def test_orthogonality_rows_cover_the_square():
    rows = orthogonality_rows("I", range(3))
    assert [(r["m"], r["n"]) for r in rows] == [(m, n) for m in range(3) for n in range(3)]


def test_norm_of_constant_is_total_mass():
    assert norm("I", 0, 0.5) > 0
    assert norm("II", 1, 0.5) > 0


@pytest.mark.parametrize("kind", ["140", "146", "148", "149"])
def test_transform_integrals(kind):
    report = transform_integrals(kind, 2)
    assert report["success"], report["rows"]


def test_unknown_transform_integral_fails():
    report = transform_integrals("141", 1)
    assert not report["success"]


@pytest.mark.parametrize("n", [2, 4])
def test_addition_formula(n):
    assert addition_formula(n)["success"]


def test_rescaling_identity():
    assert rescaling_identity(3)["success"]
