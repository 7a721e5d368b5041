"""Tests for the braided line Hopf structure"""

import pytest

from src.core.braidedline import (
    BraidedPoly,
    antipode,
    braid,
    braided_associativity_check,
    braiding,
    coproduct,
    counit,
    exponential_check,
    hermite_coproduct_check,
    hopf_axiom_check,
    tensor,
)
from src.core.coeffield import EXACT, NumericField, qbinomial
from src.core.qfunctions import PowerSeries

F = EXACT


def test_antipode_and_counit_on_monomials():
    x2 = BraidedPoly.monomial(2, F, 4)
    assert antipode(x2).poly[2] == F.q
    assert antipode(BraidedPoly.monomial(3, F, 4)).poly[3] == -F.qpow(3)
    assert counit(x2) == F.zero
    assert counit(BraidedPoly.monomial(0, F, 4)) == F.one


def test_braiding_swaps_slots_with_q_power():
    assert braiding(1, 2, F, 6) == tensor(2, 1, F, 6) * F.qpow(2)
    assert braid(tensor(1, 2, F, 6)) == tensor(2, 1, F, 6) * F.qpow(2)


def test_coproduct_of_square_uses_q_binomials():
    delta = coproduct(BraidedPoly.monomial(2, F, 4))
    expected = tensor(2, 0, F, 4) + tensor(1, 1, F, 4) * qbinomial(F, 2, 1) + tensor(0, 2, F, 4)
    assert delta == expected


def test_degree_above_truncation_is_rejected():
    with pytest.raises(ValueError):
        BraidedPoly(PowerSeries.monomial(F, 5), 3)


def test_hopf_axioms_exact():
    report = hopf_axiom_check(5)
    assert report["success"], report["failures"]


def test_hopf_axioms_numeric():
    report = hopf_axiom_check(4, NumericField(0.5))
    assert report["success"], report["failures"]


def test_exponential_is_grouplike():
    report = exponential_check(8)
    assert report["success"], report["checks"]


def test_braided_tensor_product_is_associative():
    report = braided_associativity_check(2)
    assert report["success"], report["failures"]


def test_hermite_coproduct():
    report = hermite_coproduct_check(5)
    assert report["success"], report["failures"]
