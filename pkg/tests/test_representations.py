"""Tests for the q-plane actions on power series"""

import pytest

from src.core.coeffield import EXACT, NumericField
from src.core.errors import AlgebraMismatch
from src.core.ncalg import QHEIS, QPLANE, NCElement
from src.core.qfunctions import PowerSeries
from src.core.representations import (
    ALL_REPS,
    REP47,
    REP49,
    RepKind,
    RepSpec,
    act,
    faithfulness_check,
    parse_rep,
    reduce_to_commutative,
    verify_relation,
)


@pytest.mark.parametrize("rep", ALL_REPS, ids=lambda r: r.kind.value)
def test_every_action_respects_the_plane_relation(rep):
    report = verify_relation(rep, m_max=8)
    assert report["success"], report
    assert report["checked"] == 9


def test_relation_holds_numerically_with_scaled_action():
    report = verify_relation(parse_rep("REP120:0.5"), m_max=6, field=NumericField(0.3))
    assert report["success"], report


def test_parse_rep_names():
    assert parse_rep("rep48").kind is RepKind.REP48
    assert parse_rep("REP120:2").gamma == 2.0
    with pytest.raises(ValueError):
        parse_rep("REP7")
    with pytest.raises(ValueError):
        RepSpec(RepKind.REP120, 0)


def test_x_raises_degree_under_rep47():
    F = EXACT
    x = NCElement.generator(QPLANE, "x", F, 4)
    image = act(REP47, x, PowerSeries.monomial(F, 2))
    assert image[3] == F.qpow(3)
    assert image[2] == F.zero


def test_x_is_the_q_derivative_under_rep49():
    F = EXACT
    x = NCElement.generator(QPLANE, "x", F, 4)
    image = act(REP49, x, PowerSeries.monomial(F, 2))
    assert image.is_polynomial
    assert image[1] == F.one + F.q


def test_action_needs_plane_elements():
    c = NCElement.generator(QHEIS, "c", EXACT, 4)
    with pytest.raises(AlgebraMismatch):
        act(REP47, c, PowerSeries.monomial(EXACT, 1))


def test_rep47_is_faithful_in_low_degrees():
    report = faithfulness_check(6)
    assert report["success"]
    assert report["ranks"] == {n: n + 1 for n in range(7)}


def test_too_few_modes_is_not_faithful():
    assert not faithfulness_check(3, modes=2)["success"]


@pytest.mark.parametrize("identity", ["eq3", "eq12"])
def test_identities_reduce_to_scalar_statements(identity):
    report = reduce_to_commutative(identity, trunc=8)
    assert report["success"], report["rows"]
    assert report["rows"]


def test_unknown_reduction_is_reported():
    report = reduce_to_commutative("eq99")
    assert not report["success"]
    assert "eq99" in report["error"]
