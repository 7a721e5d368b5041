"""Tests for the q-Fourier transforms"""

import pytest

from src.core.errors import HypothesisFailed
from src.core.jackson import weight_I, weight_II
from src.core.qfourier import (
    TransformConfig,
    derivative_exchange_check,
    forward_pair,
    gamma_shift_check,
    linearity_check,
    lowering_lattice_check,
    pair_rows,
    pairs_check,
    roundtrip_check,
)

Q = 0.5


@pytest.mark.parametrize("kind", ["153", "154"])
def test_transform_pairs_match_closed_forms(kind):
    report = pairs_check(kind, 2)
    assert report["success"], report["rows"]
    assert len(report["rows"]) == 3 * 5


def test_pair_rows_carry_sample_points():
    rows = pair_rows("153", 1, ys=(0.0, 0.5))
    assert [row["y"] for row in rows] == [0.0, 0.5]
    assert all(row["pair"] == "153" for row in rows)


def test_unknown_pair_is_rejected():
    with pytest.raises(ValueError):
        forward_pair("155", 1, Q)


@pytest.mark.parametrize("q,gamma", [(1.5, 1.0), (0.0, 1.0), (0.5, 0.0)])
def test_transform_config_validation(q, gamma):
    with pytest.raises(ValueError):
        TransformConfig(q=q, gamma=gamma)


def test_inverse_transform_recovers_inputs():
    report = roundtrip_check(1)
    assert report["success"], report["failures"]


@pytest.mark.parametrize("family", ["I", "II"])
def test_lowering_relations_on_lattice_samples(family):
    assert lowering_lattice_check(family, 3)["success"]


def test_linearity():
    report = linearity_check(lambda x: weight_I(x, Q), lambda x: x * weight_I(x, Q))
    assert report["success"], report


def test_anchor_shift_leaves_inverse_transform_unchanged():
    report = gamma_shift_check(lambda y: weight_II(y, Q), tc=TransformConfig(Q, 0.8))
    assert report["success"], report


def test_derivative_exchange_for_vanishing_input():
    report = derivative_exchange_check(f=lambda x: weight_I(x, Q))
    assert report["success"], report["rows"]


def test_derivative_exchange_needs_vanishing_edge():
    with pytest.raises(HypothesisFailed):
        derivative_exchange_check(f=lambda x: 1.0)
