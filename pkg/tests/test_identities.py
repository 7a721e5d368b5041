"""Tests for the identity registry and its checkers"""

import pytest

from src.core.coeffield import NumericAt
from src.core.errors import NonConvergent, UnknownIdentity
from src.identities import EntryKind, IdentityEntry, Report, check, check_all, entries, get_entry
from src.identities import registry
from src.identities.registry import make_context, register, run_entry

SMALL = {"trunc": 6}


@pytest.mark.parametrize("identity_id", ["eq3", "eq12", "eq14", "eq15", "eq23", "eq68", "volkov"])
def test_exact_identities_pass_at_small_truncation(identity_id):
    report = check(identity_id, params=SMALL)
    assert report.passed, report.residual_terms or report.error
    assert report.mode == "exact"
    assert report.q is None


def test_exact_identity_evaluated_at_numeric_q():
    report = check("eq12", NumericAt(0.5), SMALL)
    assert report.passed, report.error
    assert report.mode == "numeric"
    assert report.q == 0.5


def test_numeric_identity_runs_at_requested_q():
    report = check("eq14n", NumericAt(0.3))
    assert report.passed
    assert report.q == 0.3
    assert report.truncation is None


def test_context_takes_q_from_the_mode():
    entry = get_entry("eq14n")
    ctx = make_context(entry, NumericAt(0.25))
    assert ctx.q == 0.25
    exact_ctx = make_context(get_entry("eq3"), NumericAt(0.25))
    assert not exact_ctx.field.exact


def test_divergence_is_detected_as_a_pass():
    assert check("eq65-divergent").passed


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        check("eq9999")
    with pytest.raises(KeyError):
        get_entry("nope")


def test_empty_selection_runs_nothing():
    assert check_all(ids=[]) == []


def test_selection_is_in_natural_order():
    selected = entries(ids=["eq12", "eq3", "eq6", "eq12"])
    assert [e.id for e in selected] == ["eq3", "eq6", "eq12"]


def test_prefix_and_kind_filters():
    assert all(e.id.startswith("eq1") for e in entries(prefix="eq1"))
    numeric = entries(kind="numeric")
    assert numeric
    assert all(e.kind is EntryKind.NUMERIC for e in numeric)
    assert "eq14n" in [e.id for e in numeric]
    assert "eq14n" not in [e.id for e in entries(kind="exact")]


def test_check_all_keeps_selection_order():
    reports = check_all(params=SMALL, ids=["eq12", "eq3"], execution_mode="sequential")
    assert [r.id for r in reports] == ["eq3", "eq12"]
    assert all(r.passed for r in reports)


def test_report_dict_has_stable_keys():
    record = check("eq3", params=SMALL).to_dict()
    assert list(record) == ["id", "status", "mode", "truncation", "q", "max_residual", "elapsed_ms"]
    failed = Report("x", "fail", "exact", residual_terms=["y*x"], error="boom").to_dict()
    assert failed["residual_terms"] == ["y*x"]
    assert failed["error"] == "boom"


def test_raising_runner_becomes_a_failed_report():
    def runner(ctx):
        raise NonConvergent("series ran away")

    entry = IdentityEntry("broken", EntryKind.NUMERIC, "never holds", runner)
    report = run_entry(entry, make_context(entry, NumericAt(0.5)))
    assert report.status == "fail"
    assert "series ran away" in report.error


def test_duplicate_registration_is_rejected():
    with pytest.raises(ValueError):
        register("eq3", "exact", "again")(lambda ctx: {"success": True})


def test_check_all_survives_a_crashing_runner(monkeypatch):
    def runner(ctx):
        return {"success": True, "max_residual": {} + 1}

    monkeypatch.setitem(registry._REGISTRY, "crashes", IdentityEntry("crashes", EntryKind.NUMERIC, "never holds", runner))
    reports = check_all(params=SMALL, ids=["eq3", "crashes"])
    assert [r.id for r in reports] == ["crashes", "eq3"]
    crashed, ok = reports
    assert crashed.status == "fail"
    assert crashed.error.startswith("TypeError: ")
    assert ok.passed


def test_braided_ids_check_their_own_forms():
    assert "F_y" in get_entry("eq173").anchor
    assert get_entry("eq177").anchor.startswith("int g(q^m t)")
    for identity_id in ("eq170", "eq173", "eq177", "integral-covariance"):
        report = check(identity_id, NumericAt(0.5))
        assert report.passed, (identity_id, report.residual_terms, report.error)


@pytest.mark.slow
@pytest.mark.parametrize("identity_id", [e.id for e in entries()])
def test_every_registered_identity_passes_at_defaults(identity_id):
    report = check(identity_id, params={"trunc": 12})
    assert report.passed, (report.residual_terms, report.error)
