"""
Exact identity entries.

Both sides are built as truncated elements (or series) in the field of the
run and subtracted; an exact pass means the difference has no surviving
coefficient. Under a numeric q the same entries compare with COMPARE_TOL
relative to the larger side.
"""

import dataclasses
import functools
import logging
from typing import Dict, Mapping

from src.core import braidedline, qhermite
from src.core.coeffield import qbinomial, qfactorial, qshifted_factorial
from src.core.jackson import jackson_0_to_x, qtaylor, translation_invariance_finite
from src.core.ncalg import (
    COMMUTATIVE_AZ,
    GF98,
    GF103,
    QHEIS,
    QHEISZ,
    QPLANE,
    QPLANE_A,
    NCElement,
    ansatz_expand,
    compose_series,
    nc_invert,
    nc_pow,
    render_terms,
    substitute,
)
from src.core.qfunctions import (
    BIGEQ,
    EQ,
    LOGQ,
    PowerSeries,
    gaussian_factorization,
    in_base,
    phi10_a_derivative,
    qleibniz_check,
    series_of,
)
from src.core.representations import ALL_REPS, REP47, faithfulness_check, reduce_to_commutative, verify_relation
from src.identities.registry import MAX_RESIDUAL_TERMS, CheckContext, get_entry, register

try:
    from config import COMPARE_TOL
except ImportError:
    COMPARE_TOL = 1e-10

logger = logging.getLogger(__name__)

EXACT_KIND = "exact"


# ============================================================================
# COMPARISON HELPERS
# ============================================================================


def _term_texts(diff: NCElement):
    F, alg = diff.field, diff.algebra
    return [render_terms(F, [(alg.render(w), c)]) for w, c in diff.terms()[:MAX_RESIDUAL_TERMS]]


def _compare(lhs: NCElement, rhs: NCElement) -> dict:
    diff = lhs - rhs
    F = lhs.field
    if lhs.overflow or rhs.overflow:
        logger.debug("%s: %d products dropped past degree %d", lhs.algebra.name, lhs.overflow + rhs.overflow, lhs.trunc)
    if F.exact:
        terms = _term_texts(diff) if diff.coeffs else []
        return {"success": not terms, "residual_terms": terms, "truncation": lhs.trunc}
    scale = max(1.0, lhs.max_abs(), rhs.max_abs())
    residual = diff.max_abs() / scale
    ok = residual <= COMPARE_TOL
    return {
        "success": ok,
        "max_residual": residual,
        "residual_terms": [] if ok else _term_texts(diff),
        "truncation": lhs.trunc,
    }


def _compare_series(lhs: PowerSeries, rhs: PowerSeries, var: str = "z") -> dict:
    F = lhs.field
    diff = lhs - rhs
    bad = [(n, diff.coeffs[n]) for n in range(diff.trunc + 1) if not F.is_zero(diff.coeffs[n])]
    if F.exact:
        terms = [render_terms(F, [(f"{var}^{n}", c)]) for n, c in bad[:MAX_RESIDUAL_TERMS]]
        return {"success": not terms, "residual_terms": terms, "truncation": diff.trunc}
    scale = max([1.0] + [F.magnitude(c) for c in lhs.coeffs])
    residual = max((F.magnitude(c) for _, c in bad), default=0.0) / scale
    ok = residual <= COMPARE_TOL
    terms = [] if ok else [render_terms(F, [(f"{var}^{n}", c)]) for n, c in bad[:MAX_RESIDUAL_TERMS]]
    return {"success": ok, "max_residual": residual, "residual_terms": terms, "truncation": diff.trunc}


def _same_scalar(F, a, b) -> bool:
    if F.exact:
        return F.is_zero(a - b)
    return F.magnitude(a - b) <= COMPARE_TOL * max(1.0, F.magnitude(a))


def merge_reports(parts: Mapping[str, dict]) -> dict:
    """One report from named sub-reports; residual terms carry the part name."""
    terms, residuals, errors = [], [], []
    for name, part in parts.items():
        terms += [f"{name}: {t}" for t in part.get("residual_terms") or []]
        if part.get("max_residual") is not None:
            residuals.append(part["max_residual"])
        if part.get("error"):
            errors.append(f"{name}: {part['error']}")
        elif not part.get("success") and not part.get("residual_terms"):
            terms.append(f"{name}: failed")
    merged = {
        "success": all(p.get("success") for p in parts.values()) and not errors,
        "residual_terms": terms,
        "parts": {name: bool(p.get("success")) for name, p in parts.items()},
    }
    if residuals:
        merged["max_residual"] = max(residuals)
    if errors:
        merged["error"] = "; ".join(errors)
    truncations = [p["truncation"] for p in parts.values() if isinstance(p.get("truncation"), int)]
    if truncations:
        merged["truncation"] = max(truncations)
    return merged


def adapt_report(report: dict) -> dict:
    """Give a delegated check report residual_terms naming what failed."""
    out = dict(report)
    if not out.get("success") and not out.get("residual_terms"):
        problems = [
            f"{key}: {out[key]}"
            for key in ("failures", "mismatched_degrees", "closed_form_mismatches", "remainder")
            if out.get(key)
        ]
        out["residual_terms"] = problems or ([] if out.get("error") else ["check reported failure"])
    out.setdefault("residual_terms", [])
    return out


# ============================================================================
# ELEMENT BUILDERS
# ============================================================================


def _gens(algebra, ctx_or_field, trunc, *names):
    F = ctx_or_field.field if isinstance(ctx_or_field, CheckContext) else ctx_or_field
    return tuple(NCElement.generator(algebra, name, F, trunc) for name in names)


def _e(arg: NCElement, base: int = 1) -> NCElement:
    """e_{q^base}(arg)"""
    return compose_series(series_of(in_base(EQ, base), arg.field, arg.trunc), arg)


def _big_e(arg: NCElement, base: int = 1) -> NCElement:
    """E_{q^base}(arg)"""
    return compose_series(series_of(in_base(BIGEQ, base), arg.field, arg.trunc), arg)


def _log_q(arg: NCElement) -> NCElement:
    return compose_series(series_of(LOGQ, arg.field, arg.trunc), arg)


def _poch(a: NCElement, n: int) -> NCElement:
    """(a; q)_n for an element a; the factors commute."""
    F = a.field
    result = NCElement.one(a.algebra, F, a.trunc)
    for j in range(n):
        result = result * (1 - a * F.qpow(j))
    return result


def _phi10(a: NCElement, arg: NCElement) -> NCElement:
    """sum_k (a;q)_k/(q;q)_k arg^k with a central element-valued parameter a."""
    F, N = arg.field, arg.trunc
    top = N // (arg.min_degree() or 1)
    result = NCElement.zero(arg.algebra, F, N)
    poch = NCElement.one(arg.algebra, F, N)
    power = NCElement.one(arg.algebra, F, N)
    for k in range(top + 1):
        result = result + poch * power / qfactorial(F, k)
        poch = poch * (1 - a * F.qpow(k))
        power = power * arg
    return result


# ============================================================================
# q-BINOMIAL FORMULA
# ============================================================================


@register("eq3", EXACT_KIND, "(x+y)^n = sum_k [n,k] y^(n-k) x^k in QPLANE", "exact, n <= trunc")
def check_qbinomial_formula(ctx: CheckContext) -> dict:
    parts = {}
    for n in range(ctx.trunc + 1):
        T = max(n, 1)
        x, y = _gens(QPLANE, ctx, T, "x", "y")
        rhs = NCElement.zero(QPLANE, ctx.field, T)
        for k in range(n + 1):
            rhs = rhs + nc_pow(y, n - k) * nc_pow(x, k) * qbinomial(ctx.field, n, k)
        parts[f"n={n}"] = _compare(nc_pow(x + y, n), rhs)
    return merge_reports(parts)


@register("eq6", EXACT_KIND, "both Pascal recurrences of [n,k]", "exact, n <= 20")
def check_qbinomial_recurrences(ctx: CheckContext) -> dict:
    F = ctx.field
    failures = []
    for n in range(2, int(ctx.get("n_max", 20)) + 1):
        for k in range(1, n):
            value = qbinomial(F, n, k)
            first = F.qpow(k) * qbinomial(F, n - 1, k) + qbinomial(F, n - 1, k - 1)
            second = qbinomial(F, n - 1, k) + F.qpow(n - k) * qbinomial(F, n - 1, k - 1)
            if not (_same_scalar(F, value, first) and _same_scalar(F, value, second)):
                failures.append(f"[{n},{k}]")
    return {"success": not failures, "residual_terms": failures, "truncation": None}


@register("eq45", EXACT_KIND, "[n,k] = (-1)^k q^(-k(k-1)/2) q^(nk) (q^-n;q)_k/(q;q)_k", "exact, n <= 20")
def check_signed_qbinomial(ctx: CheckContext) -> dict:
    F = ctx.field
    failures = []
    for n in range(int(ctx.get("n_max", 20)) + 1):
        for k in range(n + 1):
            sign = F.one if k % 2 == 0 else -F.one
            rhs = sign * F.qpow(-(k * (k - 1) // 2)) * F.qpow(n * k) * qshifted_factorial(F, F.qpow(-n), k) / qfactorial(F, k)
            if not _same_scalar(F, qbinomial(F, n, k), rhs):
                failures.append(f"[{n},{k}]")
    return {"success": not failures, "residual_terms": failures, "truncation": None}


@register("eq7", EXACT_KIND, "(y-yx)^n = sum_k [n,k] y^(n-k) (-yx)^k = y^n (x;q)_n", "exact, 2n <= trunc")
def check_substituted_binomial(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(1, ctx.trunc // 2 + 1):
        x, y = _gens(QPLANE, ctx, 2 * n, "x", "y")
        lhs = nc_pow(y - y * x, n)
        expanded = NCElement.zero(QPLANE, F, 2 * n)
        for k in range(n + 1):
            expanded = expanded + nc_pow(y, n - k) * nc_pow(-(y * x), k) * qbinomial(F, n, k)
        parts[f"n={n} binomial"] = _compare(lhs, expanded)
        parts[f"n={n} product"] = _compare(lhs, nc_pow(y, n) * _poch(x, n))
    return merge_reports(parts)


@register("eq9", EXACT_KIND, "(q^-n z;q)_n = sum_k (q^-n;q)_k/(q;q)_k z^k as polynomials in z", "exact, n <= 8")
def check_terminating_binomial(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(int(ctx.get("n_max", 8)) + 1):
        lhs = PowerSeries.constant(F, 1)
        for j in range(n):
            lhs = lhs * PowerSeries.polynomial(F, [1, -F.qpow(j - n)])
        rhs = PowerSeries.polynomial(
            F, [qshifted_factorial(F, F.qpow(-n), k) / qfactorial(F, k) for k in range(n + 1)]
        )
        parts[f"n={n}"] = _compare_series(lhs, rhs)
    return merge_reports(parts)


# ============================================================================
# q-EXPONENTIALS IN THE q-PLANE
# ============================================================================


def _qplane(ctx: CheckContext):
    return _gens(QPLANE, ctx, ctx.trunc, "x", "y")


@register("eq12", EXACT_KIND, "e_q(x+y) = e_q(y) e_q(x) in QPLANE")
def check_exponential_sum(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_e(x + y), _e(y) * _e(x))


@register("eq38", EXACT_KIND, "E_q(x+y) = E_q(x) E_q(y) in QPLANE")
def check_big_exponential_sum(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_big_e(x + y), _big_e(x) * _big_e(y))


@register("eq13", EXACT_KIND, "e_q(qz) = (1-z) e_q(z) and E_q(z) = (1+z) E_q(qz)")
def check_exponential_dilation(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    e, big = series_of(EQ, F, N), series_of(BIGEQ, F, N)
    return merge_reports(
        {
            "e_q": _compare_series(e.dilate(F.q), PowerSeries.polynomial(F, [1, -1]) * e),
            "E_q": _compare_series(big, PowerSeries.polynomial(F, [1, 1]) * big.dilate(F.q)),
        }
    )


@register("eq14", EXACT_KIND, "e_q(z) E_q(-z) = 1 as series")
def check_exponential_inverse(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    product = series_of(EQ, F, N) * series_of(BIGEQ, F, N).dilate(-1)
    return _compare_series(product, PowerSeries.constant(F, 1).as_series(N))


@register("eq15", EXACT_KIND, "e_q(x) e_q(y) = e_q(y-yx) e_q(x) in QPLANE")
def check_exponential_swap(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_e(x) * _e(y), _e(y - y * x) * _e(x))


@register("eq16", EXACT_KIND, "e_q(x) e_q(y) e_q(x)^-1 = e_q(y-yx) in QPLANE")
def check_exponential_conjugation(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    ex = _e(x)
    return _compare(ex * _e(y) * nc_invert(ex), _e(y - y * x))


@register("eq17", EXACT_KIND, "e_q(x) e_q(y) e_q(x)^-1 = e_q(e_q(x) y e_q(x)^-1) in QPLANE")
def check_conjugated_argument(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    ex = _e(x)
    inverse = nc_invert(ex)
    return _compare(ex * _e(y) * inverse, _e(ex * y * inverse))


@register("eq113", EXACT_KIND, "e_q(x) y e_q(x)^-1 = y(1-x) in QPLANE")
def check_conjugated_generator(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    ex = _e(x)
    return _compare(ex * y * nc_invert(ex), y * (1 - x))


@register("eq18", EXACT_KIND, "e_q(x) e_q(y) = e_q(x+y-yx) in QPLANE")
def check_exponential_merged(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_e(x) * _e(y), _e(x + y - y * x))


@register("eq19", EXACT_KIND, "e_q(x) e_q(y) = e_q(y) e_q(-yx) e_q(x) in QPLANE")
def check_exponential_three_factors(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_e(x) * _e(y), _e(y) * _e(-(y * x)) * _e(x))


@register("eq20", EXACT_KIND, "e_q(x) e_q(y) = e_q(y) e_q(x-yx) in QPLANE")
def check_exponential_right_merged(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_e(x) * _e(y), _e(y) * _e(x - y * x))


@register("eq39", EXACT_KIND, "E_q(y) E_q(x) = E_q(x+y+yx) in QPLANE")
def check_big_exponential_merged(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_big_e(y) * _big_e(x), _big_e(x + y + y * x))


@register("eq115", EXACT_KIND, "E_q(y) E_q(x) = E_q(x) E_q(yx) E_q(y) in QPLANE")
def check_big_exponential_three_factors(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    return _compare(_big_e(y) * _big_e(x), _big_e(x) * _big_e(y * x) * _big_e(y))


@register("eq67", EXACT_KIND, "e_{q^2}(-z^2) = e_q(iz) e_q(-iz) with i adjoined")
def check_gaussian_factorization(ctx: CheckContext) -> dict:
    report = gaussian_factorization(ctx.field, ctx.trunc)
    report["residual_terms"] = [f"z^{n}" for n in report.get("mismatched_degrees", [])]
    return report


@register("eq68", EXACT_KIND, "e_{q^2}(-(x+y)^2) = e_{q^2}(-y^2) e_q(-yx) e_{q^2}(-x^2) in QPLANE")
def check_gaussian_sum(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    s = x + y
    return _compare(_e(-(s * s), 2), _e(-(y * y), 2) * _e(-(y * x)) * _e(-(x * x), 2))


@register("eq133", EXACT_KIND, "E_{q^2}(-(x+y)^2) = E_{q^2}(-x^2) E_q(-yx) E_{q^2}(-y^2) in QPLANE")
def check_big_gaussian_sum(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    s = x + y
    return _compare(_big_e(-(s * s), 2), _big_e(-(x * x), 2) * _big_e(-(y * x)) * _big_e(-(y * y), 2))


# ============================================================================
# 1phi0 AND THE q-LOGARITHM
# ============================================================================


@register("eq37", EXACT_KIND, "1phi0(a;;q,z) = E_q(-az) e_q(z) with symbolic a")
def check_phi10_factorization(ctx: CheckContext) -> dict:
    a, z = _gens(COMMUTATIVE_AZ, ctx, ctx.trunc, "a", "z")
    return _compare(_phi10(a, z), _big_e(-(a * z)) * _e(z))


@register("eq35", EXACT_KIND, "1phi0(a;x) 1phi0(a;y) = 1phi0(a; x+y-yx) in QPLANE, symbolic central a")
def check_phi10_product(ctx: CheckContext) -> dict:
    a, x, y = _gens(QPLANE_A, ctx, ctx.trunc, "a", "x", "y")
    return _compare(_phi10(a, x) * _phi10(a, y), _phi10(a, x + y - y * x))


@register("eq36", EXACT_KIND, "1phi0(a;y) 1phi0(a;x) = 1phi0(a; x+y-ayx) in QPLANE, symbolic central a")
def check_phi10_reversed_product(ctx: CheckContext) -> dict:
    a, x, y = _gens(QPLANE_A, ctx, ctx.trunc, "a", "x", "y")
    return _compare(_phi10(a, y) * _phi10(a, x), _phi10(a, x + y - a * y * x))


@register("eq40", EXACT_KIND, "x+y = e_q(x)^-1 (x+y-yx) e_q(x) in QPLANE")
def check_sum_conjugation(ctx: CheckContext) -> dict:
    x, y = _qplane(ctx)
    ex = _e(x)
    return _compare(x + y, nc_invert(ex) * (x + y - y * x) * ex)


@register("eq41", EXACT_KIND, "x+y = e_q(ay) (x+y-ayx) e_q(ay)^-1 in QPLANE, symbolic central a")
def check_sum_conjugation_with_parameter(ctx: CheckContext) -> dict:
    a, x, y = _gens(QPLANE_A, ctx, ctx.trunc, "a", "x", "y")
    eay = _e(a * y)
    return _compare(x + y, eay * (x + y - a * y * x) * nc_invert(eay))


@register("eq93", EXACT_KIND, "(x;q)_n (y;q)_n = (x+y-q^n yx;q)_n and (y;q)_n (x;q)_n = (x+y-yx;q)_n", "exact, polynomial, n <= 6")
def check_terminating_products(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(1, int(ctx.get("n_max", 6)) + 1):
        x, y = _gens(QPLANE, ctx, 2 * n, "x", "y")
        parts[f"n={n} xy"] = _compare(_poch(x, n) * _poch(y, n), _poch(x + y - y * x * F.qpow(n), n))
        parts[f"n={n} yx"] = _compare(_poch(y, n) * _poch(x, n), _poch(x + y - y * x, n))
    return merge_reports(parts)


@register("eq31", EXACT_KIND, "log_q(x+y-yx) = log_q(x) + log_q(y) in QPLANE, directly and by translation invariance")
def check_log_functional_equation(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    x, y = _qplane(ctx)
    direct = _compare(_log_q(x + y - y * x), _log_q(x) + _log_q(y))
    # int_y^{X+y} (1-t)^-1 d_qt = int_0^X (1-t-y)^-1 d_qt with X = x - yx
    shifted = adapt_report(translation_invariance_finite(PowerSeries.geometric(F, N), N, base=x - y * x))
    return merge_reports({"direct": direct, "translation": shifted})


@register("eq109-exact", EXACT_KIND, "log_q(z) = -d/da 1phi0(a;;q,z) at a=1, coefficientwise")
def check_log_as_parameter_derivative(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    return _compare_series(phi10_a_derivative(F, 1, N) * -1, series_of(LOGQ, F, N))


@register("eq111", EXACT_KIND, "(1-q) D_q log_q(z) = 1/(1-z) as series")
def check_log_qderivative(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    lhs = series_of(LOGQ, F, N).qderiv() * (F.one - F.q)
    return _compare_series(lhs, PowerSeries.geometric(F, N - 1))


@register("qleibniz", EXACT_KIND, "D_q(fg)(z) = f(z) D_q g(z) + D_q f(z) g(qz)")
def check_qleibniz(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    pairs = {
        "e_q*log_q": (series_of(EQ, F, N), series_of(LOGQ, F, N)),
        "polynomials": (PowerSeries.polynomial(F, [1, 2, 0, -1]), PowerSeries.polynomial(F, [0, 1, 3])),
    }
    parts = {}
    for name, (f, g) in pairs.items():
        report = qleibniz_check(f, g)
        if F.exact:
            report.pop("max_residual", None)
        parts[name] = adapt_report(report)
    return merge_reports(parts)


# ============================================================================
# q-HEISENBERG RELATIONS
# ============================================================================


def _qheis(ctx: CheckContext, trunc=None):
    return _gens(QHEIS, ctx, trunc or ctx.trunc, "x", "y", "c")


@register("eq26", EXACT_KIND, "x^n y = q^n y x^n + (1-q^n) c x^(n-1) in QHEIS", "exact, n <= 10")
def check_heisenberg_commutation(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(1, int(ctx.get("n_max", 10)) + 1):
        x, y, c = _qheis(ctx, n + 1)
        rhs = y * nc_pow(x, n) * F.qpow(n) + c * nc_pow(x, n - 1) * (F.one - F.qpow(n))
        parts[f"n={n}"] = _compare(nc_pow(x, n) * y, rhs)
    return merge_reports(parts)


@register("eq27", EXACT_KIND, "e_q(x) y = (y-yx+c) e_q(x) in QHEIS")
def check_heisenberg_exchange(ctx: CheckContext) -> dict:
    x, y, c = _qheis(ctx)
    return _compare(_e(x) * y, (y - y * x + c) * _e(x))


def _heisenberg_sides(x, y, c):
    lhs = _e(x) * _e(y)
    return {
        "eq23": (lhs, _e(y - y * x + c) * _e(x)),
        "eq24": (lhs, _e(y) * _e(c - y * x) * _e(x)),
        "eq25": (lhs, _e(y) * _e(x - y * x + c)),
    }


@register("eq23", EXACT_KIND, "e_q(x) e_q(y) = e_q(y-yx+c) e_q(x) in QHEIS")
def check_heisenberg_left(ctx: CheckContext) -> dict:
    x, y, c = _qheis(ctx)
    return _compare(_e(x) * _e(y), _e(y - y * x + c) * _e(x))


@register("eq24", EXACT_KIND, "e_q(x) e_q(y) = e_q(y) e_q(-yx+c) e_q(x) in QHEIS")
def check_heisenberg_middle(ctx: CheckContext) -> dict:
    x, y, c = _qheis(ctx)
    return _compare(_e(x) * _e(y), _e(y) * _e(c - y * x) * _e(x))


@register("eq25", EXACT_KIND, "e_q(x) e_q(y) = e_q(y) e_q(x-yx+c) in QHEIS")
def check_heisenberg_right(ctx: CheckContext) -> dict:
    x, y, c = _qheis(ctx)
    return _compare(_e(x) * _e(y), _e(y) * _e(x - y * x + c))


@register("prop4-c0", EXACT_KIND, "c -> 0 maps the QHEIS exponential identities onto the QPLANE ones")
def check_heisenberg_quotient(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    hx, hy, hc = _qheis(ctx)
    px, py = _qplane(ctx)
    images = {"c": NCElement.zero(QPLANE, F, N), "y": py, "x": px}
    plane = {
        "eq23": (_e(px) * _e(py), _e(py - py * px) * _e(px)),
        "eq24": (_e(px) * _e(py), _e(py) * _e(-(py * px)) * _e(px)),
        "eq25": (_e(px) * _e(py), _e(py) * _e(px - py * px)),
    }
    parts = {}
    for name, (lhs, rhs) in _heisenberg_sides(hx, hy, hc).items():
        target_lhs, target_rhs = plane[name]
        parts[f"{name} lhs"] = _compare(substitute(lhs, images), target_lhs)
        parts[f"{name} rhs"] = _compare(substitute(rhs, images), target_rhs)
    return merge_reports(parts)


@register("volkov", EXACT_KIND, "(y;q)_n (x;q)_n = prod_{k<n} (1 - q^k (x+y-yx+c) + q^2k c) in QHEIS", "exact, polynomial, n <= 6")
def check_heisenberg_products(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(1, int(ctx.get("n_max", 6)) + 1):
        x, y, c = _qheis(ctx, 2 * n)
        s = x + y - y * x + c
        rhs = NCElement.one(QHEIS, F, 2 * n)
        for k in range(n):
            rhs = rhs * (1 - s * F.qpow(k) + c * F.qpow(2 * k))
        parts[f"n={n}"] = _compare(_poch(y, n) * _poch(x, n), rhs)
    return merge_reports(parts)


@register("eq28", EXACT_KIND, "e_q(x) e_q(y) = e_q(y) e_q((1-q)^-1 [x,y]) e_q(x) in QHEISZ, [x,y] = (1-q) z")
def check_commutator_form(ctx: CheckContext) -> dict:
    z, y, x = _gens(QHEISZ, ctx, ctx.trunc, "z", "y", "x")
    return _compare(_e(x) * _e(y), _e(y) * _e(z) * _e(x))


@register("eq102", EXACT_KIND, "e_q(x+w) = e_q(w) e_{q^2}((1-q) z^2) e_q(x) in QHEISZ with w = y[x,y]")
def check_commutator_gaussian(ctx: CheckContext) -> dict:
    F = ctx.field
    z, y, x = _gens(QHEISZ, ctx, ctx.trunc, "z", "y", "x")
    w = y * z * (F.one - F.q)
    return _compare(_e(x + w), _e(w) * _e(z * z * (F.one - F.q), 2) * _e(x))


@register("eq99", EXACT_KIND, "e_q(x+w) = e_q(w) e_{q^2}(z^2) e_q(x) under xw - qwx = (1-q) z^2")
def check_gf98(ctx: CheckContext) -> dict:
    w, x, z = _gens(GF98, ctx, ctx.trunc, "w", "x", "z")
    return _compare(_e(x + w), _e(w) * _e(z * z, 2) * _e(x))


@register("eq104", EXACT_KIND, "e_q(x+w) = e_q(w) e_{q^2}(v) e_q(x) under xw - qwx = (1-q) v")
def check_gf103(ctx: CheckContext) -> dict:
    w, x, v = _gens(GF103, ctx, ctx.trunc, "w", "x", "v")
    return _compare(_e(x + w), _e(w) * _e(v, 2) * _e(x))


@register("ansatz", EXACT_KIND, "E_q(-w) e_q(x+w) E_q(-x) in the free algebra: degree 2 and 3 parts lie in the relation span")
def check_ansatz(ctx: CheckContext) -> dict:
    report = adapt_report(ansatz_expand(3, ctx.field))
    if not report["success"]:
        report["residual_terms"] = [report.get("remainder", "degree-2 part mismatch")]
    report.pop("components", None)
    return report


# ============================================================================
# q-TAYLOR AND JACKSON INTEGRALS
# ============================================================================


@register("eq51", EXACT_KIND, "full q-Taylor expansion of (x+y)^n is the q-binomial formula", "exact, n <= min(trunc, 8)")
def check_taylor_binomial(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(1, min(ctx.trunc, 8) + 1):
        decomposition = qtaylor(PowerSeries.monomial(F, n), n + 1, n)
        x, y = _gens(QPLANE, ctx, n, "x", "y")
        binomial = NCElement.zero(QPLANE, F, n)
        for k in range(n + 1):
            binomial = binomial + nc_pow(y, n - k) * nc_pow(x, k) * qbinomial(F, n, k)
        parts[f"n={n}"] = merge_reports(
            {
                "remainder": _compare(decomposition.remainder, NCElement.zero(QPLANE, F, n)),
                "binomial": _compare(decomposition.partial, binomial),
            }
        )
    return merge_reports(parts)


@register("eq52", EXACT_KIND, "f(x+y) = sum_k y^k ((1-q)D_q)^k f(x)/(q;q)_k for f = (1-z)^-1")
def check_taylor_series(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    decomposition = qtaylor(PowerSeries.geometric(F, N), N + 1, N)
    return _compare(decomposition.remainder, NCElement.zero(QPLANE, F, N))


@register("eq117", EXACT_KIND, "e_q(x+y) = sum_{k<m} y^k ((1-q)D_q)^k e_q(x)/(q;q)_k + y^m g_m(x,y)", "exact, m <= 4")
def check_taylor_remainder(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    f = series_of(EQ, F, N)
    (y,) = _gens(QPLANE, ctx, N, "y")
    parts = {}
    for m in range(1, int(ctx.get("m_max", 4)) + 1):
        decomposition = qtaylor(f, m, N)
        part = _compare(nc_pow(y, m) * decomposition.g_m, decomposition.remainder)
        if not decomposition.valid:
            part["success"] = False
            part["residual_terms"] = part["residual_terms"] + [f"remainder has y-degree below {m}"]
        parts[f"m={m}"] = part
    return merge_reports(parts)


@register("eq54", EXACT_KIND, "int_0^x t^n d_qt = (1-q)/(1-q^(n+1)) x^(n+1)")
def check_jackson_monomials(ctx: CheckContext) -> dict:
    F = ctx.field
    parts = {}
    for n in range(ctx.trunc + 1):
        expected = PowerSeries.monomial(F, n + 1, (F.one - F.q) / (F.one - F.qpow(n + 1)))
        parts[f"n={n}"] = _compare_series(jackson_0_to_x(PowerSeries.monomial(F, n)), expected, "x")
    return merge_reports(parts)


@register("eq61", EXACT_KIND, "int_0^x (1-t)^-1 d_qt = (1-q) log_q(x)")
def check_jackson_geometric(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    lhs = jackson_0_to_x(PowerSeries.geometric(F, N))
    return _compare_series(lhs, series_of(LOGQ, F, N + 1) * (F.one - F.q), "x")


@register("eq62", EXACT_KIND, "int_y^{x+y} f(t) d_qt = int_0^x f(t+y) d_qt in QPLANE", "exact, f = z^n (n <= 6) and (1-z)^-1")
def check_translation_invariance(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    parts = {}
    for n in range(int(ctx.get("n_max", 6)) + 1):
        parts[f"z^{n}"] = adapt_report(translation_invariance_finite(PowerSeries.monomial(F, n)))
    parts["geometric"] = adapt_report(translation_invariance_finite(PowerSeries.geometric(F, N), N))
    return merge_reports(parts)


# ============================================================================
# REPRESENTATIONS
# ============================================================================


@register("rep-relations", EXACT_KIND, "pi(x) pi(y) = q pi(y) pi(x) for every built-in representation")
def check_representation_relations(ctx: CheckContext) -> dict:
    return merge_reports({rep.kind.value: adapt_report(verify_relation(rep, 16, ctx.field)) for rep in ALL_REPS})


@register("faithfulness", EXACT_KIND, "REP47 evaluation systems have full column rank", "exact rank, degree <= 8")
def check_faithfulness(ctx: CheckContext) -> dict:
    report = adapt_report(faithfulness_check(int(ctx.get("degree", 8)), field=ctx.field))
    report["truncation"] = None
    return report


@register("eq9-rep", EXACT_KIND, "(x+y)^n on z^m under REP47 gives the terminating q-binomial sum", "exact, n, m <= 8")
def check_binomial_representation(ctx: CheckContext) -> dict:
    report = reduce_to_commutative("eq3", REP47, range(9), range(9), field=ctx.field)
    bad = [f"n={r['n']} m={r['m']}" for r in report.get("rows", []) if not r["equal"]]
    report["residual_terms"] = bad
    report.pop("rows", None)
    report["truncation"] = None
    return report


@register("eq12-rep", EXACT_KIND, "e_q(x+y) on z^m under REP47 gives 1phi0(-q^(m+1);;q,z) = e_q(z) E_q(q^(m+1) z)", "exact, m <= 6, truncation 16")
def check_exponential_representation(ctx: CheckContext) -> dict:
    report = reduce_to_commutative("eq12", REP47, range(7), trunc=16, field=ctx.field)
    report["residual_terms"] = [f"m={r['m']}" for r in report.get("rows", []) if not r["equal"]]
    report.pop("rows", None)
    report["truncation"] = 16
    return report


# ============================================================================
# q-HERMITE POLYNOMIALS
# ============================================================================


def _structural(family: str, names, default_n_max: int, ctx: CheckContext) -> dict:
    F = ctx.field
    n_max = int(ctx.get("n_max", default_n_max))
    report = qhermite.structural_checks(family, n_max, F, only=names)
    terms = []
    for name, part in report["checks"].items():
        if part.get("failures"):
            terms.append(f"{name}: n in {part['failures']}")
        elif part.get("error"):
            terms.append(f"{name}: {part['error']}")
    out = {"success": report["success"], "residual_terms": terms, "truncation": n_max, "family": report["family"]}
    if not report["checks"]:
        out["skipped"] = "needs exact q"
    return out


_HERMITE_ENTRIES = (
    ("eq77", "I", ("alternating_sum",), 12, "sum_k [m,k] (-1)^k q^(k(k-1)/2) x^(m-k) h_k(x) = h_m(0)"),
    ("eq145", "II", ("alternating_sum",), 12, "alternating sum of family II against its value at 0"),
    ("eq137", "I", ("monomial_expansion",), 12, "x^n expanded in h_k(x)"),
    ("eq144", "II", ("monomial_expansion",), 12, "x^n expanded in h~_k(x)"),
    ("eq138", "I", ("generating_function",), 12, "E_{q^2}(-t^2) e_q(xt) = sum h_n(x) t^n/(q;q)_n"),
    ("eq141", "II", ("generating_function",), 12, "e_{q^2}(-t^2) E_q(xt) generates h~_n"),
    ("eq142", "I", ("duality",), 10, "h_n(ix; 1/q) = i^n h~_n(x; q)"),
    ("eq147", "I", ("hypergeometric_form",), 12, "explicit sum of h_n equals its terminating 2phi0 form"),
    ("eq150", "II", ("hypergeometric_form",), 12, "explicit sum of h~_n equals its 2phi1 form"),
    ("eq155", "I", ("lowering",), 8, "lowering relation for h_n times the family I weight"),
    ("eq156", "II", ("lowering",), 8, "lowering relation for h~_n times the family II weight"),
    ("eq160", "I", ("rodrigues",), 8, "Rodrigues formula for h_n"),
    ("eq161", "II", ("rodrigues",), 8, "Rodrigues formula for h~_n"),
    ("eq174", "I", ("value_at_zero",), 12, "h_2m(0) = (-1)^m q^(m(m-1)) (q;q^2)_m, h_odd(0) = 0"),
    ("eq169", "II", ("value_at_zero",), 12, "h~_2m(0) = (-1)^m q^(-m^2) (q;q^2)_m, h~_odd(0) = 0"),
)

for _id, _family, _names, _n_max, _anchor in _HERMITE_ENTRIES:
    register(_id, EXACT_KIND, _anchor, f"exact, n <= {_n_max}")(functools.partial(_structural, _family, _names, _n_max))


@register("hermite-recurrence", EXACT_KIND, "three-term recurrences of both q-Hermite families", "exact, n <= 12")
def check_hermite_recurrences(ctx: CheckContext) -> dict:
    return merge_reports({family: _structural(family, ("recurrence",), 12, ctx) for family in ("I", "II")})


@register("eq163", EXACT_KIND, "h_n(x+y) = sum_k [n,k] y^(n-k) h_k(x) in QPLANE", "exact, n <= 6")
def check_hermite_addition(ctx: CheckContext) -> dict:
    parts = {}
    for n in range(int(ctx.get("n_max", 6)) + 1):
        report = qhermite.addition_formula(n, ctx.field)
        report.pop("lhs", None)
        parts[f"n={n}"] = report
    return merge_reports(parts)


@register("eq179", EXACT_KIND, "q-rescaling of h_n by lam, mu with lam mu = q^(1/2) mu lam", "exact, n <= 5")
def check_hermite_rescaling(ctx: CheckContext) -> dict:
    return merge_reports({f"n={n}": qhermite.rescaling_identity(n, ctx.field) for n in range(int(ctx.get("n_max", 5)) + 1)})


# ============================================================================
# BRAIDED LINE
# ============================================================================


@register("hopf", EXACT_KIND, "braided Hopf axioms of C_q[x] on x^n and associativity of the braided tensor product")
def check_hopf_axioms(ctx: CheckContext) -> dict:
    F, N = ctx.field, ctx.trunc
    axioms = braidedline.hopf_axiom_check(N, F)
    axioms["residual_terms"] = [f"{name}: n in {ns}" for name, ns in axioms.get("failures", {}).items()]
    associativity = adapt_report(braidedline.braided_associativity_check(int(ctx.get("max_exp", 3)), F))
    merged = merge_reports({"axioms": axioms, "associativity": associativity})
    merged["truncation"] = N
    return merged


@register("eq88", EXACT_KIND, "Delta e_q = e_q (x) e_q, eps(e_q) = 1, S(e_q(x)) = E_q(-x)")
def check_braided_exponential(ctx: CheckContext) -> dict:
    report = braidedline.exponential_check(ctx.trunc, ctx.field)
    report["residual_terms"] = [name for name, ok in report["checks"].items() if not ok]
    return report


@register("eq168", EXACT_KIND, "Delta h_n = sum_k [n,k] x^(n-k) (x) h_k and m(S (x) id) Delta h_n = h_n(0)", "exact, n <= 8")
def check_hermite_coproduct(ctx: CheckContext) -> dict:
    n_max = min(ctx.trunc, int(ctx.get("n_max", 8)))
    report = braidedline.hermite_coproduct_check(n_max, ctx.field)
    report["residual_terms"] = [f"{name}: n in {ns}" for name, ns in report.get("failures", {}).items()]
    report["truncation"] = n_max
    return report


# ============================================================================
# META CHECKS
# ============================================================================


@register("trunc-monotone", EXACT_KIND, "entries passing at truncation N also pass at N-1 and N-2")
def check_truncation_monotone(ctx: CheckContext) -> dict:
    parts: Dict[str, dict] = {}
    for identity_id in ("eq12", "eq15", "eq23", "eq99"):
        runner = get_entry(identity_id).runner
        for trunc in (ctx.trunc, ctx.trunc - 1, ctx.trunc - 2):
            if trunc < 1:
                continue
            parts[f"{identity_id}@{trunc}"] = runner(dataclasses.replace(ctx, trunc=trunc))
    return merge_reports(parts)
