"""
Numeric identity entries.

These run at a numeric q (the requested one, or DEFAULT_NUMERIC_Q under an
exact run) and delegate to the Jackson, q-Hermite, q-Fourier and braided line
checks; the report carries the worst deviation as max_residual.
"""

import logging
from dataclasses import replace

import numpy as np

from src.core import braidedline, jackson, qfourier, qhermite
from src.core.errors import DivergentUpperTail
from src.core.qfunctions import (
    BIGEQ,
    EQ,
    eq32_check,
    gauss_g,
    hybrid_identities,
    limit_check_q1,
    numeric_eval,
)
from src.identities.algebraic import adapt_report, merge_reports
from src.identities.registry import CheckContext, register

try:
    from config import COMPARE_TOL
except ImportError:
    COMPARE_TOL = 1e-10

logger = logging.getLogger(__name__)

NUMERIC_KIND = "numeric"

# interior sample points for series identities, |z| <= 1/2
SERIES_SAMPLES = (0.0, 0.1, -0.1, 0.25, -0.25, 0.5, -0.5)

# Fourier pair samples on [-1.5, 1.5]
PAIR_SAMPLES = tuple(float(y) for y in np.linspace(-1.5, 1.5, 21))


def _tol(ctx: CheckContext, default: float = COMPARE_TOL) -> float:
    return float(ctx.tol) if ctx.tol is not None else default


def _transform_config(ctx: CheckContext) -> qfourier.TransformConfig:
    return qfourier.TransformConfig(ctx.q, ctx.gamma)


def _worst_of(rows, tol: float, key: str = "deviation") -> dict:
    worst = max((float(r[key]) for r in rows), default=0.0)
    bad = [r for r in rows if r[key] >= tol]
    return {
        "success": not bad,
        "max_residual": worst,
        "residual_terms": [", ".join(f"{k}={v}" for k, v in r.items() if k in ("m", "n", "y", "t", "k")) for r in bad],
        "checked": len(rows),
    }


def _strip_rows(report: dict) -> dict:
    out = adapt_report(report)
    out.pop("rows", None)
    out["truncation"] = None
    return out


# ============================================================================
# SERIES AT NUMERIC q
# ============================================================================


@register("eq14n", NUMERIC_KIND, "e_q(z) E_q(-z) = 1 at sample points", "relative 1e-10, |z| <= 1/2")
def check_exponential_inverse_numeric(ctx: CheckContext) -> dict:
    q = ctx.q
    worst = max(abs(numeric_eval(EQ, z, q) * numeric_eval(BIGEQ, -z, q) - 1) for z in SERIES_SAMPLES)
    return {"success": worst < _tol(ctx), "max_residual": worst}


@register("eq67n", NUMERIC_KIND, "g_q(z) = e_q(iz) e_q(-iz) at sample points", "relative 1e-10, |z| <= 1/2")
def check_gaussian_factorization_numeric(ctx: CheckContext) -> dict:
    q = ctx.q
    worst = 0.0
    for z in SERIES_SAMPLES:
        lhs = gauss_g(z, q)
        rhs = numeric_eval(EQ, 1j * z, q) * numeric_eval(EQ, -1j * z, q)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return {"success": worst < _tol(ctx), "max_residual": worst}


def _hybrid(check_name: str):
    def runner(ctx: CheckContext) -> dict:
        report = hybrid_identities(ctx.q)["checks"][check_name]
        return dict(report)

    return runner


for _id, _name, _anchor, _contract in (
    ("eq89", "eq89", "Li2(z;q) = log e_q(z)", "1e-10 on |z| <= 1/2"),
    ("eq108", "eq108", "log_q(z) = z e_q'(z)/e_q(z)", "1e-10 on |z| <= 1/2"),
    ("eq109", "eq109", "log_q(z) = -d/da 1phi0(a;;q,z) at a=1 by central difference", "1e-6, step FD_STEP"),
    ("eq111n", "eq111", "(1-q) D_q log_q(z) = 1/(1-z) at sample points", "1e-10 on |z| <= 1/2"),
    ("eq112", "eq112", "chain rule (D_q f)(g(x)) (D_q g)(x) = 1, f = (1-q) log_q, g = 1 - e_q(-(1-q)x)", "1e-10 on the observed valid range"),
):
    register(_id, NUMERIC_KIND, _anchor, _contract)(_hybrid(_name))


def _limits(which: str, zs):
    def runner(ctx: CheckContext) -> dict:
        parts = {f"{which} z={z}": limit_check_q1(which, z) for z in zs}
        merged = merge_reports({k: adapt_report(v) for k, v in parts.items()})
        merged["deviations"] = {k: v.get("deviations") for k, v in parts.items()}
        merged["truncation"] = None
        return merged

    return runner


register("eq90", NUMERIC_KIND, "e_q((1-q)z) and E_q((1-q)z) tend to exp(z) as q -> 1", "monotone along q = 0.9, 0.99, 0.999; below 1e-2 at 0.999")(
    lambda ctx: merge_reports({"eq": _limits("eq", (0.5, 1.0))(ctx), "bigEq": _limits("bigEq", (0.5, 1.0))(ctx)})
)
register("eq107", NUMERIC_KIND, "(1-q) log_q(z) tends to -log(1-z) as q -> 1", "monotone along q = 0.9, 0.99, 0.999")(
    _limits("logq", (0.5, -0.5))
)
register("eq116", NUMERIC_KIND, "(1-q) Li2(z;q) tends to Li2(z) as q -> 1", "monotone along q = 0.9, 0.99, 0.999")(
    _limits("li2q", (0.5, -0.5))
)


@register("eq32", NUMERIC_KIND, "sum_{n>=k} (1-q^k)/(1-q^n) [n,k] y^(n-k) (y;q)_k = 1", "1e-10, k <= 6")
def check_tail_sum(ctx: CheckContext) -> dict:
    return merge_reports({f"y={y}": adapt_report(eq32_check(ctx.q, y, tol=_tol(ctx))) for y in (0.3, -0.4)})


# ============================================================================
# JACKSON INTEGRALS ON THE REAL LINE
# ============================================================================


def _invariance(weight: str, ctx: CheckContext) -> dict:
    parts = {}
    for j in range(int(ctx.get("j_max", 4)) + 1):
        report = jackson.translation_invariance_infinite(weight, j, ctx.gamma, ctx.q, 6, tol=_tol(ctx))
        parts[f"j={j}"] = adapt_report(
            {"success": report["success"], "max_residual": report["max_residual"]}
        )
    return merge_reports(parts)


@register("eq65", NUMERIC_KIND, "I_{f_m}(gamma) = 0 for f = t^j g_q(t), m = 1..6", "1e-10, j <= 4")
def check_translation_invariance_gaussian(ctx: CheckContext) -> dict:
    return _invariance("g", ctx)


@register("eq65-bigG", NUMERIC_KIND, "I_{f_m}(1) = 0 for f = t^j G_q(t), m = 1..6", "1e-10, j <= 4, gamma = 1")
def check_translation_invariance_big_gaussian(ctx: CheckContext) -> dict:
    if ctx.gamma != 1.0:
        logger.debug("eq65-bigG runs at gamma = 1, ignoring gamma = %g", ctx.gamma)
    return _invariance("G", replace(ctx, gamma=1.0))


@register("eq65-divergent", NUMERIC_KIND, "the G_q real-line integral diverges off the lattice q^Z", "gamma = 1.1 raises DivergentUpperTail")
def check_divergent_tail(ctx: CheckContext) -> dict:
    try:
        jackson.translation_invariance_infinite("G", 0, 1.1, ctx.q, 1)
    except DivergentUpperTail as e:
        return {"success": True, "detected": str(e)}
    return {"success": False, "residual_terms": ["integral at gamma = 1.1 did not diverge"]}


@register("telescoping", NUMERIC_KIND, "int D_q f d_qt equals its telescoped boundary terms, f = t^2 g_q(t)", "1e-12")
def check_telescoping(ctx: CheckContext) -> dict:
    q = ctx.q
    report = jackson.telescoped_boundary_check(lambda t: t**2 * jackson.weight_II(t, q), ctx.gamma, ctx.q)
    report.pop("boundary_terms", None)
    return adapt_report(report)


@register("eq69", NUMERIC_KIND, "int t^2n g_q(t) d_qt = c_q(gamma) q^(-n^2) (q;q^2)_n, odd moments vanish", "1e-10 relative to c_q, m <= 8")
def check_gaussian_moments(ctx: CheckContext) -> dict:
    return _strip_rows(jackson.moments_check("69", range(9), ctx.q, ctx.gamma, tol=_tol(ctx)))


@register("eq126", NUMERIC_KIND, "int_{-q}^{q} t^2n G_q(t) d_qt = b_q q^(2n+1) (q;q^2)_n, odd moments vanish", "1e-10 relative to b_q, m <= 8")
def check_big_gaussian_moments(ctx: CheckContext) -> dict:
    return _strip_rows(jackson.moments_check("126", range(9), ctx.q, ctx.gamma, tol=_tol(ctx)))


def _operator_forms(kind: str, ctx: CheckContext) -> dict:
    parts = {
        f"m={m}": _strip_rows(jackson.operator_form_check(kind, m, ctx.q, ctx.gamma, tol=_tol(ctx)))
        for m in range(5)
    }
    return merge_reports(parts)


@register("eq75", NUMERIC_KIND, "moment integral anchored at x acts on z^k by the constant c_q(gamma q^k) of the moment formula", "1e-10, m <= 4")
def check_moment_operator(ctx: CheckContext) -> dict:
    return _operator_forms("75", ctx)


@register("eq127", NUMERIC_KIND, "G_q moment integral anchored at x acts on z^k by the constant of the moment formula", "1e-10, m <= 4")
def check_big_moment_operator(ctx: CheckContext) -> dict:
    return _operator_forms("127", ctx)


@register("gamma-invariance", NUMERIC_KIND, "the real-line integral is unchanged by gamma -> q gamma", "1e-12")
def check_gamma_invariance(ctx: CheckContext) -> dict:
    q = ctx.q
    integrands = {
        "g_q": lambda t: jackson.weight_II(t, q),
        "t^2 g_q": lambda t: t**2 * jackson.weight_II(t, q),
        "t^4 g_q": lambda t: t**4 * jackson.weight_II(t, q),
    }
    parts = {
        name: adapt_report(jackson.gamma_invariance_check(f, ctx.gamma, q, tol=_tol(ctx, 1e-12)))
        for name, f in integrands.items()
    }
    return merge_reports(parts)


# ============================================================================
# q-HERMITE ORTHOGONALITY AND TRANSFORMS
# ============================================================================


def _orthogonality(family: str, gamma: float, ctx: CheckContext) -> dict:
    rows = qhermite.orthogonality_rows(family, range(int(ctx.get("n_max", 8)) + 1), ctx.q, gamma)
    errors = [r["error"] for r in rows if r.get("error")]
    report = _worst_of([r for r in rows if "deviation" in r], _tol(ctx))
    if errors:
        report["success"] = False
        report["error"] = errors[0]
    return report


@register("eq139", NUMERIC_KIND, "int_{-1}^{1} h_m h_n E_{q^2}(-q^2 x^2) d_qx = b_q q^(n(n-1)/2) (q;q)_n delta_mn", "1e-10, m, n <= 8")
def check_orthogonality_first(ctx: CheckContext) -> dict:
    return _orthogonality("I", ctx.gamma, ctx)


@register("eq151", NUMERIC_KIND, "real-line int h~_m h~_n e_{q^2}(-x^2) d_qx = c_q(gamma) q^(-n^2) (q;q)_n delta_mn", "1e-10, m, n <= 8, gamma in {requested, 0.7}")
def check_orthogonality_second(ctx: CheckContext) -> dict:
    gammas = dict.fromkeys((ctx.gamma, 0.7))
    return merge_reports({f"gamma={g}": _orthogonality("II", g, ctx) for g in gammas})


def _transform_integrals(kind: str, ctx: CheckContext) -> dict:
    parts = {
        f"n={n}": _strip_rows(qhermite.transform_integrals(kind, n, q=ctx.q, gamma=ctx.gamma, tol=_tol(ctx, qhermite.TRANSFORM_TOL)))
        for n in range(int(ctx.get("n_max", 4)) + 1)
    }
    return merge_reports(parts)


for _id, _anchor in (
    ("eq140", "int_{-1}^{1} e_q(-ixt) h_n W_I d_qx = b_q q^(n(n-1)/2) i^-n t^n e_{q^2}(-t^2)"),
    ("eq146", "int e_q-kernel E_q(iqxt) h~_n w d_qx = c_q q^(-n(n-1)/2) i^n t^n E_{q^2}(-q^2 t^2)"),
    ("eq148", "int_{-1}^{1} e_q(-ixt) x^n W_I d_qx = b_q q^(n(n-1)/2) i^-n h~_n(t) e_{q^2}(-t^2)"),
    ("eq149", "int E_q(iqxt) x^n w d_qx = c_q q^(-n(n-1)/2) i^n h_n(t) E_{q^2}(-q^2 t^2)"),
):
    register(_id, NUMERIC_KIND, _anchor, "1e-9, n <= 4")(
        lambda ctx, kind=_id[2:]: _transform_integrals(kind, ctx)
    )


# ============================================================================
# q-FOURIER TRANSFORM
# ============================================================================


def _pairs(kind: str, ctx: CheckContext) -> dict:
    report = qfourier.pairs_check(
        kind, int(ctx.get("n_max", 8)), PAIR_SAMPLES, _transform_config(ctx), _tol(ctx, qfourier.FOURIER_TOL)
    )
    return _strip_rows(report)


@register("eq153", NUMERIC_KIND, "F_q(h_n W_I)(y) = q^(n(n-1)/2) i^-n y^n e_{q^2}(-y^2)", "1e-9, n <= 8, 21 samples")
def check_fourier_hermite(ctx: CheckContext) -> dict:
    return _pairs("153", ctx)


@register("eq154", NUMERIC_KIND, "F_q(x^n W_I)(y) = q^(n(n-1)/2) i^-n h~_n(y) e_{q^2}(-y^2)", "1e-9, n <= 8, 21 samples")
def check_fourier_monomial(ctx: CheckContext) -> dict:
    return _pairs("154", ctx)


@register("roundtrip", NUMERIC_KIND, "F~ inverts F_q on both pair families", "1e-9, n <= 3")
def check_fourier_roundtrip(ctx: CheckContext) -> dict:
    report = qfourier.roundtrip_check(3, _transform_config(ctx), tol=_tol(ctx, qfourier.FOURIER_TOL))
    report["truncation"] = None
    return adapt_report(report)


@register("prop27", NUMERIC_KIND, "(1-q) F_q(D+ f) = iy F_q f and (1-q) F~(D- g) = -ix F~ g", "1e-9, f = W_I, g = e_{q^2}(-x^2)")
def check_derivative_exchange(ctx: CheckContext) -> dict:
    q = ctx.q
    report = qfourier.derivative_exchange_check(
        f=lambda x: jackson.weight_I(x, q),
        g=lambda y: jackson.weight_II(y, q),
        tc=_transform_config(ctx),
        tol=_tol(ctx, qfourier.FOURIER_TOL),
    )
    return _strip_rows(report)


@register("lowering-lattice", NUMERIC_KIND, "lowering relations of both q-Hermite families on lattice samples", "1e-9, n <= 5")
def check_lowering_lattice(ctx: CheckContext) -> dict:
    tc = _transform_config(ctx)
    return merge_reports(
        {family: adapt_report(qfourier.lowering_lattice_check(family, 5, tc)) for family in ("I", "II")}
    )


@register("fourier-linearity", NUMERIC_KIND, "F_q and F~ are linear", "1e-9")
def check_fourier_linearity(ctx: CheckContext) -> dict:
    q = ctx.q
    return adapt_report(
        qfourier.linearity_check(
            lambda x: jackson.weight_I(x, q),
            lambda x: x**2 * jackson.weight_I(x, q),
            tc=_transform_config(ctx),
        )
    )


@register("fourier-gamma-shift", NUMERIC_KIND, "F~ is unchanged by gamma -> q gamma", "1e-10")
def check_fourier_gamma_shift(ctx: CheckContext) -> dict:
    q = ctx.q
    return adapt_report(qfourier.gamma_shift_check(lambda y: jackson.weight_II(y, q), tc=_transform_config(ctx)))


# ============================================================================
# BRAIDED COVARIANCE
# ============================================================================


@register("eq170", NUMERIC_KIND, "(id (x) int) Delta f = int f: every normalized q-derivative of f = t^2 g_q integrates to 0", "1e-8, m = 1..4")
def check_coproduct_integral(ctx: CheckContext) -> dict:
    report = jackson.translation_invariance_infinite("g", 2, ctx.gamma, ctx.q, 4, tol=_tol(ctx, braidedline.COVARIANCE_TOL))
    return adapt_report({"success": report["success"], "max_residual": report["max_residual"]})


@register("eq173", NUMERIC_KIND, "(id (x) F_y) Delta f = F_y(f) E_q(ixy), degree by degree, f = t^2 g_q", "1e-8, m <= 4")
def check_fourier_covariance(ctx: CheckContext) -> dict:
    rows = braidedline.fourier_covariance(2, (0.0, 0.25, 0.5), 4, ctx.q, ctx.gamma)
    return _worst_of(rows, _tol(ctx, braidedline.COVARIANCE_TOL))


@register("eq177", NUMERIC_KIND, "int g(q^m t) f_m(t) d_qt = (-1)^m q^(m(m-1)/2) int g_m(t) f(t) d_qt", "1e-8, m <= 4")
def check_convolution_covariance(ctx: CheckContext) -> dict:
    rows = braidedline.convolution_covariance(1, 4, ctx.q, ctx.gamma)
    return _worst_of(rows, _tol(ctx, braidedline.COVARIANCE_TOL))


@register("integral-covariance", NUMERIC_KIND, "the coproduct integral with its Fourier and convolution forms, run together", "1e-8")
def check_integral_covariance(ctx: CheckContext) -> dict:
    report = braidedline.integral_covariance_check(ctx.q, ctx.gamma, tol=_tol(ctx, braidedline.COVARIANCE_TOL))
    parts = {name: adapt_report({k: v for k, v in part.items() if k != "rows"}) for name, part in report.get("checks", {}).items()}
    merged = merge_reports(parts) if parts else {"success": False, "residual_terms": []}
    if report.get("error"):
        merged["success"] = False
        merged["error"] = report["error"]
    return merged
