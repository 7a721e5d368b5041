"""
Discrete q-Hermite polynomials I and II.

Family I is orthogonal for E_{q^2}(-q^2 x^2) on [-1, 1], family II for
e_{q^2}(-x^2) on a two-sided lattice. Polynomials are built from their
explicit sums; every structural identity is checked coefficientwise in the
field of the caller, and the orthogonality and transform integrals by
Jackson quadrature.
"""

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import mpmath

from src.core.coeffield import (
    EXACT,
    GaussQ,
    NumericField,
    ScalarField,
    qbinomial,
    qfactorial,
    qshifted_factorial,
)
from src.core.errors import QCalcError
from src.core.jackson import (
    DEFAULT_CONFIG,
    JacksonConfig,
    b_q,
    c_q,
    jackson_interval,
    jackson_realline,
    weight_I,
    weight_II,
)
from src.core.ncalg import LAMBDA_MU, QPLANE, NCElement, compose_series, nc_pow
from src.core.qfunctions import BIGEQ, EQ, GAUSS_BIGG, GAUSS_G, PowerSeries, numeric_eval, series_of

try:
    from config import COMPARE_TOL
except ImportError:
    COMPARE_TOL = 1e-10

logger = logging.getLogger(__name__)

TRANSFORM_TOL = 1e-9


class HermiteFamily(str, Enum):
    I = "I"  # noqa: E741
    II = "II"


@dataclass(frozen=True)
class QHermitePoly:
    family: HermiteFamily
    n: int
    poly: PowerSeries

    @property
    def field(self):
        return self.poly.field

    def coefficient(self, j: int):
        return self.poly[j]

    def at_zero(self):
        return self.poly[0]

    def __call__(self, x, q=None) -> complex:
        return self.poly.evaluate(x, q)

    def to_text(self) -> str:
        return self.poly.to_text("x")


def _family(family) -> HermiteFamily:
    return family if isinstance(family, HermiteFamily) else HermiteFamily(str(family).upper())


@functools.lru_cache(maxsize=None)
def _hermite(family: HermiteFamily, n: int, F: ScalarField) -> QHermitePoly:
    coeffs = [F.zero] * (n + 1)
    for k in range(n // 2 + 1):
        sign = F.one if k % 2 == 0 else -F.one
        if family is HermiteFamily.I:
            power = F.qpow(k * (k - 1))
        else:
            power = F.qpow(-2 * n * k + k * (2 * k + 1))
        coeffs[n - 2 * k] = qfactorial(F, n) * sign * power / (qfactorial(F, k, 2) * qfactorial(F, n - 2 * k))
    return QHermitePoly(family, n, PowerSeries.polynomial(F, coeffs))


def hermite(family, n: int, field: ScalarField = EXACT) -> QHermitePoly:
    """h_n(x;q) for family I, the second family h~_n(x;q) for family II; both monic."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return _hermite(_family(family), n, field)


def hermite_from_hypergeometric(family, n: int, field: ScalarField = EXACT) -> QHermitePoly:
    """x^n 2phi0(q^-n, q^-n+1;; q^2, q^(2n-1)/x^2) for I, x^n 2phi1(q^-n, q^-n+1; 0; q^2, -q^2/x^2) for II."""
    family = _family(family)
    F = field
    coeffs = [F.zero] * (n + 1)
    for k in range(n // 2 + 1):
        # (q^-n; q^2)_k (q^-n+1; q^2)_k = (q^-n; q)_2k
        c = qshifted_factorial(F, F.qpow(-n), 2 * k) / qfactorial(F, k, 2)
        if family is HermiteFamily.I:
            sign = F.one if k % 2 == 0 else -F.one
            c = c * sign * F.qpow(-k * (k - 1)) * F.qpow((2 * n - 1) * k)
        else:
            c = c * _sign(F, k) * F.qpow(2 * k)
        coeffs[n - 2 * k] = c
    return QHermitePoly(family, n, PowerSeries.polynomial(F, coeffs))


# ============================================================================
# STRUCTURAL CHECKS
# ============================================================================


def _close(F: ScalarField, a, b, tol: float = COMPARE_TOL) -> bool:
    if F.exact:
        return not (a - b)
    return abs(a - b) <= tol * max(1.0, abs(b))


def _same_poly(p: PowerSeries, r: PowerSeries, tol: float = COMPARE_TOL) -> bool:
    F = p.field
    top = max(p.trunc, r.trunc)
    return all(_close(F, p[j], r[j], tol) for j in range(top + 1))


def _q_odd(F: ScalarField, n: int):
    """(q; q^2)_n"""
    return qshifted_factorial(F, F.q, n, base=2)


def _sign(F: ScalarField, k: int):
    return F.one if k % 2 == 0 else -F.one


def _x_power(F: ScalarField, n: int) -> PowerSeries:
    return PowerSeries.monomial(F, n)


def _check_explicit_vs_hypergeometric(family, F, n_max):
    return [n for n in range(n_max + 1) if not _same_poly(hermite(family, n, F).poly, hermite_from_hypergeometric(family, n, F).poly)]


def _check_recurrence(family, F, n_max):
    failures = []
    x = _x_power(F, 1)
    for n in range(1, n_max):
        if family is HermiteFamily.I:
            c = F.qpow(n - 1) * (F.one - F.qpow(n))
        else:
            c = F.qpow(-2 * n + 1) * (F.one - F.qpow(n))
        rhs = x * hermite(family, n, F).poly - hermite(family, n - 1, F).poly * c
        if not _same_poly(hermite(family, n + 1, F).poly, rhs):
            failures.append(n)
    return failures


def _check_special_value(family, F, n_max):
    failures = []
    for m in range(n_max + 1):
        if m % 2:
            expected = F.zero
        else:
            n = m // 2
            if family is HermiteFamily.I:
                expected = _sign(F, n) * F.qpow(n * (n - 1)) * _q_odd(F, n)
            else:
                expected = _q_odd(F, n) * _sign(F, n) * F.qpow(n - 2 * n * n)
        if not _close(F, hermite(family, m, F).at_zero(), expected):
            failures.append(m)
    return failures


def _check_generating_function(family, F, n_max):
    """Coefficient of t^n in E_{q^2}(-t^2) e_q(xt) (I) or e_{q^2}(-t^2) E_q(xt) (II)."""
    weight = series_of(GAUSS_BIGG if family is HermiteFamily.I else GAUSS_G, F, n_max)
    failures = []
    for n in range(n_max + 1):
        coeffs = [F.zero] * (n + 1)
        for j in range(n // 2 + 1):
            l = n - 2 * j  # noqa: E741
            c = weight[2 * j] / qfactorial(F, l)
            if family is HermiteFamily.II:
                c = c * F.qpow(l * (l - 1) // 2)
            coeffs[l] = coeffs[l] + c
        expected = hermite(family, n, F).poly / qfactorial(F, n)
        if family is HermiteFamily.II:
            expected = expected * F.qpow(n * (n - 1) // 2)
        if not _same_poly(PowerSeries.polynomial(F, coeffs), expected):
            failures.append(n)
    return failures


def _check_monomial_expansion(family, F, n_max):
    failures = []
    for n in range(n_max + 1):
        total = PowerSeries.constant(F, 0)
        for k in range(n // 2 + 1):
            c = qfactorial(F, n) / (qfactorial(F, k, 2) * qfactorial(F, n - 2 * k))
            if family is HermiteFamily.II:
                c = c * F.qpow(-2 * n * k + 3 * k * k)
            total = total + hermite(family, n - 2 * k, F).poly * c
        if not _same_poly(total, _x_power(F, n)):
            failures.append(n)
    return failures


def alternating_sum(family, m: int, field: ScalarField = EXACT) -> PowerSeries:
    """sum_k (q^-m;q)_k/(q;q)_k q^(k or mk) H_k(x) x^(m-k) as a polynomial in x."""
    family = _family(family)
    F = field
    total = PowerSeries.constant(F, 0)
    for k in range(m + 1):
        c = qshifted_factorial(F, F.qpow(-m), k) / qfactorial(F, k)
        c = c * (F.qpow(k) if family is HermiteFamily.I else F.qpow(m * k))
        total = total + hermite(family, k, F).poly * _x_power(F, m - k) * c
    return total


def _check_alternating_sum(family, F, n_max):
    failures = []
    for m in range(n_max + 1):
        if m % 2:
            expected = F.zero
        else:
            n = m // 2
            expected = _sign(F, n) * _q_odd(F, n)
            if family is HermiteFamily.I:
                expected = expected * F.qpow(-n * n)
        if not _same_poly(alternating_sum(family, m, F), PowerSeries.constant(F, expected)):
            failures.append(m)
    return failures


def _weight_series(family, F: ScalarField, trunc: int) -> PowerSeries:
    """E_{q^2}(-q^2 x^2) for I, e_{q^2}(-x^2) for II."""
    if family is HermiteFamily.I:
        return series_of(GAUSS_BIGG, F, trunc).dilate(F.q)
    return series_of(GAUSS_G, F, trunc)


def _check_lowering(family, F, n_max, trunc):
    """(1-q) D+ (h_n W) = -q^-n h_(n+1) W and (1-q) D- (h~_n w) = -q^n h~_(n+1) w, as series."""
    weight = _weight_series(family, F, trunc)
    direction = "forward" if family is HermiteFamily.I else "backward"
    failures = []
    for n in range(n_max):
        lhs = (hermite(family, n, F).poly * weight).qderiv(direction) * (F.one - F.q)
        factor = -F.qpow(-n) if family is HermiteFamily.I else -F.qpow(n)
        rhs = hermite(family, n + 1, F).poly * weight * factor
        if lhs.residual(rhs) > (0 if F.exact else COMPARE_TOL):
            failures.append(n)
    return failures


def _check_rodrigues(family, F, n_max, trunc):
    """h_n = (-1)^n q^(+-n(n-1)/2) W^-1 ((1-q) D)^n W with D forward for I, backward for II."""
    weight = _weight_series(family, F, trunc)
    inverse = weight.inverse()
    direction = "forward" if family is HermiteFamily.I else "backward"
    failures = []
    derived = weight
    for n in range(n_max + 1):
        if n > 0:
            derived = derived.qderiv(direction) * (F.one - F.q)
        power = n * (n - 1) // 2
        scale = _sign(F, n) * (F.qpow(power) if family is HermiteFamily.I else F.qpow(-power))
        candidate = derived * inverse.truncate(derived.trunc) * scale
        if candidate.residual(hermite(family, n, F).poly) > (0 if F.exact else COMPARE_TOL):
            failures.append(n)
    return failures


def _check_duality(F, n_max):
    """h_n(ix; 1/q) = i^n h~_n(x; q), with i adjoined exactly."""
    failures = []
    for n in range(n_max + 1):
        first = hermite(HermiteFamily.I, n, F)
        second = hermite(HermiteFamily.II, n, F)
        for j in range(n + 1):
            lhs = GaussQ.unit_power(F, j) * F.invert_q(first.coefficient(j))
            rhs = GaussQ.unit_power(F, n) * second.coefficient(j)
            if not (lhs - rhs).is_zero():
                failures.append(n)
                break
    return failures


def structural_checks(family, n_max: int = 8, field: ScalarField = EXACT, only: Optional[Iterable[str]] = None) -> dict:
    """Structural identities of one family for degrees up to n_max; ``only`` picks a subset by name."""
    family = _family(family)
    F = field
    trunc = 2 * n_max + 8
    checks = {
        "hypergeometric_form": lambda: _check_explicit_vs_hypergeometric(family, F, n_max),
        "recurrence": lambda: _check_recurrence(family, F, n_max),
        "value_at_zero": lambda: _check_special_value(family, F, n_max),
        "generating_function": lambda: _check_generating_function(family, F, n_max),
        "monomial_expansion": lambda: _check_monomial_expansion(family, F, n_max),
        "alternating_sum": lambda: _check_alternating_sum(family, F, n_max),
        "lowering": lambda: _check_lowering(family, F, n_max, trunc),
        "rodrigues": lambda: _check_rodrigues(family, F, n_max, trunc),
    }
    if F.exact:
        checks["duality"] = lambda: _check_duality(F, n_max)
    if only is not None:
        wanted = set(only)
        unknown = wanted - set(checks) - {"duality"}
        if unknown:
            raise ValueError(f"unknown structural checks {sorted(unknown)}")
        checks = {name: run for name, run in checks.items() if name in wanted}
    results = {}
    for name, run in checks.items():
        try:
            failures = run()
            results[name] = {"success": not failures, "failures": failures}
        except QCalcError as e:
            results[name] = {"success": False, "error": str(e)}
    success = all(r["success"] for r in results.values())
    if not success:
        logger.warning("family %s structural checks failed: %s", family.value, [k for k, r in results.items() if not r["success"]])
    return {"success": success, "family": family.value, "n_max": n_max, "checks": results}


# ============================================================================
# NUMERIC ORTHOGONALITY AND TRANSFORMS
# ============================================================================


def norm(family, n: int, q: float, gamma: float = 1.0) -> float:
    """b_q q^(n(n-1)/2) (q;q)_n for I, c_q(gamma) q^(-n^2) (q;q)_n for II."""
    family = _family(family)
    poch = qfactorial(NumericField(q), n).real
    if family is HermiteFamily.I:
        return b_q(q) * q ** (n * (n - 1) / 2) * poch
    return c_q(gamma, q) * q ** (-n * n) * poch


def _hermite_I_mp(n: int, x, q):
    """h_n(x;q) by x h_k = h_{k+1} + q^(k-1)(1-q^k) h_{k-1}, in the current mpmath precision."""
    prev, cur = mpmath.mpf(0), mpmath.mpf(1)
    for k in range(n):
        prev, cur = cur, x * cur - (q ** (k - 1) * (1 - q**k) * prev if k else 0)
    return cur


def _orthogonality_integral_I(m: int, n: int, q: float) -> float:
    """int_{-1}^{1} h_m h_n E_{q^2}(-q^2 x^2) d_qx with enough digits to resolve q^(n(n-1)/2)."""
    top = max(m, n)
    digits = 20 + math.ceil(top * (top - 1) / 2 * -math.log10(q))
    with mpmath.workdps(digits):
        qm = mpmath.mpf(q)
        q2 = qm * qm
        cutoff = mpmath.mpf(10) ** (-digits)
        total = mpmath.mpf(0)
        point = mpmath.mpf(1)
        while point > cutoff:
            for x in (point, -point):
                total += _hermite_I_mp(m, x, qm) * _hermite_I_mp(n, x, qm) * mpmath.qp(q2 * x * x, q2) * point
            point *= qm
        return float((1 - qm) * total)


def _orthogonality_integral(family, m, n, q, gamma, cfg):
    if family is HermiteFamily.I:
        return _orthogonality_integral_I(m, n, q)
    F = NumericField(q)
    hm = hermite(family, m, F)
    hn = hermite(family, n, F)
    return jackson_realline(lambda x: hm(x) * hn(x) * weight_II(x, q), gamma, q, cfg)


def orthogonality_numeric(
    family, m: int, n: int, q: float = 0.5, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG, tol: float = COMPARE_TOL
) -> dict:
    """Jackson integral of H_m H_n times the family weight against norm * delta_mn.

    Diagonal entries are compared relatively; off-diagonal ones relative to the
    geometric mean of the two diagonal norms.
    """
    family = _family(family)
    try:
        value = _orthogonality_integral(family, m, n, q, gamma, cfg)
        if m == n:
            expected = norm(family, n, q, gamma)
            deviation = abs(value - expected) / abs(expected)
        else:
            expected = 0.0
            deviation = abs(value) / (abs(norm(family, m, q, gamma)) * abs(norm(family, n, q, gamma))) ** 0.5
    except QCalcError as e:
        return {"success": False, "family": family.value, "m": m, "n": n, "error": str(e)}
    return {
        "success": deviation < tol,
        "family": family.value,
        "m": m,
        "n": n,
        "computed": value,
        "closed_form": expected,
        "deviation": deviation,
    }


def orthogonality_rows(family, indices: Iterable[int], q: float = 0.5, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG):
    indices = list(indices)
    return [orthogonality_numeric(family, m, n, q, gamma, cfg) for m in indices for n in indices]


def _kernel_minus(x, t, q):
    """e_q(-ixt)"""
    return numeric_eval(EQ, -1j * x * t, q)


def _kernel_plus(x, t, q):
    """E_q(iqxt)"""
    return numeric_eval(BIGEQ, 1j * q * x * t, q)


def transform_pair(kind: str, n: int, t: float, q: float, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG):
    """(quadrature, closed form) of one transform integral at the sample t.

    "140": int_{-1}^{1} e_q(-ixt) h_n W_I = b_q q^(n(n-1)/2) i^-n t^n e_{q^2}(-t^2)
    "146": int E_q(iqxt) h~_n w = c_q q^(-n(n-1)/2) i^n t^n E_{q^2}(-q^2 t^2)
    "148": int_{-1}^{1} e_q(-ixt) x^n W_I = b_q q^(n(n-1)/2) i^-n h~_n(t) e_{q^2}(-t^2)
    "149": int E_q(iqxt) x^n w = c_q q^(-n(n-1)/2) i^n h_n(t) E_{q^2}(-q^2 t^2)
    """
    F = NumericField(q)
    half = n * (n - 1) / 2
    if kind == "140":
        h = hermite(HermiteFamily.I, n, F)
        computed = jackson_interval(lambda x: _kernel_minus(x, t, q) * h(x) * weight_I(x, q), -1.0, 1.0, q, cfg)
        closed = b_q(q) * q**half * (1j) ** (-n) * t**n * weight_II(t, q)
    elif kind == "146":
        h = hermite(HermiteFamily.II, n, F)
        computed = jackson_realline(lambda x: _kernel_plus(x, t, q) * h(x) * weight_II(x, q), gamma, q, cfg)
        closed = c_q(gamma, q) * q ** (-half) * (1j) ** n * t**n * weight_I(t, q)
    elif kind == "148":
        computed = jackson_interval(lambda x: _kernel_minus(x, t, q) * x**n * weight_I(x, q), -1.0, 1.0, q, cfg)
        closed = b_q(q) * q**half * (1j) ** (-n) * hermite(HermiteFamily.II, n, F)(t) * weight_II(t, q)
    elif kind == "149":
        computed = jackson_realline(lambda x: _kernel_plus(x, t, q) * x**n * weight_II(x, q), gamma, q, cfg)
        closed = c_q(gamma, q) * q ** (-half) * (1j) ** n * hermite(HermiteFamily.I, n, F)(t) * weight_I(t, q)
    else:
        raise ValueError(f"unknown transform integral {kind!r}")
    return computed, closed


def transform_integrals(
    kind: str,
    n: int,
    t_samples: Sequence[float] = (0.0, 0.25, 0.5, -0.5, 1.0),
    q: float = 0.5,
    gamma: float = 1.0,
    cfg: JacksonConfig = DEFAULT_CONFIG,
    tol: float = TRANSFORM_TOL,
) -> dict:
    rows = []
    try:
        scale = b_q(q) if kind in ("140", "148") else c_q(gamma, q)
        for t in t_samples:
            computed, closed = transform_pair(kind, n, t, q, gamma, cfg)
            rows.append({"t": t, "computed": computed, "closed_form": closed, "deviation": abs(computed - closed) / abs(scale)})
    except (QCalcError, ValueError) as e:
        return {"success": False, "kind": kind, "n": n, "rows": rows, "error": str(e)}
    worst = max((r["deviation"] for r in rows), default=0.0)
    return {"success": worst < tol, "kind": kind, "n": n, "rows": rows, "max_residual": worst}


# ============================================================================
# q-COMMUTING FORMULAS
# ============================================================================


def addition_formula(n: int, field: ScalarField = EXACT) -> dict:
    """h_n(x+y) = sum_k [n,k] y^(n-k) h_k(x) in QPLANE."""
    F = field
    N = max(n, 1)
    x = NCElement.generator(QPLANE, "x", F, N)
    y = NCElement.generator(QPLANE, "y", F, N)
    lhs = compose_series(hermite(HermiteFamily.I, n, F).poly, x + y)
    rhs = NCElement.zero(QPLANE, F, N)
    for k in range(n + 1):
        rhs = rhs + nc_pow(y, n - k) * compose_series(hermite(HermiteFamily.I, k, F).poly, x) * qbinomial(F, n, k)
    diff = lhs - rhs
    residual_terms = [] if diff.is_zero(COMPARE_TOL) else [diff.to_text()]
    return {"success": not residual_terms, "n": n, "lhs": lhs.to_text(), "residual_terms": residual_terms}


def rescaling_identity(n: int, field: ScalarField = EXACT) -> dict:
    """The q-rescaling of h_n by lam, mu with lam mu = q^(1/2) mu lam and x central."""
    F = field
    N = max(2 * n, 1)
    x = NCElement.generator(LAMBDA_MU, "x", F, N)
    lam = NCElement.generator(LAMBDA_MU, "lam", F, N)
    mu = NCElement.generator(LAMBDA_MU, "mu", F, N)
    squares = lam * lam + mu * mu
    lhs = NCElement.zero(LAMBDA_MU, F, N)
    rhs = NCElement.zero(LAMBDA_MU, F, N)
    for k in range(n // 2 + 1):
        c = _sign(F, k) * F.qpow(k * (k - 1)) / (qfactorial(F, n - 2 * k) * qfactorial(F, k, 2))
        lead = nc_pow(lam, n - 2 * k)
        lhs = lhs + lead * nc_pow(squares, k) * nc_pow(x, n - 2 * k) * c
        h = compose_series(hermite(HermiteFamily.I, n - 2 * k, F).poly, x)
        rhs = rhs + lead * nc_pow(mu, 2 * k) * h * c
    diff = lhs - rhs
    residual_terms = [] if diff.is_zero(COMPARE_TOL) else [diff.to_text()]
    return {"success": not residual_terms, "n": n, "overflow": lhs.overflow + rhs.overflow, "residual_terms": residual_terms}
