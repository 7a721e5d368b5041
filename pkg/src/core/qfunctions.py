"""
One-variable q-special functions.

PowerSeries is the commutative, degree-truncated series layer used by every
other module; the named series (q-exponentials, 1phi0, q-logarithm,
q-dilogarithm, q-Gaussians) are built here together with their product-form
numeric evaluators and the q-derivatives.
"""

import cmath
import functools
import logging
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
    qpochhammer_infinite,
    qshifted_factorial,
)
from src.core.errors import AlgebraMismatch, ModeMismatch, NonConvergent, PoleHit
from src.core.ncalg import render_terms

try:
    from config import COMPARE_TOL, FD_STEP, LIMIT_TOL, POLE_GUARD, TAIL_TOL
except ImportError:
    COMPARE_TOL = 1e-10
    FD_STEP = 1e-5
    LIMIT_TOL = 1e-2
    POLE_GUARD = 1e-8
    TAIL_TOL = 1e-15

logger = logging.getLogger(__name__)

MAX_SERIES_TERMS = 200_000


# ============================================================================
# POWER SERIES
# ============================================================================


class PowerSeries:
    """sum_{n<=trunc} c_n z^n; with is_polynomial the coefficients past trunc are zero."""

    __slots__ = ("field", "trunc", "coeffs", "is_polynomial")

    def __init__(self, field: ScalarField, trunc: int, coeffs: Sequence = (), is_polynomial: bool = False):
        if trunc < 0:
            raise ValueError("truncation must be nonnegative")
        values = [field.convert(c) for c in coeffs]
        if is_polynomial and any(not field.is_zero(c) for c in values[trunc + 1 :]):
            raise ValueError("polynomial has terms above its declared degree bound")
        values = values[: trunc + 1]
        values.extend([field.zero] * (trunc + 1 - len(values)))
        self.field = field
        self.trunc = trunc
        self.coeffs = tuple(values)
        self.is_polynomial = is_polynomial

    # -- constructors -------------------------------------------------------

    @classmethod
    def polynomial(cls, field: ScalarField, coeffs: Sequence) -> "PowerSeries":
        coeffs = list(coeffs) or [0]
        return cls(field, len(coeffs) - 1, coeffs, is_polynomial=True)

    @classmethod
    def monomial(cls, field: ScalarField, n: int, coeff=1) -> "PowerSeries":
        return cls.polynomial(field, [0] * n + [coeff])

    @classmethod
    def constant(cls, field: ScalarField, value=1) -> "PowerSeries":
        return cls.polynomial(field, [value])

    @classmethod
    def geometric(cls, field: ScalarField, trunc: int) -> "PowerSeries":
        """(1 - z)^(-1)"""
        return cls(field, trunc, [1] * (trunc + 1))

    # -- helpers ------------------------------------------------------------

    def _check(self, other: "PowerSeries"):
        if other.field != self.field:
            raise ModeMismatch("series use different coefficient fields")

    def __getitem__(self, n: int):
        if n < 0:
            return self.field.zero
        if n > self.trunc:
            if self.is_polynomial:
                return self.field.zero
            raise IndexError(f"coefficient {n} lies beyond truncation {self.trunc}")
        return self.coeffs[n]

    def degree(self) -> int:
        for n in range(self.trunc, -1, -1):
            if not self.field.is_zero(self.coeffs[n]):
                return n
        return -1

    def truncate(self, trunc: int) -> "PowerSeries":
        if self.is_polynomial and self.degree() <= trunc:
            return PowerSeries(self.field, max(self.degree(), 0), self.coeffs[: max(self.degree(), 0) + 1], True)
        if not self.is_polynomial and trunc > self.trunc:
            raise AlgebraMismatch(f"cannot extend a series known to degree {self.trunc}")
        return PowerSeries(self.field, trunc, self.coeffs[: trunc + 1])

    def as_series(self, trunc: int) -> "PowerSeries":
        """View as a series known exactly to degree trunc."""
        if self.is_polynomial:
            return PowerSeries(self.field, trunc, [self[n] for n in range(trunc + 1)])
        return self.truncate(trunc)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(self.field, other)
        self._check(other)
        if self.is_polynomial and other.is_polynomial:
            n = max(self.trunc, other.trunc)
            return PowerSeries(self.field, n, [self[k] + other[k] for k in range(n + 1)], True)
        n = min(s.trunc for s in (self, other) if not s.is_polynomial)
        return PowerSeries(self.field, n, [self[k] + other[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self.field, self.trunc, [-c for c in self.coeffs], self.is_polynomial)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = self.field.convert(other)
            return PowerSeries(self.field, self.trunc, [a * c for a in self.coeffs], self.is_polynomial)
        self._check(other)
        if self.is_polynomial and other.is_polynomial:
            n, poly = self.trunc + other.trunc, True
        else:
            n, poly = min(s.trunc for s in (self, other) if not s.is_polynomial), False
        F = self.field
        out = [F.zero] * (n + 1)
        for i in range(min(self.trunc, n) + 1):
            a = self.coeffs[i]
            if F.is_zero(a):
                continue
            for j in range(min(other.trunc, n - i) + 1):
                b = other.coeffs[j]
                if not F.is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(F, n, out, poly)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (self.field.one / self.field.convert(other))

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.field != self.field:
            return False
        n = max(self.trunc, other.trunc)
        try:
            return all(self[k] == other[k] for k in range(n + 1))
        except IndexError:
            return False

    __hash__ = None

    def residual(self, other: "PowerSeries") -> float:
        """Largest coefficient gap on the common range (0 or 1 in exact mode)."""
        self._check(other)
        n = min(
            [s.trunc for s in (self, other) if not s.is_polynomial] or [max(self.trunc, other.trunc)]
        )
        F = self.field
        return max((F.magnitude(self[k] - other[k]) for k in range(n + 1)), default=0.0)

    def dilate(self, c) -> "PowerSeries":
        """f(c z)"""
        c = self.field.convert(c)
        out, power = [], self.field.one
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return PowerSeries(self.field, self.trunc, out, self.is_polynomial)

    def shift(self, k: int) -> "PowerSeries":
        """z^k f(z)"""
        F = self.field
        return PowerSeries(F, self.trunc + k, [F.zero] * k + list(self.coeffs), self.is_polynomial)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """f(g(z)) for g(0) = 0."""
        self._check(inner)
        F = self.field
        if not F.is_zero(inner[0]):
            raise ValueError("inner series must have zero constant term")
        if self.is_polynomial and inner.is_polynomial:
            result = PowerSeries.constant(F, 0)
        else:
            n = min(s.trunc for s in (self, inner) if not s.is_polynomial)
            inner = inner.as_series(n)
            result = PowerSeries(F, n, [])
        for k in range(self.trunc, -1, -1):
            result = result * inner + self[k]
        return result

    def inverse(self) -> "PowerSeries":
        F = self.field
        if F.is_zero(self[0]):
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.trunc
        out = [F.one / self[0]]
        for k in range(1, n + 1):
            acc = F.zero
            for j in range(1, k + 1):
                acc = acc + self[j] * out[k - j]
            out.append(-acc * out[0])
        return PowerSeries(F, n, out)

    def qderiv(self, direction: str = "backward") -> "PowerSeries":
        """Termwise q-derivative; the result is known to one degree less."""
        F = self.field
        scale = F.one / (F.one - F.q)
        out = []
        for n in range(1, self.trunc + 1):
            if direction == "backward":
                factor = (F.one - F.qpow(n)) * scale
            elif direction == "forward":
                factor = (F.qpow(-n) - F.one) * scale
            else:
                raise ValueError(f"direction must be 'backward' or 'forward', got {direction!r}")
            out.append(self.coeffs[n] * factor)
        return PowerSeries(F, max(self.trunc - 1, 0), out, self.is_polynomial)

    def derivative(self) -> "PowerSeries":
        out = [self.coeffs[n] * n for n in range(1, self.trunc + 1)]
        return PowerSeries(self.field, max(self.trunc - 1, 0), out, self.is_polynomial)

    def evaluate(self, z, q: Optional[float] = None) -> complex:
        """Horner sum of the stored coefficients at a numeric point."""
        F = self.field
        if F.exact and q is None:
            raise ModeMismatch("exact series need a concrete q to evaluate")
        total = 0j
        for c in reversed(self.coeffs):
            total = total * z + (F.evaluate(c, q) if F.exact else c)
        return total

    def to_text(self, var: str = "z") -> str:
        F = self.field
        indices = range(self.trunc + 1)
        if self.is_polynomial:
            indices = reversed(indices)
        terms = [
            ("1" if n == 0 else var if n == 1 else f"{var}^{n}", self.coeffs[n])
            for n in indices
            if not F.is_zero(self.coeffs[n])
        ]
        text = render_terms(F, terms)
        if not self.is_polynomial:
            text += f" + O({var}^{self.trunc + 1})"
        return text

    def __repr__(self):
        return f"PowerSeries({self.to_text()})"


# ============================================================================
# NAMED SERIES
# ============================================================================


class SeriesKind(str, Enum):
    EQ = "eq"
    BIGEQ = "bigEq"
    PHI10 = "phi10"
    LOGQ = "logq"
    LI2Q = "li2q"
    GAUSS_G = "gauss_g"
    GAUSS_BIGG = "gauss_G"


@dataclass(frozen=True)
class NamedSeries:
    """A named q-series in base q^base; ``a`` is the 1phi0 parameter."""

    kind: SeriesKind
    a: object = None
    base: int = 1


EQ = NamedSeries(SeriesKind.EQ)
BIGEQ = NamedSeries(SeriesKind.BIGEQ)
LOGQ = NamedSeries(SeriesKind.LOGQ)
LI2Q = NamedSeries(SeriesKind.LI2Q)
GAUSS_G = NamedSeries(SeriesKind.GAUSS_G)
GAUSS_BIGG = NamedSeries(SeriesKind.GAUSS_BIGG)


def phi10(a) -> NamedSeries:
    return NamedSeries(SeriesKind.PHI10, a)


def in_base(name: NamedSeries, base: int) -> NamedSeries:
    """e_{q^b}, E_{q^b}, ... from e_q, E_q, ..."""
    return NamedSeries(name.kind, name.a, name.base * base)


def series_of(name: NamedSeries, field: ScalarField = EXACT, trunc: int = 12) -> PowerSeries:
    F, b, kind = field, name.base, name.kind
    coeffs = []
    for k in range(trunc + 1):
        if kind is SeriesKind.EQ:
            c = F.one / qfactorial(F, k, b)
        elif kind is SeriesKind.BIGEQ:
            c = F.qpow(b * k * (k - 1) // 2) / qfactorial(F, k, b)
        elif kind is SeriesKind.PHI10:
            c = qshifted_factorial(F, name.a, k, b) / qfactorial(F, k, b)
        elif kind is SeriesKind.LOGQ:
            c = F.zero if k == 0 else F.one / (F.one - F.qpow(b * k))
        elif kind is SeriesKind.LI2Q:
            c = F.zero if k == 0 else F.one / ((F.one - F.qpow(b * k)) * k)
        elif kind in (SeriesKind.GAUSS_G, SeriesKind.GAUSS_BIGG):
            if k % 2:
                c = F.zero
            else:
                j = k // 2
                sign = F.one if j % 2 == 0 else -F.one
                c = sign / qfactorial(F, j, 2 * b)
                if kind is SeriesKind.GAUSS_BIGG:
                    c = c * F.qpow(b * j * (j - 1))
        else:
            raise ValueError(f"unknown series {name!r}")
        coeffs.append(c)
    return PowerSeries(F, trunc, coeffs)


def qderiv(f, direction: str = "backward"):
    """Backward or forward q-derivative of a PowerSeries or a QGridFunction."""
    return f.qderiv(direction)


# ============================================================================
# NUMERIC EVALUATION
# ============================================================================


def _check_q(q) -> float:
    q = float(q)
    if not 0 < q < 1:
        raise NonConvergent(f"numeric evaluation needs 0 < q < 1, got {q}")
    return q


@functools.lru_cache(maxsize=262144)
def numeric_eval(name: NamedSeries, z: complex, q: float, tol: float = TAIL_TOL) -> complex:
    """Product-form value of a named series; e_q continues beyond |z| < 1."""
    q = _check_q(q)
    z = complex(z)
    qb = q**name.base
    kind = name.kind
    if kind is SeriesKind.EQ:
        return 1 / qpochhammer_infinite(z, qb, tol, guard=POLE_GUARD).value
    if kind is SeriesKind.BIGEQ:
        return qpochhammer_infinite(-z, qb, tol).value
    if kind is SeriesKind.PHI10:
        a = complex(name.a)
        return qpochhammer_infinite(a * z, qb, tol).value / qpochhammer_infinite(z, qb, tol, guard=POLE_GUARD).value
    if kind is SeriesKind.GAUSS_G:
        return 1 / qpochhammer_infinite(-z * z, qb * qb, tol, guard=POLE_GUARD).value
    if kind is SeriesKind.GAUSS_BIGG:
        return qpochhammer_infinite(z * z, qb * qb, tol).value
    return series_sum(name, z, q, tol)


def series_sum(name: NamedSeries, z: complex, q: float, tol: float = TAIL_TOL) -> complex:
    """Sum the defining power series directly; radius-1 series refuse |z| >= 1."""
    q = _check_q(q)
    z = complex(z)
    qb = q**name.base
    kind = name.kind
    if kind in (SeriesKind.EQ, SeriesKind.PHI10, SeriesKind.LOGQ, SeriesKind.LI2Q) and abs(z) >= 1:
        raise NonConvergent(f"series form of {kind.value} needs |z| < 1, got {z}")
    if kind in (SeriesKind.GAUSS_G,) and abs(z) >= 1:
        raise NonConvergent("series form of g_q needs |z| < 1")
    if kind in (SeriesKind.GAUSS_G, SeriesKind.GAUSS_BIGG):
        inner = NamedSeries(SeriesKind.EQ if kind is SeriesKind.GAUSS_G else SeriesKind.BIGEQ, None, 2 * name.base)
        return series_sum(inner, -z * z, q, tol)
    a = complex(name.a) if kind is SeriesKind.PHI10 else 0j
    total = 0j
    poch = 1 + 0j  # (q^b; q^b)_n
    apoch = 1 + 0j  # (a; q^b)_n
    power = 1 + 0j
    small = 0
    for n in range(MAX_SERIES_TERMS):
        if n > 0:
            poch *= 1 - qb**n
            apoch *= 1 - a * qb ** (n - 1)
            power *= z
        if kind is SeriesKind.EQ:
            term = power / poch
        elif kind is SeriesKind.BIGEQ:
            term = qb ** (n * (n - 1) / 2) * power / poch
        elif kind is SeriesKind.PHI10:
            term = apoch * power / poch
        elif kind is SeriesKind.LOGQ:
            term = 0j if n == 0 else power / (1 - qb**n)
        else:
            term = 0j if n == 0 else power / (n * (1 - qb**n))
        total += term
        small = small + 1 if abs(term) < tol and n > 0 else 0
        if small >= 3 or (n > 0 and power == 0):
            return total
    raise NonConvergent(f"series {kind.value} did not converge at z={z}")


def gauss_g(x, q: float) -> complex:
    """g_q(x) = e_{q^2}(-x^2)"""
    return numeric_eval(GAUSS_G, complex(x), float(q))


def gauss_bigg(x, q: float) -> complex:
    """G_q(x) = E_{q^2}(-x^2)"""
    return numeric_eval(GAUSS_BIGG, complex(x), float(q))


# ============================================================================
# CHECKS
# ============================================================================


def limit_check_q1(which: str, z: float, qs: Iterable[float] = (0.9, 0.99, 0.999), tol: float = LIMIT_TOL) -> dict:
    """Deviation of the rescaled q-function from its classical limit as q -> 1."""
    qs = list(qs)
    deviations = []
    try:
        for q in qs:
            if which == "eq":
                value = numeric_eval(EQ, (1 - q) * z, q)
                target = cmath.exp(z)
            elif which == "bigEq":
                value = numeric_eval(BIGEQ, (1 - q) * z, q)
                target = cmath.exp(z)
            elif which == "logq":
                value = (1 - q) * series_sum(LOGQ, z, q)
                target = -cmath.log(1 - z)
            elif which == "li2q":
                value = (1 - q) * series_sum(LI2Q, z, q)
                target = complex(mpmath.polylog(2, z))
            else:
                raise ValueError(f"unknown limit check {which!r}")
            deviations.append(abs(value - target))
    except (ValueError, NonConvergent, PoleHit) as e:
        return {"success": False, "which": which, "z": z, "qs": qs, "error": str(e)}

    monotone = all(b <= a + 1e-15 for a, b in zip(deviations, deviations[1:]))
    final_ok = deviations[-1] < tol if deviations else True
    return {
        "success": monotone and final_ok,
        "which": which,
        "z": z,
        "qs": qs,
        "deviations": deviations,
        "monotone": monotone,
        "final_below_tol": final_ok,
        "max_residual": deviations[-1] if deviations else 0.0,
    }


def _log_q(y: float, q: float) -> complex:
    return series_sum(LOGQ, y, q)


def hybrid_identities(q: float, zs: Sequence[float] = (0.0, 0.1, -0.1, 0.25, 0.5, -0.5), tol: float = COMPARE_TOL) -> dict:
    """Numeric checks tying Li2(.;q), log_q and e_q together."""
    results = {}

    # Li2(z;q) = log e_q(z)
    worst = 0.0
    for z in zs:
        lhs = series_sum(LI2Q, z, q)
        rhs = -cmath.log(qpochhammer_infinite(z, q).value)
        worst = max(worst, abs(lhs - rhs))
    results["eq89"] = {"success": worst < tol, "max_residual": worst}

    # log_q(z) = z e_q'(z) / e_q(z)
    worst = 0.0
    for z in zs:
        derivative, poch, power, n = 0j, 1 + 0j, 1 + 0j, 1
        while True:
            poch *= 1 - q**n
            term = n * power / poch
            derivative += term
            if abs(term) < TAIL_TOL * 1e-3 or power == 0:
                break
            power *= z
            n += 1
        lhs = series_sum(LOGQ, z, q)
        rhs = z * derivative / numeric_eval(EQ, z, q)
        worst = max(worst, abs(lhs - rhs))
    results["eq108"] = {"success": worst < tol, "max_residual": worst}

    # log_q(z) = -d/da 1phi0(a;;q,z) at a = 1, central difference
    h = FD_STEP
    worst = 0.0
    for z in zs:
        upper = numeric_eval(phi10(1 + h), z, q)
        lower = numeric_eval(phi10(1 - h), z, q)
        worst = max(worst, abs(-(upper - lower) / (2 * h) - series_sum(LOGQ, z, q)))
    results["eq109"] = {"success": worst < 1e-6, "max_residual": worst, "step": h}

    # (1-q) D_q log_q (z) = 1/(1-z)
    worst = 0.0
    for z in zs:
        if z == 0:
            continue
        lhs = (_log_q(z, q) - _log_q(q * z, q)) / z
        worst = max(worst, abs(lhs - 1 / (1 - z)))
    results["eq111"] = {"success": worst < tol, "max_residual": worst}

    results["eq112"] = chain_rule_check(q, tol=tol)
    success = all(r["success"] for r in results.values())
    return {"success": success, "q": q, "checks": results}


def chain_rule_check(q: float, xs: Optional[Sequence[float]] = None, tol: float = COMPARE_TOL) -> dict:
    """(D_q f)(g(x)) (D_q g)(x) = 1 with f = (1-q) log_q, g = 1 - e_q(-(1-q)x).

    The reversed composition is evaluated too and reported, since it is not
    expected to give 1.
    """
    if xs is None:
        upper = 1 / (1 - q)
        xs = [upper * k / 20 for k in range(1, 20)]

    def f(y):
        return (1 - q) * _log_q(y, q)

    def g(x):
        return 1 - numeric_eval(EQ, -(1 - q) * x, q)

    def dq(func, x):
        return (func(x) - func(q * x)) / ((1 - q) * x)

    deviations, reversed_deviations, valid = [], [], []
    for x in xs:
        try:
            value = dq(f, g(x).real) * dq(g, x)
        except NonConvergent:
            deviations.append(float("inf"))
            continue
        deviation = abs(value - 1)
        deviations.append(deviation)
        if deviation < tol:
            valid.append(x)
        if 0 < x < 1:
            reversed_deviations.append(abs(dq(g, f(x).real) * dq(f, x) - 1))
    return {
        "success": len(valid) == len(xs),
        "max_residual": max(deviations, default=0.0),
        "valid_range": [min(valid), max(valid)] if valid else None,
        "reversed_max_deviation": max(reversed_deviations, default=0.0),
    }


def phi10_a_derivative(field: ScalarField, a, trunc: int) -> PowerSeries:
    """Coefficientwise d/da of (a;q)_k/(q;q)_k at the given a."""
    F = field
    a = F.convert(a)
    coeffs = []
    for k in range(trunc + 1):
        total = F.zero
        for j in range(k):
            term = -F.qpow(j)
            for i in range(k):
                if i != j:
                    term = term * (F.one - F.qpow(i) * a)
            total = total + term
        coeffs.append(total / qfactorial(F, k))
    return PowerSeries(F, trunc, coeffs)


def eq32_check(q: float, y: float, k_max: int = 6, tol: float = COMPARE_TOL) -> dict:
    """sum_{n>=k} (1-q^k)/(1-q^n) [n,k] y^(n-k) (y;q)_k = 1 for 1 <= k <= k_max."""
    if abs(y) >= 1:
        return {"success": False, "error": f"needs |y| < 1, got {y}"}
    F = NumericField(float(q))
    residuals = []
    for k in range(1, k_max + 1):
        prefactor = qshifted_factorial(F, y, k) * (1 - q**k)
        total, small, n = 0j, 0, k
        while small < 3:
            term = prefactor * qbinomial(F, n, k) * y ** (n - k) / (1 - q**n)
            total += term
            small = small + 1 if abs(term) < TAIL_TOL else 0
            n += 1
            if n > k + MAX_SERIES_TERMS or y == 0:
                break
        residuals.append(abs(total - 1))
    worst = max(residuals, default=0.0)
    return {"success": worst < tol, "max_residual": worst, "residuals": residuals}


def qleibniz_check(f: PowerSeries, g: PowerSeries) -> dict:
    """D_q(fg)(z) = f(z) D_q g(z) + D_q f(z) g(qz) on truncated series."""
    F = f.field
    lhs = (f * g).qderiv()
    rhs = f * g.qderiv() + f.qderiv() * g.dilate(F.q)
    residual = lhs.residual(rhs)
    return {"success": residual == 0 if F.exact else residual < COMPARE_TOL, "max_residual": residual}


def gaussian_factorization(field: ScalarField = EXACT, trunc: int = 12) -> dict:
    """e_{q^2}(-z^2) = e_q(iz) e_q(-iz), coefficientwise with i adjoined."""
    F = field
    left = series_of(GAUSS_G, F, trunc)
    a = [F.one / qfactorial(F, j) for j in range(trunc + 1)]
    mismatched = []
    for n in range(trunc + 1):
        s = F.zero
        for k in range(n + 1):
            s = s + (a[n - k] * a[k] if k % 2 == 0 else -(a[n - k] * a[k]))
        right = GaussQ.unit_power(F, n) * s
        diff = right - GaussQ(left[n], F.zero)
        if F.exact:
            if not diff.is_zero():
                mismatched.append(n)
        elif abs(complex(diff.re) + 1j * complex(diff.im)) > COMPARE_TOL:
            mismatched.append(n)
    return {"success": not mismatched, "mismatched_degrees": mismatched, "truncation": trunc}
