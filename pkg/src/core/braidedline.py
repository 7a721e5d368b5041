"""
The braided line C_q[x] as a braided Hopf algebra.

A (x) A is not a separate structure: x^l (x) x^k is the normal word y^l x^k of
QPLANE, so (1 (x) x)(x (x) 1) = q (x (x) 1)(1 (x) x) is the relation xy = qyx and
braided multiplication is nc_mul. Triple tensors live in TENSOR3.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from src.core.coeffield import EXACT, NumericField, ScalarField, qbinomial, qfactorial
from src.core.errors import QCalcError
from src.core.jackson import DEFAULT_CONFIG, JacksonConfig, LatticeDerivatives, jackson_realline, translation_invariance_infinite
from src.core.ncalg import QPLANE, TENSOR3, NCElement, compose_series, normal_order, substitute
from src.core.qfunctions import BIGEQ, EQ, PowerSeries, gauss_g, numeric_eval, series_of
from src.core.qhermite import HermiteFamily, hermite

try:
    from config import COMPARE_TOL, DEFAULT_TRUNC
except ImportError:
    COMPARE_TOL = 1e-10
    DEFAULT_TRUNC = 12

logger = logging.getLogger(__name__)

COVARIANCE_TOL = 1e-8

_Y = QPLANE.index("y")
_X = QPLANE.index("x")


@dataclass(frozen=True)
class BraidedPoly:
    """A polynomial in x of degree at most trunc."""

    poly: PowerSeries
    trunc: int

    def __post_init__(self):
        if self.poly.degree() > self.trunc:
            raise ValueError(f"degree {self.poly.degree()} exceeds truncation {self.trunc}")

    @classmethod
    def monomial(cls, n: int, field: ScalarField = EXACT, trunc: int = DEFAULT_TRUNC) -> "BraidedPoly":
        return cls(PowerSeries.monomial(field, n), trunc)

    @classmethod
    def of(cls, f, trunc: int = None) -> "BraidedPoly":
        """Wrap a PowerSeries; a truncated series is read as its stored polynomial."""
        if isinstance(f, BraidedPoly):
            return f
        poly = f if f.is_polynomial else PowerSeries.polynomial(f.field, f.coeffs)
        return cls(poly, trunc if trunc is not None else max(poly.degree(), f.trunc))

    @property
    def field(self) -> ScalarField:
        return self.poly.field

    def to_text(self) -> str:
        return self.poly.to_text("x")


def _as_braided(f) -> BraidedPoly:
    return BraidedPoly.of(f)


def tensor(l: int, k: int, field: ScalarField = EXACT, trunc: int = DEFAULT_TRUNC) -> NCElement:  # noqa: E741
    """x^l (x) x^k"""
    return normal_order(QPLANE, ("y",) * l + ("x",) * k, trunc, field)


def _slots(word):
    """(l, k) for the tensor x^l (x) x^k stored under word."""
    e = QPLANE.exponents(word)
    return e[_Y], e[_X]


def braiding(k: int, l: int, field: ScalarField = EXACT, trunc: int = DEFAULT_TRUNC) -> NCElement:  # noqa: E741
    """Psi(x^k (x) x^l) = q^(kl) x^l (x) x^k"""
    return tensor(l, k, field, trunc) * field.qpow(k * l)


def braid(a: NCElement) -> NCElement:
    """Psi extended linearly to a tensor element."""
    F = a.field
    out = {}
    for word, c in a.coeffs.items():
        l, k = _slots(word)  # noqa: E741
        out[QPLANE.monomial((k, l))] = c * F.qpow(k * l)
    return NCElement(QPLANE, F, a.trunc, out, a.overflow)


def braided_tensor_mul(a: NCElement, b: NCElement) -> NCElement:
    """(x^k1 (x) x^k2)(x^l1 (x) x^l2) = q^(k2 l1) x^(k1+l1) (x) x^(k2+l2)"""
    return a * b


def coproduct(f, trunc: int = None) -> NCElement:
    """Delta f = f(x (x) 1 + 1 (x) x)."""
    f = _as_braided(f)
    N = f.trunc if trunc is None else trunc
    F = f.field
    y = NCElement.generator(QPLANE, "y", F, N)
    x = NCElement.generator(QPLANE, "x", F, N)
    return compose_series(f.poly, y + x)


def counit(f):
    """epsilon(x^n) = delta_n0"""
    f = _as_braided(f)
    return f.poly[0]


def antipode(f) -> BraidedPoly:
    """S(x^n) = (-1)^n q^(n(n-1)/2) x^n"""
    f = _as_braided(f)
    F = f.field
    coeffs = [c * _antipode_scalar(F, n) for n, c in enumerate(f.poly.coeffs)]
    return BraidedPoly(PowerSeries.polynomial(F, coeffs), f.trunc)


def _antipode_scalar(F: ScalarField, n: int):
    sign = F.one if n % 2 == 0 else -F.one
    return sign * F.qpow(n * (n - 1) // 2)


def tensor_map(a: NCElement, left: Callable[[int], object], right: Callable[[int], object]) -> NCElement:
    """phi (x) psi for maps diagonal on the monomial basis, given as degree -> scalar."""
    out = {}
    for word, c in a.coeffs.items():
        l, k = _slots(word)  # noqa: E741
        out[word] = c * left(l) * right(k)
    return NCElement(QPLANE, a.field, a.trunc, out, a.overflow)


def antipode_tensor(a: NCElement, left: bool = True, right: bool = False) -> NCElement:
    F = a.field
    identity = lambda n: F.one  # noqa: E731
    s = lambda n: _antipode_scalar(F, n)  # noqa: E731
    return tensor_map(a, s if left else identity, s if right else identity)


def multiply(a: NCElement) -> PowerSeries:
    """m(x^l (x) x^k) = x^(l+k)"""
    F = a.field
    coeffs = [F.zero] * (a.trunc + 1)
    for word, c in a.coeffs.items():
        l, k = _slots(word)  # noqa: E741
        coeffs[l + k] = coeffs[l + k] + c
    return PowerSeries.polynomial(F, coeffs)


def counit_left(a: NCElement) -> PowerSeries:
    """(epsilon (x) id)"""
    F = a.field
    coeffs = [F.zero] * (a.trunc + 1)
    for word, c in a.coeffs.items():
        l, k = _slots(word)  # noqa: E741
        if l == 0:
            coeffs[k] = c
    return PowerSeries.polynomial(F, coeffs)


def counit_right(a: NCElement) -> PowerSeries:
    """(id (x) epsilon)"""
    F = a.field
    coeffs = [F.zero] * (a.trunc + 1)
    for word, c in a.coeffs.items():
        l, k = _slots(word)  # noqa: E741
        if k == 0:
            coeffs[l] = c
    return PowerSeries.polynomial(F, coeffs)


# ============================================================================
# AXIOM CHECKS
# ============================================================================


def _same(p: PowerSeries, r: PowerSeries) -> bool:
    F = p.field
    top = max(p.trunc, r.trunc)
    if F.exact:
        return all(not (p[j] - r[j]) for j in range(top + 1))
    return all(abs(p[j] - r[j]) <= COMPARE_TOL * max(1.0, abs(r[j])) for j in range(top + 1))


def _zero(a: NCElement) -> bool:
    return a.is_zero(COMPARE_TOL)


def _triple_slots(F: ScalarField, N: int):
    return [NCElement.generator(TENSOR3, s, F, N) for s in ("s1", "s2", "s3")]


def _coassociative(F, n, N) -> bool:
    delta = coproduct(BraidedPoly.monomial(n, F, N))
    s1, s2, s3 = _triple_slots(F, N)
    left = substitute(delta, {"y": s1 + s2, "x": s3})
    right = substitute(delta, {"y": s1, "x": s2 + s3})
    direct = compose_series(PowerSeries.monomial(F, n), s1 + s2 + s3)
    return _zero(left - right) and _zero(left - direct)


def _delta_of_antipode(F, n, N) -> bool:
    """Delta S(x^n) = (S (x) S) Psi Delta(x^n) = sum [n,k] q^(k(n-k)) S(x^(n-k)) (x) S(x^k)."""
    xn = BraidedPoly.monomial(n, F, N)
    lhs = coproduct(antipode(xn))
    braided = antipode_tensor(braid(coproduct(xn)), left=True, right=True)
    explicit = NCElement.zero(QPLANE, F, N)
    for k in range(n + 1):
        c = qbinomial(F, n, k) * F.qpow(k * (n - k)) * _antipode_scalar(F, n - k) * _antipode_scalar(F, k)
        explicit = explicit + tensor(n - k, k, F, N) * c
    return _zero(lhs - braided) and _zero(lhs - explicit)


def _antipode_of_product(F, N) -> bool:
    """S m = m (S (x) S) Psi on x^k (x) x^l, and S(x^(m+n)) = q^(mn) S(x^m) S(x^n)."""
    for k in range(N + 1):
        for l in range(N + 1 - k):  # noqa: E741
            t = tensor(k, l, F, N)
            lhs = antipode(multiply(t)).poly
            rhs = multiply(antipode_tensor(braid(t), left=True, right=True))
            split = antipode(BraidedPoly.monomial(k, F, N)).poly * antipode(BraidedPoly.monomial(l, F, N)).poly * F.qpow(k * l)
            if not (_same(lhs, rhs) and _same(lhs, split)):
                return False
    return True


def _recurrence_175(F, n) -> bool:
    total = PowerSeries.constant(F, 0)
    for k in range(n + 1):
        total = total + PowerSeries.monomial(F, n, qbinomial(F, n, k) * _antipode_scalar(F, k))
    return _same(total, PowerSeries.constant(F, 1 if n == 0 else 0))


def _coproduct_multiplicative(F, N) -> bool:
    for a in range(N + 1):
        for b in range(N + 1 - a):
            lhs = coproduct(BraidedPoly.monomial(a + b, F, N))
            rhs = braided_tensor_mul(coproduct(BraidedPoly.monomial(a, F, N)), coproduct(BraidedPoly.monomial(b, F, N)))
            if not _zero(lhs - rhs):
                return False
    return True


def braided_associativity_check(max_exp: int = 4, field: ScalarField = EXACT) -> dict:
    """Triple products of tensor monomials against q^(k2 l1 + k2 m1 + l2 m1), and the TENSOR3 rule."""
    F = field
    N = 6 * max_exp
    failures = []
    r = range(max_exp + 1)
    for k1 in r:
        for k2 in r:
            for l1 in r:
                for l2 in r:
                    for m1, m2 in ((0, 1), (1, 0), (max_exp, 1), (1, max_exp)):
                        a, b, c = tensor(k1, k2, F, N), tensor(l1, l2, F, N), tensor(m1, m2, F, N)
                        left = braided_tensor_mul(braided_tensor_mul(a, b), c)
                        right = braided_tensor_mul(a, braided_tensor_mul(b, c))
                        expected = tensor(k1 + l1 + m1, k2 + l2 + m2, F, N) * F.qpow(k2 * l1 + k2 * m1 + l2 * m1)
                        if not (_zero(left - right) and _zero(left - expected)):
                            failures.append((k1, k2, l1, l2, m1, m2))
    for ks in ((1, 2, 0), (0, 1, 3), (2, 2, 2)):
        for ls in ((3, 0, 1), (1, 1, 1), (0, 4, 2)):
            u = normal_order(TENSOR3, _tensor3_word(ks), N, F)
            v = normal_order(TENSOR3, _tensor3_word(ls), N, F)
            exponent = sum(ks[i] * ls[j] for i in range(3) for j in range(i))
            expected = normal_order(TENSOR3, _tensor3_word(tuple(a + b for a, b in zip(ks, ls))), N, F) * F.qpow(exponent)
            if not _zero(u * v - expected):
                failures.append(("tensor3", ks, ls))
    return {"success": not failures, "failures": failures[:10]}


def _tensor3_word(exponents):
    return tuple(name for name, e in zip(("s1", "s2", "s3"), exponents) for _ in range(e))


def hopf_axiom_check(n_max: int = DEFAULT_TRUNC, field: ScalarField = EXACT) -> dict:
    """All braided Hopf axioms on the basis x^n, n <= n_max, at truncation n_max."""
    F = field
    N = max(n_max, 1)
    failures = {}

    def record(name, n, ok):
        if not ok:
            failures.setdefault(name, []).append(n)

    try:
        for n in range(n_max + 1):
            xn = BraidedPoly.monomial(n, F, N)
            delta = coproduct(xn)
            eps = F.one if n == 0 else F.zero
            record("coassociativity", n, _coassociative(F, n, N))
            record("counit_left", n, _same(counit_left(delta), xn.poly))
            record("counit_right", n, _same(counit_right(delta), xn.poly))
            record("antipode_left", n, _same(multiply(antipode_tensor(delta, left=True)), PowerSeries.constant(F, eps)))
            record("antipode_right", n, _same(multiply(antipode_tensor(delta, left=False, right=True)), PowerSeries.constant(F, eps)))
            record("recurrence", n, _recurrence_175(F, n))
            record("coproduct_of_antipode", n, _delta_of_antipode(F, n, N))
            record("counit_of_antipode", n, counit(antipode(xn)) == eps if F.exact else abs(counit(antipode(xn)) - eps) < COMPARE_TOL)
        record("antipode_of_product", n_max, _antipode_of_product(F, N))
        record("coproduct_multiplicative", n_max, _coproduct_multiplicative(F, N))
        record("antipode_unit", 0, _same(antipode(BraidedPoly.monomial(0, F, N)).poly, PowerSeries.constant(F, 1)))
    except QCalcError as e:
        return {"success": False, "n_max": n_max, "error": str(e)}
    if failures:
        logger.warning("braided Hopf axioms failed: %s", failures)
    return {"success": not failures, "n_max": n_max, "failures": failures}


def exponential_check(trunc: int = DEFAULT_TRUNC, field: ScalarField = EXACT) -> dict:
    """Delta e_q = e_q (x) e_q, epsilon(e_q) = 1, S(e_q(x)) = E_q(-x) and S(e_q) e_q = 1, all truncated."""
    F = field
    N = trunc
    e = series_of(EQ, F, N)
    e_poly = BraidedPoly.of(e, N)
    delta = coproduct(e_poly)
    y = NCElement.generator(QPLANE, "y", F, N)
    x = NCElement.generator(QPLANE, "x", F, N)
    product = compose_series(e, y) * compose_series(e, x)
    s_e = antipode(e_poly).poly.as_series(N)
    checks = {
        "coproduct": _zero(delta - product),
        "counit": counit(e_poly) == F.one if F.exact else abs(counit(e_poly) - 1) < COMPARE_TOL,
        "antipode": _same(s_e, series_of(BIGEQ, F, N).dilate(-1)),
        "inverse": (s_e * e).residual(PowerSeries.constant(F, 1).as_series(N)) <= (0 if F.exact else COMPARE_TOL),
    }
    return {"success": all(checks.values()), "truncation": N, "checks": checks}


def hermite_coproduct_check(n_max: int = 8, field: ScalarField = EXACT) -> dict:
    """Delta h_n = sum [n,k] x^(n-k) (x) h_k, and m (S (x) id) Delta h_n = h_n(0)."""
    F = field
    failures = {"coproduct": [], "alternating_sum": []}
    try:
        for n in range(n_max + 1):
            N = max(n, 1)
            h = BraidedPoly(hermite(HermiteFamily.I, n, F).poly, N)
            delta = coproduct(h)
            expected = NCElement.zero(QPLANE, F, N)
            x = NCElement.generator(QPLANE, "x", F, N)
            for k in range(n + 1):
                expected = expected + tensor(n - k, 0, F, N) * compose_series(hermite(HermiteFamily.I, k, F).poly, x) * qbinomial(F, n, k)
            if not _zero(delta - expected):
                failures["coproduct"].append(n)
            folded = multiply(antipode_tensor(delta, left=True))
            if not _same(folded, PowerSeries.constant(F, h.poly[0])):
                failures["alternating_sum"].append(n)
    except QCalcError as e:
        return {"success": False, "n_max": n_max, "error": str(e)}
    failures = {k: v for k, v in failures.items() if v}
    return {"success": not failures, "n_max": n_max, "failures": failures}


# ============================================================================
# INTEGRAL COVARIANCE
# ============================================================================


class _LatticeProduct:
    """Pointwise product of lattice functions on one anchor, times an optional function of the point."""

    def __init__(self, factors: Sequence, gamma: float, q: float, func: Callable[[float], complex] = None):
        self.factors = factors
        self.gamma = gamma
        self.q = q
        self.func = func

    def sample(self, sign: int, k: int) -> complex:
        value = 1 + 0j
        for factor in self.factors:
            value *= factor.sample(sign, k)
        if self.func is not None:
            value *= complex(self.func(sign * self.gamma * self.q**k))
        return value


def fourier_covariance(
    j: int = 2, ys: Iterable[float] = (0.0, 0.25, 0.5), m_max: int = 4, q: float = 0.5, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG
) -> list:
    """Per degree m: int e_q(-i q^m t y) f_m(t) d_qt = F_y(f) q^(m(m-1)/2) (iy)^m / (q;q)_m for f = t^j g_q."""
    derivs = LatticeDerivatives.for_moment(j, "g", q, gamma)
    rows = []
    for y in ys:
        kernel = lambda t, y=y: numeric_eval(EQ, -1j * t * y, q)  # noqa: E731
        transform = jackson_realline(_LatticeProduct([derivs.normalized(0)], gamma, q, kernel), gamma, q, cfg)
        for m in range(m_max + 1):
            dilated = lambda t, y=y, m=m: numeric_eval(EQ, -1j * q**m * t * y, q)  # noqa: E731
            lhs = jackson_realline(_LatticeProduct([derivs.normalized(m)], gamma, q, dilated), gamma, q, cfg)
            rhs = transform * q ** (m * (m - 1) / 2) * (1j * y) ** m / qfactorial(NumericField(q), m).real
            rows.append({"y": y, "m": m, "lhs": lhs, "rhs": rhs, "deviation": abs(lhs - rhs) / max(1.0, abs(rhs))})
    return rows


def convolution_covariance(j: int = 1, m_max: int = 4, q: float = 0.5, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG) -> list:
    """Per degree m: int g(q^m t) f_m(t) d_qt = (-1)^m q^(m(m-1)/2) int g_m(t) f(t) d_qt, g = g_q, f = t^j g_q."""
    f_derivs = LatticeDerivatives.for_moment(j, "g", q, gamma)
    g_derivs = LatticeDerivatives.for_moment(0, "g", q, gamma)
    rows = []
    for m in range(m_max + 1):
        dilated = lambda t, m=m: gauss_g(q**m * t, q)  # noqa: E731
        lhs = jackson_realline(_LatticeProduct([f_derivs.normalized(m)], gamma, q, dilated), gamma, q, cfg)
        inner = jackson_realline(_LatticeProduct([g_derivs.normalized(m), f_derivs.normalized(0)], gamma, q), gamma, q, cfg)
        rhs = inner * (-1) ** m * q ** (m * (m - 1) / 2)
        rows.append({"m": m, "lhs": lhs, "rhs": rhs, "deviation": abs(lhs - rhs) / max(1.0, abs(rhs))})
    return rows


def integral_covariance_check(q: float = 0.5, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG, tol: float = COVARIANCE_TOL) -> dict:
    """Translation invariance, its Fourier form, and the convolution form of the real-line integral."""
    results = {}
    try:
        results["translation"] = translation_invariance_infinite("g", 2, gamma, q, 4, cfg)
        for name, rows in (("fourier", fourier_covariance(q=q, gamma=gamma, cfg=cfg)), ("convolution", convolution_covariance(q=q, gamma=gamma, cfg=cfg))):
            worst = max((r["deviation"] for r in rows), default=0.0)
            results[name] = {"success": worst < tol, "rows": rows, "max_residual": worst}
    except QCalcError as e:
        return {"success": False, "q": q, "gamma": gamma, "checks": results, "error": str(e)}
    return {"success": all(r["success"] for r in results.values()), "q": q, "gamma": gamma, "checks": results}
