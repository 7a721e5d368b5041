"""
Jackson integration.

Exact: the termwise Jackson integral of a truncated series, and the finite
translation invariance and q-Taylor decomposition in the q-plane.
Numeric: half-line, interval and two-sided lattice sums with explicit tail
control, the constants b_q and c_q(gamma), and the infinite-interval
translation invariance built on iterated lattice q-derivatives.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Tuple

from src.core.coeffield import (
    NumericField,
    qfactorial,
    qpochhammer_infinite,
    qshifted_factorial,
)
from src.core.errors import (
    AlgebraMismatch,
    DivergentUpperTail,
    MissingSample,
    QCalcError,
    TailNotConverged,
)
from src.core.ncalg import QPLANE, NCElement, compose_series, nc_pow
from src.core.qfunctions import (
    GAUSS_BIGG,
    GAUSS_G,
    PowerSeries,
    gauss_bigg,
    gauss_g,
    series_of,
)
from src.core.representations import act, rep120, rep120_eigenvalue

try:
    from config import COMPARE_TOL, MAX_WINDOW, SERIES_RADIUS, TAIL_TOL
except ImportError:
    COMPARE_TOL = 1e-10
    MAX_WINDOW = 400
    SERIES_RADIUS = 0.9
    TAIL_TOL = 1e-15

logger = logging.getLogger(__name__)

# consecutive small terms needed before a tail counts as converged
SMALL_RUN = 3
OVERFLOW_GUARD = 1e250
DERIVATIVE_SERIES_TRUNC = 400


@dataclass(frozen=True)
class JacksonConfig:
    tail_tol: float = TAIL_TOL
    max_window: int = MAX_WINDOW

    def __post_init__(self):
        if self.tail_tol <= 0:
            raise ValueError("tail_tol must be positive")
        if self.max_window <= 0:
            raise ValueError("max_window must be positive")


DEFAULT_CONFIG = JacksonConfig()


# ============================================================================
# LATTICE FUNCTIONS
# ============================================================================


@dataclass
class QGridFunction:
    """Samples on {+-gamma q^k}, keyed by (sign, k) with sign in {+1, -1}."""

    gamma: float
    q: float
    values: Dict[Tuple[int, int], complex] = field(default_factory=dict)
    zero_value: Optional[complex] = None

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("lattice anchor gamma must be positive")
        for key, value in self.values.items():
            if not _finite(value):
                raise ValueError(f"non-finite sample at {key}")

    @classmethod
    def from_function(
        cls,
        func: Callable[[float], complex],
        q: float,
        gamma: float = 1.0,
        window: Tuple[int, int] = (0, 120),
        include_zero: bool = True,
    ) -> "QGridFunction":
        """Sample func at +-gamma q^k for -K <= k <= M, window = (K, M)."""
        low, high = window
        if low < 0 or high < 0:
            raise ValueError("window bounds must be nonnegative")
        values = {}
        for k in range(-low, high + 1):
            for sign in (1, -1):
                values[(sign, k)] = complex(func(sign * gamma * q**k))
        zero = complex(func(0.0)) if include_zero else None
        return cls(gamma, q, values, zero)

    @property
    def window(self) -> Tuple[int, int]:
        ks = [k for _, k in self.values]
        return (-min(ks), max(ks)) if ks else (0, 0)

    def point(self, sign: int, k: int) -> float:
        return sign * self.gamma * self.q**k

    def sample(self, sign: int, k: int) -> complex:
        try:
            return self.values[(sign, k)]
        except KeyError:
            raise MissingSample(f"no sample at sign={sign}, k={k}")

    def pointwise(self, func: Callable[[float], complex]) -> "QGridFunction":
        """Multiply every sample by func(point)."""
        values = {(s, k): v * complex(func(self.point(s, k))) for (s, k), v in self.values.items()}
        zero = None if self.zero_value is None else self.zero_value * complex(func(0.0))
        return QGridFunction(self.gamma, self.q, values, zero)

    def _check(self, other: "QGridFunction"):
        if other.gamma != self.gamma or other.q != self.q:
            raise AlgebraMismatch("grid functions live on different lattices")

    def __add__(self, other: "QGridFunction") -> "QGridFunction":
        self._check(other)
        keys = self.values.keys() & other.values.keys()
        zero = None
        if self.zero_value is not None and other.zero_value is not None:
            zero = self.zero_value + other.zero_value
        return QGridFunction(self.gamma, self.q, {key: self.values[key] + other.values[key] for key in keys}, zero)

    def __mul__(self, c) -> "QGridFunction":
        c = complex(c)
        zero = None if self.zero_value is None else self.zero_value * c
        return QGridFunction(self.gamma, self.q, {key: v * c for key, v in self.values.items()}, zero)

    __rmul__ = __mul__

    def qderiv(self, direction: str = "backward") -> "QGridFunction":
        """Lattice q-derivative, kept wherever the neighbouring sample exists."""
        q = self.q
        out = {}
        for (sign, k), value in self.values.items():
            p = self.point(sign, k)
            if direction == "backward":
                neighbour = self.values.get((sign, k + 1))
                if neighbour is not None:
                    out[(sign, k)] = (value - neighbour) / ((1 - q) * p)
            elif direction == "forward":
                neighbour = self.values.get((sign, k - 1))
                if neighbour is not None:
                    out[(sign, k)] = (neighbour - value) / ((1 - q) * p)
            else:
                raise ValueError(f"direction must be 'backward' or 'forward', got {direction!r}")
        return QGridFunction(self.gamma, q, out)


def _finite(value) -> bool:
    value = complex(value)
    return math.isfinite(value.real) and math.isfinite(value.imag)


def _lattice_sampler(f, gamma: float, q: float) -> Callable[[int, int], complex]:
    if hasattr(f, "sample"):
        if not math.isclose(f.gamma, gamma) or not math.isclose(f.q, q):
            raise AlgebraMismatch(f"samples live on gamma={f.gamma}, q={f.q}; asked for gamma={gamma}, q={q}")
        return f.sample
    return lambda sign, k: complex(f(sign * gamma * q**k))


# ============================================================================
# EXACT JACKSON INTEGRAL
# ============================================================================


def jackson_0_to_x(f: PowerSeries) -> PowerSeries:
    """int_0^z f(t) d_qt termwise: z^n -> (1-q)/(1-q^(n+1)) z^(n+1)."""
    F = f.field
    out = [F.zero]
    for n, c in enumerate(f.coeffs):
        out.append(c * (F.one - F.q) / (F.one - F.qpow(n + 1)))
    return PowerSeries(F, f.trunc + 1, out, f.is_polynomial)


# ============================================================================
# NUMERIC JACKSON SUMS
# ============================================================================


def jackson_0_to(f, x: float, q: float, cfg: JacksonConfig = DEFAULT_CONFIG) -> complex:
    """(1-q) sum_{k>=0} f(q^k x) q^k x until the terms fall below tail_tol."""
    if x == 0:
        return 0j
    if hasattr(f, "sample"):
        sign, j = _lattice_position(f, x)
        sample = lambda k: f.sample(sign, j + k)  # noqa: E731
    else:
        sample = lambda k: complex(f(q**k * x))  # noqa: E731
    total, small = 0j, 0
    try:
        for k in range(cfg.max_window):
            term = sample(k) * q**k * x
            total += term
            small = small + 1 if abs(term) < cfg.tail_tol * max(1.0, abs(total)) else 0
            if small >= SMALL_RUN:
                return (1 - q) * total
    except MissingSample as e:
        raise TailNotConverged(f"samples ran out before the tail converged: {e}")
    raise TailNotConverged(f"half-line sum to {x} did not converge within {cfg.max_window} terms")


def _lattice_position(f, x: float) -> Tuple[int, int]:
    """(sign, j) with x = sign * gamma * q^j on the lattice of f."""
    sign = 1 if x > 0 else -1
    j = round(math.log(abs(x) / f.gamma) / math.log(f.q))
    if not math.isclose(f.gamma * f.q**j, abs(x), rel_tol=1e-12):
        raise MissingSample(f"{x} is not a lattice point of the grid function")
    return sign, j


def jackson_interval(f, a: float, b: float, q: float, cfg: JacksonConfig = DEFAULT_CONFIG) -> complex:
    """int_a^b f d_qt computed as int_0^b - int_0^a."""
    return jackson_0_to(f, b, q, cfg) - jackson_0_to(f, a, q, cfg)


def jackson_realline(f, gamma: float, q: float, cfg: JacksonConfig = DEFAULT_CONFIG) -> complex:
    """(1-q) sum_{k in Z} (f(q^k gamma) + f(-q^k gamma)) q^k gamma."""
    sample = _lattice_sampler(f, gamma, q)

    def term(k):
        return (sample(1, k) + sample(-1, k)) * q**k * gamma

    total = 0j
    try:
        small, inner = 0, 0
        for k in range(cfg.max_window):
            t = term(k)
            total += t
            inner = k
            small = small + 1 if abs(t) < cfg.tail_tol * max(1.0, abs(total)) else 0
            if small >= SMALL_RUN:
                break
        else:
            raise TailNotConverged(f"inner tail at gamma={gamma} did not converge")

        small, outer = 0, 0
        for k in range(-1, -cfg.max_window - 1, -1):
            try:
                t = term(k)
            except OverflowError:
                raise DivergentUpperTail(f"outer tail overflows at k={k} (point {gamma * q**k:g})")
            if not _finite(t) or abs(t) > OVERFLOW_GUARD:
                raise DivergentUpperTail(f"outer tail blows up at k={k} (point {gamma * q**k:g})")
            total += t
            outer = k
            small = small + 1 if abs(t) < cfg.tail_tol * max(1.0, abs(total)) else 0
            if small >= SMALL_RUN:
                break
        else:
            raise TailNotConverged(f"outer tail at gamma={gamma} did not converge")
    except MissingSample as e:
        raise TailNotConverged(f"samples ran out before the tails converged: {e}")
    logger.debug("real-line sum at gamma=%g used window [%d, %d]", gamma, outer, inner)
    return (1 - q) * total


# ============================================================================
# CONSTANTS AND WEIGHTS
# ============================================================================


def b_q(q: float, tol: float = TAIL_TOL) -> float:
    """(1-q) (q, -q, -1; q)_inf"""
    product = 1.0 + 0j
    for a in (q, -q, -1.0):
        product *= qpochhammer_infinite(a, q, tol).value
    return ((1 - q) * product).real


def c_q(gamma: float, q: float, tol: float = TAIL_TOL) -> float:
    """2(1-q) (q^2, -q gamma^2, -q/gamma^2; q^2)_inf gamma / (-gamma^2, -q^2/gamma^2, q; q^2)_inf"""
    q2 = q * q
    g2 = gamma * gamma
    num = 1.0 + 0j
    for a in (q2, -q * g2, -q / g2):
        num *= qpochhammer_infinite(a, q2, tol).value
    den = 1.0 + 0j
    for a in (-g2, -q2 / g2, q):
        den *= qpochhammer_infinite(a, q2, tol).value
    return (2 * (1 - q) * num * gamma / den).real


def weight_I(x, q: float) -> complex:
    """E_{q^2}(-q^2 x^2), the family I weight on [-1, 1]"""
    return gauss_bigg(q * complex(x), q)


def weight_II(x, q: float) -> complex:
    """e_{q^2}(-x^2), the family II weight on the two-sided lattice"""
    return gauss_g(x, q)


def _q_odd_product(q: float, n: int) -> complex:
    """(q; q^2)_n"""
    return qshifted_factorial(NumericField(q), q, n, base=2)


def moment_closed_form(kind: str, m: int, q: float, gamma: float = 1.0) -> complex:
    """Right sides of the two moment formulas: "69" (g_q, real line) and "126" (G_q on [-q, q])."""
    if m % 2:
        return 0j
    n = m // 2
    if kind == "69":
        return c_q(gamma, q) * q ** (-n * n) * _q_odd_product(q, n)
    if kind == "126":
        return b_q(q) * q ** (2 * n + 1) * _q_odd_product(q, n)
    raise ValueError(f"unknown moment formula {kind!r}")


def moment_integral(kind: str, m: int, q: float, gamma: float = 1.0, cfg: JacksonConfig = DEFAULT_CONFIG) -> complex:
    if kind == "69":
        return jackson_realline(lambda t: t**m * gauss_g(t, q), gamma, q, cfg)
    if kind == "126":
        return jackson_interval(lambda t: t**m * gauss_bigg(t, q), -q, q, q, cfg)
    raise ValueError(f"unknown moment formula {kind!r}")


def moments_check(
    kind: str,
    ms: Iterable[int] = range(10),
    q: float = 0.5,
    gamma: float = 1.0,
    cfg: JacksonConfig = DEFAULT_CONFIG,
    tol: float = COMPARE_TOL,
) -> dict:
    """Quadrature against closed form for each moment m; deviations are relative to the base constant."""
    rows = []
    try:
        scale = abs(c_q(gamma, q)) if kind == "69" else abs(b_q(q))
        for m in ms:
            computed = moment_integral(kind, m, q, gamma, cfg)
            closed = moment_closed_form(kind, m, q, gamma)
            rows.append({"m": m, "computed": computed, "closed_form": closed, "deviation": abs(computed - closed) / scale})
    except (QCalcError, ValueError) as e:
        return {"success": False, "kind": kind, "rows": rows, "error": str(e)}
    worst = max((r["deviation"] for r in rows), default=0.0)
    return {"success": worst < tol, "kind": kind, "q": q, "gamma": gamma, "rows": rows, "max_residual": worst}


def operator_form_check(
    kind: str,
    m: int,
    q: float = 0.5,
    gamma: float = 1.0,
    ks: Iterable[int] = range(6),
    cfg: JacksonConfig = DEFAULT_CONFIG,
    tol: float = COMPARE_TOL,
) -> dict:
    """The moment integral with x as anchor acts on z^k as a scalar.

    Under REP120 (REP48 for "127", i.e. gamma = 1) x acts on z^k as gamma q^k,
    so the integral acts on z^k by its value at that anchor; every such value
    must be the constant of the moment formula.
    """
    F = NumericField(q)
    rep = rep120(1.0 if kind == "127" else gamma)
    base_kind = "126" if kind == "127" else "69"
    if kind == "127":
        integrand = lambda t: t**m * gauss_bigg(t, q)  # noqa: E731
    else:
        integrand = lambda t: t**m * gauss_g(t, q)  # noqa: E731
    rows = []
    try:
        constant = moment_closed_form(base_kind, m, q, rep.gamma)
        x = NCElement.generator(QPLANE, "x", F, 1)
        for k in ks:
            anchor = act(rep, x, PowerSeries.monomial(F, k))[k]
            if abs(anchor - rep120_eigenvalue(rep, F, k)) > 1e-14:
                raise AlgebraMismatch(f"x does not act diagonally on z^{k}")
            value = jackson_realline(integrand, anchor.real, q, cfg)
            rows.append({"k": k, "anchor": anchor.real, "value": value, "deviation": abs(value - constant)})
        scale = max(abs(constant), abs(c_q(rep.gamma, q) if base_kind == "69" else b_q(q)))
    except (QCalcError, ValueError) as e:
        return {"success": False, "kind": kind, "m": m, "error": str(e)}
    worst = max((r["deviation"] for r in rows), default=0.0) / scale
    return {
        "success": worst < tol,
        "kind": kind,
        "m": m,
        "constant": constant,
        "rows": rows,
        "max_residual": worst,
    }


def gamma_invariance_check(f, gamma: float, q: float, cfg: JacksonConfig = DEFAULT_CONFIG, tol: float = 1e-12) -> dict:
    """int over the lattice anchored at gamma equals the one anchored at q*gamma."""
    try:
        at_gamma = jackson_realline(f, gamma, q, cfg)
        at_q_gamma = jackson_realline(f, q * gamma, q, cfg)
    except QCalcError as e:
        return {"success": False, "gamma": gamma, "error": str(e)}
    residual = abs(at_gamma - at_q_gamma) / max(1.0, abs(at_gamma))
    return {"success": residual < tol, "gamma": gamma, "values": [at_gamma, at_q_gamma], "max_residual": residual}


# ============================================================================
# LATTICE DERIVATIVES
# ============================================================================


class LatticeDerivatives:
    """Iterated backward q-derivatives of one function on {+-gamma q^k}.

    Near 0 (|t| <= radius) the derivatives come from the termwise derivative
    of the Taylor series, since the difference quotient loses all precision
    there; further out they come from backward differences of the previous
    order. Values are memoized by (order, sign, k).
    """

    def __init__(self, func: Callable[[float], complex], series: PowerSeries, q: float, gamma: float, radius: float = SERIES_RADIUS):
        self.func = func
        self.q = q
        self.gamma = gamma
        self.radius = radius
        self._series = [series]
        self._memo: Dict[Tuple[int, int, int], complex] = {}

    @classmethod
    def for_moment(cls, j: int, weight: str, q: float, gamma: float, trunc: int = DERIVATIVE_SERIES_TRUNC) -> "LatticeDerivatives":
        """t^j g_q(t) for weight "g", t^j G_q(t) for weight "G"."""
        F = NumericField(q)
        if weight == "g":
            series = series_of(GAUSS_G, F, trunc).shift(j)
            func = lambda t: t**j * gauss_g(t, q)  # noqa: E731
        elif weight == "G":
            series = series_of(GAUSS_BIGG, F, trunc).shift(j)
            func = lambda t: t**j * gauss_bigg(t, q)  # noqa: E731
        else:
            raise ValueError(f"weight must be 'g' or 'G', got {weight!r}")
        return cls(func, series, q, gamma)

    def _series_of_order(self, order: int) -> PowerSeries:
        while len(self._series) <= order:
            self._series.append(self._series[-1].qderiv())
        return self._series[order]

    def point(self, sign: int, k: int) -> float:
        return sign * self.gamma * self.q**k

    def value(self, order: int, sign: int, k: int) -> complex:
        key = (order, sign, k)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        p = self.point(sign, k)
        if abs(p) <= self.radius:
            result = self._series_of_order(order).evaluate(p)
        elif order == 0:
            result = complex(self.func(p))
        else:
            result = (self.value(order - 1, sign, k) - self.value(order - 1, sign, k + 1)) / ((1 - self.q) * p)
        self._memo[key] = result
        return result

    def normalized(self, m: int) -> "_NormalizedView":
        """f_m = ((1-q) D_q)^m f / (q;q)_m as a lattice function."""
        return _NormalizedView(self, m)


class _NormalizedView:
    def __init__(self, source: LatticeDerivatives, m: int):
        self.source = source
        self.m = m
        self.gamma = source.gamma
        self.q = source.q
        q = source.q
        self.scale = (1 - q) ** m / qfactorial(NumericField(q), m).real

    def sample(self, sign: int, k: int) -> complex:
        return self.source.value(self.m, sign, k) * self.scale


def telescoped_boundary_check(
    func: Callable[[float], complex],
    gamma: float,
    q: float,
    cfg: JacksonConfig = DEFAULT_CONFIG,
    windows: Iterable[Tuple[int, int]] = ((10, 40), (20, 80), (30, 120)),
    tol: float = 1e-12,
) -> dict:
    """Real-line integral of D_q f against its telescoped boundary terms.

    f(q^-m gamma) - f(q^n gamma) - f(-q^-m gamma) + f(-q^n gamma) must tend to the
    integral as m, n grow; both are expected to vanish for decaying f that
    agree at 0 from both sides.
    """

    def derivative(t):
        return (func(t) - func(q * t)) / ((1 - q) * t)

    try:
        integral = jackson_realline(derivative, gamma, q, cfg)
        boundary = []
        for m, n in windows:
            boundary.append(
                complex(func(q**-m * gamma)) - complex(func(q**n * gamma)) - complex(func(-(q**-m) * gamma)) + complex(func(-(q**n) * gamma))
            )
    except QCalcError as e:
        return {"success": False, "error": str(e)}
    residual = max(abs(integral), abs(integral - boundary[-1])) if boundary else abs(integral)
    return {"success": residual < tol, "integral": integral, "boundary_terms": boundary, "max_residual": residual}


def _decay_check(derivs: LatticeDerivatives, m_max: int, steps: int = 12) -> dict:
    """Empirical ratio test |D^m f(q^-(k+1) gamma)| / |D^m f(q^-k gamma)| on the outer lattice.

    Rapid decrease shows up as ratios below q; zero samples count as decaying.
    """
    worst = 0.0
    for m in range(m_max + 1):
        for sign in (1, -1):
            for k in range(2, steps):
                inner = abs(derivs.value(m, sign, -k))
                outer = abs(derivs.value(m, sign, -k - 1))
                if inner == 0:
                    continue
                worst = max(worst, outer / inner)
    return {"max_ratio": worst, "decaying": worst < derivs.q}


def translation_invariance_infinite(
    weight: str = "g",
    j: int = 2,
    gamma: float = 1.0,
    q: float = 0.5,
    m_max: int = 6,
    cfg: JacksonConfig = DEFAULT_CONFIG,
    tol: float = COMPARE_TOL,
) -> dict:
    """I_{f_m}(gamma) for f = t^j * weight and m = 1..m_max, each expected to vanish.

    For weight "G" the outer tail diverges unless gamma is an integer power of
    q; the divergence surfaces as DivergentUpperTail.
    """
    derivs = LatticeDerivatives.for_moment(j, weight, q, gamma)
    base = jackson_realline(derivs.normalized(0), gamma, q, cfg)
    moments = {}
    for m in range(1, m_max + 1):
        moments[m] = jackson_realline(derivs.normalized(m), gamma, q, cfg)
    scale = max(1.0, abs(base))
    worst = max((abs(v) / scale for v in moments.values()), default=0.0)
    telescoped = telescoped_boundary_check(derivs.func, gamma, q, cfg)
    decay = _decay_check(derivs, min(m_max, 3))
    logger.debug("translation invariance weight=%s j=%d gamma=%g: max |I_m| = %.3g", weight, j, gamma, worst)
    return {
        "success": worst < tol and telescoped["success"],
        "weight": weight,
        "j": j,
        "gamma": gamma,
        "q": q,
        "base_integral": base,
        "moments": moments,
        "telescoped": telescoped,
        "decay": decay,
        "max_residual": worst,
    }


# ============================================================================
# FINITE TRANSLATION INVARIANCE AND q-TAYLOR
# ============================================================================


def _lift(element: NCElement, trunc: int) -> NCElement:
    """Reinterpret an element known to a lower degree inside a larger truncation."""
    return NCElement(element.algebra, element.field, trunc, element.coeffs, element.overflow)


def _scaled_qderivs(f: PowerSeries, count: int):
    """((1-q) D_q)^k f for k = 0..count-1."""
    F = f.field
    out = [f]
    for _ in range(1, count):
        out.append(out[-1].qderiv() * (F.one - F.q))
    return out


def _compose_at(f: PowerSeries, base: NCElement, trunc: int) -> NCElement:
    """f(base) known to degree trunc, lifted to the truncation of base."""
    if trunc < 0:
        return NCElement.zero(base.algebra, base.field, base.trunc)
    inner = base.truncate(trunc)
    series = f if f.is_polynomial else f.truncate(min(f.trunc, trunc))
    return _lift(compose_series(series, inner), base.trunc)


@dataclass
class TaylorDecomposition:
    partial: NCElement
    remainder: NCElement
    g_m: NCElement
    valid: bool


def qtaylor(f: PowerSeries, m: int, trunc: Optional[int] = None) -> TaylorDecomposition:
    """f(x+y) = sum_{k<m} y^k ((1-q)D_q)^k f(x)/(q;q)_k + y^m g_m(x, y) in QPLANE."""
    F = f.field
    N = trunc if trunc is not None else (f.trunc if not f.is_polynomial else f.degree())
    N = max(N, 0)
    x = NCElement.generator(QPLANE, "x", F, N)
    y = NCElement.generator(QPLANE, "y", F, N)
    full = _compose_at(f, x + y, N)
    partial = NCElement.zero(QPLANE, F, N)
    for k, derivative in enumerate(_scaled_qderivs(f, min(m, N + 1))):
        term = nc_pow(y, k) * _compose_at(derivative, x, N - k)
        partial = partial + term / qfactorial(F, k)
    remainder = full - partial
    y_index = QPLANE.index("y")
    g_m = {}
    valid = True
    for word, c in remainder.coeffs.items():
        l = QPLANE.exponents(word)[y_index]
        if l < m:
            valid = False
            continue
        g_m[word[m:]] = c
    return TaylorDecomposition(partial, remainder, NCElement(QPLANE, F, N, g_m), valid)


def translation_invariance_finite(
    f: PowerSeries, trunc: Optional[int] = None, base: Optional[NCElement] = None
) -> dict:
    """int_y^{X+y} f d_qt = int_0^X f(t+y) d_qt in QPLANE, X = x unless a base with X y = q y X is given.

    The left side is J(X+y) - J(y) with J the termwise Jackson integral; the
    right side expands f(q^k X + y) by q-Taylor and integrates each term.
    """
    F = f.field
    N = trunc if trunc is not None else (f.trunc if not f.is_polynomial else f.degree() + 1)
    N = max(N, 1)
    try:
        x = NCElement.generator(QPLANE, "x", F, N)
        y = NCElement.generator(QPLANE, "y", F, N)
        X = base if base is not None else x
        if X.trunc != N:
            X = X.truncate(N) if X.trunc > N else _lift(X, N)
        commutator = X * y - (y * X) * F.q
        if not commutator.is_zero(1e-12):
            raise AlgebraMismatch("base element does not q-commute with y")
        J = jackson_0_to_x(f)
        lhs = _compose_at(J, X + y, N) - _compose_at(J, y, N)
        rhs = NCElement.zero(QPLANE, F, N)
        for k, derivative in enumerate(_scaled_qderivs(f, N + 1)):
            integrated = jackson_0_to_x(derivative)
            rhs = rhs + nc_pow(y, k) * _compose_at(integrated, X, N - k) / qfactorial(F, k)
    except QCalcError as e:
        return {"success": False, "error": str(e)}
    diff = lhs - rhs
    residual_terms = [] if diff.is_zero(1e-12) else [diff.to_text()]
    return {
        "success": not residual_terms,
        "truncation": N,
        "lhs": lhs,
        "rhs": rhs,
        "residual_terms": residual_terms,
    }
