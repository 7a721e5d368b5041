"""
The q-Fourier transform pair on lattice samples.

F_q integrates against e_q(-ixy) over [-1, 1]; its inverse F~_{q,gamma}
integrates against E_q(iqxy) over the two-sided lattice anchored at gamma.
Both read their input only where the Jackson sums read it, so inputs may be
plain callables or QGridFunction samples.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Sequence

from src.core.coeffield import NumericField
from src.core.errors import HypothesisFailed, QCalcError
from src.core.jackson import (
    DEFAULT_CONFIG,
    JacksonConfig,
    QGridFunction,
    b_q,
    c_q,
    jackson_interval,
    jackson_realline,
    weight_I,
    weight_II,
)
from src.core.qfunctions import BIGEQ, EQ, numeric_eval
from src.core.qhermite import HermiteFamily, hermite

try:
    from config import DEFAULT_NUMERIC_Q
except ImportError:
    DEFAULT_NUMERIC_Q = 0.5

logger = logging.getLogger(__name__)

FOURIER_TOL = 1e-9
HYPOTHESIS_TOL = 1e-12
DEFAULT_SAMPLES = (0.0, 0.25, 0.5, -0.5, 1.0)


@dataclass(frozen=True)
class TransformConfig:
    q: float = DEFAULT_NUMERIC_Q
    gamma: float = 1.0
    jackson: JacksonConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


DEFAULT_TRANSFORM = TransformConfig()


def _times(f, kernel: Callable[[float], complex]):
    """kernel * f, staying on the lattice when f is sampled."""
    if isinstance(f, QGridFunction):
        return f.pointwise(kernel)
    return lambda x: kernel(x) * complex(f(x))


def fq_transform(f, ys: Iterable[complex], tc: TransformConfig = DEFAULT_TRANSFORM) -> Dict[complex, complex]:
    """(F_q f)(y) = (1/b_q) int_{-1}^{1} e_q(-ixy) f(x) d_qx for every sample y."""
    q = tc.q
    norm = b_q(q)
    out = {}
    for y in ys:
        kernel = lambda x, y=y: numeric_eval(EQ, -1j * x * y, q)  # noqa: E731
        out[y] = jackson_interval(_times(f, kernel), -1.0, 1.0, q, tc.jackson) / norm
    return out


def ftilde_transform(g, xs: Iterable[complex], tc: TransformConfig = DEFAULT_TRANSFORM) -> Dict[complex, complex]:
    """(F~ g)(x) = (1/c_q(gamma)) int E_q(iqxy) g(y) d_qy over the lattice at gamma."""
    q, gamma = tc.q, tc.gamma
    norm = c_q(gamma, q)
    out = {}
    for x in xs:
        kernel = lambda y, x=x: numeric_eval(BIGEQ, 1j * q * x * y, q)  # noqa: E731
        out[x] = jackson_realline(_times(g, kernel), gamma, q, tc.jackson) / norm
    return out


# ============================================================================
# CLOSED FORMS
# ============================================================================


def _phase(n: int) -> complex:
    """i^-n"""
    return (1j) ** (-n)


def forward_pair(kind: str, n: int, q: float):
    """(input on [-1, 1], closed form of its F_q transform) for one pair.

    "153": h_n W_I  -> q^(n(n-1)/2) i^-n y^n e_{q^2}(-y^2)
    "154": x^n W_I  -> q^(n(n-1)/2) i^-n h~_n(y) e_{q^2}(-y^2)
    """
    F = NumericField(q)
    c = q ** (n * (n - 1) / 2) * _phase(n)
    if kind == "153":
        h = hermite(HermiteFamily.I, n, F)
        return (lambda x: h(x) * weight_I(x, q)), (lambda y: c * y**n * weight_II(y, q))
    if kind == "154":
        h = hermite(HermiteFamily.II, n, F)
        return (lambda x: x**n * weight_I(x, q)), (lambda y: c * h(y) * weight_II(y, q))
    raise ValueError(f"unknown transform pair {kind!r}")


def _deviation(computed: complex, expected: complex) -> float:
    return abs(computed - expected) / max(1.0, abs(expected))


def pair_rows(kind: str, n: int, ys: Sequence[float] = DEFAULT_SAMPLES, tc: TransformConfig = DEFAULT_TRANSFORM):
    """One row per sample: transform by quadrature next to the closed form."""
    f, closed = forward_pair(kind, n, tc.q)
    values = fq_transform(f, ys, tc)
    return [
        {
            "pair": kind,
            "n": n,
            "y": y,
            "transform": values[y],
            "closed_form": closed(y),
            "deviation": _deviation(values[y], closed(y)),
        }
        for y in ys
    ]


def pairs_check(kind: str, n_max: int = 4, ys: Sequence[float] = DEFAULT_SAMPLES, tc: TransformConfig = DEFAULT_TRANSFORM, tol: float = FOURIER_TOL) -> dict:
    rows = []
    try:
        for n in range(n_max + 1):
            rows.extend(pair_rows(kind, n, ys, tc))
    except QCalcError as e:
        return {"success": False, "pair": kind, "rows": rows, "error": str(e)}
    worst = max((r["deviation"] for r in rows), default=0.0)
    return {"success": worst < tol, "pair": kind, "rows": rows, "max_residual": worst}


# ============================================================================
# CHECKS
# ============================================================================


def roundtrip_check(
    n_max: int = 3,
    tc: TransformConfig = DEFAULT_TRANSFORM,
    ys: Sequence[float] = DEFAULT_SAMPLES,
    xs: Sequence[float] = (0.0, 1.0, -1.0, 0.5, -0.25),
    tol: float = FOURIER_TOL,
) -> dict:
    """F_q of each pair input against its closed form, then F~ of the closed form back to the input."""
    failures, worst = [], 0.0
    try:
        for kind in ("153", "154"):
            for n in range(n_max + 1):
                f, closed = forward_pair(kind, n, tc.q)
                forward = fq_transform(f, ys, tc)
                back = ftilde_transform(closed, xs, tc)
                deviations = [_deviation(forward[y], closed(y)) for y in ys]
                deviations += [_deviation(back[x], f(x)) for x in xs]
                step = max(deviations)
                worst = max(worst, step)
                if step >= tol:
                    failures.append({"pair": kind, "n": n, "deviation": step})
    except QCalcError as e:
        return {"success": False, "failures": failures, "error": str(e)}
    if failures:
        logger.warning("roundtrip failed for %s", failures)
    return {"success": not failures, "n_max": n_max, "failures": failures, "max_residual": worst}


def _forward_difference(f, q: float):
    """(1-q) D+ f(x) = (f(x/q) - f(x)) / x"""
    return lambda x: (complex(f(x / q)) - complex(f(x))) / x


def _backward_difference(g, q: float):
    """(1-q) D- g(y) = (g(y) - g(qy)) / y"""
    return lambda y: (complex(g(y)) - complex(g(q * y))) / y


def _check_edge_vanishes(f, q: float):
    for edge in (1 / q, -1 / q):
        value = complex(f(edge))
        if abs(value) > HYPOTHESIS_TOL:
            raise HypothesisFailed("f(+-1/q) = 0", f"f({edge:g}) = {value}")


def _check_outer_decay(g, tc: TransformConfig, xs: Iterable[float], depths: Sequence[int] = (20, 25, 30)):
    q, gamma = tc.q, tc.gamma
    for x in xs:
        for n in depths:
            for sign in (1, -1):
                try:
                    value = numeric_eval(BIGEQ, sign * 1j * x * gamma * q ** (-n + 1), q) * complex(g(sign * gamma * q ** (-n)))
                except OverflowError:
                    raise HypothesisFailed("E_q(+-ix gamma q^(1-n)) g(+-gamma q^-n) -> 0", f"overflow at n={n}")
                if abs(value) > HYPOTHESIS_TOL:
                    raise HypothesisFailed(
                        "E_q(+-ix gamma q^(1-n)) g(+-gamma q^-n) -> 0", f"{abs(value):.3g} at x={x}, n={n}"
                    )


def derivative_exchange_check(
    f=None,
    g=None,
    ys: Sequence[float] = DEFAULT_SAMPLES,
    xs: Sequence[float] = DEFAULT_SAMPLES,
    tc: TransformConfig = DEFAULT_TRANSFORM,
    tol: float = FOURIER_TOL,
) -> dict:
    """(1-q) F_q(D+ f) = iy F_q f and (1-q) F~(D- g) = -ix F~ g.

    Raises HypothesisFailed when f does not vanish at +-1/q or when
    E_q(ixy) g(y) does not decay along the outer lattice.
    """
    q = tc.q
    rows = []
    if f is not None:
        _check_edge_vanishes(f, q)
        lhs = fq_transform(_forward_difference(f, q), ys, tc)
        rhs = fq_transform(f, ys, tc)
        rows += [{"side": "F_q", "at": y, "deviation": _deviation(lhs[y], 1j * y * rhs[y])} for y in ys]
    if g is not None:
        _check_outer_decay(g, tc, xs)
        lhs = ftilde_transform(_backward_difference(g, q), xs, tc)
        rhs = ftilde_transform(g, xs, tc)
        rows += [{"side": "F~", "at": x, "deviation": _deviation(lhs[x], -1j * x * rhs[x])} for x in xs]
    worst = max((r["deviation"] for r in rows), default=0.0)
    return {"success": worst < tol, "rows": rows, "max_residual": worst}


def lowering_lattice_check(
    family,
    n_max: int = 5,
    tc: TransformConfig = DEFAULT_TRANSFORM,
    window=(4, 12),
    tol: float = FOURIER_TOL,
) -> dict:
    """(1-q) D+ (h_n W_I) + q^-n h_(n+1) W_I = 0 and (1-q) D- (h~_n w) + q^n h~_(n+1) w = 0 on lattice samples."""
    family = HermiteFamily(family) if not isinstance(family, HermiteFamily) else family
    q = tc.q
    F = NumericField(q)
    worst, failures = 0.0, []
    for n in range(n_max + 1):
        h, h_next = hermite(family, n, F), hermite(family, n + 1, F)
        if family is HermiteFamily.I:
            weight = lambda x: weight_I(x, q)  # noqa: E731
            direction, factor, gamma = "forward", q ** (-n), 1.0
        else:
            weight = lambda x: weight_II(x, q)  # noqa: E731
            direction, factor, gamma = "backward", q**n, tc.gamma
        grid = QGridFunction.from_function(lambda x: h(x) * weight(x), q, gamma, window, include_zero=False)
        derived = grid.qderiv(direction) * (1 - q)
        for (sign, k), value in derived.values.items():
            x = derived.point(sign, k)
            expected = -factor * h_next(x) * weight(x)
            deviation = _deviation(value, expected)
            worst = max(worst, deviation)
            if deviation >= tol:
                failures.append({"n": n, "x": x, "deviation": deviation})
    return {"success": not failures, "family": family.value, "failures": failures[:10], "max_residual": worst}


def linearity_check(
    f1, f2, a: complex = 2.0, b: complex = -0.5j, samples: Sequence[float] = DEFAULT_SAMPLES, tc: TransformConfig = DEFAULT_TRANSFORM, tol: float = FOURIER_TOL
) -> dict:
    combined = lambda t: a * complex(f1(t)) + b * complex(f2(t))  # noqa: E731
    worst = 0.0
    try:
        for transform in (fq_transform, ftilde_transform):
            whole = transform(combined, samples, tc)
            first = transform(f1, samples, tc)
            second = transform(f2, samples, tc)
            for s in samples:
                worst = max(worst, _deviation(whole[s], a * first[s] + b * second[s]))
    except QCalcError as e:
        return {"success": False, "error": str(e)}
    return {"success": worst < tol, "max_residual": worst}


def gamma_shift_check(g, xs: Sequence[float] = DEFAULT_SAMPLES, tc: TransformConfig = DEFAULT_TRANSFORM, tol: float = 1e-10) -> dict:
    """F~ at anchor gamma and at q*gamma agree."""
    shifted = TransformConfig(tc.q, tc.q * tc.gamma, tc.jackson)
    try:
        at_gamma = ftilde_transform(g, xs, tc)
        at_shift = ftilde_transform(g, xs, shifted)
    except QCalcError as e:
        return {"success": False, "gamma": tc.gamma, "error": str(e)}
    worst = max(_deviation(at_shift[x], at_gamma[x]) for x in xs)
    return {"success": worst < tol, "gamma": tc.gamma, "max_residual": worst}
