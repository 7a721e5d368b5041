"""
Coefficient fields for q-series computations.

Exact mode works in the rational function field Q(v) with q = v**2, so that
q^(1/2) is available as v. Elements are sympy ``FracElement`` values, which
sympy keeps reduced (gcd-cancelled, denominator with positive leading
coefficient) after every operation. Numeric mode works with Python complex
numbers at a fixed q in (0, 1).

Code that has to run in both modes takes a field object (``ExactField`` or
``NumericField``) and only uses its interface plus ``+ - * /`` on elements.
"""

import cmath
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import NamedTuple, Optional, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field

from src.core.errors import (
    DivisionByZero,
    IndexOutOfRange,
    ModeMismatch,
    NonConvergent,
    PoleHit,
)

logger = logging.getLogger(__name__)

_QV_FIELD, _V = field("v", QQ)

# Hard stop for infinite products; q = 0.999 at tol 1e-15 needs about 35k factors
MAX_PRODUCT_FACTORS = 1_000_000


# ============================================================================
# Q MODES
# ============================================================================


@dataclass(frozen=True)
class ExactSymbolic:
    """q kept as an indeterminate."""


@dataclass(frozen=True)
class NumericAt:
    q: float

    def __post_init__(self):
        if not 0 < float(self.q) < 1:
            raise ValueError(f"numeric q must lie strictly between 0 and 1, got {self.q}")


QMode = Union[ExactSymbolic, NumericAt]


def parse_qmode(text) -> QMode:
    """Parse "exact" or a number in (0, 1), as accepted by the --q flag."""
    if isinstance(text, (ExactSymbolic, NumericAt)):
        return text
    if isinstance(text, str) and text.strip().lower() == "exact":
        return ExactSymbolic()
    try:
        value = float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"q must be 'exact' or a number in (0,1), got {text!r}")
    return NumericAt(value)


# ============================================================================
# FIELDS
# ============================================================================


class ExactField:
    """Q(v) with q = v^2."""

    exact = True

    def __init__(self):
        self.K = _QV_FIELD
        self.zero = _QV_FIELD.zero
        self.one = _QV_FIELD.one
        self.v = _V
        self.q = _V**2

    def __repr__(self):
        return "ExactField(Q(v), q=v^2)"

    @functools.lru_cache(maxsize=None)
    def vpow(self, k: int):
        return _V**k

    def qpow(self, k: int):
        return self.vpow(2 * k)

    def convert(self, value):
        if isinstance(value, FracElement):
            if value.field != self.K:
                raise ModeMismatch("element belongs to a different fraction field")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.K(value)
        if isinstance(value, Fraction):
            return self.K(QQ(value.numerator, value.denominator))
        if isinstance(value, float):
            fr = Fraction(value)
            return self.K(QQ(fr.numerator, fr.denominator))
        if isinstance(value, complex):
            raise ModeMismatch("complex numbers have no exact image; use GaussQ")
        raise ModeMismatch(f"cannot convert {type(value).__name__} to an exact scalar")

    def from_laurent(self, terms):
        """Build sum c * v^e from ((e, c), ...) pairs."""
        total = self.zero
        for exponent, coeff in terms:
            total = total + self.convert(coeff) * self.vpow(exponent)
        return total

    def is_zero(self, a) -> bool:
        return not a

    def magnitude(self, a) -> float:
        return 0.0 if not a else 1.0

    def evaluate(self, a, q) -> complex:
        """Evaluate an exact scalar at a concrete q."""
        v = cmath.sqrt(complex(q))
        num = _eval_poly(a.numer, v)
        den = _eval_poly(a.denom, v)
        if den == 0:
            raise DivisionByZero(f"denominator vanishes at q={q}")
        return num / den

    def invert_q(self, a):
        """Substitute q -> 1/q (that is v -> 1/v)."""
        num, den = a.numer, a.denom
        if not num:
            return self.zero
        shift = den.degree() - num.degree()
        return self.K.new(_reverse(num), _reverse(den)) * self.vpow(shift)

    def to_text(self, a) -> str:
        return scalar_text(a)


@dataclass(frozen=True)
class NumericField:
    value: float

    exact = False

    def __post_init__(self):
        if not 0 < self.value < 1:
            raise ValueError(f"numeric q must lie strictly between 0 and 1, got {self.value}")

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    @property
    def q(self):
        return complex(self.value)

    @property
    def v(self):
        return complex(math.sqrt(self.value))

    def vpow(self, k: int):
        return complex(math.sqrt(self.value) ** k)

    def qpow(self, k: int):
        return complex(self.value**k)

    def convert(self, value):
        if isinstance(value, FracElement):
            raise ModeMismatch("exact scalar used in numeric mode")
        if isinstance(value, GaussQ):
            raise ModeMismatch("GaussQ pair used in numeric mode")
        if isinstance(value, (Number, Fraction)):
            return complex(value)
        raise ModeMismatch(f"cannot convert {type(value).__name__} to a numeric scalar")

    def from_laurent(self, terms):
        total = 0j
        for exponent, coeff in terms:
            total += complex(coeff) * self.vpow(exponent)
        return total

    def is_zero(self, a) -> bool:
        return a == 0

    def magnitude(self, a) -> float:
        return abs(a)

    def evaluate(self, a, q=None) -> complex:
        return complex(a)

    def invert_q(self, a):
        raise ModeMismatch("q -> 1/q substitution needs exact scalars")

    def to_text(self, a) -> str:
        return complex_text(a)


EXACT = ExactField()

ScalarField = Union[ExactField, NumericField]


def make_field(mode: QMode) -> ScalarField:
    if isinstance(mode, ExactSymbolic):
        return EXACT
    if isinstance(mode, NumericAt):
        return NumericField(float(mode.q))
    raise ModeMismatch(f"unknown q mode {mode!r}")


def field_of(a) -> Optional[str]:
    """'exact', 'numeric' or None for mode-neutral Python ints and fractions."""
    if isinstance(a, FracElement):
        return "exact"
    if isinstance(a, (float, complex)):
        return "numeric"
    return None


# ============================================================================
# SCALAR OPERATIONS
# ============================================================================


def scalar_arith(a, b, op: str):
    """Add, subtract, multiply or divide two scalars of the same mode."""
    kind_a, kind_b = field_of(a), field_of(b)
    if kind_a and kind_b and kind_a != kind_b:
        raise ModeMismatch(f"cannot {op} {kind_a} and {kind_b} scalars")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if (kind_b == "exact" and not b) or b == 0:
            raise DivisionByZero("division by a zero scalar")
        if kind_a is None and kind_b is None:
            return Fraction(a) / Fraction(b)
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def qshifted_factorial(F: ScalarField, a, k: int, base: int = 1):
    """(a; q^base)_k = prod_{j<k} (1 - q^(base*j) a)."""
    if k < 0:
        raise IndexOutOfRange(f"k must be nonnegative, got {k}")
    a = F.convert(a)
    result = F.one
    for j in range(k):
        result = result * (F.one - F.qpow(base * j) * a)
    return result


@functools.lru_cache(maxsize=None)
def qfactorial(F: ScalarField, n: int, base: int = 1):
    """(q^base; q^base)_n, cached."""
    if n < 0:
        raise IndexOutOfRange(f"n must be nonnegative, got {n}")
    if n == 0:
        return F.one
    return qfactorial(F, n - 1, base) * (F.one - F.qpow(base * n))


@functools.lru_cache(maxsize=None)
def qbinomial(F: ScalarField, n: int, k: int):
    """Gaussian binomial [n, k]_q."""
    if k < 0 or n < 0 or k > n:
        raise IndexOutOfRange(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    return qfactorial(F, n) / (qfactorial(F, k) * qfactorial(F, n - k))


class InfiniteProduct(NamedTuple):
    value: complex
    factors: int


def qpochhammer_infinite(a, q, tol: float = 1e-15, guard: Optional[float] = None) -> InfiniteProduct:
    """(a;q)_inf, stopping at the first j with |q^j a| < tol.

    With ``guard`` set, a factor of modulus below it raises PoleHit; callers
    that divide by the product use this to refuse evaluating at a pole.
    """
    q = complex(q)
    if abs(q) >= 1:
        raise NonConvergent(f"(a;q)_inf needs |q| < 1, got q={q}")
    term = complex(a)
    product = 1 + 0j
    j = 0
    while abs(term) >= tol:
        factor = 1 - term
        if guard is not None and abs(factor) < guard:
            raise PoleHit(f"factor 1 - q^{j} a = {factor} is within {guard} of zero")
        product *= factor
        term *= q
        j += 1
        if j > MAX_PRODUCT_FACTORS:
            raise NonConvergent(f"(a;q)_inf did not reach tolerance {tol}")
    return InfiniteProduct(product, j)


def qpoch_inf(a, q, tol: float = 1e-15) -> complex:
    return qpochhammer_infinite(a, q, tol).value


# ============================================================================
# COMPLEXIFIED EXACT SCALARS
# ============================================================================


@dataclass(frozen=True)
class GaussQ:
    """re + i*im with re, im exact scalars and i^2 = -1."""

    re: object
    im: object

    @classmethod
    def real(cls, F: ScalarField, value) -> "GaussQ":
        return cls(F.convert(value), F.zero)

    @classmethod
    def unit_power(cls, F: ScalarField, n: int) -> "GaussQ":
        r = n % 4
        if r == 0:
            return cls(F.one, F.zero)
        if r == 1:
            return cls(F.zero, F.one)
        if r == 2:
            return cls(-F.one, F.zero)
        return cls(F.zero, -F.one)

    def _lift(self, other):
        if isinstance(other, GaussQ):
            return other
        return GaussQ(other, other * 0)

    def __add__(self, other):
        other = self._lift(other)
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return GaussQ(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, other):
        other = self._lift(other)
        return GaussQ(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.re and not self.im


# ============================================================================
# TEXT RENDERING
# ============================================================================


def _eval_poly(p, v: complex) -> complex:
    total = 0j
    for (exponent,), coeff in p.items():
        total += float(Fraction(int(coeff.numerator), int(coeff.denominator))) * v**exponent
    return total


def _reverse(p):
    degree = p.degree()
    return p.ring.from_dict({(degree - e,): c for (e,), c in p.items()})


def _qpower_text(exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent % 2 == 0:
        k = exponent // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^({exponent}/2)"


def _poly_text(items) -> str:
    """items: ascending (exponent, Fraction) pairs of a nonzero polynomial."""
    pieces = []
    for exponent, coeff in items:
        mono = _qpower_text(exponent)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)


def _ascending(p, sign: int):
    return sorted(
        ((e, sign * Fraction(int(c.numerator), int(c.denominator))) for (e,), c in p.items()),
        key=lambda t: t[0],
    )


def scalar_text(a) -> str:
    """Render an exact scalar in ascending powers of q, e.g. '1 - q^3'."""
    if not a:
        return "0"
    num, den = a.numer, a.denom
    sign = 1
    # show denominators with a positive constant-side coefficient: 1/(1 - q), not -1/(q - 1)
    if _ascending(den, 1)[0][1] < 0:
        sign = -1
    num_items = _ascending(num, sign)
    den_items = _ascending(den, sign)
    num_text = _poly_text(num_items)
    if len(den_items) == 1 and den_items[0] == (0, 1):
        return num_text
    if len(num_items) > 1:
        num_text = f"({num_text})"
    den_text = _poly_text(den_items)
    if len(den_items) > 1 or den_items[0][1] != 1:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


def looks_negative(F: ScalarField, a) -> bool:
    """True if the rendered scalar would start with a minus sign."""
    if F.exact:
        return scalar_text(a).startswith("-")
    a = complex(a)
    return a.real < 0 or (a.real == 0 and a.imag < 0)


def complex_text(a) -> str:
    a = complex(a)
    if a.imag == 0:
        return f"{a.real:.15g}"
    if a.real == 0:
        return f"{a.imag:.15g}i"
    sign = "-" if a.imag < 0 else "+"
    return f"({a.real:.15g} {sign} {abs(a.imag):.15g}i)"
