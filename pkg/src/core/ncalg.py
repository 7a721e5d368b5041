"""
Degree-truncated noncommutative algebra over relation algebras.

An ``AlgebraSpec`` lists ordered generators with positive degrees and
oriented rewrite rules ``g_i g_j -> sum c * word`` for out-of-order adjacent
pairs. Elements (``NCElement``) store a coefficient table keyed by
normal-form words (tuples of generator indices), truncated at a weighted
total degree N. Rule coefficients are Laurent polynomials in v = q^(1/2)
so one spec serves both the exact and the numeric field.
"""

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from src.core.coeffield import EXACT, ScalarField, looks_negative
from src.core.errors import (
    AlgebraMismatch,
    ModeMismatch,
    NonNilpotentArgument,
    NonUnitConstantTerm,
    RelationViolation,
    UnknownGenerator,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Laurent = Tuple[Tuple[int, Fraction], ...]


def laurent(terms: Mapping[int, object]) -> Laurent:
    """Freeze {v_exponent: coefficient} into a hashable Laurent polynomial."""
    return tuple(sorted((int(e), Fraction(c)) for e, c in terms.items() if c))


# common rule coefficients, keyed by power of v
_ONE = laurent({0: 1})
_Q = laurent({2: 1})
_QINV = laurent({-2: 1})
_Q2 = laurent({4: 1})
_Q2INV = laurent({-4: 1})
_V = laurent({1: 1})
_ONE_MINUS_Q = laurent({0: 1, 2: -1})


@dataclass(frozen=True)
class Rule:
    left: Tuple[int, int]
    right: Tuple[Tuple[Laurent, Word], ...]


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    generators: Tuple[str, ...]
    degrees: Tuple[int, ...]
    rules: Tuple[Rule, ...] = ()

    def __post_init__(self):
        if len(self.generators) != len(self.degrees):
            raise ValueError(f"{self.name}: one degree per generator required")
        if any(d <= 0 for d in self.degrees):
            raise ValueError(f"{self.name}: generator degrees must be positive")
        for rule in self.rules:
            left_degree = self.degree(rule.left)
            for _, word in rule.right:
                if self.degree(word) != left_degree:
                    raise ValueError(f"{self.name}: rule {self.rule_text(rule)} is not homogeneous")

    @cached_property
    def rule_table(self) -> Dict[Tuple[int, int], Rule]:
        return {rule.left: rule for rule in self.rules}

    @cached_property
    def _unit_degrees(self) -> bool:
        return all(d == 1 for d in self.degrees)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGenerator(f"{name!r} is not a generator of {self.name}")

    def word(self, names: Union[str, Sequence]) -> Word:
        """Indices for a word given as 'x y' / 'x*y', a name sequence or indices."""
        if isinstance(names, str):
            names = names.replace("*", " ").split()
        out = []
        for g in names:
            if isinstance(g, int):
                if not 0 <= g < len(self.generators):
                    raise UnknownGenerator(f"index {g} out of range for {self.name}")
                out.append(g)
            else:
                out.append(self.index(g))
        return tuple(out)

    def degree(self, word: Word) -> int:
        if self._unit_degrees:
            return len(word)
        degrees = self.degrees
        return sum(degrees[g] for g in word)

    def monomial(self, exponents: Sequence[int]) -> Word:
        """Normal word with the given exponent per generator, in generator order."""
        word = []
        for g, e in enumerate(exponents):
            word.extend([g] * e)
        return tuple(word)

    def exponents(self, word: Word) -> Tuple[int, ...]:
        counts = [0] * len(self.generators)
        for g in word:
            counts[g] += 1
        return tuple(counts)

    def render(self, word: Word) -> str:
        if not word:
            return "1"
        pieces = []
        run_gen, run_len = word[0], 0
        for g in word + (None,):
            if g == run_gen:
                run_len += 1
                continue
            name = self.generators[run_gen]
            pieces.append(name if run_len == 1 else f"{name}^{run_len}")
            run_gen, run_len = g, 1
        return "*".join(pieces)

    def rule_text(self, rule: Rule) -> str:
        rhs = []
        for coeff, word in rule.right:
            c = " + ".join(f"{v}*v^{e}" if e else f"{v}" for e, v in coeff)
            rhs.append(f"({c})*{self.render(word)}")
        return f"{self.render(rule.left)} -> " + " + ".join(rhs)


def _rule(gens: Sequence[str], left: str, *terms) -> Rule:
    """_rule(gens, 'x y', (_Q, 'y x'), (_ONE_MINUS_Q, 'c'))"""

    def idx(text):
        return tuple(gens.index(g) for g in text.split())

    return Rule(idx(left), tuple((coeff, idx(word)) for coeff, word in terms))


@functools.lru_cache(maxsize=None)
def free_algebra(*names: str) -> AlgebraSpec:
    return AlgebraSpec(f"FREE({','.join(names)})", tuple(names), (1,) * len(names))


def _spec(name, gens, degrees, *rules):
    return AlgebraSpec(name, gens, degrees, tuple(_rule(gens, *r) for r in rules))


# ============================================================================
# BUILT-IN ALGEBRAS
# ============================================================================

# xy = q yx, normal basis y^l x^k
QPLANE = _spec("QPLANE", ("y", "x"), (1, 1), ("x y", (_Q, "y x")))

# xy - q yx = (1-q) c, c central of degree 2, basis c^m y^l x^k
QHEIS = _spec(
    "QHEIS",
    ("c", "y", "x"),
    (2, 1, 1),
    ("x y", (_Q, "y x"), (_ONE_MINUS_Q, "c")),
    ("x c", (_ONE, "c x")),
    ("y c", (_ONE, "c y")),
)

# xy - yx = (1-q) z, xz = q zx, zy = q yz, deg z = 2
QHEISZ = _spec(
    "QHEISZ",
    ("z", "y", "x"),
    (2, 1, 1),
    ("x y", (_ONE, "y x"), (_ONE_MINUS_Q, "z")),
    ("x z", (_Q, "z x")),
    ("y z", (_QINV, "z y")),
)

# xw - q wx = (1-q) z^2, xz = q zx, zw = q wz, basis w^k x^l z^m
GF98 = _spec(
    "GF98",
    ("w", "x", "z"),
    (1, 1, 1),
    ("x w", (_Q, "w x"), (_ONE_MINUS_Q, "z z")),
    ("z x", (_QINV, "x z")),
    ("z w", (_Q, "w z")),
)

# xw - q wx = (1-q) v, xv = q^2 vx, vw = q^2 wv, deg v = 2
GF103 = _spec(
    "GF103",
    ("w", "x", "v"),
    (1, 1, 2),
    ("x w", (_Q, "w x"), (_ONE_MINUS_Q, "v")),
    ("v x", (_Q2INV, "x v")),
    ("v w", (_Q2, "w v")),
)

# QPLANE with a central parameter a
QPLANE_A = _spec(
    "QPLANE_A",
    ("a", "y", "x"),
    (1, 1, 1),
    ("x y", (_Q, "y x")),
    ("x a", (_ONE, "a x")),
    ("y a", (_ONE, "a y")),
)

# polynomial ring in a, z
COMMUTATIVE_AZ = _spec("COMMUTATIVE_AZ", ("a", "z"), (1, 1), ("z a", (_ONE, "a z")))

# slot i times slot j with i > j picks up q: the triple braided tensor power
TENSOR3 = _spec(
    "TENSOR3",
    ("s1", "s2", "s3"),
    (1, 1, 1),
    ("s2 s1", (_Q, "s1 s2")),
    ("s3 s1", (_Q, "s1 s3")),
    ("s3 s2", (_Q, "s2 s3")),
)

# lam mu = q^(1/2) mu lam with a central x
LAMBDA_MU = _spec(
    "LAMBDA_MU",
    ("x", "mu", "lam"),
    (1, 1, 1),
    ("mu x", (_ONE, "x mu")),
    ("lam x", (_ONE, "x lam")),
    ("lam mu", (_V, "mu lam")),
)

FREE_XW = free_algebra("x", "w")

BUILTIN_ALGEBRAS = {
    spec.name: spec
    for spec in (QPLANE, QHEIS, QHEISZ, GF98, GF103, QPLANE_A, COMMUTATIVE_AZ, TENSOR3, LAMBDA_MU, FREE_XW)
}


# ============================================================================
# REWRITING
# ============================================================================


class _Rewriter:
    """Memoized normal forms for one (algebra, field) pair."""

    def __init__(self, algebra: AlgebraSpec, F: ScalarField):
        self.algebra = algebra
        self.F = F
        self.rules = {
            rule.left: tuple((F.from_laurent(coeff), word) for coeff, word in rule.right)
            for rule in algebra.rules
        }
        self.memo: Dict[Word, Dict[Word, object]] = {}

    def reduce(self, word: Word) -> Dict[Word, object]:
        cached = self.memo.get(word)
        if cached is not None:
            return cached
        rules = self.rules
        rhs = None
        for i in range(len(word) - 1):
            rhs = rules.get((word[i], word[i + 1]))
            if rhs is not None:
                break
        if rhs is None:
            result = {word: self.F.one}
            self.memo[word] = result
            return result
        prefix, suffix = word[:i], word[i + 2 :]
        result: Dict[Word, object] = {}
        for coeff, middle in rhs:
            for w, c in self.reduce(prefix + middle + suffix).items():
                term = coeff * c
                result[w] = term if w not in result else result[w] + term
        is_zero = self.F.is_zero
        result = {w: c for w, c in result.items() if not is_zero(c)}
        self.memo[word] = result
        return result


@functools.lru_cache(maxsize=None)
def rewriter(algebra: AlgebraSpec, F: ScalarField) -> _Rewriter:
    return _Rewriter(algebra, F)


# ============================================================================
# ELEMENTS
# ============================================================================


def _is_element(value) -> bool:
    return isinstance(value, NCElement)


class NCElement:
    """A truncated element of a relation algebra; treat as immutable."""

    __slots__ = ("algebra", "field", "trunc", "coeffs", "overflow")

    def __init__(self, algebra: AlgebraSpec, field: ScalarField, trunc: int, coeffs=None, overflow: int = 0):
        self.algebra = algebra
        self.field = field
        self.trunc = trunc
        is_zero = field.is_zero
        self.coeffs: Dict[Word, object] = {w: c for w, c in (coeffs or {}).items() if not is_zero(c)}
        self.overflow = overflow

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, algebra, field=EXACT, trunc=12):
        return cls(algebra, field, trunc)

    @classmethod
    def scalar(cls, algebra, field=EXACT, trunc=12, value=1):
        return cls(algebra, field, trunc, {(): field.convert(value)})

    @classmethod
    def one(cls, algebra, field=EXACT, trunc=12):
        return cls.scalar(algebra, field, trunc, 1)

    @classmethod
    def generator(cls, algebra, name: str, field=EXACT, trunc=12):
        g = algebra.index(name)
        if algebra.degrees[g] > trunc:
            return cls(algebra, field, trunc, overflow=1)
        return cls(algebra, field, trunc, {(g,): field.one})

    @classmethod
    def from_terms(cls, algebra, field, trunc, terms: Mapping):
        """Sum of coefficient * word, each word normal-ordered first."""
        out = cls(algebra, field, trunc)
        for word, coeff in terms.items():
            out = out + normal_order(algebra, word, trunc, field) * field.convert(coeff)
        return out

    # -- structure ----------------------------------------------------------

    def _check(self, other: "NCElement"):
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
        if other.field != self.field:
            raise ModeMismatch("elements use different coefficient fields")
        if other.trunc != self.trunc:
            raise AlgebraMismatch(f"truncation {self.trunc} vs {other.trunc}")

    def _like(self, coeffs, overflow=None) -> "NCElement":
        return NCElement(self.algebra, self.field, self.trunc, coeffs, self.overflow if overflow is None else overflow)

    def constant_term(self):
        return self.coeffs.get((), self.field.zero)

    def min_degree(self) -> Optional[int]:
        if not self.coeffs:
            return None
        return min(self.algebra.degree(w) for w in self.coeffs)

    def homogeneous_component(self, degree: int) -> "NCElement":
        deg = self.algebra.degree
        return self._like({w: c for w, c in self.coeffs.items() if deg(w) == degree})

    def truncate(self, trunc: int) -> "NCElement":
        deg = self.algebra.degree
        return NCElement(
            self.algebra, self.field, trunc, {w: c for w, c in self.coeffs.items() if deg(w) <= trunc}, self.overflow
        )

    def coefficient(self, word) -> object:
        if not isinstance(word, tuple) or (word and not isinstance(word[0], int)):
            word = self.algebra.word(word)
        return self.coeffs.get(word, self.field.zero)

    def terms(self):
        """(word, coefficient) pairs ordered by degree, then by generator order."""
        deg = self.algebra.degree
        return sorted(self.coeffs.items(), key=lambda item: (deg(item[0]), item[0]))

    def is_zero(self, tol: Optional[float] = None) -> bool:
        if tol is None or self.field.exact:
            return not self.coeffs
        return self.max_abs() <= tol

    def max_abs(self) -> float:
        magnitude = self.field.magnitude
        return max((magnitude(c) for c in self.coeffs.values()), default=0.0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if _is_element(other):
            self._check(other)
            out = dict(self.coeffs)
            for w, c in other.coeffs.items():
                out[w] = out[w] + c if w in out else c
            return self._like(out, self.overflow + other.overflow)
        out = dict(self.coeffs)
        c = self.field.convert(other)
        out[()] = out[()] + c if () in out else c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_element(other):
            return nc_mul(self, other)
        c = self.field.convert(other)
        return self._like({w: v * c for w, v in self.coeffs.items()})

    def __rmul__(self, other):
        c = self.field.convert(other)
        return self._like({w: c * v for w, v in self.coeffs.items()})

    def __truediv__(self, other):
        return self * (self.field.one / self.field.convert(other))

    def __pow__(self, n: int):
        return nc_pow(self, n)

    def __eq__(self, other):
        if not _is_element(other):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.trunc == other.trunc
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    # -- rendering ----------------------------------------------------------

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return render_terms(self.field, ((self.algebra.render(w), c) for w, c in self.terms()))

    def __repr__(self):
        return f"NCElement[{self.algebra.name}, N={self.trunc}]({self.to_text()})"


def render_terms(F: ScalarField, terms: Iterable[Tuple[str, object]]) -> str:
    """Join (monomial_text, coefficient) pairs as 'y^2*x + (1 + q)*y'."""
    pieces = []
    for mono, coeff in terms:
        negative = looks_negative(F, coeff)
        body_coeff = -coeff if negative else coeff
        text = F.to_text(body_coeff)
        composite = any(s in text[1:] for s in (" + ", " - ", "/")) or text.startswith("(")
        if mono == "1":
            body = text
        elif text == "1":
            body = mono
        else:
            body = f"({text})*{mono}" if composite else f"{text}*{mono}"
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces) if pieces else "0"


# ============================================================================
# OPERATIONS
# ============================================================================


def normal_order(algebra: AlgebraSpec, word, trunc: int, field: ScalarField = EXACT) -> NCElement:
    """Normal form of a generator word, dropping it if its degree exceeds trunc."""
    word = algebra.word(word)
    if algebra.degree(word) > trunc:
        return NCElement(algebra, field, trunc, overflow=1)
    return NCElement(algebra, field, trunc, rewriter(algebra, field).reduce(word))


def nc_mul(a: NCElement, b: NCElement) -> NCElement:
    a._check(b)
    algebra, F, N = a.algebra, a.field, a.trunc
    reduce = rewriter(algebra, F).reduce
    deg = algebra.degree
    out: Dict[Word, object] = {}
    overflow = a.overflow + b.overflow
    right = [(w, c, deg(w)) for w, c in b.coeffs.items()]
    for u, cu in a.coeffs.items():
        du = deg(u)
        for w, cw, dw in right:
            if du + dw > N:
                overflow += 1
                continue
            product = cu * cw
            for nw, nc in reduce(u + w).items():
                term = product * nc
                out[nw] = term if nw not in out else out[nw] + term
    return NCElement(algebra, F, N, out, overflow)


def nc_pow(a: NCElement, n: int) -> NCElement:
    if n < 0:
        raise ValueError("nc_pow needs a nonnegative exponent")
    result = NCElement.one(a.algebra, a.field, a.trunc)
    for _ in range(n):
        result = nc_mul(result, a)
    return result


def _needed_order(a: NCElement) -> int:
    """Largest k for which a^k can still have degree <= trunc."""
    low = a.min_degree() or 1
    return a.trunc // low


def compose_series(f, a: NCElement) -> NCElement:
    """sum_k f_k a^k for a one-variable series or polynomial f."""
    F = a.field
    if f.field != F:
        raise ModeMismatch("series and element use different coefficient fields")
    nilpotent = F.is_zero(a.constant_term())
    if not nilpotent and not f.is_polynomial:
        raise NonNilpotentArgument("argument has a nonzero constant term and the series is infinite")
    coeffs = list(f.coeffs)
    top = len(coeffs) - 1
    while top > 0 and F.is_zero(coeffs[top]):
        top -= 1
    if nilpotent and a.coeffs:
        needed = _needed_order(a)
        if not f.is_polynomial and f.trunc < needed:
            raise AlgebraMismatch(f"series known to degree {f.trunc}, element needs {needed}")
        top = min(top, needed)
    result = NCElement.scalar(a.algebra, F, a.trunc, coeffs[top] if coeffs else 0)
    for k in range(top - 1, -1, -1):
        result = nc_mul(result, a) + coeffs[k]
    return result


def nc_invert(a: NCElement) -> NCElement:
    """Two-sided inverse via the geometric series in 1 - a/a_0."""
    F = a.field
    c0 = a.constant_term()
    if F.is_zero(c0):
        raise NonUnitConstantTerm("constant term is zero")
    inv0 = F.one / c0
    one = NCElement.one(a.algebra, F, a.trunc)
    u = one - a * inv0
    result = one
    for _ in range(_needed_order(u) if u.coeffs else 0):
        result = one + nc_mul(u, result)
    return result * inv0


def substitute(a: NCElement, images: Mapping[str, NCElement], tol: float = 1e-12) -> NCElement:
    """Image of a under the homomorphism generator -> image.

    Generators missing from ``images`` map to themselves, which needs the
    target to be the source algebra. Every relation of the source is checked
    on the images first.
    """
    source = a.algebra
    given = list(images.values())
    if not given:
        return a
    target = given[0]
    for img in given[1:]:
        target._check(img)
    resolved = []
    for name in source.generators:
        if name in images:
            img = images[name]
        else:
            if target.algebra != source:
                raise AlgebraMismatch(f"no image given for generator {name!r}")
            img = NCElement.generator(source, name, target.field, target.trunc)
        if not target.field.is_zero(img.constant_term()):
            raise NonNilpotentArgument(f"image of {name!r} has a nonzero constant term")
        resolved.append(img)

    cache: Dict[Word, NCElement] = {(): NCElement.one(target.algebra, target.field, target.trunc)}

    def image_of(word: Word) -> NCElement:
        if word not in cache:
            cache[word] = nc_mul(image_of(word[:-1]), resolved[word[-1]])
        return cache[word]

    F = target.field
    for rule in source.rules:
        lhs = image_of(rule.left)
        rhs = NCElement.zero(target.algebra, F, target.trunc)
        for coeff, word in rule.right:
            rhs = rhs + image_of(word) * F.from_laurent(coeff)
        diff = lhs - rhs
        if not diff.is_zero(tol):
            raise RelationViolation(source.rule_text(rule), diff.to_text())

    out = NCElement.zero(target.algebra, F, target.trunc)
    for word, coeff in a.coeffs.items():
        out = out + image_of(word) * coeff
    return out


def ansatz_expand(trunc: int = 3, field: ScalarField = EXACT) -> dict:
    """Expand E_q(-w) e_q(x+w) E_q(-x) in the free algebra on x, w.

    The degree-2 part must be (xw - q wx)/(q;q)_2, and the degree-3 part must
    lie in the span of x r - q^2 r x and r w - q^2 w r with r = xw - q wx.
    """
    from src.core.qfunctions import BIGEQ, EQ, series_of
    from src.core.coeffield import qfactorial

    F = field
    alg = FREE_XW
    x = NCElement.generator(alg, "x", F, trunc)
    w = NCElement.generator(alg, "w", F, trunc)
    eq = series_of(EQ, F, trunc)
    big = series_of(BIGEQ, F, trunc)
    product = compose_series(big, -w) * compose_series(eq, x + w) * compose_series(big, -x)

    q = F.q
    r = x * w - (w * x) * q
    degree2 = product.homogeneous_component(2)
    degree2_ok = (degree2 - r / qfactorial(F, 2)).is_zero(1e-12)

    report = {
        "success": False,
        "truncation": trunc,
        "components": {d: product.homogeneous_component(d).to_text() for d in range(trunc + 1)},
        "degree2_matches": degree2_ok,
    }
    if trunc < 3:
        report["success"] = degree2_ok or trunc < 2
        return report

    r1 = x * r - (r * x) * F.qpow(2)
    r2 = r * w - (w * r) * F.qpow(2)
    degree3 = product.homogeneous_component(3)
    alpha = degree3.coefficient("x x w")
    beta = degree3.coefficient("x w w")
    remainder = degree3 - r1 * alpha - r2 * beta
    in_span = remainder.is_zero(1e-12)
    report.update(
        {
            "alpha": F.to_text(alpha),
            "beta": F.to_text(beta),
            "degree3_in_relation_span": in_span,
            "remainder": remainder.to_text(),
            "success": degree2_ok and in_span,
        }
    )
    logger.debug("ansatz degree-3 coefficients alpha=%s beta=%s", report["alpha"], report["beta"])
    return report
