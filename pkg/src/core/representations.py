"""
Actions of the q-plane on one-variable series.

Each representation is fixed by what x and y do to a series f(z); the action
of a normal monomial y^l x^k on z^m has a closed form, and elements act
sigma-additively term by term.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from src.core.coeffield import EXACT, ScalarField, qbinomial, qfactorial, qshifted_factorial
from src.core.errors import AlgebraMismatch, QCalcError
from src.core.ncalg import QPLANE, NCElement, compose_series, nc_pow
from src.core.qfunctions import BIGEQ, EQ, PowerSeries, phi10, series_of

logger = logging.getLogger(__name__)


class RepKind(str, Enum):
    REP47 = "REP47"  # x: f -> qz f(qz),   y: f -> z f
    REP48 = "REP48"  # x: f -> f(qz),      y: f -> z f
    REP49 = "REP49"  # x: f -> D_q f,      y: f -> f(qz)
    REP120 = "REP120"  # x: f -> gamma f(qz), y: f -> z f


@dataclass(frozen=True)
class RepSpec:
    kind: RepKind
    gamma: object = 1

    def __post_init__(self):
        if self.kind is RepKind.REP120 and not self.gamma:
            raise ValueError("REP120 needs a nonzero gamma")


REP47 = RepSpec(RepKind.REP47)
REP48 = RepSpec(RepKind.REP48)
REP49 = RepSpec(RepKind.REP49)


def rep120(gamma=1) -> RepSpec:
    return RepSpec(RepKind.REP120, gamma)


ALL_REPS = (REP47, REP48, REP49, rep120(1))


def parse_rep(name: str) -> RepSpec:
    name = name.upper()
    if name.startswith("REP120"):
        _, _, gamma = name.partition(":")
        return rep120(float(gamma) if gamma else 1)
    try:
        return RepSpec(RepKind(name))
    except ValueError:
        raise ValueError(f"unknown representation {name!r}")


# ============================================================================
# ACTION
# ============================================================================


def monomial_action(rep: RepSpec, F: ScalarField, l: int, k: int, m: int) -> Optional[Tuple[object, int]]:
    """pi(y^l x^k) z^m as (coefficient, exponent), or None when it vanishes."""
    kind = rep.kind
    if kind is RepKind.REP47:
        return F.qpow(k * (k + 1) // 2 + k * m), k + l + m
    if kind is RepKind.REP48:
        return F.qpow(k * m), m + l
    if kind is RepKind.REP120:
        gamma = F.convert(rep.gamma)
        coeff = F.qpow(k * m)
        for _ in range(k):
            coeff = coeff * gamma
        return coeff, m + l
    if k > m:
        return None
    coeff = F.one
    for j in range(m - k + 1, m + 1):
        coeff = coeff * (F.one - F.qpow(j)) / (F.one - F.q)
    return coeff * F.qpow(l * (m - k)), m - k


def _output_trunc(rep: RepSpec, a: NCElement, f: PowerSeries, kmax: int) -> Optional[int]:
    """Degree up to which pi(a) f is determined; None for an exact polynomial."""
    if rep.kind is RepKind.REP47:
        if f.is_polynomial:
            low = next((n for n in range(f.trunc + 1) if not f.field.is_zero(f.coeffs[n])), 0)
            return a.trunc + low
        return min(a.trunc, f.trunc)
    if f.is_polynomial:
        return None
    if rep.kind is RepKind.REP49:
        if f.trunc - kmax < 0:
            raise AlgebraMismatch(f"series known to degree {f.trunc} is too short for x^{kmax} under D_q")
        return f.trunc - kmax
    return f.trunc


def act(rep: RepSpec, a: NCElement, f: PowerSeries) -> PowerSeries:
    """pi(a) f, with a read as the sum of its stored terms.

    Under REP47 the action never lowers degree, so the truncation of a carries
    over; under the other actions only the truncation of f limits the result.
    """
    if a.algebra != QPLANE:
        raise AlgebraMismatch(f"representations act on QPLANE, got {a.algebra.name}")
    F = a.field
    if f.field != F:
        raise AlgebraMismatch("element and series use different coefficient fields")
    terms = [(QPLANE.exponents(w), c) for w, c in a.coeffs.items()]
    kmax = max((e[1] for e, _ in terms), default=0)
    trunc = _output_trunc(rep, a, f, kmax)
    out: Dict[int, object] = {}
    for (l, k), c in terms:
        for m in range(f.trunc + 1):
            fm = f.coeffs[m]
            if F.is_zero(fm):
                continue
            image = monomial_action(rep, F, l, k, m)
            if image is None:
                continue
            coeff, n = image
            if trunc is not None and n > trunc:
                continue
            value = c * fm * coeff
            out[n] = out[n] + value if n in out else value
    if trunc is None:
        top = max(out, default=0)
        return PowerSeries(F, top, [out.get(n, F.zero) for n in range(top + 1)], is_polynomial=True)
    return PowerSeries(F, trunc, [out.get(n, F.zero) for n in range(trunc + 1)])


def apply_generator(rep: RepSpec, name: str, f: PowerSeries) -> PowerSeries:
    """Action of the single generator x or y."""
    F = f.field
    kind = rep.kind
    if name == "x":
        if kind is RepKind.REP47:
            return f.dilate(F.q).shift(1) * F.q
        if kind is RepKind.REP48:
            return f.dilate(F.q)
        if kind is RepKind.REP49:
            return f.qderiv()
        return f.dilate(F.q) * F.convert(rep.gamma)
    if name == "y":
        if kind is RepKind.REP49:
            return f.dilate(F.q)
        return f.shift(1)
    raise AlgebraMismatch(f"QPLANE has no generator {name!r}")


def rep120_eigenvalue(rep: RepSpec, F: ScalarField, k: int):
    """x acts on z^k under REP120 as multiplication by gamma q^k."""
    return F.convert(rep.gamma) * F.qpow(k)


# ============================================================================
# CHECKS
# ============================================================================


def verify_relation(rep: RepSpec, m_max: int = 16, field: ScalarField = EXACT) -> dict:
    """pi(x) pi(y) = q pi(y) pi(x) on z^m, and the closed form against generator composition."""
    F = field
    failures = []
    mismatched_closed_forms = []
    try:
        for m in range(m_max + 1):
            zm = PowerSeries.monomial(F, m)
            lhs = apply_generator(rep, "x", apply_generator(rep, "y", zm))
            rhs = apply_generator(rep, "y", apply_generator(rep, "x", zm)) * F.q
            if lhs.residual(rhs) > (0 if F.exact else 1e-12):
                failures.append(m)
            for l, k in ((0, 1), (1, 0), (1, 1), (2, 1), (1, 2)):
                composed = zm
                for _ in range(k):
                    composed = apply_generator(rep, "x", composed)
                for _ in range(l):
                    composed = apply_generator(rep, "y", composed)
                word = NCElement.from_terms(QPLANE, F, l + k, {"y " * l + "x " * k: 1})
                closed = act(rep, word, zm)
                if composed.residual(closed) > (0 if F.exact else 1e-12):
                    mismatched_closed_forms.append((l, k, m))
    except QCalcError as e:
        return {"success": False, "rep": rep.kind.value, "error": str(e)}
    return {
        "success": not failures and not mismatched_closed_forms,
        "rep": rep.kind.value,
        "checked": m_max + 1,
        "failures": failures,
        "closed_form_mismatches": mismatched_closed_forms,
    }


def _evaluation_rows(F: ScalarField, n: int, modes: int):
    return [[F.qpow(k * (k + 1) // 2) * F.qpow(m * k) for k in range(n + 1)] for m in range(modes)]


def faithfulness_check(degree: int, modes: Optional[int] = None, field: ScalarField = EXACT) -> dict:
    """Full column rank of the REP47 evaluation systems in each degree n <= degree."""
    ranks = {}
    numeric_ranks = {}
    success = True
    domain = EXACT.K.to_domain()
    for n in range(degree + 1):
        M = modes if modes is not None else n + 1
        rows = _evaluation_rows(EXACT, n, M)
        rank = DomainMatrix(rows, (M, n + 1), domain).rank()
        ranks[n] = rank
        success = success and rank == min(M, n + 1) and M >= n + 1
        if not field.exact:
            values = np.array([[complex(c).real for c in row] for row in _evaluation_rows(field, n, M)])
            numeric_ranks[n] = int(np.linalg.matrix_rank(values))
    report = {"success": success, "ranks": ranks}
    if numeric_ranks:
        report["numeric_ranks"] = numeric_ranks
    logger.debug("faithfulness ranks %s", ranks)
    return report


def reduce_to_commutative(
    identity: str,
    rep: RepSpec = REP47,
    m_range: Iterable[int] = range(4),
    n_range: Iterable[int] = range(5),
    trunc: int = 16,
    field: ScalarField = EXACT,
) -> dict:
    """Apply both sides of "eq3" or "eq12" to z^m and compare the scalar identities."""
    F = field
    tol = 0 if F.exact else 1e-10
    x = NCElement.generator(QPLANE, "x", F, trunc)
    y = NCElement.generator(QPLANE, "y", F, trunc)
    rows = []
    try:
        if identity == "eq3":
            for n in n_range:
                xs = NCElement.generator(QPLANE, "x", F, n)
                ys = NCElement.generator(QPLANE, "y", F, n)
                power = nc_pow(xs + ys, n)
                expanded = NCElement.zero(QPLANE, F, n)
                for k in range(n + 1):
                    expanded = expanded + nc_pow(ys, n - k) * nc_pow(xs, k) * qbinomial(F, n, k)
                for m in m_range:
                    zm = PowerSeries.monomial(F, m)
                    lhs = act(rep, power, zm)[m + n]
                    rhs = act(rep, expanded, zm)[m + n]
                    row = {"n": n, "m": m, "lhs": F.to_text(lhs), "rhs": F.to_text(rhs)}
                    ok = F.magnitude(lhs - rhs) <= tol
                    if rep.kind is RepKind.REP47:
                        # terminating q-binomial sum at z = -q^(n+m+1)
                        z = -F.qpow(n + m + 1)
                        eq9_lhs = qshifted_factorial(F, F.qpow(-n) * z, n)
                        eq9_rhs = F.zero
                        power_z = F.one
                        for k in range(n + 1):
                            eq9_rhs = eq9_rhs + qshifted_factorial(F, F.qpow(-n), k) / qfactorial(F, k) * power_z
                            power_z = power_z * z
                        ok = ok and F.magnitude(eq9_lhs - lhs) <= tol and F.magnitude(eq9_rhs - rhs) <= tol
                        row["eq9_lhs"] = F.to_text(eq9_lhs)
                        row["eq9_rhs"] = F.to_text(eq9_rhs)
                    row["equal"] = ok
                    rows.append(row)
        elif identity == "eq12":
            eq = series_of(EQ, F, trunc)
            left = compose_series(eq, x + y)
            right = compose_series(eq, y) * compose_series(eq, x)
            for m in m_range:
                zm = PowerSeries.monomial(F, m)
                lhs = act(rep, left, zm)
                rhs = act(rep, right, zm)
                top = min(lhs.trunc, rhs.trunc) - m
                lhs_q = PowerSeries(F, top, [lhs[m + d] for d in range(top + 1)])
                rhs_q = PowerSeries(F, top, [rhs[m + d] for d in range(top + 1)])
                ok = lhs_q.residual(rhs_q) <= tol
                row = {"m": m, "truncation": top, "lhs": lhs_q.to_text(), "rhs": rhs_q.to_text()}
                if rep.kind is RepKind.REP47:
                    closed_lhs = series_of(phi10(-F.qpow(m + 1)), F, top)
                    closed_rhs = series_of(EQ, F, top) * series_of(BIGEQ, F, top).dilate(F.qpow(m + 1))
                    ok = ok and lhs_q.residual(closed_lhs) <= tol and closed_lhs.residual(closed_rhs) <= tol
                row["equal"] = ok
                rows.append(row)
        else:
            raise ValueError(f"no commutative reduction for {identity!r}")
    except (QCalcError, ValueError) as e:
        return {"success": False, "identity": identity, "rep": rep.kind.value, "error": str(e)}

    return {
        "success": all(r["equal"] for r in rows),
        "identity": identity,
        "rep": rep.kind.value,
        "rows": rows,
    }
