"""
Identity registry and report model.

Each entry binds a stable id to a runner ``runner(ctx) -> dict`` returning the
usual ``{"success": bool, ...}`` report; ``check`` times the runner and turns
its dict into a Report, and ``check_all`` fans the selected entries out over
``execute_operations``.
"""

import asyncio
import logging
import re
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional

from src.core.coeffield import ExactSymbolic, NumericAt, NumericField, QMode, ScalarField, make_field
from src.core.errors import QCalcError, UnknownIdentity
from src.utils.utils import execute_operations

try:
    from config import DEFAULT_NUMERIC_Q, DEFAULT_TRUNC, EXECUTION_MODE
except ImportError:
    DEFAULT_NUMERIC_Q = 0.5
    DEFAULT_TRUNC = 12
    EXECUTION_MODE = "parallel"

logger = logging.getLogger(__name__)

MAX_RESIDUAL_TERMS = 20

# keys of a runner result that become Report fields rather than detail
_REPORT_KEYS = ("success", "max_residual", "residual_terms", "truncation", "error")


class EntryKind(str, Enum):
    EXACT = "exact"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class CheckContext:
    """Everything a runner may read: the field, numeric q, truncation and free-form params."""

    field: ScalarField
    q: Optional[float]
    trunc: int
    gamma: float = 1.0
    tol: Optional[float] = None
    params: Mapping = field(default_factory=dict)

    def get(self, key: str, default=None):
        return self.params.get(key, default)


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    kind: EntryKind
    anchor: str
    runner: Callable[[CheckContext], dict]
    contract: str = ""


@dataclass
class Report:
    id: str
    status: str
    mode: str
    truncation: Optional[int] = None
    q: Optional[float] = None
    max_residual: Optional[float] = None
    residual_terms: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    anchor: str = ""
    detail: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        """Stable JSON-lines record; residual_terms and error only when present."""
        record = {
            "id": self.id,
            "status": self.status,
            "mode": self.mode,
            "truncation": self.truncation,
            "q": self.q,
            "max_residual": self.max_residual,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.residual_terms:
            record["residual_terms"] = list(self.residual_terms)
        if self.error:
            record["error"] = self.error
        return record


_REGISTRY: Dict[str, IdentityEntry] = {}


def register(identity_id: str, kind: str, anchor: str, contract: str = ""):
    """Decorator adding a runner to the registry under identity_id."""

    def decorator(func):
        if identity_id in _REGISTRY:
            raise ValueError(f"identity {identity_id!r} registered twice")
        _REGISTRY[identity_id] = IdentityEntry(identity_id, EntryKind(kind), anchor, func, contract)
        return func

    return decorator


def _natural_key(identity_id: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", identity_id)]


def get_entry(identity_id: str) -> IdentityEntry:
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(f"no identity registered under {identity_id!r}")


def entries(ids: Optional[Iterable[str]] = None, prefix: Optional[str] = None, kind: Optional[str] = None) -> List[IdentityEntry]:
    """Registered entries matching every given filter, in natural id order (eq3 before eq12)."""
    if ids is not None:
        selected = [get_entry(i) for i in dict.fromkeys(ids)]
    else:
        selected = list(_REGISTRY.values())
    if prefix:
        selected = [e for e in selected if e.id.startswith(prefix)]
    if kind:
        wanted = EntryKind(kind)
        selected = [e for e in selected if e.kind is wanted]
    return sorted(selected, key=lambda e: _natural_key(e.id))


def make_context(entry: IdentityEntry, qmode: QMode, params: Optional[Mapping] = None) -> CheckContext:
    """Exact entries use the field of qmode; numeric entries run at params q, the qmode q, or the default."""
    params = dict(params or {})
    trunc = int(params.get("trunc", DEFAULT_TRUNC))
    gamma = float(params.get("gamma", 1.0))
    tol = params.get("tol")
    if entry.kind is EntryKind.EXACT:
        F = make_field(qmode)
        q = None if F.exact else F.value
    else:
        if params.get("q") is not None:
            q = float(params["q"])
        elif isinstance(qmode, NumericAt):
            q = float(qmode.q)
        else:
            q = DEFAULT_NUMERIC_Q
        F = NumericField(q)
    return CheckContext(F, q, trunc, gamma, tol, params)


def _mode_name(ctx: CheckContext) -> str:
    return "exact" if ctx.field.exact else "numeric"


def _first_float(value) -> Optional[float]:
    if value is None:
        return None
    try:
        return float(abs(value))
    except (TypeError, ValueError):
        return None


def run_entry(entry: IdentityEntry, ctx: CheckContext) -> Report:
    start = time.perf_counter()
    error = None
    try:
        result = entry.runner(ctx)
    except QCalcError as e:
        result = {"success": False}
        error = str(e)
        logger.warning("identity %s raised %s: %s", entry.id, type(e).__name__, e)
    except Exception as e:
        result = {"success": False}
        error = f"{type(e).__name__}: {e}"
        logger.exception("identity %s crashed", entry.id)
    elapsed = (time.perf_counter() - start) * 1000
    error = error or result.get("error")
    success = bool(result.get("success")) and error is None
    residual_terms = [str(t) for t in result.get("residual_terms") or []][:MAX_RESIDUAL_TERMS]
    truncation = result.get("truncation", ctx.trunc if entry.kind is EntryKind.EXACT else None)
    report = Report(
        id=entry.id,
        status="pass" if success else "fail",
        mode=_mode_name(ctx),
        truncation=truncation,
        q=ctx.q,
        max_residual=_first_float(result.get("max_residual")),
        residual_terms=residual_terms,
        elapsed_ms=elapsed,
        anchor=entry.anchor,
        detail={k: v for k, v in result.items() if k not in _REPORT_KEYS},
        error=error,
    )
    logger.debug("identity %s: %s in %.1f ms", entry.id, report.status, elapsed)
    return report


def check(identity_id: str, qmode: QMode = ExactSymbolic(), params: Optional[Mapping] = None) -> Report:
    entry = get_entry(identity_id)
    return run_entry(entry, make_context(entry, qmode, params))


async def check_all_async(
    qmode: QMode = ExactSymbolic(),
    params: Optional[Mapping] = None,
    ids: Optional[Iterable[str]] = None,
    prefix: Optional[str] = None,
    kind: Optional[str] = None,
    execution_mode: str = EXECUTION_MODE,
) -> List[Report]:
    selected = entries(ids, prefix, kind)
    operations = [(run_entry, (entry, make_context(entry, qmode, params)), {}) for entry in selected]
    logger.info("running %d identity checks (%s)", len(operations), execution_mode)
    return list(await execute_operations(operations, execution_mode))


def check_all(
    qmode: QMode = ExactSymbolic(),
    params: Optional[Mapping] = None,
    ids: Optional[Iterable[str]] = None,
    prefix: Optional[str] = None,
    kind: Optional[str] = None,
    execution_mode: str = EXECUTION_MODE,
) -> List[Report]:
    """Synchronous wrapper; one failing entry never stops the others."""
    return asyncio.run(check_all_async(qmode, params, ids, prefix, kind, execution_mode))
