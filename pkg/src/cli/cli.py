#!/usr/bin/env python3
"""
qcalc CLI - verify q-calculus identities, evaluate q-functions, tabulate integrals

Exit codes: 0 when every selected identity passes, 1 on a verification
failure, 2 on a usage or configuration error.
"""

import asyncio
import logging
import sys
from typing import List, Optional, Sequence

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from src.core import jackson, qfourier, qhermite
from src.core.coeffield import NumericAt, make_field, parse_qmode
from src.core.errors import QCalcError, UnknownIdentity
from src.core.qfunctions import BIGEQ, EQ, LI2Q, LOGQ, gauss_bigg, gauss_g, numeric_eval, phi10, series_of
from src.identities import check_all_async, entries
from src.utils.utils import format_number, open_output, write_csv, write_jsonl

try:
    from config import DEFAULT_NUMERIC_Q, DEFAULT_QMODE, DEFAULT_TRUNC, EXECUTION_MODE, LOG_LEVEL
except ImportError:
    DEFAULT_NUMERIC_Q = 0.5
    DEFAULT_QMODE = "exact"
    DEFAULT_TRUNC = 12
    EXECUTION_MODE = "parallel"
    LOG_LEVEL = "WARNING"

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

MIN_TRUNC = 4

REPORT_COLUMNS = ("id", "status", "mode", "truncation", "q", "max_residual", "elapsed_ms")

SERIES_FUNCTIONS = {"eq": EQ, "bigEq": BIGEQ, "logq": LOGQ, "li2q": LI2Q}
EVAL_FUNCTIONS = ("eq", "bigEq", "phi10", "logq", "li2q", "hermite1", "hermite2", "bq", "cq", "jackson")
TABLE_KINDS = ("moments-I", "moments-II", "orthogonality", "fourier-pairs")


# ============================================================================
# SHARED OPTIONS
# ============================================================================


def setup_logging(level: str):
    """Configure the root logger once, with rich output on stderr."""
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _qmode(value: str):
    try:
        return parse_qmode(value)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--q")


def _check_trunc(ctx, param, value):
    if value is not None and value < MIN_TRUNC:
        raise click.BadParameter(f"must be at least {MIN_TRUNC}")
    return value


def _check_gamma(ctx, param, value):
    if value is not None and value <= 0:
        raise click.BadParameter("must be positive")
    return value


def _numeric_q(qmode, what: str) -> float:
    if not isinstance(qmode, NumericAt):
        raise click.UsageError(f"{what} needs a numeric --q in (0, 1)")
    return float(qmode.q)


def parse_range(text: str) -> List[int]:
    """'a..b' (inclusive, empty when b < a) or a single integer."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return list(range(int(low), int(high) + 1))
        return [int(text)]
    except ValueError:
        raise click.BadParameter(f"expected N or A..B, got {text!r}", param_hint="RANGE")


def _emit(rows: Sequence[dict], columns: Sequence[str], fmt: str, out: Optional[str], title: str):
    if fmt == "text":
        table = Table(title=title)
        for column in columns:
            table.add_column(column)
        for row in rows:
            table.add_row(*[format_number(row.get(c, "")) for c in columns])
        with open_output(out) as stream:
            Console(file=stream).print(table)
        return
    with open_output(out) as stream:
        if fmt == "csv":
            write_csv(rows, columns, stream)
        else:
            write_jsonl(rows, stream)


q_option = click.option("--q", "q", default=DEFAULT_QMODE, show_default=True, help='"exact" or a number in (0, 1)')
trunc_option = click.option("--trunc", type=int, default=DEFAULT_TRUNC, show_default=True, callback=_check_trunc)
gamma_option = click.option("--gamma", type=float, default=1.0, show_default=True, callback=_check_gamma)
out_option = click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="file to write, default stdout")


@click.group()
@click.option("--log-level", default=LOG_LEVEL, show_default=True, type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level):
    """qcalc - computer algebra and verification for q-special functions"""
    setup_logging(log_level)


# ============================================================================
# VERIFY
# ============================================================================


async def run_verify(qmode, params: dict, ids, prefix, kind, execution_mode: str = EXECUTION_MODE):
    """Run the selected identity checks; reports come back in id order."""
    return await check_all_async(qmode, params, ids=ids, prefix=prefix, kind=kind, execution_mode=execution_mode)


@cli.command()
@click.argument("ids", nargs=-1)
@click.option("--all", "run_all", is_flag=True, help="run every registered identity")
@click.option("--prefix", default=None, help="only ids starting with this text")
@click.option("--kind", type=click.Choice(["exact", "numeric"]), default=None)
@click.option("--list", "list_only", is_flag=True, help="print the registered ids and exit")
@q_option
@trunc_option
@gamma_option
@click.option("--tol", type=float, default=None, help="override the tolerance of numeric entries")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json", show_default=True)
@out_option
@click.option("--sequential", is_flag=True, help="run the checks one after another")
@click.pass_context
def verify(ctx, ids, run_all, prefix, kind, list_only, q, trunc, gamma, tol, fmt, out, sequential):
    """Check identities by id, by --prefix, by --kind, or --all."""
    try:
        selected = entries(ids or None, prefix, kind)
    except UnknownIdentity as e:
        click.echo(f"Error: {e.args[0] if e.args else e}", err=True)
        ctx.exit(EXIT_USAGE)
    if list_only:
        rows = [{"id": e.id, "kind": e.kind.value, "anchor": e.anchor, "contract": e.contract} for e in selected]
        _emit(rows, ("id", "kind", "anchor", "contract"), fmt, out, "registered identities")
        ctx.exit(EXIT_OK)
    if not (ids or run_all or prefix or kind):
        raise click.UsageError("name identity ids, or pass --all, --prefix or --kind")

    qmode = _qmode(q)
    params = {"trunc": trunc, "gamma": gamma, "tol": tol}
    mode = "sequential" if sequential else EXECUTION_MODE
    reports = asyncio.run(run_verify(qmode, params, [e.id for e in selected], None, None, mode))

    records = [r.to_dict() for r in reports]
    if fmt != "json":
        records = [{k: "" if v is None else v for k, v in rec.items()} for rec in records]
    _emit(records, REPORT_COLUMNS, fmt, out, "identity checks")

    failed = [r.id for r in reports if not r.passed]
    if failed:
        logger.warning("%d of %d identities failed: %s", len(failed), len(reports), ", ".join(failed))
        ctx.exit(EXIT_FAILED)
    logger.info("all %d identities passed", len(reports))
    ctx.exit(EXIT_OK)


# ============================================================================
# EVAL
# ============================================================================


def evaluate(function: str, args: Sequence[str], qmode, trunc: int, gamma: float) -> str:
    """Text value of one q-function; exact runs print coefficients, numeric runs print values."""
    F = make_field(qmode)
    if function in SERIES_FUNCTIONS or function == "phi10":
        if function == "phi10":
            if not args:
                raise click.UsageError("phi10 needs the parameter a")
            name, rest = phi10(complex(args[0]) if not F.exact else _exact_number(F, args[0])), args[1:]
        else:
            name, rest = SERIES_FUNCTIONS[function], args
        if F.exact:
            return series_of(name, F, trunc).to_text()
        if not rest:
            raise click.UsageError(f"{function} needs a point z")
        return format_number(numeric_eval(name, complex(rest[0]), F.value))
    if function in ("hermite1", "hermite2"):
        if not args:
            raise click.UsageError(f"{function} needs a degree n")
        h = qhermite.hermite("I" if function == "hermite1" else "II", int(args[0]), F)
        if len(args) > 1 and not F.exact:
            return format_number(h(complex(args[1])))
        return h.to_text()
    if function == "bq":
        return format_number(jackson.b_q(_numeric_q(qmode, "bq")))
    if function == "cq":
        return format_number(jackson.c_q(gamma, _numeric_q(qmode, "cq")))
    if function == "jackson":
        return format_number(_jackson_value(args, _numeric_q(qmode, "jackson"), gamma))
    raise click.UsageError(f"unknown function {function!r}")


def _exact_number(F, text: str):
    try:
        return F.convert(int(text))
    except ValueError:
        raise click.UsageError("exact q needs an integer parameter a")


def _jackson_value(args: Sequence[str], q: float, gamma: float) -> complex:
    """jackson g|G [A B]: the real-line integral at gamma, or int_A^B."""
    if not args or args[0] not in ("g", "G"):
        raise click.UsageError("jackson needs a weight g or G, optionally followed by bounds A B")
    weight = gauss_g if args[0] == "g" else gauss_bigg
    integrand = lambda t: weight(t, q)  # noqa: E731
    if len(args) >= 3:
        return jackson.jackson_interval(integrand, float(args[1]), float(args[2]), q)
    return jackson.jackson_realline(integrand, gamma, q)


@cli.command(name="eval")
@click.argument("function", type=click.Choice(EVAL_FUNCTIONS))
@click.argument("args", nargs=-1)
@q_option
@trunc_option
@gamma_option
@click.pass_context
def eval_command(ctx, function, args, q, trunc, gamma):
    """Evaluate a q-function: eq, bigEq, phi10, logq, li2q, hermite1, hermite2, bq, cq, jackson."""
    qmode = _qmode(q)
    try:
        click.echo(evaluate(function, args, qmode, trunc, gamma))
    except (QCalcError, ValueError, ZeroDivisionError) as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_FAILED)


# ============================================================================
# TABLE
# ============================================================================


def table_rows(kind: str, indices: Sequence[int], q: float, gamma: float, family: str):
    """(columns, rows) for one table kind; every row ends with computed, closed_form, deviation."""
    if kind in ("moments-I", "moments-II"):
        formula = "126" if kind == "moments-I" else "69"
        report = jackson.moments_check(formula, indices, q, gamma)
        if report.get("error"):
            raise QCalcError(report["error"])
        return ("m", "computed", "closed_form", "deviation"), report["rows"]
    if kind == "orthogonality":
        rows = qhermite.orthogonality_rows(family, indices, q, gamma)
        errors = [r["error"] for r in rows if r.get("error")]
        if errors:
            raise QCalcError(errors[0])
        return ("family", "m", "n", "computed", "closed_form", "deviation"), rows
    if kind == "fourier-pairs":
        pair = "153" if family == "I" else "154"
        tc = qfourier.TransformConfig(q, gamma)
        rows = []
        for n in indices:
            for row in qfourier.pair_rows(pair, n, qfourier.DEFAULT_SAMPLES, tc):
                rows.append(dict(row, computed=row["transform"]))
        return ("pair", "n", "y", "computed", "closed_form", "deviation"), rows
    raise click.UsageError(f"unknown table {kind!r}")


@cli.command()
@click.argument("kind", type=click.Choice(TABLE_KINDS))
@click.argument("index_range", metavar="RANGE", default="0..4")
@click.option("--family", type=click.Choice(["I", "II"]), default="I", show_default=True)
@click.option("--q", "q", default=str(DEFAULT_NUMERIC_Q), show_default=True, help="a number in (0, 1)")
@gamma_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="csv", show_default=True)
@out_option
@click.pass_context
def table(ctx, kind, index_range, family, q, gamma, fmt, out):
    """Tabulate moments, orthogonality or Fourier pairs over RANGE (A..B)."""
    indices = parse_range(index_range)
    numeric_q = _numeric_q(_qmode(q), f"table {kind}")
    try:
        columns, rows = table_rows(kind, indices, numeric_q, gamma, family)
    except QCalcError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_FAILED)
    _emit(rows, columns, fmt, out, kind)


def main_sync():
    """Console entry point; click handles the exit code"""
    cli(prog_name="qcalc")


if __name__ == "__main__":
    sys.exit(main_sync())
