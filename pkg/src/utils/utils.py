import asyncio
import csv
import json
import logging
import math
import sys
from contextlib import contextmanager
from typing import IO, Iterable, Mapping, Optional, Sequence

logger = logging.getLogger(__name__)


async def execute_operations(operations, execution_mode="parallel"):
    """Execute multiple operations in parallel or sequential mode; results keep the input order"""
    if execution_mode == "parallel":
        # Handle both async and sync functions
        tasks = []
        for func, args, kwargs in operations:
            if asyncio.iscoroutinefunction(func):
                tasks.append(func(*args, **kwargs))
            else:
                tasks.append(asyncio.to_thread(func, *args, **kwargs))
        return await asyncio.gather(*tasks)
    else:
        results = []
        for func, args, kwargs in operations:
            if asyncio.iscoroutinefunction(func):
                result = await func(*args, **kwargs)
            else:
                result = await asyncio.to_thread(func, *args, **kwargs)
            results.append(result)
        return results


# ============================================================================
# SERIALIZATION
# ============================================================================


def plain(value):
    """JSON-safe copy: complex -> [re, im], non-finite floats -> strings, tuples -> lists."""
    if isinstance(value, complex):
        if value.imag == 0:
            return plain(value.real)
        return [plain(value.real), plain(value.imag)]
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if isinstance(value, Mapping):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def format_number(value) -> str:
    """Short text for table cells: reals as %.15g, complex as a+bi."""
    if isinstance(value, complex):
        if abs(value.imag) < 1e-300:
            return f"{value.real:.15g}"
        sign = "+" if value.imag >= 0 else "-"
        return f"{value.real:.15g}{sign}{abs(value.imag):.15g}i"
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


@contextmanager
def open_output(path: Optional[str]):
    """Yield a text stream for path, or standard output when path is None or '-'."""
    if path in (None, "-"):
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield f


def write_jsonl(records: Iterable[Mapping], stream: IO[str]) -> int:
    count = 0
    for record in records:
        stream.write(json.dumps(plain(record), sort_keys=False) + "\n")
        count += 1
    logger.debug("wrote %d JSON lines", count)
    return count


def write_csv(rows: Sequence[Mapping], columns: Sequence[str], stream: IO[str]) -> int:
    """Header row always; one line per row with numbers rendered by format_number."""
    writer = csv.writer(stream)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(row.get(c, "")) for c in columns])
    logger.debug("wrote %d CSV rows", len(rows))
    return len(rows)
