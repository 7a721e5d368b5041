"""Tests for shared helpers"""

import asyncio
import io
import json

from src.utils.utils import execute_operations, format_number, plain, write_csv, write_jsonl


def test_plain_makes_values_json_safe():
    assert plain(2 + 0j) == 2.0
    assert plain(1 + 2j) == [1.0, 2.0]
    assert plain(float("inf")) == "inf"
    assert plain({"a": (1, 2)}) == {"a": [1, 2]}


def test_format_number():
    assert format_number(0.5 + 0j) == "0.5"
    assert format_number(1 - 2j) == "1-2i"
    assert format_number(3) == "3"


def test_write_csv_always_writes_header():
    stream = io.StringIO()
    assert write_csv([], ("id", "status"), stream) == 0
    assert stream.getvalue().splitlines() == ["id,status"]


def test_write_jsonl_one_record_per_line():
    stream = io.StringIO()
    write_jsonl([{"z": 1j}, {"z": 1.0}], stream)
    assert [json.loads(line) for line in stream.getvalue().splitlines()] == [{"z": [0.0, 1.0]}, {"z": 1.0}]


def _square(x):
    return x * x


async def _negate(x):
    return -x


def test_execute_operations_keeps_input_order():
    operations = [(_square, (3,), {}), (_negate, (2,), {}), (_square, (), {"x": 4})]
    assert asyncio.run(execute_operations(operations, "parallel")) == [9, -2, 16]
    assert asyncio.run(execute_operations(operations, "sequential")) == [9, -2, 16]
