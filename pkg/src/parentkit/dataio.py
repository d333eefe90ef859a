"""JSONL corpus files and deterministic JSON output.

Instance file, one object per line::

    {"id": "...", "target": "...", "table": [{"attribute": "...", "value": "..."}]}
    {"id": "...", "target": "...", "linearized_table": "Name[value] Name[value]"}

Outputs file (model generations), one object per line::

    {"id": "...", "output": "..."}
"""
import json
import logging
import os
from typing import Any, Callable, Dict, Iterable, Iterator, List, Tuple

from .errors import InputFormatError, ValidationError
from .parent import Instance
from .table import Table, parse_linearized_table
from .textcore import TokenSeq, tokenize

log = logging.getLogger(__name__)

FLOAT_DIGITS = 6


def iter_jsonl(path) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yield ``(line_number, object)``; blank lines are skipped."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputFormatError(f"malformed JSON: {exc.msg}", path, lineno) from None
            if not isinstance(obj, dict):
                raise InputFormatError("each line must be a JSON object", path, lineno)
            yield lineno, obj


def _require_str(obj, key, path, lineno, allow_empty=False):
    value = obj.get(key)
    if not isinstance(value, str):
        raise InputFormatError(f"field {key!r} missing or not a string", path, lineno)
    if not allow_empty and not value.strip():
        raise InputFormatError(f"field {key!r} is empty", path, lineno)
    return value


def _table_from_obj(obj, path, lineno, tokenizer) -> Table:
    structured = obj.get("table")
    linear = obj.get("linearized_table")
    if structured is None and linear is None:
        raise InputFormatError("needs either 'table' or 'linearized_table'", path, lineno)
    if structured is not None:
        if linear is not None:
            log.warning("%s:%d: both 'table' and 'linearized_table' given; using 'table'", path, lineno)
        if not isinstance(structured, list):
            raise InputFormatError("'table' must be a list of records", path, lineno)
        pairs = []
        for rec in structured:
            if not isinstance(rec, dict):
                raise InputFormatError("table records must be objects", path, lineno)
            attr = rec.get("attribute", "")
            value = rec.get("value")
            if not isinstance(attr, str) or not isinstance(value, str):
                raise InputFormatError("table records need string 'attribute' and 'value'", path, lineno)
            pairs.append((attr, value))
        try:
            return Table.from_pairs(pairs, tokenizer)
        except ValidationError as exc:
            raise InputFormatError(str(exc), path, lineno) from None
    if not isinstance(linear, str):
        raise InputFormatError("'linearized_table' must be a string", path, lineno)
    try:
        return parse_linearized_table(linear, tokenizer)
    except ValidationError as exc:
        raise InputFormatError(str(exc), path, lineno) from None


def load_instances(path, tokenizer: Callable[[str], TokenSeq] = tokenize) -> List[Instance]:
    instances = []
    seen = {}
    for lineno, obj in iter_jsonl(path):
        key = _require_str(obj, "id", path, lineno)
        if key in seen:
            raise InputFormatError(f"duplicate id {key!r} (first seen on line {seen[key]})", path, lineno)
        seen[key] = lineno
        target = _require_str(obj, "target", path, lineno)
        table = _table_from_obj(obj, path, lineno, tokenizer)
        instances.append(Instance(id=key, table=table, reference=tokenizer(target), target_text=target))
    return instances


def load_outputs(path) -> Dict[str, str]:
    outputs = {}
    for lineno, obj in iter_jsonl(path):
        key = _require_str(obj, "id", path, lineno)
        if key in outputs:
            raise InputFormatError(f"duplicate id {key!r}", path, lineno)
        outputs[key] = _require_str(obj, "output", path, lineno, allow_empty=True)
    return outputs


def _encode(value, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"cannot serialise non-finite float {value}")
        return f"{value:.{FLOAT_DIGITS}f}"
    if isinstance(value, (int, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(value[k], indent, level + 1)}"
            for k in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps_report(obj, indent: int = 2) -> str:
    """JSON with sorted keys and every float printed with 6 decimals."""
    return _encode(obj, indent, 0) + "\n"


def write_text(path, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def jsonl_text(rows: Iterable[Dict[str, Any]]) -> str:
    return "".join(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n" for row in rows)


def write_jsonl(path, rows: Iterable[Dict[str, Any]]) -> None:
    write_text(path, jsonl_text(rows))
