"""
Result records and their serialisation: per-bound reports, whole-run JSON
documents validated against the shipped schema, and console tables.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence

import jsonschema

from config import REPORT_SCHEMA_FILE, REPORT_SCHEMA_VERSION, TOOL_VERSION


def _json_number(value):
    if value is None:
        return None
    value = float(value)
    if math.isnan(value):
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


@dataclass
class BoundReport:
    """One evaluated inequality.

    For ``direction == "upper"`` the check reads measured <= bound_value and
    slack is bound_value - measured; for ``"lower"`` it reads
    measured >= bound_value and slack is measured - bound_value. Either way
    a negative slack beyond ``tolerance`` means the inequality failed.
    ``hypothesis_ok`` is None when the hypothesis is undefined.
    """

    name: str
    params: Dict[str, Any]
    bound_value: float
    measured: Optional[float] = None
    hypothesis_ok: Optional[bool] = None
    satisfied: Optional[bool] = None
    slack: Optional[float] = None
    direction: str = "upper"
    tolerance: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        """The hypothesis held and the conclusion did not."""
        return self.hypothesis_ok is True and self.satisfied is False

    def to_dict(self) -> dict:
        return {
            "kind": "bound",
            "name": self.name,
            "params": _jsonable(self.params),
            "bound_value": _json_number(self.bound_value),
            "measured": _json_number(self.measured),
            "hypothesis_ok": self.hypothesis_ok,
            "satisfied": self.satisfied,
            "slack": _json_number(self.slack),
            "direction": self.direction,
            "tolerance": _json_number(self.tolerance),
            "extra": _jsonable(self.extra),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float):
        return _json_number(value)
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


@dataclass
class RunReport:
    command: List[str]
    input_digests: Dict[str, str] = field(default_factory=dict)
    items: List[Dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0
    tool_version: str = TOOL_VERSION
    schema_version: str = REPORT_SCHEMA_VERSION
    exit_status: int = 0

    def add(self, item: Dict[str, Any]) -> None:
        self.items.append(_jsonable(item))

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "command": list(self.command),
            "input_digests": dict(self.input_digests),
            "items": list(self.items),
            "wall_time": self.wall_time,
            "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        document = self.to_dict()
        validate_report(document)
        return json.dumps(document, indent=2, sort_keys=True)


def digest_file(path: str) -> str:
    """SHA-256 of the file contents as ``sha256:<hex>``."""
    sha = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            sha.update(chunk)
    return f"sha256:{sha.hexdigest()}"


@lru_cache(maxsize=1)
def load_schema() -> dict:
    with open(REPORT_SCHEMA_FILE, encoding="utf-8") as handle:
        return json.load(handle)


def validate_report(document: dict) -> None:
    """Raise ``jsonschema.ValidationError`` when the document breaks the schema."""
    jsonschema.validate(instance=document, schema=load_schema())


# ---------------------------------------------------------------------
# Console output
# ---------------------------------------------------------------------
def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Aligned ASCII table; short rows are padded and long ones truncated."""
    if not rows:
        return "None."

    width = len(headers)
    normalized = []
    for row in rows:
        cells = [str(row[i]) if i < len(row) else "" for i in range(width)]
        normalized.append(cells)

    col_widths = [len(h) for h in headers]
    for row in normalized:
        for i, cell in enumerate(row):
            col_widths[i] = max(col_widths[i], len(cell))

    header_line = " | ".join(h.ljust(col_widths[i]) for i, h in enumerate(headers))
    separator_line = "-|-".join("-" * w for w in col_widths)
    body_lines = [" | ".join(cell.ljust(col_widths[i]) for i, cell in enumerate(row)) for row in normalized]
    return "\n".join([header_line, separator_line] + body_lines)


def format_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def bound_rows(reports: Sequence[BoundReport]) -> List[List[str]]:
    return [
        [
            report.name,
            format_value(report.bound_value),
            format_value(report.measured),
            format_value(report.hypothesis_ok),
            format_value(report.satisfied),
            format_value(report.slack),
        ]
        for report in reports
    ]


BOUND_HEADERS = ["Bound", "Value", "Measured", "Hypothesis", "Holds", "Slack"]


def banner(title: str, width: int = 60) -> str:
    line = "=" * width
    return f"{line}\n{title}\n{line}"
