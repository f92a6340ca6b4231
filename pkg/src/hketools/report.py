"""Structured command reports with fixed field order."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return "sha256:" + hashlib.sha256(data).hexdigest()


@dataclass
class Report:
    command: str
    input_digest: str
    passed: bool
    result: dict[str, Any]
    warnings: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "passed": self.passed,
            "result": self.result,
            "warnings": list(self.warnings),
        }
        if timing:
            out["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def to_text(self, timing: bool = True) -> str:
        lines: list[str] = []
        _emit(self.to_dict(timing), 0, lines)
        return "\n".join(lines) + "\n"


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, list) and all(
        isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in v
    ):
        return "[" + ", ".join("{" + ",".join(str(y) for y in x) + "}" for x in v) + "]"
    return str(v)


def _emit(obj: Any, depth: int, lines: list[str]):
    pad = "  " * depth
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            _emit(val, depth + 1, lines)
        elif isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(val):
                lines.append(f"{pad}  [{i}]")
                _emit(item, depth + 2, lines)
        elif isinstance(val, list) and any(isinstance(x, list) and any(isinstance(y, list) for y in x) for x in val):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  - {_scalar(item)}")
        else:
            lines.append(f"{pad}{key}: {_scalar(val)}")
