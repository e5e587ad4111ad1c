"""Report envelope shared by the CLI commands and verification suites.

Every command emits one report: a JSON-serializable dictionary that
validates against REPORT_SCHEMA, plus a plain-text rendering derived
from the same data so the two can never disagree on the verdict.
"""

from __future__ import annotations

import json

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "status", "data"],
    "properties": {
        "command": {"type": "string"},
        "status": {"type": "string", "enum": ["ok", "fail", "error"]},
        "data": {"type": "object"},
        "stats": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}


def make_report(command: str, status: str, data: dict, stats: dict | None = None, seed: int | None = None) -> dict:
    if status not in ("ok", "fail", "error"):
        raise ValueError(f"bad status {status!r}")
    report = {"command": command, "status": status, "data": data}
    if stats is not None:
        report["stats"] = stats
    if seed is not None:
        report["seed"] = seed
    return report


def _render_value(value, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_value(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_render_value(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)) and not v:
        return "(none)"
    return str(v)


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['status'].upper()}"]
    lines.extend(_render_value(report["data"], 1))
    if report.get("stats"):
        lines.append("  --")
        lines.extend(_render_value(report["stats"], 1))
    return "\n".join(lines)


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
