"""Human and machine rendering of check results."""

from __future__ import annotations

import json

from .checker import CheckResult
from .diagnostics import LineIndex


def render_human(result: CheckResult, source: str) -> str:
    """One block per diagnostic with a caret underline, then a summary line."""
    index = LineIndex(source.encode("utf-8"))
    blocks: list[str] = []
    for diag in result.diagnostics:
        head = (
            f"{diag.severity.value}[{diag.rule_id}] "
            f"{result.file}:{diag.start_line}:{diag.start_col}: {diag.message}"
        )
        line_text = index.line_text(diag.start_line - 1)
        if diag.end_line == diag.start_line:
            width = max(1, diag.end_col - diag.start_col)
        else:
            width = max(1, len(line_text) - diag.start_col + 1)
        pad = " " * (diag.start_col - 1)
        block = f"{head}\n  {line_text}\n  {pad}{'^' * width}"
        if diag.note:
            block += f"\n  note: {diag.note}"
        blocks.append(block)
    errors, warnings = result.error_count, result.warn_count
    summary = (
        f"{errors} error{'' if errors == 1 else 's'}, "
        f"{warnings} warning{'' if warnings == 1 else 's'}"
    )
    return "\n".join(blocks + [summary]) + "\n" if blocks else summary + "\n"


def render_json(result: CheckResult) -> str:
    """Stable JSON rendering; spans are byte offsets plus 1-based lines/columns."""
    payload = {
        "file": result.file,
        "summary": {"errors": result.error_count, "warnings": result.warn_count},
        "diagnostics": [
            {
                "rule_id": diag.rule_id,
                "severity": diag.severity.value,
                "message": diag.message,
                "note": diag.note,
                "span": {
                    "start_byte": diag.span.start,
                    "end_byte": diag.span.end,
                    "start_line": diag.start_line,
                    "start_col": diag.start_col,
                    "end_line": diag.end_line,
                    "end_col": diag.end_col,
                },
            }
            for diag in result.diagnostics
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False)
