"""Shared diagnostic primitives: severities, byte spans, and line/column lookup."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field, replace
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARN = "warn"
    OFF = "off"

    @classmethod
    def from_str(cls, text: str) -> "Severity":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown severity {text!r}")


@dataclass(frozen=True)
class Span:
    """Half-open byte range [start, end) into the UTF-8 encoding of the source."""

    start: int
    end: int

    def shifted(self, offset: int) -> "Span":
        return Span(self.start + offset, self.end + offset)


@dataclass
class Diagnostic:
    """One finding: rule id, resolved severity, byte span, message, optional note.

    Line/column fields are 1-based and filled in by :meth:`located`; until then
    they are zero.  Columns count characters, not bytes.
    """

    rule_id: str
    severity: Severity
    span: Span
    message: str
    note: str | None = None
    start_line: int = field(default=0, compare=False)
    start_col: int = field(default=0, compare=False)
    end_line: int = field(default=0, compare=False)
    end_col: int = field(default=0, compare=False)

    def shifted(self, offset: int) -> "Diagnostic":
        return replace(self, span=self.span.shifted(offset))

    def located(self, index: "LineIndex") -> "Diagnostic":
        sl, sc = index.position(self.span.start)
        el, ec = index.position(self.span.end)
        return replace(self, start_line=sl, start_col=sc, end_line=el, end_col=ec)

    def sort_key(self) -> tuple[int, str]:
        return (self.span.start, self.rule_id)


class LineIndex:
    """Maps byte offsets in a UTF-8 document to line/column positions."""

    def __init__(self, data: bytes):
        self.data = data
        starts = [0]
        pos = data.find(b"\n")
        while pos != -1:
            starts.append(pos + 1)
            pos = data.find(b"\n", pos + 1)
        self.starts = starts

    def line_of(self, offset: int) -> int:
        """0-based line containing the byte at ``offset``."""
        offset = max(0, min(offset, len(self.data)))
        return bisect.bisect_right(self.starts, offset) - 1

    def line_text(self, line: int) -> str:
        """Text of the 0-based line, without the trailing newline."""
        if line < 0 or line >= len(self.starts):
            return ""
        start = self.starts[line]
        end = self.starts[line + 1] - 1 if line + 1 < len(self.starts) else len(self.data)
        return self.data[start:end].decode("utf-8", errors="replace")

    def position(self, offset: int) -> tuple[int, int]:
        """1-based (line, column); column counts characters."""
        offset = max(0, min(offset, len(self.data)))
        line = self.line_of(offset)
        prefix = self.data[self.starts[line] : offset]
        return line + 1, len(prefix.decode("utf-8", errors="replace")) + 1

    def utf16_position(self, offset: int) -> tuple[int, int]:
        """0-based (line, column) with the column in UTF-16 code units."""
        offset = max(0, min(offset, len(self.data)))
        line = self.line_of(offset)
        prefix = self.data[self.starts[line] : offset].decode("utf-8", errors="replace")
        col = sum(2 if ord(ch) > 0xFFFF else 1 for ch in prefix)
        return line, col
