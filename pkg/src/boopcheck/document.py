"""Split a submission into its four sections and parse the prose phases.

A submission is a single UTF-8 text file.  Section headers are lines whose
trimmed content is exactly ``(*** BLUEPRINT ***)``, ``(*** OPERATIONS ***)``,
``(*** CODE ***)``, or ``(*** PROOF ***)``, so the file stays valid OCaml
apart from the CODE section, which holds the live code.  The Blueprint,
Operations, and Proof bodies are conventionally wrapped in block comments;
their content is recovered line by line after stripping comment decorations.

All spans are byte offsets into the UTF-8 encoding of the whole file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum

from .diagnostics import Diagnostic, Severity, Span


class SectionKind(IntEnum):
    BLUEPRINT = 1
    OPERATIONS = 2
    CODE = 3
    PROOF = 4

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "SectionKind":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown section kind {label!r}") from None


HEADER_LITERALS: dict[bytes, SectionKind] = {
    b"(*** BLUEPRINT ***)": SectionKind.BLUEPRINT,
    b"(*** OPERATIONS ***)": SectionKind.OPERATIONS,
    b"(*** CODE ***)": SectionKind.CODE,
    b"(*** PROOF ***)": SectionKind.PROOF,
}


@dataclass
class Section:
    kind: SectionKind
    header_span: Span  # the full header line, including its newline
    body_span: Span  # everything up to the next header line (or EOF)
    body: str


@dataclass
class BoopDocument:
    preamble: str
    sections: list[Section]
    source_len: int  # bytes

    def section(self, kind: SectionKind) -> Section | None:
        for sec in self.sections:
            if sec.kind == kind:
                return sec
        return None


@dataclass
class Clause:
    text: str
    span: Span
    implicit: bool = False


@dataclass
class Contract:
    name: str
    requires: list[Clause]
    ensures: list[Clause]
    decl_span: Span


@dataclass
class Step:
    number: int
    text: str
    span: Span


@dataclass
class OperationSteps:
    steps: list[Step]


@dataclass
class ProofOutline:
    markers: list[tuple[str, Span]]  # (canonical lowercase phrase, span), in text order
    raw: str
    span: Span = field(default_factory=lambda: Span(0, 0))


def _iter_lines(data: bytes, base: int = 0):
    """Yield (start, end) byte spans of each line, excluding the newline."""
    pos = 0
    n = len(data)
    while pos <= n:
        nl = data.find(b"\n", pos)
        if nl == -1:
            if pos < n or pos == 0:
                yield base + pos, base + n
            return
        yield base + pos, base + nl
        pos = nl + 1


def strip_decorations(line: bytes, start: int) -> tuple[str, int, int]:
    """Strip whitespace and comment decorations from one line.

    Removes leading whitespace, ``(*`` and ``*)`` markers, leading ``*``
    bullets, and trailing whitespace and ``*)`` closers.  Returns the
    remaining text plus its absolute byte span ``(text, lo, hi)``; ``lo``
    equals ``hi`` when nothing is left.
    """
    lo, hi = 0, len(line)
    changed = True
    while changed:
        changed = False
        while lo < hi and line[lo : lo + 1] in (b" ", b"\t", b"\r"):
            lo += 1
            changed = True
        while lo < hi and line[hi - 1 : hi] in (b" ", b"\t", b"\r"):
            hi -= 1
            changed = True
        head = line[lo:hi]
        if head.startswith(b"(*") or head.startswith(b"*)"):
            lo += 2
            changed = True
        elif head.startswith(b"*"):
            lo += 1
            changed = True
        if hi - lo >= 2 and line[lo:hi].endswith(b"*)"):
            hi -= 2
            changed = True
    text = line[lo:hi].decode("utf-8", errors="replace")
    return text, start + lo, start + hi


def split_sections(source: str) -> tuple[BoopDocument | None, list[Diagnostic]]:
    """Partition ``source`` into preamble, header lines, and section bodies.

    Missing sections are fine here (completeness is a separate check), but a
    duplicated header or one that breaks the canonical Blueprint, Operations,
    Code, Proof order yields P003 and no document.
    """
    data = source.encode("utf-8")
    headers: list[tuple[SectionKind, int, int]] = []  # (kind, line_start, end_incl_nl)
    for start, end in _iter_lines(data):
        kind = HEADER_LITERALS.get(data[start:end].strip())
        if kind is not None:
            end_incl = end + 1 if end < len(data) else end
            headers.append((kind, start, end_incl))

    diags: list[Diagnostic] = []
    for i, (kind, start, end_incl) in enumerate(headers):
        dup_before = any(k == kind for k, _, _ in headers[:i])
        smaller_after = any(k < kind for k, _, _ in headers[i + 1 :])
        if dup_before or smaller_after:
            line_end = end_incl - 1 if data[end_incl - 1 : end_incl] == b"\n" else end_incl
            problem = "duplicated" if dup_before else "out of order"
            diags.append(
                Diagnostic(
                    "P003",
                    Severity.ERROR,
                    Span(start, line_end),
                    f"section header '{kind.label}' is {problem}; expected order is "
                    "blueprint, operations, code, proof",
                )
            )
    if diags:
        return None, diags

    sections: list[Section] = []
    preamble_end = headers[0][1] if headers else len(data)
    for i, (kind, start, end_incl) in enumerate(headers):
        body_end = headers[i + 1][1] if i + 1 < len(headers) else len(data)
        body_span = Span(end_incl, body_end)
        sections.append(
            Section(
                kind=kind,
                header_span=Span(start, end_incl),
                body_span=body_span,
                body=data[end_incl:body_end].decode("utf-8"),
            )
        )
    doc = BoopDocument(
        preamble=data[:preamble_end].decode("utf-8"),
        sections=sections,
        source_len=len(data),
    )
    return doc, []


_IDENT_RE = re.compile(r"^[a-z_][A-Za-z0-9_']*$")
_KEY_RE = re.compile(r"^(function|requires|ensures)\s*:\s*(.*?)\s*$", re.IGNORECASE)


def _sub_span(text: str, lo: int, a: int, b: int) -> Span:
    """Byte span of ``text[a:b]`` given that ``text`` starts at byte ``lo``."""
    start = lo + len(text[:a].encode("utf-8"))
    end = lo + len(text[:b].encode("utf-8"))
    return Span(start, end)


def parse_blueprint(section: Section) -> tuple[list[Contract], list[Diagnostic]]:
    """Collect function contracts from a Blueprint section.

    Lines reading ``function: name``, ``requires: ...``, or ``ensures: ...``
    (case-insensitive keys, one clause per line) are recognized after
    decoration stripping; anything else is prose and ignored.  A contract
    without explicit requires clauses receives the implicit clause ``true``.
    Contracts that never state an ensures clause are dropped with P005.
    """
    data = section.body.encode("utf-8")
    base = section.body_span.start
    contracts: list[Contract] = []
    diags: list[Diagnostic] = []

    name: str | None = None
    requires: list[Clause] = []
    ensures: list[Clause] = []
    decl_span = Span(base, base)

    def close() -> None:
        nonlocal name, requires, ensures
        if name is None:
            return
        if not ensures:
            diags.append(
                Diagnostic(
                    "P005",
                    Severity.ERROR,
                    decl_span,
                    f"contract for '{name}' has no ensures clause",
                )
            )
        else:
            if not requires:
                requires = [Clause("true", decl_span, implicit=True)]
            contracts.append(Contract(name, requires, ensures, decl_span))
        name, requires, ensures = None, [], []

    for start, end in _iter_lines(data, 0):
        text, lo, hi = strip_decorations(data[start:end], base + start)
        if not text:
            continue
        m = _KEY_RE.match(text)
        if m is None:
            continue
        key = m.group(1).lower()
        value = m.group(2)
        value_span = _sub_span(text, lo, m.start(2), m.end(2))
        if key == "function":
            if not _IDENT_RE.match(value):
                continue  # prose such as "Function: overview" is not a contract
            close()
            name = value
            decl_span = Span(lo, hi)
        elif name is None:
            diags.append(
                Diagnostic(
                    "P004",
                    Severity.ERROR,
                    Span(lo, hi),
                    f"'{key}:' clause appears before any 'function:' line",
                )
            )
        elif key == "requires":
            requires.append(Clause(value, value_span))
        else:
            ensures.append(Clause(value, value_span))
    close()
    return contracts, diags


_STEP_RE = re.compile(r"^(\d+)\.\s*(.*)$")


def parse_operations(section: Section) -> tuple[OperationSteps, list[Diagnostic]]:
    """Collect the numbered algorithm steps of an Operations section.

    A decoration-stripped line starting ``<digits>.`` opens a step; following
    non-empty lines continue it.  Numbering must run 1, 2, 3, ... (P006
    otherwise); a body with no step at all yields P002.
    """
    data = section.body.encode("utf-8")
    base = section.body_span.start
    steps: list[Step] = []
    diags: list[Diagnostic] = []
    expected = 1

    for start, end in _iter_lines(data, 0):
        text, lo, hi = strip_decorations(data[start:end], base + start)
        if not text:
            continue
        m = _STEP_RE.match(text)
        if m:
            number = int(m.group(1))
            if number != expected:
                diags.append(
                    Diagnostic(
                        "P006",
                        Severity.ERROR,
                        _sub_span(text, lo, 0, m.end(1) + 1),
                        f"step number {number} out of sequence; expected {expected}",
                    )
                )
            expected = number + 1
            steps.append(Step(number, m.group(2), Span(lo, hi)))
        elif steps:
            current = steps[-1]
            current.text = (current.text + " " + text).strip()
            current.span = Span(current.span.start, hi)

    if not steps:
        diags.append(
            Diagnostic(
                "P002",
                Severity.ERROR,
                section.header_span,
                "operations section contains no numbered steps",
            )
        )
    return OperationSteps(steps), diags


def parse_proof(section: Section, strategies) -> ProofOutline:
    """Collect proof-strategy marker phrases present in a Proof section.

    Matching is case-insensitive substring search on decoration-stripped
    lines.  This never fails; whether the found markers satisfy a strategy
    is judged elsewhere (L003).
    """
    phrases: list[str] = []
    for strategy in strategies:
        for marker in strategy.markers:
            canonical = marker.lower()
            if canonical not in phrases:
                phrases.append(canonical)

    data = section.body.encode("utf-8")
    base = section.body_span.start
    markers: list[tuple[str, Span]] = []
    for start, end in _iter_lines(data, 0):
        text, lo, _hi = strip_decorations(data[start:end], base + start)
        if not text:
            continue
        lowered = text.lower()
        for phrase in phrases:
            idx = lowered.find(phrase)
            while idx != -1:
                markers.append((phrase, _sub_span(text, lo, idx, idx + len(phrase))))
                idx = lowered.find(phrase, idx + len(phrase))
    markers.sort(key=lambda m: (m[1].start, m[0]))
    return ProofOutline(markers=markers, raw=section.body, span=section.body_span)


def body_is_blank(section: Section) -> bool:
    """True when every line of the section strips to nothing."""
    data = section.body.encode("utf-8")
    for start, end in _iter_lines(data, 0):
        text, _, _ = strip_decorations(data[start:end], 0)
        if text:
            return False
    return True
