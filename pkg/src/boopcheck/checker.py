"""Whole-file checking pipeline and phase status reporting.

The pipeline runs: section split, prose-phase parsing, CODE lex and parse,
lint rules, then the cross-phase checks.  Lex or parse failures in CODE
suppress the rule engine and contract linkage (their inputs are missing)
but never the completeness checks.  Checks that need an absent section are
skipped; P001 already reports the absence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .config import RuleConfig
from .diagnostics import Diagnostic, LineIndex, Severity, Span
from .document import (
    HEADER_LITERALS,
    SectionKind,
    body_is_blank,
    parse_blueprint,
    parse_operations,
    parse_proof,
    split_sections,
)
from .lexer import LexError, lex
from .linker import check_completeness, check_proof_markers, link_contracts
from .parser import parse_program
from .rules import run_rules


@dataclass
class CheckResult:
    file: str
    diagnostics: list[Diagnostic] = field(default_factory=list)
    error_count: int = 0
    warn_count: int = 0

    @classmethod
    def from_diagnostics(cls, file: str, diagnostics: list[Diagnostic]) -> "CheckResult":
        return cls(
            file=file,
            diagnostics=diagnostics,
            error_count=sum(1 for d in diagnostics if d.severity is Severity.ERROR),
            warn_count=sum(1 for d in diagnostics if d.severity is Severity.WARN),
        )


def check_text(source: str, file: str, config: RuleConfig) -> CheckResult:
    """Run the full pipeline over in-memory text."""
    collected: list[Diagnostic] = []
    doc, split_diags = split_sections(source)
    collected.extend(split_diags)

    if doc is not None:
        collected.extend(check_completeness(doc, config))

        contracts = []
        blueprint = doc.section(SectionKind.BLUEPRINT)
        if blueprint is not None:
            contracts, diags = parse_blueprint(blueprint)
            collected.extend(diags)

        operations = doc.section(SectionKind.OPERATIONS)
        if operations is not None:
            _steps, diags = parse_operations(operations)
            collected.extend(diags)

        program = None
        code = doc.section(SectionKind.CODE)
        if code is not None:
            base = code.body_span.start
            try:
                tokens = lex(code.body)
            except LexError as failure:
                collected.append(failure.diagnostic.shifted(base))
            else:
                program, parse_diags = parse_program(tokens)
                collected.extend(d.shifted(base) for d in parse_diags)
            if program is not None:
                collected.extend(d.shifted(base) for d in run_rules(program, config))
                if blueprint is not None:
                    report = link_contracts(contracts, program, code_offset=base)
                    collected.extend(report.diagnostics)

        proof = doc.section(SectionKind.PROOF)
        if proof is not None:
            outline = parse_proof(proof, config.proof_strategies)
            collected.extend(check_proof_markers(outline, config))

    resolved = _finalize(collected, config, source)
    return CheckResult.from_diagnostics(file, resolved)


def check_file(path: str | Path, config: RuleConfig) -> CheckResult:
    path = Path(path)
    try:
        data = path.read_bytes()
        source = data.decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        reason = exc.strerror if isinstance(exc, OSError) and exc.strerror else str(exc)
        diag = Diagnostic(
            "F001",
            Severity.ERROR,
            Span(0, 0),
            f"cannot read '{path}': {reason}",
            start_line=1,
            start_col=1,
            end_line=1,
            end_col=1,
        )
        return CheckResult.from_diagnostics(str(path), [diag])
    return check_text(source, str(path), config)


def _finalize(
    diagnostics: list[Diagnostic], config: RuleConfig, source: str
) -> list[Diagnostic]:
    """Re-resolve severities, drop suppressed and duplicate findings, locate, sort."""
    index = LineIndex(source.encode("utf-8"))
    seen: set[tuple[str, int, int]] = set()
    final: list[Diagnostic] = []
    for diag in diagnostics:
        severity = config.severity_of(diag.rule_id)
        if severity is Severity.OFF:
            continue
        key = (diag.rule_id, diag.span.start, diag.span.end)
        if key in seen:
            continue
        seen.add(key)
        diag.severity = severity
        final.append(diag.located(index))
    final.sort(key=Diagnostic.sort_key)
    return final


def phase_statuses(source: str) -> dict[str, str]:
    """Status of each phase: ``present``, ``missing``, or ``empty``.

    Deliberately lenient about header ordering problems (first occurrence
    wins) so status reporting still works on files that fail split_sections.
    """
    doc, _diags = split_sections(source)
    statuses = {kind.label: "missing" for kind in SectionKind}
    if doc is not None:
        for section in doc.sections:
            statuses[section.kind.label] = "empty" if body_is_blank(section) else "present"
        return statuses

    # Fall back to a raw header scan on malformed documents.
    from .document import strip_decorations

    lines = source.split("\n")
    headers: list[tuple[int, SectionKind]] = []  # (line number, kind)
    for i, line in enumerate(lines):
        kind = HEADER_LITERALS.get(line.strip().encode("utf-8"))
        if kind is not None:
            headers.append((i, kind))
    seen: set[SectionKind] = set()
    for pos, (line_no, kind) in enumerate(headers):
        if kind in seen:
            continue
        seen.add(kind)
        body_end = headers[pos + 1][0] if pos + 1 < len(headers) else len(lines)
        blank = True
        for body_line in lines[line_no + 1 : body_end]:
            text, _, _ = strip_decorations(body_line.encode("utf-8"), 0)
            if text:
                blank = False
                break
        statuses[kind.label] = "empty" if blank else "present"
    return statuses
