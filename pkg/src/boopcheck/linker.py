"""Cross-phase checks: section completeness, contract linkage, proof markers."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as S
from .config import RuleConfig
from .diagnostics import Diagnostic, Severity, Span
from .document import BoopDocument, Contract, ProofOutline, body_is_blank


@dataclass
class LinkReport:
    diagnostics: list[Diagnostic] = field(default_factory=list)
    matched: list[tuple[str, Span]] = field(default_factory=list)
    unmatched_contracts: list[str] = field(default_factory=list)
    uncontracted_functions: list[str] = field(default_factory=list)


def check_completeness(doc: BoopDocument, config: RuleConfig) -> list[Diagnostic]:
    """P001 for each required section that is absent, P002 for blank ones."""
    diags: list[Diagnostic] = []
    for kind in sorted(config.required_sections):
        section = doc.section(kind)
        if section is None:
            severity = config.severity_of("P001")
            if severity is not Severity.OFF:
                diags.append(
                    Diagnostic(
                        "P001",
                        severity,
                        Span(0, 0),
                        f"missing required section: {kind.label}",
                        f"add a line reading (*** {kind.name} ***)",
                    )
                )
        elif body_is_blank(section):
            severity = config.severity_of("P002")
            if severity is not Severity.OFF:
                diags.append(
                    Diagnostic(
                        "P002",
                        severity,
                        section.header_span,
                        f"section '{kind.label}' is empty",
                    )
                )
    return diags


def link_contracts(
    contracts: list[Contract], program: S.Program, code_offset: int = 0
) -> LinkReport:
    """Match Blueprint contracts against top-level function definitions.

    Matching is exact and case-sensitive.  ``code_offset`` rebases binding
    spans (which are relative to the CODE body) onto the whole file.
    """
    report = LinkReport()
    functions: dict[str, Span] = {}
    for _item, binding in S.top_level_bindings(program):
        if binding.is_function and binding.name is not None and binding.name not in functions:
            functions[binding.name] = binding.pattern.span.shifted(code_offset)

    contracted = set()
    for contract in contracts:
        contracted.add(contract.name)
        if contract.name in functions:
            report.matched.append((contract.name, functions[contract.name]))
        else:
            report.unmatched_contracts.append(contract.name)
            report.diagnostics.append(
                Diagnostic(
                    "L001",
                    Severity.ERROR,
                    contract.decl_span,
                    f"contract '{contract.name}' has no matching function definition",
                )
            )

    for name, span in functions.items():
        if name not in contracted:
            report.uncontracted_functions.append(name)
            report.diagnostics.append(
                Diagnostic(
                    "L002",
                    Severity.WARN,
                    span,
                    f"function '{name}' has no contract in the blueprint",
                    "add a 'function:' entry with requires and ensures clauses",
                )
            )
    return report


def check_proof_markers(outline: ProofOutline, config: RuleConfig) -> list[Diagnostic]:
    """L003 unless at least one strategy has every marker present."""
    present = {marker for marker, _span in outline.markers}
    best_name: str | None = None
    best_missing: list[str] = []
    for strategy in config.proof_strategies:
        missing = [m for m in strategy.markers if m.lower() not in present]
        if not missing:
            return []
        if best_name is None or len(missing) < len(best_missing):
            best_name, best_missing = strategy.name, missing
    if best_name is None:
        return []  # no strategies configured: nothing to demand
    severity = config.severity_of("L003")
    if severity is Severity.OFF:
        return []
    listed = ", ".join(f"'{m}'" for m in best_missing)
    return [
        Diagnostic(
            "L003",
            severity,
            outline.span,
            f"proof outline does not follow any known strategy; "
            f"closest is '{best_name}', missing {listed}",
            "state each part of the argument with its conventional heading",
        )
    ]
