"""Checker toolchain for BOOP (Blueprint, Operations, Code, Proof) submissions."""

from .checker import CheckResult, check_file, check_text, phase_statuses
from .config import (
    ConfigError,
    ProofStrategy,
    RuleConfig,
    load_config,
    load_config_file,
    resolve_config,
)
from .diagnostics import Diagnostic, LineIndex, Severity, Span
from .document import (
    BoopDocument,
    Clause,
    Contract,
    OperationSteps,
    ProofOutline,
    Section,
    SectionKind,
    Step,
    parse_blueprint,
    parse_operations,
    parse_proof,
    split_sections,
)
from .lexer import LexError, Token, TokenKind, lex
from .linker import LinkReport, check_completeness, check_proof_markers, link_contracts
from .parser import parse_program
from .printer import pretty_print
from .report import render_human, render_json
from .rules import run_rules

__version__ = "0.1.0"

__all__ = [
    "BoopDocument",
    "CheckResult",
    "Clause",
    "ConfigError",
    "Contract",
    "Diagnostic",
    "LexError",
    "LineIndex",
    "LinkReport",
    "OperationSteps",
    "ProofOutline",
    "ProofStrategy",
    "RuleConfig",
    "Section",
    "SectionKind",
    "Severity",
    "Span",
    "Step",
    "Token",
    "TokenKind",
    "check_completeness",
    "check_file",
    "check_proof_markers",
    "check_text",
    "lex",
    "link_contracts",
    "load_config",
    "load_config_file",
    "parse_blueprint",
    "parse_operations",
    "parse_program",
    "parse_proof",
    "phase_statuses",
    "pretty_print",
    "render_human",
    "render_json",
    "resolve_config",
    "run_rules",
    "split_sections",
]
