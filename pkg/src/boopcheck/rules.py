"""Lint rules over the parsed CODE section.

Each rule emits one diagnostic per violating node; the result is sorted by
(span start, rule id).  Severities come from the active RuleConfig, and a
rule set to ``off`` contributes nothing.
"""

from __future__ import annotations

from typing import Iterator

from . import syntax as S
from .config import RuleConfig
from .diagnostics import Diagnostic, Severity, Span

_COMPARISONS = ("=", "<>", "<", "<=", ">", ">=")


def run_rules(program: S.Program, config: RuleConfig) -> list[Diagnostic]:
    findings: list[Diagnostic] = []

    def emit(rule_id: str, span: Span, message: str, note: str | None = None) -> None:
        severity = config.severity_of(rule_id)
        if severity is not Severity.OFF:
            findings.append(Diagnostic(rule_id, severity, span, message, note))

    _check_banned_identifiers(program, config, emit)
    _check_banned_operators(program, config, emit)
    _check_mutation(program, emit)
    _check_loops(program, emit)
    _check_nested_functions(program, emit)
    _check_anonymous_functions(program, emit)
    _check_type_annotations(program, emit)
    _check_if_vs_match(program, config, emit)
    _check_recursion_without_rec(program, emit)
    _check_unknown_identifiers(program, config, emit)

    findings.sort(key=Diagnostic.sort_key)
    return findings


# --- Individual rules ----------------------------------------------------


def _check_banned_identifiers(program, config, emit) -> None:
    allowed = set(config.allowed_identifiers)
    for expr in S.program_exprs(program):
        if isinstance(expr, S.Ident):
            full = expr.qualified
            if full in allowed:
                continue
            for prefix in config.banned_identifier_prefixes:
                if full.startswith(prefix):
                    emit(
                        "B001",
                        expr.span,
                        f"use of banned identifier '{full}' (prefix '{prefix}')",
                        "implement the behaviour from first principles instead",
                    )
                    break


def _check_banned_operators(program, config, emit) -> None:
    banned = set(config.banned_operators)
    if not banned:
        return
    for expr in S.program_exprs(program):
        if isinstance(expr, (S.BinOp, S.UnOp)) and expr.op in banned:
            emit("B002", expr.span, f"operator '{expr.op}' is banned for this assignment")


def _check_mutation(program, emit) -> None:
    note = "prefer recursion and immutable values"
    for expr in S.program_exprs(program):
        if isinstance(expr, S.Apply) and isinstance(expr.fn, S.Ident) and expr.fn.qualified == "ref":
            emit("I001", expr.span, "mutable state created with 'ref'", note)
        elif isinstance(expr, S.BinOp) and expr.op == ":=":
            emit("I001", expr.span, "assignment with ':='", note)
        elif isinstance(expr, S.UnOp) and expr.op == "!":
            emit("I001", expr.span, "dereference with '!'", note)


def _check_loops(program, emit) -> None:
    for expr in S.program_exprs(program):
        if isinstance(expr, S.While):
            emit("I002", expr.span, "imperative 'while' loop; express the iteration recursively")
        elif isinstance(expr, S.For):
            emit("I002", expr.span, "imperative 'for' loop; express the iteration recursively")


def _check_nested_functions(program, emit) -> None:
    for _item, binding in S.top_level_bindings(program):
        if not (binding.is_function or isinstance(binding.body, S.Lambda)):
            continue
        for expr in S.walk_exprs(binding.body):
            if not isinstance(expr, S.LetIn):
                continue
            for inner in expr.bindings:
                if inner.params or isinstance(inner.body, S.Lambda):
                    label = f"'{inner.name}'" if inner.name else "binding"
                    emit(
                        "S001",
                        inner.span,
                        f"nested function {label} defined in local scope",
                        "lift it to the top level so its role is visible",
                    )


def _check_anonymous_functions(program, emit) -> None:
    for expr in S.program_exprs(program):
        if isinstance(expr, S.Lambda):
            emit("S002", expr.span, "anonymous 'fun' expression", "name the function instead")
        elif isinstance(expr, S.FunctionMatch):
            emit("S002", expr.span, "anonymous 'function' expression", "name the function instead")


def _check_type_annotations(program, emit) -> None:
    for _item, binding in S.top_level_bindings(program):
        if not binding.is_function or binding.name is None:
            continue
        missing: list[str] = []
        for param in binding.params:
            if param.type_annotation is None:
                missing.append(f"parameter '{_pattern_label(param.pattern)}'")
        if binding.return_type is None:
            missing.append("the return type")
        if missing:
            emit(
                "T001",
                binding.pattern.span,
                f"function '{binding.name}' lacks type annotations for " + ", ".join(missing),
                "annotate every parameter and the return type",
            )


def _pattern_label(pattern: S.Pattern) -> str:
    if isinstance(pattern, S.VarPat):
        return pattern.name
    if isinstance(pattern, S.WildcardPat):
        return "_"
    return "..."


def _unwrap(expr: S.Expr) -> S.Expr:
    while isinstance(expr, S.Paren):
        expr = expr.inner
    return expr


def _check_if_vs_match(program, config, emit) -> None:
    message = "'if' used where pattern matching would be clearer"
    note = "match on the value's shape instead of comparing it"
    for expr in S.program_exprs(program):
        if not isinstance(expr, S.If):
            continue
        if config.strict_if:
            emit("C001", expr.span, message, note)
            continue
        cond = _unwrap(expr.cond)
        if isinstance(cond, S.BinOp) and cond.op in _COMPARISONS:
            sides = (_unwrap(cond.lhs), _unwrap(cond.rhs))
            literal_like = (S.ConstructorApp, S.IntLit, S.BoolLit, S.StringLit, S.UnitLit)
            if any(isinstance(side, literal_like) for side in sides):
                emit("C001", expr.span, message, note)


def _check_recursion_without_rec(program, emit) -> None:
    for item, binding in S.top_level_bindings(program):
        if item.rec_flag or binding.name is None:
            continue
        bound = frozenset(_param_names(binding))
        if any(occ.name == binding.name for occ in _free_occurrences(binding.body, bound)):
            emit(
                "R001",
                binding.pattern.span,
                f"'{binding.name}' refers to itself but is not declared 'rec'",
                "write 'let rec' to make the recursion explicit",
            )


def _check_unknown_identifiers(program, config, emit) -> None:
    top_names = set()
    for _item, binding in S.top_level_bindings(program):
        top_names.update(S.pattern_vars(binding.pattern))
    allowed = set(config.allowed_identifiers)
    for _item, binding in S.top_level_bindings(program):
        bound = frozenset(top_names | set(_param_names(binding)))
        for occ in _free_occurrences(binding.body, bound):
            if occ.name not in allowed:
                emit(
                    "U001",
                    occ.span,
                    f"unknown identifier '{occ.name}'",
                    "define it in this file or allow it in the configuration",
                )


# --- Scoped identifier walk ----------------------------------------------


def _param_names(binding: S.Binding) -> Iterator[str]:
    for param in binding.params:
        yield from S.pattern_vars(param.pattern)


def _free_occurrences(expr: S.Expr, bound: frozenset[str]) -> Iterator[S.Ident]:
    """Module-less identifier uses not bound by any enclosing binder."""
    if isinstance(expr, S.Ident):
        if expr.module is None and expr.name not in bound:
            yield expr
        return
    if isinstance(expr, S.Lambda):
        inner = bound.union(*(set(S.pattern_vars(p.pattern)) for p in expr.params))
        yield from _free_occurrences(expr.body, inner)
        return
    if isinstance(expr, S.LetIn):
        names: set[str] = set()
        for binding in expr.bindings:
            names.update(S.pattern_vars(binding.pattern))
        for binding in expr.bindings:
            value_bound = bound | set(_param_names(binding))
            if expr.rec_flag:
                value_bound |= names
            yield from _free_occurrences(binding.body, value_bound)
        yield from _free_occurrences(expr.body, bound | names)
        return
    if isinstance(expr, S.Match):
        yield from _free_occurrences(expr.scrutinee, bound)
        for arm in expr.arms:
            yield from _free_occurrences(arm.body, bound | set(S.pattern_vars(arm.pattern)))
        return
    if isinstance(expr, S.FunctionMatch):
        for arm in expr.arms:
            yield from _free_occurrences(arm.body, bound | set(S.pattern_vars(arm.pattern)))
        return
    if isinstance(expr, S.For):
        yield from _free_occurrences(expr.start, bound)
        yield from _free_occurrences(expr.stop, bound)
        yield from _free_occurrences(expr.body, bound | {expr.var})
        return
    for child in S.child_exprs(expr):
        yield from _free_occurrences(child, bound)
