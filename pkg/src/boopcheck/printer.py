"""Canonical source rendering for the OCaml-subset AST.

The printer is precedence-aware, and for the open-ended constructs
(``match``, ``function``, ``fun``, ``let ... in``, ``if``) it also tracks
what the surrounding context emits next:

* ``ftl`` ("following token level") says how loosely the next emitted token
  binds: 13 when only a closing keyword, delimiter, or end of output
  follows, 1 when a ``;`` follows, and so on.  A construct that would
  swallow that token gets parentheses.
* ``hungry`` marks tokens that closing keywords cannot shield: an ``else``
  that must reach an enclosing ``if``, or a ``|`` starting the next arm of
  an enclosing ``match``.

Under those rules, printing any tree yields source whose re-parse is
print-stable, and trees that came from the parser re-parse to an equal tree
(spans aside).
"""

from __future__ import annotations

from . import syntax as S

_NONE: frozenset[str] = frozenset()
_CLOSED = 13  # ftl value: nothing capturable follows

_BINOP_LEVELS = {
    ":=": 2,
    "||": 4,
    "&&": 5,
    "=": 6,
    "<>": 6,
    "<": 6,
    "<=": 6,
    ">": 6,
    ">=": 6,
    "::": 7,
    "@": 7,
    "^": 7,
    "+": 8,
    "-": 8,
    "*": 9,
    "/": 9,
    "mod": 9,
}
_RIGHT_ASSOC = {"||", "&&", "::", "@", "^"}


def pretty_print(program: S.Program) -> str:
    """Render a whole program as canonical source text."""
    return "\n\n".join(_print_item(item) for item in program.items) + "\n"


def print_expr(expr: S.Expr) -> str:
    """Render a single expression (mainly for tests and messages)."""
    return _expr(expr, 1, _CLOSED, _NONE, "")


def _print_item(item: S.Item) -> str:
    if isinstance(item, S.TypeDef):
        ctors = " | ".join(
            ctor.name if ctor.arg is None else f"{ctor.name} of {_type(ctor.arg, 1)}"
            for ctor in item.constructors
        )
        return f"type {item.name} = {ctors}"
    assert isinstance(item, S.LetBinding)
    keyword = "let rec" if item.rec_flag else "let"
    parts = []
    for i, binding in enumerate(item.bindings):
        lead = keyword if i == 0 else "and"
        parts.append(f"{lead} {_binding_text(binding, top=True)}")
    return "\n\n".join(parts)


def _binding_text(binding: S.Binding, top: bool) -> str:
    head = _pattern(binding.pattern, 4)
    for param in binding.params:
        head += " " + _param(param)
    if binding.return_type is not None:
        head += f" : {_type(binding.return_type, 1)}"
    if top:
        body = _expr(binding.body, 1, _CLOSED, _NONE, "  ")
        return f"{head} =\n  {body}"
    return f"{head} = {_expr(binding.body, 1, _CLOSED, _NONE, '')}"


def _param(param: S.Param) -> str:
    if param.type_annotation is not None:
        return f"({_pattern(param.pattern, 1)} : {_type(param.type_annotation, 1)})"
    if isinstance(param.pattern, (S.VarPat, S.WildcardPat)):
        return _pattern(param.pattern, 4)
    return f"({_pattern(param.pattern, 1)})"


# --- Expressions ---------------------------------------------------------


def _level_of(expr: S.Expr) -> int:
    if isinstance(expr, (S.LetIn, S.Match, S.FunctionMatch, S.Lambda, S.Sequence)):
        return 1
    if isinstance(expr, S.If):
        return 2
    if isinstance(expr, S.Tuple):
        return 3
    if isinstance(expr, S.BinOp):
        return _BINOP_LEVELS[expr.op]
    if isinstance(expr, S.UnOp):
        return 12 if expr.op == "!" else 10
    if isinstance(expr, S.Apply):
        return 11
    if isinstance(expr, S.ConstructorApp):
        return 11 if expr.args else 12
    return 12


def _needs_parens(expr: S.Expr, level: int, ftl: int, hungry: frozenset[str]) -> bool:
    # Open constructs re-parse at any operand slot up to level 10 (the
    # expression entry hook), so for them only capture risk matters: the
    # level bound applies to function-application positions, ftl to tokens
    # their tail would swallow, hungry to '|' and dangling 'else'.
    if isinstance(expr, (S.Match, S.FunctionMatch)):
        return level > 10 or ftl != _CLOSED or "|" in hungry
    if isinstance(expr, (S.Lambda, S.LetIn)):
        return level > 10 or ftl != _CLOSED
    if isinstance(expr, S.If):
        # Branches parse at the assignment level: a following ';' (level 1)
        # is safe, anything binding at levels 2..12 would be swallowed.
        return (
            level > 10
            or ftl not in (1, _CLOSED)
            or (expr.orelse is None and "else" in hungry)
        )
    if isinstance(expr, S.Sequence):
        return level > 1
    return _level_of(expr) < level


def _expr(expr: S.Expr, level: int, ftl: int, hungry: frozenset[str], indent: str) -> str:
    if _needs_parens(expr, level, ftl, hungry):
        return "(" + _expr(expr, 1, _CLOSED, _NONE, indent) + ")"
    return _render(expr, ftl, hungry, indent)


def _render(expr: S.Expr, ftl: int, hungry: frozenset[str], indent: str) -> str:
    closed = _CLOSED
    if isinstance(expr, S.IntLit):
        return str(expr.value)
    if isinstance(expr, S.BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, S.StringLit):
        return expr.value
    if isinstance(expr, S.UnitLit):
        return "()"
    if isinstance(expr, S.Ident):
        return expr.qualified
    if isinstance(expr, S.ConstructorApp):
        if not expr.args:
            return expr.name
        args = " ".join(_expr(a, 12, closed, _NONE, indent) for a in expr.args)
        return f"{expr.name} {args}"
    if isinstance(expr, S.Apply):
        fn = _expr(expr.fn, 11, closed, _NONE, indent)
        arg = _expr(expr.arg, 12, closed, _NONE, indent)
        return f"{fn} {arg}"
    if isinstance(expr, S.UnOp):
        if expr.op == "!":
            return "!" + _expr(expr.operand, 12, closed, _NONE, indent)
        sep = " " if expr.op == "not" else ""
        return expr.op + sep + _expr(expr.operand, 10, ftl, hungry, indent)
    if isinstance(expr, S.BinOp):
        lvl = _BINOP_LEVELS[expr.op]
        if expr.op == ":=":
            lhs = _expr(expr.lhs, 3, 2, _NONE, indent)
            rhs = _expr(expr.rhs, 2, ftl, hungry, indent)
        elif expr.op in _RIGHT_ASSOC:
            lhs = _expr(expr.lhs, lvl + 1, lvl, _NONE, indent)
            rhs = _expr(expr.rhs, lvl, ftl, hungry, indent)
        else:
            lhs = _expr(expr.lhs, lvl, lvl, _NONE, indent)
            rhs = _expr(expr.rhs, lvl + 1, ftl, hungry, indent)
        return f"{lhs} {expr.op} {rhs}"
    if isinstance(expr, S.Tuple):
        parts = [
            _expr(e, 4, 3, _NONE, indent) if i + 1 < len(expr.elems)
            else _expr(e, 4, ftl, hungry, indent)
            for i, e in enumerate(expr.elems)
        ]
        return ", ".join(parts)
    if isinstance(expr, S.Sequence):
        first = _expr(expr.first, 2, 1, _NONE, indent)
        second = _expr(expr.second, 1, ftl, hungry, indent)
        return f"{first}; {second}"
    if isinstance(expr, S.ListLit):
        if not expr.elems:
            return "[]"
        parts = [
            _expr(e, 2, 1 if i + 1 < len(expr.elems) else closed, _NONE, indent)
            for i, e in enumerate(expr.elems)
        ]
        return "[" + "; ".join(parts) + "]"
    if isinstance(expr, S.Paren):
        return "(" + _expr(expr.inner, 1, closed, _NONE, indent) + ")"
    if isinstance(expr, S.If):
        cond = _expr(expr.cond, 1, closed, _NONE, indent)
        if expr.orelse is None:
            then = _expr(expr.then, 2, ftl, hungry, indent)
            return f"if {cond} then {then}"
        then = _expr(expr.then, 2, closed, hungry | {"else"}, indent)
        orelse = _expr(expr.orelse, 2, ftl, hungry, indent)
        return f"if {cond} then {then} else {orelse}"
    if isinstance(expr, S.Match):
        scrutinee = _expr(expr.scrutinee, 3, closed, _NONE, indent)
        return f"match {scrutinee} with" + _arms(expr.arms, ftl, hungry, indent)
    if isinstance(expr, S.FunctionMatch):
        return "function" + _arms(expr.arms, ftl, hungry, indent)
    if isinstance(expr, S.Lambda):
        params = " ".join(_param(p) for p in expr.params)
        body = _expr(expr.body, 1, ftl, hungry, indent)
        return f"fun {params} -> {body}"
    if isinstance(expr, S.LetIn):
        keyword = "let rec" if expr.rec_flag else "let"
        bindings = " and ".join(_binding_text(b, top=False) for b in expr.bindings)
        body = _expr(expr.body, 1, ftl, hungry, indent)
        return f"{keyword} {bindings} in {body}"
    if isinstance(expr, S.While):
        cond = _expr(expr.cond, 1, closed, _NONE, indent)
        body = _expr(expr.body, 1, closed, _NONE, indent + "  ")
        return f"while {cond} do {body} done"
    if isinstance(expr, S.For):
        start = _expr(expr.start, 2, closed, _NONE, indent)
        stop = _expr(expr.stop, 2, closed, _NONE, indent)
        body = _expr(expr.body, 1, closed, _NONE, indent + "  ")
        return f"for {expr.var} = {start} {expr.direction} {stop} do {body} done"
    raise TypeError(f"cannot print {type(expr).__name__}")


def _arms(arms: list[S.MatchArm], ftl: int, hungry: frozenset[str], indent: str) -> str:
    inner = indent + "  "
    out = []
    for i, arm in enumerate(arms):
        last = i + 1 == len(arms)
        arm_ftl = ftl if last else _CLOSED
        arm_hungry = hungry if last else frozenset({"|"})
        body = _expr(arm.body, 1, arm_ftl, arm_hungry, inner)
        out.append(f"\n{indent}| {_pattern(arm.pattern, 1)} -> {body}")
    return "".join(out)


# --- Patterns ------------------------------------------------------------


def _pattern(pattern: S.Pattern, level: int) -> str:
    if _pattern_level(pattern) < level:
        return "(" + _pattern(pattern, 1) + ")"
    if isinstance(pattern, S.WildcardPat):
        return "_"
    if isinstance(pattern, S.VarPat):
        return pattern.name
    if isinstance(pattern, S.LiteralPat):
        if isinstance(pattern.value, bool):
            return "true" if pattern.value else "false"
        return str(pattern.value)
    if isinstance(pattern, S.EmptyListPat):
        return "[]"
    if isinstance(pattern, S.TuplePat):
        return "(" + ", ".join(_pattern(p, 2) for p in pattern.elems) + ")"
    if isinstance(pattern, S.ConsPat):
        return f"{_pattern(pattern.head, 3)} :: {_pattern(pattern.tail, 2)}"
    assert isinstance(pattern, S.CtorPat)
    if not pattern.args:
        return pattern.name
    return pattern.name + " " + " ".join(_pattern(p, 4) for p in pattern.args)


def _pattern_level(pattern: S.Pattern) -> int:
    if isinstance(pattern, S.ConsPat):
        return 2
    if isinstance(pattern, S.CtorPat) and pattern.args:
        return 3
    return 4  # tuples render with their own parentheses, so they act as atoms


# --- Types ---------------------------------------------------------------


def _type(ty: S.TypeExpr, level: int) -> str:
    if _type_level(ty) < level:
        return "(" + _type(ty, 1) + ")"
    if isinstance(ty, S.TypeName):
        return ty.name
    if isinstance(ty, S.TypeParen):
        return "(" + _type(ty.inner, 1) + ")"
    if isinstance(ty, S.TypeArrow):
        return f"{_type(ty.param, 2)} -> {_type(ty.result, 1)}"
    if isinstance(ty, S.TypeTuple):
        return " * ".join(_type(t, 3) for t in ty.elems)
    assert isinstance(ty, S.TypeApp)
    return " ".join(_type(t, 4) for t in ty.args) + " " + ty.constructor


def _type_level(ty: S.TypeExpr) -> int:
    if isinstance(ty, S.TypeArrow):
        return 1
    if isinstance(ty, S.TypeTuple):
        return 2
    if isinstance(ty, S.TypeApp):
        return 3
    return 4
