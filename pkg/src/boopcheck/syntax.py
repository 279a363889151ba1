"""AST for the OCaml subset.

Every node carries a byte span into the CODE section body it was parsed
from.  Spans are excluded from equality, so ``==`` compares structure only;
that is what the parse/print round-trip tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .diagnostics import Span


def _span_field() -> Span:
    return Span(0, 0)


@dataclass
class Node:
    pass


# --- Types ---------------------------------------------------------------


@dataclass
class TypeExpr(Node):
    pass


@dataclass
class TypeName(TypeExpr):
    name: str
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class TypeApp(TypeExpr):
    """Postfix application such as ``nat list``."""

    constructor: str
    args: list[TypeExpr]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class TypeArrow(TypeExpr):
    param: TypeExpr
    result: TypeExpr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class TypeTuple(TypeExpr):
    elems: list[TypeExpr]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class TypeParen(TypeExpr):
    inner: TypeExpr
    span: Span = field(default_factory=_span_field, compare=False)


# --- Patterns ------------------------------------------------------------


@dataclass
class Pattern(Node):
    pass


@dataclass
class WildcardPat(Pattern):
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class VarPat(Pattern):
    name: str
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class CtorPat(Pattern):
    name: str
    args: list[Pattern]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class TuplePat(Pattern):
    elems: list[Pattern]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class LiteralPat(Pattern):
    value: Union[int, bool, str]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class ConsPat(Pattern):
    head: Pattern
    tail: Pattern
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class EmptyListPat(Pattern):
    span: Span = field(default_factory=_span_field, compare=False)


def pattern_vars(pattern: Pattern) -> Iterator[str]:
    if isinstance(pattern, VarPat):
        yield pattern.name
    elif isinstance(pattern, CtorPat):
        for arg in pattern.args:
            yield from pattern_vars(arg)
    elif isinstance(pattern, TuplePat):
        for elem in pattern.elems:
            yield from pattern_vars(elem)
    elif isinstance(pattern, ConsPat):
        yield from pattern_vars(pattern.head)
        yield from pattern_vars(pattern.tail)


# --- Expressions ---------------------------------------------------------


@dataclass
class Expr(Node):
    pass


@dataclass
class IntLit(Expr):
    value: int
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class BoolLit(Expr):
    value: bool
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class StringLit(Expr):
    value: str  # raw source text including the quotes
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class UnitLit(Expr):
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Ident(Expr):
    module: str | None
    name: str
    span: Span = field(default_factory=_span_field, compare=False)

    @property
    def qualified(self) -> str:
        return f"{self.module}.{self.name}" if self.module else self.name


@dataclass
class ConstructorApp(Expr):
    name: str
    args: list[Expr]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Apply(Expr):
    fn: Expr
    arg: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Param(Node):
    pattern: Pattern
    type_annotation: TypeExpr | None
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Lambda(Expr):
    params: list[Param]
    body: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class MatchArm(Node):
    pattern: Pattern
    body: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class FunctionMatch(Expr):
    arms: list[MatchArm]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Match(Expr):
    scrutinee: Expr
    arms: list[MatchArm]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class If(Expr):
    cond: Expr
    then: Expr
    orelse: Expr | None
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Binding(Node):
    pattern: Pattern
    params: list[Param]
    return_type: TypeExpr | None
    body: Expr
    span: Span = field(default_factory=_span_field, compare=False)

    @property
    def name(self) -> str | None:
        """Simple bound name, or None for destructuring patterns."""
        return self.pattern.name if isinstance(self.pattern, VarPat) else None

    @property
    def is_function(self) -> bool:
        return bool(self.params)


@dataclass
class LetIn(Expr):
    rec_flag: bool
    bindings: list[Binding]
    body: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Tuple(Expr):
    elems: list[Expr]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class BinOp(Expr):
    op: str
    lhs: Expr
    rhs: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class UnOp(Expr):
    op: str
    operand: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Sequence(Expr):
    first: Expr
    second: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class While(Expr):
    cond: Expr
    body: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class For(Expr):
    var: str
    start: Expr
    direction: str  # "to" | "downto"
    stop: Expr
    body: Expr
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class ListLit(Expr):
    elems: list[Expr]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Paren(Expr):
    inner: Expr
    span: Span = field(default_factory=_span_field, compare=False)


# --- Items ---------------------------------------------------------------


@dataclass
class CtorDecl(Node):
    name: str
    arg: TypeExpr | None
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Item(Node):
    pass


@dataclass
class TypeDef(Item):
    name: str
    constructors: list[CtorDecl]
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class LetBinding(Item):
    rec_flag: bool
    bindings: list[Binding]
    and_chained: bool
    span: Span = field(default_factory=_span_field, compare=False)


@dataclass
class Program(Node):
    items: list[Item]
    span: Span = field(default_factory=_span_field, compare=False)


def child_exprs(expr: Expr) -> Iterator[Expr]:
    """Direct expression children, in source order."""
    if isinstance(expr, ConstructorApp):
        yield from expr.args
    elif isinstance(expr, Apply):
        yield expr.fn
        yield expr.arg
    elif isinstance(expr, Lambda):
        yield expr.body
    elif isinstance(expr, (FunctionMatch, Match)):
        if isinstance(expr, Match):
            yield expr.scrutinee
        for arm in expr.arms:
            yield arm.body
    elif isinstance(expr, If):
        yield expr.cond
        yield expr.then
        if expr.orelse is not None:
            yield expr.orelse
    elif isinstance(expr, LetIn):
        for binding in expr.bindings:
            yield binding.body
        yield expr.body
    elif isinstance(expr, Tuple):
        yield from expr.elems
    elif isinstance(expr, BinOp):
        yield expr.lhs
        yield expr.rhs
    elif isinstance(expr, UnOp):
        yield expr.operand
    elif isinstance(expr, Sequence):
        yield expr.first
        yield expr.second
    elif isinstance(expr, While):
        yield expr.cond
        yield expr.body
    elif isinstance(expr, For):
        yield expr.start
        yield expr.stop
        yield expr.body
    elif isinstance(expr, ListLit):
        yield from expr.elems
    elif isinstance(expr, Paren):
        yield expr.inner


def walk_exprs(expr: Expr) -> Iterator[Expr]:
    """Pre-order traversal of an expression tree."""
    yield expr
    for child in child_exprs(expr):
        yield from walk_exprs(child)


def program_exprs(program: Program) -> Iterator[Expr]:
    for item in program.items:
        if isinstance(item, LetBinding):
            for binding in item.bindings:
                yield from walk_exprs(binding.body)


def top_level_bindings(program: Program) -> Iterator[tuple[LetBinding, Binding]]:
    for item in program.items:
        if isinstance(item, LetBinding):
            for binding in item.bindings:
                yield item, binding
