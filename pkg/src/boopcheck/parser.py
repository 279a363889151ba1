"""Recursive descent parser for the OCaml subset.

Operator precedence, loosest binding first:

    ``;``  |  ``:=``  |  ``,``  |  ``||``  |  ``&&``  |  comparisons
    |  ``:: @ ^``  |  ``+ -``  |  ``* / mod``  |  ``not``/unary ``-``
    |  application  |  atoms (with prefix ``!``)

``match``, ``fun``, ``function``, ``let ... in``, and ``if`` may start an
expression at any operand position and extend as far right as the grammar
allows.  On a parse error the parser reports X010 and resumes at the next
``let`` or ``type`` keyword so several errors can be reported per file.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, Severity, Span
from .lexer import Token, TokenKind
from . import syntax as S

_OPEN_KEYWORDS = frozenset({"match", "function", "fun", "if", "let"})
_COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")


class ParseFailure(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class _Cursor:
    def __init__(self, tokens: list[Token], end: int):
        self.tokens = tokens
        self.pos = 0
        self.end_span = Span(end, end)

    def peek(self, ahead: int = 0) -> Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def here(self) -> Span:
        tok = self.peek()
        return tok.span if tok else self.end_span

    def fail(self, expected: str) -> ParseFailure:
        tok = self.peek()
        found = f"'{tok.text}'" if tok else "end of input"
        return ParseFailure(
            Diagnostic(
                "X010",
                Severity.ERROR,
                self.here(),
                f"expected {expected}, found {found}",
            )
        )

    def expect_symbol(self, sym: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_symbol(sym):
            raise self.fail(f"'{sym}'")
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_keyword(word):
            raise self.fail(f"'{word}'")
        return self.advance()

    def match_symbol(self, sym: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.is_symbol(sym):
            self.advance()
            return True
        return False

    def match_keyword(self, word: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.is_keyword(word):
            self.advance()
            return True
        return False


def _span_to(start: Span, end: Span) -> Span:
    return Span(start.start, end.end)


def parse_program(tokens: list[Token]) -> tuple[S.Program | None, list[Diagnostic]]:
    """Parse a token stream into a Program.

    Returns ``(program, [])`` on success or ``(None, diagnostics)`` when any
    X010 was reported; items parsed before an error are not kept because
    later analyses need a complete picture of the file.
    """
    end = tokens[-1].span.end if tokens else 0
    stream = [t for t in tokens if t.kind != TokenKind.COMMENT]
    c = _Cursor(stream, end)
    items: list[S.Item] = []
    diags: list[Diagnostic] = []

    while not c.at_end():
        try:
            tok = c.peek()
            if tok.is_keyword("type"):
                items.append(_parse_typedef(c))
            elif tok.is_keyword("let"):
                items.append(_parse_let_item(c))
            else:
                raise c.fail("'let' or 'type' at top level")
        except ParseFailure as failure:
            diags.append(failure.diagnostic)
            _recover(c)

    if diags:
        return None, diags
    span = Span(0, end)
    if items:
        span = _span_to(items[0].span, items[-1].span)
    return S.Program(items, span), diags


def _recover(c: _Cursor) -> None:
    if not c.at_end():
        c.advance()
    while not c.at_end():
        tok = c.peek()
        if tok.is_keyword("let") or tok.is_keyword("type"):
            return
        c.advance()


# --- Items ---------------------------------------------------------------


def _parse_typedef(c: _Cursor) -> S.TypeDef:
    start = c.expect_keyword("type").span
    name_tok = c.peek()
    if name_tok is None or name_tok.kind != TokenKind.IDENT:
        raise c.fail("type name")
    c.advance()
    c.expect_symbol("=")
    c.match_symbol("|")
    ctors = [_parse_ctor_decl(c)]
    while c.match_symbol("|"):
        ctors.append(_parse_ctor_decl(c))
    return S.TypeDef(name_tok.text, ctors, _span_to(start, ctors[-1].span))


def _parse_ctor_decl(c: _Cursor) -> S.CtorDecl:
    tok = c.peek()
    if tok is None or tok.kind != TokenKind.UIDENT:
        raise c.fail("constructor name")
    c.advance()
    arg = None
    span = tok.span
    if c.match_keyword("of"):
        arg = _parse_type(c)
        span = _span_to(tok.span, arg.span)
    return S.CtorDecl(tok.text, arg, span)


def _parse_let_item(c: _Cursor) -> S.LetBinding:
    start = c.expect_keyword("let").span
    rec_flag = c.match_keyword("rec")
    bindings = [_parse_binding(c)]
    while c.match_keyword("and"):
        bindings.append(_parse_binding(c))
    return S.LetBinding(
        rec_flag,
        bindings,
        and_chained=len(bindings) > 1,
        span=_span_to(start, bindings[-1].span),
    )


def _parse_binding(c: _Cursor) -> S.Binding:
    tok = c.peek()
    if tok is None:
        raise c.fail("binding")
    if tok.kind == TokenKind.IDENT:
        c.advance()
        pattern: S.Pattern = S.VarPat(tok.text, tok.span)
        params = _parse_params(c)
    else:
        pattern = _parse_pattern_atom(c)
        params = []
    return_type = None
    if c.match_symbol(":"):
        return_type = _parse_type(c)
    c.expect_symbol("=")
    body = _parse_expr(c)
    return S.Binding(pattern, params, return_type, body, _span_to(tok.span, _expr_span(body)))


def _parse_params(c: _Cursor) -> list[S.Param]:
    params: list[S.Param] = []
    while True:
        tok = c.peek()
        if tok is None:
            break
        if tok.kind == TokenKind.IDENT:
            c.advance()
            pat: S.Pattern = (
                S.WildcardPat(tok.span) if tok.text == "_" else S.VarPat(tok.text, tok.span)
            )
            params.append(S.Param(pat, None, tok.span))
        elif tok.is_symbol("("):
            open_tok = c.advance()
            nxt = c.peek()
            if nxt is not None and nxt.is_symbol(")"):
                close = c.advance()
                span = _span_to(open_tok.span, close.span)
                params.append(S.Param(S.TuplePat([], span), None, span))
                continue
            pat = _parse_pattern(c)
            annotation = None
            if c.match_symbol(":"):
                annotation = _parse_type(c)
            close = c.expect_symbol(")")
            params.append(S.Param(pat, annotation, _span_to(open_tok.span, close.span)))
        else:
            break
    return params


# --- Patterns ------------------------------------------------------------


def _parse_pattern(c: _Cursor) -> S.Pattern:
    first = _parse_pattern_cons(c)
    if c.peek() is not None and c.peek().is_symbol(","):
        elems = [first]
        while c.match_symbol(","):
            elems.append(_parse_pattern_cons(c))
        return S.TuplePat(elems, _span_to(_pat_span(first), _pat_span(elems[-1])))
    return first


def _parse_pattern_cons(c: _Cursor) -> S.Pattern:
    head = _parse_pattern_app(c)
    if c.peek() is not None and c.peek().is_symbol("::"):
        c.advance()
        tail = _parse_pattern_cons(c)
        return S.ConsPat(head, tail, _span_to(_pat_span(head), _pat_span(tail)))
    return head


def _parse_pattern_app(c: _Cursor) -> S.Pattern:
    tok = c.peek()
    if tok is not None and tok.kind == TokenKind.UIDENT:
        c.advance()
        nxt = c.peek()
        if nxt is not None and _starts_pattern_atom(nxt):
            arg = _parse_pattern_atom(c)
            return S.CtorPat(tok.text, [arg], _span_to(tok.span, _pat_span(arg)))
        return S.CtorPat(tok.text, [], tok.span)
    return _parse_pattern_atom(c)


def _starts_pattern_atom(tok: Token) -> bool:
    if tok.kind in (TokenKind.IDENT, TokenKind.UIDENT, TokenKind.INT, TokenKind.STRING):
        return True
    if tok.is_keyword("true") or tok.is_keyword("false"):
        return True
    return tok.is_symbol("(") or tok.is_symbol("[")


def _parse_pattern_atom(c: _Cursor) -> S.Pattern:
    tok = c.peek()
    if tok is None:
        raise c.fail("pattern")
    if tok.kind == TokenKind.IDENT:
        c.advance()
        if tok.text == "_":
            return S.WildcardPat(tok.span)
        return S.VarPat(tok.text, tok.span)
    if tok.kind == TokenKind.UIDENT:
        c.advance()
        return S.CtorPat(tok.text, [], tok.span)
    if tok.kind == TokenKind.INT:
        c.advance()
        return S.LiteralPat(int(tok.text), tok.span)
    if tok.kind == TokenKind.STRING:
        c.advance()
        return S.LiteralPat(tok.text, tok.span)
    if tok.is_keyword("true") or tok.is_keyword("false"):
        c.advance()
        return S.LiteralPat(tok.text == "true", tok.span)
    if tok.is_symbol("("):
        c.advance()
        inner = _parse_pattern(c)
        c.expect_symbol(")")
        return inner
    if tok.is_symbol("["):
        c.advance()
        close = c.peek()
        if close is not None and close.is_symbol("]"):
            c.advance()
            return S.EmptyListPat(_span_to(tok.span, close.span))
        raise c.fail("']'")
    raise c.fail("pattern")


def _pat_span(pattern: S.Pattern) -> Span:
    return pattern.span


# --- Types ---------------------------------------------------------------


def _parse_type(c: _Cursor) -> S.TypeExpr:
    left = _parse_type_tuple(c)
    if c.peek() is not None and c.peek().is_symbol("->"):
        c.advance()
        right = _parse_type(c)
        return S.TypeArrow(left, right, _span_to(left.span, right.span))
    return left


def _parse_type_tuple(c: _Cursor) -> S.TypeExpr:
    first = _parse_type_app(c)
    if c.peek() is not None and c.peek().is_symbol("*"):
        elems = [first]
        while c.match_symbol("*"):
            elems.append(_parse_type_app(c))
        return S.TypeTuple(elems, _span_to(first.span, elems[-1].span))
    return first


def _parse_type_app(c: _Cursor) -> S.TypeExpr:
    ty = _parse_type_atom(c)
    while True:
        tok = c.peek()
        if tok is not None and tok.kind == TokenKind.IDENT:
            c.advance()
            ty = S.TypeApp(tok.text, [ty], _span_to(ty.span, tok.span))
        else:
            return ty


def _parse_type_atom(c: _Cursor) -> S.TypeExpr:
    tok = c.peek()
    if tok is None:
        raise c.fail("type")
    if tok.kind in (TokenKind.IDENT, TokenKind.QIDENT, TokenKind.UIDENT):
        c.advance()
        return S.TypeName(tok.text, tok.span)
    if tok.is_symbol("("):
        c.advance()
        inner = _parse_type(c)
        close = c.expect_symbol(")")
        return S.TypeParen(inner, _span_to(tok.span, close.span))
    raise c.fail("type")


# --- Expressions ---------------------------------------------------------


def _expr_span(expr: S.Expr) -> Span:
    return expr.span


def _parse_expr(c: _Cursor, level: int = 1) -> S.Expr:
    tok = c.peek()
    if tok is not None and tok.kind == TokenKind.KEYWORD and tok.text in _OPEN_KEYWORDS:
        expr = _parse_open(c)
    else:
        expr = _parse_tighter(c, level)
    return _parse_operators(c, expr, level)


def _parse_tighter(c: _Cursor, level: int) -> S.Expr:
    if level <= 9:
        return _parse_expr(c, level + 1)
    if level == 10:
        return _parse_unary(c)
    raise AssertionError(f"bad level {level}")


def _parse_operators(c: _Cursor, expr: S.Expr, level: int) -> S.Expr:
    while True:
        tok = c.peek()
        if tok is None:
            return expr
        if level == 1 and tok.is_symbol(";"):
            c.advance()
            rest = _parse_expr(c, 1)
            return S.Sequence(expr, rest, _span_to(_expr_span(expr), _expr_span(rest)))
        if level == 2 and tok.is_symbol(":="):
            c.advance()
            rhs = _parse_expr(c, 2)
            return S.BinOp(":=", expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
        if level == 3 and tok.is_symbol(","):
            elems = [expr]
            while c.match_symbol(","):
                elems.append(_parse_expr(c, 4))
            return S.Tuple(elems, _span_to(_expr_span(expr), _expr_span(elems[-1])))
        if level == 4 and tok.is_symbol("||"):
            c.advance()
            rhs = _parse_expr(c, 4)
            return S.BinOp("||", expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
        if level == 5 and tok.is_symbol("&&"):
            c.advance()
            rhs = _parse_expr(c, 5)
            return S.BinOp("&&", expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
        if level == 6 and any(tok.is_symbol(op) for op in _COMPARISON_OPS):
            op = c.advance().text
            rhs = _parse_expr(c, 7)
            expr = S.BinOp(op, expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
            continue
        if level == 7 and (tok.is_symbol("::") or tok.is_symbol("@") or tok.is_symbol("^")):
            op = c.advance().text
            rhs = _parse_expr(c, 7)
            return S.BinOp(op, expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
        if level == 8 and (tok.is_symbol("+") or tok.is_symbol("-")):
            op = c.advance().text
            rhs = _parse_expr(c, 9)
            expr = S.BinOp(op, expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
            continue
        if level == 9 and (tok.is_symbol("*") or tok.is_symbol("/") or tok.is_keyword("mod")):
            op = c.advance().text
            rhs = _parse_expr(c, 10)
            expr = S.BinOp(op, expr, rhs, _span_to(_expr_span(expr), _expr_span(rhs)))
            continue
        return expr


def _parse_unary(c: _Cursor) -> S.Expr:
    tok = c.peek()
    if tok is not None and (tok.is_symbol("-") or tok.is_keyword("not")):
        c.advance()
        operand = _parse_expr(c, 10)
        return S.UnOp(tok.text, operand, _span_to(tok.span, _expr_span(operand)))
    return _parse_apply(c)


def _parse_apply(c: _Cursor) -> S.Expr:
    tok = c.peek()
    if tok is None:
        raise c.fail("expression")
    if tok.kind == TokenKind.UIDENT:
        c.advance()
        nxt = c.peek()
        if nxt is not None and _starts_atom(nxt):
            arg = _parse_atom(c)
            expr: S.Expr = S.ConstructorApp(tok.text, [arg], _span_to(tok.span, _expr_span(arg)))
        else:
            expr = S.ConstructorApp(tok.text, [], tok.span)
    else:
        expr = _parse_atom(c)
    while True:
        nxt = c.peek()
        if nxt is None or not _starts_atom(nxt):
            return expr
        arg = _parse_atom(c)
        expr = S.Apply(expr, arg, _span_to(_expr_span(expr), _expr_span(arg)))


def _starts_atom(tok: Token) -> bool:
    if tok.kind in (
        TokenKind.IDENT,
        TokenKind.UIDENT,
        TokenKind.QIDENT,
        TokenKind.INT,
        TokenKind.STRING,
    ):
        return True
    if tok.kind == TokenKind.KEYWORD:
        return tok.text in ("true", "false", "begin", "while", "for", "ref")
    return tok.is_symbol("(") or tok.is_symbol("[") or tok.is_symbol("!")


def _parse_atom(c: _Cursor) -> S.Expr:
    tok = c.peek()
    if tok is None:
        raise c.fail("expression")

    if tok.is_symbol("!"):
        c.advance()
        operand = _parse_atom(c)
        return S.UnOp("!", operand, _span_to(tok.span, _expr_span(operand)))

    if tok.kind == TokenKind.IDENT:
        c.advance()
        return S.Ident(None, tok.text, tok.span)
    if tok.kind == TokenKind.QIDENT:
        c.advance()
        module, _, name = tok.text.rpartition(".")
        return S.Ident(module, name, tok.span)
    if tok.kind == TokenKind.UIDENT:
        c.advance()
        return S.ConstructorApp(tok.text, [], tok.span)
    if tok.kind == TokenKind.INT:
        c.advance()
        return S.IntLit(int(tok.text), tok.span)
    if tok.kind == TokenKind.STRING:
        c.advance()
        return S.StringLit(tok.text, tok.span)
    if tok.is_keyword("true") or tok.is_keyword("false"):
        c.advance()
        return S.BoolLit(tok.text == "true", tok.span)
    if tok.is_keyword("ref"):
        # Lexed as a keyword, parsed as a plain identifier so the mutation
        # rule can match its applications uniformly.
        c.advance()
        return S.Ident(None, "ref", tok.span)

    if tok.is_symbol("("):
        c.advance()
        nxt = c.peek()
        if nxt is not None and nxt.is_symbol(")"):
            close = c.advance()
            return S.UnitLit(_span_to(tok.span, close.span))
        inner = _parse_expr(c, 1)
        close = c.expect_symbol(")")
        return S.Paren(inner, _span_to(tok.span, close.span))

    if tok.is_keyword("begin"):
        c.advance()
        inner = _parse_expr(c, 1)
        close = c.expect_keyword("end")
        return S.Paren(inner, _span_to(tok.span, close.span))

    if tok.is_symbol("["):
        c.advance()
        elems: list[S.Expr] = []
        nxt = c.peek()
        if nxt is not None and nxt.is_symbol("]"):
            close = c.advance()
            return S.ListLit([], _span_to(tok.span, close.span))
        elems.append(_parse_expr(c, 2))
        while c.match_symbol(";"):
            elems.append(_parse_expr(c, 2))
        close = c.expect_symbol("]")
        return S.ListLit(elems, _span_to(tok.span, close.span))

    if tok.is_keyword("while"):
        c.advance()
        cond = _parse_expr(c, 1)
        c.expect_keyword("do")
        body = _parse_expr(c, 1)
        close = c.expect_keyword("done")
        return S.While(cond, body, _span_to(tok.span, close.span))

    if tok.is_keyword("for"):
        c.advance()
        var_tok = c.peek()
        if var_tok is None or var_tok.kind != TokenKind.IDENT:
            raise c.fail("loop variable")
        c.advance()
        c.expect_symbol("=")
        start = _parse_expr(c, 2)
        direction_tok = c.peek()
        if direction_tok is not None and direction_tok.is_keyword("to"):
            direction = "to"
        elif direction_tok is not None and direction_tok.is_keyword("downto"):
            direction = "downto"
        else:
            raise c.fail("'to' or 'downto'")
        c.advance()
        stop = _parse_expr(c, 2)
        c.expect_keyword("do")
        body = _parse_expr(c, 1)
        close = c.expect_keyword("done")
        return S.For(var_tok.text, start, direction, stop, body, _span_to(tok.span, close.span))

    raise c.fail("expression")


def _parse_open(c: _Cursor) -> S.Expr:
    tok = c.peek()
    assert tok is not None

    if tok.is_keyword("if"):
        c.advance()
        cond = _parse_expr(c, 1)
        c.expect_keyword("then")
        then = _parse_expr(c, 2)
        orelse = None
        end_span = _expr_span(then)
        if c.match_keyword("else"):
            orelse = _parse_expr(c, 2)
            end_span = _expr_span(orelse)
        return S.If(cond, then, orelse, _span_to(tok.span, end_span))

    if tok.is_keyword("match"):
        c.advance()
        scrutinee = _parse_expr(c, 3)
        c.expect_keyword("with")
        arms = _parse_arms(c)
        return S.Match(scrutinee, arms, _span_to(tok.span, arms[-1].span))

    if tok.is_keyword("function"):
        c.advance()
        arms = _parse_arms(c)
        return S.FunctionMatch(arms, _span_to(tok.span, arms[-1].span))

    if tok.is_keyword("fun"):
        c.advance()
        params = _parse_params(c)
        if not params:
            raise c.fail("parameter")
        c.expect_symbol("->")
        body = _parse_expr(c, 1)
        return S.Lambda(params, body, _span_to(tok.span, _expr_span(body)))

    if tok.is_keyword("let"):
        c.advance()
        rec_flag = c.match_keyword("rec")
        bindings = [_parse_binding(c)]
        while c.match_keyword("and"):
            bindings.append(_parse_binding(c))
        c.expect_keyword("in")
        body = _parse_expr(c, 1)
        return S.LetIn(rec_flag, bindings, body, _span_to(tok.span, _expr_span(body)))

    raise c.fail("expression")


def _parse_arms(c: _Cursor) -> list[S.MatchArm]:
    c.match_symbol("|")
    arms = [_parse_arm(c)]
    while c.peek() is not None and c.peek().is_symbol("|"):
        c.advance()
        arms.append(_parse_arm(c))
    return arms


def _parse_arm(c: _Cursor) -> S.MatchArm:
    pattern = _parse_pattern(c)
    c.expect_symbol("->")
    body = _parse_expr(c, 1)
    return S.MatchArm(pattern, body, _span_to(_pat_span(pattern), _expr_span(body)))
