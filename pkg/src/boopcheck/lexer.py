"""Lexer for the OCaml subset used in CODE sections.

Tokens carry byte spans into the UTF-8 encoding of the input text.  Comments
nest to arbitrary depth and are kept in the stream as trivia; the parser
filters them out.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

from .diagnostics import Diagnostic, Severity, Span

KEYWORDS = frozenset(
    "let rec and in type of match with function fun if then else "
    "while do done for to downto begin end true false not mod ref".split()
)

# Longest first so maximal munch falls out of a linear scan.
_MULTI_OPS = ("->", ":=", "::", "<>", "<=", ">=", "&&", "||")
_SINGLE_OPS = set("=<>+-*/@^!|;,:()[]")
_PUNCT = {"(", ")", "[", "]", ";", ",", ":", "|", "->"}


class TokenKind(Enum):
    IDENT = auto()
    UIDENT = auto()  # capitalized, possibly dotted module path ending uppercase
    QIDENT = auto()  # module-qualified lowercase identifier, e.g. List.rev
    INT = auto()
    STRING = auto()
    KEYWORD = auto()
    OP = auto()
    PUNCT = auto()
    COMMENT = auto()


@dataclass
class Token:
    kind: TokenKind
    text: str
    span: Span

    def is_keyword(self, word: str) -> bool:
        return self.kind == TokenKind.KEYWORD and self.text == word

    def is_symbol(self, sym: str) -> bool:
        return self.kind in (TokenKind.OP, TokenKind.PUNCT) and self.text == sym


class LexError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _is_ident_start(b: int) -> bool:
    return ord("a") <= b <= ord("z") or b == ord("_")


def _is_upper(b: int) -> bool:
    return ord("A") <= b <= ord("Z")


def _is_ident_char(b: int) -> bool:
    return (
        ord("a") <= b <= ord("z")
        or ord("A") <= b <= ord("Z")
        or ord("0") <= b <= ord("9")
        or b in (ord("_"), ord("'"))
    )


def _ident_end(data: bytes, pos: int) -> int:
    n = len(data)
    while pos < n and _is_ident_char(data[pos]):
        pos += 1
    return pos


def lex(code: str) -> list[Token]:
    """Tokenize ``code``; raises :class:`LexError` on the first X-diagnostic."""
    data = code.encode("utf-8")
    n = len(data)
    pos = 0
    tokens: list[Token] = []

    def err(rule_id: str, span: Span, message: str) -> LexError:
        return LexError(Diagnostic(rule_id, Severity.ERROR, span, message))

    while pos < n:
        b = data[pos]
        if b in (0x20, 0x09, 0x0D, 0x0A):
            pos += 1
            continue

        if data[pos : pos + 2] == b"(*":
            start = pos
            depth = 1
            pos += 2
            while pos < n and depth:
                if data[pos : pos + 2] == b"(*":
                    depth += 1
                    pos += 2
                elif data[pos : pos + 2] == b"*)":
                    depth -= 1
                    pos += 2
                else:
                    pos += 1
            if depth:
                raise err("X001", Span(start, start + 2), "unterminated comment")
            tokens.append(
                Token(TokenKind.COMMENT, data[start:pos].decode("utf-8"), Span(start, pos))
            )
            continue

        if b == ord('"'):
            start = pos
            pos += 1
            while pos < n and data[pos] != ord('"'):
                pos += 2 if data[pos] == ord("\\") else 1
            if pos >= n:
                raise err("X002", Span(start, start + 1), "unterminated string literal")
            pos += 1
            tokens.append(
                Token(TokenKind.STRING, data[start:pos].decode("utf-8"), Span(start, pos))
            )
            continue

        if ord("0") <= b <= ord("9"):
            start = pos
            while pos < n and ord("0") <= data[pos] <= ord("9"):
                pos += 1
            tokens.append(Token(TokenKind.INT, data[start:pos].decode(), Span(start, pos)))
            continue

        if _is_ident_start(b):
            start = pos
            pos = _ident_end(data, pos)
            text = data[start:pos].decode()
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, text, Span(start, pos)))
            continue

        if _is_upper(b):
            start = pos
            pos = _ident_end(data, pos)
            # Dotted path: modules are uppercase segments; a lowercase tail
            # makes the whole thing a qualified identifier.
            kind = TokenKind.UIDENT
            while (
                pos < n
                and data[pos] == ord(".")
                and pos + 1 < n
                and (_is_ident_start(data[pos + 1]) or _is_upper(data[pos + 1]))
            ):
                seg_start = pos + 1
                pos = _ident_end(data, seg_start)
                if _is_ident_start(data[seg_start]):
                    kind = TokenKind.QIDENT
                    break
            tokens.append(Token(kind, data[start:pos].decode(), Span(start, pos)))
            continue

        two = data[pos : pos + 2].decode("latin-1")
        if two in _MULTI_OPS:
            kind = TokenKind.PUNCT if two in _PUNCT else TokenKind.OP
            tokens.append(Token(kind, two, Span(pos, pos + 2)))
            pos += 2
            continue
        one = chr(b)
        if one in _SINGLE_OPS:
            kind = TokenKind.PUNCT if one in _PUNCT else TokenKind.OP
            tokens.append(Token(kind, one, Span(pos, pos + 1)))
            pos += 1
            continue

        # Step over one whole character so the span stays decodable.
        width = 1
        while pos + width < n and (data[pos + width] & 0xC0) == 0x80:
            width += 1
        ch = data[pos : pos + width].decode("utf-8", errors="replace")
        raise err("X003", Span(pos, pos + width), f"illegal character {ch!r}")

    return tokens
