import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boopcheck.lexer import LexError, TokenKind, lex


class TestLexBasics:
    def test_listing_fragment(self):
        tokens = lex("let rec minus (n: nat)")
        assert [(t.kind, t.text) for t in tokens] == [
            (TokenKind.KEYWORD, "let"),
            (TokenKind.KEYWORD, "rec"),
            (TokenKind.IDENT, "minus"),
            (TokenKind.PUNCT, "("),
            (TokenKind.IDENT, "n"),
            (TokenKind.PUNCT, ":"),
            (TokenKind.IDENT, "nat"),
            (TokenKind.PUNCT, ")"),
        ]

    def test_nested_comment_is_single_token(self):
        tokens = lex("(* a (* b *) c *)")
        assert len(tokens) == 1
        assert tokens[0].kind is TokenKind.COMMENT
        assert tokens[0].text == "(* a (* b *) c *)"

    def test_primed_identifiers(self):
        tokens = lex("a' b'")
        assert [t.text for t in tokens] == ["a'", "b'"]

    def test_module_qualified_identifier(self):
        tokens = lex("List.rev xs")
        assert tokens[0].kind is TokenKind.QIDENT
        assert tokens[0].text == "List.rev"

    def test_multichar_operators(self):
        tokens = lex("-> := :: <> <= >= && ||")
        assert [t.text for t in tokens] == ["->", ":=", "::", "<>", "<=", ">=", "&&", "||"]

    def test_string_with_escapes(self):
        tokens = lex(r'"say \"hi\"" x')
        assert tokens[0].kind is TokenKind.STRING
        assert tokens[0].text == r'"say \"hi\""'

    def test_keywords_vs_identifiers(self):
        tokens = lex("refx ref matchbox match")
        assert [t.kind for t in tokens] == [
            TokenKind.IDENT,
            TokenKind.KEYWORD,
            TokenKind.IDENT,
            TokenKind.KEYWORD,
        ]


class TestLexErrors:
    def test_unterminated_string_is_x002_at_open_quote(self):
        with pytest.raises(LexError) as err:
            lex('let s = "abc')
        diag = err.value.diagnostic
        assert diag.rule_id == "X002"
        assert diag.span.start == len('let s = ')

    def test_unterminated_comment_is_x001(self):
        with pytest.raises(LexError) as err:
            lex("(* never closed (* inner *)")
        assert err.value.diagnostic.rule_id == "X001"
        assert err.value.diagnostic.span.start == 0

    def test_illegal_character_is_x003(self):
        with pytest.raises(LexError) as err:
            lex("let x = 1 # 2")
        diag = err.value.diagnostic
        assert diag.rule_id == "X003"
        assert "#" in diag.message


class TestLexInvariants:
    def test_spans_strictly_increase_and_cover_non_whitespace(self):
        code = "let f (x: nat) = (* note *) Succ x  [1; 2]"
        tokens = lex(code)
        data = code.encode()
        last = 0
        covered = bytearray(len(data))
        for token in tokens:
            assert token.span.start >= last
            assert data[token.span.start : token.span.end].decode() == token.text
            last = token.span.end
            for i in range(token.span.start, token.span.end):
                covered[i] = 1
        for i, byte in enumerate(data):
            if byte not in b" \t\r\n":
                assert covered[i], f"byte {i} ({chr(byte)!r}) not covered"


@settings(max_examples=80, derandomize=True)
@given(
    st.lists(
        st.sampled_from(
            ["let", "rec", "x", "y'", "Succ", "List.rev", "42", '"s"', "(*c*)", "->",
             ":=", "(", ")", "+", "mod", "!", "[", "]", ";"]
        ),
        max_size=20,
    )
)
def test_lex_deterministic_and_reassemblable(parts):
    code = " ".join(parts)
    first = lex(code)
    second = lex(code)
    assert first == second
    assert " ".join(t.text for t in first) == code.strip()
