"""Lexer unit tests: token boundaries, kinds, comments, and error cases."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from methodgit import LexError, TokenKind, tokenize


def texts(source: str) -> list[str]:
    return [t.text for t in tokenize(source).tokens]


def kinds(source: str) -> list[TokenKind]:
    return [t.kind for t in tokenize(source).tokens]


def test_simple_method_token_texts():
    assert texts("int f() { return 1; }") == [
        "int", "f", "(", ")", "{", "return", "1", ";", "}",
    ]


def test_token_kinds():
    got = kinds("int f() { return x1; }")
    assert got == [
        TokenKind.KEYWORD,
        TokenKind.IDENTIFIER,
        TokenKind.SEPARATOR,
        TokenKind.SEPARATOR,
        TokenKind.SEPARATOR,
        TokenKind.KEYWORD,
        TokenKind.IDENTIFIER,
        TokenKind.SEPARATOR,
        TokenKind.SEPARATOR,
    ]


def test_contextual_keywords_are_identifiers():
    for word in ("var", "record", "yield", "sealed", "permits", "module"):
        (tok,) = tokenize(word).tokens
        assert tok.kind is TokenKind.IDENTIFIER


def test_non_sealed_is_one_token():
    assert texts("non-sealed class A {}")[0] == "non-sealed"


def test_longest_munch_operators():
    assert texts("a >>>= b") == ["a", ">>>=", "b"]
    assert texts("a >>> b") == ["a", ">>>", "b"]
    assert texts("x :: y") == ["x", "::", "y"]
    assert texts("f(Object... xs)") == ["f", "(", "Object", "...", "xs", ")"]
    assert texts("i+++++j") == ["i", "++", "++", "+", "j"]


def test_string_and_char_literals():
    assert texts(r'String s = "a\"b\\";') == [
        "String", "s", "=", r'"a\"b\\"', ";",
    ]
    assert texts(r"char c = '\n';") == ["char", "c", "=", r"'\n'", ";"]
    assert texts("char q = '\\'';") == ["char", "q", "=", "'\\''", ";"]


def test_text_block_single_token():
    src = 'String s = """\n  two\n  lines""";'
    toks = texts(src)
    assert toks[3] == '"""\n  two\n  lines"""'
    assert toks[4] == ";"


def test_numeric_literals():
    src = "0x1F 1_000 3.14f 1e9 0b1010 077 2L .5d"
    result = tokenize(src)
    assert [t.text for t in result.tokens] == [
        "0x1F", "1_000", "3.14f", "1e9", "0b1010", "077", "2L", ".5d",
    ]
    assert all(t.kind is TokenKind.LITERAL for t in result.tokens)


def test_comments_are_recorded_not_tokenized():
    src = "int a; // line\nint b; /* block */ int c;"
    result = tokenize(src)
    assert [t.text for t in result.tokens] == [
        "int", "a", ";", "int", "b", ";", "int", "c", ";",
    ]
    assert len(result.comments) == 2
    assert not any(c.javadoc for c in result.comments)


def test_javadoc_recorded_with_attach_index():
    src = "/** doc */\nint f() {}"
    result = tokenize(src)
    assert len(result.javadocs) == 1
    doc = result.javadocs[0]
    assert doc.text == "/** doc */"
    assert doc.attach_index == 0
    assert result.tokens[doc.attach_index].text == "int"
    assert [c.javadoc for c in result.comments] == [True]


def test_line_column_offset():
    src = "int a;\n  b++;"
    toks = tokenize(src).tokens
    b = next(t for t in toks if t.text == "b")
    assert (b.line, b.column) == (2, 3)
    assert src[b.offset] == "b"
    assert b.end == b.offset + 1


def test_byte_len_multibyte():
    (tok,) = tokenize("élève").tokens
    assert tok.byte_len == len("élève".encode("utf-8"))
    assert len(tok.text) == 5


def test_unterminated_string_raises():
    with pytest.raises(LexError):
        tokenize('String s = "oops;')


def test_unterminated_block_comment_raises():
    with pytest.raises(LexError):
        tokenize("int a; /* never closed")


def test_stray_character_raises():
    with pytest.raises(LexError):
        tokenize("int a = #;")


def test_offsets_cover_text_exactly():
    src = 'class A { String s = "x"; int n = 3 % 2; }'
    for tok in tokenize(src).tokens:
        assert src[tok.offset : tok.end] == tok.text


@given(
    st.lists(
        st.one_of(
            st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,8}", fullmatch=True),
            st.sampled_from([";", "{", "}", "(", ")", "+", "==", "->"]),
            st.from_regex(r"[0-9]{1,6}", fullmatch=True),
        ),
        min_size=0,
        max_size=40,
    )
)
def test_space_separated_items_roundtrip(items):
    src = " ".join(items)
    toks = tokenize(src).tokens
    assert [t.text for t in toks] == items
    for tok in toks:
        assert src[tok.offset : tok.end] == tok.text
