"""Java tokenizer.

Produces a flat token stream (identifiers, keywords, literals, operators,
separators) with comments removed.  Javadoc comments are captured separately
together with the index of the token they precede, so declaration extraction
can reattach them.  Lexing is longest-munch over the raw source text; unicode
escape pre-translation is not applied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import LexError


class TokenKind(Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    LITERAL = "literal"
    OPERATOR = "operator"
    SEPARATOR = "separator"


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    line: int
    column: int
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.text)

    @property
    def byte_len(self) -> int:
        return len(self.text.encode("utf-8"))


@dataclass(frozen=True)
class Javadoc:
    """A documentation comment, kept verbatim including its delimiters.

    attach_index is the index of the first token lexed after the comment;
    a declaration owns the comment when its first token sits at that index.
    """

    text: str
    attach_index: int
    start: int
    end: int
    line: int


@dataclass(frozen=True)
class CommentSpan:
    start: int
    end: int
    javadoc: bool


@dataclass
class LexResult:
    tokens: list[Token]
    javadocs: list[Javadoc]
    comments: list[CommentSpan]


# Reserved words.  Contextual keywords (var, record, yield, sealed, ...)
# lex as identifiers, matching javac.  A lone underscore is reserved.
KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while _
    """.split()
)

LITERAL_WORDS = frozenset({"true", "false", "null"})

SEPARATORS = frozenset({"(", ")", "{", "}", "[", "]", ";", ",", ".", "...", "@", "::"})

OPERATORS = frozenset(
    {
        "=", ">", "<", "!", "~", "?", ":", "->",
        "==", ">=", "<=", "!=", "&&", "||", "++", "--",
        "+", "-", "*", "/", "&", "|", "^", "%",
        "<<", ">>", ">>>",
        "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=",
        "<<=", ">>=", ">>>=",
    }
)

# Longest munch: try multi-character punctuation first.
_PUNCT = sorted(SEPARATORS | OPERATORS, key=len, reverse=True)

_NUMBER_RE = re.compile(
    r"""
      0[xX][0-9a-fA-F_]*\.[0-9a-fA-F_]*[pP][+-]?[0-9_]+[fFdD]?
    | 0[xX][0-9a-fA-F_]+[pP][+-]?[0-9_]+[fFdD]?
    | 0[xX][0-9a-fA-F_]+[lL]?
    | 0[bB][01_]+[lL]?
    | [0-9][0-9_]*\.[0-9_]*(?:[eE][+-]?[0-9_]+)?[fFdD]?
    | \.[0-9][0-9_]*(?:[eE][+-]?[0-9_]+)?[fFdD]?
    | [0-9][0-9_]*[eE][+-]?[0-9_]+[fFdD]?
    | [0-9][0-9_]*[fFdD]
    | [0-9][0-9_]*[lL]?
    """,
    re.VERBOSE,
)

_IDENT_RE = re.compile(r"(?:[^\W\d]|\$)(?:\w|\$)*")

_IDENT_CONTINUE_RE = re.compile(r"[\w$]")


def _scan_string(source: str, start: int, line: int, col: int) -> int:
    i = start + 1
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\\":
            i += 2
            continue
        if c == '"':
            return i + 1
        if c == "\n":
            break
        i += 1
    raise LexError("unterminated string literal", line, col)


def _scan_char(source: str, start: int, line: int, col: int) -> int:
    i = start + 1
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\\":
            i += 2
            continue
        if c == "'":
            return i + 1
        if c == "\n":
            break
        i += 1
    raise LexError("unterminated character literal", line, col)


def _scan_text_block(source: str, start: int, line: int, col: int) -> int:
    i = start + 3
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\\":
            i += 2
            continue
        if c == '"':
            run = i
            while run < n and source[run] == '"':
                run += 1
            if run - i >= 3:
                # Longest munch: surplus quotes belong to the content and
                # the final three close the block.
                return run
            i = run
            continue
        i += 1
    raise LexError("unterminated text block", line, col)


def tokenize(source: str) -> LexResult:
    """Tokenize Java source.

    Comments never become tokens.  Javadoc comments (block comments opening
    with ``/**``, at least five characters long) are collected verbatim in
    the result.  Raises LexError for unterminated comments or literals and
    for characters that fit no token class.
    """
    tokens: list[Token] = []
    javadocs: list[Javadoc] = []
    comments: list[CommentSpan] = []
    i = 0
    line = 1
    line_start = 0
    n = len(source)

    def emit(text: str, kind: TokenKind) -> None:
        nonlocal i, line, line_start
        tokens.append(Token(text, kind, line, i - line_start + 1, i))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = i + text.rfind("\n") + 1
        i += len(text)

    while i < n:
        ch = source[i]
        if ch in " \t\f\r":
            i += 1
            continue
        if ch == "\n":
            i += 1
            line += 1
            line_start = i
            continue
        col = i - line_start + 1
        if ch == "/" and i + 1 < n and source[i + 1] in "/*":
            if source[i + 1] == "/":
                end = source.find("\n", i)
                if end == -1:
                    end = n
                comments.append(CommentSpan(i, end, False))
                i = end
                continue
            end = source.find("*/", i + 2)
            if end == -1:
                raise LexError("unterminated block comment", line, col)
            end += 2
            text = source[i:end]
            is_doc = text.startswith("/**") and len(text) >= 5
            comments.append(CommentSpan(i, end, is_doc))
            if is_doc:
                javadocs.append(Javadoc(text, len(tokens), i, end, line))
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = i + text.rfind("\n") + 1
            i = end
            continue
        if ch == '"':
            if source.startswith('"""', i):
                end = _scan_text_block(source, i, line, col)
            else:
                end = _scan_string(source, i, line, col)
            emit(source[i:end], TokenKind.LITERAL)
            continue
        if ch == "'":
            end = _scan_char(source, i, line, col)
            emit(source[i:end], TokenKind.LITERAL)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            m = _NUMBER_RE.match(source, i)
            if m:
                emit(m.group(), TokenKind.LITERAL)
                continue
        m = _IDENT_RE.match(source, i)
        if m:
            word = m.group()
            if (
                word == "non"
                and source.startswith("-sealed", m.end())
                and not _IDENT_CONTINUE_RE.match(source, m.end() + 7)
            ):
                # Contextual hyphenated keyword, a single token in javac.
                word = "non-sealed"
            if word in KEYWORDS:
                kind = TokenKind.KEYWORD
            elif word in LITERAL_WORDS:
                kind = TokenKind.LITERAL
            else:
                kind = TokenKind.IDENTIFIER
            emit(word, kind)
            continue
        for punct in _PUNCT:
            if source.startswith(punct, i):
                kind = TokenKind.SEPARATOR if punct in SEPARATORS else TokenKind.OPERATOR
                emit(punct, kind)
                break
        else:
            raise LexError(f"unexpected character {ch!r}", line, col)

    return LexResult(tokens, javadocs, comments)
