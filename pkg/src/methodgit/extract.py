"""Structural extraction of Java methods and fields from token streams.

The walker is a lightweight structural parser: it matches brace, paren, and
angle structure and recognizes declaration headers, which is all the
downstream stages need.  It does not build expression trees and it never
resolves names.  Anything it cannot make sense of raises ParseError and the
caller falls back to passing the file through untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .lexer import Javadoc, LexResult, Token, TokenKind, tokenize

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"}
)

MODIFIER_KEYWORDS = frozenset(
    {
        "public", "protected", "private", "static", "final", "abstract",
        "native", "synchronized", "transient", "volatile", "strictfp",
        "default",
    }
)

# Contextual modifiers lex as identifiers; they are consumed as modifiers
# only when a type declaration follows.
CONTEXTUAL_MODIFIERS = frozenset({"sealed", "non-sealed"})

TYPE_DECL_KEYWORDS = frozenset({"class", "interface", "enum"})


@dataclass
class MethodDecl:
    """A method, constructor, or compact record constructor.

    tokens is the contiguous token run of the whole declaration including
    annotations; the *_open/*_close indices are relative to it.  param_open
    is None only for compact constructors, body_open only for declarations
    without a body (abstract/interface/annotation members).
    """

    class_chain: list[str]
    modifiers: list[str]
    type_params: str | None
    return_type: str
    name: str
    param_types: list[str]
    tokens: list[Token]
    javadoc: str | None
    is_abstract: bool
    param_open: int | None
    param_close: int | None
    body_open: int | None
    body_close: int | None
    plain_lines: list[str]
    javadoc_lines: list[str]


@dataclass
class FieldDecl:
    """One declared field variable.

    A multi-variable declaration yields one FieldDecl per variable; tokens
    then share the leading modifier/type tokens and the closing semicolon.
    """

    class_chain: list[str]
    modifiers: list[str]
    field_type: str
    name: str
    tokens: list[Token]
    javadoc: str | None
    plain_lines: list[str]
    javadoc_lines: list[str]


def _fail(msg: str, tok: Token | None = None) -> ParseError:
    where = f" near line {tok.line}" if tok is not None else ""
    return ParseError(msg + where)


def _expect(cond: bool, msg: str, tok: Token | None = None) -> None:
    if not cond:
        raise _fail(msg, tok)


def _match(toks: list[Token], i: int, open_text: str, close_text: str) -> int:
    _expect(
        i < len(toks) and toks[i].text == open_text,
        f"expected {open_text!r}",
        toks[i] if i < len(toks) else None,
    )
    depth = 0
    j = i
    while j < len(toks):
        t = toks[j].text
        if t == open_text:
            depth += 1
        elif t == close_text:
            depth -= 1
            if depth == 0:
                return j
        j += 1
    raise _fail(f"unbalanced {open_text!r}", toks[i])


def match_paren(toks: list[Token], i: int) -> int:
    return _match(toks, i, "(", ")")


def match_brace(toks: list[Token], i: int) -> int:
    return _match(toks, i, "{", "}")


def scan_annotation(toks: list[Token], i: int) -> int:
    """Skip an annotation starting at '@'; returns the index after it."""
    _expect(i < len(toks) and toks[i].text == "@", "expected '@'",
            toks[i] if i < len(toks) else None)
    j = i + 1
    _expect(j < len(toks) and toks[j].kind == TokenKind.IDENTIFIER,
            "expected annotation name", toks[i])
    j += 1
    while j + 1 < len(toks) and toks[j].text == "." and toks[j + 1].kind == TokenKind.IDENTIFIER:
        j += 2
    if j < len(toks) and toks[j].text == "(":
        j = match_paren(toks, j) + 1
    return j


_ANGLE_WORDS = frozenset({"extends", "super"}) | PRIMITIVE_TYPES
_ANGLE_PUNCT = frozenset({".", ",", "?", "[", "]", "&"})


def match_angle(toks: list[Token], i: int) -> int | None:
    """Try to match generic arguments starting at '<'.

    Returns the index one past the closing token, or None when the region
    cannot be type arguments and '<' must be a comparison.
    """
    if i >= len(toks) or toks[i].text != "<":
        return None
    depth = 1
    j = i + 1
    while j < len(toks):
        t = toks[j]
        txt = t.text
        if txt == "<":
            depth += 1
            j += 1
            continue
        if txt in (">", ">>", ">>>"):
            depth -= len(txt)
            if depth < 0:
                return None
            j += 1
            if depth == 0:
                return j
            continue
        if txt == "@":
            try:
                j = scan_annotation(toks, j)
            except ParseError:
                return None
            continue
        if t.kind == TokenKind.IDENTIFIER or txt in _ANGLE_WORDS or txt in _ANGLE_PUNCT:
            j += 1
            continue
        return None
    return None


def _angle_text(toks: list[Token], lo: int, hi: int) -> str:
    out = []
    j = lo
    while j < hi:
        if toks[j].text == "@":
            j = scan_annotation(toks, j)
            continue
        out.append(toks[j].text)
        j += 1
    return "".join(out)


def scan_type(toks: list[Token], i: int) -> tuple[int, str] | None:
    """Scan a type at i: annotations, a primitive or dotted name with
    generics, then trailing dimensions.

    Returns (end, text); text has no whitespace and no annotations.  Returns
    None when i does not start a type.
    """
    n = len(toks)
    j = i
    parts: list[str] = []
    while j < n and toks[j].text == "@" and not (j + 1 < n and toks[j + 1].text == "interface"):
        try:
            j = scan_annotation(toks, j)
        except ParseError:
            return None
    if j >= n:
        return None
    t = toks[j]
    if t.kind == TokenKind.KEYWORD and t.text in PRIMITIVE_TYPES:
        parts.append(t.text)
        j += 1
    elif t.kind == TokenKind.IDENTIFIER:
        parts.append(t.text)
        j += 1
        g = match_angle(toks, j)
        if g is not None:
            parts.append(_angle_text(toks, j, g))
            j = g
        while j + 1 < n and toks[j].text == "." and toks[j + 1].kind == TokenKind.IDENTIFIER:
            parts.append("." + toks[j + 1].text)
            j += 2
            g = match_angle(toks, j)
            if g is not None:
                parts.append(_angle_text(toks, j, g))
                j = g
    else:
        return None
    while True:
        k = j
        while k < n and toks[k].text == "@":
            try:
                k = scan_annotation(toks, k)
            except ParseError:
                return None
        if k + 1 < n and toks[k].text == "[" and toks[k + 1].text == "]":
            parts.append("[]")
            j = k + 2
        else:
            break
    return j, "".join(parts)


class _Extractor:
    def __init__(self, source: str, lex: LexResult):
        self.source = source
        self.toks = lex.tokens
        self.javadocs = lex.javadocs
        self.comments = lex.comments
        self.methods: list[MethodDecl] = []
        self.fields: list[FieldDecl] = []
        self._anon = 0

    # ------------------------------------------------------------------
    # small helpers

    def _next_anon(self) -> str:
        self._anon += 1
        return f"${self._anon}"

    def _javadoc_for(self, start: int, name_idx: int) -> Javadoc | None:
        found = None
        for jd in self.javadocs:
            if start <= jd.attach_index <= name_idx:
                found = jd
            elif jd.attach_index > name_idx:
                break
        return found

    def _source_lines(self, lo: int, hi: int) -> list[str]:
        """Full source lines covering character span [lo, hi), with
        non-Javadoc comments spliced out.  Lines that a removal left
        whitespace-only are dropped; line terminators are stripped."""
        src = self.source
        start = src.rfind("\n", 0, lo) + 1
        end = src.find("\n", hi)
        if end == -1:
            end = len(src)
        spans = [
            (c.start, c.end)
            for c in self.comments
            if not c.javadoc and c.start < end and c.end > start
        ]
        out: list[str] = []
        pos = start
        for line in src[start:end].split("\n"):
            ls, le = pos, pos + len(line)
            pos = le + 1
            kept: list[str] = []
            removed = False
            cursor = ls
            for cs, ce in spans:
                if ce <= ls or cs >= le:
                    continue
                s, e = max(cs, ls), min(ce, le)
                if s > cursor:
                    kept.append(src[cursor:s])
                removed = True
                cursor = max(cursor, e)
            kept.append(src[cursor:le])
            text = "".join(kept)
            if text.endswith("\r"):
                text = text[:-1]
            if removed and not text.strip():
                continue
            out.append(text)
        return out

    def _javadoc_lines(self, jd: Javadoc | None) -> list[str]:
        if jd is None:
            return []
        return self._source_lines(jd.start, jd.end)

    # ------------------------------------------------------------------
    # top level

    def run(self) -> None:
        toks = self.toks
        n = len(toks)
        i = 0
        while i < n:
            t = toks[i]
            if t.text in ("package", "import"):
                while i < n and toks[i].text != ";":
                    i += 1
                i += 1
                continue
            if t.text == ";":
                i += 1
                continue
            i = self._type_decl(i, [])

    def _is_type_decl_ahead(self, j: int) -> bool:
        toks = self.toks
        for k in range(j, min(j + 4, len(toks))):
            txt = toks[k].text
            if txt in TYPE_DECL_KEYWORDS or txt == "@":
                return True
            if txt == "record" and toks[k].kind == TokenKind.IDENTIFIER:
                return True
            if txt in MODIFIER_KEYWORDS or txt in CONTEXTUAL_MODIFIERS:
                continue
            return False
        return False

    def _type_decl(self, i: int, chain: list[str]) -> int:
        """Parse a type declaration whose annotations/modifiers start at i.
        Returns the index after the closing brace."""
        toks = self.toks
        n = len(toks)
        j = i
        while j < n:
            t = toks[j]
            if t.text == "@" and j + 1 < n and toks[j + 1].text == "interface":
                return self._class_like(j + 2, chain, "interface")
            if t.text == "@":
                j = scan_annotation(toks, j)
                continue
            if (t.kind == TokenKind.KEYWORD and t.text in MODIFIER_KEYWORDS) or (
                t.text in CONTEXTUAL_MODIFIERS
            ):
                j += 1
                continue
            break
        _expect(j < n, "unexpected end of file")
        t = toks[j]
        if t.text in TYPE_DECL_KEYWORDS:
            return self._class_like(j + 1, chain, t.text)
        if (
            t.kind == TokenKind.IDENTIFIER
            and t.text == "record"
            and j + 2 < n
            and toks[j + 1].kind == TokenKind.IDENTIFIER
            and toks[j + 2].text in ("(", "<")
        ):
            return self._class_like(j + 1, chain, "record")
        raise _fail("expected a type declaration", t)

    def _class_like(self, name_idx: int, chain: list[str], kind: str) -> int:
        toks = self.toks
        n = len(toks)
        _expect(
            name_idx < n and toks[name_idx].kind == TokenKind.IDENTIFIER,
            "expected type name",
            toks[name_idx] if name_idx < n else None,
        )
        name = toks[name_idx].text
        j = name_idx + 1
        if j < n and toks[j].text == "<":
            g = match_angle(toks, j)
            _expect(g is not None, "malformed type parameters", toks[j])
            j = g
        if kind == "record" and j < n and toks[j].text == "(":
            j = match_paren(toks, j) + 1
        while j < n and toks[j].text != "{":
            if toks[j].text == "@":
                j = scan_annotation(toks, j)
                continue
            if toks[j].text == ";":
                return j + 1
            j += 1
        _expect(j < n, "missing type body", toks[name_idx])
        close = match_brace(toks, j)
        sub_chain = chain + [name]
        k = j + 1
        if kind == "enum":
            k = self._enum_constants(j + 1, close, sub_chain)
        self._members(k, close, sub_chain, name)
        return close + 1

    def _enum_constants(self, i: int, close: int, chain: list[str]) -> int:
        """Walk the enum constant list; returns the first member index.
        Constants are not extracted as fields; a constant body is an
        anonymous class and its members are extracted."""
        toks = self.toks
        j = i
        while j < close:
            t = toks[j]
            if t.text == ";":
                return j + 1
            if t.text == "@":
                j = scan_annotation(toks, j)
                continue
            _expect(t.kind == TokenKind.IDENTIFIER, "expected enum constant", t)
            j += 1
            if j < close and toks[j].text == "(":
                c = match_paren(toks, j)
                self._scan_for_types(j + 1, c, chain)
                j = c + 1
            if j < close and toks[j].text == "{":
                b = match_brace(toks, j)
                self._members(j + 1, b, chain + [self._next_anon()], None)
                j = b + 1
            if j < close and toks[j].text == ",":
                j += 1
        return close

    # ------------------------------------------------------------------
    # members

    def _members(self, i: int, close: int, chain: list[str], class_name: str | None) -> None:
        toks = self.toks
        j = i
        while j < close:
            if toks[j].text == ";":
                j += 1
                continue
            j = self._member(j, close, chain, class_name)

    def _member(self, start: int, close: int, chain: list[str], class_name: str | None) -> int:
        toks = self.toks
        mods: list[str] = []
        j = start
        while j < close:
            t = toks[j]
            if t.text == "@" and j + 1 < close and toks[j + 1].text == "interface":
                break
            if t.text == "@":
                j = scan_annotation(toks, j)
                continue
            if t.kind == TokenKind.KEYWORD and t.text in MODIFIER_KEYWORDS:
                mods.append(t.text)
                j += 1
                continue
            if t.text in CONTEXTUAL_MODIFIERS and self._is_type_decl_ahead(j + 1):
                mods.append(t.text)
                j += 1
                continue
            break
        _expect(j < close, "truncated member", toks[start])
        t = toks[j]

        if t.text in TYPE_DECL_KEYWORDS or (t.text == "@" and toks[j + 1].text == "interface"):
            return self._type_decl(start, chain)
        if (
            t.kind == TokenKind.IDENTIFIER
            and t.text == "record"
            and j + 2 < close
            and toks[j + 1].kind == TokenKind.IDENTIFIER
            and toks[j + 2].text in ("(", "<")
        ):
            return self._type_decl(start, chain)

        if t.text == "{":
            b = match_brace(toks, j)
            self._scan_for_types(j + 1, b, chain)
            return b + 1

        type_params = None
        if t.text == "<":
            g = match_angle(toks, j)
            _expect(g is not None, "malformed method type parameters", t)
            type_params = self.source[toks[j].offset : toks[g - 1].end]
            j = g
            _expect(j < close, "truncated member", t)
            t = toks[j]

        if class_name is not None and t.kind == TokenKind.IDENTIFIER and t.text == class_name and j + 1 < close:
            nxt = toks[j + 1].text
            if nxt == "(":
                return self._method(start, mods, type_params, "", j, chain, close)
            if nxt == "{":
                return self._compact_ctor(start, mods, type_params, j, chain)

        st = scan_type(toks, j)
        if st is None:
            raise _fail("expected member type", t)
        type_end, type_text = st
        _expect(type_end < close, "truncated member", t)
        name_tok = toks[type_end]
        _expect(name_tok.kind == TokenKind.IDENTIFIER, "expected member name", name_tok)
        if type_end + 1 < close and toks[type_end + 1].text == "(":
            return self._method(start, mods, type_params, type_text, type_end, chain, close)
        return self._field(start, mods, type_text, j, type_end, chain, close)

    def _method(
        self,
        start: int,
        mods: list[str],
        type_params: str | None,
        return_type: str,
        name_idx: int,
        chain: list[str],
        close: int,
    ) -> int:
        toks = self.toks
        popen = name_idx + 1
        pclose = match_paren(toks, popen)
        param_types = self._param_types(popen + 1, pclose)
        j = pclose + 1
        ret = return_type
        while j + 1 < close and toks[j].text == "[" and toks[j + 1].text == "]":
            ret += "[]"
            j += 2
        body_open: int | None = None
        body_close: int | None = None
        is_abstract = False
        end: int
        while True:
            _expect(j < close, "unterminated method header", toks[name_idx])
            txt = toks[j].text
            if txt == "@":
                j = scan_annotation(toks, j)
                continue
            if txt == "{":
                body_open = j
                body_close = match_brace(toks, j)
                end = body_close
                break
            if txt == ";":
                is_abstract = True
                end = j
                break
            if txt == "default" and toks[j].kind == TokenKind.KEYWORD:
                j = self._expr_end(j + 1, close, (";",))
                continue
            j += 1

        jd = self._javadoc_for(start, name_idx)
        tokens = toks[start : end + 1]
        self.methods.append(
            MethodDecl(
                class_chain=list(chain),
                modifiers=mods,
                type_params=type_params,
                return_type=ret,
                name=toks[name_idx].text,
                param_types=param_types,
                tokens=tokens,
                javadoc=jd.text if jd else None,
                is_abstract=is_abstract,
                param_open=popen - start,
                param_close=pclose - start,
                body_open=body_open - start if body_open is not None else None,
                body_close=body_close - start if body_close is not None else None,
                plain_lines=self._source_lines(toks[start].offset, toks[end].end),
                javadoc_lines=self._javadoc_lines(jd),
            )
        )
        if body_open is not None:
            self._scan_for_types(body_open + 1, body_close, chain)
        return end + 1

    def _compact_ctor(
        self, start: int, mods: list[str], type_params: str | None, name_idx: int, chain: list[str]
    ) -> int:
        toks = self.toks
        bo = name_idx + 1
        bc = match_brace(toks, bo)
        jd = self._javadoc_for(start, name_idx)
        self.methods.append(
            MethodDecl(
                class_chain=list(chain),
                modifiers=mods,
                type_params=type_params,
                return_type="",
                name=toks[name_idx].text,
                param_types=[],
                tokens=toks[start : bc + 1],
                javadoc=jd.text if jd else None,
                is_abstract=False,
                param_open=None,
                param_close=None,
                body_open=bo - start,
                body_close=bc - start,
                plain_lines=self._source_lines(toks[start].offset, toks[bc].end),
                javadoc_lines=self._javadoc_lines(jd),
            )
        )
        self._scan_for_types(bo + 1, bc, chain)
        return bc + 1

    def _param_types(self, lo: int, hi: int) -> list[str]:
        toks = self.toks
        out: list[str] = []
        j = lo
        while j < hi:
            while j < hi:
                if toks[j].text == "@":
                    j = scan_annotation(toks, j)
                    continue
                if toks[j].text == "final":
                    j += 1
                    continue
                break
            if j >= hi:
                break
            st = scan_type(toks, j)
            if st is None:
                raise _fail("malformed parameter", toks[j])
            j, text = st
            while j < hi and toks[j].text == "@":
                j = scan_annotation(toks, j)
            if j < hi and toks[j].text == "...":
                text += "..."
                j += 1
            receiver = False
            if j < hi and toks[j].text == "this":
                receiver = True
                j += 1
            elif (
                j + 2 < hi
                and toks[j].kind == TokenKind.IDENTIFIER
                and toks[j + 1].text == "."
                and toks[j + 2].text == "this"
            ):
                receiver = True
                j += 3
            else:
                _expect(j < hi and toks[j].kind == TokenKind.IDENTIFIER,
                        "expected parameter name", toks[j] if j < hi else None)
                j += 1
                while j + 1 < hi and toks[j].text == "[" and toks[j + 1].text == "]":
                    text += "[]"
                    j += 2
            if not receiver:
                out.append(text)
            if j < hi:
                _expect(toks[j].text == ",", "malformed parameter list", toks[j])
                j += 1
        return out

    def _field(
        self,
        start: int,
        mods: list[str],
        type_text: str,
        type_start: int,
        first_name_idx: int,
        chain: list[str],
        close: int,
    ) -> int:
        toks = self.toks
        head = toks[start:first_name_idx]
        jd = self._javadoc_for(start, first_name_idx)
        declarators: list[tuple[Token, str, int, int]] = []
        j = first_name_idx
        while True:
            name_tok = toks[j]
            _expect(name_tok.kind == TokenKind.IDENTIFIER, "expected field name", name_tok)
            d_start = j
            j += 1
            dims = ""
            while j + 1 < close and toks[j].text == "[" and toks[j + 1].text == "]":
                dims += "[]"
                j += 2
            if j < close and toks[j].text == "=":
                init_lo = j + 1
                j = self._expr_end(init_lo, close, (",", ";"))
                self._scan_for_types(init_lo, j, chain)
            _expect(j < close, "unterminated field", name_tok)
            declarators.append((name_tok, dims, d_start, j))
            if toks[j].text == ",":
                j += 1
                continue
            _expect(toks[j].text == ";", "expected ';' after field", toks[j])
            break
        semi = toks[j]
        for name_tok, dims, lo, hi in declarators:
            self.fields.append(
                FieldDecl(
                    class_chain=list(chain),
                    modifiers=list(mods),
                    field_type=type_text + dims,
                    name=name_tok.text,
                    tokens=head + toks[lo:hi] + [semi],
                    javadoc=jd.text if jd else None,
                    plain_lines=self._source_lines(toks[start].offset, semi.end),
                    javadoc_lines=self._javadoc_lines(jd),
                )
            )
        return j + 1

    def _expr_end(self, i: int, close: int, stops: tuple[str, ...]) -> int:
        """Scan an expression; returns the index of the first stop token at
        zero paren/bracket/brace depth.  Generic argument runs are skipped
        when they are followed by '(' or '::' (calls and method refs)."""
        toks = self.toks
        depth = 0
        j = i
        while j < close:
            txt = toks[j].text
            if txt in ("(", "[", "{"):
                depth += 1
            elif txt in (")", "]", "}"):
                depth -= 1
                _expect(depth >= 0, "unbalanced expression", toks[j])
            elif depth == 0 and txt in stops:
                return j
            elif txt == "<" and j > i and toks[j - 1].kind == TokenKind.IDENTIFIER:
                g = match_angle(toks, j)
                if g is not None and g < close and toks[g].text in ("(", "::"):
                    j = g
                    continue
            j += 1
        raise _fail("unterminated expression", toks[i] if i < len(toks) else None)

    # ------------------------------------------------------------------
    # nested type discovery inside statement/expression regions

    def _scan_for_types(self, lo: int, hi: int, chain: list[str]) -> None:
        toks = self.toks
        j = lo
        while j < hi:
            t = toks[j]
            txt = t.text
            if txt == "new":
                j = self._new_expr(j, hi, chain)
                continue
            if (
                txt == "class"
                and t.kind == TokenKind.KEYWORD
                and (j == 0 or toks[j - 1].text != ".")
                and j + 1 < hi
                and toks[j + 1].kind == TokenKind.IDENTIFIER
            ):
                j = self._type_decl(j, chain)
                continue
            if txt in ("interface", "enum") and j + 1 < hi and toks[j + 1].kind == TokenKind.IDENTIFIER:
                j = self._type_decl(j, chain)
                continue
            if txt == "@" and j + 1 < hi and toks[j + 1].text == "interface":
                j = self._type_decl(j, chain)
                continue
            if (
                txt == "record"
                and t.kind == TokenKind.IDENTIFIER
                and j + 2 < hi
                and toks[j + 1].kind == TokenKind.IDENTIFIER
                and toks[j + 2].text == "("
            ):
                j = self._type_decl(j, chain)
                continue
            j += 1

    def _new_expr(self, i: int, hi: int, chain: list[str]) -> int:
        """Handle a 'new' expression at i; extracts anonymous class members.
        Returns the index to resume scanning from."""
        toks = self.toks
        k = i + 1
        while k < hi and toks[k].text == "@":
            k = scan_annotation(toks, k)
        if k < hi and toks[k].kind == TokenKind.KEYWORD and toks[k].text in PRIMITIVE_TYPES:
            return k + 1
        if k >= hi or toks[k].kind != TokenKind.IDENTIFIER:
            return i + 1
        k += 1
        g = match_angle(toks, k)
        if g is not None:
            k = g
        while k + 1 < hi and toks[k].text == "." and toks[k + 1].kind == TokenKind.IDENTIFIER:
            k += 2
            g = match_angle(toks, k)
            if g is not None:
                k = g
        if k < hi and toks[k].text == "(":
            c = match_paren(toks, k)
            self._scan_for_types(k + 1, c, chain)
            if c + 1 < hi and toks[c + 1].text == "{":
                b = match_brace(toks, c + 1)
                self._members(c + 2, b, chain + [self._next_anon()], None)
                return b + 1
            return c + 1
        return k


def extract(source: str) -> tuple[list[MethodDecl], list[FieldDecl]]:
    """Extract all method and field declarations from Java source.

    Raises LexError or ParseError when the file cannot be processed; callers
    then keep the original file untouched.
    """
    lex = tokenize(source)
    ex = _Extractor(source, lex)
    ex.run()
    return ex.methods, ex.fields
