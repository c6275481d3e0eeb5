"""Rendering of extracted declarations to one-token-per-line file content.

Terminator tokens (semicolons, braces, parens) optionally carry a role tag on
their line, and the four outermost method delimiters can be elided.  The
tagging walker is best-effort: if it gets confused it stops, and a final pass
fills every remaining terminator with a generic tag so output is total.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParseError
from .extract import (
    MethodDecl,
    FieldDecl,
    PRIMITIVE_TYPES,
    MODIFIER_KEYWORDS,
    match_angle,
    match_paren,
    match_brace,
    scan_annotation,
    scan_type,
)
from .lexer import Token, TokenKind


class LineFormat(enum.Enum):
    TOKEN_PER_LINE = "token"
    PLAIN = "plain"


@dataclass(frozen=True)
class RenderConfig:
    line_format: LineFormat = LineFormat.TOKEN_PER_LINE
    heuristic1: bool = True
    heuristic2: bool = True
    include_javadoc: bool = True


SEMICOLON_TAGS = (
    "RETURN", "EXPRESSION", "LOCAL_VARIABLE", "BREAK", "CONTINUE", "THROW",
    "ASSERT", "DO_WHILE", "FOR_INIT", "FOR_COND", "FOR_UPDATE", "EMPTY",
    "FIELD", "ABSTRACT_METHOD", "ENUM_CONSTANT_LIST", "YIELD", "LABELED",
    "OTHER",
)

BRACKET_TAGS = (
    "METHOD_BODY", "IF", "ELSE", "FOR", "ENHANCED_FOR", "WHILE", "DO", "TRY",
    "CATCH", "FINALLY", "SWITCH", "SYNCHRONIZED", "STATIC_INIT",
    "INSTANCE_INIT", "ARRAY_INITIALIZER", "LAMBDA_BODY", "ANONYMOUS_CLASS",
    "CLASS", "ENUM", "INTERFACE", "PLAIN_BLOCK",
)

PAREN_TAGS = (
    "METHOD_PARAMS", "METHOD_CALL", "CONSTRUCTOR_CALL", "IF_COND",
    "WHILE_COND", "DO_COND", "FOR", "ENHANCED_FOR", "SWITCH_SELECTOR",
    "CATCH_PARAM", "CAST", "GROUPING", "SYNCHRONIZED_EXPR", "ANNOTATION_ARGS",
    "LAMBDA_PARAMS", "TRY_RESOURCE", "ASSERT_EXPR", "ARRAY_ACCESS_GUARD",
    "SUPER_CALL", "OTHER",
)

# Modifiers that may precede a local variable or local class declaration.
_LOCAL_MODIFIERS = frozenset({"final", "abstract", "static", "strictfp"})
_CONTEXTUAL_LOCAL = frozenset({"sealed", "non-sealed"})

_CAST_NEXT = frozenset({"(", "!", "~", "new", "this", "super"})


class _Tagger:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.tags: list[str | None] = [None] * len(toks)

    # -- pair helpers ---------------------------------------------------

    def _pair(self, open_idx: int, close_idx: int, tag: str) -> None:
        self.tags[open_idx] = tag
        self.tags[close_idx] = tag

    def _paren(self, j: int, tag: str) -> int:
        c = match_paren(self.toks, j)
        self._pair(j, c, tag)
        return c

    def _brace(self, j: int, tag: str) -> int:
        c = match_brace(self.toks, j)
        self._pair(j, c, tag)
        return c

    def _annotation(self, j: int, hi: int) -> int:
        """Skip an annotation, tagging its argument parens."""
        toks = self.toks
        k = j + 1
        while k + 1 < hi and toks[k + 1].text == "." and toks[k].kind == TokenKind.IDENTIFIER:
            k += 2
        if k < hi and toks[k].kind == TokenKind.IDENTIFIER:
            k += 1
        if k < hi and toks[k].text == "(":
            c = self._paren(k, "ANNOTATION_ARGS")
            self._expr(k + 1, c, False)
            return c + 1
        return k

    def _find_semi(self, lo: int, hi: int) -> int:
        """Index of the first semicolon at zero bracket depth, or hi."""
        toks = self.toks
        depth = 0
        j = lo
        while j < hi:
            txt = toks[j].text
            if txt in ("(", "[", "{"):
                depth += 1
            elif txt in (")", "]", "}"):
                depth -= 1
            elif txt == ";" and depth <= 0:
                return j
            j += 1
        return hi

    # -- declaration entry points ---------------------------------------

    def method(self, decl: MethodDecl) -> None:
        toks = self.toks
        n = len(toks)
        if decl.param_open is not None:
            stop = decl.param_open
        elif decl.body_open is not None:
            stop = decl.body_open
        else:
            stop = n
        j = 0
        while j < stop:
            if toks[j].text == "@":
                j = self._annotation(j, stop)
            else:
                j += 1
        if decl.param_open is not None:
            self._pair(decl.param_open, decl.param_close, "METHOD_PARAMS")
            j = decl.param_open + 1
            while j < decl.param_close:
                if toks[j].text == "@":
                    j = self._annotation(j, decl.param_close)
                else:
                    j += 1
            j = decl.param_close + 1
        if decl.body_open is not None:
            self._pair(decl.body_open, decl.body_close, "METHOD_BODY")
            while j < decl.body_open:
                if toks[j].text == "@":
                    j = self._annotation(j, decl.body_open)
                else:
                    j += 1
            self._block(decl.body_open + 1, decl.body_close, False)
        else:
            last = n - 1
            while j < last:
                txt = toks[j].text
                if txt == "@":
                    j = self._annotation(j, last)
                elif txt == "default" and toks[j].kind == TokenKind.KEYWORD:
                    self._expr(j + 1, last, False)
                    break
                else:
                    j += 1
            if toks[last].text == ";":
                self.tags[last] = "ABSTRACT_METHOD"

    def fielddecl(self, decl: FieldDecl) -> None:
        toks = self.toks
        last = len(toks) - 1
        j = 0
        while j < last:
            txt = toks[j].text
            if txt == "@":
                j = self._annotation(j, last)
            elif txt == "=":
                self._expr(j + 1, last, False)
                break
            else:
                j += 1
        if toks[last].text == ";":
            self.tags[last] = "FIELD"

    # -- statements -----------------------------------------------------

    def _block(self, lo: int, hi: int, in_switch: bool) -> None:
        j = lo
        while j < hi:
            j = self._statement(j, hi, in_switch)

    def _statement(self, j: int, hi: int, in_switch: bool) -> int:
        toks = self.toks
        t = toks[j]
        txt = t.text

        if txt == ";":
            self.tags[j] = "EMPTY"
            return j + 1

        if txt == "{":
            c = self._brace(j, "PLAIN_BLOCK")
            self._block(j + 1, c, in_switch)
            return c + 1

        if t.kind == TokenKind.KEYWORD:
            if txt == "if":
                return self._if(j, hi, in_switch)
            if txt == "while":
                c = self._paren(j + 1, "WHILE_COND")
                self._expr(j + 2, c, in_switch)
                return self._body(c + 1, hi, "WHILE", in_switch)
            if txt == "do":
                return self._do(j, hi, in_switch)
            if txt == "for":
                return self._for(j, hi, in_switch)
            if txt == "try":
                return self._try(j, hi, in_switch)
            if txt == "switch":
                return self._switch(j, hi)
            if txt == "synchronized":
                c = self._paren(j + 1, "SYNCHRONIZED_EXPR")
                self._expr(j + 2, c, in_switch)
                return self._body(c + 1, hi, "SYNCHRONIZED", in_switch)
            if txt in ("return", "throw", "assert"):
                tag = {"return": "RETURN", "throw": "THROW", "assert": "ASSERT"}[txt]
                s = self._find_semi(j + 1, hi)
                self._expr(j + 1, s, in_switch)
                if s < hi:
                    self.tags[s] = tag
                return s + 1
            if txt in ("break", "continue"):
                s = self._find_semi(j + 1, hi)
                if s < hi:
                    self.tags[s] = "BREAK" if txt == "break" else "CONTINUE"
                return s + 1

        if in_switch and t.kind == TokenKind.IDENTIFIER and txt == "yield":
            s = self._find_semi(j + 1, hi)
            self._expr(j + 1, s, in_switch)
            if s < hi:
                self.tags[s] = "YIELD"
            return s + 1

        # labeled statement
        if t.kind == TokenKind.IDENTIFIER and j + 1 < hi and toks[j + 1].text == ":":
            return self._statement(j + 2, hi, in_switch)

        # annotations and local modifiers, then a declaration or expression
        k = j
        while k < hi:
            tk = toks[k]
            if tk.text == "@" and not (k + 1 < hi and toks[k + 1].text == "interface"):
                k = self._annotation(k, hi)
                continue
            if tk.text in _LOCAL_MODIFIERS and tk.kind == TokenKind.KEYWORD:
                k += 1
                continue
            if tk.text in _CONTEXTUAL_LOCAL:
                k += 1
                continue
            break
        if k < hi:
            tk = toks[k]
            if tk.text in ("class", "enum", "interface") and tk.kind == TokenKind.KEYWORD:
                return self._type_decl(k, hi)
            if tk.text == "@" and k + 1 < hi and toks[k + 1].text == "interface":
                return self._type_decl(k + 1, hi)
            if (
                tk.text == "record"
                and tk.kind == TokenKind.IDENTIFIER
                and k + 2 < hi
                and toks[k + 1].kind == TokenKind.IDENTIFIER
                and toks[k + 2].text == "("
            ):
                return self._type_decl(k, hi)

        s = self._find_semi(j, hi)
        self._expr(j, s, in_switch)
        if s < hi:
            self.tags[s] = self._stmt_semi_tag(k, s)
        return s + 1

    def _stmt_semi_tag(self, lo: int, semi: int) -> str:
        toks = self.toks
        st = scan_type(toks, lo)
        if st is not None:
            end, _ = st
            if end < semi and toks[end].kind == TokenKind.IDENTIFIER:
                return "LOCAL_VARIABLE"
        return "EXPRESSION"

    def _body(self, j: int, hi: int, tag: str, in_switch: bool) -> int:
        """A statement body: a tagged block or a single statement."""
        if j < hi and self.toks[j].text == "{":
            c = self._brace(j, tag)
            self._block(j + 1, c, in_switch)
            return c + 1
        if j >= hi:
            return hi
        return self._statement(j, hi, in_switch)

    def _if(self, j: int, hi: int, in_switch: bool) -> int:
        toks = self.toks
        c = self._paren(j + 1, "IF_COND")
        self._expr(j + 2, c, in_switch)
        j = self._body(c + 1, hi, "IF", in_switch)
        if j < hi and toks[j].text == "else" and toks[j].kind == TokenKind.KEYWORD:
            j += 1
            if j < hi and toks[j].text == "if" and toks[j].kind == TokenKind.KEYWORD:
                return self._if(j, hi, in_switch)
            return self._body(j, hi, "ELSE", in_switch)
        return j

    def _do(self, j: int, hi: int, in_switch: bool) -> int:
        toks = self.toks
        j = self._body(j + 1, hi, "DO", in_switch)
        if j < hi and toks[j].text == "while":
            c = self._paren(j + 1, "DO_COND")
            self._expr(j + 2, c, in_switch)
            j = c + 1
            if j < hi and toks[j].text == ";":
                self.tags[j] = "DO_WHILE"
                j += 1
        return j

    def _for(self, j: int, hi: int, in_switch: bool) -> int:
        toks = self.toks
        popen = j + 1
        pclose = match_paren(toks, popen)
        first = self._find_semi(popen + 1, pclose)
        if first < pclose:
            self._pair(popen, pclose, "FOR")
            self.tags[first] = "FOR_INIT"
            second = self._find_semi(first + 1, pclose)
            if second < pclose:
                self.tags[second] = "FOR_COND"
            self._expr(popen + 1, first, in_switch)
            self._expr(first + 1, min(second, pclose), in_switch)
            if second < pclose:
                self._expr(second + 1, pclose, in_switch)
            return self._body(pclose + 1, hi, "FOR", in_switch)
        self._pair(popen, pclose, "ENHANCED_FOR")
        self._expr(popen + 1, pclose, in_switch)
        return self._body(pclose + 1, hi, "ENHANCED_FOR", in_switch)

    def _try(self, j: int, hi: int, in_switch: bool) -> int:
        toks = self.toks
        j += 1
        if j < hi and toks[j].text == "(":
            c = self._paren(j, "TRY_RESOURCE")
            k = j + 1
            while k < c:
                s = self._find_semi(k, c)
                self._expr(k, s, in_switch)
                if s < c:
                    self.tags[s] = "LOCAL_VARIABLE"
                k = s + 1
            j = c + 1
        j = self._body(j, hi, "TRY", in_switch)
        while j < hi and toks[j].text == "catch":
            c = self._paren(j + 1, "CATCH_PARAM")
            j = self._body(c + 1, hi, "CATCH", in_switch)
        if j < hi and toks[j].text == "finally":
            j = self._body(j + 1, hi, "FINALLY", in_switch)
        return j

    def _switch(self, j: int, hi: int) -> int:
        toks = self.toks
        c = self._paren(j + 1, "SWITCH_SELECTOR")
        self._expr(j + 2, c, False)
        j = c + 1
        if j < hi and toks[j].text == "{":
            b = self._brace(j, "SWITCH")
            self._switch_body(j + 1, b)
            return b + 1
        return j

    def _switch_body(self, lo: int, hi: int) -> None:
        toks = self.toks
        j = lo
        while j < hi:
            t = toks[j]
            if t.kind == TokenKind.KEYWORD and t.text == "case":
                k = self._label_end(j + 1, hi)
                self._expr(j + 1, k, True)
                j = k + 1 if k < hi else hi
                continue
            if t.kind == TokenKind.KEYWORD and t.text == "default" and j + 1 < hi and toks[j + 1].text in (":", "->"):
                j += 2
                continue
            j = self._statement(j, hi, True)

    def _label_end(self, lo: int, hi: int) -> int:
        """Scan a case label to its ':' or '->' at depth zero."""
        toks = self.toks
        depth = 0
        j = lo
        while j < hi:
            txt = toks[j].text
            if txt in ("(", "[", "{"):
                depth += 1
            elif txt in (")", "]", "}"):
                depth -= 1
            elif depth == 0 and txt in (":", "->"):
                return j
            j += 1
        return hi

    # -- local and anonymous type bodies ---------------------------------

    def _type_decl(self, j: int, hi: int) -> int:
        """Tag a type declaration whose class/interface/enum/record keyword
        is at j (for @interface, j is the 'interface' token)."""
        toks = self.toks
        kw = toks[j].text
        tag = {"class": "CLASS", "record": "CLASS", "enum": "ENUM"}.get(kw, "INTERFACE")
        j += 1
        if j < hi and toks[j].kind == TokenKind.IDENTIFIER:
            j += 1
        g = match_angle(toks, j) if j < hi and toks[j].text == "<" else None
        if g is not None:
            j = g
        if kw == "record" and j < hi and toks[j].text == "(":
            j = match_paren(toks, j) + 1
        while j < hi and toks[j].text != "{":
            if toks[j].text == "@":
                j = self._annotation(j, hi)
                continue
            if toks[j].text == ";":
                return j + 1
            j += 1
        if j >= hi:
            return hi
        b = self._brace(j, tag)
        if kw == "enum":
            k = self._enum_body(j + 1, b)
            self._class_body(k, b)
        else:
            self._class_body(j + 1, b)
        return b + 1

    def _enum_body(self, lo: int, hi: int) -> int:
        toks = self.toks
        j = lo
        while j < hi:
            t = toks[j]
            if t.text == ";":
                self.tags[j] = "ENUM_CONSTANT_LIST"
                return j + 1
            if t.text == "@":
                j = self._annotation(j, hi)
                continue
            if t.kind != TokenKind.IDENTIFIER:
                raise ParseError("unexpected enum constant")
            j += 1
            if j < hi and toks[j].text == "(":
                c = self._paren(j, "CONSTRUCTOR_CALL")
                self._expr(j + 1, c, False)
                j = c + 1
            if j < hi and toks[j].text == "{":
                b = self._brace(j, "ANONYMOUS_CLASS")
                self._class_body(j + 1, b)
                j = b + 1
            if j < hi and toks[j].text == ",":
                j += 1
        return hi

    def _class_body(self, lo: int, hi: int) -> None:
        toks = self.toks
        j = lo
        while j < hi:
            if toks[j].text == ";":
                j += 1
                continue
            j = self._class_member(j, hi)

    def _class_member(self, start: int, hi: int) -> int:
        toks = self.toks
        mods: list[str] = []
        j = start
        while j < hi:
            t = toks[j]
            if t.text == "@" and j + 1 < hi and toks[j + 1].text == "interface":
                break
            if t.text == "@":
                j = self._annotation(j, hi)
                continue
            if t.kind == TokenKind.KEYWORD and t.text in MODIFIER_KEYWORDS:
                mods.append(t.text)
                j += 1
                continue
            if t.text in _CONTEXTUAL_LOCAL:
                mods.append(t.text)
                j += 1
                continue
            break
        if j >= hi:
            return hi
        t = toks[j]
        txt = t.text

        if txt in ("class", "enum", "interface") and t.kind == TokenKind.KEYWORD:
            return self._type_decl(j, hi)
        if txt == "@" and j + 1 < hi and toks[j + 1].text == "interface":
            return self._type_decl(j + 1, hi)
        if (
            txt == "record"
            and t.kind == TokenKind.IDENTIFIER
            and j + 2 < hi
            and toks[j + 1].kind == TokenKind.IDENTIFIER
            and toks[j + 2].text in ("(", "<")
        ):
            return self._type_decl(j, hi)

        if txt == "{":
            tag = "STATIC_INIT" if "static" in mods else "INSTANCE_INIT"
            c = self._brace(j, tag)
            self._block(j + 1, c, False)
            return c + 1

        if txt == "<":
            g = match_angle(toks, j)
            if g is None:
                raise ParseError("malformed type parameters")
            j = g
            if j >= hi:
                return hi
            t = toks[j]

        st = scan_type(toks, j)
        if st is None:
            raise ParseError("unrecognized member")
        end, _ = st
        if end < hi and toks[end].text == "(":
            # constructor: the scanned "type" was the class name
            c = self._paren(end, "METHOD_PARAMS")
            self._params(end + 1, c)
            return self._method_tail(c + 1, hi)
        if end < hi and toks[end].text == "{":
            # compact record constructor
            b = self._brace(end, "METHOD_BODY")
            self._block(end + 1, b, False)
            return b + 1
        if end >= hi or toks[end].kind != TokenKind.IDENTIFIER:
            raise ParseError("unrecognized member")
        name_end = end + 1
        if name_end < hi and toks[name_end].text == "(":
            c = self._paren(name_end, "METHOD_PARAMS")
            self._params(name_end + 1, c)
            return self._method_tail(c + 1, hi)
        return self._field_member(end, hi)

    def _params(self, lo: int, hi: int) -> None:
        toks = self.toks
        j = lo
        while j < hi:
            if toks[j].text == "@":
                j = self._annotation(j, hi)
            else:
                j += 1

    def _method_tail(self, j: int, hi: int) -> int:
        toks = self.toks
        while j < hi:
            txt = toks[j].text
            if txt == "{":
                b = self._brace(j, "METHOD_BODY")
                self._block(j + 1, b, False)
                return b + 1
            if txt == ";":
                self.tags[j] = "ABSTRACT_METHOD"
                return j + 1
            if txt == "@":
                j = self._annotation(j, hi)
                continue
            if txt == "default" and toks[j].kind == TokenKind.KEYWORD:
                s = self._find_semi(j + 1, hi)
                self._expr(j + 1, s, False)
                j = s
                continue
            j += 1
        return hi

    def _field_member(self, name_idx: int, hi: int) -> int:
        toks = self.toks
        j = name_idx
        while j < hi:
            if toks[j].kind != TokenKind.IDENTIFIER:
                raise ParseError("malformed field")
            j += 1
            while j + 1 < hi and toks[j].text == "[" and toks[j + 1].text == "]":
                j += 2
            if j < hi and toks[j].text == "=":
                lo = j + 1
                j = self._init_end(lo, hi)
                self._expr(lo, j, False)
            if j >= hi:
                return hi
            if toks[j].text == ",":
                j += 1
                continue
            if toks[j].text == ";":
                self.tags[j] = "FIELD"
                return j + 1
            raise ParseError("malformed field")
        return hi

    def _init_end(self, lo: int, hi: int) -> int:
        """End of a variable initializer: the ',' or ';' at depth zero."""
        toks = self.toks
        depth = 0
        j = lo
        while j < hi:
            txt = toks[j].text
            if txt in ("(", "[", "{"):
                depth += 1
            elif txt in (")", "]", "}"):
                depth -= 1
            elif depth == 0:
                if txt in (",", ";"):
                    return j
                if txt == "<" and j > lo and toks[j - 1].kind == TokenKind.IDENTIFIER:
                    g = match_angle(toks, j)
                    if g is not None and g < hi and toks[g].text in ("(", "::"):
                        j = g
                        continue
            j += 1
        return hi

    # -- expressions ------------------------------------------------------

    def _expr(self, lo: int, hi: int, in_switch: bool) -> None:
        toks = self.toks
        j = lo
        while j < hi:
            t = toks[j]
            txt = t.text

            if txt == "(":
                if self.tags[j] is None:
                    self._classify_paren(j, lo)
                j += 1
                continue

            if txt == "{":
                if self.tags[j] is not None:
                    j += 1
                    continue
                if j > lo and toks[j - 1].text == "->":
                    c = self._brace(j, "LAMBDA_BODY")
                    self._block(j + 1, c, False)
                    j = c + 1
                    continue
                self._brace(j, "ARRAY_INITIALIZER")
                j += 1
                continue

            if txt == "new":
                j = self._new_expr(j, hi)
                continue

            if txt == "@":
                j = self._annotation(j, hi)
                continue

            if txt == "switch" and t.kind == TokenKind.KEYWORD:
                j = self._switch(j, hi)
                continue

            if txt == "<" and j > lo and toks[j - 1].kind == TokenKind.IDENTIFIER:
                g = match_angle(toks, j)
                if g is not None and g < hi and toks[g].text in ("(", "::"):
                    if toks[g].text == "(":
                        self._paren(g, "METHOD_CALL")
                    j = g + 1
                    continue

            j += 1

    def _classify_paren(self, j: int, lo: int) -> None:
        toks = self.toks
        c = match_paren(toks, j)
        nxt = toks[c + 1] if c + 1 < len(toks) else None

        if nxt is not None and nxt.text == "->":
            self._pair(j, c, "LAMBDA_PARAMS")
            return
        if j > lo:
            prev = toks[j - 1]
            if prev.kind == TokenKind.KEYWORD and prev.text in ("super", "this"):
                self._pair(j, c, "SUPER_CALL")
                return
            if prev.kind == TokenKind.IDENTIFIER:
                self._pair(j, c, "METHOD_CALL")
                return
            if prev.text == ")":
                tag = "GROUPING" if self.tags[j - 1] == "CAST" else "METHOD_CALL"
                self._pair(j, c, tag)
                return
        if self._is_cast(j, c):
            self._pair(j, c, "CAST")
            return
        self._pair(j, c, "GROUPING")

    def _is_cast(self, j: int, c: int) -> bool:
        toks = self.toks
        if c + 1 >= len(toks):
            return False
        k = j + 1
        primitive = False
        while True:
            st = scan_type(toks, k)
            if st is None:
                return False
            if toks[k].text in PRIMITIVE_TYPES:
                primitive = True
            k = st[0]
            if k == c:
                break
            if toks[k].text == "&":
                k += 1
                continue
            return False
        nxt = toks[c + 1]
        if nxt.kind in (TokenKind.IDENTIFIER, TokenKind.LITERAL):
            return True
        if nxt.text in _CAST_NEXT:
            return True
        if primitive and nxt.text in ("-", "+"):
            return True
        return False

    def _new_expr(self, j: int, hi: int) -> int:
        toks = self.toks
        k = j + 1
        while k < hi and toks[k].text == "@":
            k = self._annotation(k, hi)
        if k < hi and toks[k].text in PRIMITIVE_TYPES:
            return k + 1
        if k >= hi or toks[k].kind != TokenKind.IDENTIFIER:
            return j + 1
        k += 1
        g = match_angle(toks, k) if k < hi and toks[k].text == "<" else None
        if g is not None:
            k = g
        while k + 1 < hi and toks[k].text == "." and toks[k + 1].kind == TokenKind.IDENTIFIER:
            k += 2
            g = match_angle(toks, k) if k < hi and toks[k].text == "<" else None
            if g is not None:
                k = g
        if k < hi and toks[k].text == "(":
            c = self._paren(k, "CONSTRUCTOR_CALL")
            self._expr(k + 1, c, False)
            if c + 1 < hi and toks[c + 1].text == "{":
                b = self._brace(c + 1, "ANONYMOUS_CLASS")
                self._class_body(c + 2, b)
                return b + 1
            return c + 1
        return k


def categorize(decl: MethodDecl | FieldDecl) -> list[str | None]:
    """Role tags for every terminator token of the declaration.

    Always total: every ';', brace, and paren token receives a tag, falling
    back to a generic one where the walker could not classify.
    """
    tagger = _Tagger(decl.tokens)
    try:
        if isinstance(decl, MethodDecl):
            tagger.method(decl)
        else:
            tagger.fielddecl(decl)
    except (ParseError, IndexError):
        pass
    tags = tagger.tags
    for i, tok in enumerate(decl.tokens):
        if tags[i] is not None:
            continue
        if tok.text == ";":
            tags[i] = "OTHER"
        elif tok.text in ("{", "}"):
            tags[i] = "PLAIN_BLOCK"
        elif tok.text in ("(", ")"):
            tags[i] = "OTHER"
    return tags


def elided_indices(decl: MethodDecl | FieldDecl) -> frozenset[int]:
    """Token indices removed by the delimiter-elision heuristic."""
    if not isinstance(decl, MethodDecl):
        return frozenset()
    drop = set()
    for idx in (decl.param_open, decl.param_close, decl.body_open, decl.body_close):
        if idx is not None:
            drop.add(idx)
    return frozenset(drop)


def render(decl: MethodDecl | FieldDecl, config: RenderConfig) -> bytes:
    """File content for a declaration.

    Every line is LF-terminated; there is no trailing blank line.  Tagged
    terminator lines are '<token> <TAG>'.
    """
    lines: list[str] = []
    if config.include_javadoc:
        lines.extend(decl.javadoc_lines)
    if config.line_format is LineFormat.PLAIN:
        lines.extend(decl.plain_lines)
    else:
        tags = categorize(decl) if config.heuristic1 else None
        drop = elided_indices(decl) if config.heuristic2 else frozenset()
        for i, tok in enumerate(decl.tokens):
            if i in drop:
                continue
            if tags is not None and tags[i] is not None:
                lines.append(f"{tok.text} {tags[i]}")
            else:
                lines.append(tok.text)
    return "".join(line + "\n" for line in lines).encode("utf-8")
