"""Scanner backend for brace-delimited languages.

A tolerant byte-level lexer feeds a per-language function matcher. The
scanner never raises on malformed input; unbalanced braces become
diagnostics and already-closed functions are still reported.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from ...languages import LanguageId
from . import RawFunction

_IDENT_START = frozenset(
    b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$@~"
)
_IDENT_CONT = frozenset(
    b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_$"
)
_DIGITS = frozenset(b"0123456789")
_MULTI_PUNCT = (b"::", b"->", b"=>")

_CONTROL = frozenset(
    "if for while switch catch do else try finally return new delete typeof "
    "void in of with synchronized throw assert until unless case when "
    "foreach match sizeof using lock".split()
)

# a C declarator paren preceded by one of these is a type, not a name
_C_TYPE_WORDS = frozenset(
    "int char long short unsigned signed float double void bool size_t "
    "const static inline struct enum union register volatile auto".split()
)


@dataclass
class Token:
    kind: str  # ident | number | string | punct
    start: int
    end: int
    text: str


@dataclass
class Comment:
    start: int
    end: int
    kind: str  # line | block
    marker: str
    full_line: bool


@dataclass
class _Scope:
    kind: str  # type | function | block
    name: str | None = None
    extra: tuple[str, ...] = ()
    func: RawFunction | None = None


@dataclass
class _LexOptions:
    line_markers: tuple[bytes, ...] = (b"//",)
    nested_blocks: bool = False
    backtick: str | None = None  # "template" (js) or "raw" (go)
    hash_directive: bool = False  # c/cpp preprocessor lines
    rust_raw: bool = False
    php_heredoc: bool = False
    triple_quote: bool = False  # java text blocks
    virtual_semicolons: bool = False  # go/js newline statement breaks


_OPTIONS: dict[LanguageId, _LexOptions] = {
    LanguageId.JAVA: _LexOptions(triple_quote=True),
    LanguageId.JAVASCRIPT: _LexOptions(backtick="template", virtual_semicolons=True),
    LanguageId.GO: _LexOptions(backtick="raw", virtual_semicolons=True),
    LanguageId.PHP: _LexOptions(line_markers=(b"//", b"#"), php_heredoc=True),
    LanguageId.CSHARP: _LexOptions(),
    LanguageId.CPP: _LexOptions(hash_directive=True),
    LanguageId.C: _LexOptions(hash_directive=True),
    LanguageId.RUST: _LexOptions(line_markers=(b"///", b"//"), nested_blocks=True, rust_raw=True),
}

_TYPE_KEYWORDS: dict[LanguageId, frozenset[str]] = {
    LanguageId.JAVA: frozenset({"class", "interface", "enum", "record"}),
    LanguageId.CSHARP: frozenset({"class", "interface", "struct", "record", "namespace"}),
    LanguageId.JAVASCRIPT: frozenset({"class"}),
    LanguageId.PHP: frozenset({"class", "trait", "interface", "enum"}),
    LanguageId.CPP: frozenset({"class", "struct", "namespace"}),
    LanguageId.C: frozenset(),
    LanguageId.RUST: frozenset({"mod", "trait", "impl"}),
    LanguageId.GO: frozenset(),
}


def _mask_non_php(data: bytes) -> bytes:
    """Blank out bytes outside <?php ... ?> regions, keeping newlines.

    Input without any open tag is treated as bare code, so re-parsed
    snippets work.
    """
    if b"<?" not in data:
        return data
    out = bytearray(len(data))
    for i, b in enumerate(data):
        out[i] = b if b == 0x0A else 0x20
    pos = 0
    while True:
        start = data.find(b"<?php", pos)
        tag = 5
        if start < 0:
            # also accept a short open tag at file start
            if pos == 0 and data.startswith(b"<?"):
                start, tag = 0, 2
            else:
                break
        end = data.find(b"?>", start)
        if end < 0:
            end = len(data)
        out[start + tag:end] = data[start + tag:end]
        pos = end + 2
        if pos >= len(data):
            break
    return bytes(out)


class _Lexer:
    def __init__(self, data: bytes, opts: _LexOptions):
        self.data = data
        self.opts = opts
        self.tokens: list[Token] = []
        self.comments: list[Comment] = []
        self.diagnostics: list[str] = []

    def run(self) -> None:
        data = self.data
        n = len(data)
        i = 0
        line_start = 0
        bracket_depth = 0
        while i < n:
            b = data[i]
            if b == 0x0A:
                if (
                    self.opts.virtual_semicolons
                    and bracket_depth == 0
                    and self.tokens
                    and self._breaks_statement(self.tokens[-1])
                ):
                    self.tokens.append(Token("punct", i, i, ";"))
                i += 1
                line_start = i
                continue
            if b in b" \t\r\x0c":
                i += 1
                continue
            if self.opts.hash_directive and b == 0x23 and self._only_ws(line_start, i):
                i = self._skip_directive(i)
                self.tokens.append(Token("punct", i, i, ";"))
                continue
            marker = self._line_marker_at(i)
            if marker is not None:
                end = data.find(b"\n", i)
                end = n if end < 0 else end
                self.comments.append(
                    Comment(i, end, "line", marker.decode(), self._only_ws(line_start, i))
                )
                i = end
                continue
            if data[i:i + 2] == b"/*":
                start = i
                marker = "/**" if data[i:i + 3] == b"/**" and data[i:i + 4] != b"/**/" else "/*"
                i = self._skip_block_comment(i)
                self.comments.append(
                    Comment(start, i, "block", marker, self._only_ws(line_start, start))
                )
                continue
            if self.opts.php_heredoc and data[i:i + 3] == b"<<<":
                i = self._skip_heredoc(i)
                self.tokens.append(Token("string", i, i, ""))
                continue
            if self.opts.rust_raw and b in b"rb" and self._rust_raw_at(i):
                start = i
                i = self._skip_rust_raw(i)
                self.tokens.append(Token("string", start, i, ""))
                continue
            if b == 0x60 and self.opts.backtick:  # `
                start = i
                if self.opts.backtick == "raw":
                    end = data.find(b"`", i + 1)
                    i = n if end < 0 else end + 1
                else:
                    i = self._skip_template(i)
                self.tokens.append(Token("string", start, i, ""))
                continue
            if b == 0x27 and self.opts.rust_raw and not self._rust_char_at(i):
                # lifetime marker, not a char literal
                self.tokens.append(Token("punct", i, i + 1, "'"))
                i += 1
                continue
            if b in b"\"'":
                start = i
                i = self._skip_string(i)
                self.tokens.append(Token("string", start, i, ""))
                continue
            if b in _IDENT_START or b >= 0x80:
                start = i
                i += 1
                while i < n and (data[i] in _IDENT_CONT or data[i] >= 0x80):
                    i += 1
                self.tokens.append(Token("ident", start, i, data[start:i].decode("utf-8", "replace")))
                continue
            if b in _DIGITS:
                start = i
                i += 1
                while i < n and (data[i] in _IDENT_CONT or data[i] == 0x2E):
                    i += 1
                self.tokens.append(Token("number", start, i, ""))
                continue
            matched = None
            for mp in _MULTI_PUNCT:
                if data[i:i + len(mp)] == mp:
                    matched = mp
                    break
            if matched:
                self.tokens.append(Token("punct", i, i + len(matched), matched.decode()))
                i += len(matched)
                continue
            if b in b"([{":
                bracket_depth += 1
            elif b in b")]}":
                bracket_depth = max(0, bracket_depth - 1)
            self.tokens.append(Token("punct", i, i + 1, chr(b)))
            i += 1

    @staticmethod
    def _breaks_statement(tok: Token) -> bool:
        if tok.kind in ("number", "string"):
            return True
        if tok.kind == "ident":
            return tok.text not in (
                "const", "let", "var", "new", "typeof", "in", "of", "case",
                "else", "func", "package", "import", "type", "go", "defer",
                "export", "default", "async", "await", "extends", "implements",
            )
        return tok.text in (")", "]", "}", "++", "--")

    def _only_ws(self, line_start: int, pos: int) -> bool:
        return all(b in b" \t" for b in self.data[line_start:pos])

    def _line_marker_at(self, i: int) -> bytes | None:
        for marker in self.opts.line_markers:
            if self.data[i:i + len(marker)] == marker:
                if marker == b"#" and self.data[i:i + 2] == b"#[":
                    return None  # php attribute
                return marker
        return None

    def _skip_directive(self, i: int) -> int:
        data, n = self.data, len(self.data)
        while i < n:
            if data[i] == 0x0A:
                if i > 0 and data[i - 1] == 0x5C:
                    i += 1
                    continue
                return i
            i += 1
        return n

    def _skip_block_comment(self, i: int) -> int:
        data, n = self.data, len(self.data)
        depth = 1
        i += 2
        while i < n and depth:
            if self.opts.nested_blocks and data[i:i + 2] == b"/*":
                depth += 1
                i += 2
            elif data[i:i + 2] == b"*/":
                depth -= 1
                i += 2
            else:
                i += 1
        return i

    def _skip_string(self, i: int) -> int:
        data, n = self.data, len(self.data)
        quote = data[i]
        if self.opts.triple_quote and data[i:i + 3] == b'"""':
            end = data.find(b'"""', i + 3)
            return n if end < 0 else end + 3
        i += 1
        while i < n:
            b = data[i]
            if b == 0x5C:
                i += 2
                continue
            if b == quote:
                return i + 1
            if b == 0x0A and quote == 0x27 and not self.opts.rust_raw:
                return i  # unterminated char/short string: stop at newline
            i += 1
        return n

    def _skip_template(self, i: int) -> int:
        data, n = self.data, len(self.data)
        i += 1
        while i < n:
            b = data[i]
            if b == 0x5C:
                i += 2
                continue
            if b == 0x60:
                return i + 1
            if data[i:i + 2] == b"${":
                i = self._skip_interpolation(i + 2)
                continue
            i += 1
        return n

    def _skip_interpolation(self, i: int) -> int:
        data, n = self.data, len(self.data)
        depth = 1
        while i < n and depth:
            b = data[i]
            if b in b"\"'":
                i = self._skip_string(i)
                continue
            if b == 0x60:
                i = self._skip_template(i)
                continue
            if b == 0x7B:
                depth += 1
            elif b == 0x7D:
                depth -= 1
            i += 1
        return i

    def _skip_heredoc(self, i: int) -> int:
        data, n = self.data, len(self.data)
        j = i + 3
        while j < n and data[j] in b" \t":
            j += 1
        quoted = j < n and data[j] in b"'\""
        if quoted:
            j += 1
        tag_start = j
        while j < n and (data[j] in _IDENT_CONT):
            j += 1
        tag = data[tag_start:j]
        if not tag:
            return i + 3
        pos = data.find(b"\n", j)
        if pos < 0:
            return n
        while pos < n:
            line_end = data.find(b"\n", pos + 1)
            line_end = n if line_end < 0 else line_end
            line = data[pos + 1:line_end].strip(b" \t;,")
            if line == tag:
                return line_end
            pos = line_end
        return n

    def _rust_char_at(self, i: int) -> bool:
        data = self.data
        if data[i + 1:i + 2] == b"\\":
            return True
        return data[i + 2:i + 3] == b"'"

    def _rust_raw_at(self, i: int) -> bool:
        data = self.data
        j = i
        if data[j:j + 1] == b"b":
            j += 1
        if data[j:j + 1] != b"r":
            return False
        j += 1
        while data[j:j + 1] == b"#":
            j += 1
        return data[j:j + 1] == b'"'

    def _skip_rust_raw(self, i: int) -> int:
        data, n = self.data, len(self.data)
        j = i
        if data[j:j + 1] == b"b":
            j += 1
        j += 1  # r
        hashes = 0
        while data[j:j + 1] == b"#":
            hashes += 1
            j += 1
        j += 1  # opening quote
        closer = b'"' + b"#" * hashes
        end = data.find(closer, j)
        return n if end < 0 else end + len(closer)


def _depth0_positions(pending: list[Token]) -> list[int]:
    """Indices of pending tokens at bracket depth 0 (brackets themselves at
    depth 0 when opening / after closing)."""
    out = []
    depth = 0
    for idx, tok in enumerate(pending):
        if tok.kind == "punct" and tok.text in ")]}":
            depth -= 1
        if depth == 0:
            out.append(idx)
        if tok.kind == "punct" and tok.text in "([{":
            depth += 1
    return out


def _net_depth(pending: list[Token]) -> int:
    depth = 0
    for tok in pending:
        if tok.kind != "punct":
            continue
        if tok.text in "([{":
            depth += 1
        elif tok.text in ")]}":
            depth -= 1
    return depth


def _matching_paren(pending: list[Token], open_idx: int) -> int:
    depth = 0
    for idx in range(open_idx, len(pending)):
        text = pending[idx].text
        if pending[idx].kind != "punct":
            continue
        if text in "([{":
            depth += 1
        elif text in ")]}":
            depth -= 1
            if depth == 0:
                return idx
    return -1


class BraceBackend:
    def __init__(self, language: LanguageId):
        self.language = language
        self.opts = _OPTIONS[language]

    def functions(self, data: bytes) -> tuple[list[RawFunction], list[str]]:
        lex_data = _mask_non_php(data) if self.language is LanguageId.PHP else data
        lexer = _Lexer(lex_data, self.opts)
        lexer.run()
        functions, diagnostics = self._walk(lexer.tokens)
        diagnostics = lexer.diagnostics + diagnostics
        self._attach_docs(data, functions, lexer.tokens, lexer.comments)
        functions.sort(key=lambda f: f.start)
        return functions, diagnostics

    # -- scope walking ------------------------------------------------------

    def _walk(self, tokens: list[Token]) -> tuple[list[RawFunction], list[str]]:
        scopes: list[_Scope] = []
        pending: list[Token] = []
        done: list[RawFunction] = []
        diagnostics: list[str] = []
        for tok in tokens:
            if tok.kind == "punct" and tok.text == ";":
                pending.clear()
                continue
            if (
                tok.kind == "punct"
                and tok.text == ":"
                and len(pending) == 1
                and pending[0].text in ("public", "private", "protected", "default")
            ):
                pending.clear()  # access label
                continue
            if tok.kind == "punct" and tok.text == "{":
                scopes.append(self._classify(pending, scopes, tok))
                pending.clear()
                continue
            if tok.kind == "punct" and tok.text == "}":
                pending.clear()
                if not scopes:
                    diagnostics.append(f"unbalanced '}}' at byte {tok.start}")
                    continue
                scope = scopes.pop()
                if scope.func is not None:
                    scope.func.end = tok.end
                    done.append(scope.func)
                continue
            pending.append(tok)
        if any(s.func is not None for s in scopes):
            diagnostics.append("unterminated function at end of file")
        return done, diagnostics

    def _scope_chain(self, scopes: list[_Scope]) -> tuple[str, ...]:
        chain: list[str] = []
        for scope in scopes:
            if scope.kind in ("type", "function") and scope.name:
                chain.extend(scope.extra)
                chain.append(scope.name)
        return tuple(chain)

    def _classify(self, pending: list[Token], scopes: list[_Scope], brace: Token) -> _Scope:
        type_scope = self._match_type(pending)
        if type_scope is not None:
            return type_scope
        matched = self._match_function(pending, scopes, brace)
        if matched is not None:
            fn, extra = matched
            return _Scope("function", name=fn.name, extra=extra, func=fn)
        return _Scope("block")

    # -- type scopes --------------------------------------------------------

    def _match_type(self, pending: list[Token]) -> _Scope | None:
        if (
            self.language in (LanguageId.CPP, LanguageId.C)
            and len(pending) == 2
            and pending[0].text == "extern"
            and pending[1].kind == "string"
        ):
            return _Scope("type")  # extern "C" linkage block, transparent
        keywords = _TYPE_KEYWORDS[self.language]
        if not keywords:
            if self.language is LanguageId.GO:
                return self._match_go_type(pending)
            return None
        d0 = _depth0_positions(pending)
        for pos in d0:
            tok = pending[pos]
            if tok.kind != "ident" or tok.text not in keywords:
                continue
            if any(p.text == "=" and p.kind == "punct" for p in (pending[i] for i in d0)):
                return None
            if self.language is LanguageId.RUST and tok.text == "impl":
                return _Scope("type", name=self._rust_impl_name(pending, pos))
            if tok.text == "record" and not self._java_record_like(pending, pos):
                continue
            name = None
            if pos + 1 < len(pending) and pending[pos + 1].kind == "ident":
                name = pending[pos + 1].text
            if self.language is LanguageId.CSHARP and tok.text == "namespace":
                name = ".".join(t.text for t in pending[pos + 1:] if t.kind == "ident")
            return _Scope("type", name=name)
        return None

    def _match_go_type(self, pending: list[Token]) -> _Scope | None:
        if (
            len(pending) >= 3
            and pending[0].text == "type"
            and pending[1].kind == "ident"
            and any(t.text in ("struct", "interface") for t in pending)
        ):
            return _Scope("type", name=pending[1].text)
        return None

    def _java_record_like(self, pending: list[Token], pos: int) -> bool:
        if pos + 1 >= len(pending) or pending[pos + 1].kind != "ident":
            return False
        if pos + 2 >= len(pending):
            return True  # record Name {
        return pending[pos + 2].text in ("(", "<", "implements", "extends")

    def _rust_impl_name(self, pending: list[Token], pos: int) -> str | None:
        idents = []
        after_for = False
        angle = 0
        for tok in pending[pos + 1:]:
            if tok.kind == "punct":
                if tok.text == "<":
                    angle += 1
                elif tok.text == ">":
                    angle = max(0, angle - 1)
                continue
            if tok.kind == "ident" and angle == 0:
                if tok.text == "for":
                    after_for = True
                    idents.clear()
                elif tok.text == "where":
                    break
                elif tok.text != "dyn":
                    idents.append(tok.text)
                    if after_for:
                        break
        return idents[0] if idents else None

    # -- function matching --------------------------------------------------

    def _match_function(
        self, pending: list[Token], scopes: list[_Scope], brace: Token
    ) -> tuple[RawFunction, tuple[str, ...]] | None:
        lang = self.language
        if lang is LanguageId.GO:
            raw = self._match_go(pending)
        elif lang in (LanguageId.JAVA, LanguageId.CSHARP):
            raw = self._match_java(pending, scopes)
        elif lang is LanguageId.JAVASCRIPT:
            raw = self._match_js(pending, scopes)
        elif lang is LanguageId.PHP:
            raw = self._match_php(pending)
        elif lang in (LanguageId.CPP, LanguageId.C):
            raw = self._match_c(pending, scopes)
        elif lang is LanguageId.RUST:
            raw = self._match_rust(pending)
        else:  # pragma: no cover
            raw = None
        if raw is None:
            return None
        name, extra, start, sig_start = raw
        fn = RawFunction(
            name=name,
            scope=self._scope_chain(scopes) + extra,
            start=start,
            end=brace.end,
            sig_end=brace.start,
            depth=len(scopes),
            sig_start=sig_start if sig_start != start else None,
        )
        return fn, extra

    def _match_go(self, pending: list[Token]) -> tuple[str, tuple[str, ...], int, int] | None:
        if not pending or pending[0].text != "func":
            return None
        idx = 1
        extra: tuple[str, ...] = ()
        if idx < len(pending) and pending[idx].text == "(":
            close = _matching_paren(pending, idx)
            if close < 0:
                return None
            recv = [t.text for t in pending[idx + 1:close] if t.kind == "ident"]
            if recv:
                extra = (recv[-1],)
            idx = close + 1
        if idx >= len(pending) or pending[idx].kind != "ident":
            return None  # anonymous literal
        return pending[idx].text, extra, pending[0].start, pending[0].start

    def _match_java(
        self, pending: list[Token], scopes: list[_Scope]
    ) -> tuple[str, tuple[str, ...], int, int] | None:
        # type bodies hold methods; the top level holds re-parsed snippets
        if scopes and scopes[-1].kind != "type":
            return None
        if not pending or _net_depth(pending) != 0:
            return None
        d0 = _depth0_positions(pending)
        # skip leading annotations/attributes when locating the parameter list
        idx = 0
        while idx < len(pending):
            tok = pending[idx]
            if tok.kind == "ident" and tok.text.startswith("@"):
                idx += 1
                if idx < len(pending) and pending[idx].text == "(":
                    close = _matching_paren(pending, idx)
                    if close < 0:
                        return None
                    idx = close + 1
                continue
            if tok.text == "[" and self.language is LanguageId.CSHARP:
                close = _matching_paren(pending, idx)
                if close < 0:
                    return None
                idx = close + 1
                continue
            break
        skip_until = idx
        open_idx = next(
            (
                i
                for i in d0
                if i >= skip_until and pending[i].kind == "punct" and pending[i].text == "("
            ),
            -1,
        )
        if open_idx <= 0:
            return None
        name_tok = pending[open_idx - 1]
        if name_tok.kind != "ident" or name_tok.text in _CONTROL:
            return None
        if open_idx >= 2 and pending[open_idx - 2].text == "new":
            return None
        for i in d0:
            if skip_until <= i < open_idx and pending[i].text in ("=", "=>", "->"):
                return None
        close_idx = _matching_paren(pending, open_idx)
        if close_idx < 0:
            return None
        for tok in pending[close_idx + 1:]:
            if tok.kind == "punct" and tok.text in ("=", "=>", "->"):
                return None
        sig_start = pending[skip_until].start if skip_until < len(pending) else pending[0].start
        return name_tok.text, (), pending[0].start, sig_start

    def _match_js(
        self, pending: list[Token], scopes: list[_Scope]
    ) -> tuple[str, tuple[str, ...], int, int] | None:
        if not pending:
            return None
        d0 = _depth0_positions(pending)
        fn_kw = next((i for i in d0 if pending[i].text == "function"), -1)
        eq_idx = next(
            (i for i in d0 if pending[i].kind == "punct" and pending[i].text == "="), -1
        )
        if fn_kw >= 0:
            name = None
            j = fn_kw + 1
            if j < len(pending) and pending[j].text == "*":
                j += 1
            if j < len(pending) and pending[j].kind == "ident":
                name = pending[j].text
            elif 0 <= eq_idx < fn_kw:
                name = self._assignment_name(pending, eq_idx)
            if name is None:
                return None
            start_idx = fn_kw
            if 0 <= eq_idx < fn_kw:
                start_idx = 0
            else:
                while start_idx > 0 and pending[start_idx - 1].text in (
                    "async", "export", "default"
                ):
                    start_idx -= 1
            start = pending[start_idx].start
            return name, (), start, start
        if pending[-1].kind == "punct" and pending[-1].text == "=>":
            if eq_idx < 0:
                return None
            name = self._assignment_name(pending, eq_idx)
            if name is None:
                return None
            return name, (), pending[0].start, pending[0].start
        if not scopes or scopes[-1].kind == "type":
            if _net_depth(pending) != 0:
                return None  # brace sits inside a call's argument list
            open_idx = next(
                (i for i in d0 if pending[i].kind == "punct" and pending[i].text == "("), -1
            )
            if open_idx <= 0:
                return None
            name_tok = pending[open_idx - 1]
            if name_tok.kind != "ident" or name_tok.text in _CONTROL:
                return None
            for i in d0:
                if pending[i].text in ("=", "=>"):
                    return None
            return name_tok.text, (), pending[0].start, pending[0].start
        return None

    @staticmethod
    def _assignment_name(pending: list[Token], eq_idx: int) -> str | None:
        for tok in reversed(pending[:eq_idx]):
            if tok.kind == "ident" and tok.text not in ("const", "let", "var", "this", "export"):
                return tok.text
        return None

    def _match_php(self, pending: list[Token]) -> tuple[str, tuple[str, ...], int, int] | None:
        d0 = _depth0_positions(pending)
        fn_kw = next((i for i in d0 if pending[i].text == "function"), -1)
        if fn_kw < 0:
            return None
        j = fn_kw + 1
        if j < len(pending) and pending[j].text == "&":
            j += 1
        if j >= len(pending) or pending[j].kind != "ident":
            return None  # closure
        return pending[j].text, (), pending[0].start, pending[0].start

    def _match_c(
        self, pending: list[Token], scopes: list[_Scope]
    ) -> tuple[str, tuple[str, ...], int, int] | None:
        if scopes and scopes[-1].kind not in ("type",):
            return None  # only file/namespace/class level
        if not pending:
            return None
        d0 = _depth0_positions(pending)
        for i in d0:
            if pending[i].kind == "punct" and pending[i].text == "=":
                return None
        open_idx = next(
            (i for i in d0 if pending[i].kind == "punct" and pending[i].text == "("), -1
        )
        if open_idx <= 0:
            return None
        close_idx = _matching_paren(pending, open_idx)
        if close_idx < 0:
            return None
        # collect qualified name parts before the parameter list
        parts: list[str] = []
        k = open_idx - 1
        if pending[k].kind != "ident":
            return None
        while k >= 0:
            tok = pending[k]
            if tok.kind == "ident":
                name = tok.text
                if k >= 1 and pending[k - 1].text == "~":
                    name = "~" + name
                    k -= 1
                parts.insert(0, name)
                if k >= 1 and pending[k - 1].text == "::":
                    k -= 2
                    continue
            break
        if not parts or parts[-1] in _CONTROL or parts[-1] in _C_TYPE_WORDS:
            return None
        trailing = pending[close_idx + 1:]
        for tok in trailing:
            if tok.kind == "punct" and tok.text in ("=", ";"):
                return None
        return parts[-1], tuple(parts[:-1]), pending[0].start, pending[0].start

    def _match_rust(self, pending: list[Token]) -> tuple[str, tuple[str, ...], int, int] | None:
        d0 = _depth0_positions(pending)
        fn_idx = next((i for i in d0 if pending[i].text == "fn"), -1)
        if fn_idx < 0:
            return None
        if fn_idx + 1 >= len(pending) or pending[fn_idx + 1].kind != "ident":
            return None
        sig_idx = fn_idx
        modifiers = {"pub", "const", "async", "unsafe", "extern", "crate", "super", "self", "in"}
        while sig_idx > 0:
            prev = pending[sig_idx - 1]
            if prev.kind == "ident" and prev.text in modifiers:
                sig_idx -= 1
            elif prev.kind == "string" or prev.text in ("(", ")"):
                sig_idx -= 1
            else:
                break
        start_idx = sig_idx
        while start_idx > 0 and pending[start_idx - 1].text == "]":
            # fold attribute groups #[...] into the span
            depth = 0
            j = start_idx - 1
            while j >= 0:
                if pending[j].text == "]":
                    depth += 1
                elif pending[j].text == "[":
                    depth -= 1
                    if depth == 0:
                        break
                j -= 1
            if j > 0 and pending[j - 1].text == "#":
                start_idx = j - 1
            else:
                break
        return pending[fn_idx + 1].text, (), pending[start_idx].start, pending[sig_idx].start

    # -- doc comment attachment --------------------------------------------

    def _attach_docs(
        self,
        data: bytes,
        functions: list[RawFunction],
        tokens: list[Token],
        comments: list[Comment],
    ) -> None:
        groups = self._doc_groups(data, comments)
        if not groups:
            return
        group_ends = [g[1] for g in groups]
        token_starts = [t.start for t in tokens]
        line_index = _make_line_lookup(data)
        for fn in functions:
            gi = bisect.bisect_right(group_ends, fn.start) - 1
            if gi < 0:
                continue
            g_start, g_end = groups[gi]
            gap = line_index(fn.start) - line_index(g_end - 1)
            if gap > 1:
                continue
            lo = bisect.bisect_left(token_starts, g_end)
            hi = bisect.bisect_left(token_starts, fn.start)
            if lo != hi:
                continue
            fn.doc_span = (g_start, g_end)

    def _doc_groups(self, data: bytes, comments: list[Comment]) -> list[tuple[int, int]]:
        """Merge full-line comments into doc candidate groups (byte spans)."""
        line_index = _make_line_lookup(data)
        groups: list[tuple[int, int]] = []
        run_start = run_end = -1
        run_line = -2
        rust = self.language is LanguageId.RUST

        def flush():
            nonlocal run_start
            if run_start >= 0:
                groups.append((run_start, run_end))
            run_start = -1

        for c in comments:
            if not c.full_line:
                flush()
                continue
            if c.kind == "block":
                flush()
                if not rust or c.marker == "/**":
                    groups.append((c.start, c.end))
                run_line = -2
                continue
            if rust and not c.marker.startswith("///"):
                flush()
                continue
            c_line = line_index(c.start)
            if run_start >= 0 and c_line == run_line + 1:
                run_end = c.end
                run_line = line_index(c.end - 1)
            else:
                flush()
                run_start, run_end = c.start, c.end
                run_line = line_index(c.end - 1)
        flush()
        groups.sort(key=lambda g: g[1])
        return groups


def _make_line_lookup(data: bytes):
    starts = [0]
    for i, b in enumerate(data):
        if b == 0x0A:
            starts.append(i + 1)

    def lookup(offset: int) -> int:
        return bisect.bisect_right(starts, offset)

    return lookup
