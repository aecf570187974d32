"""Line-oriented scanner for Ruby method definitions.

Ruby blocks close with `end`, so the scanner tracks every construct that
opens an implicit block (class, module, def, conditional headers, `do`)
and pops the stack on each `end`. Strings, heredocs, and comments are
stripped per line before keyword matching.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass

from . import RawFunction

_KEYWORD_RE = re.compile(
    r"(?<![.:@$\w])(def|class|module|if|unless|case|while|until|for|begin|do|end)(?![:\w])"
)
_NAME_RE = re.compile(
    r"(self\s*\.\s*)?(\[\]=?|<=>|===|==|!=|<<|>>|[+\-*/%^&|~]|[<>]=?|"
    r"[A-Za-z_][A-Za-z0-9_]*[?!]?=?)"
)
_HEREDOC_RE = re.compile(r"<<[-~]?(['\"`]?)([A-Za-z_][A-Za-z0-9_]*)\1")
_OPENER_PREV = frozenset({"=", ";", "(", "||", "&&", "and", "or", "then",
                          "else", "elsif"})


@dataclass
class _Open:
    kind: str  # def | type | block
    name: str | None = None
    start: int = 0
    sig_end: int = 0
    depth: int = 0


def _strip_line(line: str) -> tuple[str, bool]:
    """Blank out string literals and comments, keeping offsets stable.

    Returns the cleaned line and whether it is a full-line comment.
    """
    out = list(line)
    i = 0
    n = len(line)
    stripped_is_comment = line.lstrip().startswith("#")
    while i < n:
        ch = line[i]
        if ch in "\"'":
            j = i + 1
            while j < n:
                if line[j] == "\\":
                    j += 2
                    continue
                if line[j] == ch:
                    break
                j += 1
            for k in range(i, min(j + 1, n)):
                out[k] = " "
            i = min(j + 1, n)
            continue
        if ch == "#":
            if i + 1 < n and line[i + 1] == "{":
                i += 1
                continue
            for k in range(i, n):
                out[k] = " "
            break
        i += 1
    return "".join(out), stripped_is_comment


class RubyBackend:
    def functions(self, data: bytes) -> tuple[list[RawFunction], list[str]]:
        text = data.decode("latin-1")
        lines = text.split("\n")
        line_starts = [0]
        for line in lines[:-1]:
            line_starts.append(line_starts[-1] + len(line) + 1)

        stack: list[_Open] = []
        done: list[RawFunction] = []
        diagnostics: list[str] = []
        comment_lines: list[tuple[int, int, int]] = []  # (line_no, start, end)
        block_comment: tuple[int, int] | None = None  # (start_line, start_offset)
        heredoc_queue: list[str] = []

        def scope_chain() -> tuple[str, ...]:
            return tuple(o.name for o in stack if o.name)

        for line_no, line in enumerate(lines, start=1):
            offset = line_starts[line_no - 1]
            stripped = line.strip()

            if heredoc_queue:
                if stripped == heredoc_queue[0] or stripped.rstrip(",;") == heredoc_queue[0]:
                    heredoc_queue.pop(0)
                continue
            if block_comment is not None:
                if stripped.startswith("=end"):
                    start_line, start_off = block_comment
                    end_off = offset + len(line)
                    comment_lines.extend(
                        (ln, start_off if ln == start_line else offset, end_off)
                        for ln in range(start_line, line_no + 1)
                    )
                    # collapse to one run entry per covered line keeps
                    # adjacency logic uniform; spans are fixed below
                    block_comment = None
                continue
            if line.startswith("=begin"):
                block_comment = (line_no, offset)
                continue

            cleaned, is_comment = _strip_line(line)
            if is_comment:
                if not (line_no == 1 and stripped.startswith("#!")):
                    first = len(line) - len(line.lstrip())
                    comment_lines.append((line_no, offset + first, offset + len(line.rstrip())))
                continue

            for match in _HEREDOC_RE.finditer(cleaned):
                prev = cleaned[:match.start()].rstrip()[-1:]
                if prev.isdigit():  # numeric left shift
                    continue
                heredoc_queue.append(match.group(2))

            tokens = list(_KEYWORD_RE.finditer(cleaned))
            line_kw = [m.group(1) for m in tokens]
            for ti, match in enumerate(tokens):
                word = match.group(1)
                pos = offset + match.start()
                if word == "end":
                    if not stack:
                        diagnostics.append(f"unmatched 'end' at line {line_no}")
                        continue
                    opened = stack.pop()
                    if opened.kind == "def":
                        fn = RawFunction(
                            name=opened.name or "",
                            scope=scope_chain(),
                            start=opened.start,
                            end=offset + match.end(),
                            sig_end=opened.sig_end,
                            depth=opened.depth,
                        )
                        done.append(fn)
                    continue
                if word == "def":
                    head = self._parse_def(cleaned, line, match.end(), offset)
                    if head is None:
                        continue
                    name, sig_end, endless = head
                    if endless:
                        done.append(
                            RawFunction(
                                name=name,
                                scope=scope_chain(),
                                start=pos,
                                end=offset + len(line.rstrip()),
                                sig_end=sig_end,
                                depth=len(stack),
                            )
                        )
                        continue
                    stack.append(_Open("def", name, pos, sig_end, len(stack)))
                    continue
                if word in ("class", "module"):
                    rest = cleaned[match.end():].lstrip()
                    if word == "class" and rest.startswith("<<"):
                        stack.append(_Open("type"))
                        continue
                    m = re.match(r"[A-Z][A-Za-z0-9_:]*", rest)
                    stack.append(_Open("type", m.group(0).split("::")[-1] if m else None))
                    continue
                if word in ("if", "unless", "while", "until"):
                    before = cleaned[:match.start()].rstrip()
                    prev = before.rsplit(None, 1)[-1] if before else ""
                    if before == "" or prev in _OPENER_PREV or prev[-1:] in "=(;":
                        stack.append(_Open("block"))
                    continue
                if word == "do":
                    if any(k in ("while", "until", "for") for k in line_kw[:ti]):
                        continue
                    stack.append(_Open("block"))
                    continue
                if word in ("case", "for", "begin"):
                    stack.append(_Open("block"))
                    continue

        if any(o.kind == "def" for o in stack):
            diagnostics.append("unterminated method at end of file")

        self._attach_docs(done, comment_lines, line_starts, data)
        done.sort(key=lambda f: f.start)
        return done, diagnostics

    @staticmethod
    def _parse_def(cleaned: str, line: str, after_def: int, offset: int):
        rest = cleaned[after_def:]
        pad = len(rest) - len(rest.lstrip())
        m = _NAME_RE.match(rest.lstrip())
        if m is None:
            return None
        name = m.group(2)
        name_end = after_def + pad + m.end()
        # setter suffix '=' only binds when directly followed by '('
        if name.endswith("=") and not name.endswith(("==", "<=", ">=", "!=")):
            nxt = cleaned[name_end:name_end + 1]
            if nxt != "(":
                name = name[:-1]
                name_end -= 1
        i = name_end
        if cleaned[i:i + 1] == "(":
            depth = 0
            while i < len(cleaned):
                if cleaned[i] == "(":
                    depth += 1
                elif cleaned[i] == ")":
                    depth -= 1
                    if depth == 0:
                        i += 1
                        break
                i += 1
        tail = cleaned[i:]
        eq = re.match(r"\s*=[^=>]", tail)
        if eq is not None:
            return name, offset + i, True  # endless definition
        semi = tail.find(";")
        sig_end = offset + (i + semi if semi >= 0 else len(line.rstrip()))
        return name, sig_end, False

    @staticmethod
    def _attach_docs(done, comment_lines, line_starts, data: bytes) -> None:
        if not comment_lines:
            return
        by_line = {ln: (s, e) for ln, s, e in comment_lines}
        for fn in done:
            def_line = bisect.bisect_right(line_starts, fn.start)
            prev = def_line - 1
            if prev not in by_line:
                continue
            last = prev
            first = prev
            while (first - 1) in by_line:
                first -= 1
            fn.doc_span = (by_line[first][0], by_line[last][1])
