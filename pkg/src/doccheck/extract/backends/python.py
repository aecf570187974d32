"""Python backend built on the stdlib ast parser.

ast col_offsets are byte offsets into the UTF-8 encoding of each line, which
is exactly what byte spans need.
"""

from __future__ import annotations

import ast

from . import RawFunction


class _LineIndex:
    def __init__(self, data: bytes):
        self.starts = [0]
        for i, byte in enumerate(data):
            if byte == 0x0A:
                self.starts.append(i + 1)

    def offset(self, lineno: int, col: int) -> int:
        return self.starts[lineno - 1] + col


def _header_colon_end(data: bytes, start: int, body_start: int) -> int:
    """Byte offset just past the colon that terminates the def header."""
    depth = 0
    i = start
    last_colon = -1
    while i < body_start:
        b = data[i]
        if b in b"([{":
            depth += 1
        elif b in b")]}":
            depth -= 1
        elif b == 0x23:  # '#'
            while i < body_start and data[i] != 0x0A:
                i += 1
            continue
        elif b in b"\"'":
            closer = data[i:i + 3] if data[i:i + 3] in (b'"""', b"'''") else data[i:i + 1]
            i += len(closer)
            while i < body_start:
                if data[i] == 0x5C:
                    i += 2
                    continue
                if data[i:i + len(closer)] == closer:
                    i += len(closer)
                    break
                i += 1
            continue
        elif b == 0x3A and depth == 0:  # ':'
            last_colon = i
        i += 1
    return last_colon + 1 if last_colon >= 0 else body_start


class PythonBackend:
    def functions(self, data: bytes) -> tuple[list[RawFunction], list[str]]:
        text = data.decode("utf-8")
        try:
            tree = ast.parse(text)
            return self._collect(data, text, tree), []
        except SyntaxError as exc:
            return self._salvage(data, text, exc)

    def _salvage(self, data: bytes, text: str, exc: SyntaxError):
        """Parse top-level blocks independently, skipping broken ones."""
        diagnostics = [f"syntax error at line {exc.lineno}: {exc.msg}"]
        lines = text.split("\n")
        # block boundaries: lines with content at column 0
        starts = [i for i, ln in enumerate(lines) if ln and not ln[0].isspace()]
        starts.append(len(lines))
        functions: list[RawFunction] = []
        index = _LineIndex(data)
        for i in range(len(starts) - 1):
            chunk_lines = lines[starts[i]:starts[i + 1]]
            chunk = "\n".join(chunk_lines)
            try:
                tree = ast.parse(chunk)
            except SyntaxError:
                continue
            chunk_data = chunk.encode("utf-8")
            base = index.offset(starts[i] + 1, 0)
            for fn in self._collect(chunk_data, chunk, tree):
                functions.append(
                    RawFunction(
                        name=fn.name,
                        scope=fn.scope,
                        start=fn.start + base,
                        end=fn.end + base,
                        sig_end=fn.sig_end + base,
                        depth=fn.depth,
                        doc_span=(
                            (fn.doc_span[0] + base, fn.doc_span[1] + base)
                            if fn.doc_span
                            else None
                        ),
                        insert_at=(fn.insert_at + base if fn.insert_at is not None else None),
                        indent=fn.indent,
                    )
                )
        return functions, diagnostics

    def _collect(self, data: bytes, text: str, tree: ast.Module) -> list[RawFunction]:
        index = _LineIndex(data)
        out: list[RawFunction] = []

        def visit(node: ast.AST, scope: tuple[str, ...], depth: int) -> None:
            for child in ast.iter_child_nodes(node):
                if isinstance(child, (ast.FunctionDef, ast.AsyncFunctionDef)):
                    out.append(self._function(data, index, child, scope, depth))
                    visit(child, scope + (child.name,), depth + 1)
                elif isinstance(child, ast.ClassDef):
                    visit(child, scope + (child.name,), depth)
                else:
                    visit(child, scope, depth)

        visit(tree, (), 0)
        out.sort(key=lambda f: f.start)
        return out

    def _function(self, data, index, node, scope, depth) -> RawFunction:
        start = index.offset(node.lineno, node.col_offset)
        end = index.offset(node.end_lineno, node.end_col_offset)
        first_stmt = node.body[0]
        body_start = index.offset(first_stmt.lineno, first_stmt.col_offset)
        sig_end = _header_colon_end(data, start, body_start)

        doc_span = None
        insert_at = None
        indent = ""
        if first_stmt.lineno > node.lineno:
            # body on its own line: safe to insert a docstring before it
            insert_at = body_start
            line_start = index.offset(first_stmt.lineno, 0)
            indent = data[line_start:body_start].decode("utf-8")
        if (
            isinstance(first_stmt, ast.Expr)
            and isinstance(first_stmt.value, ast.Constant)
            and isinstance(first_stmt.value.value, str)
        ):
            doc_span = (
                index.offset(first_stmt.lineno, first_stmt.col_offset),
                index.offset(first_stmt.end_lineno, first_stmt.end_col_offset),
            )
        return RawFunction(
            name=node.name,
            scope=scope,
            start=start,
            end=end,
            sig_end=sig_end,
            depth=depth,
            doc_span=doc_span,
            insert_at=insert_at,
            indent=indent,
        )
