"""Lexical scanning of C source files.

Two jobs, both done without a real C grammar:

* classify every physical line as code, comment, or blank, and
* find file-scope function definitions by matching ``name ( ... ) {`` with
  comments, string/char literals, and preprocessor lines masked out, then
  pairing braces to the closing one.

Macro expansion, K&R parameter declarations, and functions produced by
macros are out of scope; unbalanced braces at end of file drop the open
span and are counted in the diagnostics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import SpanOutOfRange


class LineClass(enum.Enum):
    CODE = "code"
    COMMENT = "comment"
    BLANK = "blank"


@dataclass(frozen=True)
class MethodSpan:
    """One function definition: 1-based inclusive line span."""

    file_path: str
    name: str
    start_line: int
    end_line: int
    body_brace_depth_ok: bool = True


@dataclass(frozen=True)
class CodeMetrics:
    c1_all_lines: int
    c2_code_lines: int
    c3_blank_lines: int
    c4_comment_lines: int


@dataclass
class ParseDiagnostics:
    duplicate_methods_dropped: int = 0
    unbalanced_methods_at_eof: int = 0


_WS = " \t\r\f\v"

# Keywords that can precede a parenthesized expression; never function names.
_NOT_A_NAME = frozenset(
    {"if", "else", "for", "while", "do", "switch", "return", "sizeof", "case"}
)


def _scan(source: str) -> tuple[list[LineClass], list[str]]:
    """Single forward pass producing line classes and a masked copy.

    In the masked copy, comments, string/char literal bodies, and
    preprocessor lines become spaces while newlines survive, so brace and
    paren matching can ignore them.
    """
    classes: list[LineClass] = []
    masked: list[str] = []
    n = len(source)
    i = 0
    in_block = False  # inside /* ... */
    in_line = False  # inside // ...
    in_str = False
    in_chr = False
    in_pp = False  # inside a preprocessor directive (incl. continuations)
    pp_continues = False  # directive line ended with a backslash
    line_has_code = False
    line_has_comment = False
    line_only_ws_so_far = True

    def finish_line() -> None:
        nonlocal line_has_code, line_has_comment, line_only_ws_so_far
        if line_has_code:
            classes.append(LineClass.CODE)
        elif line_has_comment:
            classes.append(LineClass.COMMENT)
        else:
            classes.append(LineClass.BLANK)
        line_has_code = False
        line_has_comment = False
        line_only_ws_so_far = True

    while i < n:
        ch = source[i]
        nxt = source[i + 1] if i + 1 < n else ""

        if ch == "\n":
            finish_line()
            masked.append("\n")
            in_line = False
            # Raw newlines never occur inside valid string/char literals;
            # recover rather than swallow the rest of the file.
            in_str = False
            in_chr = False
            if in_pp and not in_block and not pp_continues:
                in_pp = False
            pp_continues = False
            i += 1
            continue

        if in_line:
            line_has_comment = True
            masked.append(" ")
            i += 1
            continue

        if in_block:
            if ch == "*" and nxt == "/":
                in_block = False
                line_has_comment = True
                masked.append("  ")
                i += 2
                continue
            if ch not in _WS:
                line_has_comment = True
            masked.append(" ")
            i += 1
            continue

        if in_str or in_chr:
            line_has_code = True
            quote = '"' if in_str else "'"
            if ch == "\\":
                if nxt == "\n":
                    masked.append(" ")  # literal continues on the next line
                    i += 1
                else:
                    masked.append("  ")
                    i += 2
                continue
            if ch == quote:
                if in_str:
                    in_str = False
                else:
                    in_chr = False
            masked.append(" ")
            i += 1
            continue

        # normal state
        if ch == "/" and nxt == "*":
            in_block = True
            line_has_comment = True
            masked.append("  ")
            i += 2
            continue
        if ch == "/" and nxt == "/":
            in_line = True
            line_has_comment = True
            masked.append("  ")
            i += 2
            continue
        if ch == '"':
            line_has_code = True
            in_str = True
            masked.append(" ")
            i += 1
            continue
        if ch == "'":
            line_has_code = True
            in_chr = True
            masked.append(" ")
            i += 1
            continue
        if ch == "#" and line_only_ws_so_far:
            in_pp = True
            line_has_code = True
            masked.append(" ")
            line_only_ws_so_far = False
            i += 1
            continue
        if ch == "\\" and nxt == "\n" and in_pp:
            pp_continues = True
            masked.append(" ")
            i += 1
            continue
        if ch in _WS:
            masked.append(ch if not in_pp else " ")
            i += 1
            continue
        line_has_code = True
        line_only_ws_so_far = False
        masked.append(" " if in_pp else ch)
        i += 1

    if n > 0 and not source.endswith("\n"):
        finish_line()
    return classes, masked


def classify_lines(source: str) -> list[LineClass]:
    """One class per physical line; a line with any code token is CODE,
    comment-only lines are COMMENT, whitespace-only lines are BLANK.
    Preprocessor directives count as code."""
    classes, _ = _scan(source)
    return classes


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def extract_methods(
    source: str,
    file_path: str = "",
    diagnostics: ParseDiagnostics | None = None,
) -> list[MethodSpan]:
    """File-scope function definitions, in source order, non-overlapping.

    A definition is an identifier, a parenthesized parameter list, and an
    opening brace, matched on the masked source; the span ends on the line
    of the matching closing brace. Duplicate names within one file keep the
    first span only.
    """
    _, masked_parts = _scan(source)
    masked = "".join(masked_parts)
    spans: list[MethodSpan] = []
    seen: set[str] = set()

    line_no = 1
    depth = 0
    open_name: str | None = None
    open_start_line = 0
    i = 0
    n = len(masked)
    while i < n:
        ch = masked[i]
        if ch == "\n":
            line_no += 1
        elif ch == "{":
            if depth == 0:
                found = _match_definition_header(masked, i)
                if found is not None:
                    name, name_pos = found
                    if name in seen:
                        if diagnostics is not None:
                            diagnostics.duplicate_methods_dropped += 1
                        open_name = None
                    else:
                        open_name = name
                        open_start_line = 1 + masked.count("\n", 0, name_pos)
                else:
                    open_name = None
            depth += 1
        elif ch == "}":
            if depth > 0:
                depth -= 1
                if depth == 0 and open_name is not None:
                    spans.append(
                        MethodSpan(
                            file_path=file_path,
                            name=open_name,
                            start_line=open_start_line,
                            end_line=line_no,
                        )
                    )
                    seen.add(open_name)
                    open_name = None
        i += 1

    if depth > 0 and open_name is not None and diagnostics is not None:
        diagnostics.unbalanced_methods_at_eof += 1
    return spans


def _match_definition_header(masked: str, brace_pos: int) -> tuple[str, int] | None:
    """Check for ``identifier ( ... )`` immediately before a '{'.

    Returns (name, position of the identifier) or None.
    """
    j = brace_pos - 1
    while j >= 0 and masked[j] in " \t\r\n\f\v":
        j -= 1
    if j < 0 or masked[j] != ")":
        return None
    # match the parameter list backwards
    depth = 1
    j -= 1
    while j >= 0 and depth > 0:
        if masked[j] == ")":
            depth += 1
        elif masked[j] == "(":
            depth -= 1
        j -= 1
    if depth != 0:
        return None
    while j >= 0 and masked[j] in " \t\r\n\f\v":
        j -= 1
    end = j
    while j >= 0 and _is_ident_char(masked[j]):
        j -= 1
    name = masked[j + 1 : end + 1]
    if not name or name[0].isdigit():
        return None
    if name in _NOT_A_NAME:
        return None
    return name, j + 1


def code_metrics(span: MethodSpan, classes: list[LineClass]) -> CodeMetrics:
    """Line-class counts over the span, inclusive of both end lines."""
    if span.start_line < 1 or span.end_line > len(classes) or span.start_line > span.end_line:
        raise SpanOutOfRange(
            f"span {span.start_line}..{span.end_line} outside 1..{len(classes)}"
        )
    c2 = c3 = c4 = 0
    for cls in classes[span.start_line - 1 : span.end_line]:
        if cls is LineClass.CODE:
            c2 += 1
        elif cls is LineClass.BLANK:
            c3 += 1
        else:
            c4 += 1
    return CodeMetrics(
        c1_all_lines=span.end_line - span.start_line + 1,
        c2_code_lines=c2,
        c3_blank_lines=c3,
        c4_comment_lines=c4,
    )
