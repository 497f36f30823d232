"""Line-oriented text formats for puzzles and classic grids.

Both grammars are token based, one record per line, with ``#`` starting a
comment and ``-`` denoting an empty list.  Serialization is canonical:
single spaces, newline endings, no trailing whitespace, prefills sorted by
cell id; parse(serialize(x)) reproduces x exactly.
"""

from __future__ import annotations

from .model import ClassicNonogram, Clues, Curve, CurveSide, Puzzle


class ParseError(ValueError):
    """A syntax or validation error with its 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class _Lines:
    """Comment-stripped token lines with positions retained."""

    def __init__(self, text: str):
        self.rows: list[tuple[int, list[tuple[int, str]]]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            tokens = []
            col = 0
            for token in body.split():
                col = body.index(token, col)
                tokens.append((col + 1, token))
                col += len(token)
            if tokens:
                self.rows.append((lineno, tokens))
        self.pos = 0

    @property
    def done(self) -> bool:
        return self.pos >= len(self.rows)

    def peek_keyword(self) -> str | None:
        if self.done:
            return None
        return self.rows[self.pos][1][0][1]

    def take(self) -> tuple[int, list[tuple[int, str]]]:
        row = self.rows[self.pos]
        self.pos += 1
        return row


def _parse_int(token: str, lineno: int, col: int, what: str, minimum: int = 0) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected {what}, got {token!r}", lineno, col) from None
    if value < minimum:
        raise ParseError(f"{what} must be >= {minimum}, got {value}", lineno, col)
    return value


def _expect(lines: _Lines, keyword: str) -> tuple[int, list[tuple[int, str]]]:
    if lines.done:
        last = lines.rows[-1][0] if lines.rows else 1
        raise ParseError(f"expected {keyword!r}, got end of input", last + 1)
    lineno, tokens = lines.take()
    col, head = tokens[0]
    if head != keyword:
        raise ParseError(f"expected {keyword!r}, got {head!r}", lineno, col)
    return lineno, tokens


def _int_list(tokens: list[tuple[int, str]], lineno: int, what: str,
               minimum: int) -> tuple[int, ...]:
    if len(tokens) == 1:
        col = tokens[0][0] + len(tokens[0][1])
        raise ParseError(f"expected {what} list or '-'", lineno, col)
    if len(tokens) == 2 and tokens[1][1] == "-":
        return ()
    return tuple(
        _parse_int(token, lineno, col, what, minimum) for col, token in tokens[1:]
    )


def parse_puzzle(text: str) -> Puzzle:
    lines = _Lines(text)
    lineno, tokens = _expect(lines, "cells")
    if len(tokens) != 2:
        raise ParseError("expected 'cells <count>'", lineno, tokens[0][0])
    cell_count = _parse_int(tokens[1][1], lineno, tokens[1][0], "cell count")

    curves: list[Curve] = []
    prefills: dict[int, str] = {}
    while not lines.done:
        keyword = lines.peek_keyword()
        if keyword == "curve":
            lineno, tokens = lines.take()
            if len(tokens) != 2:
                raise ParseError("expected 'curve <name>'", lineno, tokens[0][0])
            name = tokens[1][1]
            rl, rt = _expect(lines, "right")
            right_cells = _int_list(rt, rl, "cell id", 0)
            dl, dt = _expect(lines, "rdesc")
            right_clues = _int_list(dt, dl, "clue", 1)
            ll, lt = _expect(lines, "left")
            left_cells = _int_list(lt, ll, "cell id", 0)
            el, et = _expect(lines, "ldesc")
            left_clues = _int_list(et, el, "clue", 1)
            curves.append(Curve(name, CurveSide(right_cells, right_clues),
                                CurveSide(left_cells, left_clues)))
        elif keyword == "prefill":
            lineno, tokens = lines.take()
            if len(tokens) != 3:
                raise ParseError("expected 'prefill <id> <0|1>'", lineno, tokens[0][0])
            cell = _parse_int(tokens[1][1], lineno, tokens[1][0], "cell id")
            value = tokens[2][1]
            if value not in ("0", "1"):
                raise ParseError(f"prefill value must be 0 or 1, got {value!r}",
                                 lineno, tokens[2][0])
            if cell in prefills and prefills[cell] != value:
                raise ParseError(f"conflicting prefills for cell {cell}",
                                 lineno, tokens[1][0])
            prefills[cell] = value
        else:
            lineno, tokens = lines.take()
            raise ParseError(f"unexpected keyword {tokens[0][1]!r}", lineno,
                             tokens[0][0])
    try:
        return Puzzle(cell_count, tuple(curves), prefills)
    except ValueError as exc:
        raise ParseError(str(exc), lineno if lines.rows else 1) from exc


def _list_text(values) -> str:
    return " ".join(str(v) for v in values) if values else "-"


def serialize_puzzle(p: Puzzle) -> str:
    out = [f"cells {p.cell_count}"]
    for curve in p.curves:
        out.append(f"curve {curve.name}")
        out.append(f"right {_list_text(curve.right.cells)}")
        out.append(f"rdesc {_list_text(curve.right.clues)}")
        out.append(f"left {_list_text(curve.left.cells)}")
        out.append(f"ldesc {_list_text(curve.left.clues)}")
    for cell in sorted(p.prefills):
        out.append(f"prefill {cell} {p.prefills[cell]}")
    return "\n".join(out) + "\n"


def parse_classic(text: str) -> ClassicNonogram:
    lines = _Lines(text)
    lineno, tokens = _expect(lines, "classic")
    if len(tokens) != 3:
        raise ParseError("expected 'classic <width> <height>'", lineno, tokens[0][0])
    width = _parse_int(tokens[1][1], lineno, tokens[1][0], "width", 1)
    height = _parse_int(tokens[2][1], lineno, tokens[2][0], "height", 1)
    rows = []
    for _ in range(height):
        rl, rt = _expect(lines, "row")
        rows.append(_int_list(rt, rl, "clue", 1))
    cols = []
    for _ in range(width):
        cl, ct = _expect(lines, "col")
        cols.append(_int_list(ct, cl, "clue", 1))
    if not lines.done:
        lineno, tokens = lines.take()
        raise ParseError(f"unexpected trailing {tokens[0][1]!r}", lineno, tokens[0][0])
    try:
        return ClassicNonogram(width, height, tuple(rows), tuple(cols))
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from exc


def serialize_classic(n: ClassicNonogram) -> str:
    out = [f"classic {n.width} {n.height}"]
    out.extend(f"row {_list_text(r)}" for r in n.rows)
    out.extend(f"col {_list_text(c)}" for c in n.cols)
    return "\n".join(out) + "\n"
