"""Core domain model for curved nonograms.

A curved nonogram is played on an arrangement of curves instead of a grid.
Geometry is abstracted away entirely: a puzzle is a set of global cells plus,
for every curve, the ordered sequence of cells along each of its two sides,
together with a clue list per sequence.  Within a single line, cell identity
is expressed by opaque "letters"; equal letters must receive equal values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterator, Mapping

EMPTY = "0"
FILLED = "1"
UNSETTLED = "?"
CELL_STATES = frozenset((EMPTY, FILLED, UNSETTLED))

Clues = tuple[int, ...]
Letters = tuple[Hashable, ...]


class Difficulty(Enum):
    """How hard the rules of a line or puzzle are, by repeat structure."""

    BASIC = "basic"        # no cell repeats in any sequence
    ADVANCED = "advanced"  # same-side repeats only, properly nested
    EXPERT = "expert"      # cross-side sharing or non-nested repeats


def is_settled(state: str) -> bool:
    return state == EMPTY or state == FILLED


def _check_spec(spec: str) -> None:
    bad = set(spec) - CELL_STATES
    if bad:
        raise ValueError(f"spec contains invalid symbols: {sorted(bad)!r}")


def validate_clues(clues) -> Clues:
    """Coerce an iterable of clues to a tuple, requiring positive integers."""
    out = tuple(clues)
    for d in out:
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise ValueError(f"clue must be a positive integer, got {d!r}")
    return out


def is_refinement(coarse: str, fine: str) -> bool:
    """True iff ``fine`` agrees with ``coarse`` everywhere ``coarse`` is settled."""
    if len(coarse) != len(fine):
        raise ValueError(f"length mismatch: {len(coarse)} vs {len(fine)}")
    _check_spec(coarse)
    _check_spec(fine)
    return all(c == UNSETTLED or c == f for c, f in zip(coarse, fine))


def fix_consistent(fix: str, clues) -> bool:
    """True iff the maximal 1-blocks of ``fix`` have exactly the clue lengths, in order."""
    if UNSETTLED in fix:
        raise ValueError("fix_consistent requires a fully settled string")
    _check_spec(fix)
    blocks = tuple(len(b) for b in fix.split(EMPTY) if b)
    return blocks == validate_clues(clues)


def clue_pattern_regex(clues) -> re.Pattern[str]:
    """Regex accepting exactly the fixes consistent with ``clues``.

    Blocks are separated by one or more 0s and may be padded by 0s at either
    end; serves as an independent cross-check for :func:`fix_consistent`.
    """
    clues = validate_clues(clues)
    if not clues:
        return re.compile(r"^0*$")
    body = "0+".join("1{%d}" % d for d in clues)
    return re.compile(r"^0*" + body + r"0*$")


@dataclass(frozen=True)
class LineProblem:
    """One curve-side instance: knowledge string, face letters, clue list.

    ``spec[i]`` is the current state of the face at position ``i`` and
    ``letters[i]`` identifies that face; equal letters denote the same face
    and therefore must hold equal values.  The invariant that settled
    occurrences of one face agree is enforced at construction.
    """

    spec: str
    letters: Letters
    clues: Clues

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "clues", validate_clues(self.clues))
        _check_spec(self.spec)
        if len(self.spec) != len(self.letters):
            raise ValueError(
                f"spec length {len(self.spec)} != letters length {len(self.letters)}"
            )
        seen: dict[Hashable, str] = {}
        for state, letter in zip(self.spec, self.letters):
            if state == UNSETTLED:
                continue
            prev = seen.setdefault(letter, state)
            if prev != state:
                raise ValueError(f"face {letter!r} is settled to both values")

    def __len__(self) -> int:
        return len(self.spec)

    def positions_by_letter(self) -> dict[Hashable, list[int]]:
        occ: dict[Hashable, list[int]] = {}
        for i, letter in enumerate(self.letters):
            occ.setdefault(letter, []).append(i)
        return occ

    def with_spec(self, spec: str) -> "LineProblem":
        return LineProblem(spec, self.letters, self.clues)


def classify_line(letters) -> Difficulty:
    """Classify a letter sequence by its repeat structure.

    Basic means all letters are distinct.  Advanced means repeats exist but
    are properly nested: no four positions i<k<j<l carry letters x,y,x,y with
    x != y.  Anything with such a crossing is expert.
    """
    letters = tuple(letters)
    counts: dict[Hashable, int] = {}
    for x in letters:
        counts[x] = counts.get(x, 0) + 1
    if all(c == 1 for c in counts.values()):
        return Difficulty.BASIC
    last: dict[Hashable, int] = {}
    for i, x in enumerate(letters):
        last[x] = i
    stack: list[Hashable] = []
    opened: set[Hashable] = set()
    for i, x in enumerate(letters):
        if counts[x] == 1:
            continue
        if x in opened:
            if not stack or stack[-1] != x:
                return Difficulty.EXPERT
            stack.pop()
        else:
            opened.add(x)
        if last[x] != i:
            stack.append(x)
    return Difficulty.ADVANCED


@dataclass(frozen=True)
class CurveSide:
    """The ordered cells along one side of a curve, plus their clue list."""

    cells: tuple[int, ...]
    clues: Clues

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "clues", validate_clues(self.clues))


EMPTY_SIDE = CurveSide((), ())


@dataclass(frozen=True)
class Curve:
    name: str
    right: CurveSide = EMPTY_SIDE
    left: CurveSide = EMPTY_SIDE


@dataclass(frozen=True)
class Puzzle:
    """A combinatorial curved nonogram: cells, curves, and optional prefills."""

    cell_count: int
    curves: tuple[Curve, ...]
    prefills: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "prefills", dict(self.prefills))
        if self.cell_count < 0:
            raise ValueError("cell_count must be nonnegative")
        for curve in self.curves:
            for side in (curve.right, curve.left):
                for cell in side.cells:
                    if not 0 <= cell < self.cell_count:
                        raise ValueError(
                            f"curve {curve.name!r} references cell {cell} "
                            f"outside 0..{self.cell_count - 1}"
                        )
        for cell, value in self.prefills.items():
            if not 0 <= cell < self.cell_count:
                raise ValueError(f"prefill for unknown cell {cell}")
            if value not in (EMPTY, FILLED):
                raise ValueError(f"prefill value must be 0 or 1, got {value!r}")

    def sides(self) -> Iterator[tuple[str, CurveSide]]:
        """All (label, side) pairs, right side before left side per curve."""
        for curve in self.curves:
            yield f"{curve.name}/right", curve.right
            yield f"{curve.name}/left", curve.left


def classify_curve(curve: Curve) -> Difficulty:
    """Difficulty of a single curve from its two cell sequences."""
    if set(curve.right.cells) & set(curve.left.cells):
        return Difficulty.EXPERT
    worst = Difficulty.BASIC
    for side in (curve.right, curve.left):
        cls = classify_line(side.cells)
        if cls is Difficulty.EXPERT:
            return Difficulty.EXPERT
        if cls is Difficulty.ADVANCED:
            worst = Difficulty.ADVANCED
    return worst


def classify_puzzle(puzzle: Puzzle) -> Difficulty:
    """Puzzle difficulty: the worst difficulty over all of its curves."""
    worst = Difficulty.BASIC
    for curve in puzzle.curves:
        cls = classify_curve(curve)
        if cls is Difficulty.EXPERT:
            return Difficulty.EXPERT
        if cls is Difficulty.ADVANCED:
            worst = Difficulty.ADVANCED
    return worst


@dataclass(frozen=True)
class ClassicNonogram:
    """A rectangular grid nonogram: per-row and per-column clue lists."""

    width: int
    height: int
    rows: tuple[Clues, ...]
    cols: tuple[Clues, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(validate_clues(r) for r in self.rows))
        object.__setattr__(self, "cols", tuple(validate_clues(c) for c in self.cols))
        if self.width < 1 or self.height < 1:
            raise ValueError("grid must be at least 1x1")
        if len(self.rows) != self.height:
            raise ValueError(f"expected {self.height} row clue lists, got {len(self.rows)}")
        if len(self.cols) != self.width:
            raise ValueError(f"expected {self.width} column clue lists, got {len(self.cols)}")
        for kind, clue_lists, length in (("row", self.rows, self.width),
                                         ("col", self.cols, self.height)):
            for i, clues in enumerate(clue_lists):
                if clues and sum(clues) + len(clues) - 1 > length:
                    raise ValueError(f"{kind} {i} clues {clues} do not fit in {length} cells")

    def cell_id(self, row: int, col: int) -> int:
        return row * self.width + col


def classic_to_puzzle(n: ClassicNonogram) -> Puzzle:
    """Embed a grid nonogram as the degenerate curved case.

    One curve per row and per column; the row/column cells in reading order
    form the right sequence, the left sequence stays empty.
    """
    curves = []
    for r in range(n.height):
        cells = tuple(n.cell_id(r, c) for c in range(n.width))
        curves.append(Curve(f"row{r}", CurveSide(cells, n.rows[r])))
    for c in range(n.width):
        cells = tuple(n.cell_id(r, c) for r in range(n.height))
        curves.append(Curve(f"col{c}", CurveSide(cells, n.cols[c])))
    return Puzzle(n.width * n.height, tuple(curves))
