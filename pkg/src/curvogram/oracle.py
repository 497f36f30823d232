"""Exponential-time ground truth by exhaustive enumeration.

Enumerates every fix of a line (over its distinct unsettled faces) or every
fill of a puzzle (over its unsettled cells).  Intended for property tests,
cross-validation, and settling lines the polynomial engine cannot process;
deliberately exact and deliberately slow.
"""

from __future__ import annotations

from itertools import product

from .model import EMPTY, FILLED, UNSETTLED, LineProblem, Puzzle, fix_consistent

DEFAULT_LIMIT = 22


class EnumerationLimitError(ValueError):
    """Raised instead of silently truncating when the search space is too big."""


def _unsettled_faces(p: LineProblem) -> list[list[int]]:
    faces: dict[object, list[int]] = {}
    for i, (state, letter) in enumerate(zip(p.spec, p.letters)):
        if state == UNSETTLED:
            faces.setdefault(letter, []).append(i)
    return list(faces.values())


def oracle_line_fixes(p: LineProblem, *, face_limit: int = DEFAULT_LIMIT) -> frozenset[str]:
    """All fixes refining the line, respecting letter equalities, matching the clues."""
    faces = _unsettled_faces(p)
    if len(faces) > face_limit:
        raise EnumerationLimitError(
            f"{len(faces)} unsettled faces exceed the limit of {face_limit}"
        )
    base = list(p.spec)
    fixes = []
    for values in product((EMPTY, FILLED), repeat=len(faces)):
        trial = base[:]
        for positions, value in zip(faces, values):
            for j in positions:
                trial[j] = value
        fix = "".join(trial)
        if fix_consistent(fix, p.clues):
            fixes.append(fix)
    return frozenset(fixes)


def oracle_settle(p: LineProblem, *, face_limit: int = DEFAULT_LIMIT) -> str | None:
    """Per-position intersection of all fixes; ``None`` when no fix exists."""
    fixes = oracle_line_fixes(p, face_limit=face_limit)
    if not fixes:
        return None
    out = list(p.spec)
    rest = iter(fixes)
    merged = list(next(rest))
    for fix in rest:
        for j, value in enumerate(fix):
            if merged[j] != value:
                merged[j] = UNSETTLED
    for j, state in enumerate(out):
        if state == UNSETTLED:
            out[j] = merged[j]
    return "".join(out)


def oracle_puzzle_solutions(p: Puzzle, *, cell_limit: int = DEFAULT_LIMIT) -> frozenset[str]:
    """All total fills (one char per cell) making every sequence consistent."""
    board = [UNSETTLED] * p.cell_count
    for cell, value in p.prefills.items():
        board[cell] = value
    open_cells = [i for i, s in enumerate(board) if s == UNSETTLED]
    if len(open_cells) > cell_limit:
        raise EnumerationLimitError(
            f"{len(open_cells)} unsettled cells exceed the limit of {cell_limit}"
        )
    sides = [side for _, side in p.sides() if side.cells or side.clues]
    solutions = []
    for values in product((EMPTY, FILLED), repeat=len(open_cells)):
        for cell, value in zip(open_cells, values):
            board[cell] = value
        if all(
            fix_consistent("".join(board[c] for c in side.cells), side.clues)
            for side in sides
        ):
            solutions.append("".join(board))
    for cell in open_cells:
        board[cell] = UNSETTLED
    return frozenset(solutions)
