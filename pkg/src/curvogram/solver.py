"""Whole-puzzle solving by iterated line settling.

Runs rounds over all sequences: every line still marked dirty is settled
against a snapshot of the board, and the writes are merged at a barrier with
conflict detection.  A cell settled by one line propagates to every sequence
sharing it, re-marking those lines dirty; the loop ends when a round settles
nothing.  Because each settled cell is forced (constant over all solutions
refining the snapshot), the final board does not depend on the order in
which lines are processed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .model import (
    CurveSide,
    Difficulty,
    LineProblem,
    Puzzle,
    UNSETTLED,
    classify_line,
    fix_consistent,
)
from .engine import InconsistentLineError, settle_basic_fast, settle_naive, settle_topdown
from .oracle import DEFAULT_LIMIT, oracle_settle


class Verdict(Enum):
    SOLVED_SIMPLE = "solved_simple"
    STUCK = "stuck"
    LINE_INCONSISTENT = "line_inconsistent"
    CELL_CONFLICT = "cell_conflict"


class LineMethod(Enum):
    DP = "dp"
    NAIVE = "naive"
    BASIC_FAST = "basic"
    ORACLE = "oracle"


@dataclass(frozen=True)
class LineStep:
    """One line's contribution to a round: which cells it settled to what."""

    line: str
    settled: tuple[tuple[int, str], ...]


@dataclass
class SolveReport:
    board: str
    verdict: Verdict
    rounds: list[list[LineStep]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    problem_lines: tuple[str, ...] = ()
    conflict_cells: tuple[int, ...] = ()

    @property
    def solved(self) -> bool:
        return self.verdict is Verdict.SOLVED_SIMPLE


class _SkipLine(Exception):
    """Internal: the chosen method cannot process this line right now."""


def _settle_one(
    line: LineProblem,
    method: LineMethod,
    expert_fallback: bool,
    oracle_face_limit: int,
) -> str:
    cls = classify_line(line.letters)
    if method is LineMethod.ORACLE or cls is Difficulty.EXPERT:
        if cls is Difficulty.EXPERT and method is not LineMethod.ORACLE and not expert_fallback:
            raise NotImplementedError(
                f"line method {method.value!r} cannot process an expert line "
                "and fallback is disabled"
            )
        unsettled_faces = len(
            {x for s, x in zip(line.spec, line.letters) if s == UNSETTLED}
        )
        if unsettled_faces > oracle_face_limit:
            raise _SkipLine(
                f"{unsettled_faces} unsettled faces exceed the oracle limit"
            )
        result = oracle_settle(line, face_limit=oracle_face_limit)
        if result is None:
            raise InconsistentLineError("line admits no consistent fix")
        return result
    if method is LineMethod.NAIVE:
        return settle_naive(line)
    if method is LineMethod.BASIC_FAST and cls is Difficulty.BASIC:
        return settle_basic_fast(line)
    return settle_topdown(line)


def full_settle(
    puzzle: Puzzle,
    method: LineMethod = LineMethod.DP,
    *,
    line_order: Sequence[int] | None = None,
    expert_fallback: bool = True,
    oracle_face_limit: int = DEFAULT_LIMIT,
) -> SolveReport:
    """Settle every sequence repeatedly until no cell changes.

    ``line_order`` permutes the processing order of the sequences (indices
    into the list of all curve sides, right before left per curve); it may
    change the trace but never the final board.
    """
    labeled: list[tuple[str, CurveSide]] = list(puzzle.sides())
    if line_order is None:
        order = list(range(len(labeled)))
    else:
        order = list(line_order)
        if sorted(order) != list(range(len(labeled))):
            raise ValueError("line_order must be a permutation of the sequence indices")

    board = [UNSETTLED] * puzzle.cell_count
    for cell, value in puzzle.prefills.items():
        board[cell] = value

    report = SolveReport(board="", verdict=Verdict.STUCK)
    dirty = set(range(len(labeled)))
    skipped_ever: set[str] = set()

    while dirty:
        snapshot = board[:]
        steps: list[LineStep] = []
        writes: dict[int, tuple[str, str]] = {}  # cell -> (value, writer)
        bad_lines: list[str] = []
        conflicts: set[int] = set()
        processed = [i for i in order if i in dirty]
        dirty.clear()

        for idx in processed:
            label, side = labeled[idx]
            if not side.cells:
                if side.clues:
                    bad_lines.append(label)
                continue
            spec = "".join(snapshot[c] for c in side.cells)
            line = LineProblem(spec, side.cells, side.clues)
            if UNSETTLED not in spec:
                if not fix_consistent(spec, side.clues):
                    bad_lines.append(label)
                continue
            try:
                result = _settle_one(line, method, expert_fallback, oracle_face_limit)
            except InconsistentLineError:
                bad_lines.append(label)
                continue
            except _SkipLine as skip:
                if label not in skipped_ever:
                    skipped_ever.add(label)
                    report.warnings.append(f"skipped {label}: {skip}")
                continue
            settled = []
            for pos, (old, new) in enumerate(zip(spec, result)):
                if old == new:
                    continue
                cell = side.cells[pos]
                prev = writes.get(cell)
                if prev is not None:
                    if prev[0] != new:
                        conflicts.add(cell)
                else:
                    writes[cell] = (new, label)
                settled.append((cell, new))
            if settled:
                steps.append(LineStep(label, tuple(dict(settled).items())))

        if bad_lines:
            report.board = "".join(snapshot)
            report.verdict = Verdict.LINE_INCONSISTENT
            report.problem_lines = tuple(bad_lines)
            return report
        if conflicts:
            report.board = "".join(snapshot)
            report.verdict = Verdict.CELL_CONFLICT
            report.conflict_cells = tuple(sorted(conflicts))
            return report
        if not writes:
            break

        for cell, (value, _) in writes.items():
            board[cell] = value
        report.rounds.append(steps)
        for idx, (_, side) in enumerate(labeled):
            if any(c in writes for c in side.cells):
                dirty.add(idx)

    report.board = "".join(board)
    report.verdict = (
        Verdict.STUCK if UNSETTLED in report.board else Verdict.SOLVED_SIMPLE
    )
    return report


def is_simple(puzzle: Puzzle, method: LineMethod = LineMethod.DP, **kwargs) -> bool:
    """True iff iterated line settling alone solves the puzzle completely."""
    return full_settle(puzzle, method, **kwargs).verdict is Verdict.SOLVED_SIMPLE
