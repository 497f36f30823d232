"""Build an expert curved instance that encodes a classic grid nonogram.

A single self-intersecting "vital" curve collects every inner column and row
of the grid (ringed by one empty border) into one long right sequence, with
the column/row clue lists interleaved into one vital clue list.  Runs of
necessarily filled "blocker" cells separate the segments; their clues are
too long to fit between runs, which pins every original clue list to its own
segment.  Solving the vital line is then exactly solving the grid.

Core mode prefills the blocker and border cells directly.  Full mode instead
adds boundary line curves with one- or two-clue lists whose settling forces
the same values, so the whole construction solves by line settling alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    EMPTY,
    FILLED,
    UNSETTLED,
    ClassicNonogram,
    Clues,
    Curve,
    CurveSide,
    Difficulty,
    Puzzle,
    classify_puzzle,
)
from .oracle import EnumerationLimitError, oracle_puzzle_solutions
from .model import classic_to_puzzle
from .solver import LineMethod, Verdict, full_settle

VITAL = "vital"


@dataclass(frozen=True)
class Part:
    """One part of the vital clue list: a blocker clue or a grid segment."""

    kind: str  # "blocker" | "segment"
    clues: Clues
    axis: str | None = None  # "row" | "col" for segments
    index: int | None = None  # inner-grid row/column index for segments


@dataclass
class ReductionOutput:
    puzzle: Puzzle
    pad_k: int
    original_map: dict[tuple[int, int], int]
    part_layout: tuple[Part, ...]
    padded: ClassicNonogram
    blocker_cells: frozenset[int] = field(default_factory=frozenset)
    border_cells: frozenset[int] = field(default_factory=frozenset)

    @property
    def vital_sequence(self) -> tuple[int, ...]:
        return self.puzzle.curves[0].right.cells

    @property
    def vital_clues(self) -> Clues:
        return self.puzzle.curves[0].right.clues


def pad_to_w_eq_h_plus_1(n: ClassicNonogram) -> ClassicNonogram:
    """Append the minimal number of empty columns or rows to reach w = h+1."""
    w, h = n.width, n.height
    if w == h + 1:
        return n
    if w < h + 1:
        extra = h + 1 - w
        return ClassicNonogram(h + 1, h, n.rows, n.cols + ((),) * extra)
    extra = w - 1 - h
    return ClassicNonogram(w, w - 1, n.rows + ((),) * extra, n.cols)


def _segment_order(w: int, h: int) -> list[tuple[str, int]]:
    # Inner grid is (h+2) rows by (w+2) columns; with w = h+1 the column and
    # row counts differ by one, so strict alternation starts and ends on a
    # column: col 0, row 0, col 1, row 1, ..., row h+1, col w+1.
    order: list[tuple[str, int]] = []
    for i in range(h + 2):
        order.append(("col", i))
        order.append(("row", i))
    order.append(("col", w + 1))
    return order


def reduce_classic(n: ClassicNonogram, mode: str = "core") -> ReductionOutput:
    """Construct the expert instance for a classic nonogram.

    ``mode`` is ``"core"`` (vital curve plus prefilled padding cells) or
    ``"full"`` (no prefills; additionally 4(k+1) boundary line curves whose
    settling fills the blockers and empties the border ring).
    """
    if mode not in ("core", "full"):
        raise ValueError(f"mode must be 'core' or 'full', got {mode!r}")
    padded = pad_to_w_eq_h_plus_1(n)
    w, h = padded.width, padded.height
    k = 1 + max(w // 2, h // 2)
    inner_w, inner_h = w + 2, h + 2

    def inner_id(r: int, c: int) -> int:
        return r * inner_w + c

    original_map = {
        (r, c): inner_id(r + 1, c + 1) for r in range(h) for c in range(w)
    }
    border_cells = frozenset(
        inner_id(r, c)
        for r in range(inner_h)
        for c in range(inner_w)
        if r in (0, inner_h - 1) or c in (0, inner_w - 1)
    )

    next_cell = inner_h * inner_w
    blocker_runs: list[list[int]] = []

    def fresh_run(count: int) -> list[int]:
        nonlocal next_cell
        run = list(range(next_cell, next_cell + count))
        next_cell += count
        blocker_runs.append(run)
        return run

    def segment_cells(axis: str, index: int) -> list[int]:
        if axis == "col":
            return [inner_id(r, index) for r in range(inner_h)]
        return [inner_id(index, c) for c in range(inner_w)]

    def segment_clues(axis: str, index: int) -> Clues:
        if axis == "col":
            return padded.cols[index - 1] if 1 <= index <= w else ()
        return padded.rows[index - 1] if 1 <= index <= h else ()

    parts: list[Part] = [Part("blocker", (k + 1,))]
    sequence: list[int] = fresh_run(k + 1)
    segments = _segment_order(w, h)
    for pos, (axis, index) in enumerate(segments):
        parts.append(Part("segment", segment_clues(axis, index), axis, index))
        sequence.extend(segment_cells(axis, index))
        if pos + 1 < len(segments):
            parts.append(Part("blocker", (4 * k - 1,)))
            sequence.extend(fresh_run(4 * k - 1))
    parts.append(Part("blocker", (k + 1,)))
    sequence.extend(fresh_run(k + 1))

    vital_clues: list[int] = []
    for part in parts:
        vital_clues.extend(part.clues)

    curves = [Curve(VITAL, CurveSide(tuple(sequence), tuple(vital_clues)))]
    blocker_cells = frozenset(c for run in blocker_runs for c in run)
    prefills: dict[int, str] = {}

    if mode == "core":
        for cell in blocker_cells:
            prefills[cell] = FILLED
        for cell in border_cells:
            prefills[cell] = EMPTY
    else:
        curves.extend(_boundary_curves(k, blocker_runs, inner_w, inner_h, inner_id))

    puzzle = Puzzle(next_cell, tuple(curves), prefills)
    return ReductionOutput(
        puzzle=puzzle,
        pad_k=k,
        original_map=original_map,
        part_layout=tuple(parts),
        padded=padded,
        blocker_cells=blocker_cells,
        border_cells=border_cells,
    )


def _boundary_curves(k, blocker_runs, inner_w, inner_h, inner_id) -> list[Curve]:
    """4(k+1) boundary curves with one- or two-clue lists.

    4k curves partition the blocker cells into single-clue chunks that must
    be entirely filled.  Four more sandwich each side of the empty border
    ring between the two end runs: once those runs are settled filled, every
    ring cell in between is forced empty.
    """
    flat = [c for run in blocker_runs for c in run]
    curves: list[Curve] = []
    chunk_count = 4 * k
    base, spill = divmod(len(flat), chunk_count)
    start = 0
    for i in range(chunk_count):
        size = base + (1 if i < spill else 0)
        chunk = tuple(flat[start:start + size])
        start += size
        curves.append(Curve(f"side{i}", CurveSide(chunk, (len(chunk),))))

    head, tail = tuple(blocker_runs[0]), tuple(blocker_runs[-1])
    ring_sides = {
        "ring_top": [inner_id(0, c) for c in range(inner_w)],
        "ring_bottom": [inner_id(inner_h - 1, c) for c in range(inner_w)],
        "ring_left": [inner_id(r, 0) for r in range(inner_h)],
        "ring_right": [inner_id(r, inner_w - 1) for r in range(inner_h)],
    }
    for name, cells in ring_sides.items():
        seq = head + tuple(cells) + tail
        curves.append(Curve(name, CurveSide(seq, (len(head), len(tail)))))
    return curves


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def names(self) -> list[str]:
        return [c.name for c in self.checks]


def verify_reduction(
    r: ReductionOutput,
    n: ClassicNonogram,
    *,
    cell_limit: int = 22,
    oracle_face_limit: int = 22,
) -> VerificationReport:
    """Check the construction structurally and semantically against its input.

    Requires the input grid to be small enough for exhaustive solving and to
    have a unique solution; a non-unique input is rejected as a failed check
    and the solution-dependent checks are skipped.
    """
    report = VerificationReport()
    check = report.checks.append

    padded = r.padded
    w, h = padded.width, padded.height
    k = r.pad_k

    check(CheckResult("padded_shape", w == h + 1, f"w={w} h={h}"))
    expected_k = 1 + max(w // 2, h // 2)
    check(CheckResult("pad_k", k == expected_k, f"{k} vs {expected_k}"))

    parts = r.part_layout
    expected_parts = 2 * (w + h + 4) + 1
    check(CheckResult("part_count", len(parts) == expected_parts,
                      f"{len(parts)} vs {expected_parts}"))
    alt_ok = all(
        p.kind == ("blocker" if i % 2 == 0 else "segment")
        for i, p in enumerate(parts)
    )
    check(CheckResult("part_alternation", alt_ok))
    ends_ok = parts[0].clues == (k + 1,) and parts[-1].clues == (k + 1,)
    interior_ok = all(
        p.clues == (4 * k - 1,) for p in parts[2:-1:2]
    )
    check(CheckResult("blocker_clues", ends_ok and interior_ok))
    check(CheckResult("blocker_gap", 4 * k - 1 > max(w, h) + 2,
                      f"4k-1={4 * k - 1} vs max(w,h)+2={max(w, h) + 2}"))

    segs = [p for p in parts if p.kind == "segment"]
    seg_ok = (
        [(p.axis, p.index) for p in segs] == _segment_order(w, h)
        and all(
            p.clues == (padded.cols[p.index - 1] if p.axis == "col" and 1 <= p.index <= w
                        else padded.rows[p.index - 1] if p.axis == "row" and 1 <= p.index <= h
                        else ())
            for p in segs
        )
    )
    check(CheckResult("segment_layout", seg_ok))

    flattened = tuple(d for p in parts for d in p.clues)
    check(CheckResult("vital_clues_match_parts", flattened == r.vital_clues))

    vital = r.vital_sequence
    counts: dict[int, int] = {}
    for c in vital:
        counts[c] = counts.get(c, 0) + 1
    inner_cells = set(range((w + 2) * (h + 2)))
    inner_twice = all(counts.get(c, 0) == 2 for c in inner_cells)
    blockers_once = all(counts.get(c, 0) == 1 for c in r.blocker_cells)
    check(CheckResult("inner_cells_twice", inner_twice))
    check(CheckResult("blocker_cells_once", blockers_once))

    is_full = len(r.puzzle.curves) > 1
    if is_full:
        check(CheckResult("curve_count", len(r.puzzle.curves) == 4 * k + 5,
                          f"{len(r.puzzle.curves)} vs {4 * k + 5}"))
    else:
        check(CheckResult("curve_count", len(r.puzzle.curves) == 1))

    check(CheckResult("expert_class",
                      classify_puzzle(r.puzzle) is Difficulty.EXPERT))

    # Padding cells settle without the vital curve; whatever remains
    # unsettled must be an original cell on the vital sequence.
    boundary_only = Puzzle(
        r.puzzle.cell_count, r.puzzle.curves[1:], r.puzzle.prefills
    )
    base = full_settle(boundary_only, LineMethod.DP)
    originals = set(r.original_map.values())
    open_cells = {i for i, s in enumerate(base.board) if s == UNSETTLED}
    check(CheckResult("unsettled_are_original_on_vital",
                      open_cells <= originals and open_cells <= set(vital)))

    try:
        solutions = oracle_puzzle_solutions(
            classic_to_puzzle(n), cell_limit=cell_limit
        )
    except EnumerationLimitError as exc:
        check(CheckResult("unique_solution", False, str(exc)))
        return report
    check(CheckResult("unique_solution", len(solutions) == 1,
                      f"{len(solutions)} solutions"))
    if len(solutions) != 1:
        return report
    solution = next(iter(solutions))

    outcome = full_settle(
        r.puzzle, LineMethod.ORACLE, oracle_face_limit=oracle_face_limit
    )
    check(CheckResult("full_settle_solves",
                      outcome.verdict is Verdict.SOLVED_SIMPLE,
                      outcome.verdict.value))
    if outcome.verdict is not Verdict.SOLVED_SIMPLE:
        return report

    restricted_ok = all(
        outcome.board[r.original_map[(row, col)]] == solution[n.cell_id(row, col)]
        for row in range(n.height)
        for col in range(n.width)
    )
    appended_ok = all(
        outcome.board[cell] == EMPTY
        for (row, col), cell in r.original_map.items()
        if row >= n.height or col >= n.width
    )
    check(CheckResult("solution_restriction", restricted_ok and appended_ok))
    return report
