"""Command-line interface.

Exit codes: 0 for success / consistent / solved; 1 for inconsistent, stuck,
or conflicting outcomes; 2 for usage and parse errors.  Diagnostics go to
stderr; all reporting goes to stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .model import (
    ClassicNonogram,
    LineProblem,
    classic_to_puzzle,
    classify_curve,
    classify_puzzle,
)
from .engine import (
    InconsistentLineError,
    NestingError,
    check_consistency,
    settle_basic_fast,
    settle_naive,
    settle_topdown,
)
from .oracle import EnumerationLimitError, oracle_puzzle_solutions, oracle_settle
from .solver import LineMethod, Verdict, full_settle
from .reduction import reduce_classic
from .formats import ParseError, parse_classic, parse_puzzle, serialize_puzzle
from . import bench as bench_mod

OK, FAIL, USAGE = 0, 1, 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_any(path: str):
    """Return ('puzzle', Puzzle) or ('classic', ClassicNonogram) by header."""
    text = _read(path)
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        if body[0] == "classic":
            return "classic", parse_classic(text)
        return "puzzle", parse_puzzle(text)
    raise ParseError("empty file", 1)


def _parse_clues(token: str) -> tuple[int, ...]:
    if token == "-":
        return ()
    try:
        clues = tuple(int(part) for part in token.split("-"))
    except ValueError:
        raise ValueError(f"malformed clue list {token!r}; use e.g. 5-1-2 or -")
    return clues


def _parse_letters(token: str, length: int) -> tuple:
    if token == "distinct":
        return tuple(range(length))
    if len(token) != length:
        raise ValueError(
            f"letters {token!r} have length {len(token)}, spec has {length}"
        )
    return tuple(token)


def _line_from_args(args) -> LineProblem:
    return LineProblem(args.spec, _parse_letters(args.letters, len(args.spec)),
                       _parse_clues(args.desc))


def cmd_classify(args) -> int:
    kind, obj = _load_any(args.file)
    puzzle = classic_to_puzzle(obj) if kind == "classic" else obj
    for curve in puzzle.curves:
        print(f"curve {curve.name} {classify_curve(curve).value}")
    print(f"overall {classify_puzzle(puzzle).value}")
    return OK


def cmd_check_line(args) -> int:
    line = _line_from_args(args)
    if args.method == "oracle":
        result = oracle_settle(line) is not None
    else:
        result = check_consistency(line)
    print("consistent" if result else "inconsistent")
    return OK if result else FAIL


_SETTLERS = {
    "dp": settle_topdown,
    "naive": settle_naive,
    "basic": settle_basic_fast,
    "oracle": lambda line: oracle_settle(line),
}


def cmd_settle_line(args) -> int:
    line = _line_from_args(args)
    result = _SETTLERS[args.method](line)
    if result is None:
        raise InconsistentLineError("line admits no consistent fix")
    print(result)
    return OK


def _grid_render(board: str, width: int, height: int) -> str:
    return "\n".join(
        board[r * width:(r + 1) * width] for r in range(height)
    )


def cmd_solve(args) -> int:
    kind, obj = _load_any(args.file)
    puzzle = classic_to_puzzle(obj) if kind == "classic" else obj
    report = full_settle(puzzle, LineMethod(args.line_method))
    print(report.board)
    if kind == "classic":
        print(_grid_render(report.board, obj.width, obj.height))
    if args.trace:
        for round_no, steps in enumerate(report.rounds, start=1):
            for step in steps:
                cells = " ".join(f"{cell}={value}" for cell, value in step.settled)
                print(f"round {round_no} {step.line} {cells}")
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"verdict {report.verdict.value}")
    return OK if report.verdict is Verdict.SOLVED_SIMPLE else FAIL


def cmd_reduce(args) -> int:
    kind, obj = _load_any(args.file)
    if kind != "classic":
        raise ParseError("reduce expects a classic-format file", 1)
    result = reduce_classic(obj, args.mode)
    print(f"# pad_k {result.pad_k}")
    print(f"# padded {result.padded.width} {result.padded.height}")
    for i, part in enumerate(result.part_layout):
        clue_text = "-".join(str(d) for d in part.clues) or "-"
        if part.kind == "blocker":
            print(f"# part {i} blocker {clue_text}")
        else:
            print(f"# part {i} segment {part.axis} {part.index} {clue_text}")
    for (row, col), cell in sorted(result.original_map.items()):
        print(f"# orig {row} {col} {cell}")
    sys.stdout.write(serialize_puzzle(result.puzzle))
    return OK


def cmd_oracle(args) -> int:
    kind, obj = _load_any(args.file)
    puzzle = classic_to_puzzle(obj) if kind == "classic" else obj
    solutions = sorted(oracle_puzzle_solutions(puzzle, cell_limit=args.limit))
    print(f"solutions {len(solutions)}")
    for fill in solutions:
        print(fill)
    return OK if solutions else FAIL


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    points = bench_mod.bench_basic_line(
        sizes, repeats=args.repeats, method=args.method
    )
    bench_mod.write_csv(points, sys.stdout)
    if args.plot:
        bench_mod.render_scaling_figure(points, args.plot)
        print(f"wrote figure to {args.plot}", file=sys.stderr)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvogram", description="Curved nonogram solving toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="difficulty class per curve and overall")
    p.add_argument("file")
    p.set_defaults(fn=cmd_classify)

    def add_line_flags(p):
        p.add_argument("--spec", required=True, help="current line state over 0/1/?")
        p.add_argument("--letters", required=True,
                       help="face letters, e.g. abba, or the token 'distinct'")
        p.add_argument("--desc", required=True,
                       help="dash-separated clues, e.g. 5-1-2; '-' for empty")

    p = sub.add_parser("check-line", help="decide whether a line is consistent")
    add_line_flags(p)
    p.add_argument("--method", choices=["dp", "oracle"], default="dp")
    p.set_defaults(fn=cmd_check_line)

    p = sub.add_parser("settle-line", help="settle all forced cells of one line")
    add_line_flags(p)
    p.add_argument("--method", choices=sorted(_SETTLERS), default="dp")
    p.set_defaults(fn=cmd_settle_line)

    p = sub.add_parser("solve", help="iterated settling over a whole puzzle")
    p.add_argument("file")
    p.add_argument("--line-method", choices=[m.value for m in LineMethod],
                   default="dp")
    p.add_argument("--trace", action="store_true", help="print per-round settles")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("reduce", help="build the expert instance for a classic grid")
    p.add_argument("file")
    p.add_argument("--mode", choices=["core", "full"], default="core")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("oracle", help="enumerate all solutions exhaustively")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=22,
                   help="max unsettled cells to enumerate over")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("bench", help="time line settling and emit CSV")
    p.add_argument("--kind", choices=["basic-line"], default="basic-line")
    p.add_argument("--sizes", default="64,128,256",
                   help="comma-separated line lengths")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--method", choices=["dp", "basic"], default="dp")
    p.add_argument("--plot", metavar="PATH",
                   help="also render a log-log scaling figure to PATH")
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.fn(args)
    except InconsistentLineError:
        print("inconsistent", file=sys.stderr)
        return FAIL
    except (ParseError, NestingError, EnumerationLimitError, NotImplementedError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def run() -> None:
    raise SystemExit(main())
