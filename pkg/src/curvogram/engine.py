"""Line-level solving engine.

Decides in polynomial time whether a partially settled line with nested
repeated-face constraints can still be completed to match its clue list, and
settles every cell whose value is forced.

The clue list is first translated into a 0/1 pattern string in which every
``0`` may stretch to one or more empty cells.  Repeated letters are handled
by decomposing the (padded) line into a laminar family of intervals: the
span of all occurrences of a face ("group"), the gap between two successive
occurrences including the latter ("bracket"), and the left-to-right partial
groups in between.  A binary composition tree over these 2l-1 intervals
drives a dynamic program whose subproblem ``table[node][i]`` holds, as a
bitmask over pattern end indices ``i'``, whether the node's cells can be
completed to match ``pattern[i..i']``.  A reverse top-down pass then marks
which subproblems can be extended to a full-line match, from which forced
cell values are read off.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Hashable, Iterator

from .model import (
    EMPTY,
    FILLED,
    UNSETTLED,
    Difficulty,
    Letters,
    LineProblem,
    classify_line,
    validate_clues,
)


class NestingError(ValueError):
    """Raised when repeated letters interleave and the engine cannot apply."""


class InconsistentLineError(ValueError):
    """Raised when a settle operation receives a line with no consistent fix."""


def translate_description(clues) -> str:
    """Render a clue list as a 0/1 pattern with stretchable zero separators.

    The result starts and ends with ``0`` and places exactly one ``0``
    between consecutive 1-blocks; an empty clue list yields ``"0"``.
    """
    clues = validate_clues(clues)
    if not clues:
        return "0"
    return "0" + "0".join("1" * d for d in clues) + "0"


def pad_line(p: LineProblem) -> LineProblem:
    """Return the line extended with one virtual empty cell at each end.

    The virtual cells take fresh letters so they join no equality class;
    they realize the convention that every line starts and ends empty.
    """
    taken = set(p.letters)
    fresh = []
    i = 0
    while len(fresh) < 2:
        label = f"_pad{i}"
        if label not in taken:
            fresh.append(label)
        i += 1
    letters = (fresh[0],) + p.letters + (fresh[1],)
    return LineProblem(EMPTY + p.spec + EMPTY, letters, p.clues)


@dataclass(eq=False)
class DecompNode:
    """One interval ``lo..hi`` (inclusive, 0-based) of the composition tree.

    ``tie_ends`` marks compositions whose two children both end on an
    occurrence of the same face, which therefore must take equal values.
    """

    lo: int
    hi: int
    index: int
    left: "DecompNode | None" = None
    right: "DecompNode | None" = None
    tie_ends: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def interval(self) -> tuple[int, int]:
        return (self.lo, self.hi)


class DecompositionTree:
    """Binary composition tree over the 2l-1 intervals of a letter sequence.

    ``nodes`` is in construction order, which places every child before its
    parent (postorder), so a single forward sweep is bottom-up.
    """

    def __init__(self, letters: Letters):
        self.letters = letters
        self.nodes: list[DecompNode] = []
        self.root: DecompNode | None = None

    def __len__(self) -> int:
        return len(self.nodes)

    def intervals(self) -> set[tuple[int, int]]:
        return {n.interval for n in self.nodes}

    def leaves(self) -> Iterator[DecompNode]:
        return (n for n in self.nodes if n.is_leaf)


def build_decomposition(letters) -> DecompositionTree:
    """Build the composition tree for a properly nested letter sequence.

    Groups grow left to right by absorbing one bracket at a time (these
    compositions tie the end values together); brackets and the whole line
    grow left to right by absorbing complete groups, and a bracket finally
    absorbs the closing occurrence of its enclosing face.  Multi-part
    compositions are binarized strictly left to right.
    """
    letters = tuple(letters)
    l = len(letters)
    if l == 0:
        raise ValueError("cannot decompose an empty letter sequence")
    if classify_line(letters) is Difficulty.EXPERT:
        raise NestingError("repeated letters interleave; decomposition undefined")

    occ: dict[Hashable, list[int]] = {}
    for i, x in enumerate(letters):
        occ.setdefault(x, []).append(i)

    limit = 3 * l + 100
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)

    tree = DecompositionTree(letters)

    def make(lo: int, hi: int, left=None, right=None, tie=False) -> DecompNode:
        node = DecompNode(lo, hi, len(tree.nodes), left, right, tie)
        tree.nodes.append(node)
        return node

    def fold(parts: list[DecompNode]) -> DecompNode:
        cur = parts[0]
        for nxt in parts[1:]:
            cur = make(cur.lo, nxt.hi, cur, nxt)
        return cur

    def build_group(positions: list[int]) -> DecompNode:
        cur = make(positions[0], positions[0])
        for prev, nxt in zip(positions, positions[1:]):
            bracket = build_bracket(prev + 1, nxt)
            cur = make(cur.lo, nxt, cur, bracket, tie=True)
        return cur

    def build_bracket(lo: int, hi: int) -> DecompNode:
        parts = build_span(lo, hi - 1) if hi > lo else []
        parts.append(make(hi, hi))
        return fold(parts)

    def build_span(lo: int, hi: int) -> list[DecompNode]:
        # A maximal run of complete groups; nesting guarantees each group's
        # occurrences all fall inside the span.
        parts = []
        p = lo
        while p <= hi:
            positions = occ[letters[p]]
            assert positions[0] == p and positions[-1] <= hi
            parts.append(build_group(positions))
            p = positions[-1] + 1
        return parts

    tree.root = fold(build_span(0, l - 1))
    assert len(tree.nodes) == 2 * l - 1
    return tree


class _LineAnalysis:
    """Padded line, pattern, tree, and the filled consistency tables.

    Tables map each tree node to a list of ``m`` bitmasks: bit ``i'`` of
    ``table[node][i]`` says the node's cells can match ``pattern[i..i']``.
    Singleton nodes allow only ``i' == i`` and only when the cell state is
    compatible with the pattern symbol.
    """

    def __init__(self, line: LineProblem):
        self.line = line
        self.padded = pad_line(line)
        self.pattern = translate_description(line.clues)
        self.m = len(self.pattern)
        self.tree = build_decomposition(self.padded.letters)

        m = self.m
        a = self.pattern
        full = (1 << m) - 1
        self.zero_mask = sum(1 << i for i in range(m) if a[i] == EMPTY)
        self.ones_mask = full & ~self.zero_mask
        self.adj_eq = sum(1 << i for i in range(m - 1) if a[i] == a[i + 1])
        self.sym_masks = {EMPTY: self.zero_mask, FILLED: self.ones_mask}
        self.compat = [
            full if s == UNSETTLED else self.sym_masks[s] for s in self.padded.spec
        ]

        self.tables: list[list[int]] = [[] for _ in self.tree.nodes]
        self._fill_bottom_up()
        root_row = self.tables[self.tree.root.index][0]
        self.consistent = bool(root_row >> (m - 1) & 1)
        self._ext: list[list[int]] | None = None

    # -- bottom-up consistency ------------------------------------------------

    def _leaf_table(self, node: DecompNode) -> list[int]:
        cmask = self.compat[node.lo]
        return [(1 << i) & cmask for i in range(self.m)]

    def _fill_bottom_up(self) -> None:
        for node in self.tree.nodes:
            if node.is_leaf:
                self.tables[node.index] = self._leaf_table(node)
            elif node.right.is_leaf:
                self.tables[node.index] = self._compose_leaf(node)
            else:
                self.tables[node.index] = self._compose_general(node)

    def _compose_leaf(self, node: DecompNode) -> list[int]:
        # Right child is a single cell: the split index is forced, so each
        # row combines in O(1) big-int operations.
        A = self.tables[node.left.index]
        cmask = self.compat[node.right.lo]
        zero = self.zero_mask
        if node.tie_ends:
            adj = self.adj_eq
            return [((x & adj) << 1 | (x & zero)) & cmask if x else 0 for x in A]
        return [(x << 1 | (x & zero)) & cmask if x else 0 for x in A]

    def _compose_general(self, node: DecompNode) -> list[int]:
        A = self.tables[node.left.index]
        B = self.tables[node.right.index]
        a = self.pattern
        m = self.m
        tie = node.tie_ends
        sym = self.sym_masks
        out = [0] * m
        for i in range(m):
            x = A[i]
            acc = 0
            while x:
                ip = (x & -x).bit_length() - 1
                x &= x - 1
                s = a[ip]
                # Disjoint split consumes pattern[ip+1..]; a shared stretchable
                # 0 lets both children reuse index ip.
                if tie:
                    mask = sym[s]
                    if ip + 1 < m:
                        acc |= B[ip + 1] & mask
                    if s == EMPTY:
                        acc |= B[ip] & mask
                else:
                    if ip + 1 < m:
                        acc |= B[ip + 1]
                    if s == EMPTY:
                        acc |= B[ip]
            out[i] = acc
        return out

    # -- top-down extensibility -----------------------------------------------

    def extensible(self) -> list[list[int]]:
        """Mark, per node, the (i, i') pairs that occur in some full match.

        The target pair at the root seeds the marking; each marked pair is
        pushed through every satisfied composition split, in reverse.
        """
        if self._ext is not None:
            return self._ext
        m = self.m
        ext: list[list[int]] = [[0] * m for _ in self.tree.nodes]
        if self.consistent:
            ext[self.tree.root.index][0] = 1 << (m - 1)
            for node in reversed(self.tree.nodes):
                if node.is_leaf:
                    continue
                if node.right.is_leaf:
                    self._push_leaf(node, ext)
                else:
                    self._push_general(node, ext)
        self._ext = ext
        return ext

    def _push_leaf(self, node: DecompNode, ext: list[list[int]]) -> None:
        E = ext[node.index]
        A = self.tables[node.left.index]
        EL = ext[node.left.index]
        cmask = self.compat[node.right.lo]
        zero = self.zero_mask
        adj = self.adj_eq
        tie = node.tie_ends
        leaf_hits = 0
        for i in range(self.m):
            e = E[i]
            if not e:
                continue
            ec = e & cmask
            c1 = (ec >> 1) & A[i]
            if tie:
                c1 &= adj
            c2 = ec & A[i] & zero
            if c1 or c2:
                EL[i] |= c1 | c2
                leaf_hits |= (c1 << 1) | c2
        ER = ext[node.right.index]
        x = leaf_hits
        while x:
            ip = (x & -x).bit_length() - 1
            x &= x - 1
            ER[ip] |= 1 << ip

    def _push_general(self, node: DecompNode, ext: list[list[int]]) -> None:
        E = ext[node.index]
        A = self.tables[node.left.index]
        B = self.tables[node.right.index]
        EL = ext[node.left.index]
        ER = ext[node.right.index]
        a = self.pattern
        m = self.m
        tie = node.tie_ends
        sym = self.sym_masks
        for i in range(m):
            e = E[i]
            x = A[i]
            if not e or not x:
                continue
            while x:
                ip = (x & -x).bit_length() - 1
                x &= x - 1
                s = a[ip]
                mask = sym[s] if tie else -1
                if ip + 1 < m:
                    hits = B[ip + 1] & mask & e
                    if hits:
                        EL[i] |= 1 << ip
                        ER[ip + 1] |= hits
                if s == EMPTY:
                    hits = B[ip] & mask & e
                    if hits:
                        EL[i] |= 1 << ip
                        ER[ip] |= hits

    def forced_values(self) -> list[str | None]:
        """Per padded position: the single value it takes in all matches.

        ``None`` where both values (or, on settled cells, the settled value
        alone) remain possible; meaningful only when the line is consistent.
        """
        ext = self.extensible()
        out: list[str | None] = [None] * len(self.padded.spec)
        for node in self.tree.leaves():
            diag = 0
            row = ext[node.index]
            for i in range(self.m):
                diag |= row[i] & (1 << i)
            can_zero = bool(diag & self.zero_mask)
            can_one = bool(diag & self.ones_mask)
            if can_zero != can_one:
                out[node.lo] = EMPTY if can_zero else FILLED
        return out


def check_consistency(p: LineProblem) -> bool:
    """True iff some fix refining the line (respecting letter equalities)
    matches the clue list."""
    return _LineAnalysis(p).consistent


def settle_naive(p: LineProblem) -> str:
    """Settle forced faces by trying both values per face and re-checking.

    For every unsettled face, each candidate value is written to all of its
    occurrences; if exactly one candidate keeps the line consistent, the face
    is settled to it.
    """
    if not check_consistency(p):
        raise InconsistentLineError("line admits no consistent fix")
    out = list(p.spec)
    for letter, positions in p.positions_by_letter().items():
        if p.spec[positions[0]] != UNSETTLED:
            continue
        candidates = []
        for value in (EMPTY, FILLED):
            trial = list(p.spec)
            for j in positions:
                trial[j] = value
            if check_consistency(p.with_spec("".join(trial))):
                candidates.append(value)
        assert candidates, "consistent line lost both values for a face"
        if len(candidates) == 1:
            for j in positions:
                out[j] = candidates[0]
    return "".join(out)


def settle_topdown(p: LineProblem) -> str:
    """Settle forced cells via the extensibility marking, in one DP pass."""
    analysis = _LineAnalysis(p)
    if not analysis.consistent:
        raise InconsistentLineError("line admits no consistent fix")
    forced = analysis.forced_values()
    out = list(p.spec)
    for j, state in enumerate(p.spec):
        if state == UNSETTLED and forced[j + 1] is not None:
            out[j] = forced[j + 1]
    return "".join(out)


def settle_basic_fast(p: LineProblem) -> str:
    """Settle a line of all-distinct letters with prefix/suffix sweeps only.

    Degenerate path: with no repeats the composition tree is a left comb, so
    two linear sweeps computing, per cell, the pattern indices reachable from
    the left and from the right replace the tree machinery.
    """
    if classify_line(p.letters) is not Difficulty.BASIC:
        raise ValueError("settle_basic_fast requires all-distinct letters")
    padded = pad_line(p)
    pattern = translate_description(p.clues)
    m = len(pattern)
    full = (1 << m) - 1
    zero_mask = sum(1 << i for i in range(m) if pattern[i] == EMPTY)
    ones_mask = full & ~zero_mask
    sym = {EMPTY: zero_mask, FILLED: ones_mask, UNSETTLED: full}
    compat = [sym[s] for s in padded.spec]
    L = len(padded.spec)

    fwd = [0] * L
    fwd[0] = compat[0] & 1
    for j in range(1, L):
        x = fwd[j - 1]
        fwd[j] = (x << 1 | (x & zero_mask)) & compat[j]
    if not fwd[L - 1] >> (m - 1) & 1:
        raise InconsistentLineError("line admits no consistent fix")

    bwd = [0] * L
    bwd[L - 1] = compat[L - 1] & (1 << (m - 1))
    for j in range(L - 2, -1, -1):
        x = bwd[j + 1]
        bwd[j] = (x >> 1 | (x & zero_mask)) & compat[j]

    out = list(p.spec)
    for j, state in enumerate(p.spec):
        if state != UNSETTLED:
            continue
        reach = fwd[j + 1] & bwd[j + 1]
        can_zero = bool(reach & zero_mask)
        can_one = bool(reach & ones_mask)
        if can_zero != can_one:
            out[j] = EMPTY if can_zero else FILLED
    return "".join(out)
