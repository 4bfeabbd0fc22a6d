"""Compositions, split matrices and the cuspidal form of the geometric lemma.

Weyl group elements are never built: each double-coset representative is
represented by its matrix of block intersection sizes, a non-negative integer
matrix with prescribed row sums (the blocks of ``beta``) and column sums (the
blocks of ``gamma``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from operator import sub
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError
from .formal import FormalSum
from .segments import CuspidalLine

__all__ = [
    "Composition",
    "SplitMatrix",
    "as_composition",
    "compositions",
    "is_subpartition",
    "enumerate_split_matrices",
    "vanishing_cuspidal",
    "oracle_jacquet_cuspidal",
]


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive integers, got {parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def boundaries(self) -> frozenset[int]:
        """Prefix sums, i.e. the last index of every block."""
        return frozenset(accumulate(self.parts))

    def blocks(self) -> list[range]:
        """Blocks as consecutive 1-based index ranges covering ``1..total``."""
        out, start = [], 1
        for p in self.parts:
            out.append(range(start, start + p))
            start += p
        return out

    def __str__(self):
        return ",".join(map(str, self.parts))


def as_composition(x: Composition | Sequence[int]) -> Composition:
    return x if isinstance(x, Composition) else Composition(tuple(x))


def compositions(n: int, parts: int | None = None) -> Iterator[Composition]:
    """All compositions of ``n`` (optionally with exactly ``parts`` parts), lexicographically."""

    def rec(rest, k):
        if k is None:
            if rest == 0:
                yield ()
                return
            for first in range(1, rest + 1):
                for tail in rec(rest - first, None):
                    yield (first,) + tail
            return
        if k == 1:
            if rest >= 1:
                yield (rest,)
            return
        for first in range(1, rest - k + 2):
            for tail in rec(rest - first, k - 1):
                yield (first,) + tail

    if n < 1:
        return
    for c in rec(n, parts):
        yield Composition(c)


def _check_totals(beta: Composition, gamma: Composition) -> None:
    if beta.total != gamma.total:
        raise PreconditionError(f"compositions of different totals: {beta.total} vs {gamma.total}")


def is_subpartition(beta, gamma) -> bool:
    """Every block of ``beta`` lies inside a single block of ``gamma``."""
    beta, gamma = as_composition(beta), as_composition(gamma)
    _check_totals(beta, gamma)
    return gamma.boundaries() <= beta.boundaries()


class SplitMatrix(tuple):
    """An ``r x s`` matrix of non-negative integers, stored as a tuple of row tuples."""

    __slots__ = ()

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self)

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self)

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(map(sum, zip(*self)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self), len(self[0]) if self else 0

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self]

    def __repr__(self):
        return f"SplitMatrix({self.tolist()})"


@lru_cache(maxsize=65536)
def _bounded_rows(total: int, caps: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    # Vectors with entry j in [0, caps[j]] summing to total, lexicographically ascending.
    if not caps:
        return ((),) if total == 0 else ()
    if len(caps) == 1:
        return ((total,),) if total <= caps[0] else ()
    room = sum(caps[1:])
    out = []
    for v in range(max(0, total - room), min(caps[0], total) + 1):
        out.extend((v,) + tail for tail in _bounded_rows(total - v, caps[1:]))
    return tuple(out)


@lru_cache(maxsize=65536)
def _row_pairs(total: int, caps: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    # Each admissible row together with the forced row left over after it.
    return tuple((row, tuple(map(sub, caps, row))) for row in _bounded_rows(total, caps))


def enumerate_split_matrices(beta, gamma) -> list[SplitMatrix]:
    """All non-negative integer matrices with row sums ``beta`` and column sums ``gamma``.

    Rows are generated one at a time, each bounded by the column sums still
    available; the output is in ascending row-major lexicographic order.
    """
    beta, gamma = as_composition(beta), as_composition(gamma)
    _check_totals(beta, gamma)
    rows = beta.parts
    r = len(rows)
    if r == 1:
        return [SplitMatrix((gamma.parts,))]
    out: list[SplitMatrix] = []
    head: list[tuple[int, ...]] = []

    def rec(i, caps):
        if i == r - 2:
            prefix = tuple(head)
            out.extend([SplitMatrix((*prefix, row, rest)) for row, rest in _row_pairs(rows[i], caps)])
            return
        for row, rest in _row_pairs(rows[i], caps):
            head.append(row)
            rec(i + 1, rest)
            head.pop()

    rec(0, gamma.parts)
    return out


def vanishing_cuspidal(beta, gamma) -> bool:
    """Whether ``r_gamma`` of a product of supercuspidals of sizes ``beta`` vanishes.

    The product survives exactly when the parts of ``beta`` can be distributed
    among the blocks of ``gamma`` so that every block is filled exactly.  A
    subpartition ``beta <= gamma`` always survives, but so do rearrangements
    such as ``beta = (1, 2)``, ``gamma = (2, 1)``.
    """
    beta, gamma = as_composition(beta), as_composition(gamma)
    _check_totals(beta, gamma)
    parts = sorted(beta.parts, reverse=True)

    @lru_cache(maxsize=None)
    def fill(i, caps):
        if i == len(parts):
            return True
        p = parts[i]
        tried = set()
        for j, c in enumerate(caps):
            if c >= p and c not in tried:
                tried.add(c)
                nxt = tuple(sorted(caps[:j] + (c - p,) + caps[j + 1:]))
                if fill(i + 1, nxt):
                    return True
        return False

    return not fill(0, tuple(sorted(gamma.parts)))


def _point_label(line) -> str:
    return line.id if isinstance(line, CuspidalLine) else str(line)


def oracle_jacquet_cuspidal(points: Iterable[tuple], gamma) -> FormalSum:
    """Jacquet module of a product of supercuspidal points, straight from the geometric lemma.

    ``points`` is a sequence of ``(line, exponent, dim)``.  Each term assigns
    every point to a single block of ``gamma`` (its matrix row is ``0`` except
    for one entry equal to ``dim``); within a block the points keep their
    original order.  Keys are tuples of blocks, each a tuple of
    ``(line_id, exponent)``; witnesses are the split matrices.
    """
    pts = [((_point_label(line), int(k)), int(dim)) for line, k, dim in points]
    gamma = as_composition(gamma)
    out = FormalSum()
    if not pts:
        return out
    beta = Composition(tuple(d for _, d in pts))
    _check_totals(beta, gamma)
    s = len(gamma)
    labels = [p for p, _ in pts]
    dims = [d for _, d in pts]
    units = [[tuple(d if i == j else 0 for i in range(s)) for j in range(s)] for d in dims]
    caps = list(gamma.parts)
    blocks: list[list] = [[] for _ in range(s)]
    rows: list[tuple[int, ...]] = []
    last = len(pts) - 1
    add = out.add

    def rec(i):
        d, label, unit = dims[i], labels[i], units[i]
        # Blocks from last to first, so matrix rows come out lexicographically ascending.
        for j in range(s - 1, -1, -1):
            if caps[j] < d:
                continue
            blocks[j].append(label)
            rows.append(unit[j])
            if i == last:
                # The totals agree, so exactly one block is left open here.
                add(tuple(map(tuple, blocks)), SplitMatrix(rows))
            else:
                caps[j] -= d
                rec(i + 1)
                caps[j] += d
            blocks[j].pop()
            rows.pop()
            if i == last:
                return

    rec(0)
    return out
