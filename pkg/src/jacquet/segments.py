"""Cuspidal lines, segments and multisegments.

A segment ``[a, b]`` on a cuspidal line ``rho`` stands for the run of twists
``nu^a rho, ..., nu^b rho`` and for the irreducible representation ``Z`` attached
to it.  A multisegment stands for the product of the ``Z``'s of its segments.
Every value here is immutable and every function is pure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

__all__ = [
    "CuspidalLine",
    "Segment",
    "Multisegment",
    "contains",
    "is_linked",
    "precedes",
    "is_irreducible",
    "in_M_irr",
    "canonicalize",
]


@dataclass(frozen=True, eq=False)
class CuspidalLine:
    """Opaque label of a supercuspidal orbit, with the rank ``dim`` of its group.

    Lines compare by ``id`` alone: distinct ids never interact.
    """

    id: str
    dim: int = 1

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"line dimension must be a positive integer, got {self.dim!r}")

    def __eq__(self, other):
        if not isinstance(other, CuspidalLine):
            return NotImplemented
        return self.id == other.id

    def __hash__(self):
        return hash(("CuspidalLine", self.id))

    def __lt__(self, other):
        return self.id < other.id

    def __repr__(self):
        return f"CuspidalLine({self.id!r}, {self.dim})"


@functools.total_ordering
@dataclass(frozen=True)
class Segment:
    line: CuspidalLine
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"empty segment [{self.a}, {self.b}] cannot be constructed")

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    @property
    def size(self) -> int:
        return self.line.dim * self.length

    def sort_key(self):
        return (self.line.id, -self.a, -self.b)

    def __lt__(self, other):
        if not isinstance(other, Segment):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def exponents(self) -> range:
        return range(self.a, self.b + 1)

    def __str__(self):
        return f"Z[{self.a}..{self.b}]@{self.line.id}"


@functools.total_ordering
class Multisegment:
    """A finite multiset of segments.

    The segments are kept in the order given; equality and hashing go
    through the canonical order (line id, then decreasing ``a``, then
    decreasing ``b``), in which no segment precedes a later one.  Multisegments
    are ordered by comparing their canonical sequences entry by entry, each
    entry as ``(line id, a, b)``.
    """

    __slots__ = ("segments", "_key")

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = tuple(segments)
        for s in segs:
            if not isinstance(s, Segment):
                raise TypeError(f"expected Segment, got {type(s).__name__}")
        self.segments = segs
        self._key = tuple((s.line.id, s.a, s.b) for s in sorted(segs))

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def __getitem__(self, i):
        return self.segments[i]

    @property
    def total_size(self) -> int:
        return sum(s.size for s in self.segments)

    def sort_key(self):
        return self._key

    def canonical(self) -> "Multisegment":
        return Multisegment(sorted(self.segments))

    def lines(self) -> list[CuspidalLine]:
        return sorted(set(s.line for s in self.segments))

    def __eq__(self, other):
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other):
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Multisegment({list(self.segments)!r})"

    def __str__(self):
        if not self.segments:
            return "1"
        return " * ".join(str(s) for s in self.segments)


def contains(outer: Segment, inner: Segment) -> bool:
    return outer.line == inner.line and outer.a <= inner.a and inner.b <= outer.b


def is_linked(d1: Segment, d2: Segment) -> bool:
    """Neither segment contains the other and their union is a segment."""
    if d1.line != d2.line:
        return False
    if contains(d1, d2) or contains(d2, d1):
        return False
    return max(d1.a, d2.a) <= min(d1.b, d2.b) + 1


def precedes(d1: Segment, d2: Segment) -> bool:
    return is_linked(d1, d2) and d1.a < d2.a


def linked_pairs(ms: Multisegment) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, of linked segments in the given order."""
    return [(i, j) for i, j in combinations(range(len(ms)), 2) if is_linked(ms[i], ms[j])]


def is_irreducible(ms: Multisegment) -> bool:
    return not any(is_linked(x, y) for x, y in combinations(ms.segments, 2))


def in_M_irr(ms: Multisegment) -> bool:
    """Irreducible product with no segment contained in another (repeats excluded)."""
    for x, y in combinations(ms.segments, 2):
        if is_linked(x, y) or contains(x, y) or contains(y, x):
            return False
    return True


def canonicalize(ms: Multisegment) -> Multisegment:
    return ms.canonical()
