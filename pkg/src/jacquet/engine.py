"""Jacquet modules of products of segment representations.

For a single segment ``[a, b]`` on a line of dimension ``m`` the Jacquet module
with respect to ``GL_l x GL_{n-l}`` is zero unless ``m`` divides ``l``, and is
otherwise the tensor product of the two truncations ``[a, p-1]`` and
``[p, b]`` with ``p = a + l/m``.  For a product of segments every way of
cutting each segment (a *split vector*) contributes the induced term built
from the left pieces and the right pieces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Union

from .errors import PreconditionError
from .formal import FormalSum
from .geometric import Composition, as_composition
from .segments import CuspidalLine, Multisegment, Segment

__all__ = [
    "JacquetTerm",
    "split_segment",
    "split_vectors",
    "jacquet_terms",
    "jacquet_max_levi",
    "jacquet_levi",
    "refine_factor",
    "cuspidal_support",
]

Pieces = Optional[tuple[Optional[Segment], Optional[Segment]]]
Splitter = Callable[[Segment, int], Pieces]
Bracketing = Union[int, tuple]


@dataclass(frozen=True)
class JacquetTerm:
    left: Multisegment
    right: Multisegment
    split_vector: tuple[int, ...]

    def key(self) -> tuple[Multisegment, Multisegment]:
        return (self.left.canonical(), self.right.canonical())


def split_segment(d: Segment, l: int) -> Pieces:
    """Jacquet module of ``Z(d)`` for the Levi ``GL_l x GL_{size-l}``.

    Returns ``None`` when it vanishes, else ``(left, right)`` where an empty
    piece is ``None``.  ``l = 0`` and ``l = size`` are allowed here.
    """
    if not 0 <= l <= d.size:
        raise PreconditionError(f"l={l} outside [0, {d.size}] for {d}")
    m = d.line.dim
    if l % m:
        return None
    p = d.a + l // m
    left = Segment(d.line, d.a, p - 1) if p > d.a else None
    right = Segment(d.line, p, d.b) if p <= d.b else None
    return left, right


def split_vectors(ms: Multisegment, l: int) -> Iterator[tuple[int, ...]]:
    """Cut points ``(p_1, ..., p_r)`` with ``a_i <= p_i <= b_i + 1`` and ``sum m_i (p_i - a_i) = l``.

    Segments are taken in the order stored in ``ms``; vectors come out in
    lexicographic order of the offsets ``p_i - a_i``.
    """
    segs = ms.segments
    r = len(segs)
    dims = [s.line.dim for s in segs]
    lens = [s.length for s in segs]
    room = [0] * (r + 1)
    for i in range(r - 1, -1, -1):
        room[i] = room[i + 1] + dims[i] * lens[i]
    xs = [0] * r

    def rec(i, rest):
        if i == r:
            if rest == 0:
                yield tuple(s.a + x for s, x in zip(segs, xs))
            return
        m = dims[i]
        lo = max(0, -(-(rest - room[i + 1]) // m))
        for x in range(lo, min(lens[i], rest // m) + 1):
            xs[i] = x
            yield from rec(i + 1, rest - m * x)

    if 0 <= l <= room[0]:
        yield from rec(0, l)


def jacquet_terms(ms: Multisegment, l: int, *, splitter: Splitter = split_segment) -> Iterator[JacquetTerm]:
    """One term per split vector of the canonical ordering of ``ms``."""
    ms = ms.canonical()
    for pv in split_vectors(ms, l):
        left, right = [], []
        for seg, p in zip(ms, pv):
            pieces = splitter(seg, seg.line.dim * (p - seg.a))
            if pieces is None:
                break
            lo, hi = pieces
            if lo is not None:
                left.append(lo)
            if hi is not None:
                right.append(hi)
        else:
            yield JacquetTerm(Multisegment(left).canonical(), Multisegment(right).canonical(), pv)


def jacquet_max_levi(ms: Multisegment, l: int, *, splitter: Splitter = split_segment) -> FormalSum:
    """Semisimplified Jacquet module of ``ms`` for the maximal Levi ``GL_l x GL_{n-l}``.

    Keys are ``(left, right)`` pairs of canonical multisegments; the
    witnesses of a key are the split vectors producing it.  Outside the
    class of irreducible products with no nested segments the entries are
    classes of possibly reducible induced terms, collected syntactically.
    """
    n = ms.total_size
    if not 1 <= l <= n - 1:
        raise PreconditionError(f"l={l} must satisfy 1 <= l <= {n - 1}")
    out = FormalSum()
    for t in jacquet_terms(ms, l, splitter=splitter):
        out.add(t.key(), t.split_vector)
    return out


def _tree_size(tree: Bracketing) -> int:
    if isinstance(tree, int):
        return tree
    return sum(_tree_size(t) for t in tree)


def _right_comb(parts: Sequence[int]) -> Bracketing:
    tree: Bracketing = parts[-1]
    for p in reversed(parts[:-1]):
        tree = (p, tree)
    return tree


def _left_comb(parts: Sequence[int]) -> Bracketing:
    tree: Bracketing = parts[0]
    for p in parts[1:]:
        tree = (tree, p)
    return tree


def _levi_tree(ms: Multisegment, tree: Bracketing, splitter: Splitter) -> FormalSum:
    if isinstance(tree, int):
        return FormalSum([((ms.canonical(),), ())])
    if len(tree) != 2:
        raise PreconditionError(f"bracketing nodes must be binary, got {tree!r}")
    lt, rt = tree
    out = FormalSum()
    for (left, right), _, witnesses in jacquet_max_levi(ms, _tree_size(lt), splitter=splitter).items():
        lsum = _levi_tree(left, lt, splitter)
        rsum = _levi_tree(right, rt, splitter)
        for lkey, _, lw in lsum.items():
            for rkey, _, rw in rsum.items():
                for w in witnesses:
                    for a in lw:
                        for b in rw:
                            out.add(lkey + rkey, (w,) + a + b)
    return out


def jacquet_levi(
    ms: Multisegment,
    gamma: Composition | Sequence[int],
    bracketing: str | Bracketing = "right",
    *,
    splitter: Splitter = split_segment,
) -> FormalSum:
    """Jacquet module for the Levi ``GL_{c_1} x ... x GL_{c_s}``, by iterated maximal splits.

    ``bracketing="right"`` splits off ``c_1`` first and recurses on the right
    factor; ``"left"`` splits off ``c_s`` first and recurses on the left;
    a nested tuple of ints such as ``((1, 1), 2)`` gives any other order.
    Keys are tuples of ``s`` canonical multisegments; each witness is the
    tuple of split vectors used, in pre-order.
    """
    gamma = as_composition(gamma)
    n = ms.total_size
    if gamma.total != n:
        raise PreconditionError(f"composition {gamma} does not sum to {n}")
    if len(gamma) < 2:
        raise PreconditionError("a proper Levi needs at least two blocks")
    if bracketing == "right":
        tree = _right_comb(gamma.parts)
    elif bracketing == "left":
        tree = _left_comb(gamma.parts)
    else:
        tree = bracketing
        leaves = _leaves(tree)
        if tuple(leaves) != gamma.parts:
            raise PreconditionError(f"bracketing {tree!r} does not match composition {gamma}")
    return _levi_tree(ms, tree, splitter)


def _leaves(tree: Bracketing) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return [x for t in tree for x in _leaves(t)]


def refine_factor(fs: FormalSum, position: int, l: int, *, splitter: Splitter = split_segment) -> FormalSum:
    """Apply a further maximal split to factor ``position`` of every term of ``fs``."""
    out = FormalSum()
    for key, _, witnesses in fs.items():
        factor = key[position]
        for (left, right), _, sub in jacquet_max_levi(factor, l, splitter=splitter).items():
            new_key = key[:position] + (left, right) + key[position + 1:]
            for w in witnesses:
                for v in sub:
                    out.add(new_key, _stages(w) + (v,))
    return out


def _stages(w) -> tuple:
    # A bare split vector is a tuple of ints; a staged witness is a tuple of those.
    if w and isinstance(w[0], tuple):
        return tuple(w)
    return (w,)


def cuspidal_support(ms: Multisegment) -> Counter:
    """Multiset of cuspidal points ``(line, exponent)`` of ``ms``."""
    return Counter((s.line, k) for s in ms for k in s.exponents())


def support_points(ms: Multisegment) -> list[tuple[CuspidalLine, int, int]]:
    """Cuspidal points of the canonical ordering of ``ms`` as ``(line, exponent, dim)``, in order."""
    return [(s.line, k, s.line.dim) for s in ms.canonical() for k in s.exponents()]
