"""Sweeps that check multiplicity-freeness and the cross-module invariants.

Everything here is reproducible from its inputs: sampled sweeps draw from a
``random.Random`` seeded by the config, and violations are sorted before they
are reported, so two runs with the same config give equal verdicts.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Callable, Iterable, Iterator, Sequence

from .engine import (
    cuspidal_support,
    jacquet_levi,
    jacquet_max_levi,
    split_segment,
    support_points,
)
from .errors import PreconditionError
from .formal import FormalSum
from .geometric import compositions, oracle_jacquet_cuspidal
from .segments import (
    CuspidalLine,
    Multisegment,
    Segment,
    contains,
    in_M_irr,
    is_irreducible,
    is_linked,
)

__all__ = [
    "SweepConfig",
    "Violation",
    "Verdict",
    "count_split_vectors",
    "count_contingency_tables",
    "check_mult_free",
    "sweep_theorem1",
    "sweep_consistency",
    "truncation_counterexamples",
    "sweep_lines",
    "iter_multisegments",
]


@dataclass(frozen=True)
class SweepConfig:
    """Domain of a sweep.

    Segments are ``[a, b]`` with ``0 <= a <= b <= max_b`` on ``lines`` cuspidal
    lines, line ``i`` having dimension ``dims[i % len(dims)]``.  Multisegments
    have between 1 and ``max_r`` segments.  ``samples = 0`` means exhaustive
    enumeration; otherwise that many multisegments are drawn with ``seed``.
    """

    max_b: int = 3
    max_r: int = 2
    dims: tuple[int, ...] = (1,)
    lines: int = 1
    seed: int = 0
    samples: int = 0
    m_irr_only: bool = True

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if self.max_b < 0 or self.max_r < 0 or self.lines < 0 or self.samples < 0:
            raise ValueError(f"sweep bounds must be non-negative: {self}")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"line dimensions must be positive: {self.dims}")


@dataclass(frozen=True)
class Violation:
    check: str
    multisegment: Multisegment
    levi: Any = None
    term: Any = None
    witnesses: tuple = ()
    detail: str = ""

    def sort_key(self):
        return (self.check, self.multisegment.sort_key(), repr(self.levi), repr(self.term))


@dataclass
class Verdict:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Verdict") -> "Verdict":
        out = Verdict(self.checked + other.checked, self.violations + other.violations)
        out.violations.sort(key=Violation.sort_key)
        return out

    def finalize(self) -> "Verdict":
        self.violations.sort(key=Violation.sort_key)
        return self


# Independent counting oracles


def count_split_vectors(dims: Sequence[int], lengths: Sequence[int], l: int) -> int:
    """Number of integer ``x`` with ``sum dims[i] * x[i] = l`` and ``0 <= x[i] <= lengths[i]``."""
    if l < 0:
        return 0
    ways = [0] * (l + 1)
    ways[0] = 1
    for m, k in zip(dims, lengths):
        nxt = [0] * (l + 1)
        for total, w in enumerate(ways):
            if not w:
                continue
            for x in range(k + 1):
                t = total + m * x
                if t > l:
                    break
                nxt[t] += w
        ways = nxt
    return ways[l]


def count_contingency_tables(row_sums: Sequence[int], col_sums: Sequence[int]) -> int:
    """Count non-negative integer matrices with the given margins, filling one column at a time."""
    if sum(row_sums) != sum(col_sums):
        return 0
    return _count_tables(tuple(sorted(r for r in row_sums if r)), tuple(sorted(c for c in col_sums if c)))


@lru_cache(maxsize=None)
def _count_tables(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    # The count is invariant under permuting rows or columns, and zero margins
    # contribute a single forced line, so both are normalized for the memo.
    if not cols:
        return 1 if not rows else 0
    first, rest = cols[0], cols[1:]
    total = 0
    for split in _distributions(first, rows):
        left = tuple(sorted(r - x for r, x in zip(rows, split) if r - x))
        total += _count_tables(left, rest)
    return total


def _distributions(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    for x in range(min(total, caps[0]) + 1):
        for rest in _distributions(total - x, caps[1:]):
            yield (x,) + rest


# Domain enumeration


def sweep_lines(config: SweepConfig) -> list[CuspidalLine]:
    if config.lines == 1:
        return [CuspidalLine("rho", config.dims[0])]
    return [CuspidalLine(f"rho{i}", config.dims[i % len(config.dims)]) for i in range(config.lines)]


def _segments(config: SweepConfig) -> list[Segment]:
    return sorted(
        Segment(line, a, b)
        for line in sweep_lines(config)
        for a in range(config.max_b + 1)
        for b in range(a, config.max_b + 1)
    )


def iter_multisegments(config: SweepConfig) -> Iterator[Multisegment]:
    """Canonical multisegments of the configured domain, filtered by ``m_irr_only``."""
    accept = in_M_irr if config.m_irr_only else (lambda ms: True)
    if config.samples:
        yield from _sampled(config, accept)
        return
    segs = _segments(config)
    for r in range(1, config.max_r + 1):
        for combo in combinations_with_replacement(segs, r):
            ms = Multisegment(combo)
            if accept(ms):
                yield ms


def _sampled(config: SweepConfig, accept) -> Iterator[Multisegment]:
    rng = random.Random(config.seed)
    lines = sweep_lines(config)
    if not lines or config.max_r == 0:
        return
    drawn = attempts = 0
    while drawn < config.samples and attempts < 1000 * config.samples:
        attempts += 1
        r = rng.randint(1, config.max_r)
        segs = []
        for _ in range(r):
            a = rng.randint(0, config.max_b)
            segs.append(Segment(rng.choice(lines), a, rng.randint(a, config.max_b)))
        ms = Multisegment(segs).canonical()
        if accept(ms):
            drawn += 1
            yield ms


# Multiplicity-freeness


def check_mult_free(ms: Multisegment, l: int, engine: Callable = jacquet_max_levi) -> tuple[bool, Violation | None]:
    """All multiplicities of the Jacquet module at ``l`` equal 1.

    On failure the witness carries the first duplicated term, in canonical
    order, with every split vector producing it.
    """
    fs = engine(ms, l)
    for key, mult, wits in fs.items():
        if mult > 1:
            return False, Violation(
                "multiplicity",
                ms.canonical(),
                l,
                key,
                tuple(wits),
                f"multiplicity {mult}",
            )
    return True, None


def sweep_theorem1(config: SweepConfig, engine: Callable = jacquet_max_levi) -> Verdict:
    verdict = Verdict()
    for ms in iter_multisegments(config):
        for l in range(1, ms.total_size):
            verdict.checked += 1
            ok, witness = check_mult_free(ms, l, engine)
            if not ok:
                verdict.violations.append(witness)
    return verdict.finalize()


# Cross-module consistency


def truncation_counterexamples(segments: Iterable[Segment]) -> list[tuple[Segment, Segment, str, int, int]]:
    """Pairs violating: non-linked, mutually non-nested segments stay non-linked after truncation."""
    segs = list(segments)
    bad = []
    for d1 in segs:
        for d2 in segs:
            if d1.line != d2.line or is_linked(d1, d2) or contains(d1, d2) or contains(d2, d1):
                continue
            for c1 in range(d1.a, d1.b + 1):
                for c2 in range(d2.a, d2.b + 1):
                    if is_linked(Segment(d1.line, d1.a, c1), Segment(d2.line, d2.a, c2)):
                        bad.append((d1, d2, "head", c1, c2))
                    if is_linked(Segment(d1.line, c1, d1.b), Segment(d2.line, c2, d2.b)):
                        bad.append((d1, d2, "tail", c1, c2))
    return bad


def _support_key(ms: Multisegment) -> frozenset:
    return frozenset(Counter({(line.id, k): c for (line, k), c in cuspidal_support(ms).items()}).items())


def check_consistency(ms: Multisegment, l: int, engine: Callable = jacquet_max_levi) -> list[Violation]:
    """Every invariant tying one Jacquet module at ``l`` to its independent oracles."""
    ms = ms.canonical()
    n = ms.total_size
    out: list[Violation] = []
    fs = engine(ms, l)
    support = cuspidal_support(ms)

    expected = count_split_vectors([s.line.dim for s in ms], [s.length for s in ms], l)
    if fs.total != expected:
        out.append(Violation("term-count", ms, l, None, (), f"total {fs.total} != count {expected}"))

    arrangements = {
        tuple(frozenset(Counter(block).items()) for block in key)
        for key in oracle_jacquet_cuspidal(support_points(ms), (l, n - l))
    }
    irr = in_M_irr(ms)
    for key, mult, wits in fs.items():
        left, right = key
        if left.total_size != l or right.total_size != n - l:
            out.append(Violation("size", ms, l, key, tuple(wits),
                                 f"sizes {left.total_size}+{right.total_size}"))
        if cuspidal_support(left) + cuspidal_support(right) != support:
            out.append(Violation("support", ms, l, key, tuple(wits), "cuspidal support not conserved"))
        probe = (_support_key(left), _support_key(right))
        if probe not in arrangements:
            out.append(Violation("oracle", ms, l, key, tuple(wits), "arrangement forbidden by geometric lemma"))
        if irr and mult != 1:
            out.append(Violation("multiplicity", ms, l, key, tuple(wits), f"multiplicity {mult}"))
        if irr and not (is_irreducible(left) and is_irreducible(right)):
            out.append(Violation("term-irreducible", ms, l, key, tuple(wits), "reducible factor"))
    return out


def check_transitivity(ms: Multisegment, gamma, splitter=split_segment) -> list[Violation]:
    ms = ms.canonical()
    try:
        right = jacquet_levi(ms, gamma, "right", splitter=splitter)
        left = jacquet_levi(ms, gamma, "left", splitter=splitter)
    except PreconditionError as e:
        # A broken split rule can hand a factor of the wrong size to the next stage.
        return [Violation("transitivity", ms, tuple(gamma), None, (), f"engine error: {e}")]
    if right != left:
        return [Violation("transitivity", ms, tuple(gamma), None, (), "bracketings disagree")]
    return []


def sweep_consistency(config: SweepConfig, splitter=split_segment) -> Verdict:
    """Run every cross-module invariant over the configured domain.

    ``splitter`` replaces the single-segment rule everywhere, which lets a
    test feed in a deliberately broken rule and watch the sweep catch it.
    """

    def engine(ms, l):
        return jacquet_max_levi(ms, l, splitter=splitter)

    verdict = Verdict()
    for d1, d2, where, c1, c2 in truncation_counterexamples(_segments(config)):
        verdict.violations.append(
            Violation("truncation", Multisegment([d1, d2]), (c1, c2), where)
        )
    for ms in iter_multisegments(config):
        n = ms.total_size
        for l in range(1, n):
            verdict.checked += 1
            verdict.violations.extend(check_consistency(ms, l, engine))
        for gamma in compositions(n, 3):
            verdict.checked += 1
            verdict.violations.extend(check_transitivity(ms, gamma.parts, splitter))
    return verdict.finalize()


def formal_sum_record(fs: FormalSum) -> list[tuple]:
    """Hashable snapshot of a formal sum, witnesses included (for determinism checks)."""
    return [(key, mult, tuple(wits)) for key, mult, wits in fs.items()]
