"""Formal sums with non-negative integer multiplicities.

An entry is a sortable key (a tuple of tensor factors) together with the list
of witnesses that produced it; the multiplicity of an entry is the number of
its witnesses.  Merging two sums is multiset union, so it is associative and
commutative.
"""

from __future__ import annotations

from collections import Counter
from typing import Any, Hashable, Iterable, Iterator


class FormalSum:
    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[tuple[Hashable, Any]] = ()):
        self._entries: dict[Hashable, list] = {}
        for key, witness in entries:
            self.add(key, witness)

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    def add(self, key, witness=None) -> None:
        self._entries.setdefault(key, []).append(witness)

    def multiplicity(self, key) -> int:
        return len(self._entries.get(key, ()))

    def witnesses(self, key) -> list:
        return list(self._entries.get(key, ()))

    def keys(self) -> list:
        return sorted(self._entries)

    def items(self) -> Iterator[tuple[Hashable, int, list]]:
        """Yield ``(key, multiplicity, witnesses)`` in canonical key order."""
        for key in self.keys():
            wits = self._entries[key]
            yield key, len(wits), list(wits)

    def counts(self) -> Counter:
        return Counter({k: len(v) for k, v in self._entries.items()})

    @property
    def total(self) -> int:
        return sum(len(v) for v in self._entries.values())

    def is_zero(self) -> bool:
        return not self._entries

    def max_multiplicity(self) -> int:
        return max((len(v) for v in self._entries.values()), default=0)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    def __iter__(self):
        return iter(self.keys())

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        out = FormalSum()
        for src in (self, other):
            for key, wits in src._entries.items():
                out._entries.setdefault(key, []).extend(wits)
        return out

    def __eq__(self, other):
        # Witnesses are provenance only; two sums are equal as classes.
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.counts() == other.counts()

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{m}*{k!r}" for k, m, _ in self.items())
        return f"FormalSum({body})"
