"""Multi-indices over {1, 2} and the jet coordinates they label.

A jet coordinate u^a_I consists of a dependent-variable number a >= 1 and
a non-decreasing multi-index I with entries in {1, 2}; the length of I is
the order of the coordinate.  Because the entries are sorted and drawn
from a two-letter alphabet, I is completely determined by its length and
the number of 2s it contains, and that compact pair is what the classes
below store.  Summing over sorted multi-indices exactly once absorbs the
reciprocal-multiplicity weights that would otherwise accompany sums over
ordered index tuples.

For the polynomial kernel a coordinate is packed into a single integer

    code = (field << 8) | (order << 4) | twos

whose natural integer order coincides with the canonical coordinate order
(field, then order, then entries).  Orders are capped at 15 so the packing
never overflows its nibble.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, NamedTuple

MAX_ORDER = 15


class MultiIndex(NamedTuple):
    """Sorted multi-index over {1, 2}, stored as (length, number of 2s)."""

    size: int
    twos: int

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        return cls.from_entries(entries)

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "MultiIndex":
        size = 0
        twos = 0
        for e in entries:
            if e == 2:
                twos += 1
            elif e != 1:
                raise ValueError(f"multi-index entry {e!r} not in {{1, 2}}")
            size += 1
        if size > MAX_ORDER:
            raise ValueError(f"multi-index length {size} exceeds cap {MAX_ORDER}")
        return cls(size, twos)

    @property
    def entries(self) -> tuple[int, ...]:
        return (1,) * (self.size - self.twos) + (2,) * self.twos

    @property
    def ones(self) -> int:
        return self.size - self.twos

    def count(self, i: int) -> int:
        _check_direction(i)
        return self.twos if i == 2 else self.size - self.twos

    def multiplicity(self) -> int:
        """Number of distinct ordered rearrangements of the entries."""
        return comb(self.size, self.twos)

    def insert(self, i: int) -> "MultiIndex":
        _check_direction(i)
        if self.size >= MAX_ORDER:
            raise ValueError(f"multi-index length {self.size + 1} exceeds cap {MAX_ORDER}")
        return MultiIndex(self.size + 1, self.twos + (1 if i == 2 else 0))

    def remove(self, i: int) -> "MultiIndex | None":
        """Drop one copy of i, or None when no copy is present."""
        _check_direction(i)
        if self.count(i) == 0:
            return None
        return MultiIndex(self.size - 1, self.twos - (1 if i == 2 else 0))

    def digits(self) -> str:
        return "".join(str(e) for e in self.entries)

    def __str__(self) -> str:
        return self.digits() or "()"


EMPTY_INDEX = MultiIndex(0, 0)


def _check_direction(i: int) -> None:
    if i not in (1, 2):
        raise ValueError(f"direction index {i!r} not in {{1, 2}}")


def enumerate_indices(max_order: int) -> list[MultiIndex]:
    """All sorted multi-indices of length <= max_order, in canonical order."""
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    return [MultiIndex(s, k) for s in range(max_order + 1) for k in range(s + 1)]


def index_multisets(size: int) -> list[tuple[int, ...]]:
    """Sorted tuples over {1, 2} of exactly the given length."""
    return [(1,) * (size - k) + (2,) * k for k in range(size + 1)]


class JetCoord(NamedTuple):
    """A jet coordinate u^field_I with I stored as (order, twos)."""

    field: int
    order: int
    twos: int

    @classmethod
    def make(cls, field: int, index: MultiIndex = EMPTY_INDEX) -> "JetCoord":
        if field < 1:
            raise ValueError(f"field index must be >= 1, got {field}")
        return cls(field, index.size, index.twos)

    @classmethod
    def of(cls, field: int, *entries: int) -> "JetCoord":
        return cls.make(field, MultiIndex.from_entries(entries))

    @property
    def field_index(self) -> int:
        return self.field

    @property
    def index(self) -> MultiIndex:
        return MultiIndex(self.order, self.twos)

    def name(self) -> str:
        if self.order == 0:
            return f"u{self.field}"
        return f"u{self.field}_{self.index.digits()}"

    def __str__(self) -> str:
        return self.name()


# -- packed integer codes used by the polynomial kernel ---------------------

def coord_code(c: JetCoord) -> int:
    return (c.field << 8) | (c.order << 4) | c.twos


def code_of(field: int, order: int, twos: int) -> int:
    return (field << 8) | (order << 4) | twos


def decode(code: int) -> JetCoord:
    return JetCoord(code >> 8, (code >> 4) & 15, code & 15)


def code_field(code: int) -> int:
    return code >> 8


def code_order(code: int) -> int:
    return (code >> 4) & 15


def code_count(code: int, i: int) -> int:
    twos = code & 15
    return twos if i == 2 else ((code >> 4) & 15) - twos


def code_insert(code: int, i: int) -> int:
    if ((code >> 4) & 15) >= MAX_ORDER:
        raise ValueError(f"jet order above cap {MAX_ORDER}")
    return code + 16 + (1 if i == 2 else 0)


def code_remove(code: int, i: int) -> int | None:
    if code_count(code, i) == 0:
        return None
    return code - 16 - (1 if i == 2 else 0)


def code_name(code: int) -> str:
    return decode(code).name()
