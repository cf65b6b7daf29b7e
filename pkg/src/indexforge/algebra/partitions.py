"""Integer partitions in a fixed canonical order.

Partitions index Pontryagin monomials ``p_I = p_{i_1} ... p_{i_r}``.  The
canonical order used everywhere in the package is lexicographic descending,
e.g. for 4::

    (4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)
"""
from __future__ import annotations

from functools import lru_cache


class Partition(tuple):
    """A non-increasing tuple of positive integers.

    Instances compare and hash as plain tuples.  The empty partition is
    allowed and has weight 0.
    """

    def __new__(cls, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def __add__(self, other):
        # merging two partitions is the product of the monomials p_I * p_J
        return Partition(tuple(self) + tuple(other))

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __str__(self):
        return "+".join(str(p) for p in self) if self else "0"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2+1+1"``; ``""`` and ``"0"`` give the empty partition."""
        text = text.strip()
        if text in ("", "0"):
            return cls(())
        try:
            parts = [int(tok) for tok in text.split("+")]
        except ValueError:
            raise ValueError(f"malformed partition string {text!r}") from None
        if parts != sorted(parts, reverse=True):
            raise ValueError(f"partition string {text!r} is not non-increasing")
        return cls(parts)


def _partitions_bounded(k: int, largest: int):
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions_bounded(k - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(k: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_bounded(k, k))


def partitions(k: int) -> list[Partition]:
    """All partitions of ``k`` in lexicographic descending order.

    >>> partitions(3)
    [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return list(_partitions_cached(int(k)))


def partition_count(k: int) -> int:
    return len(_partitions_cached(int(k)))
