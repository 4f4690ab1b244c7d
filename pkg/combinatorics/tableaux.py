"""
Partitions, semistandard Young tableaux and Schur dimension counts.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional, Sequence, Tuple

from scipy.special import comb


class InvalidShape(ValueError):
    """Parts are not a weakly decreasing sequence of positive integers."""


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise InvalidShape(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidShape(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Comma separated parts, e.g. '2,1'; an empty string is the empty partition."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(piece) for piece in text.split(",")))
        except ValueError as e:
            if isinstance(e, InvalidShape):
                raise
            raise InvalidShape(f"cannot read a partition from {text!r}") from None

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int, max_parts: Optional[int] = None, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    limit = n if max_part is None else max_part

    def build(left, largest, slots):
        if left == 0:
            yield ()
            return
        if slots == 0:
            return
        for part in range(min(left, largest), 0, -1):
            for rest in build(left - part, part, slots - 1):
                yield (part,) + rest

    slots = n if max_parts is None else max_parts
    for parts in build(n, limit, slots):
        yield Partition(parts)


@dataclass(frozen=True)
class Tableau:
    shape: Partition
    entries: Tuple[Tuple[int, ...], ...]

    def is_semistandard(self, k: Optional[int] = None) -> bool:
        if tuple(len(row) for row in self.entries) != self.shape.parts:
            return False
        for row in self.entries:
            if any(a > b for a, b in zip(row, row[1:])):
                return False
            if any(v < 1 or (k is not None and v > k) for v in row):
                return False
        for upper, lower in zip(self.entries, self.entries[1:]):
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                return False
        return True


def iter_semistandard_tableaux(shape: Partition, k: int) -> Iterator[Tableau]:
    """Fill column by column: each column is a strictly increasing choice of
    entries, and rows must weakly increase from the previous column."""
    columns = shape.conjugate().parts
    if shape.rows > k:
        return

    def fill(col: int, previous: Sequence[int], chosen):
        if col == len(columns):
            rows = [[] for _ in shape.parts]
            for column in chosen:
                for i, value in enumerate(column):
                    rows[i].append(value)
            yield Tableau(shape, tuple(tuple(r) for r in rows))
            return
        height = columns[col]
        for column in combinations(range(1, k + 1), height):
            if all(column[i] >= previous[i] for i in range(height)):
                yield from fill(col + 1, column, chosen + [column])

    yield from fill(0, [1] * (columns[0] if columns else 0), [])


def ssyt_count(shape: Partition, k: int) -> int:
    if shape.rows > k:
        return 0
    return sum(1 for _ in iter_semistandard_tableaux(shape, k))


@lru_cache(maxsize=4096)
def schur_dim_one_row(p: int, k: int) -> int:
    """Tableaux of shape (p) with entries in 1..k."""
    return int(comb(p + k - 1, k - 1, exact=True))


@lru_cache(maxsize=16384)
def schur_dim_two_row(a: int, b: int, k: int) -> int:
    """Tableaux of shape (a, b) with entries in 1..k."""
    if a < b or b < 0:
        raise InvalidShape(f"two-row shape needs a >= b >= 0, got ({a},{b})")
    if k == 1:
        return schur_dim_one_row(a, 1) if b == 0 else 0
    value = (Fraction(a - b + 1, k - 1)
             * comb(a + k - 1, k - 2, exact=True)
             * comb(b + k - 2, k - 2, exact=True))
    assert value.denominator == 1, f"non-integral two-row count for ({a},{b}), k={k}"
    return int(value)


def schur_dim(shape: Partition, k: int) -> int:
    """Closed form for shapes with at most two rows, enumeration otherwise."""
    if shape.rows == 0:
        return 1
    if shape.rows == 1:
        return schur_dim_one_row(shape.parts[0], k)
    if shape.rows == 2:
        return schur_dim_two_row(shape.parts[0], shape.parts[1], k)
    return ssyt_count(shape, k)


def closed_form_dim(shape: Partition, k: int) -> Optional[int]:
    """Closed-form count, or None for shapes with three or more rows."""
    if shape.rows > 2:
        return None
    return schur_dim(shape, k)
