"""Small dense integer matrices with exact (Python int) entries."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntegerMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence[int]], cols: int | None = None):
        grid = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(row) != cols for row in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntegerMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.entries]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self.entries), self.rows) if self.rows else IntegerMatrix.zeros(self.cols, 0)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def max_abs(self) -> int:
        return max((abs(x) for row in self.entries for x in row), default=0)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self.entries],
            other.cols,
        )

    def __neg__(self):
        return IntegerMatrix([[-x for x in row] for row in self.entries], self.cols)

    def __pow__(self, k: int) -> "IntegerMatrix":
        if not self.is_square() or k < 0:
            raise ValueError("only nonnegative powers of square matrices")
        result, base = IntegerMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"IntegerMatrix({self.to_lists()!r})"


def finite_order(m: IntegerMatrix, bound: int = 64) -> int | None:
    """Order of ``m`` if some power ``m**k == I`` with ``k <= bound``, else None.

    Every finite-order element of GL_n(Z) with n <= 9 has order at most 60, so
    for those ranks a None result certifies infinite order.
    """
    if not m.is_square():
        raise ValueError("order of a non-square matrix")
    ident = IntegerMatrix.identity(m.rows)
    power = m
    for k in range(1, bound + 1):
        if power == ident:
            return k
        power = power @ m
    return None
