"""
Integer matrices with arbitrary-precision entries.

IntMatrix is immutable. Empty shapes (0 rows or 0 columns) are legal and
stand for maps to or from the zero group.
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from kpull.shared.errors import DimensionError

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class IntMatrix:
    """Row-major integer matrix."""

    rows: int
    cols: int
    entries: Rows

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows:
            raise DimensionError(
                f"expected {self.rows} rows, got {len(self.entries)}"
            )
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionError(
                    f"expected {self.cols} columns, got a row of length {len(row)}"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int = None) -> "IntMatrix":
        """Build from nested sequences; `cols` is required when there are no rows."""
        data = tuple(tuple(int(v) for v in row) for row in rows)
        if cols is None:
            if not data:
                raise DimensionError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        """Build from a list of column vectors of length `rows`."""
        return cls.from_rows(
            [[col[i] for col in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(
            n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows(
            [[values[i] if i == j and i < len(values) else 0 for j in range(cols)]
             for i in range(rows)],
            cols=cols,
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in other_cols]
             for row in self.entries],
            cols=other.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_rows([[-v for v in row] for row in self.entries], cols=self.cols)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for {self.shape}")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        for other in others:
            if other.rows != self.rows:
                raise DimensionError(f"hstack of {self.shape} and {other.shape}")
        cols = self.cols + sum(o.cols for o in others)
        return IntMatrix.from_rows(
            [sum((o.entries[i] for o in others), self.entries[i]) for i in range(self.rows)],
            cols=cols,
        )

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        for other in others:
            if other.cols != self.cols:
                raise DimensionError(f"vstack of {self.shape} and {other.shape}")
        return IntMatrix.from_rows(
            list(self.entries) + [row for o in others for row in o.entries], cols=self.cols
        )

    def select_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.entries[i] for i in indices], cols=self.cols)

    def select_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[row[j] for j in indices] for row in self.entries], cols=len(indices)
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return all(
            v == 0 for i, row in enumerate(self.entries) for j, v in enumerate(row) if i != j
        )

    def diagonal_entries(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DimensionError(f"determinant of non-square {self.shape}")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_list()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.determinant()) == 1

    def __str__(self) -> str:
        if self.rows == 0:
            return f"[] (0x{self.cols})"
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"
