"""
Exact linear algebra over QQ on top of sympy's DomainMatrix.

QMatrix keeps its shape when a dimension is zero, which is routine here:
empty overlaps and zero quotient algebras give 0 x n and n x 0 matrices.
Subspaces are column spans.
"""

from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


class QMatrix:
    __slots__ = ("dm",)

    def __init__(self, dm: DomainMatrix):
        self.dm = dm.to_dense()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int) -> "QMatrix":
        data = [[QQ(int(v)) for v in row] for row in rows]
        if any(len(row) != cols for row in data):
            raise ValueError(f"every row needs {cols} entries")
        return cls(DomainMatrix(data, (len(data), cols), QQ))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(DomainMatrix.zeros((rows, cols), QQ))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(DomainMatrix.eye(n, QQ)) if n else cls.zeros(0, 0)

    @classmethod
    def selection(cls, picks: Sequence[Optional[int]], cols: int) -> "QMatrix":
        """0/1 matrix whose row r is e_picks[r] (or zero for None)."""
        return cls.from_rows(
            [[1 if c == p else 0 for c in range(cols)] for p in picks], cols
        )

    @property
    def shape(self):
        return self.dm.shape

    @property
    def rows(self) -> int:
        return self.dm.shape[0]

    @property
    def cols(self) -> int:
        return self.dm.shape[1]

    def _empty(self) -> bool:
        return 0 in self.dm.shape

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self._empty() or other._empty():
            return QMatrix.zeros(self.rows, other.cols)
        return QMatrix(self.dm * other.dm)

    def __neg__(self) -> "QMatrix":
        return self if self._empty() else QMatrix(-self.dm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and (self._empty() or self.dm == other.dm)

    def __repr__(self) -> str:
        return f"QMatrix({self.to_fractions()}, shape={self.shape})"

    @property
    def T(self) -> "QMatrix":
        if self._empty():
            return QMatrix.zeros(self.cols, self.rows)
        return QMatrix(self.dm.transpose())

    def is_zero(self) -> bool:
        return self._empty() or self.dm.is_zero_matrix

    def rank(self) -> int:
        return 0 if self._empty() else self.dm.rank()

    def row_block(self, start: int, stop: int) -> "QMatrix":
        if start == stop or self.cols == 0:
            return QMatrix.zeros(stop - start, self.cols)
        return QMatrix(DomainMatrix(self.dm.to_list()[start:stop], (stop - start, self.cols), QQ))

    def kernel(self) -> "QMatrix":
        """Columns spanning the null space."""
        if self.rows == 0:
            return QMatrix.identity(self.cols)
        if self.cols == 0 or self.rank() == self.cols:
            return QMatrix.zeros(self.cols, 0)
        return QMatrix(self.dm.nullspace()).T

    def span(self) -> "QMatrix":
        """Independent columns with the same span."""
        if self.rank() == 0:
            return QMatrix.zeros(self.rows, 0)
        return QMatrix(self.dm.columnspace())

    def inv(self) -> "QMatrix":
        return self if self._empty() else QMatrix(self.dm.inv())

    def solve(self, rhs: "QMatrix") -> Optional["QMatrix"]:
        """One solution x of self @ x = rhs (a single column), or None."""
        n = self.cols
        if rhs.is_zero():
            return QMatrix.zeros(n, 1)
        if self._empty():
            return None
        reduced, pivots = hstack(self, rhs).dm.rref()
        if n in pivots:
            return None
        table = reduced.to_list()
        x = [[QQ(0)] for _ in range(n)]
        for r, p in enumerate(pivots):
            x[p][0] = table[r][n]
        return QMatrix(DomainMatrix(x, (n, 1), QQ))

    def to_fractions(self) -> List[List[Fraction]]:
        if self._empty():
            return [[] for _ in range(self.rows)]
        return [
            [Fraction(int(v.numerator), int(v.denominator)) for v in row]
            for row in self.dm.to_list()
        ]


def hstack(*blocks: QMatrix) -> QMatrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack needs equal row counts")
    parts = [b for b in blocks if b.cols]
    cols = sum(b.cols for b in blocks)
    if not parts or rows == 0:
        return QMatrix.zeros(rows, cols)
    return QMatrix(parts[0].dm.hstack(*(b.dm for b in parts[1:])))


def vstack(*blocks: QMatrix) -> QMatrix:
    return hstack(*(b.T for b in blocks)).T


def block_diagonal(*blocks: QMatrix) -> QMatrix:
    cols = sum(b.cols for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        padded = hstack(QMatrix.zeros(b.rows, offset), b, QMatrix.zeros(b.rows, cols - offset - b.cols))
        rows.append(padded)
        offset += b.cols
    return vstack(*rows) if rows else QMatrix.zeros(0, 0)


def same_span(a: QMatrix, b: QMatrix) -> bool:
    r = a.rank()
    return r == b.rank() and r == hstack(a, b).rank()


def subspace_sum(*spaces: QMatrix) -> QMatrix:
    return hstack(*spaces).span()


def intersection(a: QMatrix, b: QMatrix) -> QMatrix:
    """Basis of span(a) & span(b)."""
    null = hstack(a, -b).kernel()
    return (a @ null.row_block(0, a.cols)).span()


def annihilator(space: QMatrix) -> QMatrix:
    """Rows spanning the functionals that vanish on the span: the quotient map."""
    if space.cols == 0:
        return QMatrix.identity(space.rows)
    return space.T.kernel().T


def induced(src: QMatrix, dst: QMatrix) -> Optional[QMatrix]:
    """
    M with M @ src = dst for a quotient map src of full row rank, or None
    when ker src is not inside ker dst.
    """
    if src.rows == 0:
        return QMatrix.zeros(dst.rows, 0) if dst.is_zero() else None
    gram = src @ src.T
    m = dst @ src.T @ gram.inv()
    return m if m @ src == dst else None


def is_onto(m: QMatrix) -> bool:
    return m.rank() == m.rows
