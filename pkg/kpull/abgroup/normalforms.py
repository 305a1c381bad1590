"""
Smith and Hermite normal forms over the integers, with transforms.

The Smith reduction picks as pivot the entry of smallest nonzero absolute
value, ties broken by lowest (row, col), so reduction traces are
reproducible. Matrices here are tiny; no modular tricks.
"""

import logging
from math import gcd
from typing import List, NamedTuple, Optional, Sequence, Tuple

from kpull.abgroup.matrix import IntMatrix

logger = logging.getLogger(__name__)


class SmithForm(NamedTuple):
    """D = U * M * V with U, V unimodular and D diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries d_1 | d_2 | ... (units included)."""
        return tuple(d for d in self.D.diagonal_entries() if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


class HermiteForm(NamedTuple):
    """H = U * M with U unimodular and H in row Hermite form."""

    H: IntMatrix
    U: IntMatrix


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(a: List[List[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: List[List[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: List[List[int]], target: int, source: int, factor: int) -> None:
    """row[target] += factor * row[source]"""
    if factor:
        src = a[source]
        a[target] = [x + factor * y for x, y in zip(a[target], src)]


def _add_col(a: List[List[int]], target: int, source: int, factor: int) -> None:
    """col[target] += factor * col[source]"""
    if factor:
        for row in a:
            row[target] += factor * row[source]


def _negate_row(a: List[List[int]], i: int) -> None:
    a[i] = [-x for x in a[i]]


def _smallest_nonzero(a: List[List[int]], cells) -> Optional[Tuple[int, int]]:
    best = None
    best_value = 0
    for i, j in cells:
        value = abs(a[i][j])
        if value and (best is None or value < best_value):
            best, best_value = (i, j), value
    return best


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """
    Smith normal form with unimodular transforms.

    Returns (U, D, V) with D = U*M*V, D diagonal, non-negative, and
    d_1 | d_2 | ... along the diagonal. Any shape is accepted.
    """
    m, n = M.rows, M.cols
    a = M.to_list()
    U = _identity(m)
    V = _identity(n)

    t = 0
    while t < min(m, n):
        cells = [(i, j) for i in range(t, m) for j in range(t, n)]
        pivot = _smallest_nonzero(a, cells)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            _swap_rows(a, t, pi)
            _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(a, t, pj)
            _swap_cols(V, t, pj)

        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                _add_row(a, i, t, -q)
                _add_row(U, i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // p
                _add_col(a, j, t, -q)
                _add_col(V, j, t, -q)

            edge = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
            if any(a[i][j] for i, j in edge[1:]):
                pi, pj = _smallest_nonzero(a, edge)
                if pi != t:
                    _swap_rows(a, t, pi)
                    _swap_rows(U, t, pi)
                if pj != t:
                    _swap_cols(a, t, pj)
                    _swap_cols(V, t, pj)
                continue

            p = a[t][t]
            offender = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if offender is None:
                break
            _add_row(a, t, offender[0], 1)
            _add_row(U, t, offender[0], 1)

        if a[t][t] < 0:
            _negate_row(a, t)
            _negate_row(U, t)
        t += 1

    return SmithForm(
        IntMatrix.from_rows(U, cols=m),
        IntMatrix.from_rows(a, cols=n),
        IntMatrix.from_rows(V, cols=n),
    )


def hermite_normal_form(M: IntMatrix) -> HermiteForm:
    """
    Row-style Hermite normal form H = U*M.

    Nonzero rows come first, pivots are positive and strictly move right,
    entries above a pivot lie in [0, pivot). H is unique.
    """
    m, n = M.rows, M.cols
    a = M.to_list()
    U = _identity(m)

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            pivot = _smallest_nonzero(a, [(i, c) for i in range(r, m)])
            if pivot is None:
                break
            pi = pivot[0]
            if pi != r:
                _swap_rows(a, r, pi)
                _swap_rows(U, r, pi)
            done = True
            for i in range(r + 1, m):
                q = a[i][c] // a[r][c]
                _add_row(a, i, r, -q)
                _add_row(U, i, r, -q)
                if a[i][c]:
                    done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            _negate_row(a, r)
            _negate_row(U, r)
        for i in range(r):
            q = a[i][c] // a[r][c]
            _add_row(a, i, r, -q)
            _add_row(U, i, r, -q)
        r += 1

    return HermiteForm(IntMatrix.from_rows(a, cols=n), IntMatrix.from_rows(U, cols=m))


def inverse_unimodular(U: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (its Hermite form is the identity)."""
    H, W = hermite_normal_form(U)
    if H != IntMatrix.identity(U.rows):
        raise ValueError("matrix is not unimodular")
    return W


def rank(M: IntMatrix) -> int:
    return smith_normal_form(M).rank


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """
    Basis of {x in Z^n : M x = 0} as the columns of an n x k matrix.

    The basis is canonical: its transpose is in Hermite form.
    """
    U, D, V = smith_normal_form(M)
    r = sum(1 for d in D.diagonal_entries() if d != 0)
    raw = V.select_columns(range(r, M.cols))
    return canonical_basis(raw, M.cols)


def canonical_basis(generators: IntMatrix, ambient: int) -> IntMatrix:
    """
    Canonical basis (as columns) of the lattice spanned by the columns of
    `generators` in Z^ambient.
    """
    if generators.cols == 0:
        return IntMatrix.zeros(ambient, 0)
    H = hermite_normal_form(generators.transpose()).H
    nonzero = [row for row in H.entries if any(row)]
    return IntMatrix.from_rows(nonzero, cols=ambient).transpose() if nonzero else IntMatrix.zeros(ambient, 0)


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """One integer solution x of A x = b, or None when none exists."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {A.shape}")
    U, D, V = smith_normal_form(A)
    c = U.apply(b)
    y = [0] * A.cols
    diag = D.diagonal_entries()
    for i, value in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if value != 0:
                return None
        else:
            if value % d:
                return None
            y[i] = value // d
    return V.apply(y)


def solve_integer_columns(A: IntMatrix, B: IntMatrix) -> Optional[IntMatrix]:
    """Integer X with A X = B, column by column, or None."""
    columns = []
    for col in B.columns():
        x = solve_integer(A, col)
        if x is None:
            return None
        columns.append(x)
    return IntMatrix.from_columns(columns, A.cols)


def gcd_of_entries(M: IntMatrix) -> int:
    g = 0
    for row in M.entries:
        for v in row:
            g = gcd(g, v)
    return g
