"""Exact linear algebra over the rationals.

Small dense routines built on :class:`fractions.Fraction`: rank, determinant,
solving, nullspaces and principal minors.  Floating point never appears; every
result is exact.  Matrices are plain lists of lists (rows) of ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Vector = list[Fraction]
Matrix = list[Vector]


def frac(value: int | str | Fraction) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.replace("−", "-").strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction | int) -> str:
    """Canonical string form: ``"3"``, ``"-3/2"``.  Inverse of :func:`frac`."""
    value = frac(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def mat(rows: Iterable[Iterable[int | str | Fraction]]) -> Matrix:
    return [[frac(x) for x in row] for row in rows]


def _copy(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(row) for row in rows]


def row_reduce(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = _copy(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(rows)[1])


def rank_by_minors(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank as the largest size of a nonvanishing minor.

    Exponential; intended as an independent oracle on small matrices.
    """
    m = _copy(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    for size in range(min(nrows, ncols), 0, -1):
        for rsel in combinations(range(nrows), size):
            for csel in combinations(range(ncols), size):
                sub = [[m[i][j] for j in csel] for i in rsel]
                if det(sub) != 0:
                    return size
    return 0


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of the right kernel of the matrix."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[frac(1 if i == j else 0) for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vector] = []
    for f in free:
        v = [frac(0)] * ncols
        v[f] = frac(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(v)
    return basis


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free-enough Gaussian elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return frac(1)
    m = _copy(matrix)
    result = frac(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return frac(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                factor = m[i][c] * inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return result


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector:
    """Solve a square nonsingular system exactly.

    Raises ValueError if the matrix is singular.
    """
    n = len(matrix)
    if len(rhs) != n:
        raise ValueError("dimension mismatch")
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    reduced, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [reduced[i][n] for i in range(n)]


def solve_in_span(columns: Sequence[Vector], target: Vector) -> Vector:
    """Coordinates of ``target`` in the span of ``columns``.

    The columns must be linearly independent and the target must lie in their
    span; otherwise ValueError.
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    reduced, pivots = row_reduce(aug)
    if ncols in pivots:
        raise ValueError("target not in span")
    if pivots != list(range(ncols)):
        raise ValueError("columns are linearly dependent")
    coords = [frac(0)] * ncols
    for r, c in enumerate(pivots):
        coords[c] = reduced[r][ncols]
    return coords


def leading_principal_minors(matrix: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    n = len(matrix)
    return [det([row[: k + 1] for row in matrix[: k + 1]]) for k in range(n)]


def is_negative_definite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Sylvester criterion: leading principal minors alternate, starting negative."""
    n = len(matrix)
    if n == 0:
        return True
    for k, minor in enumerate(leading_principal_minors(matrix)):
        if (-1) ** (k + 1) * minor <= 0:
            return False
    return True


def is_negative_semidefinite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Every principal minor of -M is nonnegative.  Exponential; fine for graphs."""
    n = len(matrix)
    for size in range(1, n + 1):
        for sel in combinations(range(n), size):
            sub = [[-matrix[i][j] for j in sel] for i in sel]
            if det(sub) < 0:
                return False
    return True
