"""Dense Gaussian elimination over an exact field.

Entries may be ``Fraction`` or ``RationalFunc``; anything with field
arithmetic and a truth value meaning "nonzero" works.
"""

from __future__ import annotations


def solve(matrix: list[list], rhs: list[list], one=1) -> list[list]:
    """Solve ``matrix @ X = rhs`` for square nonsingular ``matrix``.

    ``rhs`` is a list of rows (one row per equation, one column per right-hand
    side).  Raises ``ZeroDivisionError`` if the matrix is singular.
    """
    n = len(matrix)
    a = [list(row) + list(r) for row, r in zip(matrix, rhs)]
    width = len(a[0]) if a else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        inv = one / a[col][col]
        row = [x * inv if x else x for x in a[col]]
        a[col] = row
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                ar = a[r]
                a[r] = [ar[k] - f * row[k] if row[k] else ar[k] for k in range(width)]
    return [row[n:] for row in a]


def invert(matrix: list[list], one=1, zero=0) -> list[list]:
    n = len(matrix)
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return solve(matrix, ident, one)
