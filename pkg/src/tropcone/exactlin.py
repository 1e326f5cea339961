"""Exact linear solves over the rationals."""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularSystem


def solve_rational(matrix, rhs_columns):
    """Solve M X = B exactly by Gaussian elimination with pivot search.

    `matrix` is a list of rows of Fractions (square), `rhs_columns` a list of
    rows (same height as `matrix`, any width). Returns the solution as a list
    of rows. Raises SingularSystem if M is singular.
    """
    n = len(matrix)
    width = len(rhs_columns[0]) if n else 0
    a = [list(row) + list(b) for row, b in zip(matrix, rhs_columns)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n : n + width] for row in a]
