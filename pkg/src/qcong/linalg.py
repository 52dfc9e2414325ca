"""Exact linear solving by fraction-free (Bareiss) elimination."""

from fractions import Fraction
from math import gcd

from .errors import AmbiguousFit, FitFailed


def _integer_row(row) -> list[int]:
    den = 1
    for x in row:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return [int(Fraction(x) * den) for x in row]


def echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form over the first ``ncols`` columns.

    Returns the reduced rows (modified copies) and the list of pivot columns.
    """
    m = [list(r) for r in rows]
    width = len(m[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, len(m)):
            row = m[i]
            a = row[c]
            if a == 0:
                if piv != prev:
                    for j in range(c + 1, width):
                        row[j] = piv * row[j] // prev
                continue
            for j in range(c + 1, width):
                row[j] = (piv * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    _, piv = echelon([_integer_row(r) for r in rows], len(rows[0]))
    return len(piv)


def solve(columns: list[list], rhs: list) -> list[Fraction]:
    """Unique x with sum_j x_j * columns[j] == rhs, exactly.

    Raises FitFailed when the system is inconsistent and AmbiguousFit when
    the columns are linearly dependent on the rows supplied.
    """
    n = len(columns)
    nrows = len(rhs)
    rows = [_integer_row([columns[j][i] for j in range(n)] + [rhs[i]]) for i in range(nrows)]
    if n == 0:
        if any(r[-1] for r in rows):
            raise FitFailed("inconsistent system with no unknowns")
        return []
    m, pivots = echelon(rows, n)
    for row in m[len(pivots):]:
        if row[n]:
            raise FitFailed("linear system is inconsistent")
    if len(pivots) < n:
        raise AmbiguousFit(f"solution space has dimension {n - len(pivots)}")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = m[i]
        s = Fraction(row[n]) - sum((row[j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / row[i]
    return x
