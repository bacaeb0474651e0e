"""Exact linear algebra: fraction-free (Bareiss) elimination over Q.

Matrices are plain lists of rows of ints/Fractions.  Pivoting is
deterministic: first nonzero entry in column order, so results are
reproducible for a fixed row/column ordering.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _int_rows(rows):
    """Scale each row by the lcm of its denominators (row ops invariant)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def bareiss_echelon(rows, pivot_cols):
    """In-place fraction-free row echelon; pivots searched in the first
    pivot_cols columns only.  Returns (rows, pivots) with pivots a list of
    (row, col) pairs in ascending column order."""
    m = len(rows)
    width = len(rows[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(pivot_cols):
        if r >= m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        top = rows[r]
        for i in range(r + 1, m):
            cur = rows[i]
            mic = cur[c]
            if mic == 0:
                if prev == 1:
                    if piv != 1:
                        for j in range(c + 1, width):
                            cur[j] = piv * cur[j]
                else:
                    for j in range(c + 1, width):
                        cur[j] = piv * cur[j] // prev
            else:
                for j in range(c + 1, width):
                    cur[j] = (piv * cur[j] - mic * top[j]) // prev
                cur[c] = 0
        pivots.append((r, c))
        prev = piv
        r += 1
    return rows, pivots


def _normalize_vector(vec):
    """Integer-primitive with positive first nonzero entry."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return [Fraction(0)] * len(vec)
    first = next(x for x in ints if x != 0)
    if first < 0:
        g = -g
    return [Fraction(x, g) for x in ints]


def nullspace(rows, ncols):
    """Basis of {x : M x = 0}, one normalized vector per free column."""
    work = _int_rows(rows) if rows else []
    if work:
        work, pivots = bareiss_echelon(work, ncols)
    else:
        pivots = []
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for r, c in reversed(pivots):
            s = sum((work[r][j] * x[j] for j in range(c + 1, ncols) if x[j]), Fraction(0))
            x[c] = -s / work[r][c]
        basis.append(_normalize_vector(x))
    return basis


def nullspace_naive(rows, ncols):
    """Plain rational Gaussian elimination; cross-check for nullspace()."""
    work = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append((r, c))
        r += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for rr, cc in pivots:
            x[cc] = -work[rr][free]
        basis.append(_normalize_vector(x))
    return basis


class SpanSolver:
    """Membership and expression in the span of a fixed list of vectors.

    Builds one fraction-free echelon of [vectors | I]; each express() query
    is a cheap reduction against it.
    """

    def __init__(self, vectors, dim):
        self.dim = dim
        self.nvecs = len(vectors)
        aug = []
        for i, v in enumerate(vectors):
            row = list(v) + [Fraction(0)] * self.nvecs
            row[dim + i] = Fraction(1)
            aug.append(row)
        work = _int_rows(aug)
        if work:
            self.rows, self.pivots = bareiss_echelon(work, dim)
        else:
            self.rows, self.pivots = [], []

    def express(self, v):
        """Coefficients c with sum(c_i * vectors[i]) == v, or None."""
        v = [Fraction(x) for x in v]
        combo = [Fraction(0)] * self.nvecs
        for r, c in self.pivots:
            if v[c] == 0:
                continue
            f = Fraction(v[c], self.rows[r][c])
            row = self.rows[r]
            for j in range(c, self.dim):
                if row[j]:
                    v[j] -= f * row[j]
            for j in range(self.nvecs):
                t = row[self.dim + j]
                if t:
                    combo[j] += f * t
        if any(v):
            return None
        return combo

    def contains(self, v):
        return self.express(v) is not None

    @property
    def rank(self):
        return len(self.pivots)


def solve_columns(columns, b):
    """x with sum(x_i * columns[i]) == b, or None (one-shot convenience)."""
    if not columns:
        return None if any(b) else []
    solver = SpanSolver(columns, len(b))
    return solver.express(b)
