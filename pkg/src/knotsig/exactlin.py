"""Exact inertia of symmetric integer matrices via congruence reduction.

All arithmetic is over unbounded Python integers; every transformation is a
congruence A -> E A E^T with det(E) != 0, so by Sylvester's law of inertia
the sign counts of the resulting diagonal equal those of the input.
"""

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SymIntMatrix:
    """Symmetric integer matrix; `entries` is a tuple of row tuples."""

    entries: tuple

    def __init__(self, rows):
        rows = tuple(tuple(x for x in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for x in row:
                if not isinstance(x, int):
                    raise ValueError("entries must be integers, got %r" % (x,))
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(
                        "matrix must be symmetric, differs at (%d, %d)" % (i, j)
                    )
        object.__setattr__(self, "entries", rows)

    @property
    def n(self):
        return len(self.entries)


@dataclass(frozen=True)
class InertiaTriple:
    """Counts of positive, negative and zero eigenvalues."""

    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def signature(self):
        return self.n_pos - self.n_neg


def _swap_sym(a, i, j):
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_sym(a, i, j):
    # row i += row j, then col i += col j; a[i][i] becomes 2*a[i][j] when
    # both diagonals are zero.
    n = len(a)
    for t in range(n):
        a[i][t] += a[j][t]
    for t in range(n):
        a[t][i] += a[t][j]


def inertia(m):
    """Exact eigenvalue sign counts of a SymIntMatrix.

    Symmetric congruence diagonalization; zero diagonal pivots are repaired
    by a row/column swap with a later nonzero diagonal, or failing that by
    the symmetric combination row_i += row_j (which makes the pivot 2*a[i][j]
    because all remaining diagonal entries are then zero).
    """
    if not isinstance(m, SymIntMatrix):
        raise ValueError("inertia expects a SymIntMatrix")
    a = [list(row) for row in m.entries]
    n = len(a)
    n_pos = n_neg = n_zero = 0
    for k in range(n):
        if a[k][k] == 0:
            piv = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if piv is not None:
                _swap_sym(a, k, piv)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    n_zero += 1
                    continue
                _add_sym(a, k, j)
        p = a[k][k]
        if p > 0:
            n_pos += 1
        else:
            n_neg += 1
        for i in range(k + 1, n):
            f = a[i][k]
            if f == 0:
                continue
            g = gcd(p, f)
            c, s = p // g, f // g
            if c < 0:
                c, s = -c, -s
            for j in range(k, n):
                a[i][j] = c * a[i][j] - s * a[k][j]
            for j in range(k, n):
                a[j][i] = c * a[j][i] - s * a[j][k]
    return InertiaTriple(n_pos, n_neg, n_zero)


def signature(m):
    """n_pos - n_neg for a SymIntMatrix."""
    return inertia(m).signature
