"""Dense exact linear algebra over the rationals.

Everything here works on plain lists of ints/Fractions; matrices are small
(desk scale), so clarity beats asymptotics.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref(rows, ncols):
    """Reduced row echelon form.  Returns (matrix, pivot_columns).

    Pivots are chosen left to right, taking the topmost row with a nonzero
    entry, so the result is deterministic for a fixed row order.
    """
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                row_r = mat[r]
                mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def matrix_rank(rows, ncols=None):
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    _, pivots = rref(rows, ncols)
    return len(pivots)


def kernel_basis(rows, ncols):
    """Basis of the right kernel {v : M v = 0}, one vector per free column."""
    mat, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -mat[r][f]
        basis.append(v)
    return basis


def independent_rows(rows, ncols):
    """Indices of a greedy maximal independent subset, scanning in order."""
    kept = []          # (eliminated row, pivot col)
    indices = []
    for idx, row in enumerate(rows):
        work = [Fraction(x) for x in row]
        for elim, p in kept:
            if work[p] != 0:
                f = work[p]
                work = [a - f * b for a, b in zip(work, elim)]
        pivot = next((c for c in range(ncols) if work[c] != 0), None)
        if pivot is None:
            continue
        inv = Fraction(1) / work[pivot]
        work = [v * inv for v in work]
        kept.append((work, pivot))
        indices.append(idx)
    return indices


def solve_unique(rows, rhs, ncols):
    """Solve M x = rhs when a solution exists; returns None if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    mat, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = mat[r][ncols]
    return x


def det_exact(rows):
    """Determinant of a square rational matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    # Clear denominators row by row, tracking the scaling factor.
    mat = []
    scale = Fraction(1)
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = 1
        for v in fr:
            mult = mult * v.denominator // gcd(mult, v.denominator)
        scale *= mult
        mat.append([int(v * mult) for v in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if mat[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pk = mat[k][k]
        for i in range(k + 1, n):
            rik = mat[i][k]
            row_i = mat[i]
            row_k = mat[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - rik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return Fraction(sign * mat[n - 1][n - 1], 1) / scale


def lcm(a, b):
    return a * b // gcd(a, b)


def primitive_vector(vec):
    """Scale a rational vector to a primitive integer vector (direction kept)."""
    fr = [Fraction(x) for x in vec]
    mult = 1
    for v in fr:
        mult = lcm(mult, v.denominator)
    ints = [int(v * mult) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(v // g for v in ints)


def sign_canonical(vec):
    """Primitive vector with the first nonzero coordinate made positive."""
    p = primitive_vector(vec)
    for v in p:
        if v != 0:
            return p if v > 0 else tuple(-x for x in p)
    return p


def int_nullspace(rows, ncols):
    """Primitive integer basis of the right kernel."""
    return [primitive_vector(v) for v in kernel_basis(rows, ncols)]
