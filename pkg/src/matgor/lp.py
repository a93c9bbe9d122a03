"""Exact rational linear programming.

Dense two-phase simplex with Bland's rule over Fractions.  Problems here are
tiny (tens of variables), produced by the polyhedral and Groebner-fan code,
and every answer must be exact, so floating-point solvers are not an option.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status, x=None, value=None):
        self.status = status
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status}, value={self.value})"


def _pivot(tab, basis, z, row, col):
    piv = tab[row][col]
    inv = _ONE / piv
    tab[row] = [v * inv for v in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [a - f * b for a, b in zip(r, prow)]
    if z[col] != 0:
        f = z[col]
        for j in range(len(z)):
            z[j] -= f * prow[j]
    basis[row] = col


def _simplex(tab, basis, cost, ncols):
    """Minimize cost.x over {rows of tab as equalities, x >= 0}; in place.

    Rows are kept in basic form (basic columns are unit columns, rhs >= 0).
    Returns a status string; the objective value is -z[-1] on OPTIMAL.
    """
    z = [Fraction(c) for c in cost] + [_ZERO]
    for i, b in enumerate(basis):
        if z[b] != 0:
            f = z[b]
            row = tab[i]
            for j in range(len(z)):
                z[j] -= f * row[j]
    while True:
        enter = -1
        for j in range(ncols):
            if z[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, z
        leave = -1
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED, z
        _pivot(tab, basis, z, leave, enter)


def maximize(c, a_ub=(), b_ub=(), a_eq=(), b_eq=()):
    """Maximize c.x subject to a_ub.x <= b_ub and a_eq.x == b_eq, x free.

    Free variables are split into positive and negative parts internally.
    """
    n = len(c)
    a_ub = [list(r) for r in a_ub]
    a_eq = [list(r) for r in a_eq]
    m_ub = len(a_ub)
    m_eq = len(a_eq)
    nstruct = 2 * n
    nslack = m_ub
    width = nstruct + nslack

    rows = []
    needs_artificial = []
    for k, (arow, b) in enumerate(zip(a_ub, b_ub)):
        row = [_ZERO] * width + [Fraction(b)]
        for j, a in enumerate(arow):
            a = Fraction(a)
            row[j] = a
            row[n + j] = -a
        row[nstruct + k] = _ONE
        if row[-1] < 0:
            row = [-v for v in row]
            needs_artificial.append(True)   # slack coefficient is now -1
        else:
            needs_artificial.append(False)
        rows.append(row)
    for arow, b in zip(a_eq, b_eq):
        row = [_ZERO] * width + [Fraction(b)]
        for j, a in enumerate(arow):
            a = Fraction(a)
            row[j] = a
            row[n + j] = -a
        if row[-1] < 0:
            row = [-v for v in row]
        needs_artificial.append(True)
        rows.append(row)

    art_cols = {}
    basis = []
    for i, need in enumerate(needs_artificial):
        if need:
            art_cols[i] = width + len(art_cols)
            basis.append(art_cols[i])
        else:
            basis.append(nstruct + i)
    nart = len(art_cols)
    total = width + nart
    tab = []
    for i, row in enumerate(rows):
        ext = row[:-1] + [_ZERO] * nart + [row[-1]]
        if i in art_cols:
            ext[art_cols[i]] = _ONE
        tab.append(ext)

    if nart:
        cost1 = [_ZERO] * width + [_ONE] * nart
        status, z = _simplex(tab, basis, cost1, total)
        if status != OPTIMAL or -z[-1] > 0:
            return LPResult(INFEASIBLE)
        # Drive leftover artificials out of the basis (their value is 0).
        for i in range(len(tab)):
            if basis[i] >= width:
                col = next((j for j in range(width) if tab[i][j] != 0), None)
                if col is not None:
                    _pivot(tab, basis, z, i, col)
        keep = [i for i in range(len(tab)) if basis[i] < width]
        tab = [tab[i][:width] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]

    cost2 = [-Fraction(v) for v in c] + [Fraction(v) for v in c] + [_ZERO] * nslack
    status, z = _simplex(tab, basis, cost2, width)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] += tab[i][-1]
        elif b < 2 * n:
            x[b - n] -= tab[i][-1]
    # _simplex minimized -c.x, whose value is -z[-1]; hence c.x = z[-1].
    return LPResult(OPTIMAL, tuple(x), z[-1])


def feasible(a_ub=(), b_ub=(), a_eq=(), b_eq=(), nvars=None):
    """Feasibility of the system (free variables); returns LPResult."""
    if nvars is None:
        if a_ub:
            nvars = len(a_ub[0])
        elif a_eq:
            nvars = len(a_eq[0])
        else:
            return LPResult(OPTIMAL, (), _ZERO)
    return maximize([_ZERO] * nvars, a_ub, b_ub, a_eq, b_eq)
