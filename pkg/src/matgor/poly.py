"""Exact-rational polynomials for the apolarity pairing.

Two sparse representations: SquareFreePoly keys monomials by subset bitmask
(the x-side, always multilinear), DiffPoly keys them by exponent vector (the
differential-operator side, and general products such as symbolic Hessian
determinants).  Coefficients are Fractions throughout; there is no floating
point anywhere in this package's core.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import linalg
from .errors import DegreeCapExceeded, GuardExceeded, InvariantError, MatroidError
from .matroid import bits

#: Total-degree cap for general polynomials (socle degrees plus slack).
DEGREE_CAP = 12


def _clean_frac(c):
    c = Fraction(c)
    return c


class SquareFreePoly:
    """Multilinear polynomial: map from variable subsets to rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mask, c in terms.items():
                c = _clean_frac(c)
                if c != 0:
                    if mask >> nvars:
                        raise MatroidError("monomial outside the variable range")
                    clean[mask] = c
        self.terms = clean

    @classmethod
    def monomial(cls, nvars, mask, coeff=1):
        return cls(nvars, {mask: Fraction(coeff)})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    def is_zero(self):
        return not self.terms

    def coefficient(self, mask):
        return self.terms.get(mask, Fraction(0))

    def supports(self):
        return sorted(self.terms)

    def degree(self):
        return max((m.bit_count() for m in self.terms), default=0)

    def homogeneous_degree(self):
        degs = {m.bit_count() for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SquareFreePoly(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return SquareFreePoly(self.nvars, out)

    def __neg__(self):
        return SquareFreePoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        return SquareFreePoly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, SquareFreePoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point):
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for i in bits(m):
                prod *= point[i]
            total += prod
        return total

    def to_general(self):
        out = {}
        for m, c in self.terms.items():
            exps = [0] * self.nvars
            for i in bits(m):
                exps[i] = 1
            out[tuple(exps)] = c
        return DiffPoly(self.nvars, out)

    def to_text(self):
        return _terms_to_text(
            self.nvars, ((_mask_exps(self.nvars, m), c) for m, c in self.terms.items())
        )

    def __repr__(self):
        return f"SquareFreePoly({self.to_text()})"


class DiffPoly:
    """Sparse polynomial keyed by exponent vectors (total degree capped)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = _clean_frac(c)
                if c != 0:
                    exps = tuple(exps)
                    if len(exps) != nvars or any(e < 0 for e in exps):
                        raise MatroidError("bad exponent vector")
                    if sum(exps) > DEGREE_CAP:
                        raise DegreeCapExceeded(
                            f"total degree {sum(exps)} exceeds cap {DEGREE_CAP}"
                        )
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def variable(cls, nvars, i, power=1):
        exps = [0] * nvars
        exps[i] = power
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial_mask(cls, nvars, mask, coeff=1):
        exps = [0] * nvars
        for i in bits(mask):
            exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_degree(self):
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return DiffPoly(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return DiffPoly(self.nvars, out)

    def __neg__(self):
        return DiffPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        return DiffPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return DiffPoly(self.nvars, out)

    def __pow__(self, k):
        result = DiffPoly.one(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, DiffPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point):
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            prod = c
            for i, e in enumerate(exps):
                if e:
                    prod *= point[i] ** e
            total += prod
        return total

    def leading_term_grlex(self):
        key = max(self.terms, key=lambda e: (sum(e), e))
        return key, self.terms[key]

    def divexact(self, divisor):
        """Quotient self / divisor when the division is exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = DiffPoly(self.nvars, dict(self.terms))
        qterms = {}
        lt_d, lc_d = divisor.leading_term_grlex()
        while not rem.is_zero():
            lt_r, lc_r = rem.leading_term_grlex()
            diff = tuple(a - b for a, b in zip(lt_r, lt_d))
            if any(d < 0 for d in diff):
                raise InvariantError("inexact polynomial division")
            qc = lc_r / lc_d
            qterms[diff] = qterms.get(diff, Fraction(0)) + qc
            rem = rem - DiffPoly(self.nvars, {diff: qc}) * divisor
        return DiffPoly(self.nvars, qterms)

    def to_text(self):
        return _terms_to_text(self.nvars, self.terms.items())

    def __repr__(self):
        return f"DiffPoly({self.to_text()})"


def _mask_exps(nvars, mask):
    exps = [0] * nvars
    for i in bits(mask):
        exps[i] = 1
    return tuple(exps)


# -- text grammar ------------------------------------------------------------

_TERM_RE = re.compile(
    r"^\s*(?P<coef>[+-]?\d+(?:/\d+)?)?\s*(?P<vars>(?:\*?\s*x\d+(?:\^\d+)?\s*)*)$"
)
_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def _terms_to_text(nvars, items):
    items = sorted(items, key=lambda t: (sum(t[0]), t[0]), reverse=True)
    if not items:
        return "0"
    pieces = []
    for k, (exps, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        body = str(mag) + ("*" + "*".join(factors) if factors else "")
        if k == 0:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def parse_poly(text, nvars):
    """Parse the textual polynomial grammar into a DiffPoly (exact round-trip)."""
    text = text.strip()
    if not text:
        raise MatroidError("empty polynomial text")
    chunks = re.split(r"(?=[+-])(?![^(]*\))", text.replace(" ", ""))
    terms = {}
    for chunk in chunks:
        if not chunk or chunk in "+-":
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m:
            raise MatroidError(f"cannot parse term {chunk!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        exps = [0] * nvars
        for vm in _VAR_RE.finditer(m.group("vars") or ""):
            idx = int(vm.group(1)) - 1
            if not 0 <= idx < nvars:
                raise MatroidError(f"variable x{idx + 1} out of range")
            exps[idx] += int(vm.group(2)) if vm.group(2) else 1
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + sign * coef
    return DiffPoly(nvars, terms)


def parse_squarefree(text, nvars):
    p = parse_poly(text, nvars)
    out = {}
    for exps, c in p.terms.items():
        if any(e > 1 for e in exps):
            raise MatroidError("polynomial is not square-free")
        mask = 0
        for i, e in enumerate(exps):
            if e:
                mask |= 1 << i
        out[mask] = c
    return SquareFreePoly(nvars, out)


# -- matroid polynomials -----------------------------------------------------


def phi(m):
    """Sum of the square-free basis monomials of the matroid."""
    return SquareFreePoly(m.n, {b: Fraction(1) for b in m.bases_masks})


def phi_level(m, i):
    """Sum of x_F over the independent sets of cardinality i."""
    if not 0 <= i <= m.rank_total:
        raise MatroidError(f"level {i} out of range")
    return SquareFreePoly(
        m.n,
        {s: Fraction(1) for s in m.independents if s.bit_count() == i},
    )


def f_tau(m, cls):
    """Sum of x_F over one closure-equivalence class of independent sets.

    Accepts an EquivClass or an iterable of ground labels denoting a flat.
    """
    if hasattr(cls, "members"):
        members = cls.members
    else:
        fl = m.mask(cls)
        if m.closure_mask(fl) != fl:
            raise MatroidError("not a flat")
        r = m.rank_mask(fl)
        members = [
            s
            for s in m.independents
            if s.bit_count() == r and m.closure_mask(s) == fl
        ]
        if not members:
            raise MatroidError("flat has no spanning independent sets")
    return SquareFreePoly(m.n, {s: Fraction(1) for s in members})


# -- the differential action -------------------------------------------------


def apply_diff(op, f):
    """Apply a differential operator to a square-free polynomial.

    Operator terms with any squared variable annihilate every multilinear
    monomial; a square-free operator monomial acts by deleting its support.
    """
    out = {}
    for exps, c in op.terms.items():
        if any(e > 1 for e in exps):
            continue
        smask = 0
        for i, e in enumerate(exps):
            if e:
                smask |= 1 << i
        for bmask, fc in f.terms.items():
            if bmask & smask == smask:
                key = bmask ^ smask
                out[key] = out.get(key, Fraction(0)) + c * fc
    return SquareFreePoly(f.nvars, out)


def apply_linear_form(coeffs, f, power=1):
    """Apply (sum_e a_e d/dx_e)^power to f, term by term."""
    coeffs = [Fraction(v) for v in coeffs]
    cur = f
    for _ in range(power):
        out = {}
        for bmask, fc in cur.terms.items():
            for e in bits(bmask):
                if coeffs[e] != 0:
                    key = bmask ^ (1 << e)
                    out[key] = out.get(key, Fraction(0)) + coeffs[e] * fc
        cur = SquareFreePoly(f.nvars, out)
    return cur


# -- Hessians ----------------------------------------------------------------


def hessian_matrix(basis, g):
    """Matrix with entries alpha_i(D) alpha_j(D) g for a degree-d operator basis."""
    degs = {b.homogeneous_degree() for b in basis}
    if len(degs) != 1 or None in degs or degs == {0}:
        raise MatroidError("basis must be homogeneous of one positive degree")
    n = len(basis)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            entry = apply_diff(basis[i] * basis[j], g)
            rows[i][j] = entry
            rows[j][i] = entry
    return rows


def hessian_det_at(basis, g, point):
    """Exact determinant of the Hessian matrix evaluated at a rational point."""
    mat = hessian_matrix(basis, g)
    point = [Fraction(v) for v in point]
    num = [[entry.evaluate(point) for entry in row] for row in mat]
    return linalg.det_exact(num)


def hessian_det_symbolic(basis, g):
    """Symbolic Hessian determinant by fraction-free elimination; size <= 8."""
    if len(basis) > 8:
        raise GuardExceeded("symbolic Hessian determinants limited to size 8")
    mat = [[entry.to_general() for entry in row] for row in hessian_matrix(basis, g)]
    return _det_bareiss_poly(mat, g.nvars)


def _det_bareiss_poly(mat, nvars):
    n = len(mat)
    if n == 0:
        return DiffPoly.one(nvars)
    mat = [row[:] for row in mat]
    sign = 1
    prev = DiffPoly.one(nvars)
    for k in range(n - 1):
        if mat[k][k].is_zero():
            swap = next(
                (i for i in range(k + 1, n) if not mat[i][k].is_zero()), None
            )
            if swap is None:
                return DiffPoly.zero(nvars)
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pk = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pk * mat[i][j] - mat[i][k] * mat[k][j]
                mat[i][j] = num.divexact(prev)
            mat[i][k] = DiffPoly.zero(nvars)
        prev = pk
    out = mat[n - 1][n - 1]
    return out.scale(sign) if sign < 0 else out
