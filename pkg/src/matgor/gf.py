"""Arithmetic in GF(p^k) and exact linear algebra over finite fields.

Field elements are represented as integers in range(p**k) encoding the
coefficient vector of a polynomial in the primitive element, base-p digits in
ascending order of degree.  For prime fields (k == 1) this is plain modular
arithmetic.
"""

from __future__ import annotations

from itertools import product


class FieldError(ValueError):
    pass


#: Irreducible moduli (ascending coefficients, monic) for small prime powers.
DEFAULT_MODULI = {
    4: (1, 1, 1),           # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),        # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),           # x^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),    # x^4 + x + 1 over GF(2)
    25: (1, 1, 1),          # x^2 + x + 1 over GF(5)
    27: (1, 2, 0, 1),       # x^3 + 2x + 1 over GF(3)
}

MAX_FIELD_SIZE = 1 << 20


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod(num, den, p):
    """Remainder of num by den over GF(p); coefficient lists, ascending."""
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        factor = num[-1] * inv_lead % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def _is_irreducible(modulus, p, k):
    """Exhaustive factor search: no monic factor of degree 1..k//2."""
    for deg in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=deg):
            den = list(tail) + [1]
            if not _poly_mod(modulus, den, p):
                return False
    return True


class FiniteField:
    """The field GF(p^k); instances are immutable and hashable."""

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**k
        if q > MAX_FIELD_SIZE:
            raise FieldError(f"field size {q} exceeds the 2^20 cap")
        self.p = p
        self.k = k
        self.q = q
        if k == 1:
            self.modulus = None
        else:
            if modulus is None:
                if q not in DEFAULT_MODULI:
                    raise FieldError(
                        f"no built-in modulus for GF({q}); supply one explicitly"
                    )
                modulus = DEFAULT_MODULI[q]
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] == 0:
                raise FieldError("modulus must have degree exactly k")
            if modulus[-1] != 1:
                inv = pow(modulus[-1], p - 2, p)
                modulus = tuple(c * inv % p for c in modulus)
            if not _is_irreducible(modulus, p, k):
                raise FieldError("modulus is reducible over GF(p)")
            self.modulus = modulus
        # Reduction table: alpha^j for j = k .. 2k-2 as digit vectors.
        if k > 1:
            table = []
            cur = [(-c) % p for c in self.modulus[:k]]  # alpha^k
            table.append(list(cur))
            for _ in range(k - 2):
                cur = [0] + cur
                if len(cur) > k:
                    hi = cur.pop()
                    cur = [(c + hi * t) % p for c, t in zip(cur, table[0])]
                table.append(list(cur))
            self._red = table
        else:
            self._red = None

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    def check(self, a):
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return a

    def digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds):
        val = 0
        for d in reversed(ds):
            val = val * self.p + d % self.p
        return val

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        da, db = self.digits(a), self.digits(b)
        k, p = self.k, self.p
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] = (conv[i + j] + x * y) % p
        res = conv[:k]
        for j in range(k, 2 * k - 1):
            hi = conv[j]
            if hi:
                red = self._red[j - k]
                res = [(c + hi * t) % p for c, t in zip(res, red)]
        return self.from_digits(res)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        result = 1
        base = a
        e = self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self):
        return range(self.q)


class GFMatrix:
    """Immutable matrix with entries in a common finite field (row major)."""

    def __init__(self, field, rows):
        self.field = field
        rows = tuple(tuple(field.check(e) for e in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise FieldError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def from_columns(cls, field, columns):
        columns = [list(c) for c in columns]
        if not columns:
            return cls(field, ())
        nrows = len(columns[0])
        return cls(field, [[col[i] for col in columns] for i in range(nrows)])

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def __repr__(self):
        return f"GFMatrix({self.field!r}, {self.nrows}x{self.ncols})"


def gf_rank(matrix, cols=None):
    """Rank of the selected columns by exact Gaussian elimination."""
    if cols is None:
        cols = range(matrix.ncols)
    cols = list(cols)
    for c in cols:
        if not 0 <= c < matrix.ncols:
            raise IndexError(f"column index {c} out of range")
    f = matrix.field
    work = [[matrix.rows[i][c] for c in cols] for i in range(matrix.nrows)]
    rank = 0
    ncols = len(cols)
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = f.inv(work[rank][c])
        work[rank] = [f.mul(inv, v) for v in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [
                    f.sub(v, f.mul(factor, w)) for v, w in zip(work[i], work[rank])
                ]
        rank += 1
        if rank == len(work):
            break
    return rank


def projective_points(field, n):
    """All points of the projective space of dimension n-1 over the field.

    Each point is the unique representative whose first nonzero coordinate
    is 1, listed in lexicographic order of coordinate tuples.
    """
    if n < 1:
        raise FieldError("need n >= 1")
    pts = []
    for vec in product(range(field.q), repeat=n):
        first = next((v for v in vec if v != 0), None)
        if first == 1:
            pts.append(vec)
    expected = (field.q**n - 1) // (field.q - 1)
    assert len(pts) == expected
    return pts
