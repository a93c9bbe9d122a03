"""Apolarity machinery: per-degree annihilator data and Hilbert vectors.

For a square-free homogeneous f of degree D the graded quotient by its
annihilator is encoded by catalecticant matrices: rows are the degree-d
multilinear monomials of the operator ring acting on f, columns the
degree-(D-d) monomials of the image.  The combinatorial quotient by the
closure-equivalence ideal is handled by the same class with a basis of
class-representative monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg, poly
from .errors import InvariantError, MatroidError
from .matroid import bits, equivalence_classes, mask_from_indices


def subsets_of_size(n, d):
    """Bitmasks of all d-subsets of range(n), in lexicographic order."""
    return [mask_from_indices(c) for c in combinations(range(n), d)]


def qbinom(n, i, q):
    """Gaussian binomial coefficient counting i-subspaces of an n-space."""
    num = 1
    den = 1
    for j in range(i):
        num *= q ** (n - j) - 1
        den *= q ** (i - j) - 1
    assert num % den == 0
    return num // den


class GradedQuotient:
    """Per-degree bases and pairing data of an apolarity or class quotient."""

    def __init__(self, variant, nvars, degree):
        self.variant = variant
        self.nvars = nvars
        self.D = degree
        self.basis = []     # per degree: list of monomial bitmasks
        self.dims = ()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_annihilator(cls, f):
        """Quotient of the operator ring by the annihilator of f."""
        D = f.homogeneous_degree()
        if D is None:
            raise MatroidError("inhomogeneous apolarity source")
        if f.is_zero():
            raise MatroidError("zero apolarity source")
        gq = cls("ann", f.nvars, D)
        gq.f = f
        gq.row_monomials = []
        gq.cat = []
        dims = []
        for d in range(D + 1):
            rows_masks = subsets_of_size(f.nvars, d)
            cols_masks = subsets_of_size(f.nvars, D - d)
            col_index = {m: j for j, m in enumerate(cols_masks)}
            cat = []
            for s in rows_masks:
                row = [Fraction(0)] * len(cols_masks)
                for t, j in col_index.items():
                    if s & t == 0:
                        c = f.coefficient(s | t)
                        if c:
                            row[j] = c
                cat.append(row)
            keep = linalg.independent_rows(cat, len(cols_masks))
            gq.row_monomials.append(rows_masks)
            gq.cat.append(cat)
            gq.basis.append([rows_masks[i] for i in keep])
            dims.append(len(keep))
        gq.dims = tuple(dims)
        return gq

    @classmethod
    def from_matroid_classes(cls, m):
        """Quotient of the operator ring by the closure-equivalence ideal."""
        ec = equivalence_classes(m)
        gq = cls("jm", m.n, m.rank_total)
        gq.matroid = m
        gq.ec = ec
        gq.basis = [[c.rep for c in lvl] for lvl in ec.levels]
        gq.dims = ec.m_vector
        gq.class_index = []
        for lvl in ec.levels:
            idx = {}
            for j, c in enumerate(lvl):
                for member in c.members:
                    idx[member] = j
            gq.class_index.append(idx)
        return gq

    # -- images and multiplication ------------------------------------------

    def image_poly(self, smask):
        """The image of a basis monomial under the apolarity action."""
        assert self.variant == "ann"
        op = poly.DiffPoly.monomial_mask(self.nvars, smask)
        return poly.apply_diff(op, self.f)

    def power_map_rank(self, coeffs, i, k):
        """Rank of multiplication by (sum a_e X_e)^k from degree i to i+k."""
        if i + k > self.D:
            return 0
        if self.variant == "ann":
            cols_masks = subsets_of_size(self.nvars, self.D - i - k)
            col_index = {m: j for j, m in enumerate(cols_masks)}
            rows = []
            for smask in self.basis[i]:
                img = poly.apply_linear_form(coeffs, self.image_poly(smask), power=k)
                row = [Fraction(0)] * len(cols_masks)
                for t, c in img.terms.items():
                    row[col_index[t]] = c
                rows.append(row)
            return linalg.matrix_rank(rows, len(cols_masks)) if rows else 0
        mat = None
        for step in range(k):
            nxt = self.raising_matrix(coeffs, i + step)
            mat = nxt if mat is None else _matmul(mat, nxt)
        if mat is None:  # k == 0
            return self.dims[i]
        return linalg.matrix_rank(mat, self.dims[i + k]) if mat else 0

    def raising_matrix(self, coeffs, d):
        """Matrix of multiplication by sum a_e X_e from degree d to d+1 (jm)."""
        assert self.variant == "jm"
        coeffs = [Fraction(v) for v in coeffs]
        m = self.matroid
        rows = []
        for cls in self.ec.levels[d]:
            row = [Fraction(0)] * self.dims[d + 1]
            rep = cls.rep
            for e in range(m.n):
                be = 1 << e
                if rep & be:
                    continue
                cand = rep | be
                if cand in m.independents:
                    row[self.class_index[d + 1][cand]] += coeffs[e]
            rows.append(row)
        return rows

    def pairing_matrix(self, d):
        """Gram matrix of the pairing of degrees d and D-d into the socle."""
        dd = self.D - d
        rows = []
        if self.variant == "ann":
            for s in self.basis[d]:
                rows.append(
                    [
                        self.f.coefficient(s | t) if s & t == 0 else Fraction(0)
                        for t in self.basis[dd]
                    ]
                )
            return rows
        m = self.matroid
        for s in self.basis[d]:
            row = []
            for t in self.basis[dd]:
                if s & t == 0 and (s | t) in m.independents:
                    row.append(Fraction(1))
                else:
                    row.append(Fraction(0))
            rows.append(row)
        return rows


def _matmul(a, b):
    if not a or not b:
        return []
    cols = len(b[0])
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


# -- Hilbert vectors ---------------------------------------------------------


def ann_hilbert(f):
    """Hilbert vector of the quotient by the annihilator of f."""
    return GradedQuotient.from_annihilator(f).dims


def jm_hilbert(m):
    """Hilbert vector of the closure-equivalence quotient: class counts."""
    return equivalence_classes(m).m_vector


# -- comparison of the two ideals --------------------------------------------


@dataclass
class AnnJmComparison:
    equal: bool
    hilbert_ann: tuple
    hilbert_jm: tuple
    extra_generators: dict   # degree -> list of DiffPoly


def ann_equals_jm(m):
    """Compare the annihilator of the basis polynomial with the class ideal.

    The class ideal always sits inside the annihilator (asserted generator by
    generator); when the Hilbert vectors differ, a canonical basis of the
    degree-d discrepancy is produced, reduced to normal form by division.
    """
    from . import groebner

    f = poly.phi(m)
    lam = groebner.lambda_set(m)
    for g in lam.all_generators:
        if not poly.apply_diff(g, f).is_zero():
            raise InvariantError(
                "class-ideal generator does not annihilate the basis polynomial"
            )
    gq = GradedQuotient.from_annihilator(f)
    h_ann = gq.dims
    h_jm = jm_hilbert(m)
    if len(h_ann) != len(h_jm):
        raise InvariantError("socle degrees differ")
    equal = h_ann == h_jm
    extra = {}
    if not equal:
        ec = equivalence_classes(m)
        order = groebner.MonomialOrder(base="grevlex")
        for d in range(m.rank_total + 1):
            gap = h_jm[d] - h_ann[d]
            if gap < 0:
                raise InvariantError("class ideal larger than the annihilator")
            if gap == 0:
                continue
            extra[d] = _extra_generators_degree(m, ec, gq, d, gap, lam, order)
    return AnnJmComparison(
        equal=equal, hilbert_ann=h_ann, hilbert_jm=h_jm, extra_generators=extra
    )


def _extra_generators_degree(m, ec, gq, d, gap, lam, order):
    from . import groebner

    rows_masks = gq.row_monomials[d]
    cat = gq.cat[d]
    ncols = len(cat[0]) if cat else 0
    # Left kernel: operator combinations of square-free monomials killing f.
    transposed = [[cat[i][j] for i in range(len(cat))] for j in range(ncols)]
    kern = linalg.kernel_basis(transposed, len(rows_masks))
    classes = ec.levels[d]
    class_pos = {}
    for j, c in enumerate(classes):
        for member in c.members:
            class_pos[member] = j
    image = []
    for v in kern:
        acc = [Fraction(0)] * len(classes)
        for coeff, smask in zip(v, rows_masks):
            if coeff and smask in class_pos:
                acc[class_pos[smask]] += coeff
        image.append(acc)
    # Columns ordered by descending monomial order of the class representatives.
    keys = [order.key(_exps_of(m.n, c.rep)) for c in classes]
    perm = sorted(range(len(classes)), key=lambda j: keys[j], reverse=True)
    permuted = [[row[j] for j in perm] for row in image]
    reduced, pivots = linalg.rref(permuted, len(classes))
    vectors = [row for row in reduced if any(x != 0 for x in row)]
    if len(vectors) != gap:
        raise InvariantError("quotient dimension mismatch in extra generators")
    out = []
    for row in vectors:
        terms = {}
        for jj, coeff in enumerate(row):
            if coeff:
                rep = classes[perm[jj]].rep
                terms[_exps_of(m.n, rep)] = coeff
        cand = poly.DiffPoly(m.n, terms)
        _, rem = groebner.divide(cand, lam.all_generators, order)
        if rem != cand:
            raise InvariantError("extra generator is not in normal form")
        out.append(cand)
    return out


def _exps_of(nvars, mask):
    exps = [0] * nvars
    for i in bits(mask):
        exps[i] = 1
    return tuple(exps)


def ann_generators(m):
    """Generators of the annihilator: the class ideal plus any extra pieces."""
    from . import groebner

    lam = groebner.lambda_set(m)
    gens = list(lam.all_generators)
    cmp = ann_equals_jm(m)
    for d in sorted(cmp.extra_generators):
        gens.extend(cmp.extra_generators[d])
    return gens


# -- duality pairings --------------------------------------------------------


@dataclass
class PairingReport:
    degree: int
    rank: int
    dim_low: int
    dim_high: int

    @property
    def nondegenerate(self):
        return self.rank == self.dim_low == self.dim_high


def poincare_pairing_ranks(m, ideal="ann"):
    """Ranks of the multiplication pairings into the socle, degree by degree.

    Returns (reports, gorenstein): the quotient is Gorenstein iff the socle is
    one-dimensional and every pairing is nondegenerate.
    """
    ideal = ideal.lower()
    if ideal == "ann":
        gq = GradedQuotient.from_annihilator(poly.phi(m))
    elif ideal == "jm":
        gq = GradedQuotient.from_matroid_classes(m)
    else:
        raise MatroidError("ideal must be 'ann' or 'jm'")
    reports = []
    for d in range(gq.D // 2 + 1):
        mat = gq.pairing_matrix(d)
        rank = linalg.matrix_rank(mat, len(mat[0])) if mat and mat[0] else 0
        reports.append(
            PairingReport(
                degree=d,
                rank=rank,
                dim_low=gq.dims[d],
                dim_high=gq.dims[gq.D - d],
            )
        )
    gorenstein = gq.dims[gq.D] == 1 and all(r.nondegenerate for r in reports)
    return reports, gorenstein


# -- independence of class derivatives ----------------------------------------


def catalecticant_rank_lemma(m, l):
    """Check that one derivative per level-l class of the level-2l generating
    polynomial yields linearly independent polynomials.

    Only meaningful for projective-geometry matroids; guarded accordingly.
    """
    if not (m.origin and m.origin[0] == "pg"):
        raise MatroidError("rank lemma applies to projective-geometry matroids")
    if 2 * l > m.rank_total:
        raise MatroidError("need 2l <= rank")
    if l == 0:
        return True
    f2l = poly.phi_level(m, 2 * l)
    ec = equivalence_classes(m)
    cols = subsets_of_size(m.n, l)
    col_index = {c: j for j, c in enumerate(cols)}
    rows = []
    for cls in ec.levels[l]:
        img = poly.apply_diff(poly.DiffPoly.monomial_mask(m.n, cls.rep), f2l)
        row = [Fraction(0)] * len(cols)
        for t, c in img.terms.items():
            row[col_index[t]] = c
        rows.append(row)
    return linalg.matrix_rank(rows, len(cols)) == ec.m_vector[l]
