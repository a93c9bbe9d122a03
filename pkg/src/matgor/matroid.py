"""Matroid construction and the independence / rank / closure calculus.

Subsets of the ordered ground set are bitmasks over element positions; the
full independence family is materialized, which is the right trade at desk
scale (every downstream computation enumerates it anyway).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import (
    AxiomViolation,
    BasisExchangeViolation,
    InvariantError,
    MatroidError,
    guard,
)
from . import gf

MAX_GROUND = 40
MAX_FAMILY_GROUND = 20


def bits(mask):
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_from_indices(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Matroid:
    """A matroid given by its ordered ground set and independence family."""

    def __init__(self, ground, independents, validate=True, origin=None):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise MatroidError("ground set labels must be distinct")
        guard(len(ground) <= MAX_GROUND, f"ground set larger than {MAX_GROUND}")
        guard(
            len(ground) <= MAX_FAMILY_GROUND,
            f"materialized family needs |E| <= {MAX_FAMILY_GROUND}",
        )
        self.ground = ground
        self.n = len(ground)
        self._index = {lab: i for i, lab in enumerate(ground)}
        self.independents = frozenset(independents)
        self.origin = origin
        if validate:
            self._validate()

    # -- construction-time validation -------------------------------------

    def _validate(self):
        fam = self.independents
        if 0 not in fam:
            raise AxiomViolation("M1", "the empty set must be independent")
        for s in fam:
            m = s
            while m:
                low = m & -m
                if (s ^ low) not in fam:
                    raise AxiomViolation(
                        "M2", f"family not downward closed at {self.subset_labels(s)}"
                    )
                m ^= low
        r = max(s.bit_count() for s in fam)
        full = (1 << self.n) - 1
        for s in fam:
            if s.bit_count() < r:
                if not any(
                    (s | (1 << e)) in fam for e in bits(full ^ s)
                ):
                    raise AxiomViolation(
                        "M3",
                        f"independent set {self.subset_labels(s)} cannot be extended",
                    )
        bases = [s for s in fam if s.bit_count() == r]
        for b1 in bases:
            for b2 in bases:
                diff = b1 & ~b2
                for x in bits(diff):
                    moved = b1 ^ (1 << x)
                    if not any((moved | (1 << y)) in fam for y in bits(b2 & ~b1)):
                        raise BasisExchangeViolation(
                            (self.subset_labels(b1), self.subset_labels(b2))
                        )

    def exhaustive_axiom_check(self):
        """Literal check of all three axioms over every pair; small inputs only."""
        fam = self.independents
        guard(len(fam) ** 2 <= 4_000_000, "family too large for exhaustive M3")
        if 0 not in fam:
            return "M1"
        for s in fam:
            for e in bits(s):
                if (s ^ (1 << e)) not in fam:
                    return "M2"
        for x in fam:
            for y in fam:
                if x.bit_count() > y.bit_count():
                    if not any((y | (1 << e)) in fam for e in bits(x & ~y)):
                        return "M3"
        return None

    # -- basic queries -----------------------------------------------------

    def mask(self, labels):
        m = 0
        for lab in labels:
            try:
                m |= 1 << self._index[lab]
            except KeyError:
                raise MatroidError(f"unknown element {lab!r}") from None
        return m

    def subset_labels(self, mask):
        return frozenset(self.ground[i] for i in bits(mask))

    @cached_property
    def rank_total(self):
        return max(s.bit_count() for s in self.independents)

    @cached_property
    def bases_masks(self):
        r = self.rank_total
        return tuple(sorted(s for s in self.independents if s.bit_count() == r))

    def bases(self):
        return [self.subset_labels(b) for b in self.bases_masks]

    def is_independent(self, labels):
        return self.mask(labels) in self.independents

    def rank_mask(self, smask):
        ind = 0
        fam = self.independents
        for e in bits(smask):
            cand = ind | (1 << e)
            if cand in fam:
                ind = cand
        return ind.bit_count()

    def closure_mask(self, smask):
        r = self.rank_mask(smask)
        out = smask
        full = (1 << self.n) - 1
        for y in bits(full ^ smask):
            if self.rank_mask(smask | (1 << y)) == r:
                out |= 1 << y
        return out

    def rank(self, labels):
        return self.rank_mask(self.mask(labels))

    def closure(self, labels):
        return self.subset_labels(self.closure_mask(self.mask(labels)))

    def is_flat(self, labels):
        m = self.mask(labels)
        return self.closure_mask(m) == m

    @cached_property
    def loops_mask(self):
        return self.closure_mask(0)

    @cached_property
    def flats_masks(self):
        return tuple(sorted({self.closure_mask(s) for s in self.independents}))

    @cached_property
    def circuits_masks(self):
        """Minimal dependent sets (at most rank+1 elements each)."""
        fam = self.independents
        out = []
        for size in range(1, self.rank_total + 2):
            for combo in combinations(range(self.n), size):
                m = mask_from_indices(combo)
                if m in fam:
                    continue
                if all((m ^ (1 << e)) in fam for e in combo):
                    out.append(m)
        return tuple(sorted(out))

    def __repr__(self):
        return f"Matroid(|E|={self.n}, rank={self.rank_total}, bases={len(self.bases_masks)})"


# -- equivalence classes of independent sets -------------------------------


@dataclass(frozen=True)
class EquivClass:
    """Independent sets sharing a closure; `flat` and members are bitmasks."""

    flat: int
    rep: int
    members: tuple

    @property
    def size(self):
        return len(self.members)


@dataclass(frozen=True)
class EquivClasses:
    """Per-level classes of independent sets and the flats they close to."""

    levels: tuple          # levels[l] = tuple of EquivClass at rank l
    m_vector: tuple        # m_vector[l] = number of classes at level l

    def classes(self):
        for lvl in self.levels:
            yield from lvl

    def flats_of_rank(self, l):
        return tuple(c.flat for c in self.levels[l])

    def level_class_of(self, member_mask):
        size = member_mask.bit_count()
        for c in self.levels[size]:
            if member_mask in c.members:
                return c
        raise MatroidError("not an independent set of that size")


def _lex_key(mask):
    return tuple(bits(mask))


def equivalence_classes(m, verify=None):
    """Group independent sets by closure, per cardinality level.

    When the ground set is small the complementary-extension characterization
    of the equivalence (two independent sets are equivalent iff the same
    independent sets extend them disjointly) is asserted exhaustively.
    """
    by_flat = {}
    for s in m.independents:
        fl = m.closure_mask(s)
        by_flat.setdefault(fl, []).append(s)
    levels = []
    for l in range(m.rank_total + 1):
        classes = []
        for fl, members in by_flat.items():
            if fl and m.rank_mask(fl) == l or (fl == 0 and l == 0):
                mem = tuple(sorted((x for x in members if x.bit_count() == l)))
                if mem:
                    classes.append(
                        EquivClass(flat=fl, rep=min(mem, key=_lex_key), members=mem)
                    )
        classes.sort(key=lambda c: _lex_key(c.rep))
        levels.append(tuple(classes))
    ec = EquivClasses(levels=tuple(levels), m_vector=tuple(len(l) for l in levels))
    total = sum(c.size for c in ec.classes())
    if total != len(m.independents):
        raise InvariantError("class sizes do not add up to the family size")
    if verify is None:
        verify = m.n <= 10
    if verify:
        _verify_extension_characterization(m, ec)
    return ec


def _verify_extension_characterization(m, ec):
    fam = sorted(m.independents)
    ext = {}
    for s in fam:
        ext[s] = frozenset(
            u for u in fam if u & s == 0 and (u | s) in m.independents
        )
    closure = {s: m.closure_mask(s) for s in fam}
    for i, s in enumerate(fam):
        for t in fam[i + 1 :]:
            if (closure[s] == closure[t]) != (ext[s] == ext[t]):
                raise InvariantError(
                    "extension characterization of the closure equivalence fails "
                    f"for {m.subset_labels(s)} vs {m.subset_labels(t)}"
                )


# -- constructors -----------------------------------------------------------


def _downward_closure(bases_masks):
    fam = set()
    stack = list(bases_masks)
    fam.update(stack)
    while stack:
        s = stack.pop()
        mm = s
        while mm:
            low = mm & -mm
            sub = s ^ low
            if sub not in fam:
                fam.add(sub)
                stack.append(sub)
            mm ^= low
    fam.add(0)
    return frozenset(fam)


def from_bases(ground, bases):
    """Matroid from an explicit basis family; rejects non-matroids."""
    ground = tuple(ground)
    bases = [frozenset(b) for b in bases]
    if not bases:
        raise MatroidError("basis family must be nonempty")
    sizes = {len(b) for b in bases}
    if len(sizes) != 1:
        raise BasisExchangeViolation(
            (sorted(bases[0]), None), "bases must be equicardinal"
        )
    index = {lab: i for i, lab in enumerate(ground)}
    try:
        masks = [mask_from_indices(index[lab] for lab in b) for b in bases]
    except KeyError as e:
        raise MatroidError(f"basis element {e.args[0]!r} not in ground set") from None
    return Matroid(ground, _downward_closure(masks))


def from_gf_matrix(field, matrix, ground=None):
    """Column matroid of a finite-field matrix (labels default to 1..ncols)."""
    if ground is None:
        ground = tuple(range(1, matrix.ncols + 1))
    ground = tuple(ground)
    if len(ground) != matrix.ncols:
        raise MatroidError("one label per matrix column required")
    fam = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            top = max(bits(s)) if s else -1
            for e in range(top + 1, matrix.ncols):
                cand = s | (1 << e)
                if cand in fam:
                    continue
                cols = bits(cand)
                if gf.gf_rank(matrix, cols) == len(cols):
                    fam.add(cand)
                    nxt.append(cand)
        frontier = nxt
    # Downward closure holds automatically for linear independence.
    return Matroid(ground, frozenset(fam), validate=False)


def projective_geometry(q, n):
    """The matroid of all points of the projective space of rank n over GF(q)."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    qq = q
    while qq % p == 0 and qq > 1:
        qq //= p
        k += 1
    if qq != 1:
        raise MatroidError(f"{q} is not a prime power")
    field = gf.FiniteField(p, k)
    npoints = (q**n - 1) // (q - 1)
    guard(npoints <= 40, f"projective space with {npoints} points exceeds the cap")
    pts = gf.projective_points(field, n)
    if q <= 10:
        labels = ["".join(map(str, v)) for v in pts]
    else:
        labels = ["(" + ",".join(map(str, v)) + ")" for v in pts]
    matrix = gf.GFMatrix.from_columns(field, pts)
    m = from_gf_matrix(field, matrix, ground=labels)
    m.origin = ("pg", q, n)
    return m


def truncation(m, i):
    """The matroid whose bases are the original independent sets of size i."""
    if not 1 <= i <= m.rank_total:
        raise MatroidError(f"truncation level {i} out of range")
    fam = frozenset(s for s in m.independents if s.bit_count() <= i)
    return Matroid(m.ground, fam, validate=False)


def boolean_matroid(n):
    """The free matroid on n elements (every subset independent)."""
    if n < 1:
        raise MatroidError("need n >= 1")
    ground = tuple(range(1, n + 1))
    return Matroid(ground, frozenset(range(1 << n)), validate=False)


def projective_plane(lines):
    """Rank-3 matroid of a finite projective plane given by its lines.

    The incidence list is checked exhaustively: equal line sizes of order
    nu >= 2, every point pair on exactly one line, every line pair meeting
    in exactly one point, and the standard point/line counts.
    """
    lines = [frozenset(l) for l in lines]
    points = sorted(set().union(*lines)) if lines else []
    if not lines or not points:
        raise AxiomViolation("nondegenerate", "no lines given")
    sizes = {len(l) for l in lines}
    if len(sizes) != 1:
        raise AxiomViolation("equal-line-size", f"line sizes differ: {sorted(sizes)}")
    nu = sizes.pop() - 1
    if nu < 2:
        raise AxiomViolation("order", f"order {nu} < 2")
    expected = nu * nu + nu + 1
    if len(points) != expected or len(lines) != expected:
        raise AxiomViolation(
            "counts",
            f"need {expected} points and lines for order {nu}, "
            f"got {len(points)} and {len(lines)}",
        )
    for a, b in combinations(points, 2):
        through = [l for l in lines if a in l and b in l]
        if len(through) != 1:
            raise AxiomViolation("point-pair", f"points {a},{b} lie on {len(through)} lines")
    for l1, l2 in combinations(lines, 2):
        meet = l1 & l2
        if len(meet) != 1:
            raise AxiomViolation("line-pair", "two lines must meet in exactly one point")
    index = {lab: i for i, lab in enumerate(points)}
    line_masks = [mask_from_indices(index[p] for p in l) for l in lines]
    fam = set()
    for size0 in range(3):
        for combo in combinations(range(len(points)), size0):
            fam.add(mask_from_indices(combo))
    for combo in combinations(range(len(points)), 3):
        m3 = mask_from_indices(combo)
        if not any(m3 & lm == m3 for lm in line_masks):
            fam.add(m3)
    m = Matroid(tuple(points), frozenset(fam), validate=False)
    m.origin = ("plane", nu)
    return m


def direct_sum(m1, m2):
    """Direct sum on the disjoint union of the two ground sets."""
    g1, g2 = list(m1.ground), list(m2.ground)
    if set(g1) & set(g2):
        g1 = [f"{lab}.1" for lab in g1]
        g2 = [f"{lab}.2" for lab in g2]
    n1 = m1.n
    fam = frozenset(a | (b << n1) for a in m1.independents for b in m2.independents)
    return Matroid(tuple(g1) + tuple(g2), fam, validate=False)


def brute_isomorphic(m1, m2):
    """Isomorphism by brute-force relabeling; ground sets of at most 8."""
    guard(m1.n <= 8 and m2.n <= 8, "brute-force isomorphism limited to 8 elements")
    if m1.n != m2.n or m1.rank_total != m2.rank_total:
        return False
    if len(m1.bases_masks) != len(m2.bases_masks):
        return False
    from itertools import permutations

    target = set(m2.bases_masks)
    for perm in permutations(range(m1.n)):
        ok = True
        for b in m1.bases_masks:
            img = 0
            for e in bits(b):
                img |= 1 << perm[e]
            if img not in target:
                ok = False
                break
        if ok:
            return True
    return False
