"""Rational polyhedral cones and fans.

Cones are stored by integer inequality/equality normals; the ambient space is
either all of R^E or the sum-zero hyperplane H (used for fans of homogeneous
ideals, which are invariant under the all-ones direction).  All feasibility
and containment questions run through the exact simplex, with LPs posed in an
integer basis of the equality subspace so they are single phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg, lp
from .errors import InvariantError


@dataclass(frozen=True)
class RationalCone:
    """{x : a.x >= 0 for ineqs, b.x == 0 for eqs}, inside R^E or H."""

    ineqs: tuple
    eqs: tuple = ()
    ambient: str = "H"

    def __post_init__(self):
        object.__setattr__(self, "ineqs", dedupe_normals(self.ineqs))
        object.__setattr__(
            self, "eqs", tuple(linalg.primitive_vector(e) for e in self.eqs)
        )

    @property
    def nvars(self):
        if self.ineqs:
            return len(self.ineqs[0])
        if self.eqs:
            return len(self.eqs[0])
        raise InvariantError("cone with no constraints needs explicit dimension")


def dedupe_normals(normals):
    seen = []
    out = []
    for a in normals:
        p = linalg.primitive_vector(a)
        if any(v != 0 for v in p) and p not in seen:
            seen.append(p)
            out.append(p)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _subspace_basis(eqs, ambient, n):
    rows = [list(e) for e in eqs]
    if ambient == "H":
        rows.append([1] * n)
    if not rows:
        return tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
    basis = linalg.int_nullspace(rows, n)
    return tuple(basis)


def _reduced(normal, basis):
    return tuple(sum(a * b for a, b in zip(normal, bvec)) for bvec in basis)


def _lift(tcoords, basis):
    n = len(basis[0]) if basis else 0
    out = [Fraction(0)] * n
    for t, bvec in zip(tcoords, basis):
        if t:
            for j, b in enumerate(bvec):
                out[j] += t * b
    return tuple(out)


def _box_rows(m):
    rows = []
    rhs = []
    for j in range(m):
        e = [0] * m
        e[j] = 1
        rows.append(list(e))
        rhs.append(1)
        e2 = [0] * m
        e2[j] = -1
        rows.append(e2)
        rhs.append(1)
    return rows, rhs


def _setup(cone, n=None):
    n = n or cone.nvars
    basis = _subspace_basis(cone.eqs, cone.ambient, n)
    reduced = [_reduced(a, basis) for a in cone.ineqs]
    return basis, reduced


def contains_point(cone, z, n=None):
    """Exact membership test (z must satisfy ambient-H when applicable)."""
    n = n or cone.nvars
    if cone.ambient == "H" and sum(z) != 0:
        return False
    for e in cone.eqs:
        if sum(a * b for a, b in zip(e, z)) != 0:
            return False
    return all(sum(a * b for a, b in zip(a_, z)) >= 0 for a_ in cone.ineqs)


def interior_point(cone, n=None, extra_eqs=()):
    """Max-min-slack point relative to the equality subspace.

    Returns (point, slack); slack > 0 means the cone is full-dimensional in
    its subspace.  extra_eqs are additional equality normals (e.g. a facet).
    """
    n = n or cone.nvars
    eqs = cone.eqs + tuple(tuple(e) for e in extra_eqs)
    basis = _subspace_basis(eqs, cone.ambient, n)
    m = len(basis)
    if m == 0:
        # The subspace is the origin; the cone equals it trivially.
        return tuple(Fraction(0) for _ in range(n)), Fraction(1)
    reduced = [_reduced(a, basis) for a in cone.ineqs]
    # Maximize t subject to a~.x >= t, |x_j| <= 1, t <= 1 (single phase).
    rows, rhs = _box_rows(m)
    aub = [r + [0] for r in rows]
    bub = list(rhs)
    for a in reduced:
        aub.append([-x for x in a] + [1])
        bub.append(0)
    aub.append([0] * m + [1])
    bub.append(1)
    res = lp.maximize([0] * m + [1], aub, bub)
    if res.status != lp.OPTIMAL:
        raise InvariantError(f"cone interior LP failed: {res.status}")
    z = _lift(res.x[:m], basis)
    return z, res.value


def is_fulldim(cone, n=None):
    return interior_point(cone, n)[1] > 0


def max_over(cone, objective, n=None):
    """Maximum of objective.x over the cone intersected with the unit box."""
    n = n or cone.nvars
    basis, reduced = _setup(cone, n)
    m = len(basis)
    if m == 0:
        return Fraction(0)
    obj = _reduced(objective, basis)
    rows, rhs = _box_rows(m)
    aub = list(rows)
    bub = list(rhs)
    for a in reduced:
        aub.append([-x for x in a])
        bub.append(0)
    res = lp.maximize(list(obj), aub, bub)
    if res.status != lp.OPTIMAL:
        raise InvariantError(f"cone LP failed: {res.status}")
    return res.value


def valid_over(cone, normal, n=None):
    """True iff normal.x >= 0 holds on the whole cone."""
    return max_over(cone, [-v for v in normal], n) <= 0


def cone_contained(inner, outer, n=None):
    """Exact containment of one cone in another (same ambient)."""
    n = n or inner.nvars
    for e in outer.eqs:
        if max_over(inner, e, n) > 0 or max_over(inner, [-v for v in e], n) > 0:
            return False
    return all(valid_over(inner, a, n) for a in outer.ineqs)


def cones_equal(c1, c2, n=None):
    return cone_contained(c1, c2, n) and cone_contained(c2, c1, n)


def intersect(c1, c2):
    if c1.ambient != c2.ambient:
        raise InvariantError("ambient mismatch")
    return RationalCone(c1.ineqs + c2.ineqs, c1.eqs + c2.eqs, c1.ambient)


def relint_point(cone, n=None):
    """Relative-interior point plus the set of implicit-equality normals."""
    n = n or cone.nvars
    implicit = []
    remaining = list(cone.ineqs)
    while True:
        probe = RationalCone(tuple(remaining), cone.eqs + tuple(implicit), cone.ambient)
        z, slack = interior_point(probe, n)
        if slack > 0 or not remaining:
            return z, tuple(implicit)
        newly = []
        for a in remaining:
            if max_over(probe, a, n) == 0:
                newly.append(a)
        if not newly:
            raise InvariantError("degenerate relative-interior search")
        implicit.extend(newly)
        remaining = [a for a in remaining if a not in newly]


def cone_dim(cone, n=None):
    n = n or cone.nvars
    _, implicit = relint_point(cone, n)
    rows = [list(e) for e in cone.eqs] + [list(a) for a in implicit]
    if cone.ambient == "H":
        rows.append([1] * n)
    if not rows:
        return n
    return n - linalg.matrix_rank(rows, n)


def facets(cone, n=None):
    """Irredundant facet normals with a relative-interior witness per facet.

    Returns a list of (normal, witness); only meaningful for cones that are
    full-dimensional inside their equality subspace.
    """
    n = n or cone.nvars
    basis = _subspace_basis(cone.eqs, cone.ambient, n)
    m = len(basis)
    out = []
    for a in cone.ineqs:
        others = [b for b in cone.ineqs if b != a]
        ra = _reduced(a, basis)
        if not any(ra):
            continue
        rows, rhs = _box_rows(m)
        aub = [r + [0] for r in rows]
        bub = list(rhs)
        for b in others:
            rb = _reduced(b, basis)
            aub.append([-x for x in rb] + [1])
            bub.append(0)
        aub.append([0] * m + [1])
        bub.append(1)
        aeq = [list(ra) + [0]]
        beq = [0]
        res = lp.maximize([0] * m + [1], aub, bub, aeq, beq)
        if res.status == lp.OPTIMAL and res.value > 0:
            out.append((a, _lift(res.x[:m], basis)))
    return out


def rays(cone, n=None):
    """Extreme rays of a cone inside its subspace.

    Returns (rays, lineality_dim); rays is empty when the cone has lineality
    (rays are then not well defined) or equals the origin.
    """
    n = n or cone.nvars
    basis = _subspace_basis(cone.eqs, cone.ambient, n)
    m = len(basis)
    if m == 0:
        return (), 0
    reduced = [_reduced(a, basis) for a in cone.ineqs]
    reduced = [r for r in reduced if any(r)]
    rank = linalg.matrix_rank(reduced, m) if reduced else 0
    lineality = m - rank
    if lineality > 0:
        return (), lineality
    if m == 1:
        for sign in (1, -1):
            t = (Fraction(sign),)
            if all(sum(a * b for a, b in zip(r, t)) >= 0 for r in reduced):
                return (linalg.primitive_vector(_lift(t, basis)),), 0
        return (), 0
    fac = facets(cone, n)
    fnormals = [_reduced(a, basis) for a, _ in fac]
    found = {}
    for combo in combinations(range(len(fnormals)), m - 1):
        rows = [list(fnormals[i]) for i in combo]
        null = linalg.kernel_basis(rows, m)
        if len(null) != 1:
            continue
        t = tuple(null[0])
        for sign in (1, -1):
            ts = tuple(sign * v for v in t)
            if all(sum(a * b for a, b in zip(r, ts)) >= 0 for r in reduced):
                ray = linalg.primitive_vector(_lift(ts, basis))
                if any(ray):
                    found[ray] = True
                break
    return tuple(sorted(found)), 0


# -- fans ---------------------------------------------------------------------


@dataclass
class FanCone:
    cone: RationalCone
    ray_indices: tuple
    dim: int
    meta: dict = field(default_factory=dict)


@dataclass
class Fan:
    nvars: int
    ambient: str
    rays: list
    cones: list

    @property
    def n_rays(self):
        return len(self.rays)

    @property
    def n_maximal(self):
        return len(self.cones)

    def ray_set(self):
        return set(self.rays)

    def to_json(self):
        return {
            "ambient": self.ambient,
            "rays": [list(r) for r in self.rays],
            "maximal_cones": [sorted(c.ray_indices) for c in self.cones],
            "counts": {"rays": len(self.rays), "maximal": len(self.cones)},
        }


def assemble_fan(cones_with_meta, nvars, ambient="H"):
    """Build a Fan from (cone, meta) pairs, computing and deduping rays."""
    all_rays = {}
    records = []
    for cone, meta in cones_with_meta:
        cone_rays, lineality = rays(cone, nvars)
        idxs = []
        for r in cone_rays:
            if r not in all_rays:
                all_rays[r] = len(all_rays)
            idxs.append(all_rays[r])
        records.append((cone, tuple(sorted(idxs)), meta, lineality))
    ray_list = [None] * len(all_rays)
    for r, i in all_rays.items():
        ray_list[i] = r
    fan = Fan(nvars=nvars, ambient=ambient, rays=ray_list, cones=[])
    dim_sub = nvars - 1 if ambient == "H" else nvars
    for cone, idxs, meta, lineality in records:
        meta = dict(meta)
        if lineality:
            meta["lineality"] = lineality
        fan.cones.append(
            FanCone(cone=cone, ray_indices=idxs, dim=dim_sub, meta=meta)
        )
    return fan


def fans_equal(f1, f2):
    """Equality as collections of maximal cones (exact, via containment LPs)."""
    if f1.nvars != f2.nvars or len(f1.cones) != len(f2.cones):
        return False
    used = set()
    for c1 in f1.cones:
        match = None
        for j, c2 in enumerate(f2.cones):
            if j in used:
                continue
            if cones_equal(c1.cone, c2.cone, f1.nvars):
                match = j
                break
        if match is None:
            return False
        used.add(match)
    return True


def common_face_check(c1, c2, n):
    """Whether two cones intersect in a common face of both."""
    inter = intersect(c1, c2)
    z, implicit = relint_point(inter, n)
    # Face of each cone cut out by its constraints tight at z.
    def face_of(c):
        tight = [a for a in c.ineqs if sum(x * y for x, y in zip(a, z)) == 0]
        return RationalCone(c.ineqs, c.eqs + tuple(tight), c.ambient)

    face1 = face_of(c1)
    face2 = face_of(c2)
    return cones_equal(face1, face2, n) and cones_equal(face1, inter, n)


def fan_pairwise_faces(fan):
    """Check the fan property pairwise; returns the first failing pair or None."""
    n = fan.nvars
    for i in range(len(fan.cones)):
        for j in range(i + 1, len(fan.cones)):
            if not common_face_check(fan.cones[i].cone, fan.cones[j].cone, n):
                return (i, j)
    return None


def fan_is_complete(fan):
    """Completeness certificate: every facet of every maximal cone is shared."""
    n = fan.nvars
    for i, fc in enumerate(fan.cones):
        for normal, witness in facets(fc.cone, n):
            if not any(
                contains_point(other.cone, witness, n)
                for k, other in enumerate(fan.cones)
                if k != i
            ):
                return False
    return True


def canonical_ray(vec):
    """Primitive representative with sign fixed for printed-table comparison."""
    return linalg.sign_canonical(vec)
