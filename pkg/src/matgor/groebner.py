"""Monomial orders, division, Buchberger machinery, and Groebner fans.

The generating set of the closure-equivalence ideal (variable squares,
circuit monomials, and one binomial per pair of equivalent independent sets)
is a Groebner basis for every monomial order; the engine both exploits and
verifies this.  The fan traversal handles small general homogeneous ideals by
facet flipping from a generic weight vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg, poly
from .cones import RationalCone, facets, contains_point, interior_point
from .errors import GuardExceeded, InvariantError, MatroidError, TiedWeight, guard
from .matroid import bits
from .poly import DiffPoly


class MonomialOrder:
    """Weight vector refined by a fixed admissible tiebreak order.

    base is one of 'grlex', 'lex', 'grevlex'; priority permutes the variables
    (index sequence from most to least significant).
    """

    def __init__(self, weight=None, base="grlex", priority=None):
        if base not in ("grlex", "lex", "grevlex"):
            raise MatroidError(f"unknown base order {base!r}")
        self.weight = tuple(Fraction(w) for w in weight) if weight is not None else None
        self.base = base
        self.priority = tuple(priority) if priority is not None else None

    def key(self, exps):
        parts = []
        if self.weight is not None:
            parts.append(sum(w * e for w, e in zip(self.weight, exps)))
        p = (
            tuple(exps[i] for i in self.priority)
            if self.priority is not None
            else tuple(exps)
        )
        if self.base == "grlex":
            parts.append(sum(exps))
            parts.append(p)
        elif self.base == "lex":
            parts.append(p)
        else:  # grevlex
            parts.append(sum(exps))
            parts.append(tuple(-e for e in reversed(p)))
        return tuple(parts)

    def leading(self, f):
        """(exponent, coefficient) of the leading term of a nonzero DiffPoly."""
        if f.is_zero():
            raise MatroidError("zero polynomial has no leading term")
        e = max(f.terms, key=self.key)
        return e, f.terms[e]

    def weight_initial_form(self, f):
        """Terms of maximal weight (the whole polynomial when weight is None)."""
        if self.weight is None:
            return f
        best = None
        keep = {}
        for e, c in f.terms.items():
            w = sum(wi * ei for wi, ei in zip(self.weight, e))
            if best is None or w > best:
                best = w
                keep = {e: c}
            elif w == best:
                keep[e] = c
        return DiffPoly(f.nvars, keep)

    def __repr__(self):
        return f"MonomialOrder(weight={self.weight}, base={self.base!r})"


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _prep(divisors, order):
    prepped = []
    for g in divisors:
        le, lc = order.leading(g)
        mask = 0
        for i, e in enumerate(le):
            if e:
                mask |= 1 << i
        prepped.append((le, lc, mask, g))
    return prepped


def divide(f, divisors, order):
    """Multivariate division: f = sum q_i g_i + r, first matching divisor wins.

    No term of r is divisible by any divisor's leading monomial.
    """
    divisors = list(divisors)
    prepped = _prep(divisors, order)
    work = dict(f.terms)
    quot = [dict() for _ in divisors]
    rem = {}
    key = order.key
    while work:
        lt = max(work, key=key)
        lc = work[lt]
        ltmask = 0
        for i, e in enumerate(lt):
            if e:
                ltmask |= 1 << i
        hit = -1
        for idx, (le, dc, dmask, g) in enumerate(prepped):
            if dmask & ~ltmask:
                continue
            if _divides(le, lt):
                hit = idx
                break
        if hit < 0:
            rem[lt] = lc
            del work[lt]
            continue
        le, dc, _, g = prepped[hit]
        shift = tuple(a - b for a, b in zip(lt, le))
        coef = lc / dc
        quot[hit][shift] = quot[hit].get(shift, Fraction(0)) + coef
        for e, c in g.terms.items():
            key2 = tuple(a + b for a, b in zip(e, shift))
            nv = work.get(key2, Fraction(0)) - coef * c
            if nv:
                work[key2] = nv
            else:
                work.pop(key2, None)
    n = f.nvars
    return [DiffPoly(n, q) for q in quot], DiffPoly(n, rem)


def s_polynomial(f, g, order):
    """-(G/lt f) f + (G/lt g) g for G the lcm of the leading monomials."""
    ef, cf = order.leading(f)
    eg, cg = order.leading(g)
    gamma = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = DiffPoly(f.nvars, {tuple(a - b for a, b in zip(gamma, ef)): Fraction(-1) / cf})
    mg = DiffPoly(g.nvars, {tuple(a - b for a, b in zip(gamma, eg)): Fraction(1) / cg})
    return mf * f + mg * g


def is_groebner(gens, order):
    """Buchberger criterion, checked literally on every generator pair."""
    gens = [g for g in gens if not g.is_zero()]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], order)
            if s.is_zero():
                continue
            _, rem = divide(s, gens, order)
            if not rem.is_zero():
                return False
    return True


def buchberger(gens, order):
    """Completion to a Groebner basis (coprime-lead pairs skipped)."""
    basis = [g for g in gens if not g.is_zero()]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        ei, _ = order.leading(basis[i])
        ej, _ = order.leading(basis[j])
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        s = s_polynomial(basis[i], basis[j], order)
        if s.is_zero():
            continue
        _, rem = divide(s, basis, order)
        if rem.is_zero():
            continue
        _, lc = order.leading(rem)
        rem = rem.scale(Fraction(1) / lc)
        basis.append(rem)
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return basis


def reduced_groebner(gens, order, complete=True):
    """The reduced Groebner basis: monic, interreduced, sorted by lead."""
    basis = buchberger(gens, order) if complete else [g for g in gens if not g.is_zero()]
    leads = [order.leading(g)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        li = leads[i]
        if any(
            j != i and _divides(leads[j], li) and (leads[j] != li or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        _, rem = divide(g, others, order)
        if rem.is_zero():
            continue
        _, lc = order.leading(rem)
        reduced.append(rem.scale(Fraction(1) / lc))
    reduced.sort(key=lambda g: order.key(order.leading(g)[0]))
    return reduced


# -- the matroid generating set ------------------------------------------------


@dataclass
class LambdaSet:
    """Generators of the closure-equivalence ideal.

    binomials holds one x_A - x_B per unordered pair of equivalent
    independent sets (A the lexicographically smaller); squares and circuit
    monomials make the ideal zero outside square-free independent supports.
    """

    nvars: int
    binomials: list
    binomial_pairs: list   # aligned (mask_a, mask_b)
    squares: list
    circuit_monomials: list

    @property
    def all_generators(self):
        return self.binomials + self.squares + self.circuit_monomials


def lambda_set(m):
    from .matroid import equivalence_classes

    ec = equivalence_classes(m, verify=False)
    binomials = []
    pairs = []
    for cls in ec.classes():
        members = sorted(cls.members, key=lambda s: tuple(bits(s)))
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                a, b = members[i], members[j]
                binomials.append(
                    DiffPoly.monomial_mask(m.n, a)
                    - DiffPoly.monomial_mask(m.n, b)
                )
                pairs.append((a, b))
    squares = [DiffPoly.variable(m.n, e, 2) for e in range(m.n)]
    circuits = [DiffPoly.monomial_mask(m.n, c) for c in m.circuits_masks]
    return LambdaSet(
        nvars=m.n,
        binomials=binomials,
        binomial_pairs=pairs,
        squares=squares,
        circuit_monomials=circuits,
    )


@dataclass
class ProbeResult:
    passed: bool
    orders_tested: int
    failures: list = field(default_factory=list)


def _mask_weight(w, mask):
    total = 0
    for i in bits(mask):
        total += w[i]
    return total


def sample_generic_weight(m, lam, rng, low=-1000, high=1000):
    """Integer weight off every wall (no tie on any binomial pair)."""
    while True:
        w = [rng.randint(low, high) for _ in range(m.n)]
        if all(
            _mask_weight(w, a) != _mask_weight(w, b) for a, b in lam.binomial_pairs
        ):
            return tuple(w)


def universal_gb_probe(m, samples, seed=7):
    """Check the Buchberger criterion for the matroid generators under many
    orders: seeded random generic weights plus lex/grevlex under all cyclic
    variable rotations."""
    lam = lambda_set(m)
    gens = lam.all_generators
    rng = random.Random(seed)
    orders = []
    for rot in range(m.n):
        priority = tuple((i + rot) % m.n for i in range(m.n))
        orders.append(MonomialOrder(base="lex", priority=priority))
        orders.append(MonomialOrder(base="grevlex", priority=priority))
    for _ in range(samples):
        w = sample_generic_weight(m, lam, rng)
        orders.append(MonomialOrder(weight=w, base="grlex"))
    failures = []
    for k, order in enumerate(orders):
        if not is_groebner(gens, order):
            failures.append(k)
    return ProbeResult(passed=not failures, orders_tested=len(orders), failures=failures)


# -- initial ideals -------------------------------------------------------------


@dataclass
class InitialIdeal:
    generators: list
    monomial: bool

    @property
    def degenerate(self):
        return not self.monomial


def initial_ideal_w(gens, w, assume_universal=False):
    """Weight-initial forms of the reduced Groebner basis under (w, grlex).

    For generating sets that are Groebner for every order the weight may lie
    on a wall (the result is then flagged non-monomial); otherwise a tied
    weight raises TiedWeight.
    """
    order = MonomialOrder(weight=w, base="grlex")
    gb = reduced_groebner(gens, order, complete=True)
    forms = [order.weight_initial_form(g) for g in gb]
    monomial = all(len(f.terms) == 1 for f in forms)
    if not monomial and not assume_universal:
        raise TiedWeight("weight vector lies on a wall of the Groebner fan")
    return InitialIdeal(generators=forms, monomial=monomial)


def groebner_cone(gb, order, w=None):
    """Closure of the weights picking the same initial forms as this marked
    reduced basis; the defining weight (when given) is asserted to lie in it."""
    normals = []
    for g in gb:
        lead, _ = order.leading(g)
        for e in g.terms:
            if e != lead:
                normals.append(tuple(a - b for a, b in zip(lead, e)))
    cone = RationalCone(tuple(normals), (), "RE")
    if w is not None and not contains_point(cone, tuple(w), len(w)):
        raise InvariantError("defining weight outside its Groebner cone")
    return cone


def _gb_key(gb, order):
    out = []
    for g in gb:
        lead, _ = order.leading(g)
        out.append((lead, tuple(sorted(g.terms.items()))))
    return tuple(sorted(out))


def _is_generic(gb, order):
    for g in gb:
        form = order.weight_initial_form(g)
        if len(form.terms) != 1:
            return False
    return True


def groebner_fan(gens, nvars, max_dim=5, seed=0):
    """Complete Groebner fan of a homogeneous ideal, restricted to the
    sum-zero hyperplane, by facet-flipping traversal from a generic weight.

    Returns a list of (cone, meta) pairs; meta records the marked reduced
    basis.  Cones are full-dimensional in H.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise MatroidError("empty generating set")
    for g in gens:
        if g.homogeneous_degree() is None:
            raise MatroidError("fan traversal requires homogeneous generators")
    guard(nvars <= max_dim, f"fan traversal limited to {max_dim} variables")
    rng = random.Random(seed)
    # Generic start.
    while True:
        w = tuple(rng.randint(-(10**4), 10**4) for _ in range(nvars))
        order = MonomialOrder(weight=w, base="grlex")
        gb = reduced_groebner(gens, order)
        if _is_generic(gb, order):
            break
    eps0 = Fraction(1, 2**20)
    discovered = {}
    queue = [(w, gb, order)]
    while queue:
        w, gb, order = queue.pop()
        key = _gb_key(gb, order)
        if key in discovered:
            continue
        cone_re = groebner_cone(gb, order, w)
        cone_h = RationalCone(cone_re.ineqs, (), "H")
        discovered[key] = (cone_h, {"reduced_basis": gb})
        for normal, witness in facets(cone_h, nvars):
            # Step across the facet: witness minus a small multiple of the
            # inward normal projected to H.
            s = sum(normal)
            proj = [Fraction(nvars * a - s, nvars) for a in normal]
            eps = eps0
            for _ in range(12):
                w2 = tuple(z - eps * p for z, p in zip(witness, proj))
                order2 = MonomialOrder(weight=w2, base="grlex")
                gb2 = reduced_groebner(gens, order2)
                if not _is_generic(gb2, order2):
                    eps /= 16
                    continue
                cone2 = RationalCone(
                    groebner_cone(gb2, order2).ineqs, (), "H"
                )
                if contains_point(cone2, witness, nvars):
                    if _gb_key(gb2, order2) not in discovered:
                        queue.append((w2, gb2, order2))
                    break
                eps /= 16
            else:
                raise InvariantError("failed to cross a fan facet")
    return list(discovered.values())
