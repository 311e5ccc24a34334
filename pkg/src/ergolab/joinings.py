"""Exact joinings of ergodic rotations on finite abelian groups.

Everything here is integer/rational arithmetic; no floats.  Ergodic joinings
of two finite rotations are Haar measures on cosets of the orbit closure of
the identity pair, the quotient by that subgroup is the maximal common
factor, and the uniform mixture of the coset measures reconstructs the
product measure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonErgodicRotation
from .systems import FiniteRotation

MAX_FACTOR_ORDER = 360  # joinings are stored densely


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def elements(self):
        return itertools.product(*(range(o) for o in self.orders))

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def zero(self):
        return tuple(0 for _ in self.orders)

    def element_order(self, a) -> int:
        return math.lcm(*(o // math.gcd(x, o) for x, o in zip(a, self.orders)))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteAbelianGroup
    generator: tuple[int, ...]
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)


@dataclass(frozen=True)
class Joining:
    """Rational weights on the product group, summing to 1."""

    group: FiniteAbelianGroup  # the product group G1 x G2
    split: int  # how many coordinates belong to the first factor
    weights: dict

    def weight(self, g) -> Fraction:
        return self.weights.get(g, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def marginal(self, side: int) -> dict:
        out: dict = {}
        for g, w in self.weights.items():
            key = g[: self.split] if side == 0 else g[self.split :]
            out[key] = out.get(key, Fraction(0)) + w
        return out

    def has_uniform_marginals(self) -> bool:
        o1 = self.group.orders[: self.split]
        o2 = self.group.orders[self.split :]
        m0, m1 = self.marginal(0), self.marginal(1)
        u1 = Fraction(1, math.prod(o1))
        u2 = Fraction(1, math.prod(o2))
        return all(
            m0.get(g, Fraction(0)) == u1 for g in itertools.product(*(range(o) for o in o1))
        ) and all(
            m1.get(g, Fraction(0)) == u2 for g in itertools.product(*(range(o) for o in o2))
        )

    def is_invariant(self, step) -> bool:
        return all(
            self.weight(self.group.add(g, step)) == w for g, w in self.weights.items()
        )

    def __eq__(self, other):
        if not isinstance(other, Joining):
            return NotImplemented
        keys = set(self.weights) | set(other.weights)
        return self.split == other.split and all(
            self.weight(k) == other.weight(k) for k in keys
        )


@dataclass(frozen=True)
class QuotientGroup:
    """(G1 x G2)/H presented by coset representatives."""

    parent: FiniteAbelianGroup
    subgroup: Subgroup
    reps: tuple
    coset_of: dict  # element -> index into reps

    @property
    def order(self) -> int:
        return len(self.reps)

    @property
    def is_trivial(self) -> bool:
        return len(self.reps) == 1

    def add(self, i: int, j: int) -> int:
        return self.coset_of[self.parent.add(self.reps[i], self.reps[j])]

    def element_order(self, i: int) -> int:
        k, acc = 1, i
        zero = self.coset_of[self.parent.zero()]
        while acc != zero:
            acc = self.add(acc, i)
            k += 1
        return k

    @property
    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))

    def coset_elements(self, i: int) -> list:
        rep = self.reps[i]
        return [self.parent.add(rep, h) for h in sorted(self.subgroup.elements)]


def _check_rotation(x: FiniteRotation) -> None:
    if x.group_order > MAX_FACTOR_ORDER:
        raise ValueError(f"factor order capped at {MAX_FACTOR_ORDER}")
    g = FiniteAbelianGroup(x.orders)
    if g.element_order(x.step) != g.order:
        raise NonErgodicRotation(f"step {x.step} does not generate Z/{x.orders}")


def _product_group(x: FiniteRotation, y: FiniteRotation) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(x.orders + y.orders)


def _diag_step(x: FiniteRotation, y: FiniteRotation):
    return x.step + y.step


def orbit_subgroup(x: FiniteRotation, y: FiniteRotation) -> Subgroup:
    """H = orbit closure of the identity pair under the diagonal rotation."""
    _check_rotation(x)
    _check_rotation(y)
    group = _product_group(x, y)
    step = _diag_step(x, y)
    elems = set()
    g = group.zero()
    while g not in elems:
        elems.add(g)
        g = group.add(g, step)
    return Subgroup(group, step, frozenset(elems))


def joint_kronecker_quotient(x: FiniteRotation, y: FiniteRotation) -> QuotientGroup:
    """K = (G1 x G2)/H with the induced rotation; the maximal common factor.

    Verifies that the two induced maps from the factors onto K are
    equivariant surjections.
    """
    h = orbit_subgroup(x, y)
    group = h.parent
    reps: list = []
    coset_of: dict = {}
    for g in group.elements():
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for s in h.elements:
            coset_of[group.add(g, s)] = idx
    k = QuotientGroup(group, h, tuple(reps), coset_of)
    _verify_quotient_maps(x, y, k)
    return k


def _verify_quotient_maps(x: FiniteRotation, y: FiniteRotation, k: QuotientGroup) -> None:
    group = k.parent
    zero1 = tuple(0 for _ in x.orders)
    zero2 = tuple(0 for _ in y.orders)
    # R((x,y)+H) = (x+a1, y)+H
    def rot(i: int) -> int:
        rep = k.reps[i]
        return k.coset_of[group.add(rep, x.step + zero2)]

    g1 = FiniteAbelianGroup(x.orders)
    g2 = FiniteAbelianGroup(y.orders)
    alpha = {e: k.coset_of[e + zero2] for e in g1.elements()}
    beta = {e: k.coset_of[zero1 + g2.neg(e)] for e in g2.elements()}
    for e in g1.elements():
        assert alpha[g1.add(e, x.step)] == rot(alpha[e]), "alpha not equivariant"
    for e in g2.elements():
        assert beta[g2.add(e, y.step)] == rot(beta[e]), "beta not equivariant"
    assert set(alpha.values()) == set(range(k.order)), "alpha not onto"
    assert set(beta.values()) == set(range(k.order)), "beta not onto"


def ergodic_joinings(x: FiniteRotation, y: FiniteRotation) -> list[Joining]:
    """One coset Haar measure per element of K; each verified invariant with
    uniform marginals."""
    k = joint_kronecker_quotient(x, y)
    h = k.subgroup
    split = len(x.orders)
    out = []
    w = Fraction(1, h.order)
    for i in range(k.order):
        weights = {g: w for g in k.coset_elements(i)}
        j = Joining(k.parent, split, weights)
        assert j.total() == 1
        assert j.has_uniform_marginals(), "marginals not uniform"
        assert j.is_invariant(_diag_step(x, y)), "not diagonally invariant"
        out.append(j)
    return out


def product_joining(x: FiniteRotation, y: FiniteRotation) -> Joining:
    group = _product_group(x, y)
    w = Fraction(1, group.order)
    return Joining(group, len(x.orders), {g: w for g in group.elements()})


def verify_ergodic_decomposition(x: FiniteRotation, y: FiniteRotation) -> bool:
    """(1/|K|) sum_k lambda_k == uniform on G1 x G2, exactly."""
    joins = ergodic_joinings(x, y)
    group = _product_group(x, y)
    acc: dict = {}
    share = Fraction(1, len(joins))
    for j in joins:
        for g, w in j.weights.items():
            acc[g] = acc.get(g, Fraction(0)) + share * w
    uniform = Fraction(1, group.order)
    return all(acc.get(g, Fraction(0)) == uniform for g in group.elements())


def disjoint(x: FiniteRotation, y: FiniteRotation) -> bool:
    """Product measure is the only joining iff there is a single ergodic one."""
    return len(ergodic_joinings(x, y)) == 1


def common_factor(x: FiniteRotation, y: FiniteRotation) -> QuotientGroup:
    return joint_kronecker_quotient(x, y)


def quasi_disjoint(x: FiniteRotation, y: FiniteRotation) -> bool:
    """Only the product joining projects to the product measure on KX x KY.

    Finite rotations are their own Kronecker factors, so the projection is
    the identity.  The ergodic joinings have pairwise disjoint supports
    (cosets), hence a general joining, a convex combination of them,
    projects to the product measure only if it is the uniform mixture, which
    is the product itself by the ergodic decomposition identity.
    """
    joins = ergodic_joinings(x, y)
    supports = [frozenset(j.weights) for j in joins]
    for a, b in itertools.combinations(supports, 2):
        assert not (a & b), "coset supports must be disjoint"
    if not verify_ergodic_decomposition(x, y):
        return False
    prod = product_joining(x, y)
    # ergodic joinings whose (identity) projection is the product measure
    projecting = [j for j in joins if j == prod]
    return all(j == prod for j in projecting)


def bqd_check(x: FiniteRotation, y: FiniteRotation) -> bool:
    """For each k in K, exactly one ergodic joining gives full measure to the
    fiber of gamma(x, y) = alpha(x) - beta(y) over k."""
    k = joint_kronecker_quotient(x, y)
    joins = ergodic_joinings(x, y)
    group = k.parent
    g2 = FiniteAbelianGroup(y.orders)
    split = len(x.orders)

    def gamma(g) -> int:
        # alpha(x) - beta(y) = (x, 0)+H - (0, -y)+H = (x, y)+H
        left, right = g[:split], g[split:]
        a = k.coset_of[left + tuple(0 for _ in y.orders)]
        b = k.coset_of[tuple(0 for _ in x.orders) + g2.neg(right)]
        neg_b = next(i for i in range(k.order) if k.add(b, i) == k.coset_of[group.zero()])
        return k.add(a, neg_b)

    for idx in range(k.order):
        fiber = {g for g in group.elements() if gamma(g) == idx}
        count = sum(
            1
            for j in joins
            if sum((j.weight(g) for g in fiber), Fraction(0)) == 1
        )
        if count != 1:
            return False
    return True


def product_system_ergodic(x: FiniteRotation, y: FiniteRotation) -> bool:
    """Exact ergodicity of the diagonal rotation on G1 x G2: the invariant
    0/1 functions number 2^(orbit count), so ergodicity means one orbit."""
    group = _product_group(x, y)
    step = _diag_step(x, y)
    seen: set = set()
    orbits = 0
    for g in group.elements():
        if g in seen:
            continue
        orbits += 1
        cur = g
        while cur not in seen:
            seen.add(cur)
            cur = group.add(cur, step)
    invariant_indicators = 2**orbits
    return invariant_indicators == 2
