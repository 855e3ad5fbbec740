"""Closed-form invariants of a saturated monoid chart.

Everything here is a function of the group hull of the chart monoid and,
where relevant, of the residue characteristic p.  Only the combinatorial
part of each invariant is computed; contributions that depend on the base
ring rather than on the chart are out of scope and the docstrings say so.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, MembershipError, MismatchedBaseError, NotSaturatedError
from .lattice import (
    GroupElement,
    GroupStructure,
    hom_to_cyclic,
    invariant_factors_from_orders,
)
from .monoid import Monoid


def _require_saturated(monoid: Monoid) -> None:
    if not monoid.is_saturated():
        raise NotSaturatedError("not saturated")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_characteristic(p: int) -> None:
    if p != 0 and not _is_prime(p):
        raise InputError("residue characteristic must be 0 or a prime")


def _prime_to_part(d: int, p: int) -> int:
    """Largest divisor of d coprime to p; d itself when p = 0."""
    if p:
        while d % p == 0:
            d //= p
    return d


@dataclass(frozen=True)
class ProfiniteDescriptor:
    """A profinite group of the shape Zhat^(p')(1)^r + sum of finite cyclics.

    excluded_prime = 0 means the full profinite completion.  The (1) is a
    bookkeeping label for the twist by roots of unity; over a separably
    closed residue field it does not change the abstract group.
    """

    free_rank: int
    finite_factors: tuple
    excluded_prime: int = 0

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError("free rank must be nonnegative")
        p = self.excluded_prime
        if p != 0 and not _is_prime(p):
            raise InputError("residue characteristic must be 0 or a prime")
        for d in self.finite_factors:
            if d < 2:
                raise InputError("finite factors must be at least 2")
            if p and d % p == 0:
                raise InputError("finite factors must be coprime to the excluded prime")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.finite_factors

    def __str__(self):
        hat = "Zhat" if not self.excluded_prime else f"Zhat^({self.excluded_prime}')"
        parts = []
        if self.free_rank:
            parts.append(f"{hat}(1)" + (f"^{self.free_rank}" if self.free_rank > 1 else ""))
        parts.extend(f"Z/{d}(1)" for d in self.finite_factors)
        return " + ".join(parts) if parts else "0"


def pi1_log(monoid: Monoid, p: int = 0) -> ProfiniteDescriptor:
    """Log fundamental group of the chart, as a profinite descriptor.

    With hull Z^r + sum Z/d_i this is the prime-to-p completion of the hull
    dualized against roots of unity: r copies of the completion plus the
    prime-to-p part of each torsion factor.
    """
    _check_characteristic(p)
    _require_saturated(monoid)
    st = monoid.gp().structure()
    parts = [_prime_to_part(d, p) for d in st.invariant_factors]
    return ProfiniteDescriptor(
        free_rank=st.free_rank,
        finite_factors=invariant_factors_from_orders(d for d in parts if d > 1),
        excluded_prime=p,
    )


@dataclass(frozen=True)
class GroupSchemeDescriptor:
    """A multiplicative-type coefficient group: a torus power plus roots of unity."""

    torus_rank: int = 0
    mu_orders: tuple = ()

    def __post_init__(self):
        if self.torus_rank < 0:
            raise InputError("torus rank must be nonnegative")
        for m in self.mu_orders:
            if m < 1:
                raise InputError("mu order must be at least 1")

    @classmethod
    def mu(cls, m: int) -> "GroupSchemeDescriptor":
        return cls(0, (m,))

    @classmethod
    def torus(cls, s: int = 1) -> "GroupSchemeDescriptor":
        return cls(s, ())

    def __str__(self):
        parts = []
        if self.torus_rank:
            parts.append("G_m" + (f"^{self.torus_rank}" if self.torus_rank > 1 else ""))
        parts.extend(f"mu_{m}" for m in self.mu_orders)
        return " x ".join(parts) if parts else "1"


@dataclass(frozen=True)
class H1Structure:
    """Finite part plus a divisible part (Q/Z)^divisible_rank."""

    finite: GroupStructure
    divisible_rank: int = 0

    def is_trivial(self) -> bool:
        return self.finite.is_trivial() and self.divisible_rank == 0

    def __str__(self):
        parts = []
        if not self.finite.is_trivial():
            parts.append(str(self.finite))
        if self.divisible_rank:
            parts.append(
                "(Q/Z)" + (f"^{self.divisible_rank}" if self.divisible_rank > 1 else "")
            )
        return " + ".join(parts) if parts else "0"


def r1_eps_fiber(monoid: Monoid, coefficients: GroupSchemeDescriptor) -> H1Structure:
    """Log part of H^1 with multiplicative-type coefficients.

    For hull Z^r + sum Z/d_j: each mu_m factor contributes the hull tensored
    with Z/m, and each torus factor contributes (Q/Z)^r since the torsion of
    the hull dies in the divisible tensor.  The classical part of H^1, which
    depends on the base ring and not on the chart, is not included.
    """
    _require_saturated(monoid)
    st = monoid.gp().structure()
    orders = []
    for m in coefficients.mu_orders:
        orders.extend([m] * st.free_rank)
        orders.extend(math.gcd(d, m) for d in st.invariant_factors)
    finite = GroupStructure(0, invariant_factors_from_orders(o for o in orders if o > 1))
    return H1Structure(finite, coefficients.torus_rank * st.free_rank)


def h1_kummer(monoid: Monoid, m: int) -> GroupStructure:
    """Group of degree-m Kummer torsor classes: the hull modulo m-th powers."""
    if m < 1:
        raise InputError("modulus must be at least 1")
    _require_saturated(monoid)
    st = monoid.gp().structure()
    orders = [m] * st.free_rank + [math.gcd(d, m) for d in st.invariant_factors]
    return GroupStructure(0, invariant_factors_from_orders(o for o in orders if o > 1))


class FiniteGroupTable:
    """A finite group given by its multiplication table.

    Elements are the indices 0..order-1; table[a][b] is the product a*b.
    The table is validated on construction.
    """

    __slots__ = ("order", "table", "identity", "_inverse")

    def __init__(self, table, identity: int = 0):
        table = tuple(tuple(int(v) for v in row) for row in table)
        n = len(table)
        if n == 0:
            raise InputError("a group needs at least the identity element")
        if any(len(row) != n for row in table):
            raise InputError("multiplication table must be square")
        for row in table:
            for v in row:
                if not 0 <= v < n:
                    raise InputError("table entries must be element indices")
        if not 0 <= identity < n:
            raise InputError("identity index out of range")
        for a in range(n):
            if table[identity][a] != a or table[a][identity] != a:
                raise InputError("identity element does not act trivially")
        inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == identity and table[b][a] == identity:
                    inverse[a] = b
                    break
            if inverse[a] is None:
                raise InputError("an element has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise InputError("multiplication is not associative")
        self.order = n
        self.table = table
        self.identity = identity
        self._inverse = tuple(inverse)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conjugate(self, g: int, x: int) -> int:
        return self.table[self.table[g][x]][self._inverse[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    @classmethod
    def trivial(cls) -> "FiniteGroupTable":
        return cls(((0,),))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupTable":
        if n < 1:
            raise InputError("cyclic order must be at least 1")
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroupTable":
        """Permutations of n letters in lexicographic order; identity is index 0."""
        if n < 1:
            raise InputError("need at least one letter")
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = [
            [index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms
        ]
        return cls(table)


@dataclass(frozen=True)
class HomClasses:
    """Conjugacy classes of homomorphisms from a finite abelian group.

    hom_orders are the cyclic factor orders of the source; each
    representative lists one image per factor, lexicographically least in
    its simultaneous-conjugacy orbit.
    """

    count: int
    representatives: tuple
    hom_orders: tuple

    def __iter__(self):
        return iter(self.representatives)


def h1_finite_group(
    monoid: Monoid, p: int, n: int, group: FiniteGroupTable
) -> HomClasses:
    """Classes of degree-n torsors under a constant finite group.

    Computes Hom(H, G)/conjugacy for H the n-torsion dual of the hull.
    n must be invertible in the residue characteristic.
    """
    _check_characteristic(p)
    if n < 1:
        raise InputError("modulus must be at least 1")
    if p and math.gcd(n, p) > 1:
        raise InputError("n not invertible")
    _require_saturated(monoid)
    hom = hom_to_cyclic(monoid.gp().group, n)
    orders = hom.invariant_factors
    candidates = [
        tuple(
            g for g in range(group.order) if orders[k] % group.element_order(g) == 0
        )
        for k in range(len(orders))
    ]
    reps = set()
    for images in itertools.product(*candidates):
        if any(
            group.mul(a, b) != group.mul(b, a)
            for a, b in itertools.combinations(images, 2)
        ):
            continue
        orbit = (
            tuple(group.conjugate(g, x) for x in images) for g in range(group.order)
        )
        reps.add(min(orbit))
    return HomClasses(len(reps), tuple(sorted(reps)), orders)


@dataclass(frozen=True, order=True)
class QmodZElement:
    """A hull element tensored with Q/Z, in canonical coordinates.

    fractions has one entry in [0, 1) per free coordinate of the hull;
    torsion dies in the tensor.  Ordering and equality are coordinatewise.
    """

    fractions: tuple

    @classmethod
    def from_element(cls, monoid: Monoid, a, m: int) -> "QmodZElement":
        if m < 1:
            raise InputError("denominator must be at least 1")
        gp = monoid.gp()
        coords = gp.express(a if isinstance(a, GroupElement) else monoid.ambient.element(a))
        if coords is None:
            raise MembershipError("element lies outside the group hull")
        free = gp.group.free_projection(coords)
        return cls(tuple(Fraction(v % m, m) for v in free))

    def is_zero(self) -> bool:
        return not any(self.fractions)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.fractions) + ")"


@dataclass(frozen=True)
class BundleClass:
    """A rank-n bundle class: a sorted multiset of Q/Z components.

    Two classes are equal exactly when they agree up to permutation of
    components, which the sorted canonical order makes literal equality.
    """

    monoid: Monoid
    components: tuple

    @property
    def rank(self) -> int:
        return len(self.components)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.components) + "]"


def bundle_class(monoid: Monoid, raw) -> BundleClass:
    """Canonical form of a bundle class given as (hull element, denominator) pairs."""
    _require_saturated(monoid)
    components = sorted(QmodZElement.from_element(monoid, a, m) for a, m in raw)
    return BundleClass(monoid, tuple(components))


def is_classical(c: BundleClass) -> bool:
    """True when every component is zero, so the class forgets the log structure."""
    return all(comp.is_zero() for comp in c.components)


def direct_sum(c1: BundleClass, c2: BundleClass) -> BundleClass:
    if c1.monoid != c2.monoid:
        raise MismatchedBaseError("classes live over different monoids")
    return BundleClass(c1.monoid, tuple(sorted(c1.components + c2.components)))
